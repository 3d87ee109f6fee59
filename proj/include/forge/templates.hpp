#pragma once

#include <map>
#include <string>

namespace forge {

// Prose templates for one task: the graph description, the query, and the
// reference explanation that precedes the final answer line.
struct TaskTemplates {
  std::string description;
  std::string query;
  std::string answer;
};

// Placeholders are written {name}; literal braces are doubled. Rendering with
// an unbound placeholder is a config error so typos in custom packs surface
// immediately instead of leaking braces into the corpus.
std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& binds);

struct TemplatePack {
  std::string version;
  std::map<std::string, TaskTemplates> tasks;

  const TaskTemplates& for_task(const std::string& task) const;
};

// Compiled-in pack covering every built-in task.
const TemplatePack& builtin_templates();

// JSON file {"version": ..., "tasks": {name: {description, query, answer}}};
// entries override the builtin pack task by task.
TemplatePack load_template_pack(const std::string& path);

}  // namespace forge
