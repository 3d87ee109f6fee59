#include "forge/templates.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "forge/error.hpp"

namespace forge {

std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& binds) {
  std::string out;
  out.reserve(tmpl.size());
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    const char c = tmpl[i];
    if (c == '{') {
      if (i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
        out += '{';
        ++i;
        continue;
      }
      const std::size_t close = tmpl.find('}', i + 1);
      if (close == std::string::npos) {
        throw_error(ErrorCategory::Config, "unterminated placeholder in template");
      }
      const std::string name = tmpl.substr(i + 1, close - i - 1);
      auto it = binds.find(name);
      if (it == binds.end()) {
        throw_error(ErrorCategory::Config, "unbound template placeholder {" + name + "}");
      }
      out += it->second;
      i = close;
      continue;
    }
    if (c == '}') {
      if (i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
        out += '}';
        ++i;
        continue;
      }
      throw_error(ErrorCategory::Config, "stray '}' in template");
    }
    out += c;
  }
  return out;
}

const TaskTemplates& TemplatePack::for_task(const std::string& task) const {
  auto it = tasks.find(task);
  if (it == tasks.end()) {
    throw_error(ErrorCategory::Config, "no templates for task \"" + task + "\"");
  }
  return it->second;
}

const TemplatePack& builtin_templates() {
  static const TemplatePack pack = [] {
    TemplatePack p;
    p.version = "builtin-1";
    const std::string graph_intro =
        "The following is {article} {directed_word} graph{weight_note}. "
        "Its nodes are labeled from 0 to {max_id}.";
    p.tasks["graph_size_node"] = {
        graph_intro,
        "How many nodes does the graph contain?",
        "The graph contains {answer} nodes.",
    };
    p.tasks["graph_size_edge"] = {
        graph_intro,
        "How many edges does the graph contain?",
        "The graph contains {answer} edges.",
    };
    p.tasks["attr_retrieval_node"] = {
        graph_intro,
        "What is the value of the attribute \"{attr}\" of node {target}?",
        "The attribute \"{attr}\" of node {target} has value {answer}.",
    };
    p.tasks["attr_retrieval_edge"] = {
        graph_intro,
        "What is the value of the attribute \"{attr}\" of the edge between node "
        "{src} and node {dst}?",
        "The attribute \"{attr}\" of that edge has value {answer}.",
    };
    p.tasks["degree_count"] = {
        graph_intro,
        "What is the degree of node {target}?",
        "Node {target} has degree {answer}.",
    };
    p.tasks["shortest_path"] = {
        graph_intro,
        "Find a shortest path from node {src} to node {dst}{path_objective}. "
        "Give the path as a sequence of node labels.",
        "A shortest path with total {length_word} {length} is {answer}.",
    };
    p.tasks["max_triangle_sum"] = {
        graph_intro,
        "Among all triangles in the graph, find the one whose three corner "
        "nodes have the largest total weight. What is that maximum sum?",
        "The triangle on nodes {triangle} attains the maximum weight sum "
        "{answer}.",
    };
    p.tasks["hamilton_path"] = {
        graph_intro,
        "Does the graph contain a Hamilton path, that is, a path visiting "
        "every node exactly once? Answer Yes or No.",
        "The answer is {answer}.{path_note}",
    };
    p.tasks["subgraph_matching"] = {
        graph_intro,
        "Consider a pattern graph with {pattern_n} nodes and edges "
        "{pattern_edges}. Does the graph contain this pattern as a subgraph? "
        "Answer Yes or No.",
        "The answer is {answer}.{match_note}",
    };
    p.tasks["graph_structure"] = {
        graph_intro,
        "Which one of the following structure types best describes the "
        "graph: {label_choices}?",
        "The structure type of the graph is {answer}.",
    };
    p.tasks["graph_automorphism"] = {
        graph_intro,
        "How many automorphisms does the graph have, that is, how many "
        "permutations of its nodes map edges onto edges?",
        "The graph has {answer} automorphisms.",
    };
    p.tasks["tae"] = {
        graph_intro,
        "List all nodes directly connected to node {target}.{direction_note}",
        "The nodes adjacent to node {target} are: {answer}.",
    };
    p.tasks["fmae"] = {
        graph_intro +
            " Some attribute values in the graph have been replaced with "
            "\"unknown\".",
        "Infer the missing value of the attribute \"{attr}\" of {element}.",
        "The masked value of \"{attr}\" is {answer}.",
    };
    p.tasks["fmae_text"] = p.tasks["fmae"];
    p.tasks["semantic-default"] = {
        "{dataset_description}",
        "{dataset_query}",
        "The answer is {answer}.",
    };
    return p;
  }();
  return pack;
}

TemplatePack load_template_pack(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorCategory::Io, "cannot open template pack: " + path);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw_error(ErrorCategory::Parse, path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("version") || !j["version"].is_string() ||
      !j.contains("tasks") || !j["tasks"].is_object()) {
    throw_error(ErrorCategory::Config,
                path + ": template pack needs \"version\" and \"tasks\"");
  }
  TemplatePack pack = builtin_templates();
  pack.version = j["version"].get<std::string>();
  for (const auto& [name, entry] : j["tasks"].items()) {
    if (!entry.is_object()) {
      throw_error(ErrorCategory::Config, path + ": task \"" + name +
                                             "\" must be an object");
    }
    TaskTemplates t = pack.tasks.count(name) ? pack.tasks[name] : TaskTemplates{};
    if (entry.contains("description")) t.description = entry["description"].get<std::string>();
    if (entry.contains("query")) t.query = entry["query"].get<std::string>();
    if (entry.contains("answer")) t.answer = entry["answer"].get<std::string>();
    pack.tasks[name] = std::move(t);
  }
  return pack;
}

}  // namespace forge
