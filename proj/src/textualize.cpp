#include "forge/textualize.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "forge/error.hpp"
#include "forge/graph_json.hpp"

namespace forge {
namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw_error(ErrorCategory::Parse, "line " + std::to_string(line) + ": " + msg);
}

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i])) == 0) return false;
  }
  return true;
}

bool is_real_literal(const std::string& s) {
  if (s.empty()) return false;
  if (s.find_first_of(".eE") == std::string::npos) return false;
  const char c0 = s[0];
  if (std::isdigit(static_cast<unsigned char>(c0)) == 0 && c0 != '-' && c0 != '.') {
    return false;
  }
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return false;
  return std::isfinite(v);
}

// Typed value for a bare token; nullopt when it is not a scalar literal.
std::optional<AttrValue> scalar_from_text(const std::string& s) {
  if (s == "true") return AttrValue::boolean(true);
  if (s == "false") return AttrValue::boolean(false);
  if (is_integer_literal(s)) {
    errno = 0;
    const long long v = std::strtoll(s.c_str(), nullptr, 10);
    if (errno == ERANGE) return std::nullopt;
    return AttrValue::integer(v);
  }
  if (is_real_literal(s)) return AttrValue::real(std::strtod(s.c_str(), nullptr));
  return std::nullopt;
}

std::vector<std::string> sorted_attr_names(const AttrMap& attrs) {
  std::vector<std::string> names;
  for (const auto& [name, value] : attrs) {
    (void)value;
    names.push_back(name);
  }
  return names;  // AttrMap is ordered already
}

// ---------------------------------------------------------------- GML ----

bool gml_key_ok(const std::string& name) {
  if (name.empty()) return false;
  const char c0 = name[0];
  if (std::isalpha(static_cast<unsigned char>(c0)) == 0 && c0 != '_') return false;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '_') return false;
  }
  return true;
}

const std::set<std::string>& gml_reserved() {
  static const std::set<std::string> words{"graph", "node",   "edge",    "id",
                                           "source", "target", "directed"};
  return words;
}

std::string gml_value(const AttrValue& v) {
  switch (v.kind()) {
    case AttrValue::Kind::Text: {
      std::string out = "\"";
      for (char c : v.as_text()) {
        if (c == '\\' || c == '"') out += '\\';
        out += c;
      }
      out += '"';
      return out;
    }
    case AttrValue::Kind::Integer: return std::to_string(v.as_integer());
    case AttrValue::Kind::Real: return format_real(v.as_real());
    case AttrValue::Kind::Boolean: return v.as_boolean() ? "true" : "false";
  }
  return "";
}

void gml_check_attrs(const AttrMap& attrs, const std::string& where) {
  for (const auto& [name, value] : attrs) {
    if (value.kind() == AttrValue::Kind::Text) {
      for (char c : value.as_text()) {
        if (static_cast<unsigned char>(c) < 0x20 || c == '\x7f') {
          throw_error(ErrorCategory::Validation,
                      where + " attribute \"" + name +
                          "\" is not representable in gml; strings cannot "
                          "carry control characters");
        }
      }
    }
    if (!gml_key_ok(name)) {
      throw_error(ErrorCategory::Validation,
                  where + " attribute \"" + name +
                      "\" is not representable in gml; keys must match "
                      "[A-Za-z_][A-Za-z0-9_]*");
    }
    if (gml_reserved().count(name) != 0) {
      throw_error(ErrorCategory::Validation,
                  where + " attribute \"" + name + "\" collides with a gml keyword");
    }
  }
}

std::string render_gml(const AttributedGraph& g, bool compact) {
  gml_check_attrs(g.graph_attrs(), "graph");
  for (const NodeRecord& n : g.nodes()) {
    gml_check_attrs(n.attrs, "node " + std::to_string(n.id));
  }
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    gml_check_attrs(g.edges()[i].attrs, "edge " + std::to_string(i));
  }

  std::vector<std::pair<int, std::string>> lines;  // (indent, text)
  lines.emplace_back(0, "graph [");
  lines.emplace_back(1, std::string("directed ") + (g.directed() ? "1" : "0"));
  for (const auto& [name, value] : g.graph_attrs()) {
    lines.emplace_back(1, name + " " + gml_value(value));
  }
  for (const NodeRecord& n : g.nodes()) {
    lines.emplace_back(1, "node [");
    lines.emplace_back(2, "id " + std::to_string(n.id));
    for (const auto& [name, value] : n.attrs) {
      lines.emplace_back(2, name + " " + gml_value(value));
    }
    lines.emplace_back(1, "]");
  }
  for (const EdgeRecord& e : g.edges()) {
    lines.emplace_back(1, "edge [");
    lines.emplace_back(2, "source " + std::to_string(e.src));
    lines.emplace_back(2, "target " + std::to_string(e.dst));
    for (const auto& [name, value] : e.attrs) {
      lines.emplace_back(2, name + " " + gml_value(value));
    }
    lines.emplace_back(1, "]");
  }
  lines.emplace_back(0, "]");

  std::string out;
  if (compact) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (i != 0) out += ' ';
      out += lines[i].second;
    }
    out += '\n';
  } else {
    for (const auto& [indent, text] : lines) {
      out.append(static_cast<std::size_t>(indent) * 2, ' ');
      out += text;
      out += '\n';
    }
  }
  return out;
}

struct GmlToken {
  enum class Kind { Open, Close, String, Atom, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
};

class GmlLexer {
public:
  explicit GmlLexer(const std::string& src) : src_(src) {}

  GmlToken next() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])) != 0) {
      if (src_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= src_.size()) return {GmlToken::Kind::End, "", line_};
    const char c = src_[pos_];
    if (c == '[') {
      ++pos_;
      return {GmlToken::Kind::Open, "[", line_};
    }
    if (c == ']') {
      ++pos_;
      return {GmlToken::Kind::Close, "]", line_};
    }
    if (c == '"') {
      ++pos_;
      std::string text;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        char x = src_[pos_];
        if (x == '\\') {
          ++pos_;
          if (pos_ >= src_.size()) parse_fail(line_, "unterminated escape in string");
          x = src_[pos_];
          if (x != '\\' && x != '"') {
            parse_fail(line_, "unsupported escape '\\" + std::string(1, x) + "'");
          }
        } else if (x == '\n') {
          parse_fail(line_, "newline inside gml string");
        }
        text += x;
        ++pos_;
      }
      if (pos_ >= src_.size()) parse_fail(line_, "unterminated gml string");
      ++pos_;
      return {GmlToken::Kind::String, text, line_};
    }
    std::string text;
    while (pos_ < src_.size()) {
      const char x = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(x)) != 0 || x == '[' ||
          x == ']' || x == '"') {
        break;
      }
      text += x;
      ++pos_;
    }
    return {GmlToken::Kind::Atom, text, line_};
  }

private:
  const std::string& src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

struct GmlEntry {
  std::string key;
  std::size_t line = 1;
  // Exactly one of these is set.
  std::optional<AttrValue> scalar;
  std::optional<std::vector<GmlEntry>> list;
};

std::vector<GmlEntry> gml_parse_entries(GmlLexer& lex);

GmlEntry gml_parse_entry(GmlLexer& lex, GmlToken key) {
  GmlEntry entry;
  entry.key = key.text;
  entry.line = key.line;
  GmlToken value = lex.next();
  switch (value.kind) {
    case GmlToken::Kind::Open:
      entry.list = gml_parse_entries(lex);
      return entry;
    case GmlToken::Kind::String:
      entry.scalar = AttrValue::text(value.text);
      return entry;
    case GmlToken::Kind::Atom: {
      auto v = scalar_from_text(value.text);
      if (!v) {
        parse_fail(value.line, "bare word \"" + value.text +
                                   "\" is not a gml value; strings must be quoted");
      }
      entry.scalar = *v;
      return entry;
    }
    default:
      parse_fail(value.line, "missing value for key \"" + key.text + "\"");
  }
}

// Consumes entries until the matching ']'.
std::vector<GmlEntry> gml_parse_entries(GmlLexer& lex) {
  std::vector<GmlEntry> entries;
  for (;;) {
    GmlToken t = lex.next();
    if (t.kind == GmlToken::Kind::Close) return entries;
    if (t.kind == GmlToken::Kind::End) parse_fail(t.line, "unexpected end of gml");
    if (t.kind != GmlToken::Kind::Atom) {
      parse_fail(t.line, "expected a key, got \"" + t.text + "\"");
    }
    entries.push_back(gml_parse_entry(lex, t));
  }
}

AttributedGraph parse_gml(const std::string& text) {
  GmlLexer lex(text);
  GmlToken head = lex.next();
  if (head.kind != GmlToken::Kind::Atom || head.text != "graph") {
    parse_fail(head.line, "gml document must start with \"graph\"");
  }
  GmlToken open = lex.next();
  if (open.kind != GmlToken::Kind::Open) {
    parse_fail(open.line, "expected '[' after \"graph\"");
  }
  const std::vector<GmlEntry> entries = gml_parse_entries(lex);
  GmlToken tail = lex.next();
  if (tail.kind != GmlToken::Kind::End) {
    parse_fail(tail.line, "trailing content after closing ']'");
  }

  bool directed = false;
  AttrMap graph_attrs;
  std::vector<NodeRecord> nodes;
  std::vector<EdgeRecord> edges;

  for (const GmlEntry& entry : entries) {
    if (entry.key == "directed") {
      if (!entry.scalar || !entry.scalar->is_integer() ||
          (entry.scalar->as_integer() != 0 && entry.scalar->as_integer() != 1)) {
        parse_fail(entry.line, "\"directed\" must be 0 or 1");
      }
      directed = entry.scalar->as_integer() == 1;
      continue;
    }
    if (entry.key == "node" || entry.key == "edge") {
      if (!entry.list) parse_fail(entry.line, "\"" + entry.key + "\" needs a [...] body");
      AttrMap attrs;
      std::optional<std::int64_t> id;
      std::optional<std::int64_t> source;
      std::optional<std::int64_t> target;
      for (const GmlEntry& field : *entry.list) {
        if (field.list) {
          parse_fail(field.line, "nested lists inside \"" + entry.key +
                                     "\" are not supported");
        }
        if (field.key == "id" && entry.key == "node") {
          if (!field.scalar->is_integer()) parse_fail(field.line, "\"id\" must be an integer");
          id = field.scalar->as_integer();
          continue;
        }
        if (field.key == "source" && entry.key == "edge") {
          if (!field.scalar->is_integer()) parse_fail(field.line, "\"source\" must be an integer");
          source = field.scalar->as_integer();
          continue;
        }
        if (field.key == "target" && entry.key == "edge") {
          if (!field.scalar->is_integer()) parse_fail(field.line, "\"target\" must be an integer");
          target = field.scalar->as_integer();
          continue;
        }
        if (!attrs.emplace(field.key, *field.scalar).second) {
          parse_fail(field.line, "duplicate key \"" + field.key + "\"");
        }
      }
      if (entry.key == "node") {
        if (!id) parse_fail(entry.line, "node without \"id\"");
        nodes.push_back({static_cast<NodeId>(*id), std::move(attrs)});
      } else {
        if (!source || !target) parse_fail(entry.line, "edge needs \"source\" and \"target\"");
        edges.push_back({static_cast<NodeId>(*source), static_cast<NodeId>(*target),
                         std::move(attrs)});
      }
      continue;
    }
    if (!entry.scalar) {
      parse_fail(entry.line, "unexpected list value for graph key \"" + entry.key + "\"");
    }
    if (!graph_attrs.emplace(entry.key, *entry.scalar).second) {
      parse_fail(entry.line, "duplicate graph key \"" + entry.key + "\"");
    }
  }

  std::sort(nodes.begin(), nodes.end(),
            [](const NodeRecord& a, const NodeRecord& b) { return a.id < b.id; });
  return AttributedGraph(directed, std::move(nodes), std::move(edges),
                         std::move(graph_attrs));
}

// ------------------------------------------------------------ GraphML ----

std::string xml_escape(const std::string& s, bool attr_context) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        out += attr_context ? "&quot;" : "\"";
        break;
      case '\'':
        out += attr_context ? "&apos;" : "'";
        break;
      default: out += c;
    }
  }
  return out;
}

std::string_view graphml_type(AttrValue::Kind kind) {
  switch (kind) {
    case AttrValue::Kind::Text: return "string";
    case AttrValue::Kind::Integer: return "long";
    case AttrValue::Kind::Real: return "double";
    case AttrValue::Kind::Boolean: return "boolean";
  }
  return "string";
}

struct GraphmlKey {
  std::string id;
  std::string domain;  // graph | node | edge
  std::string name;
  AttrValue::Kind kind = AttrValue::Kind::Text;
};

// Collects (domain, name) -> kind, rejecting cross-element type conflicts.
std::vector<GraphmlKey> graphml_keys(const AttributedGraph& g) {
  std::map<std::pair<std::string, std::string>, AttrValue::Kind> types;
  auto note = [&](const std::string& domain, const AttrMap& attrs,
                  const std::string& where) {
    for (const auto& [name, value] : attrs) {
      auto key = std::make_pair(domain, name);
      auto it = types.find(key);
      if (it == types.end()) {
        types.emplace(key, value.kind());
      } else if (it->second != value.kind()) {
        throw_error(ErrorCategory::Validation,
                    where + " attribute \"" + name + "\" mixes " +
                        std::string(to_string(it->second)) + " and " +
                        std::string(to_string(value.kind())) +
                        " values; graphml keys are typed");
      }
    }
  };
  note("graph", g.graph_attrs(), "graph");
  for (const NodeRecord& n : g.nodes()) {
    note("node", n.attrs, "node " + std::to_string(n.id));
  }
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    note("edge", g.edges()[i].attrs, "edge " + std::to_string(i));
  }

  std::vector<GraphmlKey> keys;
  for (const std::string domain : {"graph", "node", "edge"}) {
    for (const auto& [key, kind] : types) {
      if (key.first != domain) continue;
      GraphmlKey k;
      k.id = "d" + std::to_string(keys.size());
      k.domain = domain;
      k.name = key.second;
      k.kind = kind;
      keys.push_back(std::move(k));
    }
  }
  return keys;
}

std::string render_graphml(const AttributedGraph& g, bool compact) {
  const std::vector<GraphmlKey> keys = graphml_keys(g);
  auto key_id = [&](const std::string& domain, const std::string& name) {
    for (const GraphmlKey& k : keys) {
      if (k.domain == domain && k.name == name) return k.id;
    }
    throw_error(ErrorCategory::Validation, "missing graphml key for " + name);
  };

  std::vector<std::pair<int, std::string>> lines;
  lines.emplace_back(0, R"(<?xml version="1.0" encoding="UTF-8"?>)");
  lines.emplace_back(0, R"(<graphml xmlns="http://graphml.graphdrawing.org/xmlns">)");
  for (const GraphmlKey& k : keys) {
    lines.emplace_back(1, "<key id=\"" + k.id + "\" for=\"" + k.domain +
                              "\" attr.name=\"" + xml_escape(k.name, true) +
                              "\" attr.type=\"" + std::string(graphml_type(k.kind)) +
                              "\"/>");
  }
  lines.emplace_back(1, std::string("<graph edgedefault=\"") +
                            (g.directed() ? "directed" : "undirected") + "\">");
  auto data_lines = [&](int indent, const std::string& domain, const AttrMap& attrs) {
    for (const auto& [name, value] : attrs) {
      lines.emplace_back(indent, "<data key=\"" + key_id(domain, name) + "\">" +
                                     xml_escape(value.render(), false) + "</data>");
    }
  };
  data_lines(2, "graph", g.graph_attrs());
  for (const NodeRecord& n : g.nodes()) {
    if (n.attrs.empty()) {
      lines.emplace_back(2, "<node id=\"n" + std::to_string(n.id) + "\"/>");
      continue;
    }
    lines.emplace_back(2, "<node id=\"n" + std::to_string(n.id) + "\">");
    data_lines(3, "node", n.attrs);
    lines.emplace_back(2, "</node>");
  }
  for (const EdgeRecord& e : g.edges()) {
    const std::string open = "<edge source=\"n" + std::to_string(e.src) +
                             "\" target=\"n" + std::to_string(e.dst) + "\"";
    if (e.attrs.empty()) {
      lines.emplace_back(2, open + "/>");
      continue;
    }
    lines.emplace_back(2, open + ">");
    data_lines(3, "edge", e.attrs);
    lines.emplace_back(2, "</edge>");
  }
  lines.emplace_back(1, "</graph>");
  lines.emplace_back(0, "</graphml>");

  std::string out;
  if (compact) {
    for (const auto& [indent, text] : lines) {
      (void)indent;
      out += text;
    }
    out += '\n';
  } else {
    for (const auto& [indent, text] : lines) {
      out.append(static_cast<std::size_t>(indent) * 2, ' ');
      out += text;
      out += '\n';
    }
  }
  return out;
}

struct XmlElement {
  std::string tag;
  std::map<std::string, std::string> attrs;
  std::vector<XmlElement> children;
  std::string text;
  std::size_t line = 1;
};

class XmlParser {
public:
  explicit XmlParser(const std::string& src) : src_(src) {}

  XmlElement parse_document() {
    skip_prolog();
    XmlElement root = parse_element();
    skip_ws();
    if (pos_ < src_.size()) parse_fail(line_, "trailing content after root element");
    return root;
  }

private:
  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])) != 0) {
      if (src_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  void skip_prolog() {
    skip_ws();
    while (pos_ + 1 < src_.size() && src_[pos_] == '<' &&
           (src_[pos_ + 1] == '?' || src_[pos_ + 1] == '!')) {
      if (src_.compare(pos_, 4, "<!--") == 0) {
        skip_comment();
      } else {
        const std::size_t end = src_.find('>', pos_);
        if (end == std::string::npos) parse_fail(line_, "unterminated declaration");
        bump_lines(pos_, end);
        pos_ = end + 1;
      }
      skip_ws();
    }
  }

  void skip_comment() {
    const std::size_t end = src_.find("-->", pos_);
    if (end == std::string::npos) parse_fail(line_, "unterminated comment");
    bump_lines(pos_, end);
    pos_ = end + 3;
  }

  void bump_lines(std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to && i < src_.size(); ++i) {
      if (src_[i] == '\n') ++line_;
    }
  }

  std::string parse_name() {
    std::string name;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' ||
          c == '-' || c == '.' || c == ':') {
        name += c;
        ++pos_;
      } else {
        break;
      }
    }
    if (name.empty()) parse_fail(line_, "expected an xml name");
    return name;
  }

  std::string decode_entities(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '&') {
        out += s[i];
        continue;
      }
      const std::size_t semi = s.find(';', i);
      if (semi == std::string::npos) parse_fail(line_, "unterminated xml entity");
      const std::string name = s.substr(i + 1, semi - i - 1);
      if (name == "amp") out += '&';
      else if (name == "lt") out += '<';
      else if (name == "gt") out += '>';
      else if (name == "quot") out += '"';
      else if (name == "apos") out += '\'';
      else parse_fail(line_, "unsupported xml entity &" + name + ";");
      i = semi;
    }
    return out;
  }

  XmlElement parse_element() {
    if (pos_ >= src_.size() || src_[pos_] != '<') {
      parse_fail(line_, "expected '<'");
    }
    XmlElement el;
    el.line = line_;
    ++pos_;
    el.tag = parse_name();
    // Attributes.
    for (;;) {
      skip_ws();
      if (pos_ >= src_.size()) parse_fail(line_, "unterminated tag");
      if (src_[pos_] == '/') {
        if (pos_ + 1 >= src_.size() || src_[pos_ + 1] != '>') {
          parse_fail(line_, "malformed self-closing tag");
        }
        pos_ += 2;
        return el;
      }
      if (src_[pos_] == '>') {
        ++pos_;
        break;
      }
      const std::string name = parse_name();
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] != '=') parse_fail(line_, "expected '='");
      ++pos_;
      skip_ws();
      if (pos_ >= src_.size() || (src_[pos_] != '"' && src_[pos_] != '\'')) {
        parse_fail(line_, "expected a quoted attribute value");
      }
      const char quote = src_[pos_];
      ++pos_;
      const std::size_t end = src_.find(quote, pos_);
      if (end == std::string::npos) parse_fail(line_, "unterminated attribute value");
      bump_lines(pos_, end);
      el.attrs[name] = decode_entities(src_.substr(pos_, end - pos_));
      pos_ = end + 1;
    }
    // Content: child elements and/or text until </tag>.
    std::string text;
    for (;;) {
      if (pos_ >= src_.size()) parse_fail(line_, "unterminated element <" + el.tag + ">");
      if (src_[pos_] == '<') {
        if (src_.compare(pos_, 4, "<!--") == 0) {
          skip_comment();
          continue;
        }
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
          pos_ += 2;
          const std::string close = parse_name();
          if (close != el.tag) {
            parse_fail(line_, "mismatched closing tag </" + close + ">");
          }
          skip_ws();
          if (pos_ >= src_.size() || src_[pos_] != '>') parse_fail(line_, "expected '>'");
          ++pos_;
          el.text = decode_entities(text);
          return el;
        }
        el.children.push_back(parse_element());
        continue;
      }
      if (src_[pos_] == '\n') ++line_;
      text += src_[pos_];
      ++pos_;
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

AttrValue graphml_value(const std::string& text, AttrValue::Kind kind,
                        std::size_t line) {
  switch (kind) {
    case AttrValue::Kind::Text: return AttrValue::text(text);
    case AttrValue::Kind::Integer: {
      if (!is_integer_literal(text)) parse_fail(line, "expected a long value");
      return AttrValue::integer(std::strtoll(text.c_str(), nullptr, 10));
    }
    case AttrValue::Kind::Real: {
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
        parse_fail(line, "expected a double value");
      }
      return AttrValue::real(v);
    }
    case AttrValue::Kind::Boolean: {
      if (text == "true" || text == "1") return AttrValue::boolean(true);
      if (text == "false" || text == "0") return AttrValue::boolean(false);
      parse_fail(line, "expected a boolean value");
    }
  }
  parse_fail(line, "unknown graphml value kind");
}

NodeId graphml_node_id(const std::string& raw, std::size_t line) {
  if (raw.size() < 2 || raw[0] != 'n' || !is_integer_literal(raw.substr(1))) {
    throw_error(ErrorCategory::Parse,
                "line " + std::to_string(line) + ": node id \"" + raw +
                    "\" is outside the supported \"n<number>\" form");
  }
  return static_cast<NodeId>(std::strtoll(raw.c_str() + 1, nullptr, 10));
}

AttributedGraph parse_graphml(const std::string& text) {
  XmlParser parser(text);
  const XmlElement root = parser.parse_document();
  if (root.tag != "graphml") {
    parse_fail(root.line, "root element must be <graphml>");
  }

  std::map<std::string, GraphmlKey> keys;
  const XmlElement* graph = nullptr;
  for (const XmlElement& child : root.children) {
    if (child.tag == "key") {
      GraphmlKey k;
      auto need = [&](const char* name) {
        auto it = child.attrs.find(name);
        if (it == child.attrs.end()) {
          parse_fail(child.line, std::string("<key> missing \"") + name + "\"");
        }
        return it->second;
      };
      k.id = need("id");
      k.domain = need("for");
      k.name = need("attr.name");
      const std::string type = need("attr.type");
      if (type == "string") k.kind = AttrValue::Kind::Text;
      else if (type == "long" || type == "int") k.kind = AttrValue::Kind::Integer;
      else if (type == "double" || type == "float") k.kind = AttrValue::Kind::Real;
      else if (type == "boolean") k.kind = AttrValue::Kind::Boolean;
      else parse_fail(child.line, "unsupported attr.type \"" + type + "\"");
      if (k.domain != "graph" && k.domain != "node" && k.domain != "edge") {
        parse_fail(child.line, "unsupported key domain \"" + k.domain + "\"");
      }
      if (!keys.emplace(k.id, k).second) {
        parse_fail(child.line, "duplicate key id \"" + k.id + "\"");
      }
      continue;
    }
    if (child.tag == "graph") {
      if (graph != nullptr) {
        throw_error(ErrorCategory::Parse,
                    "line " + std::to_string(child.line) +
                        ": multiple <graph> elements are not supported");
      }
      graph = &child;
      continue;
    }
    throw_error(ErrorCategory::Parse, "line " + std::to_string(child.line) +
                                          ": unsupported element <" + child.tag + ">");
  }
  if (graph == nullptr) parse_fail(root.line, "missing <graph> element");

  auto edgedefault = graph->attrs.find("edgedefault");
  if (edgedefault == graph->attrs.end() ||
      (edgedefault->second != "directed" && edgedefault->second != "undirected")) {
    parse_fail(graph->line, "<graph> needs edgedefault directed|undirected");
  }
  const bool directed = edgedefault->second == "directed";

  auto read_data = [&](const XmlElement& el, const std::string& domain) {
    AttrMap attrs;
    for (const XmlElement& child : el.children) {
      if (child.tag != "data") {
        throw_error(ErrorCategory::Parse,
                    "line " + std::to_string(child.line) + ": unsupported element <" +
                        child.tag + "> inside <" + el.tag + ">");
      }
      auto key_it = child.attrs.find("key");
      if (key_it == child.attrs.end()) parse_fail(child.line, "<data> missing key");
      auto def = keys.find(key_it->second);
      if (def == keys.end()) {
        parse_fail(child.line, "unknown data key \"" + key_it->second + "\"");
      }
      if (def->second.domain != domain) {
        parse_fail(child.line, "key \"" + key_it->second + "\" is for " +
                                   def->second.domain + " data");
      }
      if (!attrs.emplace(def->second.name,
                         graphml_value(child.text, def->second.kind, child.line))
               .second) {
        parse_fail(child.line, "duplicate data for \"" + def->second.name + "\"");
      }
    }
    return attrs;
  };

  AttrMap graph_attrs;
  std::vector<NodeRecord> nodes;
  std::vector<EdgeRecord> edges;
  for (const XmlElement& child : graph->children) {
    if (child.tag == "data") {
      auto key_it = child.attrs.find("key");
      if (key_it == child.attrs.end()) parse_fail(child.line, "<data> missing key");
      auto def = keys.find(key_it->second);
      if (def == keys.end() || def->second.domain != "graph") {
        parse_fail(child.line, "unknown graph data key");
      }
      if (!graph_attrs
               .emplace(def->second.name,
                        graphml_value(child.text, def->second.kind, child.line))
               .second) {
        parse_fail(child.line, "duplicate data for \"" + def->second.name + "\"");
      }
      continue;
    }
    if (child.tag == "node") {
      auto id_it = child.attrs.find("id");
      if (id_it == child.attrs.end()) parse_fail(child.line, "<node> missing id");
      nodes.push_back({graphml_node_id(id_it->second, child.line),
                       read_data(child, "node")});
      continue;
    }
    if (child.tag == "edge") {
      auto src_it = child.attrs.find("source");
      auto dst_it = child.attrs.find("target");
      if (src_it == child.attrs.end() || dst_it == child.attrs.end()) {
        parse_fail(child.line, "<edge> needs source and target");
      }
      edges.push_back({graphml_node_id(src_it->second, child.line),
                       graphml_node_id(dst_it->second, child.line),
                       read_data(child, "edge")});
      continue;
    }
    throw_error(ErrorCategory::Parse, "line " + std::to_string(child.line) +
                                          ": unsupported element <" + child.tag + ">");
  }

  std::sort(nodes.begin(), nodes.end(),
            [](const NodeRecord& a, const NodeRecord& b) { return a.id < b.id; });
  return AttributedGraph(directed, std::move(nodes), std::move(edges),
                         std::move(graph_attrs));
}

// -------------------------------------------------------- JSON node-link ----

std::string render_node_link(const AttributedGraph& g, bool compact) {
  for (const NodeRecord& n : g.nodes()) {
    if (n.attrs.count("id") != 0) {
      throw_error(ErrorCategory::Validation,
                  "node attribute \"id\" collides with the node-link id field");
    }
  }
  for (const EdgeRecord& e : g.edges()) {
    if (e.attrs.count("source") != 0 || e.attrs.count("target") != 0) {
      throw_error(ErrorCategory::Validation,
                  "edge attribute collides with the node-link source/target fields");
    }
  }
  nlohmann::ordered_json j;
  j["directed"] = g.directed();
  auto& gattrs = j["graph"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : g.graph_attrs()) gattrs[name] = attr_to_json(value);
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for (const NodeRecord& n : g.nodes()) {
    nlohmann::ordered_json jn;
    jn["id"] = n.id;
    for (const auto& [name, value] : n.attrs) jn[name] = attr_to_json(value);
    nodes.push_back(std::move(jn));
  }
  auto& links = j["links"] = nlohmann::ordered_json::array();
  for (const EdgeRecord& e : g.edges()) {
    nlohmann::ordered_json je;
    je["source"] = e.src;
    je["target"] = e.dst;
    for (const auto& [name, value] : e.attrs) je[name] = attr_to_json(value);
    links.push_back(std::move(je));
  }
  return (compact ? j.dump() : j.dump(2)) + "\n";
}

AttributedGraph parse_node_link(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t stop = std::min(e.byte, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') ++line;
    }
    parse_fail(line, e.what());
  }
  if (!j.is_object()) {
    throw_error(ErrorCategory::Parse, "node-link document must be a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "directed" && key != "graph" && key != "nodes" && key != "links") {
      throw_error(ErrorCategory::Parse,
                  "unsupported node-link field \"" + key + "\"");
    }
  }
  if (!j.contains("directed") || !j["directed"].is_boolean()) {
    throw_error(ErrorCategory::Parse, "node-link document needs boolean \"directed\"");
  }
  if (!j.contains("nodes") || !j["nodes"].is_array() || !j.contains("links") ||
      !j["links"].is_array()) {
    throw_error(ErrorCategory::Parse,
                "node-link document needs \"nodes\" and \"links\" arrays");
  }
  AttrMap graph_attrs;
  if (j.contains("graph")) {
    if (!j["graph"].is_object()) {
      throw_error(ErrorCategory::Parse, "\"graph\" must be an object");
    }
    for (const auto& [name, value] : j["graph"].items()) {
      graph_attrs.emplace(name, attr_from_json(value, "graph." + name));
    }
  }
  std::vector<NodeRecord> nodes;
  for (std::size_t i = 0; i < j["nodes"].size(); ++i) {
    const auto& jn = j["nodes"][i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_number_integer()) {
      throw_error(ErrorCategory::Parse, where + ": needs integer \"id\"");
    }
    NodeRecord rec;
    rec.id = jn["id"].get<int>();
    for (const auto& [name, value] : jn.items()) {
      if (name == "id") continue;
      rec.attrs.emplace(name, attr_from_json(value, where + "." + name));
    }
    nodes.push_back(std::move(rec));
  }
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 0; i < j["links"].size(); ++i) {
    const auto& je = j["links"][i];
    const std::string where = "links[" + std::to_string(i) + "]";
    if (!je.is_object() || !je.contains("source") ||
        !je["source"].is_number_integer() || !je.contains("target") ||
        !je["target"].is_number_integer()) {
      throw_error(ErrorCategory::Parse,
                  where + ": needs integer \"source\" and \"target\"");
    }
    EdgeRecord rec;
    rec.src = je["source"].get<int>();
    rec.dst = je["target"].get<int>();
    for (const auto& [name, value] : je.items()) {
      if (name == "source" || name == "target") continue;
      rec.attrs.emplace(name, attr_from_json(value, where + "." + name));
    }
    edges.push_back(std::move(rec));
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const NodeRecord& a, const NodeRecord& b) { return a.id < b.id; });
  return AttributedGraph(j["directed"].get<bool>(), std::move(nodes),
                         std::move(edges), std::move(graph_attrs));
}

// ----------------------------------------------------- Markdown tables ----

bool needs_quoting(const std::string& text) {
  if (text.empty()) return true;
  if (text.front() == '"') return true;
  if (std::isspace(static_cast<unsigned char>(text.front())) != 0 ||
      std::isspace(static_cast<unsigned char>(text.back())) != 0) {
    return true;
  }
  return text == "true" || text == "false" || is_integer_literal(text) ||
         is_real_literal(text);
}

// Value encoding, before pipe escaping: text that could be mistaken for a
// number, boolean, empty cell, or padded cell is wrapped in double quotes
// with internal quotes doubled.
std::string md_encode_value(const AttrValue& v) {
  if (!v.is_text()) return v.render();
  const std::string& text = v.as_text();
  if (!needs_quoting(text)) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string md_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\\' || c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string md_row(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const std::string& cell : cells) {
    out += ' ';
    out += cell;
    out += " |";
  }
  out += '\n';
  return out;
}

std::string md_separator(std::size_t columns) {
  std::string out = "|";
  for (std::size_t i = 0; i < columns; ++i) out += " --- |";
  out += '\n';
  return out;
}

std::string render_markdown(const AttributedGraph& g) {
  if (g.graph_attrs().count("directed") != 0) {
    throw_error(ErrorCategory::Validation,
                "graph attribute \"directed\" collides with the metadata column");
  }
  for (const NodeRecord& n : g.nodes()) {
    if (n.attrs.count("id") != 0) {
      throw_error(ErrorCategory::Validation,
                  "node attribute \"id\" collides with the node table column");
    }
  }
  for (const EdgeRecord& e : g.edges()) {
    if (e.attrs.count("source") != 0 || e.attrs.count("target") != 0) {
      throw_error(ErrorCategory::Validation,
                  "edge attribute collides with the edge table columns");
    }
  }

  std::set<std::string> node_attr_set;
  for (const NodeRecord& n : g.nodes()) {
    for (const auto& [name, value] : n.attrs) {
      (void)value;
      node_attr_set.insert(name);
    }
  }
  std::set<std::string> edge_attr_set;
  for (const EdgeRecord& e : g.edges()) {
    for (const auto& [name, value] : e.attrs) {
      (void)value;
      edge_attr_set.insert(name);
    }
  }
  const std::vector<std::string> node_cols(node_attr_set.begin(), node_attr_set.end());
  const std::vector<std::string> edge_cols(edge_attr_set.begin(), edge_attr_set.end());
  const std::vector<std::string> graph_cols = sorted_attr_names(g.graph_attrs());

  auto cell_for = [&](const AttrMap& attrs, const std::string& name) {
    auto it = attrs.find(name);
    if (it == attrs.end()) return std::string();
    if (it->second.kind() == AttrValue::Kind::Text) {
      for (char c : it->second.as_text()) {
        if (static_cast<unsigned char>(c) < 0x20 || c == '\x7f') {
          throw_error(ErrorCategory::Validation,
                      "attribute \"" + name +
                          "\" is not representable in a markdown table; "
                          "cells cannot carry control characters");
        }
      }
    }
    return md_escape(md_encode_value(it->second));
  };

  std::string out;
  // Metadata table.
  {
    std::vector<std::string> header{"directed"};
    for (const std::string& name : graph_cols) header.push_back(md_escape(name));
    std::vector<std::string> row{g.directed() ? "true" : "false"};
    for (const std::string& name : graph_cols) {
      row.push_back(cell_for(g.graph_attrs(), name));
    }
    out += md_row(header);
    out += md_separator(header.size());
    out += md_row(row);
  }
  out += '\n';
  // Node table.
  {
    std::vector<std::string> header{"id"};
    for (const std::string& name : node_cols) header.push_back(md_escape(name));
    out += md_row(header);
    out += md_separator(header.size());
    for (const NodeRecord& n : g.nodes()) {
      std::vector<std::string> row{std::to_string(n.id)};
      for (const std::string& name : node_cols) row.push_back(cell_for(n.attrs, name));
      out += md_row(row);
    }
  }
  out += '\n';
  // Edge table.
  {
    std::vector<std::string> header{"source", "target"};
    for (const std::string& name : edge_cols) header.push_back(md_escape(name));
    out += md_row(header);
    out += md_separator(header.size());
    for (const EdgeRecord& e : g.edges()) {
      std::vector<std::string> row{std::to_string(e.src), std::to_string(e.dst)};
      for (const std::string& name : edge_cols) row.push_back(cell_for(e.attrs, name));
      out += md_row(row);
    }
  }
  return out;
}

std::vector<std::string> md_split_cells(const std::string& line, std::size_t line_no) {
  if (line.empty() || line.front() != '|') {
    parse_fail(line_no, "table rows must start with '|'");
  }
  std::vector<std::string> cells;
  std::string cell;
  bool escaped = false;
  for (std::size_t i = 1; i < line.size(); ++i) {
    const char c = line[i];
    if (escaped) {
      cell += '\\';
      cell += c;
      escaped = false;
      continue;
    }
    if (c == '\\') {
      escaped = true;
      continue;
    }
    if (c == '|') {
      cells.push_back(cell);
      cell.clear();
      continue;
    }
    cell += c;
  }
  if (escaped) parse_fail(line_no, "dangling backslash");
  if (!cell.empty()) {
    // Content after the final pipe.
    for (char c : cell) {
      if (std::isspace(static_cast<unsigned char>(c)) == 0) {
        parse_fail(line_no, "content after the closing '|'");
      }
    }
  }
  // Strip the single-space padding added at render time.
  for (std::string& raw : cells) {
    if (!raw.empty() && raw.front() == ' ') raw.erase(raw.begin());
    if (!raw.empty() && raw.back() == ' ') raw.pop_back();
  }
  return cells;
}

std::string md_unescape(const std::string& s, std::size_t line_no) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    ++i;
    if (i >= s.size() || (s[i] != '\\' && s[i] != '|')) {
      parse_fail(line_no, "unsupported escape in table cell");
    }
    out += s[i];
  }
  return out;
}

std::optional<AttrValue> md_decode_value(const std::string& raw, std::size_t line_no) {
  const std::string s = md_unescape(raw, line_no);
  if (s.empty()) return std::nullopt;  // absent attribute
  if (s.front() == '"') {
    std::string text;
    std::size_t i = 1;
    bool closed = false;
    while (i < s.size()) {
      if (s[i] == '"') {
        if (i + 1 < s.size() && s[i + 1] == '"') {
          text += '"';
          i += 2;
          continue;
        }
        closed = true;
        if (i + 1 != s.size()) parse_fail(line_no, "content after closing quote");
        break;
      }
      text += s[i];
      ++i;
    }
    if (!closed) parse_fail(line_no, "unterminated quoted cell");
    return AttrValue::text(text);
  }
  if (auto scalar = scalar_from_text(s)) return *scalar;
  return AttrValue::text(s);
}

struct MdTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // raw cells
  std::size_t line = 1;
};

MdTable md_parse_table(const std::vector<std::pair<std::size_t, std::string>>& lines) {
  if (lines.size() < 2) parse_fail(lines.empty() ? 1 : lines[0].first, "truncated table");
  MdTable table;
  table.line = lines[0].first;
  const auto raw_header = md_split_cells(lines[0].second, lines[0].first);
  for (const std::string& cell : raw_header) {
    table.header.push_back(md_unescape(cell, lines[0].first));
  }
  const auto separator = md_split_cells(lines[1].second, lines[1].first);
  if (separator.size() != table.header.size()) {
    parse_fail(lines[1].first, "separator width does not match the header");
  }
  for (const std::string& cell : separator) {
    if (cell.empty() || cell.find_first_not_of('-') != std::string::npos) {
      parse_fail(lines[1].first, "malformed separator row");
    }
  }
  for (std::size_t i = 2; i < lines.size(); ++i) {
    auto cells = md_split_cells(lines[i].second, lines[i].first);
    if (cells.size() != table.header.size()) {
      parse_fail(lines[i].first, "row width does not match the header");
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

AttributedGraph parse_markdown(const std::string& text) {
  // Group lines into blank-separated blocks.
  std::vector<std::vector<std::pair<std::size_t, std::string>>> blocks;
  std::vector<std::pair<std::size_t, std::string>> current;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string line = text.substr(
        start, end == std::string::npos ? std::string::npos : end - start);
    ++line_no;
    const bool blank =
        line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
    } else {
      current.emplace_back(line_no, line);
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (!current.empty()) blocks.push_back(std::move(current));

  if (blocks.size() != 3) {
    throw_error(ErrorCategory::Parse,
                "expected metadata, node, and edge tables; found " +
                    std::to_string(blocks.size()) + " blocks");
  }
  const MdTable meta = md_parse_table(blocks[0]);
  const MdTable node_table = md_parse_table(blocks[1]);
  const MdTable edge_table = md_parse_table(blocks[2]);

  if (meta.header.empty() || meta.header[0] != "directed") {
    parse_fail(meta.line, "metadata table must start with a \"directed\" column");
  }
  if (meta.rows.size() != 1) {
    parse_fail(meta.line, "metadata table must have exactly one row");
  }
  const std::string directed_cell = md_unescape(meta.rows[0][0], meta.line);
  if (directed_cell != "true" && directed_cell != "false") {
    parse_fail(meta.line, "\"directed\" must be true or false");
  }
  const bool directed = directed_cell == "true";
  AttrMap graph_attrs;
  for (std::size_t c = 1; c < meta.header.size(); ++c) {
    if (auto v = md_decode_value(meta.rows[0][c], meta.line)) {
      graph_attrs.emplace(meta.header[c], *v);
    }
  }

  if (node_table.header.empty() || node_table.header[0] != "id") {
    parse_fail(node_table.line, "node table must start with an \"id\" column");
  }
  std::vector<NodeRecord> nodes;
  for (const auto& row : node_table.rows) {
    const std::string id_cell = md_unescape(row[0], node_table.line);
    if (!is_integer_literal(id_cell)) {
      parse_fail(node_table.line, "node id \"" + id_cell + "\" is not an integer");
    }
    NodeRecord rec;
    rec.id = static_cast<NodeId>(std::strtoll(id_cell.c_str(), nullptr, 10));
    for (std::size_t c = 1; c < node_table.header.size(); ++c) {
      if (auto v = md_decode_value(row[c], node_table.line)) {
        rec.attrs.emplace(node_table.header[c], *v);
      }
    }
    nodes.push_back(std::move(rec));
  }

  if (edge_table.header.size() < 2 || edge_table.header[0] != "source" ||
      edge_table.header[1] != "target") {
    parse_fail(edge_table.line,
               "edge table must start with \"source\" and \"target\" columns");
  }
  std::vector<EdgeRecord> edges;
  for (const auto& row : edge_table.rows) {
    const std::string src_cell = md_unescape(row[0], edge_table.line);
    const std::string dst_cell = md_unescape(row[1], edge_table.line);
    if (!is_integer_literal(src_cell) || !is_integer_literal(dst_cell)) {
      parse_fail(edge_table.line, "edge endpoints must be integers");
    }
    EdgeRecord rec;
    rec.src = static_cast<NodeId>(std::strtoll(src_cell.c_str(), nullptr, 10));
    rec.dst = static_cast<NodeId>(std::strtoll(dst_cell.c_str(), nullptr, 10));
    for (std::size_t c = 2; c < edge_table.header.size(); ++c) {
      if (auto v = md_decode_value(row[c], edge_table.line)) {
        rec.attrs.emplace(edge_table.header[c], *v);
      }
    }
    edges.push_back(std::move(rec));
  }

  std::sort(nodes.begin(), nodes.end(),
            [](const NodeRecord& a, const NodeRecord& b) { return a.id < b.id; });
  return AttributedGraph(directed, std::move(nodes), std::move(edges),
                         std::move(graph_attrs));
}

}  // namespace

std::string_view format_name(FormatSpec::Kind kind) {
  switch (kind) {
    case FormatSpec::Kind::GML: return "gml";
    case FormatSpec::Kind::GraphML: return "graphml";
    case FormatSpec::Kind::JSON: return "json";
    case FormatSpec::Kind::MarkdownTable: return "markdown";
  }
  return "json";
}

FormatSpec parse_format_name(const std::string& name) {
  for (FormatSpec::Kind kind : all_format_kinds()) {
    if (name == format_name(kind)) return FormatSpec{kind, false};
  }
  throw_error(ErrorCategory::Config,
              "unknown format \"" + name +
                  "\"; expected gml, graphml, json, or markdown");
}

const std::vector<FormatSpec::Kind>& all_format_kinds() {
  static const std::vector<FormatSpec::Kind> kinds{
      FormatSpec::Kind::GML, FormatSpec::Kind::GraphML, FormatSpec::Kind::JSON,
      FormatSpec::Kind::MarkdownTable};
  return kinds;
}

std::string render_graph_text(const AttributedGraph& g, const FormatSpec& fmt) {
  switch (fmt.kind) {
    case FormatSpec::Kind::GML: return render_gml(g, fmt.compact);
    case FormatSpec::Kind::GraphML: return render_graphml(g, fmt.compact);
    case FormatSpec::Kind::JSON: return render_node_link(g, fmt.compact);
    case FormatSpec::Kind::MarkdownTable: return render_markdown(g);
  }
  throw_error(ErrorCategory::Config, "unknown format");
}

AttributedGraph parse_graph_text(const std::string& text, const FormatSpec& fmt) {
  switch (fmt.kind) {
    case FormatSpec::Kind::GML: return parse_gml(text);
    case FormatSpec::Kind::GraphML: return parse_graphml(text);
    case FormatSpec::Kind::JSON: return parse_node_link(text);
    case FormatSpec::Kind::MarkdownTable: return parse_markdown(text);
  }
  throw_error(ErrorCategory::Config, "unknown format");
}

}  // namespace forge
