#pragma once

// Text and JSON formats for posets and digraphs.
//
//   poset 4            digraph 3
//   cover 1 3 W        arc 1 2
//   cover 3 2 S        arc 3 2
//
// Elements are 1-based in every external format. Blank lines and lines
// starting with '#' are ignored; a header line starts a new object.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "digraph.hpp"
#include "error.hpp"
#include "json.hpp"
#include "poset.hpp"

namespace qsymtree {

using Object = std::variant<LabeledPoset, Digraph>;

inline std::string to_text(const LabeledPoset& p) {
  std::string s = "poset " + std::to_string(p.size()) + "\n";
  for (const Cover& c : p.covers()) {
    s += "cover " + std::to_string(c.lower + 1) + " " + std::to_string(c.upper + 1) + " " + strictness_char(c.strictness) + "\n";
  }
  return s;
}

inline std::string to_text(const Digraph& g) {
  std::string s = "digraph " + std::to_string(g.size()) + "\n";
  for (auto [u, v] : g.arcs()) s += "arc " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  return s;
}

inline std::string to_text(const Object& o) {
  return std::visit([](const auto& x) { return to_text(x); }, o);
}

inline nlohmann::json to_json(const LabeledPoset& p) {
  nlohmann::json covers = nlohmann::json::array();
  for (const Cover& c : p.covers()) covers.push_back({c.lower + 1, c.upper + 1, std::string(1, strictness_char(c.strictness))});
  return {{"type", "poset"}, {"n", p.size()}, {"covers", covers}};
}

inline nlohmann::json to_json(const Digraph& g) {
  nlohmann::json arcs = nlohmann::json::array();
  for (auto [u, v] : g.arcs()) arcs.push_back({u + 1, v + 1});
  return {{"type", "digraph"}, {"n", g.size()}, {"arcs", arcs}};
}

namespace detail {

inline Strictness parse_strictness(const std::string& s, int line) {
  if (s == "W" || s == "w") return Strictness::Weak;
  if (s == "S" || s == "s") return Strictness::Strict;
  throw ParseError("strictness must be W or S, got '" + s + "'", line);
}

inline int parse_int(const std::string& tok, int line, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty()) throw ParseError(std::string("expected integer ") + what + ", got '" + tok + "'", line);
  return v;
}

inline int parse_element(const std::string& tok, int n, int line) {
  int v = parse_int(tok, line, "element");
  if (v < 1 || v > n) throw ParseError("element " + tok + " out of range 1.." + std::to_string(n), line);
  return v - 1;
}

/// Builds the poset; on failure, blames the first cover line whose prefix
/// is already inconsistent.
inline LabeledPoset build_poset(int n, const std::vector<Cover>& covers, const std::vector<int>& lines, int header_line) {
  try {
    return LabeledPoset(n, covers);
  } catch (const std::invalid_argument& e) {
    for (std::size_t i = 1; i <= covers.size(); ++i) {
      try {
        LabeledPoset(n, std::vector<Cover>(covers.begin(), covers.begin() + static_cast<std::ptrdiff_t>(i)));
      } catch (const std::invalid_argument& inner) {
        throw ParseError(inner.what(), lines[i - 1]);
      }
    }
    throw ParseError(e.what(), header_line);
  }
}

inline Digraph build_digraph(int n, const std::vector<std::pair<int, int>>& arcs, const std::vector<int>& lines, int header_line) {
  try {
    return Digraph(n, arcs);
  } catch (const std::invalid_argument& e) {
    for (std::size_t i = 1; i <= arcs.size(); ++i) {
      try {
        Digraph(n, std::vector<std::pair<int, int>>(arcs.begin(), arcs.begin() + static_cast<std::ptrdiff_t>(i)));
      } catch (const std::invalid_argument& inner) {
        throw ParseError(inner.what(), lines[i - 1]);
      }
    }
    throw ParseError(e.what(), header_line);
  }
}

inline Object object_from_json(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    const int n = j.at("n").get<int>();
    if (type == "poset") {
      std::vector<Cover> covers;
      for (const auto& c : j.at("covers")) {
        covers.push_back({c.at(0).get<int>() - 1, c.at(1).get<int>() - 1, parse_strictness(c.at(2).get<std::string>(), 0)});
      }
      return LabeledPoset(n, std::move(covers));
    }
    if (type == "digraph") {
      std::vector<std::pair<int, int>> arcs;
      for (const auto& a : j.at("arcs")) arcs.push_back({a.at(0).get<int>() - 1, a.at(1).get<int>() - 1});
      return Digraph(n, std::move(arcs));
    }
    throw ParseError("unknown object type '" + type + "'", 0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON object: ") + e.what(), 0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace detail

/// All objects in a text or JSON document (a JSON object or array of them).
inline std::vector<Object> parse_objects(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    std::vector<Object> out;
    if (j.is_array()) {
      for (const auto& x : j) out.push_back(detail::object_from_json(x));
    } else {
      out.push_back(detail::object_from_json(j));
    }
    return out;
  }

  std::vector<Object> out;
  enum class Kind { None, Poset, Digraph } kind = Kind::None;
  int n = 0, header_line = 0;
  std::vector<Cover> covers;
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> lines;
  auto flush = [&] {
    if (kind == Kind::Poset) out.emplace_back(detail::build_poset(n, covers, lines, header_line));
    if (kind == Kind::Digraph) out.emplace_back(detail::build_digraph(n, arcs, lines, header_line));
    kind = Kind::None;
    covers.clear();
    arcs.clear();
    lines.clear();
  };

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    const std::string& head = tok[0];
    if (head == "poset" || head == "digraph") {
      flush();
      if (tok.size() != 2) throw ParseError("header takes exactly one size", line);
      n = detail::parse_int(tok[1], line, "size");
      if (n < 0 || n > kMaxPosetSize) throw ParseError("size out of range", line);
      kind = head == "poset" ? Kind::Poset : Kind::Digraph;
      header_line = line;
    } else if (head == "cover") {
      if (kind != Kind::Poset) throw ParseError("'cover' outside a poset block", line);
      if (tok.size() != 4) throw ParseError("expected 'cover <a> <b> W|S'", line);
      covers.push_back({detail::parse_element(tok[1], n, line), detail::parse_element(tok[2], n, line),
                        detail::parse_strictness(tok[3], line)});
      lines.push_back(line);
    } else if (head == "arc") {
      if (kind != Kind::Digraph) throw ParseError("'arc' outside a digraph block", line);
      if (tok.size() != 3) throw ParseError("expected 'arc <u> <v>'", line);
      arcs.push_back({detail::parse_element(tok[1], n, line), detail::parse_element(tok[2], n, line)});
      lines.push_back(line);
    } else {
      throw ParseError("unknown record '" + head + "'", line);
    }
  }
  flush();
  return out;
}

inline std::vector<Object> read_objects(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_objects(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

namespace detail {

inline std::vector<std::string> split_literal(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  for (auto& p : parts) {
    auto b = p.find_first_not_of(" \t");
    auto e = p.find_last_not_of(" \t");
    p = b == std::string::npos ? "" : p.substr(b, e - b + 1);
  }
  return parts;
}

}  // namespace detail

/// "3; 1<2 W; 1<3 S": size, then covers "a<b" with optional W|S (default W).
inline LabeledPoset parse_poset_literal(const std::string& s) {
  auto parts = detail::split_literal(s);
  const int n = detail::parse_int(parts[0], 1, "size");
  std::vector<Cover> covers;
  std::vector<int> lines;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const int field = static_cast<int>(i) + 1;
    if (parts[i].empty()) continue;
    std::istringstream ls(parts[i]);
    std::string rel, st = "W";
    ls >> rel >> st;
    auto lt = rel.find('<');
    if (lt == std::string::npos) throw ParseError("expected 'a<b [W|S]' in field " + std::to_string(field), field);
    covers.push_back({detail::parse_element(rel.substr(0, lt), n, field), detail::parse_element(rel.substr(lt + 1), n, field),
                      detail::parse_strictness(st, field)});
    lines.push_back(field);
  }
  return detail::build_poset(n, covers, lines, 1);
}

/// "3; 1->2; 3->2".
inline Digraph parse_digraph_literal(const std::string& s) {
  auto parts = detail::split_literal(s);
  const int n = detail::parse_int(parts[0], 1, "size");
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> lines;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const int field = static_cast<int>(i) + 1;
    if (parts[i].empty()) continue;
    auto arrow = parts[i].find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'u->v' in field " + std::to_string(field), field);
    std::string u = parts[i].substr(0, arrow), v = parts[i].substr(arrow + 2);
    u.erase(std::remove_if(u.begin(), u.end(), ::isspace), u.end());
    v.erase(std::remove_if(v.begin(), v.end(), ::isspace), v.end());
    arcs.push_back({detail::parse_element(u, n, field), detail::parse_element(v, n, field)});
    lines.push_back(field);
  }
  return detail::build_digraph(n, arcs, lines, 1);
}

}  // namespace qsymtree
