#include "mekler/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "mekler/errors.hpp"

namespace mekler {

namespace {

bool parse_index(const std::string& tok, std::size_t& out) {
  if (tok.empty() ||
      !std::all_of(tok.begin(), tok.end(),
                   [](unsigned char c) { return std::isdigit(c) != 0; })) {
    return false;
  }
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(strip_comment(line));
    std::vector<std::string> toks;
    for (std::string t; fields >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (!n) {
      std::size_t count = 0;
      if (toks.size() != 1 || !parse_index(toks[0], count)) {
        throw ParseError("expected the vertex count on its own line", lineno);
      }
      n = count;
      continue;
    }
    std::size_t u = 0, v = 0;
    if (toks.size() != 2 || !parse_index(toks[0], u) ||
        !parse_index(toks[1], v)) {
      throw ParseError("expected an edge `u v` of two vertex indices", lineno);
    }
    if (u >= *n || v >= *n) {
      throw ParseError("vertex index out of range for n = " + std::to_string(*n),
                       lineno);
    }
    if (u == v) throw ParseError("self-loop", lineno);
    edges.emplace_back(u, v);
  }
  if (!n) throw ParseError("missing vertex count", lineno == 0 ? 1 : lineno);
  return Graph(*n, edges);
}

namespace {

struct Token {
  std::string text;
  std::size_t line;
  bool quoted = false;
};

std::vector<Token> tokenize_dot(std::istream& in) {
  std::string src((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  auto at = [&](std::size_t k) { return k < src.size() ? src[k] : '\0'; };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#' || (c == '/' && at(i + 1) == '/')) {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (c == '/' && at(i + 1) == '*') {
      i += 2;
      while (i < src.size() && !(src[i] == '*' && at(i + 1) == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i >= src.size()) throw ParseError("unterminated comment", line);
      i += 2;
    } else if (c == '-' && (at(i + 1) == '-' || at(i + 1) == '>')) {
      out.push_back({src.substr(i, 2), line});
      i += 2;
    } else if (c == '"') {
      const std::size_t start_line = line;
      std::string s;
      ++i;
      while (i < src.size() && src[i] != '"') {
        if (src[i] == '\\' && i + 1 < src.size()) ++i;
        if (src[i] == '\n') ++line;
        s += src[i++];
      }
      if (i >= src.size()) throw ParseError("unterminated string", start_line);
      ++i;
      out.push_back({s, start_line, true});
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
               c == '.') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_' || src[j] == '.')) {
        ++j;
      }
      out.push_back({src.substr(i, j - i), line});
      i = j;
    } else {
      out.push_back({std::string(1, c), line});
      ++i;
    }
  }
  return out;
}

bool is_keyword(const Token& t, const char* kw) {
  if (t.quoted) return false;
  std::string lower = t.text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return lower == kw;
}

bool is_id(const Token& t) {
  if (t.quoted) return true;
  const unsigned char c = static_cast<unsigned char>(t.text.front());
  return std::isalnum(c) || c == '_' || c == '.';
}

}  // namespace

Graph parse_dot(std::istream& in) {
  const auto toks = tokenize_dot(in);
  std::size_t k = 0;
  auto line_here = [&] {
    return k < toks.size() ? toks[k].line
                           : (toks.empty() ? 1 : toks.back().line);
  };
  if (k < toks.size() && is_keyword(toks[k], "strict")) ++k;
  if (k < toks.size() && is_keyword(toks[k], "digraph")) {
    throw ParseError("directed graphs are not supported", line_here());
  }
  if (k >= toks.size() || !is_keyword(toks[k], "graph")) {
    throw ParseError("expected `graph`", line_here());
  }
  ++k;
  if (k < toks.size() && is_id(toks[k]) && toks[k].text != "{") ++k;
  if (k >= toks.size() || toks[k].text != "{") {
    throw ParseError("expected `{`", line_here());
  }
  ++k;

  std::vector<std::string> names;
  std::map<std::string, std::size_t> first_seen;
  struct RawEdge {
    std::string a, b;
    std::size_t line;
  };
  std::vector<RawEdge> raw_edges;
  auto note = [&](const std::string& name) {
    if (first_seen.emplace(name, names.size()).second) names.push_back(name);
  };

  bool closed = false;
  while (k < toks.size()) {
    const Token& t = toks[k];
    if (!t.quoted && t.text == "}") {
      closed = true;
      ++k;
      break;
    }
    if (!t.quoted && (t.text == ";" || t.text == ",")) {
      ++k;
      continue;
    }
    if (is_keyword(t, "subgraph") || is_keyword(t, "node") ||
        is_keyword(t, "edge") || is_keyword(t, "graph")) {
      throw ParseError("unsupported DOT statement `" + t.text + "`", t.line);
    }
    if (!is_id(t)) {
      throw ParseError("unexpected token `" + t.text + "`", t.line);
    }
    std::string prev = t.text;
    note(prev);
    ++k;
    while (k < toks.size() && !toks[k].quoted && toks[k].text == "--") {
      ++k;
      if (k >= toks.size() || !is_id(toks[k])) {
        throw ParseError("expected a node id after `--`", line_here());
      }
      note(toks[k].text);
      raw_edges.push_back({prev, toks[k].text, toks[k].line});
      prev = toks[k].text;
      ++k;
    }
    if (k < toks.size() && !toks[k].quoted) {
      const auto& s = toks[k].text;
      if (s == "->") {
        throw ParseError("directed edge in undirected graph", toks[k].line);
      }
      if (s == "[" || s == "=") {
        throw ParseError("attributes are not supported", toks[k].line);
      }
    }
  }
  if (!closed) throw ParseError("missing `}`", line_here());
  if (k != toks.size()) {
    throw ParseError("trailing content after `}`", toks[k].line);
  }

  const bool numeric = std::all_of(names.begin(), names.end(),
                                   [](const std::string& s) {
                                     std::size_t v = 0;
                                     return parse_index(s, v);
                                   });
  std::map<std::string, std::size_t> index;
  std::size_t n = 0;
  if (numeric) {
    for (const auto& s : names) {
      std::size_t v = 0;
      parse_index(s, v);
      index[s] = v;
      n = std::max(n, v + 1);
    }
  } else {
    index = first_seen;
    n = names.size();
  }
  std::vector<Edge> edges;
  for (const auto& e : raw_edges) {
    if (e.a == e.b) throw ParseError("self-loop at node `" + e.a + "`", e.line);
    edges.emplace_back(index.at(e.a), index.at(e.b));
  }
  return Graph(n, edges);
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::istringstream probe(text);
  std::string first;
  for (std::string line; std::getline(probe, line);) {
    std::istringstream words(strip_comment(line));
    if (words >> first) break;
  }
  std::transform(first.begin(), first.end(), first.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::istringstream body(text);
  if (first.rfind("graph", 0) == 0 || first == "strict" ||
      first.rfind("digraph", 0) == 0) {
    return parse_dot(body);
  }
  return parse_edge_list(body);
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

}  // namespace mekler
