#include <sstream>

#include "minorlab/errors.hpp"
#include "minorlab/graph.hpp"

namespace minorlab {

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> split_line(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

int parse_int(const Token& t, int line) {
  if (t.text.empty() || t.text.size() > 9) throw ParseError(line, t.column, "bad integer '" + t.text + "'");
  for (char c : t.text) {
    if (c < '0' || c > '9') throw ParseError(line, t.column, "bad integer '" + t.text + "'");
  }
  return std::stoi(t.text);
}

}  // namespace

MarkedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int order = -1;
  std::vector<Edge> edges;
  std::vector<int> marks;
  std::vector<char> marked;
  std::vector<std::vector<int>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = split_line(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;
    if (order < 0) {
      if (head != "graph") throw ParseError(line_no, toks[0].column, "expected 'graph <n>'");
      if (toks.size() != 2) throw ParseError(line_no, toks[0].column, "expected 'graph <n>'");
      order = parse_int(toks[1], line_no);
      if (order > kMaxOrder) throw ParseError(line_no, toks[1].column, "order too large");
      marked.assign(order, 0);
      seen.assign(order, {});
      continue;
    }
    if (head == "e") {
      if (toks.size() != 3) throw ParseError(line_no, toks[0].column, "expected 'e <u> <v>'");
      int u = parse_int(toks[1], line_no);
      int v = parse_int(toks[2], line_no);
      if (u >= order) throw ParseError(line_no, toks[1].column, "vertex out of range");
      if (v >= order) throw ParseError(line_no, toks[2].column, "vertex out of range");
      if (u >= v) throw ParseError(line_no, toks[2].column, "edge must satisfy u < v");
      for (int w : seen[u]) {
        if (w == v) throw ParseError(line_no, toks[0].column, "duplicate edge");
      }
      seen[u].push_back(v);
      edges.emplace_back(u, v);
    } else if (head == "m") {
      if (toks.size() != 2) throw ParseError(line_no, toks[0].column, "expected 'm <v>'");
      int v = parse_int(toks[1], line_no);
      if (v >= order) throw ParseError(line_no, toks[1].column, "vertex out of range");
      if (marked[v]) throw ParseError(line_no, toks[1].column, "duplicate mark");
      marked[v] = 1;
      marks.push_back(v);
    } else {
      throw ParseError(line_no, toks[0].column, "unknown directive '" + head + "'");
    }
  }
  if (order < 0) throw ParseError(line_no + 1, 1, "missing 'graph <n>' header");
  return MarkedGraph(FiniteGraph(order, std::move(edges)), std::move(marks));
}

std::string emit_graph(const MarkedGraph& mg) {
  std::ostringstream out;
  out << "graph " << mg.order() << '\n';
  for (const Edge& e : mg.graph().edges()) out << "e " << e.u << ' ' << e.v << '\n';
  for (int v : mg.marked()) out << "m " << v << '\n';
  return out.str();
}

std::string emit_graph(const FiniteGraph& g) { return emit_graph(MarkedGraph(g)); }

std::string to_dot(const MarkedGraph& mg, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (int v = 0; v < mg.order(); ++v) {
    out << "  " << v;
    if (mg.is_marked(v)) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (const Edge& e : mg.graph().edges()) out << "  " << e.u << " -- " << e.v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace minorlab
