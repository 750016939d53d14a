#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace minorlab {

// Graphs are limited to fewer than 2^16 vertices.
inline constexpr int kMaxOrder = 65535;
inline constexpr int kDefaultCanonicalBound = 10;
inline constexpr int kMaxEnumerationOrder = 8;

struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  // Stores the endpoints in increasing order.
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class FiniteGraph {
 public:
  FiniteGraph() = default;
  explicit FiniteGraph(int order);
  // Accepts edges in any orientation; rejects loops, duplicates and bad endpoints.
  FiniteGraph(int order, std::vector<Edge> edges);

  static FiniteGraph complete(int n);
  static FiniteGraph path(int n);
  static FiniteGraph cycle(int n);
  static FiniteGraph star(int leaves);
  static FiniteGraph complete_bipartite(int a, int b);
  static FiniteGraph petersen();

  int order() const { return order_; }
  int size() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(int u, int v) const;

  // Image under old -> new vertex map `perm` (a permutation of 0..order-1).
  FiniteGraph relabeled(const std::vector<int>& perm) const;
  // Subgraph induced by `vertices`; vertex i of the result is vertices[i].
  FiniteGraph induced(const std::vector<int>& vertices) const;
  FiniteGraph disjoint_union(const FiniteGraph& other) const;

  friend bool operator==(const FiniteGraph& a, const FiniteGraph& b) {
    return a.order_ == b.order_ && a.edges_ == b.edges_;
  }

 private:
  int order_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

class MarkedGraph {
 public:
  MarkedGraph() = default;
  explicit MarkedGraph(FiniteGraph graph, std::vector<int> marked = {});

  const FiniteGraph& graph() const { return graph_; }
  const std::vector<int>& marked() const { return marked_; }
  bool is_marked(int v) const { return flags_[v] != 0; }
  int order() const { return graph_.order(); }
  MarkedGraph unmarked() const { return MarkedGraph(graph_); }

  friend bool operator==(const MarkedGraph& a, const MarkedGraph& b) {
    return a.graph_ == b.graph_ && a.marked_ == b.marked_;
  }

 private:
  FiniteGraph graph_;
  std::vector<int> marked_;
  std::vector<char> flags_;
};

struct BlockDecomposition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> cut_vertices;
};

std::vector<std::vector<int>> components(const FiniteGraph& g);
bool is_connected(const FiniteGraph& g);
bool is_two_connected(const FiniteGraph& g);
bool is_forest(const FiniteGraph& g);
BlockDecomposition block_decomposition(const FiniteGraph& g);

FiniteGraph suspension(const FiniteGraph& g);
MarkedGraph marked_suspension(const MarkedGraph& mg);

struct CanonicalForm {
  // labeling[old] = new
  std::vector<int> labeling;
  std::vector<Edge> edges;
  std::vector<int> marked;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.edges == b.edges && a.marked == b.marked &&
           a.labeling.size() == b.labeling.size();
  }
};

CanonicalForm canonical_form(const FiniteGraph& g, int bound = kDefaultCanonicalBound);
CanonicalForm canonical_form(const MarkedGraph& mg, int bound = kDefaultCanonicalBound);
bool is_isomorphic(const FiniteGraph& a, const FiniteGraph& b);
bool is_isomorphic(const MarkedGraph& a, const MarkedGraph& b);
// Compact key of a canonical form, usable in hash sets.
std::string canonical_key(const FiniteGraph& g);
std::string canonical_key(const MarkedGraph& mg);

// One representative per isomorphism class, in a fixed order.
std::vector<FiniteGraph> enumerate_graphs(int n, bool connected_only);
// Marked graphs on exactly n vertices with at most max_marks marks, up to
// mark-preserving isomorphism.
std::vector<MarkedGraph> enumerate_marked_graphs(int n, int max_marks, bool connected_only);

// Text format: "graph <n>", "e <u> <v>", "m <v>", '#' comments.
MarkedGraph parse_graph(const std::string& text);
std::string emit_graph(const MarkedGraph& mg);
std::string emit_graph(const FiniteGraph& g);
std::string to_dot(const MarkedGraph& mg, const std::string& name = "G");

}  // namespace minorlab
