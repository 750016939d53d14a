#include "minorlab/graph.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <set>
#include <unordered_set>

#include "minorlab/errors.hpp"

namespace minorlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotNormalForm: return "NotNormalForm";
    case ErrorKind::UnsupportedOrdinal: return "UnsupportedOrdinal";
    case ErrorKind::GroundNotOneConnected: return "GroundNotOneConnected";
    case ErrorKind::TooManyMarks: return "TooManyMarks";
    case ErrorKind::TooFewMarks: return "TooFewMarks";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::PresentationFinite: return "PresentationFinite";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

FiniteGraph::FiniteGraph(int order) : FiniteGraph(order, {}) {}

FiniteGraph::FiniteGraph(int order, std::vector<Edge> edges) : order_(order) {
  if (order < 0 || order > kMaxOrder) {
    throw Error(ErrorKind::BoundExceeded, "graph order " + std::to_string(order));
  }
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= order) throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
    if (e.u == e.v) throw Error(ErrorKind::InvalidArgument, "loop at vertex " + std::to_string(e.u));
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error(ErrorKind::InvalidArgument, "duplicate edge");
  }
  edges_ = std::move(edges);
  adj_.assign(order, {});
  for (const Edge& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

FiniteGraph FiniteGraph::complete(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return FiniteGraph(n, std::move(es));
}

FiniteGraph FiniteGraph::path(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return FiniteGraph(n, std::move(es));
}

FiniteGraph FiniteGraph::cycle(int n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "cycle needs at least 3 vertices");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return FiniteGraph(n, std::move(es));
}

FiniteGraph FiniteGraph::star(int leaves) {
  std::vector<Edge> es;
  for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
  return FiniteGraph(leaves + 1, std::move(es));
}

FiniteGraph FiniteGraph::complete_bipartite(int a, int b) {
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
  return FiniteGraph(a + b, std::move(es));
}

FiniteGraph FiniteGraph::petersen() {
  std::vector<Edge> es;
  for (int i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(i, i + 5);
    es.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return FiniteGraph(10, std::move(es));
}

bool FiniteGraph::adjacent(int u, int v) const {
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

FiniteGraph FiniteGraph::relabeled(const std::vector<int>& perm) const {
  std::vector<Edge> es;
  es.reserve(edges_.size());
  for (const Edge& e : edges_) es.emplace_back(perm[e.u], perm[e.v]);
  return FiniteGraph(order_, std::move(es));
}

FiniteGraph FiniteGraph::induced(const std::vector<int>& vertices) const {
  std::vector<int> index(order_, -1);
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) index[vertices[i]] = i;
  std::vector<Edge> es;
  for (const Edge& e : edges_) {
    if (index[e.u] >= 0 && index[e.v] >= 0) es.emplace_back(index[e.u], index[e.v]);
  }
  return FiniteGraph(static_cast<int>(vertices.size()), std::move(es));
}

FiniteGraph FiniteGraph::disjoint_union(const FiniteGraph& other) const {
  std::vector<Edge> es = edges_;
  for (const Edge& e : other.edges_) es.emplace_back(e.u + order_, e.v + order_);
  return FiniteGraph(order_ + other.order_, std::move(es));
}

MarkedGraph::MarkedGraph(FiniteGraph graph, std::vector<int> marked)
    : graph_(std::move(graph)), marked_(std::move(marked)) {
  std::sort(marked_.begin(), marked_.end());
  marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());
  flags_.assign(graph_.order(), 0);
  for (int v : marked_) {
    if (v < 0 || v >= graph_.order()) throw Error(ErrorKind::InvalidArgument, "mark out of range");
    flags_[v] = 1;
  }
}

std::vector<std::vector<int>> components(const FiniteGraph& g) {
  std::vector<std::vector<int>> result;
  std::vector<char> seen(g.order(), 0);
  for (int s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (int w : g.neighbors(comp[i])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    result.push_back(std::move(comp));
  }
  return result;
}

bool is_connected(const FiniteGraph& g) { return components(g).size() <= 1; }

bool is_forest(const FiniteGraph& g) {
  return g.size() + static_cast<int>(components(g).size()) == g.order();
}

BlockDecomposition block_decomposition(const FiniteGraph& g) {
  const int n = g.order();
  BlockDecomposition out;
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> is_cut(n, 0);
  std::vector<Edge> edge_stack;
  int timer = 0;

  struct Frame {
    int v;
    int parent;
    std::size_t next;
  };

  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    if (g.degree(root) == 0) {
      disc[root] = timer++;
      out.blocks.push_back({root});
      continue;
    }
    int root_children = 0;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        int w = nb[f.next++];
        if (disc[w] < 0) {
          edge_stack.emplace_back(f.v, w);
          disc[w] = low[w] = timer++;
          if (f.v == root) ++root_children;
          stack.push_back({w, f.v, 0});
        } else if (w != f.parent && disc[w] < disc[f.v]) {
          edge_stack.emplace_back(f.v, w);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const int v = f.v;
      const int parent = f.parent;
      stack.pop_back();
      if (parent < 0) continue;
      low[parent] = std::min(low[parent], low[v]);
      if (low[v] >= disc[parent]) {
        if (parent != root) is_cut[parent] = 1;
        std::vector<int> block;
        const Edge stop(parent, v);
        while (true) {
          Edge e = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(e.u);
          block.push_back(e.v);
          if (e == stop) break;
        }
        std::sort(block.begin(), block.end());
        block.erase(std::unique(block.begin(), block.end()), block.end());
        out.blocks.push_back(std::move(block));
      }
    }
    if (root_children > 1) is_cut[root] = 1;
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  for (int v = 0; v < n; ++v)
    if (is_cut[v]) out.cut_vertices.push_back(v);
  return out;
}

bool is_two_connected(const FiniteGraph& g) {
  if (g.order() < 3) return false;
  auto bd = block_decomposition(g);
  return bd.blocks.size() == 1 && static_cast<int>(bd.blocks[0].size()) == g.order();
}

FiniteGraph suspension(const FiniteGraph& g) {
  std::vector<Edge> es = g.edges();
  for (int v = 0; v < g.order(); ++v) es.emplace_back(v, g.order());
  return FiniteGraph(g.order() + 1, std::move(es));
}

MarkedGraph marked_suspension(const MarkedGraph& mg) {
  std::vector<int> marks = mg.marked();
  marks.push_back(mg.order());
  return MarkedGraph(suspension(mg.graph()), std::move(marks));
}

namespace {

// Individualization-refinement canonical labeling with orbit pruning.
class Canonizer {
 public:
  Canonizer(const FiniteGraph& g, const std::vector<int>& initial_colors)
      : g_(g), n_(g.order()), initial_(initial_colors) {}

  std::vector<int> run() {
    std::vector<int> color = initial_;
    refine(color);
    std::vector<int> prefix;
    search(color, prefix);
    return best_labeling_;
  }

 private:
  void refine(std::vector<int>& color) const {
    int classes = count_classes(color);
    while (true) {
      std::vector<std::pair<std::vector<int>, int>> sig(n_);
      for (int v = 0; v < n_; ++v) {
        std::vector<int> s;
        s.reserve(g_.degree(v) + 1);
        s.push_back(color[v]);
        std::vector<int> nc;
        for (int w : g_.neighbors(v)) nc.push_back(color[w]);
        std::sort(nc.begin(), nc.end());
        s.insert(s.end(), nc.begin(), nc.end());
        sig[v] = {std::move(s), v};
      }
      std::vector<int> order(n_);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return sig[a].first < sig[b].first; });
      std::vector<int> next(n_);
      int c = -1;
      for (int i = 0; i < n_; ++i) {
        if (i == 0 || sig[order[i]].first != sig[order[i - 1]].first) ++c;
        next[order[i]] = c;
      }
      color = std::move(next);
      const int now = c + 1;
      if (now == classes) break;
      classes = now;
    }
  }

  static int count_classes(const std::vector<int>& color) {
    std::vector<int> c = color;
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
  }

  std::vector<char> certificate(const std::vector<int>& label) const {
    std::vector<int> inv(n_);
    for (int v = 0; v < n_; ++v) inv[label[v]] = v;
    std::vector<char> cert;
    cert.reserve(static_cast<std::size_t>(n_) * (n_ + 1) / 2);
    for (int i = 0; i < n_; ++i) cert.push_back(static_cast<char>(initial_[inv[i]]));
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) cert.push_back(g_.adjacent(inv[i], inv[j]) ? 1 : 0);
    return cert;
  }

  void search(const std::vector<int>& color, std::vector<int>& prefix) {
    // Target cell: smallest color class of size > 1.
    std::vector<int> count(n_, 0);
    for (int v = 0; v < n_; ++v) ++count[color[v]];
    int target = -1;
    for (int c = 0; c < n_; ++c) {
      if (count[c] > 1) {
        target = c;
        break;
      }
    }
    if (target < 0) {
      leaf(color);
      return;
    }
    std::vector<int> cell;
    for (int v = 0; v < n_; ++v)
      if (color[v] == target) cell.push_back(v);
    std::vector<int> explored;
    for (int v : cell) {
      if (!explored.empty() && in_explored_orbit(v, explored, prefix)) continue;
      std::vector<int> next(n_);
      for (int w = 0; w < n_; ++w) next[w] = 2 * color[w] + 1;
      next[v] = 2 * color[v];
      refine(next);
      prefix.push_back(v);
      search(next, prefix);
      prefix.pop_back();
      explored.push_back(v);
    }
  }

  bool in_explored_orbit(int v, const std::vector<int>& explored,
                         const std::vector<int>& prefix) const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gamma : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return gamma[p] == p; });
      if (!fixes) continue;
      for (int x = 0; x < n_; ++x) parent[find(x)] = find(gamma[x]);
    }
    const int rv = find(v);
    return std::any_of(explored.begin(), explored.end(), [&](int u) { return find(u) == rv; });
  }

  void leaf(const std::vector<int>& label) {
    auto cert = certificate(label);
    if (best_labeling_.empty() || cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_labeling_ = label;
      return;
    }
    if (cert == best_cert_) {
      std::vector<int> best_inv(n_);
      for (int v = 0; v < n_; ++v) best_inv[best_labeling_[v]] = v;
      std::vector<int> gamma(n_);
      for (int v = 0; v < n_; ++v) gamma[v] = best_inv[label[v]];
      automorphisms_.push_back(std::move(gamma));
    }
  }

  const FiniteGraph& g_;
  int n_;
  std::vector<int> initial_;
  std::vector<char> best_cert_;
  std::vector<int> best_labeling_;
  std::vector<std::vector<int>> automorphisms_;
};

CanonicalForm canonize(const FiniteGraph& g, const std::vector<int>& colors,
                       const std::vector<int>& marked, int bound) {
  if (g.order() > bound) {
    throw Error(ErrorKind::BoundExceeded,
                "canonical form bound " + std::to_string(bound) + " exceeded");
  }
  CanonicalForm cf;
  if (g.order() == 0) return cf;
  cf.labeling = Canonizer(g, colors).run();
  for (const Edge& e : g.edges()) cf.edges.emplace_back(cf.labeling[e.u], cf.labeling[e.v]);
  std::sort(cf.edges.begin(), cf.edges.end());
  for (int v : marked) cf.marked.push_back(cf.labeling[v]);
  std::sort(cf.marked.begin(), cf.marked.end());
  return cf;
}

std::string key_of(int order, const CanonicalForm& cf) {
  std::string key;
  key.push_back(static_cast<char>(order));
  for (const Edge& e : cf.edges) {
    key.push_back(static_cast<char>(e.u));
    key.push_back(static_cast<char>(e.v));
  }
  key.push_back('|');
  for (int v : cf.marked) key.push_back(static_cast<char>(v));
  return key;
}

}  // namespace

CanonicalForm canonical_form(const FiniteGraph& g, int bound) {
  return canonize(g, std::vector<int>(g.order(), 0), {}, bound);
}

CanonicalForm canonical_form(const MarkedGraph& mg, int bound) {
  std::vector<int> colors(mg.order(), 0);
  for (int v : mg.marked()) colors[v] = 1;
  return canonize(mg.graph(), colors, mg.marked(), bound);
}

bool is_isomorphic(const FiniteGraph& a, const FiniteGraph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_form(a, kMaxOrder) == canonical_form(b, kMaxOrder);
}

bool is_isomorphic(const MarkedGraph& a, const MarkedGraph& b) {
  if (a.order() != b.order() || a.graph().size() != b.graph().size() ||
      a.marked().size() != b.marked().size()) {
    return false;
  }
  return canonical_form(a, kMaxOrder) == canonical_form(b, kMaxOrder);
}

std::string canonical_key(const FiniteGraph& g) { return key_of(g.order(), canonical_form(g)); }

std::string canonical_key(const MarkedGraph& mg) { return key_of(mg.order(), canonical_form(mg)); }

namespace {

FiniteGraph canonical_graph(const FiniteGraph& g) {
  auto cf = canonical_form(g);
  return FiniteGraph(g.order(), cf.edges);
}

bool graph_order_less(const FiniteGraph& a, const FiniteGraph& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.edges() < b.edges();
}

}  // namespace

std::vector<FiniteGraph> enumerate_graphs(int n, bool connected_only) {
  if (n < 0 || n > kMaxEnumerationOrder) {
    throw Error(ErrorKind::BoundExceeded, "enumeration order " + std::to_string(n));
  }
  std::vector<FiniteGraph> level{FiniteGraph(0)};
  for (int k = 1; k <= n; ++k) {
    std::unordered_set<std::string> seen;
    std::vector<FiniteGraph> next;
    for (const FiniteGraph& g : level) {
      const int prev = k - 1;
      for (std::uint32_t mask = 0; mask < (1u << prev); ++mask) {
        std::vector<Edge> es = g.edges();
        for (int v = 0; v < prev; ++v)
          if (mask & (1u << v)) es.emplace_back(v, prev);
        FiniteGraph h(k, std::move(es));
        FiniteGraph c = canonical_graph(h);
        std::string key = key_of(k, CanonicalForm{{}, c.edges(), {}});
        if (seen.insert(key).second) next.push_back(std::move(c));
      }
    }
    std::sort(next.begin(), next.end(), graph_order_less);
    level = std::move(next);
  }
  if (connected_only) {
    std::erase_if(level, [](const FiniteGraph& g) { return !is_connected(g); });
  }
  return level;
}

std::vector<MarkedGraph> enumerate_marked_graphs(int n, int max_marks, bool connected_only) {
  std::vector<MarkedGraph> out;
  for (const FiniteGraph& g : enumerate_graphs(n, connected_only)) {
    std::set<std::string> seen;
    std::vector<MarkedGraph> batch;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) > max_marks) continue;
      std::vector<int> marks;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) marks.push_back(v);
      MarkedGraph mg(g, marks);
      auto cf = canonical_form(mg);
      if (!seen.insert(key_of(n, cf)).second) continue;
      batch.emplace_back(FiniteGraph(n, cf.edges), cf.marked);
    }
    std::sort(batch.begin(), batch.end(), [](const MarkedGraph& a, const MarkedGraph& b) {
      if (a.marked().size() != b.marked().size()) return a.marked().size() < b.marked().size();
      return a.marked() < b.marked();
    });
    for (auto& mg : batch) out.push_back(std::move(mg));
  }
  return out;
}

}  // namespace minorlab
