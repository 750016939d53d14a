#include "minorlab/constructions.hpp"

#include <map>
#include <numeric>
#include <set>

#include "minorlab/errors.hpp"

namespace minorlab {

Presentation minimal_tree(Ordinal alpha) {
  if (alpha == Ordinal::omega()) {
    return Presentation::node(FiniteGraph(1), {},
                              {FamilyTemplate{Generator::MinTree, Attachment::to_ports({{0, 0}})}});
  }
  if (!alpha.is_finite()) throw Error(ErrorKind::UnsupportedOrdinal, "minimal trees stop at omega");
  return *minimal_tree_presentation(alpha.finite_part());
}

namespace {

PresPtr encode(const HFSet& x, const std::vector<FiniteGraph>& ground, std::map<HFSet, PresPtr>& memo) {
  if (auto it = memo.find(x); it != memo.end()) return it->second;
  PresPtr out;
  if (x.is_ground()) {
    if (x.index() >= static_cast<int>(ground.size())) {
      throw Error(ErrorKind::InvalidArgument, "ground index out of range");
    }
    const FiniteGraph& g = ground[x.index()];
    if (g.order() < 2 || !is_connected(g)) {
      throw Error(ErrorKind::GroundNotOneConnected, "ground graphs must be connected with two vertices");
    }
    auto part = share(Presentation::base(MarkedGraph(g)));
    out = share(Presentation::node(FiniteGraph(1), {},
                                   {ConcreteTemplate{part, Multiplicity::omega(), Attachment::to_all({0})}}));
  } else {
    std::vector<Template> ts;
    for (const HFSet& c : x.items()) {
      ts.push_back(ConcreteTemplate{encode(c, ground, memo), Multiplicity::omega(), Attachment::to_ports({{0, 0}})});
    }
    out = share(Presentation::node(FiniteGraph(1), {}, std::move(ts)));
  }
  memo.emplace(x, out);
  return out;
}

// All injections of k items into 0..n-1, lexicographically.
std::vector<std::vector<int>> injections(int k, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int a = 0; a < n; ++a) {
      if (used[a]) continue;
      used[a] = true;
      cur.push_back(a);
      self(self);
      cur.pop_back();
      used[a] = false;
    }
  };
  rec(rec);
  return out;
}

}  // namespace

Presentation encode_T(const HFSet& x, const std::vector<FiniteGraph>& ground) {
  std::map<HFSet, PresPtr> memo;
  return *encode(x, ground, memo);
}

Presentation build_GC(const std::vector<GCRepresentative>& reps, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative kernel size");
  std::vector<Template> ts;
  for (const auto& rep : reps) {
    PresPtr part = std::holds_alternative<MarkedGraph>(rep)
                       ? share(Presentation::base(std::get<MarkedGraph>(rep)))
                       : share(std::get<Presentation>(rep));
    const std::vector<int>& marks = part->top_marks();
    if (static_cast<int>(marks.size()) > n) throw Error(ErrorKind::TooManyMarks, "representative has more marks than anchors");
    for (const auto& m : injections(static_cast<int>(marks.size()), n)) {
      std::vector<std::pair<int, int>> links;
      for (std::size_t j = 0; j < marks.size(); ++j) links.emplace_back(marks[j], m[j]);
      ts.push_back(ConcreteTemplate{part, Multiplicity::omega(), Attachment::to_ports(std::move(links))});
    }
  }
  if (ts.empty()) throw Error(ErrorKind::InvalidArgument, "a class graph needs a representative");
  return Presentation::node(FiniteGraph(n), {}, std::move(ts));
}

FiniteGraph LabeledTree::graph() const {
  std::vector<Edge> es;
  for (int v = 1; v < order(); ++v) es.emplace_back(parent[v], v);
  return FiniteGraph(order(), std::move(es));
}

bool LabeledTree::labels_valid() const {
  std::vector<std::vector<int>> at(order());
  for (int v = 1; v < order(); ++v) {
    at[v].push_back(label[v]);
    at[parent[v]].push_back(label[v]);
  }
  for (int v = 0; v < order(); ++v) {
    if (at[v].empty() || (at[v].size() == 1 && v != 0)) continue;
    std::sort(at[v].begin(), at[v].end());
    std::vector<int> want(mu);
    std::iota(want.begin(), want.end(), 0);
    if (at[v] != want) return false;
  }
  return true;
}

long long labeled_tree_order(int depth, int mu) {
  long long total = 1;
  long long layer = 1;
  for (int d = 1; d <= depth; ++d) {
    layer *= d == 1 ? mu : mu - 1;
    total += layer;
    if (total > (1ll << 40)) return total;
  }
  return total;
}

LabeledTree labeled_tree(int depth, int mu) {
  if (mu < 1 || depth < 0) throw Error(ErrorKind::InvalidArgument, "bad labeled tree parameters");
  if (labeled_tree_order(depth, mu) > kMaxOrder) throw Error(ErrorKind::BoundExceeded, "labeled tree too large");
  LabeledTree t;
  t.mu = mu;
  t.parent = {-1};
  t.label = {-1};
  t.depth = {0};
  for (int v = 0; v < t.order(); ++v) {
    if (t.depth[v] == depth) continue;
    for (int i = 0; i < mu; ++i) {
      if (i == t.label[v]) continue;
      t.parent.push_back(v);
      t.label.push_back(i);
      t.depth.push_back(t.depth[v] + 1);
    }
  }
  return t;
}

FiniteGraph self_amalgamation(const MarkedGraph& g, int n) {
  const int mu = static_cast<int>(g.marked().size());
  if (mu < 2) throw Error(ErrorKind::TooFewMarks, "self-amalgamation needs two marks");
  if (!is_connected(g.graph())) throw Error(ErrorKind::Disconnected, "self-amalgamation needs a connected graph");
  const LabeledTree tree = labeled_tree(n, mu);
  const int k = g.order();
  if (static_cast<long long>(tree.order()) * k > 4ll * kMaxOrder) {
    throw Error(ErrorKind::BoundExceeded, "self-amalgamation too large");
  }
  // The vertex of copy x that stands for vertex v of g, before identification.
  auto raw = [k](int x, int v) { return x * k + v; };
  std::vector<int> parent(tree.order() * k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int y = 1; y < tree.order(); ++y) {
    const int m = g.marked()[tree.label[y]];
    parent[find(raw(y, m))] = find(raw(tree.parent[y], m));
  }
  std::vector<int> id(parent.size(), -1);
  int next = 0;
  for (int a = 0; a < static_cast<int>(parent.size()); ++a) {
    int r = find(a);
    if (id[r] < 0) id[r] = next++;
    id[a] = id[r];
  }
  std::set<Edge> es;
  for (int x = 0; x < tree.order(); ++x)
    for (const Edge& e : g.graph().edges()) es.insert(Edge(id[raw(x, e.u)], id[raw(x, e.v)]));
  return FiniteGraph(next, std::vector<Edge>(es.begin(), es.end()));
}

FiniteGraph u_map(const MarkedGraph& g, int n) {
  return self_amalgamation(marked_suspension(marked_suspension(g)), n);
}

FiniteGraph unmark_clique_gadget(const MarkedGraph& mg, int t, GadgetSize size) {
  if (t < 0) throw Error(ErrorKind::InvalidArgument, "negative gadget parameter");
  const int s = t + (size == GadgetSize::TPlus4 ? 4 : 2);
  std::vector<Edge> es = mg.graph().edges();
  int next = mg.order();
  for (int x : mg.marked()) {
    std::vector<int> clique{x};
    for (int i = 1; i < s; ++i) clique.push_back(next++);
    for (std::size_t i = 0; i < clique.size(); ++i)
      for (std::size_t j = i + 1; j < clique.size(); ++j) es.emplace_back(clique[i], clique[j]);
  }
  return FiniteGraph(next, std::move(es));
}

Presentation unmark_by_trees(const Presentation& p) {
  const Ordinal alpha = rank(p);
  if (alpha > Ordinal::omega()) throw Error(ErrorKind::UnsupportedOrdinal, "trees stop at omega");
  if (p.is_base()) return Presentation::base(p.as_base().graph.unmarked());
  const auto& node = p.as_node();
  std::vector<Template> ts = node.templates;
  const Presentation tree = minimal_tree(alpha);
  // The tree's root becomes the marked vertex itself.
  for (int v : node.kernel_marks) {
    for (const Template& t : tree.as_node().templates) {
      Template moved = t;
      Attachment& a = std::visit([](auto& x) -> Attachment& { return x.attach; }, moved);
      for (auto& link : a.ports) link.second = v;
      ts.push_back(std::move(moved));
    }
  }
  return Presentation::node(node.kernel, {}, std::move(ts));
}

}  // namespace minorlab
