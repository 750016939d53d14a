#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "minorlab/constructions.hpp"
#include "minorlab/errors.hpp"
#include "minorlab/minor.hpp"
#include "minorlab/presentation.hpp"
#include "oracles.hpp"

using namespace minorlab;

namespace {

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

// Graph on the blocks, two blocks adjacent when they share a vertex.
FiniteGraph block_graph(const FiniteGraph& g) {
  auto bd = block_decomposition(g);
  std::vector<Edge> es;
  const int n = static_cast<int>(bd.blocks.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::set<int> a(bd.blocks[i].begin(), bd.blocks[i].end());
      for (int v : bd.blocks[j])
        if (a.count(v)) {
          es.emplace_back(i, j);
          break;
        }
    }
  return FiniteGraph(n, es);
}

int triangles_through(const FiniteGraph& g, int v) {
  int t = 0;
  for (int a : g.neighbors(v))
    for (int b : g.neighbors(v))
      if (a < b && g.adjacent(a, b)) ++t;
  return t;
}

}  // namespace

TEST_CASE("minimal trees") {
  Presentation t0 = minimal_tree(Ordinal::finite(0));
  REQUIRE(t0.is_base());
  CHECK(t0.as_base().graph.order() == 1);

  MarkedGraph t1 = denote_truncation(minimal_tree(Ordinal::finite(1)), {1, 3});
  CHECK(oracle::isomorphic(t1.graph(), FiniteGraph::star(3)));

  for (int n = 0; n <= 5; ++n) {
    Presentation t = minimal_tree(Ordinal::finite(n));
    CHECK(rank(t) == Ordinal::finite(n));
    // A finite tree has nothing to separate.
    CHECK(kernel(t) == (n == 0 ? std::vector<int>{} : std::vector<int>{0}));
    // Truncations are trees.
    CHECK(is_forest(denote_truncation(t, {n + 1, 2}).graph()));
    CHECK(is_connected(denote_truncation(t, {n + 1, 2}).graph()));
  }
  CHECK(rank(minimal_tree(Ordinal::omega())) == Ordinal::omega());
  CHECK(kernel(minimal_tree(Ordinal::omega())) == std::vector<int>{0});
  CHECK(error_of([] { minimal_tree(Ordinal::omega(1, 1)); }) == ErrorKind::UnsupportedOrdinal);

  // T_2 truncated with c copies: 1 + c + c * (c + 1) vertices counted by levels.
  for (int c = 1; c <= 4; ++c) {
    MarkedGraph t2 = denote_truncation(minimal_tree(Ordinal::finite(2)), {2, c});
    CHECK(t2.order() == 1 + c + c * (1 + c));
  }
}

TEST_CASE("tree encoding of hereditarily finite sets") {
  const std::vector<FiniteGraph> ground{FiniteGraph::complete(3), FiniteGraph::path(2)};
  Presentation k3 = encode_T(HFSet::ground(0), ground);
  MarkedGraph t = denote_truncation(k3, {1, 2});
  CHECK(t.order() == 7);
  CHECK(t.graph().size() == 6 + 6);
  int root = -1;
  for (int v = 0; v < t.order(); ++v)
    if (t.graph().degree(v) == 6) root = v;
  REQUIRE(root >= 0);
  FiniteGraph rest = t.graph().induced([&] {
    std::vector<int> vs;
    for (int v = 0; v < t.order(); ++v)
      if (v != root) vs.push_back(v);
    return vs;
  }());
  CHECK(oracle::isomorphic(rest, FiniteGraph::complete(3).disjoint_union(FiniteGraph::complete(3))));

  Presentation set = encode_T(HFSet::collection({HFSet::ground(0)}), ground);
  REQUIRE_FALSE(set.is_base());
  CHECK(kernel(set) == std::vector<int>{0});
  CHECK(set.as_node().templates.size() == 1);

  for (const HFSet& x : enumerate_hf(2, 3, 2)) {
    CHECK(rank(encode_T(x, ground)) == Ordinal::finite(qrank(x)));
  }

  CHECK(error_of([] { encode_T(HFSet::ground(0), {FiniteGraph(1)}); }) == ErrorKind::GroundNotOneConnected);
  CHECK(error_of([] { encode_T(HFSet::ground(0), {FiniteGraph(2)}); }) == ErrorKind::GroundNotOneConnected);
}

TEST_CASE("only base-case roots lie in many triangles") {
  const std::vector<FiniteGraph> ground{FiniteGraph::complete(3), FiniteGraph::path(2)};
  HFSet x = HFSet::collection({HFSet::ground(0), HFSet::collection({HFSet::ground(1)})});
  Presentation p = encode_T(x, ground);
  const int d = depth(p);
  TruncatedGraph small = truncate(p, {d, 2});
  TruncatedGraph big = truncate(p, {d, 4});
  // Two copies of T(K3) and two of T({P2}), each with two copies of T(P2): six base-case roots.
  int growing = 0;
  for (std::size_t i = 0; i < small.names.size(); ++i) {
    const VertexName& name = small.names[i];
    int a = triangles_through(small.graph.graph(), static_cast<int>(i));
    int b = triangles_through(big.graph.graph(), big.index.at(name));
    CAPTURE(to_string(name));
    if (b == a) continue;
    ++growing;
    // Linear in the copy count.
    CHECK(b == 2 * a);
  }
  CHECK(growing == 6);
  // The root of T(X) itself is on no triangle at all.
  CHECK(triangles_through(big.graph.graph(), big.index.at(VertexName{{}, 0})) == 0);
}

TEST_CASE("class graphs") {
  Presentation single = build_GC({MarkedGraph(FiniteGraph(1))}, 0);
  CHECK(kernel(single).empty());
  CHECK(single.as_node().templates.size() == 1);
  CHECK(rank(single) == Ordinal::finite(1));

  MarkedGraph edge(FiniteGraph::path(2), {0});
  Presentation two = build_GC({edge}, 2);
  const auto& ts = two.as_node().templates;
  REQUIRE(ts.size() == 2);
  std::set<int> anchors;
  for (const Template& t : ts) {
    const Attachment& a = attachment_of(t);
    REQUIRE(a.ports.size() == 1);
    anchors.insert(a.ports[0].second);
  }
  CHECK(anchors == std::set<int>{0, 1});
  CHECK(two.as_node().kernel.order() == 2);
  CHECK(two.as_node().kernel.size() == 0);
  CHECK(kernel(two) == std::vector<int>{0, 1});

  // Injections of k marks into n anchors: n! / (n - k)!.
  MarkedGraph both(FiniteGraph::path(2), {0, 1});
  CHECK(build_GC({both}, 3).as_node().templates.size() == 6);
  CHECK(build_GC({both, edge}, 3).as_node().templates.size() == 9);

  std::vector<MarkedGraph> pool = enumerate_marked_graphs(3, 2, true);
  for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
    Presentation gc = build_GC({pool[i], pool[i + 1]}, 2);
    CHECK(rank(gc) <= Ordinal::finite(1));
  }
  Presentation nested = build_GC({two}, 2);
  CHECK(rank(nested) <= rank(two).successor());

  CHECK(error_of([&] { build_GC({both}, 1); }) == ErrorKind::TooManyMarks);
}

TEST_CASE("labeled trees") {
  for (int mu = 2; mu <= 4; ++mu)
    for (int d = 0; d <= 3; ++d) {
      LabeledTree t = labeled_tree(d, mu);
      CHECK(t.labels_valid());
      long long expect = 1, level = 1;
      for (int i = 1; i <= d; ++i) {
        level *= (i == 1 ? mu : mu - 1);
        expect += level;
      }
      CHECK(t.order() == expect);
      CHECK(labeled_tree_order(d, mu) == expect);
      CHECK(is_forest(t.graph()));
      CHECK(is_connected(t.graph()));
      for (int v = 0; v < t.order(); ++v) {
        if (t.depth[v] < d) CHECK(t.graph().degree(v) == mu);
        else CHECK(t.graph().degree(v) == (d == 0 ? 0 : 1));
      }
    }
  LabeledTree bad = labeled_tree(2, 3);
  bad.label[1] = bad.label[2];
  CHECK_FALSE(bad.labels_valid());
}

TEST_CASE("self-amalgamation") {
  MarkedGraph k2(FiniteGraph::path(2), {0, 1});
  CHECK(oracle::isomorphic(self_amalgamation(k2, 1), FiniteGraph::path(4)));
  CHECK(self_amalgamation(k2, 0) == FiniteGraph::path(2));

  const std::vector<MarkedGraph> samples{
      MarkedGraph(FiniteGraph::complete(3), {0, 1}),
      MarkedGraph(FiniteGraph::complete(3), {0, 1, 2}),
      MarkedGraph(FiniteGraph::cycle(4), {0, 2}),
      MarkedGraph(FiniteGraph::complete(4), {1, 3}),
  };
  for (const MarkedGraph& g : samples)
    for (int n = 0; n <= 2; ++n) {
      FiniteGraph u = self_amalgamation(g, n);
      auto bd = block_decomposition(u);
      for (const auto& b : bd.blocks) CHECK(oracle::isomorphic(u.induced(b), g.graph()));
      LabeledTree t = labeled_tree(n, static_cast<int>(g.marked().size()));
      CHECK(oracle::isomorphic(block_graph(u), t.graph()));
    }

  CHECK(error_of([] { self_amalgamation(MarkedGraph(FiniteGraph::path(2), {0}), 1); }) == ErrorKind::TooFewMarks);
  CHECK(error_of([] { self_amalgamation(MarkedGraph(FiniteGraph(2), {0, 1}), 1); }) == ErrorKind::Disconnected);
}

TEST_CASE("u map members") {
  CHECK(oracle::isomorphic(u_map(MarkedGraph(FiniteGraph(1)), 0), FiniteGraph::complete(3)));
  const std::vector<MarkedGraph> samples{
      MarkedGraph(FiniteGraph(1)),
      MarkedGraph(FiniteGraph(1), {0}),
      MarkedGraph(FiniteGraph::path(2), {1}),
      MarkedGraph(FiniteGraph(2), {0, 1}),
  };
  for (const MarkedGraph& g : samples) {
    MarkedGraph s = marked_suspension(marked_suspension(g));
    for (int n = 0; n <= 2; ++n) {
      FiniteGraph u = u_map(g, n);
      auto bd = block_decomposition(u);
      const int mu = 2 + static_cast<int>(g.marked().size());
      CHECK(static_cast<long long>(bd.blocks.size()) == labeled_tree_order(n, mu));
      for (const auto& b : bd.blocks) CHECK(oracle::isomorphic(u.induced(b), s.graph()));
    }
  }
}

TEST_CASE("clique gadgets") {
  FiniteGraph p3 = FiniteGraph::path(3);
  CHECK(unmark_clique_gadget(MarkedGraph(p3), 0) == p3);

  FiniteGraph g = unmark_clique_gadget(MarkedGraph(FiniteGraph::path(2), {1}), 0);
  CHECK(g.order() == 5);
  std::vector<Edge> expect{{0, 1}};
  for (int a : {1, 2, 3, 4})
    for (int b : {1, 2, 3, 4})
      if (a < b) expect.emplace_back(a, b);
  CHECK(oracle::isomorphic(g, FiniteGraph(5, expect)));

  FiniteGraph small = unmark_clique_gadget(MarkedGraph(FiniteGraph::path(2), {1}), 0, GadgetSize::TPlus2);
  CHECK(oracle::isomorphic(small, FiniteGraph::path(3)));
  CHECK(unmark_clique_gadget(MarkedGraph(FiniteGraph::path(2), {0, 1}), 2).order() == 2 + 2 * 5);
}

TEST_CASE("tree unmarking attaches a rank-sized tree at each mark") {
  std::mt19937_64 rng(5);
  auto base = [](FiniteGraph g) { return share(Presentation::base(MarkedGraph(std::move(g)))); };
  const std::vector<PresPtr> parts{base(FiniteGraph::complete(3)), base(FiniteGraph::path(3)),
                                   share(minimal_tree(Ordinal::finite(1))),
                                   share(minimal_tree(Ordinal::finite(2)))};
  for (int i = 0; i < 20; ++i) {
    const int k = 1 + static_cast<int>(rng() % 3);
    std::vector<Template> ts;
    const int nt = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < nt; ++j) {
      const PresPtr& part = parts[rng() % parts.size()];
      ts.push_back(ConcreteTemplate{part, Multiplicity::omega(),
                                    Attachment::to_ports({{0, static_cast<int>(rng() % k)}})});
    }
    Presentation p = Presentation::node(FiniteGraph::complete(k), {}, ts);
    p = normalize(p);
    std::vector<int> marks;
    for (int v : kernel(p))
      if (rng() % 2) marks.push_back(v);
    Presentation marked = with_kernel_marks(p, marks);
    Presentation u = unmark_by_trees(marked);
    CAPTURE(emit_presentation(marked));
    CHECK(u.top_marks().empty());
    CHECK(rank(u) == rank(marked));
    CHECK(rank(u) <= Ordinal::finite(3));
    // Each mark gains one tree's worth of vertices at every truncation.
    const Truncation c{depth(u), 2};
    const int gained = denote_truncation(u, c).order() - denote_truncation(marked, c).order();
    const int tree = denote_truncation(minimal_tree(rank(marked)), c).order() - 1;
    CHECK(gained == tree * static_cast<int>(marks.size()));
  }
  Presentation plain = normalize(Presentation::node(FiniteGraph(1), {}, {ConcreteTemplate{parts[0], Multiplicity::omega(), Attachment::to_all({0})}}));
  CHECK(unmark_by_trees(plain) == plain);
}
