#include "doctest.h"
#include "minorlab/errors.hpp"
#include "minorlab/membership.hpp"
#include "minorlab/presentation.hpp"
#include "oracles.hpp"

using namespace minorlab;

namespace {

PresPtr base_of(FiniteGraph g, std::vector<int> marks = {}) {
  return share(Presentation::base(MarkedGraph(std::move(g), std::move(marks))));
}

Presentation omega_of(PresPtr part, Attachment a = {}, int kernel = 0) {
  return Presentation::node(FiniteGraph(kernel), {}, {ConcreteTemplate{part, Multiplicity::omega(), a}});
}

// Every named vertex and edge of the smaller truncation survives in the larger one.
bool embeds_by_name(const TruncatedGraph& small, const TruncatedGraph& big) {
  for (const auto& name : small.names)
    if (!big.index.count(name)) return false;
  for (const Edge& e : small.graph.graph().edges()) {
    int u = big.index.at(small.names[e.u]);
    int v = big.index.at(small.names[e.v]);
    if (!big.graph.graph().adjacent(u, v)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("minimal tree truncation is a star") {
  auto t1 = truncate(*minimal_tree_presentation(1), {1, 3});
  CHECK(oracle::isomorphic(t1.graph.graph(), FiniteGraph::star(3)));
  auto t0 = truncate(*minimal_tree_presentation(0), {4, 4});
  CHECK(t0.graph.order() == 1);
}

TEST_CASE("base truncation ignores parameters") {
  auto p = base_of(FiniteGraph::petersen());
  for (int d : {0, 1, 3})
    for (int c : {1, 5}) CHECK(denote_truncation(*p, {d, c}).graph() == FiniteGraph::petersen());
}

TEST_CASE("omega copies of a triangle") {
  auto p = omega_of(base_of(FiniteGraph::complete(3)));
  auto g = denote_truncation(p, {1, 2}).graph();
  CHECK(oracle::isomorphic(g, FiniteGraph::complete(3).disjoint_union(FiniteGraph::complete(3))));
  CHECK(denote_truncation(p, {0, 2}).order() == 0);
}

TEST_CASE("rank of minimal trees and families") {
  for (int n = 0; n <= 5; ++n) {
    auto t = minimal_tree_presentation(n);
    CHECK(rank(*t) == Ordinal::finite(n));
    if (n > 0) CHECK(kernel(*t) == std::vector<int>{0});
  }
  auto tw = Presentation::node(FiniteGraph(1), {}, {FamilyTemplate{Generator::MinTree, Attachment::to_ports({{0, 0}})}});
  CHECK(rank(tw) == Ordinal::omega());
  CHECK(rank(*base_of(FiniteGraph::complete(5))) == Ordinal::finite(0));
  auto g0 = Presentation::node(FiniteGraph(0), {}, {FamilyTemplate{Generator::Clique, {}}});
  CHECK(rank(g0) == Ordinal::finite(1));
  CHECK(kernel(g0).empty());
}

TEST_CASE("kernel drops anchors without maximal parts") {
  auto p = omega_of(base_of(FiniteGraph::complete(3)), Attachment::to_ports({{0, 0}}), 2);
  CHECK(kernel(p) == std::vector<int>{0});
  CHECK(kernel(omega_of(base_of(FiniteGraph::complete(3)))).empty());
}

TEST_CASE("suspension keeps rank") {
  for (int n = 0; n <= 4; ++n) {
    auto t = minimal_tree_presentation(n);
    auto s = suspension(*t);
    CHECK(rank(s) == rank(*t));
    auto m = marked_suspension(*t);
    CHECK(m.top_marks() == std::vector<int>{t->top_order()});
  }
}

TEST_CASE("normalize merges and flattens") {
  auto k3 = base_of(FiniteGraph::complete(3));
  auto dup = Presentation::node(FiniteGraph(1), {},
                                {ConcreteTemplate{k3, Multiplicity::omega(), Attachment::to_all({0})},
                                 ConcreteTemplate{k3, Multiplicity::omega(), Attachment::to_all({0})}});
  auto n = normalize(dup);
  CHECK(n.as_node().templates.size() == 1);
  CHECK(normalize(n) == n);

  // Two copies of a rank-2 node next to rank-1 parts.
  auto inner = share(Presentation::node(FiniteGraph(1), {},
                                        {ConcreteTemplate{minorlab::share(omega_of(k3, Attachment::to_ports({{0, 0}}), 1)),
                                                          Multiplicity::omega(), Attachment::to_ports({{0, 0}})}}));
  REQUIRE(rank(*inner) == Ordinal::finite(2));
  auto outer = Presentation::node(FiniteGraph(1), {},
                                  {ConcreteTemplate{inner, Multiplicity::finite(2), Attachment::to_ports({{0, 0}})},
                                   ConcreteTemplate{k3, Multiplicity::omega(), Attachment::to_all({0})}});
  CHECK_FALSE(is_normal_form(outer));
  CHECK_THROWS_AS(rank(outer), Error);
  auto flat = normalize(outer);
  CHECK(is_normal_form(flat));
  CHECK(rank(flat) == Ordinal::finite(2));
  CHECK(flat.as_node().kernel.order() == 3);
  CHECK(kernel(flat) == std::vector<int>{1, 2});
  CHECK(normalize(flat) == flat);
  // Same finite graphs up to naming, at any truncation containing the flattened kernels.
  auto a = denote_truncation(outer, {3, 2}).graph();
  auto b = denote_truncation(flat, {2, 2}).graph();
  CHECK(a.order() == b.order());
  CHECK(a.size() == b.size());
}

TEST_CASE("truncation monotone by names") {
  auto t3 = minimal_tree_presentation(3);
  auto p = suspension(*t3);
  for (int d = 0; d < 4; ++d)
    for (int c = 1; c < 3; ++c) {
      auto small = truncate(p, {d, c});
      CHECK(embeds_by_name(small, truncate(p, {d + 1, c})));
      CHECK(embeds_by_name(small, truncate(p, {d, c + 1})));
    }
}

TEST_CASE("text format round trip") {
  auto k3 = base_of(FiniteGraph::complete(3), {1});
  auto p = Presentation::node(FiniteGraph(2, {{0, 1}}), {1},
                              {ConcreteTemplate{k3, Multiplicity::finite(3), Attachment{{{1, 0}}, {1}}},
                               ConcreteTemplate{minimal_tree_presentation(3), Multiplicity::omega(), Attachment::to_ports({{0, 1}})},
                               FamilyTemplate{Generator::Fan, Attachment::to_all({0, 1})}});
  auto text = emit_presentation(p);
  auto back = parse_presentation(text);
  CHECK(back == p);
  CHECK(emit_presentation(back) == text);
  CHECK(text.find("(def ") != std::string::npos);

  auto q = parse_presentation("; trees\n(def leaf (pres (kernel 1)))\n(pres (kernel 1) (part ref:leaf (mult omega) (attach (ports (0 0)))))");
  CHECK(q == *minimal_tree_presentation(1));
}

TEST_CASE("text format errors carry positions") {
  auto where = [](const std::string& text) -> std::pair<int, int> {
    try {
      parse_presentation(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(where("(pres (kernel 1)\n  (bogus))") == std::pair{2, 3});
  CHECK(where("(pres (kernel 1) (part ref:nope (mult omega) (attach)))") == std::pair{1, 24});
  CHECK(where("(pres (kernel x))").first == 1);
  CHECK(where("(pres (kernel 1)").first == 1);
  CHECK(where("(pres (kernel 1) (part (pres (kernel 1)) (mult 2) (attach)))") == std::pair{1, 1});
}

TEST_CASE("finite marked minors of presentations") {
  auto t1 = with_kernel_marks(*minimal_tree_presentation(1), {0});
  CHECK(finite_marked_minor_of(MarkedGraph(FiniteGraph(1), {0}), t1));
  CHECK(finite_marked_minor_of(MarkedGraph(FiniteGraph::path(3), {1}), t1));
  CHECK(finite_marked_minor_of(MarkedGraph(FiniteGraph::star(4), {0}), t1));
  CHECK_FALSE(finite_marked_minor_of(MarkedGraph(FiniteGraph::path(3), {0, 2}), t1));
  auto t2 = with_kernel_marks(*minimal_tree_presentation(2), {0});
  CHECK_FALSE(finite_marked_minor_of(MarkedGraph(FiniteGraph::complete(3), {0}), t2));
  CHECK(finite_marked_minor_of(MarkedGraph(FiniteGraph::path(5), {2}), t2));
}

TEST_CASE("sample of marked minors") {
  auto edgeless = omega_of(base_of(FiniteGraph(1)));
  auto s = cbullet_sample(edgeless, 2);
  CHECK(s.size() == 3);
  for (const auto& f : s) {
    CHECK(f.graph().size() == 0);
    CHECK(f.marked().empty());
  }
  auto t1 = *minimal_tree_presentation(1);
  auto s3 = cbullet_sample(t1, 3);
  for (const auto& f : s3) {
    CHECK(is_forest(f.graph()));
    CHECK(f.marked().size() <= 1);
  }
  // Counted by hand: empty; K1 twice; 2K1 and K2 twice each; 3K1, K2+K1 and P3
  // twice each, since a mark must sit where the root can reach every other edge.
  CHECK(s3.size() == 1 + 2 + 4 + 6);
  auto s2 = cbullet_sample(t1, 2);
  CHECK(s2.size() < s3.size());
}

TEST_CASE("tree exclusion bounds") {
  CHECK(exclusion_rank_bound(*base_of(FiniteGraph(1))) == Ordinal::omega());
  CHECK(exclusion_rank_bound(*base_of(FiniteGraph::path(5))) == Ordinal::omega());
  CHECK(exclusion_rank_bound(*minimal_tree_presentation(1)) == Ordinal::omega(1, 1));
  CHECK(exclusion_rank_bound(*minimal_tree_presentation(3)) == Ordinal::omega(1, 3));
  CHECK_THROWS_AS(exclusion_rank_bound(*base_of(FiniteGraph::cycle(4))), Error);
  CHECK_THROWS_AS(exclusion_rank_bound(omega_of(base_of(FiniteGraph(1)))), Error);
}
