#include <random>

#include "doctest.h"
#include "minorlab/errors.hpp"
#include "minorlab/graph.hpp"
#include "oracles.hpp"

using namespace minorlab;

TEST_CASE("components") {
  CHECK(components(FiniteGraph(0)).empty());
  auto two = FiniteGraph::complete(3).disjoint_union(FiniteGraph::complete(2));
  auto cs = components(two);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].size() == 3);
  CHECK(cs[1].size() == 2);
  CHECK(components(FiniteGraph::path(4)).size() == 1);
}

TEST_CASE("blocks") {
  auto k4 = block_decomposition(FiniteGraph::complete(4));
  CHECK(k4.blocks == std::vector<std::vector<int>>{{0, 1, 2, 3}});
  CHECK(k4.cut_vertices.empty());

  FiniteGraph bowtie(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  auto bt = block_decomposition(bowtie);
  CHECK(bt.blocks == std::vector<std::vector<int>>{{0, 1, 2}, {2, 3, 4}});
  CHECK(bt.cut_vertices == std::vector<int>{2});

  auto p3 = block_decomposition(FiniteGraph::path(3));
  CHECK(p3.blocks == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
  CHECK(p3.cut_vertices == std::vector<int>{1});

  auto iso = block_decomposition(FiniteGraph(2));
  CHECK(iso.blocks.size() == 2);
}

TEST_CASE("block decomposition covers each edge once") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng() % 9);
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) es.emplace_back(i, j);
    FiniteGraph g(n, es);
    auto bd = block_decomposition(g);
    for (const Edge& e : g.edges()) {
      int hits = 0;
      for (const auto& b : bd.blocks) {
        bool u = std::binary_search(b.begin(), b.end(), e.u);
        bool v = std::binary_search(b.begin(), b.end(), e.v);
        hits += u && v;
      }
      CHECK(hits == 1);
    }
    for (std::size_t i = 0; i < bd.blocks.size(); ++i)
      for (std::size_t j = i + 1; j < bd.blocks.size(); ++j) {
        std::vector<int> common;
        std::set_intersection(bd.blocks[i].begin(), bd.blocks[i].end(), bd.blocks[j].begin(),
                              bd.blocks[j].end(), std::back_inserter(common));
        CHECK(common.size() <= 1);
        if (common.size() == 1) {
          CHECK(std::binary_search(bd.cut_vertices.begin(), bd.cut_vertices.end(), common[0]));
        }
      }
    // Block-cut forest: blocks + cuts - incidences = components (acyclic).
    int incidences = 0;
    for (const auto& b : bd.blocks)
      for (int c : bd.cut_vertices) incidences += std::binary_search(b.begin(), b.end(), c);
    int nodes = static_cast<int>(bd.blocks.size() + bd.cut_vertices.size());
    CHECK(nodes - incidences == static_cast<int>(components(g).size()));
  }
}

TEST_CASE("suspensions") {
  CHECK(suspension(FiniteGraph(1)) == FiniteGraph::complete(2));
  CHECK(is_isomorphic(suspension(FiniteGraph::cycle(4)),
                      FiniteGraph(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}})));
  CHECK(suspension(FiniteGraph::complete(4)) == FiniteGraph::complete(5));
  CHECK(is_connected(suspension(FiniteGraph(4))));

  auto m = marked_suspension(MarkedGraph(FiniteGraph(1)));
  CHECK(m.graph() == FiniteGraph::complete(2));
  CHECK(m.marked() == std::vector<int>{1});
  auto both = marked_suspension(MarkedGraph(FiniteGraph::complete(2), {0, 1}));
  CHECK(both.marked() == std::vector<int>{0, 1, 2});

  for (const auto& g : enumerate_graphs(5, true)) {
    auto twice = marked_suspension(marked_suspension(MarkedGraph(g)));
    CHECK(is_two_connected(twice.graph()));
  }
}

TEST_CASE("canonical forms") {
  auto p3 = FiniteGraph::path(3);
  CHECK(canonical_form(p3) == canonical_form(p3.relabeled({2, 0, 1})));
  CHECK_FALSE(canonical_form(FiniteGraph::cycle(4)) == canonical_form(FiniteGraph::star(3)));
  CHECK_THROWS_AS(canonical_form(FiniteGraph(11)), Error);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    int n = 1 + static_cast<int>(rng() % 10);
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 2) es.emplace_back(i, j);
    FiniteGraph g(n, es);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(canonical_form(g) == canonical_form(g.relabeled(perm)));
    MarkedGraph mg(g, {0});
    MarkedGraph mh(g.relabeled(perm), {perm[0]});
    CHECK(canonical_form(mg) == canonical_form(mh));
  }
}

TEST_CASE("canonical forms separate classes") {
  for (int n = 1; n <= 6; ++n) {
    auto gs = enumerate_graphs(n, false);
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = i + 1; j < gs.size(); ++j) CHECK_FALSE(oracle::isomorphic(gs[i], gs[j]));
  }
}

TEST_CASE("enumeration counts against exhaustive oracle") {
  for (int n = 0; n <= 6; ++n) {
    CHECK(static_cast<int>(enumerate_graphs(n, false).size()) == oracle::count_classes(n, false));
    CHECK(static_cast<int>(enumerate_graphs(n, true).size()) == oracle::count_classes(n, true));
  }
  CHECK(enumerate_graphs(3, false).size() == 4);
  CHECK(enumerate_graphs(4, false).size() == 11);
  CHECK(enumerate_graphs(4, true).size() == 6);
  CHECK_THROWS_AS(enumerate_graphs(9, false), Error);
}

TEST_CASE("marked enumeration") {
  // P3 has marked variants: none, end, middle, two ends, end+middle.
  int p3_variants = 0;
  for (const auto& mg : enumerate_marked_graphs(3, 2, true)) {
    if (mg.graph().size() == 2) ++p3_variants;
  }
  CHECK(p3_variants == 5);
}

TEST_CASE("graph text format") {
  MarkedGraph mg(FiniteGraph::path(3), {1});
  std::string text = emit_graph(mg);
  CHECK(text == "graph 3\ne 0 1\ne 1 2\nm 1\n");
  CHECK(parse_graph(text) == mg);
  CHECK(parse_graph("# comment\ngraph 2 # two\n\ne 0 1\n") == MarkedGraph(FiniteGraph::complete(2)));
  try {
    parse_graph("graph 3\ne 0 5\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_graph("graph 3\ne 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("e 0 1\n"), ParseError);
  std::string dot = to_dot(mg);
  CHECK(dot.find("1 [shape=doublecircle]") != std::string::npos);
  CHECK(dot.find("0 -- 1;") != std::string::npos);
}
