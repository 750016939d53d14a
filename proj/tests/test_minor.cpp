#include <random>

#include "doctest.h"
#include "minorlab/errors.hpp"
#include "minorlab/minor.hpp"

using namespace minorlab;

namespace {

FiniteGraph random_graph(std::mt19937_64& rng, int n, int percent) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (static_cast<int>(rng() % 100) < percent) es.emplace_back(i, j);
  return FiniteGraph(n, es);
}

FiniteGraph random_tree(std::mt19937_64& rng, int n) {
  std::vector<Edge> es;
  for (int v = 1; v < n; ++v) es.emplace_back(static_cast<int>(rng() % v), v);
  return FiniteGraph(n, es);
}

}  // namespace

TEST_CASE("basic minors") {
  auto r = find_minor(FiniteGraph::complete(3), FiniteGraph::complete(4));
  REQUIRE(r.found());
  CHECK_FALSE(verify_embedding(FiniteGraph::complete(3), FiniteGraph::complete(4), *r.embedding));
  CHECK(find_minor(FiniteGraph::complete(4), FiniteGraph::cycle(4)).refuted());

  auto k5 = FiniteGraph::complete(5);
  auto pet = FiniteGraph::petersen();
  auto p = find_minor(k5, pet);
  REQUIRE(p.found());
  CHECK_FALSE(verify_embedding(k5, pet, *p.embedding));
  CHECK(find_minor(FiniteGraph::complete(6), pet).refuted());
}

TEST_CASE("marked minors") {
  MarkedGraph k1m(FiniteGraph(1), {0});
  CHECK(find_marked_minor(k1m, MarkedGraph(FiniteGraph::complete(2))).refuted());
  MarkedGraph k2m(FiniteGraph::complete(2), {1});
  auto r = find_marked_minor(k1m, k2m);
  REQUIRE(r.found());
  CHECK(r.embedding->branch_sets[0] == std::vector<int>{1});
  CHECK_FALSE(verify_embedding(k1m, k2m, *r.embedding, true));
}

TEST_CASE("verify_embedding reports violations") {
  auto c4 = FiniteGraph::cycle(4);
  MinorEmbedding id;
  for (int v = 0; v < 4; ++v) id.branch_sets.push_back({v});
  complete_branch_edges(c4, c4, id);
  CHECK_FALSE(verify_embedding(c4, c4, id));

  MinorEmbedding overlap = id;
  overlap.branch_sets[1] = {0, 1};
  auto v = verify_embedding(c4, c4, overlap);
  REQUIRE(v);
  CHECK(v->invariant == "disjointness");
  CHECK(v->vertex == 0);

  MinorEmbedding split = id;
  split.branch_sets = {{0, 2}, {1}, {3}};
  auto p3 = FiniteGraph::path(3);
  complete_branch_edges(p3, c4, split);
  auto s = verify_embedding(p3, c4, split);
  REQUIRE(s);
  CHECK(s->invariant == "connectivity");

  MarkedGraph mg(FiniteGraph(1), {0});
  MinorEmbedding one;
  one.branch_sets = {{0}};
  auto m = verify_embedding(mg, MarkedGraph(FiniteGraph(1)), one, true);
  REQUIRE(m);
  CHECK(m->invariant == "marked");
}

TEST_CASE("brute force oracle") {
  CHECK(brute_force_minor(FiniteGraph::complete(3), FiniteGraph::cycle(5)));
  for (int n = 3; n <= 8; ++n) CHECK_FALSE(brute_force_minor(FiniteGraph::star(3), FiniteGraph::cycle(n)));
  CHECK_FALSE(brute_force_minor(FiniteGraph::cycle(3), FiniteGraph::star(3)));
  CHECK_THROWS_AS(brute_force_minor(FiniteGraph(1), FiniteGraph(9)), Error);
}

TEST_CASE("solver agrees with brute force on random pairs") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 400; ++t) {
    int hn = 1 + static_cast<int>(rng() % 7);
    int gn = 1 + static_cast<int>(rng() % hn);
    auto h = random_graph(rng, hn, 50);
    auto g = random_graph(rng, gn, 50);
    auto r = find_minor(g, h);
    REQUIRE(r.status != SearchStatus::BudgetExhausted);
    CHECK(r.found() == brute_force_minor(g, h));
    if (r.found()) CHECK_FALSE(verify_embedding(g, h, *r.embedding));

    std::vector<int> gm, hm;
    for (int v = 0; v < gn; ++v)
      if (rng() % 3 == 0) gm.push_back(v);
    for (int v = 0; v < hn; ++v)
      if (rng() % 2 == 0) hm.push_back(v);
    MarkedGraph mg(g, gm), mh(h, hm);
    auto mr = find_marked_minor(mg, mh);
    CHECK(mr.found() == brute_force_marked_minor(mg, mh));
    if (mr.found()) CHECK_FALSE(verify_embedding(mg, mh, *mr.embedding, true));
  }
}

TEST_CASE("trees inside trees and forests") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 600; ++t) {
    int hn = 1 + static_cast<int>(rng() % 8);
    int gn = 1 + static_cast<int>(rng() % hn);
    auto g = random_tree(rng, gn);
    auto h = random_tree(rng, hn);
    if (rng() % 3 == 0 && hn > 2) {
      // Cut one edge to get a forest host.
      std::vector<Edge> es = h.edges();
      es.erase(es.begin() + static_cast<long>(rng() % es.size()));
      h = FiniteGraph(hn, es);
    }
    auto r = find_minor(g, h);
    REQUIRE(r.status != SearchStatus::BudgetExhausted);
    CHECK(r.found() == brute_force_minor(g, h));
    if (r.found()) CHECK_FALSE(verify_embedding(g, h, *r.embedding));
  }
  // A spider with long legs needs subdivided paths in a large host spider.
  FiniteGraph spider(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
  FiniteGraph host(40, [] {
    std::vector<Edge> es;
    for (int v = 1; v < 40; ++v) es.emplace_back(v == 20 ? 10 : v - 1, v);
    return es;
  }());
  auto r = find_minor(spider, host);
  REQUIRE(r.found());
  CHECK_FALSE(verify_embedding(spider, host, *r.embedding));
  CHECK(find_minor(FiniteGraph::cycle(3), host).refuted());
}

TEST_CASE("budget exhaustion is distinct from no") {
  SolverLimits tiny{5, std::chrono::milliseconds(1000)};
  auto r = find_minor(FiniteGraph::complete(6), FiniteGraph::complete_bipartite(5, 5), tiny);
  CHECK(r.status == SearchStatus::BudgetExhausted);
  CHECK_FALSE(r.embedding);
}

TEST_CASE("restrict_to_block") {
  FiniteGraph bowtie(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  auto c3 = FiniteGraph::cycle(3);
  MinorEmbedding spill;
  spill.branch_sets = {{0}, {1}, {2, 3}};
  complete_branch_edges(c3, bowtie, spill);
  REQUIRE_FALSE(verify_embedding(c3, bowtie, spill));
  auto r = restrict_to_block(c3, bowtie, spill);
  CHECK_FALSE(verify_embedding(c3, bowtie, r));
  CHECK(r.branch_sets[2] == std::vector<int>{2});

  // K4 with a pendant path 3-4-5.
  FiniteGraph tail(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}});
  auto k4 = FiniteGraph::complete(4);
  MinorEmbedding wide;
  wide.branch_sets = {{0}, {1}, {2}, {3, 4, 5}};
  complete_branch_edges(k4, tail, wide);
  auto rw = restrict_to_block(k4, tail, wide);
  CHECK(rw.branch_sets[3] == std::vector<int>{3});

  MinorEmbedding id;
  for (int v = 0; v < 4; ++v) id.branch_sets.push_back({v});
  complete_branch_edges(k4, k4, id);
  CHECK(restrict_to_block(k4, k4, id) == id);
  CHECK_THROWS_AS(restrict_to_block(FiniteGraph::path(3), FiniteGraph::path(3), id), Error);
}

TEST_CASE("twins") {
  CHECK(is_minor_twin(FiniteGraph::cycle(4), FiniteGraph::cycle(4).relabeled({1, 3, 0, 2})));
  CHECK_FALSE(is_minor_twin(FiniteGraph::cycle(4), FiniteGraph::cycle(5)));
}

TEST_CASE("composition of embeddings") {
  std::mt19937_64 rng(9);
  int composed = 0;
  for (int t = 0; t < 300 && composed < 40; ++t) {
    auto k = random_graph(rng, 7, 55);
    auto h = random_graph(rng, 5, 60);
    auto g = random_graph(rng, 4, 60);
    auto a = find_minor(g, h);
    auto b = find_minor(h, k);
    if (!a.found() || !b.found()) continue;
    auto c = compose(*a.embedding, *b.embedding);
    CHECK_FALSE(verify_embedding(g, k, c));
    CHECK(find_minor(g, k).found());
    ++composed;
  }
  CHECK(composed > 10);
}

TEST_CASE("certificate text round trip") {
  auto pet = FiniteGraph::petersen();
  auto r = find_minor(FiniteGraph::complete(5), pet);
  REQUIRE(r.found());
  std::string text = emit_certificate(*r.embedding);
  CHECK(parse_certificate(text) == *r.embedding);
  CHECK(emit_certificate(parse_certificate(text)) == text);
  CHECK_THROWS_AS(parse_certificate("branch 0 1 2\n"), ParseError);
}
