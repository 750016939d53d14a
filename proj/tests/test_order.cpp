#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "minorlab/errors.hpp"
#include "minorlab/minor.hpp"
#include "minorlab/order.hpp"

using namespace minorlab;

namespace {

// All quasi-orders on n points, as relation tables.
std::vector<GroundOrder> all_orders(int n) {
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) cells.emplace_back(a, b);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<GroundOrder> out;
  for (unsigned s = 0; s < (1u << cells.size()); ++s) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) le[i][i] = true;
    for (std::size_t k = 0; k < cells.size(); ++k)
      if (s >> k & 1) le[cells[k].first][cells[k].second] = true;
    bool transitive = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (le[a][b] && le[b][c] && !le[a][c]) transitive = false;
    if (transitive) out.emplace_back(names, le);
  }
  return out;
}

bool in_closure(const HFSet& x, const HFSet& y) {
  if (y.is_ground()) return false;
  for (const HFSet& c : y.items())
    if (c == x || in_closure(x, c)) return true;
  return false;
}

// Every strictly increasing map, by recursion.
bool seq_le_exhaustive(const std::vector<int>& s, const std::vector<int>& t, std::size_t i, std::size_t from,
                       const std::function<bool(int, int)>& le) {
  if (i == s.size()) return true;
  for (std::size_t j = from; j < t.size(); ++j)
    if (le(s[i], t[j]) && seq_le_exhaustive(s, t, i + 1, j + 1, le)) return true;
  return false;
}

int brute_max_independent(const std::vector<std::uint64_t>& adj) {
  const int n = static_cast<int>(adj.size());
  int best = 0;
  for (std::uint64_t s = 0; s < (1ull << n); ++s) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if ((s >> i & 1) && (adj[i] & s)) ok = false;
    if (ok) best = std::max(best, __builtin_popcountll(s));
  }
  return best;
}

Relation<FiniteGraph> minor_order() {
  return [](const FiniteGraph& a, const FiniteGraph& b) { return find_minor(a, b).found(); };
}

}  // namespace

TEST_CASE("ground orders are validated") {
  CHECK_THROWS_AS(GroundOrder({"a", "b"}, {{true, false}, {false, false}}), Error);
  CHECK_THROWS_AS(GroundOrder({"a", "b", "c"}, {{true, true, false}, {false, true, true}, {false, false, true}}),
                  Error);
  GroundOrder chain = GroundOrder::from_relation({"a", "b"}, [](int x, int y) { return x <= y; });
  CHECK(chain.le(0, 1));
  CHECK_FALSE(chain.le(1, 0));
  CHECK(chain.index_of("b") == 1);
  CHECK(chain.index_of("z") == -1);
}

TEST_CASE("lifted order on hereditarily finite sets") {
  GroundOrder q = GroundOrder::from_relation({"a", "b", "c"}, [](int x, int y) { return x == y || (x == 0 && y == 1); });
  HFSet a = HFSet::ground(0), b = HFSet::ground(1), c = HFSet::ground(2);
  CHECK(le_plus(a, b, q));
  CHECK_FALSE(le_plus(b, a, q));
  CHECK_FALSE(le_plus(a, c, q));
  CHECK(le_plus(a, HFSet::collection({b}), q));
  CHECK_FALSE(le_plus(HFSet::collection({a}), a, q));
  CHECK(le_plus(HFSet::collection({a}), HFSet::collection({a, c}), q));
  CHECK(HFSet::collection({a, a, c}) == HFSet::collection({c, a}));

  CHECK(qrank(a) == 1);
  CHECK(qrank(HFSet::collection({a})) == 2);
  CHECK(qrank(HFSet::collection({HFSet::collection({a}), b})) == 3);
  CHECK_THROWS_AS(HFSet::collection({}), Error);
}

TEST_CASE("lifted order is a quasi-order extending the ground order") {
  for (int n = 1; n <= 3; ++n)
    for (const GroundOrder& q : all_orders(n)) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) CHECK(le_plus(HFSet::ground(x), HFSet::ground(y), q) == q.le(x, y));
      // Depth four is too many sets for every order; keep width small there.
      const auto sets = enumerate_hf(n, n == 1 ? 4 : 3, 2);
      for (const HFSet& x : sets) {
        REQUIRE(le_plus(x, x, q));
        for (const HFSet& y : sets) {
          if (!le_plus(x, y, q)) continue;
          for (const HFSet& z : sets)
            if (le_plus(y, z, q)) REQUIRE(le_plus(x, z, q));
        }
      }
    }
}

TEST_CASE("qrank grows along membership") {
  const auto sets = enumerate_hf(2, 4, 2);
  for (const HFSet& y : sets)
    for (const HFSet& x : sets)
      if (in_closure(x, y)) CHECK(qrank(x) < qrank(y));
  for (const HFSet& x : sets) CHECK((qrank(x) == 1) == x.is_ground());
}

TEST_CASE("enumeration is complete and duplicate-free") {
  // Rank 1: the ground. Rank <= 2: plus nonempty subsets of size <= w.
  CHECK(enumerate_hf(2, 1, 3).size() == 2);
  CHECK(enumerate_hf(2, 2, 2).size() == 2 + 3);
  CHECK(enumerate_hf(3, 2, 3).size() == 3 + 7);
  const auto sets = enumerate_hf(2, 3, 2);
  CHECK(std::set<HFSet>(sets.begin(), sets.end()).size() == sets.size());
  // Rank 3 sets: subsets of the 5 rank <= 2 sets, of size 1 or 2, containing a rank-2 set.
  CHECK(sets.size() == 5 + (3 + 3 * 2 + 3));
}

TEST_CASE("text format") {
  GroundOrder q = GroundOrder::from_relation({"K3", "K2"}, [](int x, int y) { return x == y || x == 1; });
  HFSet x = parse_hf("(hf ((hf K3) (hf ((hf K2)))))", q);
  CHECK(qrank(x) == 3);
  CHECK(parse_hf(emit_hf(x, q), q) == x);
  for (const HFSet& y : enumerate_hf(2, 3, 3)) CHECK(parse_hf(emit_hf(y, q), q) == y);
  try {
    parse_hf("(hf (\n  (hf K9)))", q);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(parse_hf("(hf ())", q), ParseError);
}

TEST_CASE("set order") {
  Relation<int> le = [](const int& a, const int& b) { return a <= b; };
  CHECK(le_star<int>({1, 2}, {1, 2, 3}, le));
  CHECK(le_star<int>({}, {}, le));
  CHECK_FALSE(le_star<int>({4}, {1, 3}, le));
  const auto m = minor_order();
  CHECK(le_star<FiniteGraph>({FiniteGraph::complete(3)}, {FiniteGraph::complete(4)}, m));
  CHECK_FALSE(le_star<FiniteGraph>({FiniteGraph::complete(4)}, {FiniteGraph::complete(3), FiniteGraph::path(5)}, m));
}

TEST_CASE("sequence order agrees with exhaustive maps") {
  Relation<int> eq = [](const int& a, const int& b) { return a == b; };
  CHECK(seq_le<int>({}, {1, 2}, eq));
  CHECK(seq_le<int>({0}, {1, 0}, eq));
  CHECK_FALSE(seq_le<int>({1, 0}, {0, 1}, eq));

  std::mt19937_64 rng(11);
  // Divisibility on 1..6 is a partial order with incomparable pairs.
  const std::function<bool(int, int)> div = [](int a, int b) { return b % a == 0; };
  Relation<int> rel = [&](const int& a, const int& b) { return div(a, b); };
  for (int t = 0; t < 3000; ++t) {
    std::vector<int> s(rng() % 7), u(rng() % 7);
    for (int& x : s) x = 1 + static_cast<int>(rng() % 6);
    for (int& x : u) x = 1 + static_cast<int>(rng() % 6);
    CHECK(seq_le<int>(s, u, rel) == seq_le_exhaustive(s, u, 0, 0, div));
  }
}

TEST_CASE("good pairs") {
  Relation<int> le = [](const int& a, const int& b) { return a <= b; };
  CHECK(is_good<int>({3, 3, 3}, le) == std::pair{0, 1});
  CHECK_FALSE(is_good<int>({5, 4, 3, 2}, le));
  auto r = is_good<FiniteGraph>({FiniteGraph::complete(4), FiniteGraph::complete(3), FiniteGraph::complete(5)},
                                minor_order());
  CHECK(r == std::pair{0, 2});
}

TEST_CASE("antichains") {
  Relation<int> le = [](const int& a, const int& b) { return a <= b; };
  CHECK(max_antichain<int>({1, 2, 3, 4}, le).size() == 1);

  auto pair = max_antichain<FiniteGraph>({FiniteGraph::cycle(3), FiniteGraph::star(3)}, minor_order());
  CHECK(pair.size() == 2);

  std::vector<FiniteGraph> universe;
  for (int n = 1; n <= 4; ++n)
    for (auto& g : enumerate_graphs(n, true)) universe.push_back(g);
  const int n = static_cast<int>(universe.size());
  std::vector<std::uint64_t> adj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && (brute_force_minor(universe[i], universe[j]) || brute_force_minor(universe[j], universe[i])))
        adj[i] |= 1ull << j;
  auto found = max_antichain<FiniteGraph>(universe, minor_order());
  CHECK(static_cast<int>(found.size()) == brute_max_independent(adj));
  for (int a : found)
    for (int b : found) CHECK((a == b || !(adj[a] >> b & 1)));

  CHECK_THROWS_AS(max_independent_set(std::vector<std::uint64_t>(kMaxAntichainUniverse + 1, 0)), Error);
}

TEST_CASE("immersions and their lifts") {
  Relation<int> le = [](const int& a, const int& b) { return a <= b; };
  Relation<int> eq = [](const int& a, const int& b) { return a == b; };
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) pairs.emplace_back(a, b);
  std::function<int(const int&)> id = [](const int& x) { return x; };
  CHECK_FALSE(check_immersion<int, int>(pairs, id, le, le));
  std::function<int(const int&)> constant = [](const int&) { return 7; };
  CHECK(check_immersion<int, int>(pairs, constant, eq, le));

  // Subset lift: every nonempty subset of a 4-element order, under the set order.
  // The map doubles into a sparser order whose comparabilities match.
  Relation<int> div = [](const int& a, const int& b) { return b % a == 0; };
  std::function<int(const int&)> twice = [](const int& x) { return 2 * (x + 1); };
  Relation<int> src = [](const int& a, const int& b) { return (b + 1) % (a + 1) == 0; };
  REQUIRE_FALSE(check_immersion<int, int>(pairs, twice, src, div));
  auto lift = star_lift<int, int>(twice);
  std::vector<std::vector<int>> subsets;
  for (int s = 1; s < 16; ++s) {
    std::vector<int> xs;
    for (int i = 0; i < 4; ++i)
      if (s >> i & 1) xs.push_back(i);
    subsets.push_back(xs);
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> set_pairs;
  for (auto& a : subsets)
    for (auto& b : subsets) set_pairs.emplace_back(a, b);
  Relation<std::vector<int>> src_star = [&](const std::vector<int>& a, const std::vector<int>& b) {
    return le_star(a, b, src);
  };
  Relation<std::vector<int>> div_star = [&](const std::vector<int>& a, const std::vector<int>& b) {
    return le_star(a, b, div);
  };
  std::function<std::vector<int>(const std::vector<int>&)> lifted = lift;
  CHECK_FALSE(check_immersion<std::vector<int>, std::vector<int>>(set_pairs, lifted, src_star, div_star));

  std::function<int(const int&)> const_map = [](const int&) { return 3; };
  auto lc = star_lift<int, int>(const_map);
  for (auto& s : subsets) CHECK(lc(s) == std::vector<int>{3});
  auto li = star_lift<int, int>(id);
  for (auto& s : subsets) CHECK(li(s) == s);
}
