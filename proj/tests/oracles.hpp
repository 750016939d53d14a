#pragma once

// Test-only oracles that avoid the library's own search and canonical forms.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "minorlab/graph.hpp"

namespace oracle {

// Smallest edge bitmask over all vertex permutations.
inline std::uint64_t min_mask(int n, const std::vector<minorlab::Edge>& edges) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto bit = [n](int a, int b) {
    if (a > b) std::swap(a, b);
    return a * n + b;
  };
  std::uint64_t best = ~0ull;
  do {
    std::uint64_t m = 0;
    for (const auto& e : edges) m |= 1ull << bit(perm[e.u], perm[e.v]);
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline bool connected(int n, const std::vector<minorlab::Edge>& edges) {
  if (n == 0) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (const auto& e : edges) parent[find(e.u)] = find(e.v);
  int roots = 0;
  for (int v = 0; v < n; ++v) roots += find(v) == v;
  return roots == 1;
}

// Number of isomorphism classes of graphs on n vertices, by exhaustion over edge subsets.
inline int count_classes(int n, bool connected_only) {
  std::vector<minorlab::Edge> all;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < (1ull << all.size()); ++s) {
    std::vector<minorlab::Edge> es;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (s >> i & 1) es.push_back(all[i]);
    if (connected_only && !connected(n, es)) continue;
    seen.insert(min_mask(n, es));
  }
  return static_cast<int>(seen.size());
}

inline bool isomorphic(const minorlab::FiniteGraph& a, const minorlab::FiniteGraph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return min_mask(a.order(), a.edges()) == min_mask(b.order(), b.edges());
}

}  // namespace oracle
