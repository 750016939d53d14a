#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace minorlab {

// A finite quasi-order given by its relation table.
class GroundOrder {
 public:
  GroundOrder() = default;
  // Throws InvalidArgument unless `le` is reflexive and transitive.
  GroundOrder(std::vector<std::string> names, std::vector<std::vector<bool>> le);
  static GroundOrder from_relation(std::vector<std::string> names,
                                   const std::function<bool(int, int)>& le);

  int size() const { return static_cast<int>(names_.size()); }
  bool le(int a, int b) const { return le_[a][b]; }
  const std::string& name(int i) const { return names_[i]; }
  // -1 if absent.
  int index_of(const std::string& name) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> le_;
};

// Hereditarily finite set over ground indices. Collections are nonempty,
// deduplicated and sorted, so equality is structural.
class HFSet {
 public:
  static HFSet ground(int index);
  static HFSet collection(std::vector<HFSet> items);

  bool is_ground() const { return ground_ >= 0; }
  int index() const { return ground_; }
  const std::vector<HFSet>& items() const { return items_; }

  friend bool operator==(const HFSet&, const HFSet&) = default;
  friend std::strong_ordering operator<=>(const HFSet& a, const HFSet& b);

 private:
  int ground_ = -1;
  std::vector<HFSet> items_;
};

bool le_plus(const HFSet& x, const HFSet& y, const GroundOrder& q);
// Ground elements have rank 1; a collection is one above its largest member.
int qrank(const HFSet& x);
// All HF sets with qrank at most `max_qrank` and every collection of size at most `max_width`.
std::vector<HFSet> enumerate_hf(int ground_size, int max_qrank, int max_width);

// `(hf NAME)` or `(hf (<hf> ...))`, names resolved in q.
HFSet parse_hf(const std::string& text, const GroundOrder& q);
std::string emit_hf(const HFSet& x, const GroundOrder& q);

template <class T>
using Relation = std::function<bool(const T&, const T&)>;

// Every element of a lies below some element of b.
template <class T>
bool le_star(const std::vector<T>& a, const std::vector<T>& b, const Relation<T>& le) {
  return std::all_of(a.begin(), a.end(), [&](const T& x) {
    return std::any_of(b.begin(), b.end(), [&](const T& y) { return le(x, y); });
  });
}

// Some strictly increasing map sends each s[i] below t[phi(i)]. Earliest matching is optimal.
template <class T>
bool seq_le(const std::vector<T>& s, const std::vector<T>& t, const Relation<T>& le) {
  std::size_t j = 0;
  for (const T& x : s) {
    while (j < t.size() && !le(x, t[j])) ++j;
    if (j == t.size()) return false;
    ++j;
  }
  return true;
}

// Lexicographically least i < j with seq[i] <= seq[j].
template <class T>
std::optional<std::pair<int, int>> is_good(const std::vector<T>& seq, const Relation<T>& le) {
  for (int i = 0; i < static_cast<int>(seq.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(seq.size()); ++j)
      if (le(seq[i], seq[j])) return std::pair{i, j};
  return std::nullopt;
}

inline constexpr int kMaxAntichainUniverse = 64;

// Indices of a maximum antichain of the comparability graph given as adjacency bitmasks.
std::vector<int> max_independent_set(const std::vector<std::uint64_t>& comparable);

template <class T>
std::vector<int> max_antichain(const std::vector<T>& universe, const Relation<T>& le) {
  const int n = static_cast<int>(universe.size());
  std::vector<std::uint64_t> adj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (le(universe[i], universe[j]) || le(universe[j], universe[i])) {
        adj[i] |= 1ull << j;
        adj[j] |= 1ull << i;
      }
  return max_independent_set(adj);
}

// First sampled pair (p, q) with f(p) <= f(q) but not p <= q.
template <class R, class Q>
std::optional<std::pair<R, R>> check_immersion(const std::vector<std::pair<R, R>>& samples,
                                               const std::function<Q(const R&)>& f,
                                               const Relation<R>& le_r, const Relation<Q>& le_q) {
  for (const auto& [p, q] : samples)
    if (le_q(f(p), f(q)) && !le_r(p, q)) return std::pair{p, q};
  return std::nullopt;
}

// Pointwise image of a finite set, as a sorted set.
template <class A, class B>
std::function<std::vector<B>(const std::vector<A>&)> star_lift(std::function<B(const A&)> m) {
  return [m = std::move(m)](const std::vector<A>& xs) {
    std::vector<B> out;
    for (const A& x : xs) out.push_back(m(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
}

}  // namespace minorlab
