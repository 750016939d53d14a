#include "minorlab/minor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "minorlab/errors.hpp"

namespace minorlab {

namespace {

using Clock = std::chrono::steady_clock;

class Budget {
 public:
  explicit Budget(const SolverLimits& limits)
      : node_budget_(limits.node_budget), deadline_(Clock::now() + limits.time_budget) {}

  // Returns false once the budget is spent.
  bool tick() {
    ++nodes_;
    if (nodes_ > node_budget_) return alive_ = false;
    if ((nodes_ & 1023) == 0 && Clock::now() >= deadline_) return alive_ = false;
    return true;
  }
  bool ok() const { return alive_; }
  void spend() { alive_ = false; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::uint64_t node_budget_;
  Clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
  bool alive_ = true;
};

constexpr int kUndecided = -2;
constexpr int kDeleted = -1;

class Search {
 public:
  Search(const FiniteGraph& g, const FiniteGraph& h, const HitSets& hits, Budget& budget)
      : g_(g), h_(h), hits_(hits), budget_(budget), k_(g.order()), n_(h.order()) {}

  SearchStatus run(std::vector<int>& owner_out) {
    if (k_ == 0) {
      owner_out.assign(n_, kDeleted);
      return SearchStatus::Found;
    }
    build_order();
    owner_.assign(n_, kUndecided);
    count_.assign(k_, 0);
    empty_ = k_;
    undecided_ = n_;
    stamp_.assign(static_cast<std::size_t>(k_) * n_, 0);
    gen_.assign(k_, 0);
    reach_.assign(k_, {});

    struct Level {
      int index;
      std::vector<int> choices;
      std::size_t next = 0;
    };
    std::vector<Level> stack;
    stack.push_back({0, choices_for(order_[0]), 0});
    while (!stack.empty()) {
      Level& level = stack.back();
      const int x = order_[level.index];
      if (level.next > 0) unassign(x);
      if (level.next == level.choices.size()) {
        stack.pop_back();
        continue;
      }
      const int c = level.choices[level.next++];
      if (!budget_.tick()) return SearchStatus::BudgetExhausted;
      assign(x, c);
      if (!feasible()) continue;
      if (empty_ == 0 && complete()) {
        owner_out = owner_;
        for (int& o : owner_out)
          if (o == kUndecided) o = kDeleted;
        return SearchStatus::Found;
      }
      if (level.index + 1 < n_) {
        const int idx = level.index + 1;
        stack.push_back({idx, choices_for(order_[idx]), 0});
      }
    }
    return SearchStatus::NotMinor;
  }

 private:
  void build_order() {
    // BFS order, components taken from the highest-degree unvisited vertex.
    std::vector<int> by_degree(n_);
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](int a, int b) { return h_.degree(a) > h_.degree(b); });
    // Vertices in hit sets go first so constrained branch sets are seeded early.
    std::vector<char> hit(n_, 0);
    for (const auto& list : hits_)
      for (const auto& set : list)
        if (set.size() == 1) hit[set[0]] = 1;
    std::stable_partition(by_degree.begin(), by_degree.end(), [&](int v) { return hit[v] != 0; });
    std::vector<char> seen(n_, 0);
    order_.clear();
    for (int s : by_degree) {
      if (seen[s]) continue;
      seen[s] = 1;
      std::size_t head = order_.size();
      order_.push_back(s);
      while (head < order_.size()) {
        int x = order_[head++];
        for (int y : h_.neighbors(x)) {
          if (!seen[y]) {
            seen[y] = 1;
            order_.push_back(y);
          }
        }
      }
    }
  }

  std::vector<int> choices_for(int x) const {
    std::vector<int> adjacent_sets, fresh, far;
    std::vector<char> adj(k_, 0);
    for (int y : h_.neighbors(x)) {
      if (owner_[y] >= 0) adj[owner_[y]] = 1;
    }
    for (int v = 0; v < k_; ++v) {
      if (!allowed(v, x)) continue;
      if (count_[v] == 0) {
        fresh.push_back(v);
      } else if (adj[v]) {
        adjacent_sets.push_back(v);
      } else {
        far.push_back(v);
      }
    }
    std::vector<int> out = std::move(adjacent_sets);
    out.insert(out.end(), fresh.begin(), fresh.end());
    out.push_back(kDeleted);
    out.insert(out.end(), far.begin(), far.end());
    return out;
  }

  // A singleton hit set {y} forbids every other pattern vertex from owning y.
  bool allowed(int v, int x) const {
    for (int u = 0; u < k_; ++u) {
      if (u == v) continue;
      for (const auto& set : hits_[u])
        if (set.size() == 1 && set[0] == x) return false;
    }
    return true;
  }

  void assign(int x, int c) {
    owner_[x] = c;
    --undecided_;
    if (c >= 0 && count_[c]++ == 0) --empty_;
  }

  void unassign(int x) {
    int c = owner_[x];
    owner_[x] = kUndecided;
    ++undecided_;
    if (c >= 0 && --count_[c] == 0) ++empty_;
  }

  bool in_reach(int v, int x) const {
    return stamp_[static_cast<std::size_t>(v) * n_ + x] == gen_[v];
  }

  bool feasible() {
    if (empty_ > undecided_) return false;
    for (int v = 0; v < k_; ++v) {
      auto& r = reach_[v];
      r.clear();
      ++gen_[v];
      if (count_[v] == 0) continue;
      int start = -1;
      for (int x : order_) {
        if (owner_[x] == v) {
          start = x;
          break;
        }
      }
      std::size_t base = static_cast<std::size_t>(v) * n_;
      stamp_[base + start] = gen_[v];
      r.push_back(start);
      int members = 0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        int x = r[i];
        if (owner_[x] == v) ++members;
        for (int y : h_.neighbors(x)) {
          if (stamp_[base + y] == gen_[v]) continue;
          if (owner_[y] == v || owner_[y] == kUndecided) {
            stamp_[base + y] = gen_[v];
            r.push_back(y);
          }
        }
      }
      if (members != count_[v]) return false;
    }
    for (int v = 0; v < k_; ++v) {
      for (const auto& set : hits_[v]) {
        bool ok = false;
        for (int x : set) {
          if (owner_[x] == v || (owner_[x] == kUndecided && (count_[v] == 0 || in_reach(v, x)))) {
            ok = true;
            break;
          }
        }
        if (!ok) return false;
      }
    }
    for (const Edge& e : g_.edges()) {
      const int a = e.u, b = e.v;
      if (count_[a] == 0 && count_[b] == 0) continue;
      if (count_[a] == 0 || count_[b] == 0) {
        const int full = count_[a] == 0 ? b : a;
        bool ok = false;
        for (int x : reach_[full]) {
          for (int y : h_.neighbors(x)) {
            if (owner_[y] == kUndecided && y != x) {
              ok = true;
              break;
            }
          }
          if (ok) break;
        }
        if (!ok) return false;
        continue;
      }
      const int small = reach_[a].size() <= reach_[b].size() ? a : b;
      const int other = small == a ? b : a;
      bool ok = false;
      for (int x : reach_[small]) {
        for (int y : h_.neighbors(x)) {
          if (in_reach(other, y)) {
            ok = true;
            break;
          }
        }
        if (ok) break;
      }
      if (!ok) return false;
    }
    return true;
  }

  bool complete() const {
    // Every branch set connected within itself, every pattern edge realized.
    for (int v = 0; v < k_; ++v) {
      int start = -1;
      for (int x = 0; x < n_; ++x)
        if (owner_[x] == v) {
          start = x;
          break;
        }
      std::vector<int> queue{start};
      std::vector<char> seen(n_, 0);
      seen[start] = 1;
      for (std::size_t i = 0; i < queue.size(); ++i)
        for (int y : h_.neighbors(queue[i]))
          if (!seen[y] && owner_[y] == v) {
            seen[y] = 1;
            queue.push_back(y);
          }
      if (static_cast<int>(queue.size()) != count_[v]) return false;
      for (const auto& set : hits_[v]) {
        if (std::none_of(set.begin(), set.end(), [&](int x) { return owner_[x] == v; })) return false;
      }
    }
    for (const Edge& e : g_.edges()) {
      bool ok = false;
      for (int x = 0; x < n_ && !ok; ++x) {
        if (owner_[x] != e.u) continue;
        for (int y : h_.neighbors(x))
          if (owner_[y] == e.v) {
            ok = true;
            break;
          }
      }
      if (!ok) return false;
    }
    return true;
  }

  const FiniteGraph& g_;
  const FiniteGraph& h_;
  const HitSets& hits_;
  Budget& budget_;
  int k_;
  int n_;
  std::vector<int> order_;
  std::vector<int> owner_;
  std::vector<int> count_;
  int empty_ = 0;
  int undecided_ = 0;
  std::vector<int> stamp_;
  std::vector<int> gen_;
  std::vector<std::vector<int>> reach_;
};

MinorEmbedding embedding_from_owner(const FiniteGraph& g, const FiniteGraph& h,
                                    const std::vector<int>& owner) {
  MinorEmbedding emb;
  emb.branch_sets.assign(g.order(), {});
  for (int x = 0; x < h.order(); ++x)
    if (owner[x] >= 0) emb.branch_sets[owner[x]].push_back(x);
  complete_branch_edges(g, h, emb);
  return emb;
}

// Maps an embedding into a subgraph (vertex i = ids[i]) back to the host.
MinorEmbedding lift(MinorEmbedding emb, const std::vector<int>& ids) {
  for (auto& set : emb.branch_sets) {
    for (int& x : set) x = ids[x];
    std::sort(set.begin(), set.end());
  }
  for (auto& be : emb.branch_edges) {
    be.x = ids[be.x];
    be.y = ids[be.y];
  }
  return emb;
}

bool has_hits(const HitSets& hits) {
  return std::any_of(hits.begin(), hits.end(), [](const auto& l) { return !l.empty(); });
}

MinorResult solve(const FiniteGraph& g, const FiniteGraph& h, const HitSets& hits, Budget& budget,
                  int depth);

MinorResult make(SearchStatus s) {
  MinorResult r;
  r.status = s;
  return r;
}

// Tries g against each vertex subset in `parts`; Found wins, otherwise any
// exhaustion makes the answer unknown.
MinorResult dispatch(const FiniteGraph& g, const FiniteGraph& h,
                     const std::vector<std::vector<int>>& parts, Budget& budget, int depth) {
  bool exhausted = false;
  HitSets none(g.order());
  for (const auto& part : parts) {
    if (static_cast<int>(part.size()) < g.order()) continue;
    FiniteGraph sub = h.induced(part);
    if (sub.size() < g.size()) continue;
    MinorResult r = solve(g, sub, none, budget, depth + 1);
    if (r.found()) {
      r.embedding = lift(*r.embedding, part);
      return r;
    }
    if (r.status == SearchStatus::BudgetExhausted) exhausted = true;
  }
  return make(exhausted ? SearchStatus::BudgetExhausted : SearchStatus::NotMinor);
}

// Connected g against each component of h, with hit sets restricted to it.
MinorResult dispatch_hits(const FiniteGraph& g, const FiniteGraph& h, const HitSets& hits,
                          const std::vector<std::vector<int>>& parts, Budget& budget, int depth) {
  bool exhausted = false;
  std::vector<int> local(h.order(), -1);
  for (const auto& part : parts) {
    if (static_cast<int>(part.size()) < g.order()) continue;
    for (int i = 0; i < static_cast<int>(part.size()); ++i) local[part[i]] = i;
    HitSets sub_hits(g.order());
    bool possible = true;
    for (int v = 0; v < g.order() && possible; ++v) {
      for (const auto& set : hits[v]) {
        std::vector<int> mapped;
        for (int x : set)
          if (local[x] >= 0) mapped.push_back(local[x]);
        if (mapped.empty()) possible = false;
        sub_hits[v].push_back(std::move(mapped));
      }
    }
    for (int x : part) local[x] = -1;
    if (!possible) continue;
    MinorResult r = solve(g, h.induced(part), sub_hits, budget, depth + 1);
    if (r.found()) {
      r.embedding = lift(*r.embedding, part);
      return r;
    }
    if (r.status == SearchStatus::BudgetExhausted) exhausted = true;
  }
  return make(exhausted ? SearchStatus::BudgetExhausted : SearchStatus::NotMinor);
}

// Tree g into tree h. Rooting g at the vertex whose branch set holds the
// highest host vertex, every branch set lies below its parent's.
class TreeMinor {
 public:
  TreeMinor(const FiniteGraph& g, const FiniteGraph& h, Budget& budget) : g_(g), h_(h), budget_(budget) {
    order_h_ = rooted(h_, 0, parent_h_, kids_h_);
  }

  MinorResult run() {
    for (int r = 0; r < g_.order(); ++r) {
      std::vector<int> parent_g;
      order_g_ = rooted(g_, r, parent_g, kids_g_);
      fits_.assign(g_.order(), std::vector<std::uint64_t>(h_.order(), 0));
      cover_.assign(g_.order(), std::vector<std::uint64_t>(h_.order(), 0));
      for (int u : order_g_) {
        for (int x : order_h_) {
          if (!budget_.tick()) return make(SearchStatus::BudgetExhausted);
          compute(u, x);
        }
      }
      for (int x = 0; x < h_.order(); ++x) {
        if (contains(cover_[r][x], full(r))) {
          std::vector<int> owner(h_.order(), -1);
          place(r, x, owner);
          MinorResult out = make(SearchStatus::Found);
          out.embedding = embedding_from_owner(g_, h_, owner);
          return out;
        }
      }
    }
    return make(SearchStatus::NotMinor);
  }

 private:
  static std::vector<int> rooted(const FiniteGraph& t, int root, std::vector<int>& parent,
                                 std::vector<std::vector<int>>& kids) {
    parent.assign(t.order(), -1);
    kids.assign(t.order(), {});
    std::vector<int> order{root};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int w : t.neighbors(order[i]))
        if (w != root && parent[w] < 0) {
          parent[w] = order[i];
          kids[order[i]].push_back(w);
          order.push_back(w);
        }
    std::reverse(order.begin(), order.end());
    return order;
  }

  std::uint64_t full(int u) const { return (1u << kids_g_[u].size()) - 1; }
  static bool contains(std::uint64_t family, std::uint64_t set) { return (family >> set) & 1; }

  // Subsets of u's children placeable on pairwise incomparable roots strictly below x.
  std::uint64_t below(int u, int x) const {
    std::uint64_t reach = 1;
    for (int c : kids_h_[x]) {
      std::uint64_t next = reach;
      for (std::uint64_t b = 0; b <= full(u); ++b) {
        if (!contains(reach, b)) continue;
        for (std::uint64_t a = 0; a <= full(u); ++a)
          if ((a & b) == 0 && contains(fits_[u][c], a)) next |= 1ull << (a | b);
      }
      reach = next;
    }
    return reach;
  }

  void compute(int u, int x) {
    cover_[u][x] = below(u, x);
    // Subtree of x hosts the subset: x extends u's branch set, or roots one child.
    std::uint64_t f = cover_[u][x];
    for (std::size_t i = 0; i < kids_g_[u].size(); ++i) {
      const int w = kids_g_[u][i];
      if (contains(cover_[w][x], full(w))) f |= 1ull << (1u << i);
    }
    fits_[u][x] = f;
  }

  // Realizes `set` of u's children below x, adding pass-through vertices to u.
  void distribute(int u, int x, std::uint64_t set, std::vector<int>& owner) {
    // Re-run the reachability DP while remembering which child took what.
    std::vector<std::uint64_t> reach{1};
    for (int c : kids_h_[x]) {
      std::uint64_t next = reach.back();
      for (std::uint64_t b = 0; b <= full(u); ++b) {
        if (!contains(reach.back(), b)) continue;
        for (std::uint64_t a = 0; a <= full(u); ++a)
          if ((a & b) == 0 && contains(fits_[u][c], a)) next |= 1ull << (a | b);
      }
      reach.push_back(next);
    }
    std::uint64_t need = set;
    for (int i = static_cast<int>(kids_h_[x].size()) - 1; i >= 0 && need; --i) {
      const int c = kids_h_[x][i];
      if (contains(reach[i], need)) continue;
      for (std::uint64_t a = need;; a = (a - 1) & need) {
        if (a != 0 && contains(fits_[u][c], a) && contains(reach[i], need & ~a)) {
          host(u, c, a, owner);
          need &= ~a;
          break;
        }
        if (a == 0) break;
      }
    }
  }

  void host(int u, int c, std::uint64_t set, std::vector<int>& owner) {
    if (__builtin_popcountll(set) == 1) {
      const int w = kids_g_[u][__builtin_ctzll(set)];
      if (contains(cover_[w][c], full(w))) {
        place(w, c, owner);
        return;
      }
    }
    owner[c] = u;
    distribute(u, c, set, owner);
  }

  void place(int u, int x, std::vector<int>& owner) {
    owner[x] = u;
    distribute(u, x, full(u), owner);
  }

  const FiniteGraph& g_;
  const FiniteGraph& h_;
  Budget& budget_;
  std::vector<int> parent_h_;
  std::vector<std::vector<int>> kids_h_, kids_g_;
  std::vector<int> order_h_, order_g_;
  std::vector<std::vector<std::uint64_t>> fits_, cover_;
};

MinorResult solve(const FiniteGraph& g, const FiniteGraph& h, const HitSets& hits, Budget& budget,
                  int depth) {
  if (!budget.ok()) return make(SearchStatus::BudgetExhausted);
  if (g.order() > h.order() || g.size() > h.size()) return make(SearchStatus::NotMinor);
  for (const auto& list : hits)
    for (const auto& set : list)
      if (set.empty()) return make(SearchStatus::NotMinor);
  const bool constrained = has_hits(hits);
  if (constrained && g.order() > 0 && depth < 4) {
    // The unconstrained question is a necessary condition and has cheaper refutations.
    MinorResult free = solve(g, h, HitSets(g.order()), budget, depth + 1);
    if (free.refuted()) return free;
    if (free.found() && !verify_constrained_embedding(g, h, *free.embedding, hits)) return free;
    if (!budget.ok()) return make(SearchStatus::BudgetExhausted);
    auto gcomp = components(g);
    auto hcomp = components(h);
    if (gcomp.size() == 1 && hcomp.size() > 1) return dispatch_hits(g, h, hits, hcomp, budget, depth);
  }
  if (!constrained && g.order() > 0 && depth < 4) {
    auto gcomp = components(g);
    auto hcomp = components(h);
    if (gcomp.size() == 1 && hcomp.size() > 1) return dispatch(g, h, hcomp, budget, depth);
    if (is_forest(h)) {
      if (!is_forest(g)) return make(SearchStatus::NotMinor);
      int widest = 0;
      for (int v = 0; v < g.order(); ++v) widest = std::max(widest, g.degree(v));
      if (gcomp.size() == 1 && widest <= 6) return TreeMinor(g, h, budget).run();
    }
    if (gcomp.size() == 1 && g.order() >= 3 && !is_two_connected(h)) {
      auto hb = block_decomposition(h).blocks;
      if (is_two_connected(g)) return dispatch(g, h, hb, budget, depth);
      // Each block of g must already fit inside some block of h.
      std::vector<std::string> checked;
      for (const auto& block : block_decomposition(g).blocks) {
        if (block.size() < 3) continue;
        FiniteGraph b = g.induced(block);
        std::string key = b.order() <= kDefaultCanonicalBound ? canonical_key(b) : emit_graph(b);
        if (std::find(checked.begin(), checked.end(), key) != checked.end()) continue;
        checked.push_back(key);
        MinorResult r = dispatch(b, h, hb, budget, depth);
        if (r.refuted()) return r;
        if (!budget.ok()) return make(SearchStatus::BudgetExhausted);
      }
    }
    if (gcomp.size() > 1) {
      for (const auto& comp : gcomp) {
        if (comp.size() == 1) continue;
        MinorResult r = solve(g.induced(comp), h, HitSets(comp.size()), budget, depth + 1);
        if (r.refuted()) return r;
        if (!budget.ok()) return make(SearchStatus::BudgetExhausted);
      }
    }
  }
  std::vector<int> owner;
  Search search(g, h, hits, budget);
  SearchStatus s = search.run(owner);
  MinorResult r = make(s);
  if (s == SearchStatus::BudgetExhausted) budget.spend();
  if (s == SearchStatus::Found) r.embedding = embedding_from_owner(g, h, owner);
  return r;
}

}  // namespace

MinorResult find_constrained_minor(const FiniteGraph& g, const FiniteGraph& h, const HitSets& hits,
                                   const SolverLimits& limits) {
  if (static_cast<int>(hits.size()) != g.order()) {
    throw Error(ErrorKind::InvalidArgument, "hit sets must be given per pattern vertex");
  }
  Budget budget(limits);
  MinorResult r = solve(g, h, hits, budget, 0);
  r.nodes = budget.nodes();
  return r;
}

MinorResult find_minor(const FiniteGraph& g, const FiniteGraph& h, const SolverLimits& limits) {
  return find_constrained_minor(g, h, HitSets(g.order()), limits);
}

MinorResult find_marked_minor(const MarkedGraph& g, const MarkedGraph& h,
                              const SolverLimits& limits) {
  if (g.marked().size() > h.marked().size()) {
    MinorResult r;
    r.status = SearchStatus::NotMinor;
    return r;
  }
  HitSets hits(g.order());
  for (int v : g.marked()) hits[v].push_back(h.marked());
  return find_constrained_minor(g.graph(), h.graph(), hits, limits);
}

void complete_branch_edges(const FiniteGraph& g, const FiniteGraph& h, MinorEmbedding& emb) {
  std::vector<int> owner(h.order(), -1);
  for (int v = 0; v < static_cast<int>(emb.branch_sets.size()); ++v)
    for (int x : emb.branch_sets[v]) owner[x] = v;
  emb.branch_edges.clear();
  for (const Edge& e : g.edges()) {
    BranchEdge best{e, -1, -1};
    for (int x : emb.branch_sets[e.u]) {
      for (int y : h.neighbors(x)) {
        if (owner[y] == e.v) {
          best.x = x;
          best.y = y;
          break;
        }
      }
      if (best.x >= 0) break;
    }
    if (best.x >= 0) emb.branch_edges.push_back(best);
  }
}

std::optional<EmbeddingViolation> verify_constrained_embedding(const FiniteGraph& g,
                                                               const FiniteGraph& h,
                                                               const MinorEmbedding& emb,
                                                               const HitSets& hits) {
  auto fail = [](std::string inv, int v, std::optional<Edge> e, std::string detail) {
    return EmbeddingViolation{std::move(inv), v, e, std::move(detail)};
  };
  if (static_cast<int>(emb.branch_sets.size()) != g.order()) {
    return fail("shape", -1, std::nullopt, "branch set count differs from pattern order");
  }
  std::vector<int> owner(h.order(), -1);
  for (int v = 0; v < g.order(); ++v) {
    const auto& set = emb.branch_sets[v];
    if (set.empty()) return fail("nonempty", v, std::nullopt, "empty branch set");
    for (int x : set) {
      if (x < 0 || x >= h.order()) return fail("range", v, std::nullopt, "host vertex out of range");
      if (owner[x] >= 0) {
        return fail("disjointness", x, std::nullopt,
                    "host vertex shared by branch sets " + std::to_string(owner[x]) + " and " +
                        std::to_string(v));
      }
      owner[x] = v;
    }
  }
  for (int v = 0; v < g.order(); ++v) {
    const auto& set = emb.branch_sets[v];
    std::vector<int> queue{set[0]};
    std::vector<char> seen(h.order(), 0);
    seen[set[0]] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int y : h.neighbors(queue[i]))
        if (!seen[y] && owner[y] == v) {
          seen[y] = 1;
          queue.push_back(y);
        }
    if (queue.size() != set.size()) {
      return fail("connectivity", v, std::nullopt, "branch set does not induce a connected subgraph");
    }
  }
  std::map<Edge, const BranchEdge*> by_edge;
  for (const auto& be : emb.branch_edges) by_edge[be.pattern] = &be;
  for (const Edge& e : g.edges()) {
    auto it = by_edge.find(e);
    if (it == by_edge.end()) return fail("branch-edge", -1, e, "pattern edge has no branch edge");
    const BranchEdge& be = *it->second;
    if (be.x < 0 || be.x >= h.order() || be.y < 0 || be.y >= h.order() || !h.adjacent(be.x, be.y)) {
      return fail("branch-edge", -1, e, "branch edge is not a host edge");
    }
    if (owner[be.x] != e.u || owner[be.y] != e.v) {
      return fail("branch-edge", -1, e, "branch edge endpoints outside the branch sets");
    }
  }
  for (const auto& [pe, be] : by_edge) {
    if (pe.v >= g.order() || !g.adjacent(pe.u, pe.v)) {
      return fail("branch-edge", -1, pe, "branch edge for a non-edge of the pattern");
    }
  }
  for (int v = 0; v < static_cast<int>(hits.size()); ++v) {
    for (const auto& set : hits[v]) {
      if (std::none_of(set.begin(), set.end(), [&](int x) { return owner[x] == v; })) {
        return fail("hit", v, std::nullopt, "branch set misses a required host set");
      }
    }
  }
  return std::nullopt;
}

std::optional<EmbeddingViolation> verify_embedding(const FiniteGraph& g, const FiniteGraph& h,
                                                   const MinorEmbedding& emb) {
  return verify_constrained_embedding(g, h, emb, {});
}

std::optional<EmbeddingViolation> verify_embedding(const MarkedGraph& g, const MarkedGraph& h,
                                                   const MinorEmbedding& emb, bool marked) {
  auto v = verify_embedding(g.graph(), h.graph(), emb);
  if (v || !marked) return v;
  for (int m : g.marked()) {
    const auto& set = emb.branch_sets[m];
    if (std::none_of(set.begin(), set.end(), [&](int x) { return h.is_marked(x); })) {
      return EmbeddingViolation{"marked", m, std::nullopt, "branch set of a marked vertex has no mark"};
    }
  }
  return std::nullopt;
}

namespace {

// Generic exhaustive check; `marked_ok` tests the marking condition.
template <class MarkCheck>
bool brute_force(const FiniteGraph& g, const FiniteGraph& h, MarkCheck marked_ok) {
  const int k = g.order();
  const int n = h.order();
  if (n > kBruteForceMaxHost) throw Error(ErrorKind::BoundExceeded, "brute force host too large");
  if (k == 0) return true;
  if (k > n) return false;
  std::vector<int> label(n, -1);
  // Odometer over {-1, 0..k-1}^n.
  while (true) {
    bool ok = true;
    std::vector<int> size(k, 0);
    for (int x = 0; x < n; ++x)
      if (label[x] >= 0) ++size[label[x]];
    for (int v = 0; v < k && ok; ++v) ok = size[v] > 0;
    for (int v = 0; v < k && ok; ++v) {
      int start = -1;
      for (int x = 0; x < n; ++x)
        if (label[x] == v) {
          start = x;
          break;
        }
      std::vector<int> stack{start};
      std::vector<char> seen(n, 0);
      seen[start] = 1;
      int reached = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y = 0; y < n; ++y)
          if (!seen[y] && label[y] == v && h.adjacent(x, y)) {
            seen[y] = 1;
            ++reached;
            stack.push_back(y);
          }
      }
      ok = reached == size[v];
    }
    for (const Edge& e : g.edges()) {
      if (!ok) break;
      bool found = false;
      for (const Edge& f : h.edges()) {
        if ((label[f.u] == e.u && label[f.v] == e.v) || (label[f.u] == e.v && label[f.v] == e.u)) {
          found = true;
          break;
        }
      }
      ok = found;
    }
    if (ok && marked_ok(label)) return true;
    int i = 0;
    while (i < n && label[i] == k - 1) label[i++] = -1;
    if (i == n) return false;
    ++label[i];
  }
}

}  // namespace

bool brute_force_minor(const FiniteGraph& g, const FiniteGraph& h) {
  return brute_force(g, h, [](const std::vector<int>&) { return true; });
}

bool brute_force_marked_minor(const MarkedGraph& g, const MarkedGraph& h) {
  return brute_force(g.graph(), h.graph(), [&](const std::vector<int>& label) {
    for (int m : g.marked()) {
      bool hit = false;
      for (int x : h.marked()) hit = hit || label[x] == m;
      if (!hit) return false;
    }
    return true;
  });
}

MinorEmbedding restrict_to_block(const FiniteGraph& g, const FiniteGraph& h,
                                 const MinorEmbedding& emb) {
  if (!is_two_connected(g)) {
    throw Error(ErrorKind::PreconditionViolated, "restrict_to_block needs a 2-connected pattern");
  }
  if (auto v = verify_embedding(g, h, emb)) {
    throw Error(ErrorKind::PreconditionViolated, "input embedding fails: " + v->invariant);
  }
  for (const auto& block : block_decomposition(h).blocks) {
    std::vector<char> in(h.order(), 0);
    for (int x : block) in[x] = 1;
    MinorEmbedding r;
    r.branch_sets.resize(g.order());
    bool all_meet = true;
    for (int v = 0; v < g.order(); ++v) {
      for (int x : emb.branch_sets[v])
        if (in[x]) r.branch_sets[v].push_back(x);
      all_meet = all_meet && !r.branch_sets[v].empty();
    }
    if (!all_meet) continue;
    complete_branch_edges(g, h, r);
    if (!verify_embedding(g, h, r)) return r;
  }
  throw Error(ErrorKind::PreconditionViolated, "no block carries the embedding");
}

bool is_minor_twin(const FiniteGraph& g, const FiniteGraph& h, const SolverLimits& limits) {
  for (int dir = 0; dir < 2; ++dir) {
    MinorResult r = dir == 0 ? find_minor(g, h, limits) : find_minor(h, g, limits);
    if (r.status == SearchStatus::BudgetExhausted) {
      throw Error(ErrorKind::BudgetExhausted, "twin check ran out of budget");
    }
    if (!r.found()) return false;
  }
  return true;
}

MinorEmbedding compose(const MinorEmbedding& first, const MinorEmbedding& second) {
  MinorEmbedding out;
  const int k = static_cast<int>(first.branch_sets.size());
  out.branch_sets.resize(k);
  for (int v = 0; v < k; ++v) {
    for (int x : first.branch_sets[v]) {
      const auto& inner = second.branch_sets[x];
      out.branch_sets[v].insert(out.branch_sets[v].end(), inner.begin(), inner.end());
    }
    std::sort(out.branch_sets[v].begin(), out.branch_sets[v].end());
  }
  std::map<Edge, BranchEdge> inner_edge;
  for (const auto& be : second.branch_edges) inner_edge[be.pattern] = be;
  for (const auto& be : first.branch_edges) {
    auto it = inner_edge.find(Edge(be.x, be.y));
    if (it == inner_edge.end()) continue;
    BranchEdge outer{be.pattern, it->second.x, it->second.y};
    if (it->second.pattern.u != be.x) std::swap(outer.x, outer.y);
    out.branch_edges.push_back(outer);
  }
  return out;
}

std::string emit_certificate(const MinorEmbedding& emb) {
  std::ostringstream out;
  for (std::size_t v = 0; v < emb.branch_sets.size(); ++v) {
    out << "branch " << v << " :";
    for (int x : emb.branch_sets[v]) out << ' ' << x;
    out << '\n';
  }
  for (const auto& be : emb.branch_edges) {
    out << "bedge " << be.pattern.u << '-' << be.pattern.v << " : " << be.x << '-' << be.y << '\n';
  }
  return out.str();
}

namespace {

std::pair<int, int> parse_pair(const std::string& tok, int line) {
  auto dash = tok.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size()) {
    throw ParseError(line, 1, "expected '<a>-<b>' but got '" + tok + "'");
  }
  auto num = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        s.size() > 9) {
      throw ParseError(line, 1, "bad integer '" + s + "'");
    }
    return std::stoi(s);
  };
  return {num(tok.substr(0, dash)), num(tok.substr(dash + 1))};
}

}  // namespace

MinorEmbedding parse_certificate(const std::string& text) {
  MinorEmbedding emb;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto num = [&](const std::string& s) {
    if (s.empty() || s.size() > 9 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError(line_no, 1, "bad integer '" + s + "'");
    }
    return std::stoi(s);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks.size() < 3 || toks[2] != ":") {
      throw ParseError(line_no, 1, "expected '<kind> <id> : ...'");
    }
    if (toks[0] == "branch") {
      int v = num(toks[1]);
      if (v >= static_cast<int>(emb.branch_sets.size())) emb.branch_sets.resize(v + 1);
      for (std::size_t i = 3; i < toks.size(); ++i) emb.branch_sets[v].push_back(num(toks[i]));
    } else if (toks[0] == "bedge") {
      if (toks.size() != 4) throw ParseError(line_no, 1, "expected 'bedge <u>-<v> : <x>-<y>'");
      auto [u, v] = parse_pair(toks[1], line_no);
      auto [x, y] = parse_pair(toks[3], line_no);
      emb.branch_edges.push_back({Edge(u, v), x, y});
      if (u > v) std::swap(emb.branch_edges.back().x, emb.branch_edges.back().y);
    } else {
      throw ParseError(line_no, 1, "unknown directive '" + toks[0] + "'");
    }
  }
  return emb;
}

}  // namespace minorlab
