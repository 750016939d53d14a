#include "minorlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "minorlab/constructions.hpp"
#include "minorlab/errors.hpp"
#include "minorlab/membership.hpp"
#include "minorlab/minor.hpp"
#include "minorlab/order.hpp"
#include "minorlab/presented.hpp"

namespace minorlab {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SplitMix64 SplitMix64::split(std::uint64_t index) const {
  SplitMix64 mixer(state_ ^ (index * 0xd1b54a32d192ed03ull));
  mixer.next();
  return SplitMix64(mixer.next());
}

int SplitMix64::below(int n) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "empty range");
  return static_cast<int>(next() % static_cast<std::uint64_t>(n));
}

FiniteGraph random_connected_graph(SplitMix64& rng, int n, int extra_percent) {
  std::set<Edge> es;
  for (int v = 1; v < n; ++v) es.emplace(rng.below(v), v);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rng.chance(extra_percent)) es.emplace(a, b);
  return FiniteGraph(n, std::vector<Edge>(es.begin(), es.end()));
}

FiniteGraph random_graph(SplitMix64& rng, int n, int edge_percent) {
  std::vector<Edge> es;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rng.chance(edge_percent)) es.emplace_back(a, b);
  return FiniteGraph(n, std::move(es));
}

namespace {

Attachment random_attachment(SplitMix64& rng, int kernel, int top) {
  if (kernel == 0 || rng.chance(15)) return Attachment::none();
  if (top == 0 || rng.chance(30)) {
    std::vector<int> anchors{rng.below(kernel)};
    if (kernel > 1 && rng.chance(30)) anchors.push_back((anchors[0] + 1) % kernel);
    return Attachment::to_all(anchors);
  }
  std::set<std::pair<int, int>> links{{rng.below(top), rng.below(kernel)}};
  if (rng.chance(30)) links.emplace(rng.below(top), rng.below(kernel));
  return Attachment::to_ports(std::vector<std::pair<int, int>>(links.begin(), links.end()));
}

PresPtr random_part(SplitMix64& rng, int depth, const RandomPresentationOptions& opt) {
  if (depth == 0) {
    return share(Presentation::base(MarkedGraph(random_connected_graph(rng, 1 + rng.below(opt.max_part_order), 30))));
  }
  const int k = rng.below(opt.max_kernel + 1);
  FiniteGraph kernel = random_graph(rng, k, 50);
  std::vector<Template> ts;
  const int nt = 1 + rng.below(opt.max_templates);
  for (int i = 0; i < nt; ++i) {
    if (opt.families && rng.chance(15)) {
      static constexpr Generator gens[] = {Generator::Clique, Generator::Path, Generator::Cycle};
      ts.push_back(FamilyTemplate{gens[rng.below(3)], random_attachment(rng, k, 1)});
      continue;
    }
    // The first template reaches the full depth so the rank is not accidentally small.
    PresPtr part = random_part(rng, i == 0 ? depth - 1 : rng.below(depth), opt);
    Multiplicity m = i == 0 || rng.chance(70) ? Multiplicity::omega() : Multiplicity::finite(1 + rng.below(2));
    ts.push_back(ConcreteTemplate{part, m, random_attachment(rng, k, part->top_order())});
  }
  return share(Presentation::node(std::move(kernel), {}, std::move(ts)));
}

}  // namespace

Presentation random_presentation(SplitMix64& rng, const RandomPresentationOptions& opt) {
  const int depth = 1 + rng.below(std::max(1, opt.max_depth));
  Presentation p = normalize(*random_part(rng, depth, opt));
  if (opt.kernel_marks && !p.is_base()) {
    std::vector<int> marks;
    for (int v : kernel(p))
      if (rng.chance(50)) marks.push_back(v);
    p = with_kernel_marks(p, marks);
  }
  return p;
}

namespace {

struct Plan {
  int cases = 0;
  std::function<CaseResult(int)> run;
};

using Planner = std::function<Plan(std::uint64_t seed, int count)>;

std::string show(const MarkedGraph& g) { return emit_graph(g); }
std::string show(const FiniteGraph& g) { return emit_graph(g); }
std::string show(const Presentation& p) { return emit_presentation(p); }

template <class... T>
std::string inputs(const T&... parts) {
  std::ostringstream out;
  ((out << show(parts) << "---\n"), ...);
  return out.str();
}

// Every case of an exhaustive suite, or a seeded sample of `count` of them.
Plan exhaustive(int total, std::uint64_t seed, int count, std::function<CaseResult(int)> f) {
  if (count <= 0 || count >= total) return {total, std::move(f)};
  std::vector<int> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  SplitMix64 rng(seed);
  for (int i = total - 1; i > 0; --i) std::swap(idx[i], idx[rng.below(i + 1)]);
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return {count, [idx = std::move(idx), f = std::move(f)](int i) { return f(idx[i]); }};
}

Plan seeded(std::uint64_t seed, int count, std::function<CaseResult(SplitMix64&)> f) {
  return {count, [seed, f = std::move(f)](int i) {
            SplitMix64 rng = SplitMix64(seed).split(static_cast<std::uint64_t>(i));
            return f(rng);
          }};
}

std::vector<FiniteGraph> graphs_up_to(int n, bool connected) {
  std::vector<FiniteGraph> out;
  for (int k = 1; k <= n; ++k)
    for (auto& g : enumerate_graphs(k, connected)) out.push_back(std::move(g));
  return out;
}

std::vector<MarkedGraph> marked_up_to(int n, int marks, bool connected) {
  std::vector<MarkedGraph> out;
  for (int k = 1; k <= n; ++k)
    for (auto& g : enumerate_marked_graphs(k, marks, connected)) out.push_back(std::move(g));
  return out;
}

// Solver agrees with brute force on unmarked and marked pairs, and its models verify.
Plan solver_oracle(std::uint64_t seed, int count) {
  auto plain = std::make_shared<std::vector<FiniteGraph>>(graphs_up_to(5, false));
  auto marked = std::make_shared<std::vector<MarkedGraph>>(marked_up_to(5, 2, false));
  const int np = static_cast<int>(plain->size());
  const int nm = static_cast<int>(marked->size());
  return exhaustive(np * np + nm * nm, seed, count, [=](int i) {
    if (i < np * np) {
      const FiniteGraph& g = (*plain)[i / np];
      const FiniteGraph& h = (*plain)[i % np];
      MinorResult r = find_minor(g, h);
      if (r.status == SearchStatus::BudgetExhausted) return CaseResult::unknown();
      if (r.found() != brute_force_minor(g, h)) return CaseResult::fail(inputs(g, h));
      if (r.found() && verify_embedding(g, h, *r.embedding)) return CaseResult::fail(inputs(g, h));
      return CaseResult::pass();
    }
    i -= np * np;
    const MarkedGraph& g = (*marked)[i / nm];
    const MarkedGraph& h = (*marked)[i % nm];
    MinorResult r = find_marked_minor(g, h);
    if (r.status == SearchStatus::BudgetExhausted) return CaseResult::unknown();
    if (r.found() != brute_force_marked_minor(g, h)) return CaseResult::fail(inputs(g, h));
    if (r.found() && verify_embedding(g, h, *r.embedding, true)) return CaseResult::fail(inputs(g, h));
    return CaseResult::pass();
  });
}

Plan twins(std::uint64_t seed, int count) {
  auto all = std::make_shared<std::vector<FiniteGraph>>(graphs_up_to(5, false));
  const int n = static_cast<int>(all->size());
  auto pairs = std::make_shared<std::vector<std::pair<int, int>>>();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pairs->emplace_back(i, j);
  return exhaustive(static_cast<int>(pairs->size()), seed, count, [=](int c) {
    const auto [i, j] = (*pairs)[c];
    const FiniteGraph& g = (*all)[i];
    const FiniteGraph& h = (*all)[j];
    const bool twin = is_minor_twin(g, h);
    if (twin && !is_isomorphic(g, h)) return CaseResult::fail(inputs(g, h));
    if (i == j && !twin) return CaseResult::fail(inputs(g, h));
    return CaseResult::pass();
  });
}

// A random minor of h: delete and contract a few edges, drop a few vertices.
FiniteGraph random_minor(SplitMix64& rng, const FiniteGraph& h) {
  const int n = h.order();
  std::vector<int> owner(n);
  std::iota(owner.begin(), owner.end(), 0);
  auto find = [&](int x) {
    while (owner[x] != x) x = owner[x];
    return x;
  };
  std::vector<bool> gone(n, false);
  for (const Edge& e : h.edges())
    if (rng.chance(20)) owner[find(e.u)] = find(e.v);
  for (int v = 0; v < n; ++v)
    if (rng.chance(10)) gone[v] = true;
  std::map<int, int> id;
  for (int v = 0; v < n; ++v)
    if (!gone[v] && !id.count(find(v))) id.emplace(find(v), static_cast<int>(id.size()));
  std::set<Edge> es;
  for (const Edge& e : h.edges()) {
    if (gone[e.u] || gone[e.v] || rng.chance(20)) continue;
    const int a = id.at(find(e.u)), b = id.at(find(e.v));
    if (a != b) es.emplace(a, b);
  }
  return FiniteGraph(std::max<int>(1, static_cast<int>(id.size())), std::vector<Edge>(es.begin(), es.end()));
}

std::vector<int> random_marks(SplitMix64& rng, int n, int at_most) {
  std::vector<int> vs(n);
  std::iota(vs.begin(), vs.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(vs[i], vs[rng.below(i + 1)]);
  vs.resize(std::min(n, rng.below(at_most + 1)));
  std::sort(vs.begin(), vs.end());
  return vs;
}

Plan cones(std::uint64_t seed, int count) {
  return seeded(seed, count, [](SplitMix64& rng) {
    FiniteGraph h = random_graph(rng, 1 + rng.below(7), 20 + rng.below(50));
    FiniteGraph g = rng.chance(50) ? random_minor(rng, h) : random_graph(rng, 1 + rng.below(7), 20 + rng.below(50));
    MinorResult plain = find_minor(g, h);
    MinorResult cone = find_minor(suspension(g), suspension(h));
    MarkedGraph mg(g, random_marks(rng, g.order(), 2));
    MarkedGraph mh(h, random_marks(rng, h.order(), 3));
    MinorResult marked = find_marked_minor(mg, mh);
    MinorResult marked_cone = find_marked_minor(marked_suspension(mg), marked_suspension(mh));
    for (const MinorResult* r : {&plain, &cone, &marked, &marked_cone})
      if (r->status == SearchStatus::BudgetExhausted) return CaseResult::unknown();
    if (plain.found() != cone.found() || marked.found() != marked_cone.found()) {
      return CaseResult::fail(inputs(mg, mh));
    }
    return CaseResult::pass();
  });
}

// Two-connected: a cycle with chords.
FiniteGraph random_two_connected(SplitMix64& rng) {
  const int n = 3 + rng.below(3);
  std::set<Edge> es;
  for (int v = 0; v < n; ++v) es.emplace(v, (v + 1) % n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 2; b < n; ++b)
      if (rng.chance(30)) es.emplace(a, b);
  return FiniteGraph(n, std::vector<Edge>(es.begin(), es.end()));
}

// g with some vertices split, plus pendant blocks glued on: g is still a minor.
FiniteGraph random_host_of(SplitMix64& rng, const FiniteGraph& g) {
  int n = g.order();
  std::vector<std::set<int>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  const int splits = rng.below(3);
  for (int s = 0; s < splits; ++s) {
    const int v = rng.below(n);
    const int w = n++;
    adj.emplace_back();
    for (int x : std::vector<int>(adj[v].begin(), adj[v].end()))
      if (rng.chance(50)) {
        adj[v].erase(x);
        adj[x].erase(v);
        adj[x].insert(w);
        adj[w].insert(x);
      }
    adj[v].insert(w);
    adj[w].insert(v);
  }
  const int blocks = 1 + rng.below(3);
  for (int b = 0; b < blocks; ++b) {
    const int at = rng.below(n);
    const int size = 2 + rng.below(3);
    std::vector<int> vs{at};
    for (int i = 1; i < size; ++i) {
      vs.push_back(n++);
      adj.emplace_back();
    }
    auto link = [&](int x, int y) {
      adj[x].insert(y);
      adj[y].insert(x);
    };
    for (int i = 0; i + 1 < size; ++i) link(vs[i], vs[i + 1]);
    if (size > 2 && rng.chance(60)) link(vs.back(), vs.front());
  }
  std::vector<Edge> es;
  for (int x = 0; x < n; ++x)
    for (int y : adj[x])
      if (x < y) es.emplace_back(x, y);
  // Shuffle the names so the original block is not always first.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  return FiniteGraph(n, es).relabeled(perm);
}

Plan blocks(std::uint64_t seed, int count) {
  return seeded(seed, count, [](SplitMix64& rng) {
    FiniteGraph g = random_two_connected(rng);
    FiniteGraph h = random_host_of(rng, g);
    MinorResult r = find_minor(g, h);
    if (r.status == SearchStatus::BudgetExhausted) return CaseResult::unknown();
    if (!r.found()) return CaseResult::fail(inputs(g, h));
    MinorEmbedding inner = restrict_to_block(g, h, *r.embedding);
    if (verify_embedding(g, h, inner)) return CaseResult::fail(inputs(g, h));
    std::set<int> used;
    for (const auto& b : inner.branch_sets) used.insert(b.begin(), b.end());
    for (const auto& block : block_decomposition(h).blocks) {
      std::set<int> in(block.begin(), block.end());
      if (std::includes(in.begin(), in.end(), used.begin(), used.end())) return CaseResult::pass();
    }
    return CaseResult::fail(inputs(g, h));
  });
}

std::vector<int> compose_after(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> out(inner.size());
  for (std::size_t x = 0; x < inner.size(); ++x) out[x] = outer[inner[x]];
  return out;
}

Plan perms(std::uint64_t seed, int count) {
  return seeded(seed, count, [](SplitMix64& rng) {
    const int a = 1 + rng.below(5);
    std::vector<std::vector<int>> seq(200);
    for (auto& p : seq) {
      p.resize(a);
      std::iota(p.begin(), p.end(), 0);
      for (int i = a - 1; i > 0; --i) std::swap(p[i], p[rng.below(i + 1)]);
    }
    std::vector<int> y = perm_stabilize(seq);
    std::ostringstream why;
    why << "|A| = " << a << ", first permutation";
    for (int v : seq[0]) why << ' ' << v;
    if (y.size() < 2) return CaseResult::fail(why.str() + ", fewer than two indices");
    std::vector<int> id(a);
    std::iota(id.begin(), id.end(), 0);
    const std::set<int> in(y.begin(), y.end());
    for (int j : y) {
      // pi_{k-1} o ... o pi_j, one factor at a time.
      std::vector<int> prod = id;
      for (int i = j; i < y.back(); ++i) {
        prod = compose_after(seq[i], prod);
        if (in.count(i + 1) && prod != id) return CaseResult::fail(why.str());
      }
    }
    return CaseResult::pass();
  });
}

// Names of the smaller truncation, with their edges and marks, sit inside the larger one.
bool nested(const TruncatedGraph& small, const TruncatedGraph& big) {
  std::vector<int> at(small.names.size());
  for (std::size_t i = 0; i < small.names.size(); ++i) {
    auto it = big.index.find(small.names[i]);
    if (it == big.index.end()) return false;
    at[i] = it->second;
  }
  for (const Edge& e : small.graph.graph().edges())
    if (!big.graph.graph().adjacent(at[e.u], at[e.v])) return false;
  for (int m : small.graph.marked())
    if (!big.graph.is_marked(at[m])) return false;
  return true;
}

Plan rank_kernel(std::uint64_t seed, int count) {
  const int trees = 6;
  return {count <= 0 ? trees + 50 : count, [seed](int i) {
            if (i < trees) {
              Presentation t = minimal_tree(Ordinal::finite(i));
              const std::vector<int> root = i == 0 ? std::vector<int>{} : std::vector<int>{0};
              if (rank(t) != Ordinal::finite(i) || kernel(t) != root) return CaseResult::fail(inputs(t));
              return CaseResult::pass();
            }
            SplitMix64 rng = SplitMix64(seed).split(static_cast<std::uint64_t>(i));
            Presentation p = random_presentation(rng);
            if (rank(normalize(suspension(p))) != rank(p)) return CaseResult::fail(inputs(p));
            const int d = 1 + rng.below(depth(p)), c = 1 + rng.below(2);
            const Truncation small{d, c}, big{d + rng.below(2), c + rng.below(2)};
            if (!nested(truncate(p, small), truncate(p, big))) return CaseResult::fail(inputs(p));
            return CaseResult::pass();
          }};
}

// Yes carries a checked certificate and No a refutation that survives a fresh recheck.
std::optional<std::string> verdict_problem(const Verdict& v, const Presentation& p, const Presentation& q,
                                           bool want_yes, bool marked = false) {
  if (v.is_unknown()) return std::nullopt;
  if (v.is_yes() != want_yes) return std::string(v.is_yes() ? "unexpected yes" : "unexpected no");
  if (v.is_yes() && !v.checked) return std::string("certificate not checked");
  if (v.is_no()) {
    if (auto bad = recheck_refutation(std::get<No>(v.result).why, p, q, marked)) return *bad;
  }
  return std::nullopt;
}

Plan t_encode(std::uint64_t seed, int count) {
  struct Data {
    GroundOrder q = GroundOrder::from_relation({"K3", "K2"}, [](int a, int b) { return a == b || (a == 1 && b == 0); });
    std::vector<HFSet> sets = enumerate_hf(2, 3, 3);
    std::vector<Presentation> ps;
  };
  auto data = std::make_shared<Data>();
  const std::vector<FiniteGraph> ground{FiniteGraph::complete(3), FiniteGraph::complete(2)};
  for (const HFSet& x : data->sets) data->ps.push_back(encode_T(x, ground));
  const int n = static_cast<int>(data->sets.size());
  return exhaustive(n * n, seed, count, [data, n](int c) {
    const int i = c / n, j = c % n;
    const Presentation &p = data->ps[i], &q = data->ps[j];
    Verdict v = decide_minor(p, q);
    if (v.is_unknown()) return CaseResult::unknown(std::get<Unknown>(v.result).reason);
    if (auto bad = verdict_problem(v, p, q, le_plus(data->sets[i], data->sets[j], data->q))) {
      return CaseResult::fail(emit_hf(data->sets[i], data->q) + " " + emit_hf(data->sets[j], data->q) + ": " + *bad);
    }
    return CaseResult::pass();
  });
}

Plan gc(std::uint64_t seed, int count) {
  auto pools = std::make_shared<std::vector<std::vector<MarkedGraph>>>();
  for (int n = 0; n <= 2; ++n) pools->push_back(marked_up_to(4, n, true));
  return seeded(seed, count, [pools](SplitMix64& rng) {
    const int n = rng.below(3);
    const auto& pool = (*pools)[n];
    auto pick = [&] {
      std::vector<MarkedGraph> reps;
      const int k = 1 + rng.below(4);
      for (int i = 0; i < k; ++i) reps.push_back(pool[rng.below(static_cast<int>(pool.size()))]);
      return reps;
    };
    const auto a = pick(), b = pick();
    bool want = true;
    for (const auto& r : a) {
      bool below = false;
      for (const auto& s : b) below = below || brute_force_marked_minor(r, s);
      want = want && below;
    }
    Presentation p = normalize(build_GC(std::vector<GCRepresentative>(a.begin(), a.end()), n));
    Presentation q = normalize(build_GC(std::vector<GCRepresentative>(b.begin(), b.end()), n));
    Verdict v = decide_minor(p, q);
    if (v.is_unknown()) return CaseResult::unknown(std::get<Unknown>(v.result).reason);
    if (auto bad = verdict_problem(v, p, q, want)) return CaseResult::fail(inputs(p, q) + *bad);
    return CaseResult::pass();
  });
}

Presentation disjoint_cliques() {
  return Presentation::node(FiniteGraph(0), {}, {FamilyTemplate{Generator::Clique, {}}});
}

Plan remarks(std::uint64_t, int) {
  return {2, [](int i) {
            const Presentation g0 = disjoint_cliques();
            if (i == 0) {
              const Presentation g = suspension(suspension(g0)), h = suspension(g0);
              Verdict v = decide_minor(g, h);
              if (!v.is_no()) return CaseResult::fail(inputs(g, h));
              const auto* k = std::get_if<KernelTooSmall>(&std::get<No>(v.result).why);
              if (!k || k->source != 2 || k->target != 1 || !k->equal_rank) return CaseResult::fail(inputs(g, h));
              return CaseResult::pass();
            }
            const Presentation g = suspension(Presentation::node(
                FiniteGraph(0), {}, {ConcreteTemplate{share(suspension(g0)), Multiplicity::omega(), {}}}));
            const Presentation h =
                Presentation::node(FiniteGraph(1), {}, {FamilyTemplate{Generator::Fan, Attachment::to_all({0})}});
            Verdict v = decide_minor(g, h);
            if (!v.is_no()) return CaseResult::fail(inputs(g, h));
            const auto* s = std::get_if<SeparatorMinor>(&std::get<No>(v.result).why);
            if (!s || !std::holds_alternative<PresPtr>(s->f)) return CaseResult::fail(inputs(g, h));
            if (recheck_refutation(std::get<No>(v.result).why, g, h, false)) return CaseResult::fail(inputs(g, h));
            return CaseResult::pass();
          }};
}

Plan self_minors(std::uint64_t seed, int count) {
  return seeded(seed, count, [](SplitMix64& rng) {
    Presentation p = random_presentation(rng);
    CertPtr cert = self_minor(p);
    const Truncation t{3, 4};
    if (verify_pres_certificate(*cert, p, p, t)) return CaseResult::fail(inputs(p));
    if (is_identity_expansion(expand_certificate(*cert, p, p, t))) return CaseResult::fail(inputs(p));
    return CaseResult::pass();
  });
}

constexpr long long kAmalgamCap = 5'000;

// Every target amalgam up to depth n + 2 is a subgraph of the deepest one, so that one decides them all.
Plan u_immersion(std::uint64_t seed, int count) {
  auto all = std::make_shared<std::vector<MarkedGraph>>(marked_up_to(4, 4, false));
  const int n = static_cast<int>(all->size());
  return exhaustive(n * n, seed, count, [all, n](int c) {
    const MarkedGraph& g = (*all)[c / n];
    const MarkedGraph& h = (*all)[c % n];
    // When g is a marked minor of h the implication holds whatever the search says.
    if (brute_force_marked_minor(g, h)) return CaseResult::pass();
    const int depth = h.order() + 2 + 1;
    auto estimate = [](const MarkedGraph& x, int d) {
      return labeled_tree_order(d, 2 + static_cast<int>(x.marked().size())) * (x.order() + 1);
    };
    if (estimate(g, depth) > kAmalgamCap || estimate(h, depth + 2) > kAmalgamCap)
      return CaseResult::unknown("amalgam too large");
    // Node budget only, so the verdict does not depend on machine speed.
    MinorResult r = find_minor(u_map(g, depth), u_map(h, depth + 2), {200'000, std::chrono::minutes(10)});
    if (r.found()) return CaseResult::fail(inputs(g, h));
    if (r.status == SearchStatus::BudgetExhausted) return CaseResult::unknown("search budget");
    return CaseResult::pass();
  });
}

// Same mark count on both sides: with different counts the unmarked comparison sees extra cliques.
Plan unmark_gadget(std::uint64_t seed, int count) {
  auto by_marks = std::make_shared<std::vector<std::pair<MarkedGraph, MarkedGraph>>>();
  std::vector<MarkedGraph> forests;
  for (auto& g : marked_up_to(4, 2, false))
    if (is_forest(g.graph())) forests.push_back(g);
  for (const auto& g : forests)
    for (const auto& h : forests)
      if (g.marked().size() == h.marked().size()) by_marks->emplace_back(g, h);
  return exhaustive(static_cast<int>(by_marks->size()), seed, count, [by_marks](int c) {
    const auto& [g, h] = (*by_marks)[c];
    MinorResult r = find_minor(unmark_clique_gadget(g, 0), unmark_clique_gadget(h, 0));
    if (r.status == SearchStatus::BudgetExhausted) return CaseResult::unknown();
    if (r.found() != brute_force_marked_minor(g, h)) return CaseResult::fail(inputs(g, h));
    return CaseResult::pass();
  });
}

int brute_independent(const std::vector<std::uint64_t>& adj) {
  const int n = static_cast<int>(adj.size());
  int best = 0;
  for (std::uint64_t s = 0; s < (1ull << n); ++s) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = !((s >> i & 1) && (adj[i] & s));
    if (ok) best = std::max(best, __builtin_popcountll(s));
  }
  return best;
}

Plan antichain(std::uint64_t, int) {
  return {2, [](int i) {
            const Relation<FiniteGraph> minor = [](const FiniteGraph& a, const FiniteGraph& b) {
              return find_minor(a, b).found();
            };
            if (i == 1) {
              auto found = max_antichain<FiniteGraph>({FiniteGraph::cycle(3), FiniteGraph::star(3)}, minor);
              return found.size() == 2 ? CaseResult::pass() : CaseResult::fail("C3, K_{1,3}");
            }
            const auto universe = graphs_up_to(4, true);
            const int n = static_cast<int>(universe.size());
            std::vector<std::uint64_t> adj(n, 0);
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b)
                if (a != b && (brute_force_minor(universe[a], universe[b]) || brute_force_minor(universe[b], universe[a])))
                  adj[a] |= 1ull << b;
            auto found = max_antichain<FiniteGraph>(universe, minor);
            bool ok = static_cast<int>(found.size()) == brute_independent(adj);
            for (int a : found)
              for (int b : found) ok = ok && !(adj[a] >> b & 1);
            return ok ? CaseResult::pass() : CaseResult::fail("connected graphs on at most 4 vertices");
          }};
}

struct SuiteEntry {
  SuiteInfo info;
  Planner plan;
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries{
      {{"solver-oracle", "solver against brute force, all pairs up to 5 vertices", 0, false}, solver_oracle},
      {{"twins", "finite minor-twins are isomorphic", 0, false}, twins},
      {{"cones", "suspension and marked suspension reflect minors", 500, false}, cones},
      {{"blocks", "models of 2-connected graphs restrict to one block", 200, false}, blocks},
      {{"perms", "stabilized index sets have identity composites", 1000, false}, perms},
      {{"rank-kernel", "minimal tree ranks, suspension rank, truncation nesting", 0, false}, rank_kernel},
      {{"t-encode", "tree encoding reflects the lifted order", 0, false}, t_encode},
      {{"gc", "class graphs are ordered by inclusion of their classes", 300, false}, gc},
      {{"remarks", "the two cone fixtures", 0, false}, remarks},
      {{"self-minor", "proper self-minors of random presentations", 30, false}, self_minors},
      {{"u-immersion", "amalgam minors imply marked minors", 0, true}, u_immersion},
      {{"unmark-gadget", "clique gadgets turn marked minors into minors", 0, false}, unmark_gadget},
      {{"antichain", "maximum antichains against brute force", 0, false}, antichain},
  };
  return entries;
}

}  // namespace

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

int default_jobs() {
  if (const char* env = std::getenv("MINORLAB_JOBS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int count, int jobs) {
  const auto& entries = registry();
  auto it = std::find_if(entries.begin(), entries.end(), [&](const SuiteEntry& e) { return e.info.name == name; });
  if (it == entries.end()) throw Error(ErrorKind::UnknownSuite, name);
  const auto start = std::chrono::steady_clock::now();
  const int wanted = count > 0 ? count : it->info.default_count;
  Plan plan = it->plan(seed, wanted);

  std::vector<CaseResult> results(plan.cases);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i; (i = next++) < plan.cases;) {
      try {
        results[i] = plan.run(i);
      } catch (const std::exception& e) {
        results[i] = CaseResult::fail(std::string("exception: ") + e.what());
      }
    }
  };
  const int workers = std::max(1, std::min(jobs > 0 ? jobs : default_jobs(), plan.cases));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  SuiteReport r;
  r.suite = name;
  r.seed = seed;
  r.count = plan.cases;
  r.unknown_allowed = it->info.unknown_allowed;
  for (int i = 0; i < plan.cases; ++i) {
    switch (results[i].status) {
      case CaseStatus::Pass: ++r.pass; break;
      case CaseStatus::Unknown: ++r.unknown; break;
      case CaseStatus::Fail:
        ++r.fail;
        if (!r.counterexample) r.counterexample = "case " + std::to_string(i) + "\n" + results[i].detail;
        break;
    }
  }
  r.wall = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return r;
}

Json to_json(const SuiteReport& r, bool with_timing) {
  Json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["count"] = r.count;
  j["pass"] = r.pass;
  j["fail"] = r.fail;
  j["unknown"] = r.unknown;
  j["unknown_allowed"] = r.unknown_allowed;
  j["ok"] = r.ok();
  j["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json();
  if (with_timing) j["wall_ms"] = r.wall.count();
  return j;
}

}  // namespace minorlab
