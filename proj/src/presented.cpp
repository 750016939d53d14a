#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "decision.hpp"
#include "minorlab/errors.hpp"

namespace minorlab {
namespace detail {

Decision::Decision(DecisionBudget budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {}

void Decision::step() {
  ++used_.steps;
  if (used_.steps > budget_.steps) throw OutOfBudget{"step budget exhausted"};
  if ((used_.steps & 15) == 0 && std::chrono::steady_clock::now() - start_ > budget_.time) {
    throw OutOfBudget{"time budget exhausted"};
  }
}

SolverLimits Decision::solver_limits() const {
  SolverLimits l = budget_.solver;
  auto left = budget_.time - std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
  if (left < std::chrono::milliseconds(1)) throw OutOfBudget{"time budget exhausted"};
  l.time_budget = std::min(l.time_budget, left);
  return l;
}

BudgetUsage Decision::usage() const {
  BudgetUsage u = used_;
  u.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
  return u;
}

const Presentation& Decision::keep(Presentation p) {
  kept_.push_back(share(std::move(p)));
  return *kept_.back();
}

std::string pins_key(const Pins& pins) {
  std::ostringstream os;
  for (const auto& list : pins) {
    for (const auto& set : list) {
      os << '{';
      for (int x : set) os << x << ',';
      os << '}';
    }
    os << ';';
  }
  return os.str();
}

Truncation verification_truncation(const Presentation& p) {
  if (p.is_base()) return {0, 1};
  return {std::min(depth(p), 3), 2};
}

long long truncated_order(const Presentation& p, int d, int c, long long cap) {
  if (p.is_base() || d == 0) return p.top_order();
  long long total = p.top_order();
  for (const Template& t : p.as_node().templates) {
    if (auto* ct = std::get_if<ConcreteTemplate>(&t)) {
      const long long copies = ct->mult.is_omega() ? c : ct->mult.count();
      total += copies * truncated_order(*ct->part, d - 1, c, cap);
    } else {
      const Generator g = std::get<FamilyTemplate>(t).gen;
      for (int m = 0; m < c && total <= cap; ++m) total += c * truncated_order(*family_member(g, m), d - 1, c, cap);
    }
    if (total > cap) return total;
  }
  return total;
}

namespace {

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

int member_bound(const Presentation& part) {
  if (!part.is_base()) return 6;
  const auto& g = part.as_base().graph.graph();
  return std::min(12, g.order() + g.size() + 1);
}

// Pins for a part copy's top vertices from a source attachment, under κ.
// Returns false when some port link has nowhere to go.
bool attachment_pins(const Attachment& source, const Attachment& target, const std::vector<int>& kappa,
                     int part_order, int target_order, Pins& pins) {
  pins.assign(part_order, {});
  for (int a : source.all)
    if (!contains(target.all, kappa[a])) return false;
  for (auto [u, a] : source.ports) {
    const int k = kappa[a];
    if (contains(target.all, k)) continue;
    std::vector<int> set;
    for (auto [x, b] : target.ports)
      if (b == k && x < target_order) set.push_back(x);
    if (set.empty()) return false;
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    pins[u].push_back(std::move(set));
  }
  return true;
}

bool satisfied_by_identity(const Pins& pins) {
  for (int v = 0; v < static_cast<int>(pins.size()); ++v)
    for (const auto& set : pins[v])
      if (!std::binary_search(set.begin(), set.end(), v)) return false;
  return true;
}

CertPtr finite_from_truncation(const TruncatedGraph& tg, const MinorEmbedding& emb) {
  FiniteCertificate c;
  for (const auto& set : emb.branch_sets) {
    std::vector<VertexName> names;
    for (int x : set) names.push_back(tg.names[x]);
    c.branch_sets.push_back(std::move(names));
  }
  return make_cert(std::move(c));
}

class Embedder {
 public:
  explicit Embedder(Decision& d) : d_(d) {}

  CertPtr run(const Presentation& p, const Presentation& q, const Pins& pins) {
    if (p == q && satisfied_by_identity(pins)) return identity_certificate(p);
    if (raw_rank(p) > raw_rank(q)) return nullptr;
    if (p.is_base()) {
      if (q.is_base()) return base_into_base(p, q, pins);
      if (auto c = into_part(p, q, pins)) return c;
      return by_truncation(p, q, pins);
    }
    if (q.is_base()) return nullptr;
    if (auto c = direct(p, q, pins)) return c;
    if (raw_rank(p) < raw_rank(q)) return into_part(p, q, pins);
    return nullptr;
  }

 private:
  CertPtr base_into_base(const Presentation& p, const Presentation& q, const Pins& pins) {
    MinorResult r = find_constrained_minor(p.top_graph(), q.top_graph(), pins, d_.solver_limits());
    d_.charge(r);
    if (!r.found()) return nullptr;
    FiniteCertificate c;
    for (const auto& set : r.embedding->branch_sets) {
      std::vector<VertexName> names;
      for (int x : set) names.push_back(VertexName{{}, x});
      c.branch_sets.push_back(std::move(names));
    }
    return make_cert(std::move(c));
  }

  CertPtr by_truncation(const Presentation& p, const Presentation& q, const Pins& pins) {
    const auto& g = p.top_graph();
    const int bound = std::max(1, g.order() + g.size());
    const int dq = depth(q);
    for (int c = 1;; c = std::min(bound, c * 2)) {
      d_.step();
      if (truncated_order(q, dq, c, d_.budget().truncation_vertices) > d_.budget().truncation_vertices) return nullptr;
      TruncatedGraph tg = truncate(q, {dq, c});
      HitSets hits(g.order());
      for (int v = 0; v < g.order(); ++v)
        for (const auto& set : pins[v]) {
          std::vector<int> ids;
          for (int x : set) ids.push_back(tg.index.at(VertexName{{}, x}));
          hits[v].push_back(std::move(ids));
        }
      MinorResult r = find_constrained_minor(g, tg.graph.graph(), hits, d_.solver_limits());
      d_.charge(r);
      if (r.found()) return finite_from_truncation(tg, *r.embedding);
      if (c == bound) return nullptr;
    }
  }

  CertPtr into_part(const Presentation& p, const Presentation& q, const Pins& pins) {
    std::vector<int> pinned;
    for (int v = 0; v < static_cast<int>(pins.size()); ++v)
      if (!pins[v].empty()) pinned.push_back(v);
    if (pinned.size() > 1) return nullptr;
    std::vector<int> stretch_to;
    if (!pinned.empty()) {
      for (int k = 0; k < q.top_order(); ++k) {
        bool ok = std::all_of(pins[pinned[0]].begin(), pins[pinned[0]].end(),
                              [&](const auto& set) { return std::binary_search(set.begin(), set.end(), k); });
        if (ok) stretch_to.push_back(k);
      }
      if (stretch_to.empty()) return nullptr;
    }
    const auto& ts = q.as_node().templates;
    for (int t = 0; t < static_cast<int>(ts.size()); ++t) {
      const Attachment& ta = attachment_of(ts[t]);
      const auto* ct = std::get_if<ConcreteTemplate>(&ts[t]);
      const int members = ct ? 1 : member_bound(p);
      for (int m = 0; m < members; ++m) {
        const Presentation& part = ct ? *ct->part : *family_member(std::get<FamilyTemplate>(ts[t]).gen, m);
        if (raw_rank(part) < raw_rank(p)) continue;
        if (pinned.empty()) {
          if (auto c = embed(d_, p, part, Pins(p.top_order()))) return make_cert(IntoCertificate{t, m, 0, c, std::nullopt});
          continue;
        }
        const int s = pinned[0];
        for (int k : stretch_to) {
          Pins inner(p.top_order());
          if (!contains(ta.all, k)) {
            std::vector<int> set;
            for (auto [x, b] : ta.ports)
              if (b == k && x < part.top_order()) set.push_back(x);
            if (set.empty()) continue;
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
            inner[s].push_back(std::move(set));
          }
          if (auto c = embed(d_, p, part, inner)) {
            return make_cert(IntoCertificate{t, m, 0, c, std::pair{s, k}});
          }
        }
      }
    }
    return nullptr;
  }

  CertPtr direct(const Presentation& p, const Presentation& q, const Pins& pins) {
    const auto& pn = p.as_node();
    const auto& qn = q.as_node();
    const int kp = pn.kernel.order();
    const int kq = qn.kernel.order();
    if (kp > kq) return nullptr;
    const bool equal = raw_rank(p) == raw_rank(q);
    const std::vector<int> ap = kernel(p);
    const std::vector<int> aq = kernel(q);
    std::vector<std::vector<int>> options(kp);
    for (int v = 0; v < kp; ++v) {
      for (int x = 0; x < kq; ++x) {
        bool ok = std::all_of(pins[v].begin(), pins[v].end(),
                              [&](const auto& set) { return std::binary_search(set.begin(), set.end(), x); });
        if (equal && contains(ap, v) && !contains(aq, x)) ok = false;
        if (ok) options[v].push_back(x);
      }
      if (options[v].empty()) return nullptr;
    }
    std::vector<int> kappa(kp, -1);
    std::vector<char> used(kq, 0);
    CertPtr found;
    auto assign = [&](auto&& self, int v) -> bool {
      if (v == kp) {
        d_.step();
        found = match_templates(p, q, kappa);
        return found != nullptr;
      }
      for (int x : options[v]) {
        if (used[x]) continue;
        bool edges_ok = true;
        for (int w : pn.kernel.neighbors(v))
          if (w < v && !qn.kernel.adjacent(kappa[w], x)) edges_ok = false;
        if (!edges_ok) continue;
        kappa[v] = x;
        used[x] = 1;
        if (self(self, v + 1)) return true;
        used[x] = 0;
      }
      kappa[v] = -1;
      return false;
    };
    assign(assign, 0);
    return found;
  }

  struct Option {
    TemplateMatch match;
    int finite_copies = 0;  // copies taken from a finite target
  };

  std::vector<Option> options_for(const Presentation& p, const Presentation& q, int j, const std::vector<int>& kappa) {
    const auto& st = p.as_node().templates[j];
    const auto& qts = q.as_node().templates;
    const int spread = static_cast<int>(p.as_node().templates.size());
    const Attachment& sa = attachment_of(st);
    std::vector<Option> out;
    for (int t = 0; t < static_cast<int>(qts.size()); ++t) {
      d_.step();
      const Template& tt = qts[t];
      const Attachment& ta = attachment_of(tt);
      const auto* sc = std::get_if<ConcreteTemplate>(&st);
      const auto* tc = std::get_if<ConcreteTemplate>(&tt);
      const bool s_inf = !sc || sc->mult.is_omega();
      const bool t_inf = !tc || tc->mult.is_omega();
      if (s_inf && !t_inf) continue;
      const CopyMap spread_map{spread, j};
      if (sc && tc) {
        Pins pins;
        if (!attachment_pins(sa, ta, kappa, sc->part->top_order(), tc->part->top_order(), pins)) continue;
        if (auto c = embed(d_, *sc->part, *tc->part, pins)) {
          Option o{TemplateMatch{t, MatchKind::Part, spread_map, 0, c}, 0};
          if (!t_inf) {
            o.finite_copies = sc->mult.count();
            o.match.copies = CopyMap{1, 0};
          }
          out.push_back(std::move(o));
        }
      } else if (sc) {
        const Generator tg = std::get<FamilyTemplate>(tt).gen;
        for (int m = 0; m < member_bound(*sc->part); ++m) {
          const Presentation& member = *family_member(tg, m);
          Pins pins;
          if (!attachment_pins(sa, ta, kappa, sc->part->top_order(), member.top_order(), pins)) break;
          if (auto c = embed(d_, *sc->part, member, pins)) {
            out.push_back(Option{TemplateMatch{t, MatchKind::IntoMember, spread_map, m, c}, 0});
            break;
          }
        }
      } else if (!tc) {
        const Generator sg = std::get<FamilyTemplate>(st).gen;
        const Generator tg = std::get<FamilyTemplate>(tt).gen;
        if (!dominance(sg, tg)) continue;
        Pins pins;
        if (!attachment_pins(sa, ta, kappa, 1 + max_port(sa), 1 + max_port(sa), pins)) continue;
        bool ports_ok = true;
        for (auto [u, a] : sa.ports) ports_ok = ports_ok && u == 0;
        for (const auto& set : pins.empty() ? std::vector<std::vector<int>>{} : pins[0])
          ports_ok = ports_ok && std::binary_search(set.begin(), set.end(), 0);
        if (!ports_ok) continue;
        out.push_back(Option{TemplateMatch{t, MatchKind::FamilyMembers, spread_map, 0, nullptr}, 0});
      } else {
        const Generator sg = std::get<FamilyTemplate>(st).gen;
        const Presentation& lim = limit_presentation(sg);
        // Only the fan limit keeps the member's port vertex at top level.
        if (!sa.ports.empty() && sg != Generator::Fan) continue;
        bool ports_ok = true;
        for (auto [u, a] : sa.ports) ports_ok = ports_ok && u == 0;
        if (!ports_ok) continue;
        Pins pins;
        if (!attachment_pins(sa, ta, kappa, std::max(lim.top_order(), 1), tc->part->top_order(), pins)) continue;
        pins.resize(lim.top_order());
        if (auto c = embed(d_, lim, *tc->part, pins)) {
          out.push_back(Option{TemplateMatch{t, MatchKind::FamilyLimit, spread_map, 0, c}, 0});
        }
      }
    }
    return out;
  }

  static int max_port(const Attachment& a) {
    int m = 0;
    for (auto [u, k] : a.ports) m = std::max(m, u);
    return m;
  }

  CertPtr match_templates(const Presentation& p, const Presentation& q, const std::vector<int>& kappa) {
    const auto& pts = p.as_node().templates;
    const auto& qts = q.as_node().templates;
    std::vector<std::vector<Option>> options;
    for (int j = 0; j < static_cast<int>(pts.size()); ++j) {
      options.push_back(options_for(p, q, j, kappa));
      if (options.back().empty()) return nullptr;
    }
    std::vector<int> left(qts.size(), 0);
    for (int t = 0; t < static_cast<int>(qts.size()); ++t)
      if (auto* c = std::get_if<ConcreteTemplate>(&qts[t]); c && !c->mult.is_omega()) left[t] = c->mult.count();
    std::vector<TemplateMatch> chosen(pts.size());
    auto pick = [&](auto&& self, int j) -> bool {
      if (j == static_cast<int>(pts.size())) return true;
      for (const Option& o : options[j]) {
        TemplateMatch m = o.match;
        if (o.finite_copies > 0) {
          const int t = m.target;
          if (left[t] < o.finite_copies) continue;
          auto* tc = std::get_if<ConcreteTemplate>(&qts[t]);
          m.copies.offset = tc->mult.count() - left[t];
          left[t] -= o.finite_copies;
          chosen[j] = m;
          if (self(self, j + 1)) return true;
          left[t] += o.finite_copies;
          continue;
        }
        chosen[j] = m;
        if (self(self, j + 1)) return true;
      }
      return false;
    };
    if (!pick(pick, 0)) return nullptr;
    return make_cert(DirectCertificate{kappa, std::move(chosen)});
  }

  Decision& d_;
};

}  // namespace

CertPtr embed(Decision& d, const Presentation& p, const Presentation& q, const Pins& pins) {
  auto key = std::tuple{&p, &q, pins_key(pins)};
  if (auto it = d.embed_memo.find(key); it != d.embed_memo.end()) return it->second;
  d.step();
  Embedder e(d);
  CertPtr c = e.run(p, q, pins);
  d.embed_memo.emplace(std::move(key), c);
  return c;
}

CertPtr embed_top(Decision& d, const Presentation& p, const Presentation& q, bool marked) {
  Pins pins(p.top_order());
  if (marked) {
    std::vector<int> mq = q.top_marks();
    std::sort(mq.begin(), mq.end());
    for (int v : p.top_marks()) pins[v].push_back(mq);
  }
  return embed(d, p, q, pins);
}

VerdictPtr decide(Decision& d, const Presentation& p, const Presentation& q, bool marked) {
  auto key = std::tuple{emit_presentation(p), emit_presentation(q), marked};
  if (auto it = d.verdict_memo.find(key); it != d.verdict_memo.end()) return it->second;
  d.step();
  Verdict v;
  if (raw_rank(p) > raw_rank(q)) {
    v.result = No{RankExceeds{raw_rank(p), raw_rank(q)}};
  } else if (CertPtr c = embed_top(d, p, q, marked)) {
    v.result = Yes{c};
  } else if (auto r = refute(d, p, q, marked)) {
    v.result = No{std::move(*r)};
  } else {
    v.result = Unknown{"neither a certificate nor a refutation was found"};
  }
  auto out = std::make_shared<const Verdict>(std::move(v));
  d.verdict_memo.emplace(std::move(key), out);
  return out;
}

}  // namespace detail

namespace {

Verdict run_decision(const Presentation& p, const Presentation& q, const DecisionBudget& budget, bool marked) {
  if (!is_normal_form(p) || !is_normal_form(q)) throw Error(ErrorKind::NotNormalForm, "decision needs normal forms");
  detail::Decision d(budget);
  Verdict out;
  try {
    out = *detail::decide(d, p, q, marked);
  } catch (const detail::OutOfBudget& e) {
    out.result = Unknown{e.what};
  }
  if (auto* yes = std::get_if<Yes>(&out.result)) {
    const Truncation t = detail::verification_truncation(p);
    if (auto bad = verify_pres_certificate(*yes->cert, p, q, t, marked)) {
      out.result = Unknown{"certificate rejected (" + bad->invariant + ": " + bad->detail + ")"};
    } else {
      out.checked = t;
    }
  }
  out.used = d.usage();
  return out;
}

}  // namespace

Verdict decide_minor(const Presentation& p, const Presentation& q, const DecisionBudget& budget) {
  return run_decision(p, q, budget, false);
}

Verdict decide_marked_minor(const Presentation& p, const Presentation& q, const DecisionBudget& budget) {
  return run_decision(p, q, budget, true);
}

}  // namespace minorlab
