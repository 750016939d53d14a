#include <algorithm>
#include <numeric>
#include <set>

#include "decision.hpp"
#include "minorlab/errors.hpp"

namespace minorlab {

std::string_view to_string(InclusionKind k) {
  switch (k) {
    case InclusionKind::FiniteEmbedding: return "finite-embedding";
    case InclusionKind::PartCone: return "part-cone";
    case InclusionKind::PartCopies: return "part-copies";
    case InclusionKind::Certificate: return "certificate";
  }
  return "?";
}

std::string_view to_string(ExclusionKind k) {
  switch (k) {
    case ExclusionKind::FiniteExhaustive: return "finite-exhaustive";
    case ExclusionKind::BlockExhaustive: return "block-exhaustive";
    case ExclusionKind::Parts: return "parts";
    case ExclusionKind::ApexParts: return "apex-parts";
    case ExclusionKind::CliqueBound: return "clique-bound";
    case ExclusionKind::RankBound: return "rank-bound";
  }
  return "?";
}

namespace detail {
namespace {

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Members of every family of this generator have rank below this.
Ordinal member_rank_sup(Generator g) {
  switch (g) {
    case Generator::Fan: return Ordinal::finite(2);
    case Generator::MinTree: return Ordinal::omega();
    default: return Ordinal::finite(1);
  }
}

bool rank_exceeds_family(const Presentation& part, Generator g) { return raw_rank(part) >= member_rank_sup(g); }

bool connected_presentation(const Presentation& p) {
  if (p.is_base()) return p.top_order() > 0 && is_connected(p.top_graph());
  for (const Template& t : p.as_node().templates) {
    if (attachment_of(t).empty()) return false;
    if (auto* c = std::get_if<ConcreteTemplate>(&t); c && !connected_presentation(*c->part)) return false;
  }
  // Each copy hangs off the kernel, so one copy of everything decides it.
  if (truncated_order(p, std::min(depth(p), 3), 1, 20000) > 20000) return false;
  return is_connected(denote_truncation(p, {std::min(depth(p), 3), 1}).graph());
}

// Largest clique minor of any component, nullopt when unbounded.
std::optional<int> clique_bound(const Presentation& p) {
  if (p.is_base()) return p.top_order();
  int best = 0;
  for (const Template& t : p.as_node().templates) {
    if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
      auto b = clique_bound(*c->part);
      if (!b) return std::nullopt;
      best = std::max(best, *b);
    } else {
      switch (std::get<FamilyTemplate>(t).gen) {
        case Generator::Clique:
        case Generator::Fan: return std::nullopt;
        case Generator::Path:
        case Generator::MinTree: best = std::max(best, 2); break;
        case Generator::Cycle: best = std::max(best, 3); break;
      }
    }
  }
  return p.top_order() + best;
}

// The part with the single kernel vertex added, joined as the attachment says.
const Presentation& with_anchor(Decision& d, const Presentation& part, const Attachment& a) {
  if (a.empty() || (a.all.empty() && a.ports.size() == 1)) return part;
  const int r = part.top_order();
  std::set<Edge> extra;
  for (auto [x, k] : a.ports) extra.insert(Edge(x, r));
  if (!a.all.empty())
    for (int v = 0; v < r; ++v) extra.insert(Edge(v, r));
  std::vector<Edge> es = part.top_graph().edges();
  es.insert(es.end(), extra.begin(), extra.end());
  FiniteGraph g(r + 1, std::move(es));
  if (part.is_base()) return d.keep(Presentation::base(MarkedGraph(std::move(g))));
  std::vector<Template> ts = part.as_node().templates;
  if (!a.all.empty())
    for (Template& t : ts) std::visit([&](auto& x) { x.attach.all.push_back(r); }, t);
  return d.keep(Presentation::node(std::move(g), {}, std::move(ts)));
}

std::optional<bool> solver_excludes(Decision& d, const FiniteGraph& f, const FiniteGraph& h) {
  MinorResult r = find_minor(f, h, d.solver_limits());
  d.charge(r);
  if (r.found()) return false;
  if (r.refuted()) return true;
  return std::nullopt;
}

}  // namespace

std::optional<bool> excludes_block(Decision& d, const FiniteGraph& f, const Presentation& q) {
  auto key = std::pair{canonical_key(f), emit_presentation(q)};
  if (auto it = d.block_memo.find(key); it != d.block_memo.end()) return it->second;
  d.step();
  std::optional<bool> out;
  if (q.is_base()) {
    out = solver_excludes(d, f, q.top_graph());
  } else if (q.top_order() <= 1) {
    // A single kernel vertex is a cut vertex, so a block lives in one part plus it.
    out = true;
    for (const Template& t : q.as_node().templates) {
      const Attachment& a = attachment_of(t);
      const Presentation* part;
      if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
        part = c->part.get();
      } else {
        part = family_member(std::get<FamilyTemplate>(t).gen, f.order() + f.size() + 1).get();
      }
      auto sub = excludes_block(d, f, with_anchor(d, *part, a));
      if (!sub || !*sub) {
        out = sub;
        break;
      }
    }
  } else {
    const int c = std::max(1, f.order() + f.size());
    const int dq = depth(q);
    if (truncated_order(q, dq, c, d.budget().truncation_vertices) <= d.budget().truncation_vertices) {
      out = solver_excludes(d, f, denote_truncation(q, {dq, c}).graph());
    }
  }
  d.block_memo.emplace(std::move(key), out);
  return out;
}

namespace {

struct Rules {
  Decision& d;
  const Presentation& p;
  const Presentation& q;
  bool marked;
  int size_bound;
  std::optional<Ordinal> rank_bound;

  bool rank_ok(Ordinal r) const { return !rank_bound || r <= *rank_bound; }

  std::optional<SeparatorMinor> finite_source() {
    if (!p.is_base()) return std::nullopt;
    const auto& g = p.as_base().graph;
    const int c = std::max(1, g.graph().order() + g.graph().size());
    const Truncation at{depth(q), c};
    if (truncated_order(q, at.depth, at.copies, d.budget().truncation_vertices) > d.budget().truncation_vertices) {
      return std::nullopt;
    }
    MarkedGraph host = denote_truncation(q, at);
    MinorResult r = marked ? find_marked_minor(g, host, d.solver_limits()) : find_minor(g.graph(), host.graph(), d.solver_limits());
    d.charge(r);
    if (!r.refuted()) return std::nullopt;
    SeparatorMinor s{marked ? g : g.unmarked(), marked, {}, {}};
    s.inclusion.kind = InclusionKind::FiniteEmbedding;
    s.inclusion.at = {0, 1};
    MinorEmbedding id;
    for (int v = 0; v < g.order(); ++v) id.branch_sets.push_back({v});
    complete_branch_edges(g.graph(), g.graph(), id);
    s.inclusion.embedding = id;
    s.exclusion.kind = ExclusionKind::FiniteExhaustive;
    s.exclusion.at = at;
    return s;
  }

  std::optional<SeparatorMinor> blocks() {
    const Truncation at{p.is_base() ? 0 : std::min(depth(p), 3), 2};
    if (truncated_order(p, at.depth, at.copies, d.budget().truncation_vertices) > d.budget().truncation_vertices) {
      return std::nullopt;
    }
    TruncatedGraph tg = truncate(p, at);
    const FiniteGraph& g = tg.graph.graph();
    std::vector<std::vector<int>> candidates;
    std::set<std::string> seen;
    for (const auto& b : block_decomposition(g).blocks) {
      if (b.size() < 3 || static_cast<int>(b.size()) > size_bound) continue;
      if (seen.insert(canonical_key(g.induced(b))).second) candidates.push_back(b);
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (const auto& b : candidates) {
      FiniteGraph f = g.induced(b);
      auto ex = excludes_block(d, f, q);
      if (!ex || !*ex) continue;
      SeparatorMinor s{MarkedGraph(f), false, {}, {}};
      s.inclusion.kind = InclusionKind::FiniteEmbedding;
      s.inclusion.at = at;
      MinorEmbedding emb;
      for (int x : b) emb.branch_sets.push_back({x});
      complete_branch_edges(f, g, emb);
      s.inclusion.embedding = emb;
      s.exclusion.kind = ExclusionKind::BlockExhaustive;
      s.exclusion.at = at;
      return s;
    }
    return std::nullopt;
  }

  std::optional<SeparatorMinor> parts() {
    if (p.is_base() || q.is_base()) return std::nullopt;
    const int n = q.top_order() + 1;
    std::set<const Presentation*> tried;
    const auto& pts = p.as_node().templates;
    for (int j = 0; j < static_cast<int>(pts.size()); ++j) {
      const auto* c = std::get_if<ConcreteTemplate>(&pts[j]);
      if (!c || (!c->mult.is_omega() && c->mult.count() < n)) continue;
      const Presentation& part = *c->part;
      if (!tried.insert(&part).second || !rank_ok(raw_rank(part)) || !connected_presentation(part)) continue;
      Exclusion ex;
      ex.kind = ExclusionKind::Parts;
      bool all_no = true;
      for (const Template& t : q.as_node().templates) {
        if (auto* tc = std::get_if<ConcreteTemplate>(&t)) {
          VerdictPtr v = decide(d, part, *tc->part, false);
          if (!v->is_no()) {
            all_no = false;
            break;
          }
          ex.parts.push_back(v);
        } else {
          if (!rank_exceeds_family(part, std::get<FamilyTemplate>(t).gen)) {
            all_no = false;
            break;
          }
          ex.parts.push_back(nullptr);
        }
      }
      if (!all_no) continue;
      SeparatorMinor s{c->part, false, {}, std::move(ex)};
      s.inclusion.kind = InclusionKind::PartCopies;
      s.inclusion.tmpl = j;
      s.inclusion.copies = n;
      return s;
    }
    return std::nullopt;
  }

  std::optional<SeparatorMinor> apex_parts() {
    if (p.is_base() || q.is_base()) return std::nullopt;
    int largest = 0;
    for (const Template& t : q.as_node().templates) {
      auto* c = std::get_if<ConcreteTemplate>(&t);
      if (!c || !c->part->is_base()) return std::nullopt;
      largest = std::max(largest, c->part->top_order());
    }
    const auto& pts = p.as_node().templates;
    for (int j = 0; j < static_cast<int>(pts.size()); ++j) {
      auto* c = std::get_if<ConcreteTemplate>(&pts[j]);
      if (!c || !c->mult.is_omega() || !c->part->is_base() || !c->attach.all.empty()) continue;
      if (!connected_presentation(*c->part)) continue;
      auto cases = apex_parts_cases(p, q, j, d);
      if (!cases) continue;
      const int n = q.top_order() + largest + 1;
      const Truncation at{1, n};
      TruncatedGraph tg = truncate(p, at);
      std::vector<int> anchors;
      for (auto [u, a] : c->attach.ports) anchors.push_back(a);
      std::sort(anchors.begin(), anchors.end());
      std::vector<int> keep;
      for (int a : anchors) keep.push_back(tg.index.at(VertexName{{}, a}));
      for (int i = 0; i < n; ++i)
        for (int x = 0; x < c->part->top_order(); ++x) keep.push_back(tg.index.at(VertexName{{Step{j, 0, i}}, x}));
      FiniteGraph f = tg.graph.graph().induced(keep);
      SeparatorMinor s{MarkedGraph(f), false, {}, {}};
      s.inclusion.kind = InclusionKind::FiniteEmbedding;
      s.inclusion.tmpl = j;
      s.inclusion.at = at;
      MinorEmbedding emb;
      for (int x : keep) emb.branch_sets.push_back({x});
      complete_branch_edges(f, tg.graph.graph(), emb);
      s.inclusion.embedding = emb;
      s.exclusion.kind = ExclusionKind::ApexParts;
      s.exclusion.cases = *cases;
      return s;
    }
    return std::nullopt;
  }

 public:
  // Number of (kernel map, target template) cases refuted, or nullopt when one survives.
  static std::optional<long long> apex_parts_cases(const Presentation& p, const Presentation& q, int j, Decision& d) {
    const auto& c = std::get<ConcreteTemplate>(p.as_node().templates[j]);
    const FiniteGraph& h = c.part->top_graph();
    std::vector<int> anchors;
    for (auto [u, a] : c.attach.ports) anchors.push_back(a);
    std::sort(anchors.begin(), anchors.end());
    if (std::adjacent_find(anchors.begin(), anchors.end()) != anchors.end()) return std::nullopt;
    const int kq = q.top_order();
    const int u = static_cast<int>(anchors.size());
    long long combos = 1;
    for (int i = 0; i < kq; ++i) {
      combos *= u + 1;
      if (combos > 100000) return std::nullopt;
    }
    long long cases = 0;
    std::vector<int> image(kq);
    for (long long code = 0; code < combos; ++code) {
      long long x = code;
      std::vector<char> hit(u, 0);
      for (int k = 0; k < kq; ++k) {
        image[k] = static_cast<int>(x % (u + 1)) - 1;
        x /= u + 1;
        if (image[k] >= 0) hit[image[k]] = 1;
      }
      if (std::find(hit.begin(), hit.end(), 0) != hit.end()) continue;
      for (const Template& t : q.as_node().templates) {
        d.step();
        const auto& tc = std::get<ConcreteTemplate>(t);
        HitSets hits(h.order());
        for (auto [v, a] : c.attach.ports) {
          const int ai = static_cast<int>(std::lower_bound(anchors.begin(), anchors.end(), a) - anchors.begin());
          bool free = false;
          std::vector<int> set;
          for (int k = 0; k < kq; ++k) {
            if (image[k] != ai) continue;
            if (contains(tc.attach.all, k)) free = true;
            for (auto [y, b] : tc.attach.ports)
              if (b == k) set.push_back(y);
          }
          if (free) continue;
          std::sort(set.begin(), set.end());
          set.erase(std::unique(set.begin(), set.end()), set.end());
          hits[v].push_back(std::move(set));
        }
        MinorResult r = find_constrained_minor(h, tc.part->top_graph(), hits, d.solver_limits());
        d.charge(r);
        if (!r.refuted()) return std::nullopt;
        ++cases;
      }
    }
    return cases;
  }

  std::optional<SeparatorMinor> cones() {
    if (p.is_base() || q.is_base()) return std::nullopt;
    const Presentation& ph = marked ? p : d.keep(with_kernel_marks(p, kernel(p)));
    const Presentation& qh = marked ? q : d.keep(with_kernel_marks(q, kernel(q)));
    const int kq = qh.top_order();
    std::vector<int> all_kernel(kq);
    std::iota(all_kernel.begin(), all_kernel.end(), 0);
    std::vector<int> mq = qh.top_marks();
    std::sort(mq.begin(), mq.end());
    if (mq != all_kernel) return std::nullopt;
    for (const Template& t : qh.as_node().templates)
      if (auto* c = std::get_if<ConcreteTemplate>(&t); c && !clique_bound(*c->part)) return std::nullopt;
    const auto& pts = ph.as_node().templates;
    for (int j = 0; j < static_cast<int>(pts.size()); ++j) {
      auto* c = std::get_if<ConcreteTemplate>(&pts[j]);
      if (!c || c->part->is_base()) continue;
      int anchor = -1;
      for (int a : c->attach.all)
        if (contains(ph.top_marks(), a)) anchor = a;
      if (anchor < 0) continue;
      const Presentation& f = d.keep(marked_suspension(*c->part));
      if (static_cast<int>(f.top_marks().size()) != kq || !rank_ok(raw_rank(f))) continue;
      int apex = cone_apex(f);
      if (apex < 0) continue;
      SeparatorMinor s{share(f), true, {}, {}};
      s.inclusion.kind = InclusionKind::PartCone;
      s.inclusion.tmpl = j;
      s.inclusion.anchor = anchor;
      s.exclusion.kind = ExclusionKind::ApexParts;
      s.exclusion.apex = apex;
      return s;
    }
    return std::nullopt;
  }

  // An unmarked top vertex joined to cliques of every size.
  static int cone_apex(const Presentation& f) {
    if (f.is_base()) return -1;
    for (int a = 0; a < f.top_order(); ++a) {
      if (contains(f.top_marks(), a)) continue;
      for (const Template& t : f.as_node().templates) {
        auto* ft = std::get_if<FamilyTemplate>(&t);
        if (ft && (ft->gen == Generator::Clique || ft->gen == Generator::Fan) && contains(ft->attach.all, a)) return a;
      }
    }
    return -1;
  }

  std::optional<Refutation> all() {
    const int kp = static_cast<int>(kernel(p).size());
    const int kq = static_cast<int>(kernel(q).size());
    const bool equal = raw_rank(p) == raw_rank(q);
    if (marked) {
      const int mp = static_cast<int>(p.top_marks().size());
      const int mq = static_cast<int>(q.top_marks().size());
      if (mp > mq) return KernelTooSmall{mp, mq, equal};
    } else if (equal && !p.is_base() && kp > kq) {
      return KernelTooSmall{kp, kq, true};
    }
    if (auto s = separators()) return *s;
    return std::nullopt;
  }

  std::optional<SeparatorMinor> separators() {
    if (auto s = finite_source()) return s;
    if (auto s = blocks()) return s;
    if (auto s = parts()) return s;
    if (auto s = apex_parts()) return s;
    if (marked || raw_rank(p) == raw_rank(q))
      if (auto s = cones()) return s;
    return std::nullopt;
  }
};

}  // namespace

std::optional<Refutation> refute(Decision& d, const Presentation& p, const Presentation& q, bool marked) {
  if (raw_rank(p) > raw_rank(q)) return RankExceeds{raw_rank(p), raw_rank(q)};
  Rules rules{d, p, q, marked, d.budget().separator_order, std::nullopt};
  return rules.all();
}

namespace {

std::optional<std::string> recheck(const Refutation& r, const Presentation& p, const Presentation& q, bool marked,
                                   Decision& d);

std::optional<std::string> recheck_separator(const SeparatorMinor& s, const Presentation& p, const Presentation& q,
                                             bool marked, Decision& d) {
  const Inclusion& in = s.inclusion;
  const Exclusion& ex = s.exclusion;
  const auto* finite = std::get_if<MarkedGraph>(&s.f);
  const PresPtr pres = finite ? nullptr : std::get<PresPtr>(s.f);
  // Inclusion.
  switch (in.kind) {
    case InclusionKind::FiniteEmbedding: {
      if (!finite || !in.embedding) return "finite inclusion needs a finite separator and an embedding";
      MarkedGraph host = denote_truncation(p, in.at);
      MarkedGraph source = s.marked ? *finite : finite->unmarked();
      if (auto v = verify_embedding(source, s.marked ? host : host.unmarked(), *in.embedding, s.marked)) {
        return "separator embedding rejected: " + v->invariant;
      }
      break;
    }
    case InclusionKind::PartCopies: {
      if (!pres || p.is_base()) return "part copies need a presented part";
      const auto& ts = p.as_node().templates;
      if (in.tmpl < 0 || in.tmpl >= static_cast<int>(ts.size())) return "template out of range";
      auto* c = std::get_if<ConcreteTemplate>(&ts[in.tmpl]);
      if (!c || !(*c->part == *pres)) return "separator is not that part";
      if (!c->mult.is_omega() && c->mult.count() < in.copies) return "not enough copies of the part";
      if (in.copies != q.top_order() + 1) return "copy count must exceed the target kernel";
      if (!connected_presentation(*pres)) return "part is not connected";
      break;
    }
    case InclusionKind::PartCone: {
      if (!pres || p.is_base()) return "part cone needs a presented part";
      const Presentation ph = marked ? p : with_kernel_marks(p, kernel(p));
      const auto& ts = ph.as_node().templates;
      if (in.tmpl < 0 || in.tmpl >= static_cast<int>(ts.size())) return "template out of range";
      auto* c = std::get_if<ConcreteTemplate>(&ts[in.tmpl]);
      if (!c || !contains(c->attach.all, in.anchor) || !contains(ph.top_marks(), in.anchor)) return "anchor is not a marked apex";
      if (!(marked_suspension(*c->part) == *pres)) return "separator is not the marked cone over the part";
      break;
    }
    case InclusionKind::Certificate: {
      if (!pres || !in.cert) return "certificate inclusion needs a certificate";
      if (auto v = verify_pres_certificate(*in.cert, *pres, p, verification_truncation(*pres), s.marked)) {
        return "inclusion certificate rejected: " + v->invariant;
      }
      break;
    }
  }
  // Exclusion.
  switch (ex.kind) {
    case ExclusionKind::FiniteExhaustive: {
      if (!finite) return "finite exclusion needs a finite separator";
      MarkedGraph host = denote_truncation(q, ex.at);
      MinorResult r = s.marked ? find_marked_minor(*finite, host, d.solver_limits())
                               : find_minor(finite->graph(), host.graph(), d.solver_limits());
      if (!r.refuted()) return "separator found in the target truncation";
      break;
    }
    case ExclusionKind::BlockExhaustive: {
      if (!finite || !is_two_connected(finite->graph())) return "block exclusion needs a 2-connected graph";
      auto e = excludes_block(d, finite->graph(), q);
      if (!e || !*e) return "block not excluded from the target";
      break;
    }
    case ExclusionKind::Parts: {
      if (!pres || q.is_base()) return "parts exclusion needs presentations";
      const auto& ts = q.as_node().templates;
      if (ex.parts.size() != ts.size()) return "one verdict per target template";
      for (std::size_t i = 0; i < ts.size(); ++i) {
        if (auto* c = std::get_if<ConcreteTemplate>(&ts[i])) {
          if (!ex.parts[i] || !ex.parts[i]->is_no()) return "missing part refutation";
          if (auto bad = recheck(std::get<No>(ex.parts[i]->result).why, *pres, *c->part, false, d)) return bad;
        } else if (!rank_exceeds_family(*pres, std::get<FamilyTemplate>(ts[i]).gen)) {
          return "part rank does not exceed the family";
        }
      }
      break;
    }
    case ExclusionKind::ApexParts: {
      if (finite) {
        if (in.tmpl < 0 || p.is_base() || q.is_base()) return "apex parts needs templates";
        for (const Template& t : q.as_node().templates) {
          auto* c = std::get_if<ConcreteTemplate>(&t);
          if (!c || !c->part->is_base()) return "apex parts needs finite target parts";
        }
        if (!Rules::apex_parts_cases(p, q, in.tmpl, d)) return "some target part takes the pinned representative";
      } else {
        if (!marked && raw_rank(p) != raw_rank(q)) return "unmarked cone separators need equal ranks";
        const Presentation qh = marked ? q : with_kernel_marks(q, kernel(q));
        if (qh.is_base()) return "apex parts needs a presented target";
        if (static_cast<int>(pres->top_marks().size()) != qh.top_order()) return "marks must fill the target kernel";
        if (static_cast<int>(qh.top_marks().size()) != qh.top_order()) return "target kernel must be marked";
        if (Rules::cone_apex(*pres) != ex.apex || ex.apex < 0) return "apex is not joined to cliques";
        for (const Template& t : qh.as_node().templates)
          if (auto* c = std::get_if<ConcreteTemplate>(&t); c && !clique_bound(*c->part)) return "target part has unbounded cliques";
      }
      break;
    }
    case ExclusionKind::CliqueBound:
    case ExclusionKind::RankBound: return "standalone exclusion kinds are not used";
  }
  return std::nullopt;
}

std::optional<std::string> recheck(const Refutation& r, const Presentation& p, const Presentation& q, bool marked,
                                   Decision& d) {
  if (auto* re = std::get_if<RankExceeds>(&r)) {
    if (re->source != raw_rank(p) || re->target != raw_rank(q)) return "ranks do not match";
    if (!(re->source > re->target)) return "source rank does not exceed target rank";
    return std::nullopt;
  }
  if (auto* k = std::get_if<KernelTooSmall>(&r)) {
    const bool equal = raw_rank(p) == raw_rank(q);
    const int a = marked ? static_cast<int>(p.top_marks().size()) : static_cast<int>(kernel(p).size());
    const int b = marked ? static_cast<int>(q.top_marks().size()) : static_cast<int>(kernel(q).size());
    if (k->source != a || k->target != b || k->equal_rank != equal) return "kernel sizes do not match";
    if (!(a > b)) return "source kernel is not larger";
    if (!marked && !equal) return "kernel comparison needs equal ranks";
    return std::nullopt;
  }
  return recheck_separator(std::get<SeparatorMinor>(r), p, q, marked, d);
}

}  // namespace
}  // namespace detail

std::optional<std::string> recheck_refutation(const Refutation& r, const Presentation& p, const Presentation& q,
                                              bool marked, const SolverLimits& limits) {
  DecisionBudget b;
  b.solver = limits;
  b.steps = 10'000'000;
  b.time = std::max(b.time, limits.time_budget * 10);
  detail::Decision d(b);
  try {
    return detail::recheck(r, p, q, marked, d);
  } catch (const detail::OutOfBudget& e) {
    return "recheck ran out of budget: " + e.what;
  }
}

std::optional<SeparatorMinor> refute_by_separator(const Presentation& p, const Presentation& q, int size_bound,
                                                  Ordinal rank_bound, const DecisionBudget& budget) {
  if (!is_normal_form(p) || !is_normal_form(q)) throw Error(ErrorKind::NotNormalForm, "separator search needs normal forms");
  if (size_bound > kMaxEnumerationOrder + 2) throw Error(ErrorKind::BoundExceeded, "separator size bound too large");
  detail::Decision d(budget);
  detail::Rules rules{d, p, q, false, size_bound, rank_bound};
  try {
    if (auto s = rules.separators()) return s;
  } catch (const detail::OutOfBudget&) {
  }
  return std::nullopt;
}

}  // namespace minorlab
