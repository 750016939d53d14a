#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "minorlab/errors.hpp"
#include "minorlab/presented.hpp"

namespace minorlab {

CertPtr make_cert(FiniteCertificate c) { return std::make_shared<const PresCertificate>(PresCertificate{std::move(c)}); }
CertPtr make_cert(DirectCertificate c) { return std::make_shared<const PresCertificate>(PresCertificate{std::move(c)}); }
CertPtr make_cert(IntoCertificate c) { return std::make_shared<const PresCertificate>(PresCertificate{std::move(c)}); }

const std::vector<DominanceEntry>& dominance_table() {
  static const std::vector<DominanceEntry> table = {
      {Generator::Clique, Generator::Clique, true, "K(n+1) -> K(n+1)"},
      {Generator::Path, Generator::Clique, true, "P(n+1) -> K(n+1)"},
      {Generator::Cycle, Generator::Clique, true, "C(n+3) -> K(n+3)"},
      {Generator::Path, Generator::Path, true, "P(n+1) -> P(n+1)"},
      {Generator::Path, Generator::Cycle, false, "P(n+1) -> C(max(n,2)+1)"},
      {Generator::Cycle, Generator::Cycle, true, "C(n+3) -> C(n+3)"},
      {Generator::MinTree, Generator::MinTree, true, "T(n) -> T(n)"},
      {Generator::Fan, Generator::Fan, true, "fan n -> fan n"},
      {Generator::Clique, Generator::Fan, false, "K(n+1) -> apex + K(max(n,1))"},
      {Generator::Path, Generator::Fan, false, "P(n+1) -> apex + K(max(n,1))"},
      {Generator::Cycle, Generator::Fan, true, "C(n+3) -> apex + K(n+2)"},
  };
  return table;
}

std::optional<DominanceEntry> dominance(Generator source, Generator target) {
  for (const auto& e : dominance_table())
    if (e.source == source && e.target == target) return e;
  return std::nullopt;
}

namespace {

CertPtr finite_identity(int order, const std::vector<Step>& prefix = {}) {
  FiniteCertificate c;
  for (int v = 0; v < order; ++v) c.branch_sets.push_back({VertexName{prefix, v}});
  return make_cert(std::move(c));
}

// Vertex 0 on the fan apex, the rest on the first clique copy.
CertPtr onto_fan(int order) {
  FiniteCertificate c;
  c.branch_sets.push_back({VertexName{{}, 0}});
  for (int v = 1; v < order; ++v) c.branch_sets.push_back({VertexName{{Step{0, 0, 0}}, v - 1}});
  return make_cert(std::move(c));
}

}  // namespace

std::pair<int, CertPtr> member_certificate(Generator source, int n, Generator target) {
  if (source == target) return {n, identity_certificate(*family_member(source, n))};
  const int order = family_member(source, n)->top_order();
  using G = Generator;
  if (target == G::Clique && (source == G::Path || source == G::Cycle)) {
    return {order - 1, finite_identity(order)};
  }
  if (source == G::Path && target == G::Cycle) return {std::max(0, n - 2), finite_identity(order)};
  if (target == G::Fan && (source == G::Clique || source == G::Path || source == G::Cycle)) {
    return {std::max(0, order - 2), onto_fan(order)};
  }
  throw Error(ErrorKind::InvalidArgument, "no dominance between these families");
}

const Presentation& limit_presentation(Generator g) {
  static std::mutex mu;
  static std::map<Generator, Presentation> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(g);
  if (it == cache.end()) {
    Presentation l = g == Generator::Fan
                         ? Presentation::node(FiniteGraph(1), {}, {FamilyTemplate{Generator::Clique, Attachment::to_all({0})}})
                         : Presentation::node(FiniteGraph(0), {}, {FamilyTemplate{g, {}}});
    it = cache.emplace(g, std::move(l)).first;
  }
  return it->second;
}

CertPtr limit_certificate(Generator g, int n) {
  if (g == Generator::Fan) {
    DirectCertificate d;
    d.kernel_map = {0};
    d.matches.push_back(TemplateMatch{0, MatchKind::IntoMember, {}, n, finite_identity(n + 1)});
    return make_cert(std::move(d));
  }
  return make_cert(IntoCertificate{0, n, 0, identity_certificate(*family_member(g, n)), std::nullopt});
}

namespace {

CertPtr identity_rec(const Presentation& p, std::map<const Presentation*, CertPtr>& memo) {
  if (auto it = memo.find(&p); it != memo.end()) return it->second;
  CertPtr out;
  if (p.is_base()) {
    out = finite_identity(p.top_order());
  } else {
    DirectCertificate d;
    for (int v = 0; v < p.top_order(); ++v) d.kernel_map.push_back(v);
    const auto& ts = p.as_node().templates;
    for (int j = 0; j < static_cast<int>(ts.size()); ++j) {
      if (auto* c = std::get_if<ConcreteTemplate>(&ts[j])) {
        d.matches.push_back(TemplateMatch{j, MatchKind::Part, {}, 0, identity_rec(*c->part, memo)});
      } else {
        d.matches.push_back(TemplateMatch{j, MatchKind::FamilyMembers, {}, 0, nullptr});
      }
    }
    out = make_cert(std::move(d));
  }
  memo.emplace(&p, out);
  return out;
}

}  // namespace

CertPtr identity_certificate(const Presentation& p) {
  std::map<const Presentation*, CertPtr> memo;
  return identity_rec(p, memo);
}

namespace {

struct Invalid {
  CertViolation v;
};

[[noreturn]] void invalid(std::string what, std::string detail) { throw Invalid{{std::move(what), std::move(detail)}}; }

const Presentation& part_at(const Presentation& q, const Step& s) {
  if (q.is_base()) invalid("range", "step below a finite presentation");
  const auto& ts = q.as_node().templates;
  if (s.tmpl < 0 || s.tmpl >= static_cast<int>(ts.size())) invalid("range", "template index");
  if (s.member < 0 || s.copy < 0) invalid("range", "negative index");
  if (auto* c = std::get_if<ConcreteTemplate>(&ts[s.tmpl])) {
    if (s.member != 0) invalid("range", "member of a concrete template");
    if (!c->mult.is_omega() && s.copy >= c->mult.count()) invalid("range", "copy beyond a finite multiplicity");
    return *c->part;
  }
  return *family_member(std::get<FamilyTemplate>(ts[s.tmpl]).gen, s.member);
}

using NameMap = std::map<VertexName, std::vector<VertexName>>;

VertexName prefixed(const std::vector<Step>& prefix, const VertexName& n) {
  VertexName out{prefix, n.local};
  out.path.insert(out.path.end(), n.path.begin(), n.path.end());
  return out;
}

Truncation covering(const std::vector<VertexName>& names) {
  Truncation t{0, 1};
  for (const auto& n : names) {
    t.depth = std::max(t.depth, static_cast<int>(n.path.size()));
    for (const Step& s : n.path) t.copies = std::max({t.copies, s.member + 1, s.copy + 1});
  }
  return t;
}

const Presentation& template_part(const Template& t, int member) {
  if (auto* c = std::get_if<ConcreteTemplate>(&t)) return *c->part;
  return *family_member(std::get<FamilyTemplate>(t).gen, member);
}

void expand(const PresCertificate& cert, const Presentation& p, const Presentation& q, int d, int c,
            std::vector<Step>& src, std::vector<Step>& tgt, NameMap& out);

void expand_direct(const DirectCertificate& cert, const Presentation& p, const Presentation& q, int d, int c,
                   std::vector<Step>& src, std::vector<Step>& tgt, NameMap& out) {
  if (p.is_base() || q.is_base()) invalid("shape", "direct certificate between non-nodes");
  const auto& pn = p.as_node();
  const auto& qn = q.as_node();
  for (int v = 0; v < pn.kernel.order(); ++v) out[VertexName{src, v}] = {VertexName{tgt, cert.kernel_map.at(v)}};
  if (d == 0) return;
  for (int j = 0; j < static_cast<int>(pn.templates.size()); ++j) {
    const Template& st = pn.templates[j];
    const TemplateMatch& m = cert.matches.at(j);
    const Template& tt = qn.templates.at(m.target);
    int members = 1;
    int per_member = c;
    if (auto* cc = std::get_if<ConcreteTemplate>(&st)) {
      if (!cc->mult.is_omega()) per_member = cc->mult.count();
    } else {
      members = c;
    }
    for (int mem = 0; mem < members; ++mem) {
      const Presentation& sp = template_part(st, mem);
      for (int i = 0; i < per_member; ++i) {
        src.push_back(Step{j, mem, i});
        switch (m.kind) {
          case MatchKind::Part:
            tgt.push_back(Step{m.target, 0, m.copies.apply(i)});
            expand(*m.part, sp, template_part(tt, 0), d - 1, c, src, tgt, out);
            break;
          case MatchKind::IntoMember:
            tgt.push_back(Step{m.target, m.member, m.copies.apply(i)});
            expand(*m.part, sp, template_part(tt, m.member), d - 1, c, src, tgt, out);
            break;
          case MatchKind::FamilyMembers: {
            const Generator sg = std::get<FamilyTemplate>(st).gen;
            const Generator tg = std::get<FamilyTemplate>(tt).gen;
            auto entry = dominance(sg, tg);
            auto [tm, mc] = member_certificate(sg, mem, tg);
            int copy = m.copies.apply(entry->injective ? i : cantor_pair(mem, i));
            tgt.push_back(Step{m.target, tm, copy});
            expand(*mc, sp, template_part(tt, tm), d - 1, c, src, tgt, out);
            break;
          }
          case MatchKind::FamilyLimit: {
            const Generator sg = std::get<FamilyTemplate>(st).gen;
            const Presentation& lim = limit_presentation(sg);
            tgt.push_back(Step{m.target, 0, m.copies.apply(cantor_pair(mem, i))});
            NameMap into_limit;
            std::vector<Step> fresh;
            expand(*limit_certificate(sg, mem), sp, lim, d - 1, c, src, fresh, into_limit);
            std::vector<VertexName> used;
            for (const auto& [k, names] : into_limit) used.insert(used.end(), names.begin(), names.end());
            Truncation lt = covering(used);
            NameMap from_limit;
            std::vector<Step> none;
            expand(*m.part, lim, template_part(tt, 0), lt.depth, lt.copies, none, tgt, from_limit);
            for (const auto& [k, names] : into_limit) {
              auto& dst = out[k];
              for (const auto& w : names) {
                auto it = from_limit.find(w);
                if (it == from_limit.end()) invalid("range", "limit vertex " + to_string(w) + " not covered");
                dst.insert(dst.end(), it->second.begin(), it->second.end());
              }
            }
            break;
          }
        }
        tgt.pop_back();
        src.pop_back();
      }
    }
  }
}

void expand(const PresCertificate& cert, const Presentation& p, const Presentation& q, int d, int c,
            std::vector<Step>& src, std::vector<Step>& tgt, NameMap& out) {
  if (auto* f = std::get_if<FiniteCertificate>(&cert.body)) {
    if (!p.is_base()) invalid("shape", "finite certificate for an infinite source");
    if (static_cast<int>(f->branch_sets.size()) != p.top_order()) invalid("shape", "branch set count");
    for (int v = 0; v < p.top_order(); ++v) {
      auto& dst = out[VertexName{src, v}];
      for (const auto& n : f->branch_sets[v]) dst.push_back(prefixed(tgt, n));
    }
  } else if (auto* dc = std::get_if<DirectCertificate>(&cert.body)) {
    expand_direct(*dc, p, q, d, c, src, tgt, out);
  } else {
    const auto& in = std::get<IntoCertificate>(cert.body);
    const Step s{in.target, in.member, in.copy};
    const Presentation& part = part_at(q, s);
    tgt.push_back(s);
    expand(*in.inner, p, part, d, c, src, tgt, out);
    tgt.pop_back();
    if (in.stretch) out[VertexName{src, in.stretch->first}].push_back(VertexName{tgt, in.stretch->second});
  }
}

bool infinite(const Template& t) {
  auto* c = std::get_if<ConcreteTemplate>(&t);
  return !c || c->mult.is_omega();
}

bool has_all(const Attachment& a, int anchor) {
  return std::find(a.all.begin(), a.all.end(), anchor) != a.all.end();
}

void check(const PresCertificate& cert, const Presentation& p, const Presentation& q);

void check_direct(const DirectCertificate& cert, const Presentation& p, const Presentation& q) {
  if (p.is_base() || q.is_base()) invalid("shape", "direct certificate between non-nodes");
  const auto& pn = p.as_node();
  const auto& qn = q.as_node();
  if (static_cast<int>(cert.kernel_map.size()) != pn.kernel.order()) invalid("shape", "kernel map size");
  std::set<int> image;
  for (int x : cert.kernel_map) {
    if (x < 0 || x >= qn.kernel.order()) invalid("range", "kernel image out of range");
    if (!image.insert(x).second) invalid("kernel injectivity", "two kernel vertices share an image");
  }
  for (const Edge& e : pn.kernel.edges())
    if (!qn.kernel.adjacent(cert.kernel_map[e.u], cert.kernel_map[e.v])) invalid("kernel edges", "kernel edge not preserved");
  if (cert.matches.size() != pn.templates.size()) invalid("shape", "one match per template");
  // Target copy slots taken so far, per (template, member).
  std::map<std::pair<int, int>, std::set<int>> taken;
  for (int j = 0; j < static_cast<int>(pn.templates.size()); ++j) {
    const Template& st = pn.templates[j];
    const TemplateMatch& m = cert.matches[j];
    if (m.target < 0 || m.target >= static_cast<int>(qn.templates.size())) invalid("range", "target template");
    const Template& tt = qn.templates[m.target];
    const bool s_concrete = std::holds_alternative<ConcreteTemplate>(st);
    const bool t_concrete = std::holds_alternative<ConcreteTemplate>(tt);
    const bool ok_kind = (m.kind == MatchKind::Part && s_concrete && t_concrete) ||
                         (m.kind == MatchKind::IntoMember && s_concrete && !t_concrete) ||
                         (m.kind == MatchKind::FamilyMembers && !s_concrete && !t_concrete) ||
                         (m.kind == MatchKind::FamilyLimit && !s_concrete && t_concrete);
    if (!ok_kind) invalid("shape", "match kind does not fit the templates");
    if (m.copies.stride < 1 || m.copies.offset < 0) invalid("shape", "copy map");
    if (m.kind != MatchKind::FamilyMembers && !m.part) invalid("shape", "missing part certificate");
    if (infinite(st) && !infinite(tt)) invalid("capacity", "infinitely many copies into finitely many");
    if (!infinite(tt)) {
      const int have = std::get<ConcreteTemplate>(tt).mult.count();
      const int need = std::get<ConcreteTemplate>(st).mult.count();
      if (m.copies.apply(need - 1) >= have) invalid("capacity", "finite target has too few copies");
    }
    // Copy collisions, over a window of source indices.
    const int window = infinite(st) ? 12 : std::get<ConcreteTemplate>(st).mult.count();
    const bool cantor = m.kind == MatchKind::FamilyLimit ||
                        (m.kind == MatchKind::FamilyMembers &&
                         !dominance(std::get<FamilyTemplate>(st).gen, std::get<FamilyTemplate>(tt).gen).value_or(DominanceEntry{}).injective);
    const int members = s_concrete ? 1 : window;
    for (int mem = 0; mem < members; ++mem) {
      int tm = m.kind == MatchKind::IntoMember ? m.member : 0;
      if (m.kind == MatchKind::FamilyMembers) {
        auto entry = dominance(std::get<FamilyTemplate>(st).gen, std::get<FamilyTemplate>(tt).gen);
        if (!entry) invalid("shape", "families without dominance");
        tm = member_certificate(entry->source, mem, entry->target).first;
      }
      for (int i = 0; i < window; ++i) {
        int slot = m.copies.apply(cantor ? cantor_pair(mem, i) : i);
        if (!taken[{m.target, tm}].insert(slot).second) invalid("capacity", "two copies share a target copy");
      }
    }
    // Attachments.
    const Attachment& sa = attachment_of(st);
    const Attachment& ta = attachment_of(tt);
    for (int a : sa.all)
      if (!has_all(ta, cert.kernel_map[a])) invalid("attachment", "all-attachment needs an all-attached target");
    for (auto [port, a] : sa.ports) {
      const int k = cert.kernel_map[a];
      if (has_all(ta, k)) continue;
      bool any = std::any_of(ta.ports.begin(), ta.ports.end(), [&](auto l) { return l.second == k; });
      if (!any) invalid("attachment", "port link has no target link at its anchor");
    }
    switch (m.kind) {
      case MatchKind::Part: check(*m.part, template_part(st, 0), template_part(tt, 0)); break;
      case MatchKind::IntoMember: check(*m.part, template_part(st, 0), template_part(tt, m.member)); break;
      case MatchKind::FamilyLimit:
        check(*m.part, limit_presentation(std::get<FamilyTemplate>(st).gen), template_part(tt, 0));
        break;
      case MatchKind::FamilyMembers: break;
    }
  }
}

void check(const PresCertificate& cert, const Presentation& p, const Presentation& q) {
  if (auto* f = std::get_if<FiniteCertificate>(&cert.body)) {
    if (!p.is_base()) invalid("shape", "finite certificate for an infinite source");
    if (static_cast<int>(f->branch_sets.size()) != p.top_order()) invalid("shape", "branch set count");
  } else if (auto* d = std::get_if<DirectCertificate>(&cert.body)) {
    check_direct(*d, p, q);
  } else {
    const auto& in = std::get<IntoCertificate>(cert.body);
    const Presentation& part = part_at(q, Step{in.target, in.member, in.copy});
    if (!in.inner) invalid("shape", "missing inner certificate");
    if (in.stretch) {
      if (in.stretch->first < 0 || in.stretch->first >= p.top_order()) invalid("range", "stretch source");
      if (in.stretch->second < 0 || in.stretch->second >= q.top_order()) invalid("range", "stretch target");
    }
    check(*in.inner, p, part);
  }
}

}  // namespace

TruncatedGraph induced_by_names(const Presentation& p, std::vector<VertexName> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  TruncatedGraph out;
  for (int i = 0; i < static_cast<int>(names.size()); ++i) out.index.emplace(names[i], i);
  std::set<Edge> edges;
  std::vector<int> marks;
  try {
    for (int b = 0; b < static_cast<int>(names.size()); ++b) {
      const VertexName& nb = names[b];
      std::vector<const Presentation*> ctx{&p};
      for (const Step& s : nb.path) ctx.push_back(&part_at(*ctx.back(), s));
      const Presentation& here = *ctx.back();
      if (nb.local < 0 || nb.local >= here.top_order()) invalid("range", "vertex " + to_string(nb));
      for (int w : here.top_graph().neighbors(nb.local)) {
        auto it = out.index.find(VertexName{nb.path, w});
        if (it != out.index.end()) edges.insert(Edge(b, it->second));
      }
      for (std::size_t l = 0; l < nb.path.size(); ++l) {
        const Attachment& a = attachment_of(ctx[l]->as_node().templates[nb.path[l].tmpl]);
        std::vector<Step> prefix(nb.path.begin(), nb.path.begin() + static_cast<long>(l));
        auto link = [&](int anchor) {
          auto it = out.index.find(VertexName{prefix, anchor});
          if (it != out.index.end()) edges.insert(Edge(b, it->second));
        };
        for (int anchor : a.all) link(anchor);
        if (l + 1 == nb.path.size())
          for (auto [port, anchor] : a.ports)
            if (port == nb.local) link(anchor);
      }
      if (nb.path.empty() && std::binary_search(p.top_marks().begin(), p.top_marks().end(), nb.local)) {
        marks.push_back(b);
      }
    }
  } catch (const Invalid& e) {
    throw Error(ErrorKind::InvalidArgument, e.v.detail);
  }
  out.graph = MarkedGraph(FiniteGraph(static_cast<int>(names.size()), std::vector<Edge>(edges.begin(), edges.end())), marks);
  out.names = std::move(names);
  return out;
}

namespace {

ExpandedCertificate expand_checked(const PresCertificate& cert, const Presentation& p, const Presentation& q,
                                   Truncation t) {
  ExpandedCertificate e;
  e.source = truncate(p, t);
  NameMap map;
  std::vector<Step> src, tgt;
  expand(cert, p, q, t.depth, t.copies, src, tgt, map);
  std::vector<VertexName> all;
  for (const auto& name : e.source.names) {
    auto it = map.find(name);
    if (it == map.end()) invalid("shape", "no branch set for " + to_string(name));
    e.branch_sets.push_back(it->second);
    all.insert(all.end(), it->second.begin(), it->second.end());
  }
  try {
    e.target = induced_by_names(q, all);
  } catch (const Error& err) {
    invalid("range", err.what());
  }
  e.target_truncation = covering(all);
  return e;
}

}  // namespace

ExpandedCertificate expand_certificate(const PresCertificate& cert, const Presentation& p, const Presentation& q,
                                       Truncation t) {
  try {
    return expand_checked(cert, p, q, t);
  } catch (const Invalid& e) {
    throw Error(ErrorKind::InvalidArgument, e.v.invariant + ": " + e.v.detail);
  }
}

std::optional<CertViolation> verify_pres_certificate(const PresCertificate& cert, const Presentation& p,
                                                     const Presentation& q, Truncation t, bool marked) {
  try {
    check(cert, p, q);
    const bool apex = !marked && !p.is_base() && rank(p) == rank(q);
    if (auto* d = std::get_if<DirectCertificate>(&cert.body)) {
      if (apex) {
        auto kq = kernel(q);
        for (int v : kernel(p))
          if (!std::binary_search(kq.begin(), kq.end(), d->kernel_map[v])) invalid("apex", "kernel vertex off the target kernel");
      }
      if (marked) {
        const auto& mq = q.top_marks();
        for (int v : p.top_marks())
          if (!std::binary_search(mq.begin(), mq.end(), d->kernel_map[v])) invalid("apex", "mark off the target marks");
      }
    }
    ExpandedCertificate e = expand_checked(cert, p, q, t);
    MinorEmbedding emb;
    for (const auto& names : e.branch_sets) {
      std::vector<int> ids;
      for (const auto& n : names) ids.push_back(e.target.index.at(n));
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      emb.branch_sets.push_back(std::move(ids));
    }
    complete_branch_edges(e.source.graph.graph(), e.target.graph.graph(), emb);
    MarkedGraph g = marked ? e.source.graph : e.source.graph.unmarked();
    if (auto v = verify_embedding(g, e.target.graph, emb, marked)) {
      return CertViolation{"embedding", v->invariant + ": " + v->detail};
    }
    if (apex) {
      auto kq = kernel(q);
      for (int v : kernel(p)) {
        const auto& names = e.branch_sets[e.source.index.at(VertexName{{}, v})];
        bool hit = std::any_of(names.begin(), names.end(), [&](const VertexName& n) {
          return n.path.empty() && std::binary_search(kq.begin(), kq.end(), n.local);
        });
        if (!hit) invalid("apex", "branch set of a kernel vertex misses the target kernel");
      }
    }
  } catch (const Invalid& e) {
    return e.v;
  } catch (const Error& e) {
    return CertViolation{"shape", e.what()};
  }
  return std::nullopt;
}

}  // namespace minorlab
