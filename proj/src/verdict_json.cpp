#include "minorlab/report.hpp"

namespace minorlab {

namespace {

Json names_json(const std::vector<VertexName>& names) {
  Json out = Json::array();
  for (const auto& n : names) out.push_back(to_json(n));
  return out;
}

std::string_view kind_name(MatchKind k) {
  switch (k) {
    case MatchKind::Part: return "part";
    case MatchKind::IntoMember: return "into-member";
    case MatchKind::FamilyMembers: return "family-members";
    case MatchKind::FamilyLimit: return "family-limit";
  }
  return "?";
}

Json truncation_json(const Truncation& t) { return Json{{"depth", t.depth}, {"copies", t.copies}}; }

Json embedding_json(const MinorEmbedding& e) {
  Json sets = Json::array();
  for (const auto& b : e.branch_sets) sets.push_back(b);
  return Json{{"branch_sets", sets}};
}

}  // namespace

Json to_json(const VertexName& name) {
  Json path = Json::array();
  for (const Step& s : name.path) path.push_back({s.tmpl, s.member, s.copy});
  return Json{{"path", path}, {"vertex", name.local}};
}

Json to_json(const PresCertificate& cert) {
  if (auto* f = std::get_if<FiniteCertificate>(&cert.body)) {
    Json sets = Json::array();
    for (const auto& b : f->branch_sets) sets.push_back(names_json(b));
    return Json{{"form", "finite"}, {"branch_sets", sets}};
  }
  if (auto* d = std::get_if<DirectCertificate>(&cert.body)) {
    Json matches = Json::array();
    for (const auto& m : d->matches) {
      Json j{{"target", m.target}, {"kind", kind_name(m.kind)}, {"stride", m.copies.stride}, {"offset", m.copies.offset}};
      if (m.kind == MatchKind::IntoMember) j["member"] = m.member;
      if (m.part) j["part"] = to_json(*m.part);
      matches.push_back(std::move(j));
    }
    return Json{{"form", "direct"}, {"kernel_map", d->kernel_map}, {"templates", matches}};
  }
  const auto& in = std::get<IntoCertificate>(cert.body);
  Json j{{"form", "into"}, {"target", in.target}, {"member", in.member}, {"copy", in.copy}, {"inner", to_json(*in.inner)}};
  if (in.stretch) j["stretch"] = {in.stretch->first, in.stretch->second};
  return j;
}

Json to_json(const Refutation& r) {
  if (auto* re = std::get_if<RankExceeds>(&r)) {
    return Json{{"rule", "rank-exceeds"}, {"source_rank", re->source.to_string()}, {"target_rank", re->target.to_string()}};
  }
  if (auto* k = std::get_if<KernelTooSmall>(&r)) {
    return Json{{"rule", "kernel-too-small"}, {"source_kernel", k->source}, {"target_kernel", k->target}, {"equal_rank", k->equal_rank}};
  }
  const auto& s = std::get<SeparatorMinor>(r);
  Json j{{"rule", "separator"}, {"marked", s.marked}};
  if (auto* g = std::get_if<MarkedGraph>(&s.f)) {
    j["separator"] = emit_graph(*g);
  } else {
    j["separator"] = emit_presentation(*std::get<PresPtr>(s.f));
  }
  Json inc{{"kind", to_string(s.inclusion.kind)}};
  if (s.inclusion.tmpl >= 0) inc["template"] = s.inclusion.tmpl;
  if (s.inclusion.anchor >= 0) inc["anchor"] = s.inclusion.anchor;
  if (s.inclusion.copies > 0) inc["copies"] = s.inclusion.copies;
  if (s.inclusion.embedding) {
    inc["truncation"] = truncation_json(s.inclusion.at);
    inc["embedding"] = embedding_json(*s.inclusion.embedding);
  }
  if (s.inclusion.cert) inc["certificate"] = to_json(*s.inclusion.cert);
  j["inclusion"] = inc;
  Json exc{{"kind", to_string(s.exclusion.kind)}};
  if (s.exclusion.kind == ExclusionKind::FiniteExhaustive || s.exclusion.kind == ExclusionKind::BlockExhaustive) {
    exc["truncation"] = truncation_json(s.exclusion.at);
  }
  if (!s.exclusion.parts.empty()) {
    Json parts = Json::array();
    for (const auto& v : s.exclusion.parts) parts.push_back(v ? to_json(*v) : Json{{"kind", "rank-bound"}});
    exc["parts"] = parts;
  }
  if (s.exclusion.apex >= 0) exc["apex"] = s.exclusion.apex;
  if (s.exclusion.cases > 0) exc["cases"] = s.exclusion.cases;
  j["exclusion"] = exc;
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  if (auto* y = std::get_if<Yes>(&v.result)) {
    j["kind"] = "yes";
    j["payload"] = to_json(*y->cert);
  } else if (auto* n = std::get_if<No>(&v.result)) {
    j["kind"] = "no";
    j["payload"] = to_json(n->why);
  } else {
    j["kind"] = "unknown";
    j["payload"] = Json{{"reason", std::get<Unknown>(v.result).reason}};
  }
  j["budget"] = Json{{"steps", v.used.steps}, {"solver_nodes", v.used.solver_nodes}};
  j["truncation"] = v.checked ? truncation_json(*v.checked) : Json(nullptr);
  return j;
}

}  // namespace minorlab
