#include <algorithm>
#include <map>

#include "minorlab/errors.hpp"
#include "minorlab/presented.hpp"

namespace minorlab {

CertPtr self_minor(const Presentation& p) {
  if (p.is_base()) throw Error(ErrorKind::PresentationFinite, "a finite graph has no proper self-minor");
  const auto& node = p.as_node();
  const Ordinal r = raw_rank(p);
  DirectCertificate d;
  for (int v = 0; v < node.kernel.order(); ++v) d.kernel_map.push_back(v);
  bool moved = false;
  for (int j = 0; j < static_cast<int>(node.templates.size()); ++j) {
    const Template& t = node.templates[j];
    const bool top = !moved && contribution(t) == r;
    if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
      if (top && !c->part->is_base()) {
        d.matches.push_back(TemplateMatch{j, MatchKind::Part, {}, 0, self_minor(*c->part)});
        moved = true;
      } else if (top && c->mult.is_omega()) {
        d.matches.push_back(TemplateMatch{j, MatchKind::Part, CopyMap{1, 1}, 0, identity_certificate(*c->part)});
        moved = true;
      } else {
        d.matches.push_back(TemplateMatch{j, MatchKind::Part, {}, 0, identity_certificate(*c->part)});
      }
    } else {
      d.matches.push_back(TemplateMatch{j, MatchKind::FamilyMembers, top ? CopyMap{1, 1} : CopyMap{}, 0, nullptr});
      moved = moved || top;
    }
  }
  if (!moved) {
    // No template reaches the rank; shift the first infinite one instead.
    for (int j = 0; j < static_cast<int>(node.templates.size()) && !moved; ++j) {
      auto* c = std::get_if<ConcreteTemplate>(&node.templates[j]);
      if (!c || c->mult.is_omega()) {
        d.matches[j].copies = CopyMap{1, 1};
        moved = true;
      }
    }
  }
  return make_cert(std::move(d));
}

bool is_identity_expansion(const ExpandedCertificate& e) {
  for (std::size_t i = 0; i < e.source.names.size(); ++i) {
    const auto& b = e.branch_sets[i];
    if (b.size() != 1 || !(b[0] == e.source.names[i])) return false;
  }
  return true;
}

std::vector<int> perm_stabilize(const std::vector<std::vector<int>>& perms) {
  if (perms.empty()) throw Error(ErrorKind::TooShort, "no permutations");
  const int n = static_cast<int>(perms[0].size());
  if (n > 8) throw Error(ErrorKind::BoundExceeded, "permuted set too large");
  for (const auto& p : perms) {
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    bool ok = static_cast<int>(p.size()) == n;
    for (int i = 0; ok && i < n; ++i) ok = sorted[i] == i;
    if (!ok) throw Error(ErrorKind::InvalidArgument, "not a permutation of the common set");
  }
  long long factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  if (static_cast<long long>(perms.size()) < factorial + 1) throw Error(ErrorKind::TooShort, "sequence shorter than |A|! + 1");
  std::vector<int> running(n);
  for (int i = 0; i < n; ++i) running[i] = i;
  std::map<std::vector<int>, std::vector<int>> seen;
  std::vector<std::vector<int>> order;
  for (int k = 0;; ++k) {
    auto [it, fresh] = seen.try_emplace(running);
    if (fresh) order.push_back(running);
    it->second.push_back(k);
    if (k == static_cast<int>(perms.size())) break;
    std::vector<int> next(n);
    for (int x = 0; x < n; ++x) next[x] = perms[k][running[x]];
    running = std::move(next);
  }
  const std::vector<int>* best = nullptr;
  for (const auto& key : order)
    if (!best || seen[key].size() > best->size()) best = &seen[key];
  return std::vector<int>(best->begin() + 1, best->end());
}

}  // namespace minorlab
