#include "minorlab/membership.hpp"

#include <algorithm>

#include "minorlab/errors.hpp"

namespace minorlab {

namespace {

MarkedGraph kernel_marked_truncation(const Presentation& p, Truncation t) {
  TruncatedGraph tg = truncate(p, t);
  std::vector<int> marks;
  for (int v : kernel(p)) marks.push_back(tg.index.at(VertexName{{}, v}));
  return MarkedGraph(tg.graph.graph(), std::move(marks));
}

}  // namespace

bool finite_marked_minor_of(const MarkedGraph& f, const Presentation& p, const SolverLimits& limits) {
  if (f.order() > kMembershipMaxOrder) throw Error(ErrorKind::BoundExceeded, "pattern too large");
  const Presentation q = is_normal_form(p) ? p : normalize(p);
  if (static_cast<int>(f.marked().size()) > static_cast<int>(kernel(q).size())) return false;
  const int bound = std::max(1, f.order() + f.graph().size());
  const int d = depth(q);
  // Smaller truncations are subgraphs of larger ones, so a model found early is final.
  for (int copies = 1;; copies = std::min(bound, copies * 2)) {
    MarkedGraph host = kernel_marked_truncation(q, Truncation{d, copies});
    MinorResult r = find_marked_minor(f, host, limits);
    if (r.found()) return true;
    if (copies == bound) {
      if (r.status == SearchStatus::BudgetExhausted) {
        throw Error(ErrorKind::BudgetExhausted, "marked minor search ran out of budget");
      }
      return false;
    }
  }
}

std::vector<MarkedGraph> cbullet_sample(const Presentation& p, int size_bound, const SolverLimits& limits) {
  if (size_bound > kMembershipMaxOrder || size_bound > 8) {
    throw Error(ErrorKind::BoundExceeded, "sample bound too large");
  }
  const Presentation q = is_normal_form(p) ? p : normalize(p);
  const int kernel_size = static_cast<int>(kernel(q).size());
  std::vector<MarkedGraph> out;
  for (int n = 0; n <= size_bound; ++n) {
    for (const MarkedGraph& f : enumerate_marked_graphs(n, std::min(n, kernel_size), false)) {
      if (finite_marked_minor_of(f, q, limits)) out.push_back(f);
    }
  }
  return out;
}

namespace {

Ordinal tree_bound(const Presentation& p) {
  if (p.is_base()) return Ordinal::omega();
  Ordinal best;
  for (const Template& t : p.as_node().templates) {
    if (auto* c = std::get_if<ConcreteTemplate>(&t)) {
      best = std::max(best, tree_bound(*c->part));
    } else {
      switch (std::get<FamilyTemplate>(t).gen) {
        case Generator::Path: best = std::max(best, Ordinal::omega()); break;
        // Member n is bounded by omega + n.
        case Generator::MinTree: best = std::max(best, Ordinal::omega(2)); break;
        default: throw Error(ErrorKind::NotATree, "family members are not trees");
      }
    }
  }
  return best.successor();
}

}  // namespace

Ordinal exclusion_rank_bound(const Presentation& p) {
  const FiniteGraph g = truncate(p, Truncation{depth(p), 2}).graph.graph();
  if (!is_forest(g) || !is_connected(g) || g.order() == 0) {
    throw Error(ErrorKind::NotATree, "presentation does not denote a tree");
  }
  return tree_bound(p);
}

}  // namespace minorlab
