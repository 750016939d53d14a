#pragma once

// Shared state of one decision run; internal to the library.

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "minorlab/presented.hpp"

namespace minorlab::detail {

// Per top-level vertex of the source, sets of top-level target vertices its
// branch set must meet.
using Pins = std::vector<std::vector<std::vector<int>>>;

struct OutOfBudget {
  std::string what;
};

class Decision {
 public:
  explicit Decision(DecisionBudget budget);

  const DecisionBudget& budget() const { return budget_; }
  // Throws OutOfBudget once steps or time run out.
  void step();
  SolverLimits solver_limits() const;
  void charge(const MinorResult& r) { used_.solver_nodes += r.nodes; }
  BudgetUsage usage() const;

  // Keeps presentations built during the run alive, so pointer keys stay valid.
  const Presentation& keep(Presentation p);

  std::map<std::tuple<const Presentation*, const Presentation*, std::string>, CertPtr> embed_memo;
  std::map<std::tuple<std::string, std::string, bool>, VerdictPtr> verdict_memo;
  std::map<std::pair<std::string, std::string>, std::optional<bool>> block_memo;

 private:
  DecisionBudget budget_;
  std::chrono::steady_clock::time_point start_;
  BudgetUsage used_;
  std::vector<PresPtr> kept_;
};

std::string pins_key(const Pins& pins);

CertPtr embed(Decision& d, const Presentation& p, const Presentation& q, const Pins& pins);
// Marked mode pins the top marks of p to the top marks of q.
CertPtr embed_top(Decision& d, const Presentation& p, const Presentation& q, bool marked);

VerdictPtr decide(Decision& d, const Presentation& p, const Presentation& q, bool marked);
std::optional<Refutation> refute(Decision& d, const Presentation& p, const Presentation& q, bool marked);

// Whether the 2-connected finite f fails to be a minor of q; nullopt when undecided.
std::optional<bool> excludes_block(Decision& d, const FiniteGraph& f, const Presentation& q);

Truncation verification_truncation(const Presentation& p);

// Order of truncate(p, {d, c}), or some value above cap once it exceeds cap.
long long truncated_order(const Presentation& p, int d, int c, long long cap);

}  // namespace minorlab::detail
