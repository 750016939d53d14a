#pragma once

#include <vector>

#include "minorlab/minor.hpp"
#include "minorlab/presentation.hpp"

namespace minorlab {

// Largest finite marked graph the membership test accepts.
inline constexpr int kMembershipMaxOrder = 10;

// Whether f is a marked minor of the denoted graph with its kernel marked.
// Decided on the truncation (depth(p), |V(f)| + |E(f)|).
bool finite_marked_minor_of(const MarkedGraph& f, const Presentation& p, const SolverLimits& limits = {});

// Marked graphs on at most `size_bound` vertices, up to marked isomorphism,
// that are marked minors of p with its kernel marked.
std::vector<MarkedGraph> cbullet_sample(const Presentation& p, int size_bound,
                                        const SolverLimits& limits = {});

// A rank beyond which every connected graph contains the tree p as a minor.
Ordinal exclusion_rank_bound(const Presentation& p);

}  // namespace minorlab
