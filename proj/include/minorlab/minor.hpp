#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minorlab/graph.hpp"

namespace minorlab {

struct SolverLimits {
  std::uint64_t node_budget = 20'000'000;
  std::chrono::milliseconds time_budget{60'000};
};

// Host edge realizing a pattern edge; `x` lies in the branch set of
// `pattern.u` and `y` in that of `pattern.v`.
struct BranchEdge {
  Edge pattern;
  int x = 0;
  int y = 0;

  friend bool operator==(const BranchEdge&, const BranchEdge&) = default;
};

struct MinorEmbedding {
  std::vector<std::vector<int>> branch_sets;
  std::vector<BranchEdge> branch_edges;

  friend bool operator==(const MinorEmbedding&, const MinorEmbedding&) = default;
};

enum class SearchStatus { Found, NotMinor, BudgetExhausted };

struct MinorResult {
  SearchStatus status = SearchStatus::NotMinor;
  std::optional<MinorEmbedding> embedding;
  std::uint64_t nodes = 0;

  bool found() const { return status == SearchStatus::Found; }
  bool refuted() const { return status == SearchStatus::NotMinor; }
};

// For each pattern vertex, a list of host vertex sets its branch set must meet.
using HitSets = std::vector<std::vector<std::vector<int>>>;

MinorResult find_minor(const FiniteGraph& g, const FiniteGraph& h, const SolverLimits& limits = {});
MinorResult find_marked_minor(const MarkedGraph& g, const MarkedGraph& h,
                              const SolverLimits& limits = {});
MinorResult find_constrained_minor(const FiniteGraph& g, const FiniteGraph& h, const HitSets& hits,
                                   const SolverLimits& limits = {});

struct EmbeddingViolation {
  // One of: shape, range, nonempty, disjointness, connectivity, branch-edge, marked, hit.
  std::string invariant;
  int vertex = -1;
  std::optional<Edge> edge;
  std::string detail;
};

std::optional<EmbeddingViolation> verify_embedding(const MarkedGraph& g, const MarkedGraph& h,
                                                   const MinorEmbedding& emb, bool marked);
std::optional<EmbeddingViolation> verify_embedding(const FiniteGraph& g, const FiniteGraph& h,
                                                   const MinorEmbedding& emb);
std::optional<EmbeddingViolation> verify_constrained_embedding(const FiniteGraph& g,
                                                               const FiniteGraph& h,
                                                               const MinorEmbedding& emb,
                                                               const HitSets& hits);

inline constexpr int kBruteForceMaxHost = 8;

// Exhaustive check over all assignments of host vertices to branch sets.
bool brute_force_minor(const FiniteGraph& g, const FiniteGraph& h);
bool brute_force_marked_minor(const MarkedGraph& g, const MarkedGraph& h);

MinorEmbedding restrict_to_block(const FiniteGraph& g, const FiniteGraph& h,
                                 const MinorEmbedding& emb);

bool is_minor_twin(const FiniteGraph& g, const FiniteGraph& h, const SolverLimits& limits = {});

// Embedding g -> k from first: g -> h and second: h -> k.
MinorEmbedding compose(const MinorEmbedding& first, const MinorEmbedding& second);

// Fills branch_edges with the least realizing host edge of every pattern edge.
void complete_branch_edges(const FiniteGraph& g, const FiniteGraph& h, MinorEmbedding& emb);

std::string emit_certificate(const MinorEmbedding& emb);
MinorEmbedding parse_certificate(const std::string& text);

}  // namespace minorlab
