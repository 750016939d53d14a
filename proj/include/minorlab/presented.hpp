#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "minorlab/minor.hpp"
#include "minorlab/presentation.hpp"

namespace minorlab {

struct PresCertificate;
using CertPtr = std::shared_ptr<const PresCertificate>;

// Source copy i goes to target copy stride * i + offset.
struct CopyMap {
  int stride = 1;
  int offset = 0;

  int apply(int i) const { return stride * i + offset; }
  friend bool operator==(const CopyMap&, const CopyMap&) = default;
};

inline int cantor_pair(int n, int i) { return (n + i) * (n + i + 1) / 2 + i; }

// Base source: branch set of each vertex, as vertex names of the target.
struct FiniteCertificate {
  std::vector<std::vector<VertexName>> branch_sets;
};

enum class MatchKind {
  Part,           // concrete source part into the target's concrete part
  IntoMember,     // concrete source part into one member of a target family
  FamilyMembers,  // family source into a dominating target family
  FamilyLimit,    // family source into a concrete target part via the family's limit
};

struct TemplateMatch {
  int target = 0;
  MatchKind kind = MatchKind::Part;
  CopyMap copies;
  int member = 0;  // IntoMember only
  // Part: source part into target part. IntoMember: into the member.
  // FamilyLimit: limit presentation into the target part. FamilyMembers: unused.
  CertPtr part;
};

// Kernel vertices map to single kernel vertices; every template is matched.
struct DirectCertificate {
  std::vector<int> kernel_map;
  std::vector<TemplateMatch> matches;
};

// The whole source inside one copy of a target part, optionally with a
// target kernel vertex added to the branch set of one source top vertex.
struct IntoCertificate {
  int target = 0;
  int member = 0;
  int copy = 0;
  CertPtr inner;
  std::optional<std::pair<int, int>> stretch;
};

struct PresCertificate {
  std::variant<FiniteCertificate, DirectCertificate, IntoCertificate> body;
};

CertPtr make_cert(FiniteCertificate c);
CertPtr make_cert(DirectCertificate c);
CertPtr make_cert(IntoCertificate c);

// Member maps built into the family dominance table.
struct DominanceEntry {
  Generator source;
  Generator target;
  bool injective = true;
  std::string rule;
};
const std::vector<DominanceEntry>& dominance_table();
std::optional<DominanceEntry> dominance(Generator source, Generator target);
// Target member index and certificate for member n of the source family.
std::pair<int, CertPtr> member_certificate(Generator source, int n, Generator target);
// A presentation containing every member of the family, with member n
// realised at a fixed place, and the certificate placing member n there.
const Presentation& limit_presentation(Generator g);
CertPtr limit_certificate(Generator g, int n);

CertPtr identity_certificate(const Presentation& p);

struct CertViolation {
  // One of: shape, kernel injectivity, kernel edges, capacity, attachment, apex, range, embedding.
  std::string invariant;
  std::string detail;
};

struct ExpandedCertificate {
  TruncatedGraph source;
  std::vector<std::vector<VertexName>> branch_sets;
  // Subgraph of the target denoted by the names in the branch sets.
  TruncatedGraph target;
  Truncation target_truncation;
};

// Concrete branch sets for the source truncation at t.
ExpandedCertificate expand_certificate(const PresCertificate& cert, const Presentation& p,
                                       const Presentation& q, Truncation t);

// `marked`: top marks of p must land on top marks of q. Kernel branch sets
// must meet kernel(q) whenever the ranks agree.
std::optional<CertViolation> verify_pres_certificate(const PresCertificate& cert, const Presentation& p,
                                                     const Presentation& q, Truncation t,
                                                     bool marked = false);

// Induced subgraph of the graph denoted by p on the given names; throws
// InvalidArgument for names that do not exist.
TruncatedGraph induced_by_names(const Presentation& p, std::vector<VertexName> names);

struct Verdict;
using VerdictPtr = std::shared_ptr<const Verdict>;

struct RankExceeds {
  Ordinal source;
  Ordinal target;
};

struct KernelTooSmall {
  int source = 0;
  int target = 0;
  bool equal_rank = false;
};

enum class InclusionKind { FiniteEmbedding, PartCone, PartCopies, Certificate };
enum class ExclusionKind { FiniteExhaustive, BlockExhaustive, Parts, ApexParts, CliqueBound, RankBound };

std::string_view to_string(InclusionKind k);
std::string_view to_string(ExclusionKind k);

// Why the separator sits below the source.
struct Inclusion {
  InclusionKind kind = InclusionKind::FiniteEmbedding;
  int tmpl = -1;   // template of the source it comes from
  int anchor = -1; // PartCone: the marked kernel vertex used as apex
  int copies = 0;  // PartCopies: how many copies the separator holds
  Truncation at;   // FiniteEmbedding: truncation of the source used
  std::optional<MinorEmbedding> embedding;
  CertPtr cert;
};

// Why the separator is not below the target.
struct Exclusion {
  ExclusionKind kind = ExclusionKind::FiniteExhaustive;
  Truncation at;
  // Parts: one verdict per target template (RankBound for families).
  // ApexParts (unmarked): the number of target maps checked.
  std::vector<VerdictPtr> parts;
  int apex = -1;
  long long cases = 0;
};

using Separator = std::variant<MarkedGraph, PresPtr>;

struct SeparatorMinor {
  Separator f;
  bool marked = false;
  Inclusion inclusion;
  Exclusion exclusion;
};

using Refutation = std::variant<RankExceeds, KernelTooSmall, SeparatorMinor>;

struct Yes {
  CertPtr cert;
};
struct No {
  Refutation why;
};
struct Unknown {
  std::string reason;
};

struct DecisionBudget {
  std::uint64_t steps = 20'000;
  SolverLimits solver{200'000, std::chrono::milliseconds(2'000)};
  std::chrono::milliseconds time{60'000};
  // Finite separators are searched among graphs up to this order.
  int separator_order = 5;
  // Largest truncation searched directly for finite sources.
  int truncation_vertices = 3'000;
};

struct BudgetUsage {
  std::uint64_t steps = 0;
  std::uint64_t solver_nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

struct Verdict {
  std::variant<Yes, No, Unknown> result;
  BudgetUsage used;
  std::optional<Truncation> checked;

  bool is_yes() const { return std::holds_alternative<Yes>(result); }
  bool is_no() const { return std::holds_alternative<No>(result); }
  bool is_unknown() const { return std::holds_alternative<Unknown>(result); }
};

Verdict decide_minor(const Presentation& p, const Presentation& q, const DecisionBudget& budget = {});
// Top marks of p must land on top marks of q.
Verdict decide_marked_minor(const Presentation& p, const Presentation& q, const DecisionBudget& budget = {});

// Re-checks every piece of evidence; nullopt when the refutation stands.
std::optional<std::string> recheck_refutation(const Refutation& r, const Presentation& p, const Presentation& q,
                                              bool marked, const SolverLimits& limits = {});

std::optional<SeparatorMinor> refute_by_separator(const Presentation& p, const Presentation& q, int size_bound,
                                                  Ordinal rank_bound, const DecisionBudget& budget = {});

// A certificate of p into itself that moves some copy.
CertPtr self_minor(const Presentation& p);
bool is_identity_expansion(const ExpandedCertificate& e);

// Indices sharing the most frequent running composite, minus the least of them.
std::vector<int> perm_stabilize(const std::vector<std::vector<int>>& perms);

}  // namespace minorlab
