#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "minorlab/graph.hpp"
#include "minorlab/presentation.hpp"
#include "minorlab/report.hpp"

namespace minorlab {

// SplitMix64. split(i) derives an independent stream without advancing this one,
// so case i of a suite sees the same numbers whatever the worker count.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  SplitMix64 split(std::uint64_t index) const;
  // Uniform in [0, n); n must be positive.
  int below(int n);
  bool chance(int percent) { return below(100) < percent; }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

 private:
  std::uint64_t state_;
};

// Connected graph on n vertices: a random spanning tree plus edges kept with the given percentage.
FiniteGraph random_connected_graph(SplitMix64& rng, int n, int extra_percent);
FiniteGraph random_graph(SplitMix64& rng, int n, int edge_percent);

struct RandomPresentationOptions {
  int max_depth = 3;
  int max_kernel = 2;
  int max_templates = 2;
  int max_part_order = 3;
  bool families = true;
  bool kernel_marks = false;
};

// Normal form, finite rank at most max_depth.
Presentation random_presentation(SplitMix64& rng, const RandomPresentationOptions& opt = {});

enum class CaseStatus { Pass, Fail, Unknown };

struct CaseResult {
  CaseStatus status = CaseStatus::Pass;
  // The inputs, serialized, when the case fails.
  std::string detail;

  static CaseResult pass() { return {}; }
  static CaseResult unknown(std::string why = {}) { return {CaseStatus::Unknown, std::move(why)}; }
  static CaseResult fail(std::string inputs) { return {CaseStatus::Fail, std::move(inputs)}; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int count = 0;
  int pass = 0;
  int fail = 0;
  int unknown = 0;
  bool unknown_allowed = true;
  // Lowest-index failing case.
  std::optional<std::string> counterexample;
  std::chrono::milliseconds wall{0};

  bool ok() const { return fail == 0 && (unknown_allowed || unknown == 0); }
};

struct SuiteInfo {
  std::string name;
  std::string summary;
  int default_count = 0;  // 0: every case of an exhaustive suite
  bool unknown_allowed = true;
};

const std::vector<SuiteInfo>& suites();

// Worker count from MINORLAB_JOBS, else the hardware concurrency.
int default_jobs();

// count <= 0 runs the suite's default count. Throws UnknownSuite.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int count = 0, int jobs = 0);

// Wall time is left out unless asked for, so reports are byte-identical across runs.
Json to_json(const SuiteReport& r, bool with_timing = false);

}  // namespace minorlab
