#pragma once

// Deterministic input generators and the batch verification suite.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gramian/construction.hpp"
#include "gramian/loynes_space.hpp"

namespace gkit {

struct SampleSpec {
  SpaceShape shape;
  /// ‖P − Q‖ to realize. Values below 1 need equal ranks. When omitted, equal
  /// ranks draw a gap uniformly from [0, 1) and unequal ranks give gap 1.
  std::optional<double> target_gap;
  int rank_p = 1;
  int rank_q = 1;
  std::uint64_t seed = 0;
  /// Conjugate the canonical pair by a Haar unitary. Off yields P on the
  /// leading coordinates and Q rotated away from it plane by plane.
  bool conjugate = true;
};

struct ProjectionPair {
  GramianOperator p;
  GramianOperator q;
  double gap = 0;  ///< measured ‖P − Q‖
};

/// Projection pair whose largest principal angle θ satisfies sin θ = target_gap.
/// Throws SpecError for infeasible specs.
ProjectionPair sample_projection_pair(const SampleSpec& spec);

/// U·diag(1,…,1,0,…,0)·V* with Haar unitaries U, V and `rank` ones.
GramianOperator sample_partial_isometry(const SpaceShape& shape, int rank, std::uint64_t seed);

/// Two orthogonal projections of equal rank ⌊nd/2⌋, so ‖P − Q‖ = 1, together
/// with an exact partial isometry T mapping one range onto the other.
struct RemarkExample {
  GramianOperator p;
  GramianOperator q;
  GramianOperator t;
  double gap = 0;
  bool build_rejected = false;  ///< build(P, Q) raised HypothesisViolated
};

RemarkExample remark_counterexample(const SpaceShape& shape);

struct SuiteConfig {
  int trials = 200;
  std::vector<SpaceShape> shapes{{2, 1}, {4, 1}, {8, 1}, {2, 2}, {3, 2}, {2, 3}};
  std::vector<double> gaps{0.1, 0.3, 0.5, 0.7, 0.9, 0.95};
  Tolerances tol;
  std::uint64_t seed = 42;
  int samples = 16;  ///< sampled vectors per construction
  int workers = 1;   ///< threads; results do not depend on it

  void validate() const;
};

struct TrialFailure {
  int trial = 0;
  std::uint64_t seed = 0;  ///< reproduces the trial through run_trial
  SpaceShape shape;
  double gap = 0;
  std::string reason;
};

struct SuiteReport {
  int trials = 0;
  int passes = 0;
  int hypothesis_failures = 0;  ///< expected rejections at gap ≥ 1
  int unexpected_failures = 0;
  std::map<std::string, double> worst_residuals;
  std::vector<TrialFailure> failures;

  std::vector<std::uint64_t> failing_seeds() const;
};

enum class TrialStatus { pass, hypothesis_failure, failure };

struct TrialOutcome {
  TrialStatus status = TrialStatus::failure;
  std::map<std::string, double> residuals;
  std::string reason;
};

/// One sample → build → verify_trace → classify pipeline.
TrialOutcome run_trial(const SpaceShape& shape, double gap, std::uint64_t trial_seed,
                       const Tolerances& tol, int samples);

/// Trial i uses shapes[i mod S], gaps[(i / S) mod G] and a seed split from
/// config.seed by i.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace gkit
