#include "gramian/lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace gkit {

namespace {

ComplexMatrix coordinate_projection(Eigen::Index dim, Eigen::Index first, Eigen::Index count) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = first; i < first + count; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

constexpr double kGapSelfCheck = 1e-9;

}  // namespace

ProjectionPair sample_projection_pair(const SampleSpec& spec) {
  spec.shape.validate();
  const Eigen::Index dim = spec.shape.dim();
  if (spec.rank_p < 0 || spec.rank_q < 0 || spec.rank_p > dim || spec.rank_q > dim) {
    throw SpecError("sample_projection_pair: ranks must lie in [0, n*d]");
  }
  if (spec.target_gap && !(*spec.target_gap >= 0 && *spec.target_gap <= 1)) {
    throw SpecError("sample_projection_pair: target gap must lie in [0, 1]");
  }

  Rng rng(spec.seed);
  ComplexMatrix p;
  ComplexMatrix q;
  std::optional<double> expected;

  if (spec.rank_p != spec.rank_q) {
    if (spec.target_gap && *spec.target_gap < 1) {
      throw SpecError("sample_projection_pair: a gap below 1 needs equal ranks");
    }
    p = coordinate_projection(dim, 0, spec.rank_p);
    q = coordinate_projection(dim, 0, spec.rank_q);
    if (spec.conjugate) {
      const ComplexMatrix u = rng.haar_unitary(dim);
      const ComplexMatrix v = rng.haar_unitary(dim);
      p = hermitize(u * p * u.adjoint());
      q = hermitize(v * q * v.adjoint());
    }
    expected = 1.0;
  } else {
    const Eigen::Index rank = spec.rank_p;
    const Eigen::Index planes = std::min(rank, dim - rank);
    const double gap = spec.target_gap ? *spec.target_gap : rng.uniform();
    if (gap > 0 && planes == 0) {
      throw SpecError("sample_projection_pair: rank leaves no room for a nonzero gap");
    }
    const double largest = std::asin(gap);
    p = coordinate_projection(dim, 0, rank);
    ComplexMatrix basis = ComplexMatrix::Zero(dim, rank);
    for (Eigen::Index i = 0; i < rank; ++i) {
      if (i < planes) {
        const double theta = i == 0 ? largest : rng.uniform() * largest;
        basis(i, i) = std::cos(theta);
        basis(rank + i, i) = std::sin(theta);
      } else {
        basis(i, i) = 1.0;
      }
    }
    q = basis * basis.adjoint();
    if (spec.conjugate) {
      const ComplexMatrix w = rng.haar_unitary(dim);
      p = hermitize(w * p * w.adjoint());
      q = hermitize(w * q * w.adjoint());
    }
    expected = gap;
  }

  const double measured = spectral_norm(p - q);
  if (std::abs(measured - *expected) > kGapSelfCheck) {
    throw NumericError("sample_projection_pair: measured gap " + std::to_string(measured) +
                       " misses the target " + std::to_string(*expected));
  }
  return {GramianOperator::from_data(spec.shape, std::move(p)),
          GramianOperator::from_data(spec.shape, std::move(q)), measured};
}

GramianOperator sample_partial_isometry(const SpaceShape& shape, int rank, std::uint64_t seed) {
  shape.validate();
  const Eigen::Index dim = shape.dim();
  if (rank < 0 || rank > dim) throw SpecError("sample_partial_isometry: rank must lie in [0, n*d]");
  Rng rng(seed);
  const ComplexMatrix u = rng.haar_unitary(dim);
  const ComplexMatrix v = rng.haar_unitary(dim);
  const auto left = u.leftCols(rank);
  const auto right = v.leftCols(rank);
  return GramianOperator::from_data(shape, left * right.adjoint());
}

RemarkExample remark_counterexample(const SpaceShape& shape) {
  shape.validate();
  const Eigen::Index dim = shape.dim();
  if (dim < 2) throw SpecError("remark_counterexample: needs n*d >= 2");
  const Eigen::Index rank = dim / 2;

  ComplexMatrix t = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < rank; ++i) t(rank + i, i) = 1.0;

  RemarkExample ex{GramianOperator::from_data(shape, coordinate_projection(dim, 0, rank)),
                   GramianOperator::from_data(shape, coordinate_projection(dim, rank, rank)),
                   GramianOperator::from_data(shape, t)};
  ex.gap = spectral_norm(ex.p.data - ex.q.data);
  try {
    build(ex.p, ex.q);
  } catch (const HypothesisViolated&) {
    ex.build_rejected = true;
  }
  return ex;
}

void SuiteConfig::validate() const {
  if (trials < 1) throw InvalidInput("suite: trials must be >= 1");
  if (shapes.empty() || gaps.empty()) throw InvalidInput("suite: shapes and gaps must be non-empty");
  for (const auto& s : shapes) s.validate();
  for (double g : gaps) {
    if (!(g >= 0 && g <= 1)) throw InvalidInput("suite: gaps must lie in [0, 1]");
  }
  if (samples < 0) throw InvalidInput("suite: samples must be >= 0");
  tol.validate();
}

std::vector<std::uint64_t> SuiteReport::failing_seeds() const {
  std::vector<std::uint64_t> seeds;
  for (const auto& f : failures) seeds.push_back(f.seed);
  return seeds;
}

TrialOutcome run_trial(const SpaceShape& shape, double gap, std::uint64_t trial_seed,
                       const Tolerances& tol, int samples) {
  TrialOutcome out;
  const bool expect_rejection = gap >= 1 - kHypothesisMargin;
  Rng rng(trial_seed);
  const auto dim = static_cast<int>(shape.dim());
  const int rank = dim > 1 ? static_cast<int>(rng.uniform_int(1, dim - 1)) : 1;

  try {
    const auto pair = sample_projection_pair(
        {shape, gap, rank, rank, rng.split(0).seed(), /*conjugate=*/true});
    const auto result = build(pair.p, pair.q, tol, samples, rng.split(1).seed());
    if (expect_rejection) {
      out.reason = "build accepted a pair at gap " + std::to_string(result.gap);
      return out;
    }

    const auto verdict = verify_trace(result, tol);
    for (const auto& e : result.trace.entries()) out.residuals[std::string(e.name)] = e.value;

    const auto& cls = result.classification;
    out.residuals["classification_worst"] = cls.worst_condition_residual();
    out.residuals["initial_agreement"] = cls.initial_agreement;
    out.residuals["final_agreement"] = cls.final_agreement;
    out.residuals["initial_is_P"] = relative_residual(cls.initial_projection.data, pair.p.data);
    out.residuals["final_is_Q"] = relative_residual(cls.final_projection.data, pair.q.data);

    if (!verdict.passed) {
      out.reason = "trace residual " + verdict.worst + " exceeds eq_rel";
    } else if (!cls.is_partial_isometry || !cls.consistent) {
      out.reason = "T does not classify as a partial isometry";
    } else if (out.residuals["initial_is_P"] > tol.eq_rel || out.residuals["final_is_Q"] > tol.eq_rel ||
               cls.initial_agreement > tol.eq_rel || cls.final_agreement > tol.eq_rel) {
      out.reason = "initial/final projections disagree with P/Q";
    } else if (numerical_rank(pair.p.data) != numerical_rank(pair.q.data)) {
      out.reason = "rank(P) != rank(Q) despite a successful build";
    } else {
      out.status = TrialStatus::pass;
    }
  } catch (const HypothesisViolated& e) {
    if (expect_rejection) {
      out.status = TrialStatus::hypothesis_failure;
    } else {
      out.reason = e.what();
    }
  } catch (const Error& e) {
    out.reason = e.what();
  }
  return out;
}

SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  const auto trials = static_cast<std::size_t>(config.trials);
  const Rng base(config.seed);
  std::vector<TrialOutcome> outcomes(trials);
  std::vector<std::uint64_t> seeds(trials);
  for (std::size_t i = 0; i < trials; ++i) seeds[i] = base.split(i).seed();

  const std::size_t n_shapes = config.shapes.size();
  const std::size_t n_gaps = config.gaps.size();
  auto shape_of = [&](std::size_t i) { return config.shapes[i % n_shapes]; };
  auto gap_of = [&](std::size_t i) { return config.gaps[(i / n_shapes) % n_gaps]; };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      outcomes[i] = run_trial(shape_of(i), gap_of(i), seeds[i], config.tol, config.samples);
    }
  };
  const int workers = std::max(1, std::min<int>(config.workers, config.trials));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  SuiteReport report;
  report.trials = config.trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto& o = outcomes[i];
    for (const auto& [name, value] : o.residuals) {
      auto& slot = report.worst_residuals[name];
      slot = std::max(slot, value);
    }
    switch (o.status) {
      case TrialStatus::pass:
        ++report.passes;
        break;
      case TrialStatus::hypothesis_failure:
        ++report.hypothesis_failures;
        break;
      case TrialStatus::failure:
        ++report.unexpected_failures;
        report.failures.push_back({static_cast<int>(i), seeds[i], shape_of(i), gap_of(i), o.reason});
        break;
    }
  }
  return report;
}

}  // namespace gkit
