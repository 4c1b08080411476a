// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>

#include <Eigen/SVD>

#include "gramian/cli.hpp"
#include "gramian/construction.hpp"
#include "gramian/json_io.hpp"
#include "gramian/lab.hpp"

namespace {

using namespace gkit;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

double max_of(const SuiteReport& rep, std::initializer_list<std::string_view> names) {
  double worst = 0;
  for (const auto n : names) {
    const auto it = rep.worst_residuals.find(std::string(n));
    worst = std::max(worst, it == rep.worst_residuals.end() ? INFINITY : it->second);
  }
  return worst;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Orthogonal projection onto the column space of m, computed from a fresh SVD
// with its own rank cut so it shares no code with the classifier.
ComplexMatrix range_projection_oracle(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double cut = 1e-8 * std::max(1.0, s.size() ? s(0) : 0.0);
  long r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  const ComplexMatrix u = svd.matrixU().leftCols(r);
  return u * u.adjoint();
}

SuiteConfig sweep_config() {
  SuiteConfig c;
  c.trials = 200;
  c.seed = 42;
  return c;
}

Check soundness_sweep(const SuiteReport& rep, double seconds) {
  Check c;
  c.require(rep.passes == 200, std::to_string(rep.passes) + "/200 builds passed");
  double worst = 0;
  for (const auto& e : ProofTrace{}.entries()) worst = std::max(worst, max_of(rep, {e.name}));
  c.require(worst <= 1e-8, "max trace residual " + fmt(worst));
  c.require(seconds < 10, "runtime " + fmt(seconds) + " s");
  c.detail = c.ok ? "max trace residual " + fmt(worst) + ", " + fmt(seconds) + " s" : c.detail;
  return c;
}

Check golden_case() {
  Check c;
  const double r3 = std::sqrt(3.0);
  ComplexMatrix p(2, 2), q(2, 2), a(2, 2), t(2, 2);
  p << 1, 0, 0, 0;
  q << 0.75, r3 / 4, r3 / 4, 0.25;
  a << 0.75, 0, 0, 1;
  t << r3 / 2, 0, 0.5, 0;
  const auto res = build(GramianOperator::from_data({2, 1}, p), GramianOperator::from_data({2, 1}, q));
  const double err = std::max({spectral_norm(res.a.data - a), spectral_norm(res.t.data - t),
                               spectral_norm(res.t.data.adjoint() * res.t.data - p),
                               spectral_norm(res.t.data * res.t.data.adjoint() - q)});
  c.require(err <= 1e-12, "max deviation " + fmt(err));
  c.detail = c.ok ? "max deviation " + fmt(err) : c.detail;
  return c;
}

Check trace_identities(const SuiteReport& rep) {
  Check c;
  const double ids = max_of(rep, {"neumann_bound", "positivity_worst", "positivity_global", "PA_commute",
                                  "PA_eq_PQP", "Tstar_formula", "TP_eq_T", "TstarT_eq_P", "TTstar_formula",
                                  "TTstar_eq_Q"});
  const double loewner = max_of(rep, {"TTstar_leq_Q", "complement_leq"});
  c.require(ids <= 1e-8, "identity residual " + fmt(ids));
  c.require(loewner <= 1e-8, "Loewner deficit " + fmt(loewner));
  c.detail = c.ok ? "identities " + fmt(ids) + ", Loewner " + fmt(loewner) : c.detail;
  return c;
}

Check sqrt_cross_validation(const SuiteReport& rep) {
  Check c;
  const double agree = max_of(rep, {"sqrt_method_agreement"});
  c.require(agree <= 1e-9, "series vs spectral " + fmt(agree));

  // ‖A − I‖ exactly at, just past, and well past the rejection threshold.
  for (double excess : {1 - 1e-6, 1 - 5e-7, 1.0, 1.5}) {
    ComplexMatrix m = ComplexMatrix::Identity(3, 3);
    m(1, 1) = 1 - excess;
    m(2, 2) = 1 + 0.5 * excess;
    bool rejected = false;
    try {
      (void)inv_sqrt_series(m);
    } catch (const SeriesDivergence&) {
      rejected = true;
    } catch (const std::exception&) {
    }
    c.require(rejected, "series accepted ‖A−I‖ = " + fmt(excess));
  }
  c.detail = c.ok ? "series vs spectral " + fmt(agree) : c.detail;
  return c;
}

struct ClassifierRun {
  Check equivalence;
  Check projections;
};

ClassifierRun classifier_checks() {
  ClassifierRun out;
  Rng rng(1234);
  double worst_pi = 0;
  double worst_proj = 0;
  for (int i = 0; i < 200; ++i) {
    const SpaceShape s{static_cast<int>(rng.uniform_int(1, 4)), static_cast<int>(rng.uniform_int(1, 3))};
    const int rank = static_cast<int>(rng.uniform_int(0, s.dim()));
    auto t = sample_partial_isometry(s, rank, rng.next_u64());
    const bool perturbed = i >= 100;
    if (perturbed) {
      const double eps = std::pow(10.0, -1.0 - 2.0 * rng.uniform());
      t.data += eps * rng.gaussian(s.dim(), s.dim());
    }
    const auto r = classify(t);
    const bool all_same = r.cond_ii == r.cond_iii && r.cond_iii == r.cond_cstar && r.cond_cstar == r.cond_iv;
    out.equivalence.require(all_same, "verdicts disagree on operator " + std::to_string(i));
    out.equivalence.require(r.is_partial_isometry == !perturbed, "wrong verdict on operator " + std::to_string(i));
    if (!perturbed) {
      worst_pi = std::max(worst_pi, r.worst_condition_residual());
      const ComplexMatrix& m = t.data;
      const double e1 = spectral_norm(ComplexMatrix(m.adjoint() * m) - range_projection_oracle(m.adjoint()));
      const double e2 = spectral_norm(ComplexMatrix(m * m.adjoint()) - range_projection_oracle(m));
      worst_proj = std::max({worst_proj, e1, e2});
    }
  }
  out.equivalence.require(worst_pi <= 1e-10, "partial isometry residual " + fmt(worst_pi));
  out.projections.require(worst_proj <= 1e-8, "projection mismatch " + fmt(worst_proj));
  if (out.equivalence.ok) out.equivalence.detail = "200 operators, worst residual " + fmt(worst_pi);
  if (out.projections.ok) out.projections.detail = "100 partial isometries, worst " + fmt(worst_proj);
  return out;
}

Check boundedness() {
  Check c;
  Rng rng(77);
  double worst_adj = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = static_cast<int>(rng.uniform_int(1, 3));
    const SpaceShape in{static_cast<int>(rng.uniform_int(1, 4)), d};
    const SpaceShape out{static_cast<int>(rng.uniform_int(1, 4)), d};
    const auto t = GramianOperator::from_data(in, out, rng.gaussian(out.dim(), in.dim()));
    const double m = op_norm(t);
    const auto at = boundedness_certificate(t, m, 50, rng.next_u64());
    const auto below = boundedness_certificate(t, m * (1 - 1e-3), 50, rng.next_u64());
    c.require(at.global_ok && at.sampled_ok, "bound at op_norm rejected for operator " + std::to_string(i));
    c.require(!below.global_ok, "bound below op_norm accepted for operator " + std::to_string(i));
    worst_adj = std::max(worst_adj, std::abs(op_norm(adjoint(t)) - m));
  }
  c.require(worst_adj <= 1e-12, "‖T*‖ vs ‖T‖ " + fmt(worst_adj));
  if (c.ok) c.detail = "100 operators, ‖T*‖ − ‖T‖ ≤ " + fmt(worst_adj);
  return c;
}

Check orthogonal_counterexample() {
  Check c;
  for (const SpaceShape s : {SpaceShape{2, 1}, SpaceShape{4, 1}, SpaceShape{2, 2}}) {
    const auto ex = remark_counterexample(s);
    c.require(std::abs(ex.gap - 1) <= 1e-12, "gap " + fmt(ex.gap));
    c.require(ex.t.data.adjoint() * ex.t.data == ex.p.data, "T*T != P exactly");
    c.require(ex.t.data * ex.t.data.adjoint() == ex.q.data, "TT* != Q exactly");
    bool violated = false;
    try {
      (void)build(ex.p, ex.q);
    } catch (const HypothesisViolated&) {
      violated = true;
    }
    c.require(violated, "build accepted the orthogonal pair");
  }
  if (c.ok) c.detail = "gap 1, exact T*T = P and TT* = Q, build rejected";
  return c;
}

Check cli_determinism() {
  Check c;
  const std::vector<std::string> args{"gramian_kit", "suite", "--trials", "200", "--seed", "42"};
  std::ostringstream out1, out2, err;
  const int code1 = cli::run(args, out1, err);
  const int code2 = cli::run(args, out2, err);
  c.require(code1 == 0 && code2 == 0, "exit codes " + std::to_string(code1) + ", " + std::to_string(code2));
  c.require(!out1.str().empty() && out1.str() == out2.str(), "reports differ");
  if (c.ok) c.detail = std::to_string(out1.str().size()) + " identical bytes";
  return c;
}

}  // namespace

int main() {
  ::unsetenv("GRAMIAN_KIT_TOL");

  const auto start = std::chrono::steady_clock::now();
  const SuiteReport sweep = run_suite(sweep_config());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto classifier = classifier_checks();

  const std::vector<std::pair<std::string, Check>> results{
      {"1 soundness sweep (200 trials, seed 42)", soundness_sweep(sweep, seconds)},
      {"2 golden 2x2 case", golden_case()},
      {"3 construction identities and Loewner checks", trace_identities(sweep)},
      {"4 square-root cross-validation", sqrt_cross_validation(sweep)},
      {"5 partial isometry conditions agree", classifier.equivalence},
      {"6 initial/final projections match SVD", classifier.projections},
      {"7 boundedness certificate at op_norm", boundedness()},
      {"8 orthogonal pair counterexample", orthogonal_counterexample()},
      {"9 suite output is byte-identical", cli_determinism()},
  };

  int failed = 0;
  for (const auto& [name, check] : results) {
    std::printf("%s  %s: %s\n", check.ok ? "PASS" : "FAIL", name.c_str(), check.detail.c_str());
    failed += check.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
