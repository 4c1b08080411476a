#include "gramian/cli.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gramian/construction.hpp"
#include "gramian/json_io.hpp"
#include "gramian/lab.hpp"

namespace gkit::cli {

namespace {

constexpr const char* kTolEnv = "GRAMIAN_KIT_TOL";

/// Raised for bad flag values that CLI11 cannot catch at parse time.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json_argument(const std::string& value) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && value[first] == '{') return parse_json(value);
  std::ifstream in(value);
  if (!in) throw InvalidInput("cannot read " + value);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

SpaceShape parse_shape(const std::string& text) {
  const auto x = text.find('x');
  SpaceShape s{0, 0};
  if (x == std::string::npos) throw UsageError("shape \"" + text + "\" is not of the form NxD");
  const auto* begin = text.data();
  const auto r1 = std::from_chars(begin, begin + x, s.n);
  const auto r2 = std::from_chars(begin + x + 1, begin + text.size(), s.d);
  if (r1.ec != std::errc{} || r1.ptr != begin + x || r2.ec != std::errc{} ||
      r2.ptr != begin + text.size() || s.n < 1 || s.d < 1) {
    throw UsageError("shape \"" + text + "\" is not of the form NxD");
  }
  return s;
}

struct Options {
  std::string out_path;
  std::optional<double> eq_rel;
  std::optional<double> psd_abs;
  std::optional<double> series_term;
  std::optional<int> series_max_terms;

  std::string p_arg, q_arg, t_arg;
  int samples = 32;
  std::uint64_t seed = 0;

  int n = 2, d = 1;
  std::optional<double> gap;
  int rank = 1;
  std::optional<int> rank_q;
  bool no_conjugate = false;

  int trials = 200;
  int workers = 1;
  int suite_samples = 16;
  std::vector<std::string> shapes;
  std::vector<double> gaps;
};

Tolerances resolve_tolerances(const Options& o) {
  Tolerances tol;
  if (const char* env = std::getenv(kTolEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) {
      throw UsageError(std::string(kTolEnv) + " must be a positive number, got \"" + env + "\"");
    }
    tol.eq_rel = v;
  }
  if (o.eq_rel) tol.eq_rel = *o.eq_rel;
  if (o.psd_abs) tol.psd_abs = *o.psd_abs;
  if (o.series_term) tol.series_term = *o.series_term;
  if (o.series_max_terms) tol.series_max_terms = *o.series_max_terms;
  try {
    tol.validate();
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  return tol;
}

void emit(const json& j, const Options& o, std::ostream& out) {
  const std::string text = dump(j);
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file || !(file << text)) throw InvalidInput("cannot write " + o.out_path);
}

int do_construct(const Options& o, const Tolerances& tol, std::ostream& out) {
  const auto p = operator_from_json(load_json_argument(o.p_arg));
  const auto q = operator_from_json(load_json_argument(o.q_arg));
  try {
    const auto result = build(p, q, tol, o.samples, o.seed);
    emit(construction_to_json(result, tol), o, out);
    return kSuccess;
  } catch (const HypothesisViolated& e) {
    emit({{"status", "hypothesis_violated"}, {"gap", e.gap()}, {"message", e.what()}}, o, out);
    return kHypothesisViolated;
  }
}

int do_classify(const Options& o, const Tolerances& tol, std::ostream& out) {
  const auto t = operator_from_json(load_json_argument(o.t_arg));
  emit(report_to_json(classify(t, tol)), o, out);
  return kSuccess;
}

int do_sample(const Options& o, std::ostream& out) {
  SampleSpec spec{{o.n, o.d}, o.gap, o.rank, o.rank_q.value_or(o.rank), o.seed, !o.no_conjugate};
  emit(pair_to_json(sample_projection_pair(spec)), o, out);
  return kSuccess;
}

int do_remark(const Options& o, const Tolerances& tol, std::ostream& out) {
  emit(remark_to_json(remark_counterexample({o.n, o.d}), tol), o, out);
  return kSuccess;
}

int do_suite(const Options& o, const Tolerances& tol, std::ostream& out) {
  SuiteConfig config;
  config.trials = o.trials;
  config.seed = o.seed;
  config.workers = o.workers;
  config.samples = o.suite_samples;
  config.tol = tol;
  if (!o.shapes.empty()) {
    config.shapes.clear();
    for (const auto& s : o.shapes) config.shapes.push_back(parse_shape(s));
  }
  if (!o.gaps.empty()) config.gaps = o.gaps;
  const auto report = run_suite(config);
  emit(suite_report_to_json(report, config), o, out);
  return report.unexpected_failures == 0 ? kSuccess : kInputError;
}

void add_common(CLI::App& sub, Options& o) {
  sub.add_option("--out", o.out_path, "Write JSON to this file instead of stdout");
  sub.add_option("--eq-rel", o.eq_rel, "Relative residual bound for operator equality");
  sub.add_option("--psd-abs", o.psd_abs, "Eigenvalue floor scale for PSD decisions");
  sub.add_option("--series-term", o.series_term, "Binomial series truncation bound");
  sub.add_option("--series-max-terms", o.series_max_terms, "Binomial series term cap");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial gramian isometries between close projections on a matrix Loynes space",
               args.empty() ? "gramian_kit" : args.front()};
  app.require_subcommand(1, 1);
  Options o;

  auto* construct = app.add_subcommand("construct", "Build T = QA^{-1/2}P from projections P, Q");
  construct->add_option("--p", o.p_arg, "Projection P: JSON file or inline JSON")->required();
  construct->add_option("--q", o.q_arg, "Projection Q: JSON file or inline JSON")->required();
  construct->add_option("--samples", o.samples, "Sampled vectors for the vector-level checks")
      ->check(CLI::NonNegativeNumber);
  construct->add_option("--seed", o.seed, "Seed for the sampled vectors");
  add_common(*construct, o);

  auto* classify_cmd = app.add_subcommand("classify", "Classify an operator as a partial isometry");
  classify_cmd->add_option("--t", o.t_arg, "Operator T: JSON file or inline JSON")->required();
  add_common(*classify_cmd, o);

  auto* sample = app.add_subcommand("sample", "Sample a projection pair with a prescribed gap");
  sample->add_option("--n", o.n, "Module rank")->check(CLI::PositiveNumber);
  sample->add_option("--d", o.d, "Matrix-algebra degree")->check(CLI::PositiveNumber);
  sample->add_option("--gap", o.gap, "Target ||P - Q|| in [0, 1]");
  sample->add_option("--rank", o.rank, "Rank of P (and of Q unless --rank-q)")->check(CLI::NonNegativeNumber);
  sample->add_option("--rank-q", o.rank_q, "Rank of Q")->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", o.seed, "Seed")->required();
  sample->add_flag("--no-conjugate", o.no_conjugate, "Skip the random unitary conjugation");
  add_common(*sample, o);

  auto* remark = app.add_subcommand("remark-example", "Orthogonal equal-rank pair at gap 1 with its partial isometry");
  remark->add_option("--n", o.n, "Module rank")->check(CLI::PositiveNumber);
  remark->add_option("--d", o.d, "Matrix-algebra degree")->check(CLI::PositiveNumber);
  add_common(*remark, o);

  auto* suite = app.add_subcommand("suite", "Run the randomized construction suite");
  suite->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber);
  suite->add_option("--seed", o.seed, "Suite seed")->required();
  suite->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  suite->add_option("--samples", o.suite_samples, "Sampled vectors per construction")
      ->check(CLI::NonNegativeNumber);
  suite->add_option("--shapes", o.shapes, "Comma-separated NxD shapes")->delimiter(',');
  suite->add_option("--gaps", o.gaps, "Comma-separated gaps")->delimiter(',');
  add_common(*suite, o);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("gramian_kit");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    const Tolerances tol = resolve_tolerances(o);
    if (construct->parsed()) return do_construct(o, tol, out);
    if (classify_cmd->parsed()) return do_classify(o, tol, out);
    if (sample->parsed()) return do_sample(o, out);
    if (remark->parsed()) return do_remark(o, tol, out);
    return do_suite(o, tol, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace gkit::cli
