// primeline: evaluate prime-series zeta forms, locate critical-line zeros,
// and emit deterministic CSV figure datasets.
//
// Exit codes: 0 success, 1 io failure, 2 usage error, 3 numeric
// singularity or failed evaluation, 4 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "primeline/beta.hpp"
#include "primeline/config.hpp"
#include "primeline/error.hpp"
#include "primeline/figures.hpp"
#include "primeline/meta.hpp"
#include "primeline/parse.hpp"
#include "primeline/primes.hpp"
#include "primeline/series.hpp"
#include "primeline/zeros.hpp"

namespace {

using primeline::errc;
using primeline::Error;
using primeline::series::Complex;
using primeline::series::EvalConfig;

struct GlobalOptions {
  EvalConfig cfg;
  std::string table_path = "data/zeta_zeros_100.txt";
  std::string output_dir = ".";
  std::string prime_cache;
  unsigned workers = 1;
  bool to_stdout = false;
};

int exit_code_for(const Error& e) {
  switch (e.code) {
    case errc::invalid_argument:
    case errc::parse:
      return 2;
    case errc::io:
      return 1;
    default:
      return 3;  // domain, singularity, degenerate_product, refinement/scan failure
  }
}

int fail(const Error& e) {
  std::cerr << "error (" << primeline::errc_name(e.code) << "): " << e.message << "\n";
  return exit_code_for(e);
}

std::string fmt(double v) { return primeline::figures::detail::format12(v); }

std::string fmt(Complex z) {
  const double im = z.imag();
  std::string out = fmt(z.real());
  out += (im < 0.0) ? "-" : "+";
  out += fmt(std::abs(im));
  out += "i";
  return out;
}

void echo_config(std::ostream& out, const EvalConfig& cfg) {
  out << "prime_count = " << cfg.prime_count << "\n";
  out << "eta_terms = " << cfg.eta_terms << "\n";
  out << "acceleration = " << primeline::series::acceleration_name(cfg.acceleration) << "\n";
  out << "pole_guard = " << fmt(cfg.pole_guard) << "\n";
}

// Resolves and primes the shared table once so worker threads never race the sieve.
std::optional<Error> warm_prime_table(const GlobalOptions& g) {
  auto r = primeline::primes::shared_table(g.cfg.prime_count, g.prime_cache);
  if (!r.ok()) return r.error();
  return std::nullopt;
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string function;
  std::string point;
  std::string meta_mode = "with-b-zeta";
  std::string fixed_b;
};

int run_eval(const GlobalOptions& g, const EvalArgs& args) {
  const auto parsed = primeline::parse_complex(args.point);
  if (!parsed.ok()) return fail(parsed.error());
  const Complex s = parsed.value();
  if (auto e = warm_prime_table(g)) return fail(*e);

  std::cout << "function = " << args.function << "\n";
  std::cout << "s = " << fmt(s) << "\n";
  echo_config(std::cout, g.cfg);

  const auto print_series = [](const primeline::Result<primeline::series::SeriesValue>& r) {
    if (!r.ok()) return fail(r.error());
    const auto& v = r.value();
    std::cout << "value = " << fmt(v.value) << "\n";
    std::cout << "terms_used = " << v.terms_used << "\n";
    std::cout << "truncation_estimate = " << fmt(v.truncation_estimate) << "\n";
    return 0;
  };
  const auto print_value = [](const primeline::Result<Complex>& r) {
    if (!r.ok()) return fail(r.error());
    std::cout << "value = " << fmt(r.value()) << "\n";
    return 0;
  };

  if (args.function == "zeta") return print_series(primeline::series::eta_zeta(s, g.cfg));
  if (args.function == "prime-zeta") return print_series(primeline::series::prime_zeta_trunc(s, g.cfg));
  if (args.function == "alt-prime-zeta")
    return print_series(primeline::series::alt_prime_zeta_trunc(s, g.cfg));
  if (args.function == "euler-product")
    return print_series(primeline::series::euler_product_trunc(s, g.cfg));
  if (args.function == "remainder") return print_series(primeline::series::remainder_trunc(s, g.cfg));
  if (args.function == "b-zeta") return print_value(primeline::beta::b_zeta(s, g.cfg));
  if (args.function == "b-m") return print_value(primeline::beta::b_m(s, g.cfg));

  // meta: resolve b per mode so the record shows which b fed the evaluation.
  std::cout << "meta_mode = " << args.meta_mode << "\n";
  primeline::Result<Complex> b = Complex(0.0, 0.0);
  if (args.meta_mode == "with-b-zeta") {
    b = primeline::beta::b_zeta(s, g.cfg);
  } else if (args.meta_mode == "with-b-m") {
    b = primeline::beta::b_m(s, g.cfg);
  } else {
    if (args.fixed_b.empty())
      return fail(primeline::make_error(errc::invalid_argument, "--fixed-b is required with --meta-mode fixed"));
    b = primeline::parse_complex(args.fixed_b);
  }
  if (!b.ok()) return fail(b.error());
  std::cout << "b = " << fmt(b.value()) << "\n";
  return print_value(primeline::meta::meta(s, b.value(), g.cfg));
}

// --- find-zeros ------------------------------------------------------------

struct FindZerosArgs {
  double t_min = 0.0;
  double t_max = 0.0;
  double step = 0.05;
  double detection_threshold = 0.05;
  double zeta_gate = 1e-3;
  double refine_tol = 1e-9;
  double match_tol = 1e-3;
  std::string report_path;
};

nlohmann::ordered_json candidate_json(const primeline::zerofinder::ZeroCandidate& c) {
  nlohmann::ordered_json j;
  j["t"] = c.t;
  j["bracket_lo"] = c.bracket_lo;
  j["bracket_hi"] = c.bracket_hi;
  j["residual_at_t"] = c.residual_at_t;
  j["zeta_mod_at_t"] = c.zeta_mod_at_t;
  if (c.matched_reference)
    j["matched_reference"] = *c.matched_reference;
  else
    j["matched_reference"] = nullptr;
  return j;
}

int run_find_zeros(const GlobalOptions& g, const FindZerosArgs& args) {
  auto table = primeline::zerofinder::load_reference_table(g.table_path);
  if (!table.ok()) return fail(table.error());
  if (auto e = warm_prime_table(g)) return fail(*e);

  primeline::zerofinder::ScanOptions options;
  options.detection_threshold = args.detection_threshold;
  options.zeta_gate = args.zeta_gate;
  options.refine_tol = args.refine_tol;
  options.workers = g.workers;

  std::size_t singular_points = 0;
  auto scanned = primeline::zerofinder::scan_critical_line(args.t_min, args.t_max, args.step,
                                                           g.cfg, options, &singular_points);
  if (!scanned.ok()) return fail(scanned.error());
  auto candidates = scanned.value();

  auto verified = primeline::zerofinder::verify_against_table(candidates, table.value(),
                                                              args.match_tol, args.t_min, args.t_max);
  if (!verified.ok()) return fail(verified.error());
  const auto& report = verified.value();
  for (const auto& m : report.matches) candidates[m.candidate_index].matched_reference = m.reference;

  std::ofstream report_file;
  if (!args.report_path.empty()) {
    report_file.open(args.report_path);
    if (!report_file)
      return fail(primeline::make_error(errc::io, "cannot write report: " + args.report_path));
  }
  std::ostream& lines = args.report_path.empty() ? std::cout : report_file;
  for (const auto& c : candidates) lines << candidate_json(c).dump() << "\n";

  const std::size_t grid_points =
      primeline::figures::detail::grid_size(args.t_min, args.t_max, args.step);
  std::cout << "# scan: t in (" << fmt(args.t_min) << ", " << fmt(args.t_max) << "), step "
            << fmt(args.step) << ", grid_points = " << grid_points
            << ", singular_points = " << singular_points << "\n";
  std::cout << "# candidates = " << candidates.size() << "\n";
  for (const auto& m : report.matches)
    std::cout << "# match: t = " << fmt(m.candidate_t) << ", reference = " << fmt(m.reference)
              << ", delta = " << fmt(m.delta) << "\n";
  for (double t : report.misses) std::cout << "# miss: t = " << fmt(t) << "\n";
  for (double r : report.duplicates) std::cout << "# duplicate: reference = " << fmt(r) << "\n";
  for (double r : report.false_negatives)
    std::cout << "# false_negative: reference = " << fmt(r) << "\n";
  std::cout << "# matched = " << report.matches.size() << ", misses = " << report.misses.size()
            << ", duplicates = " << report.duplicates.size()
            << ", false_negatives = " << report.false_negatives.size()
            << ", references_in_range = " << report.in_range_reference_count << "\n";
  std::cout << "# verification: " << (report.clean() ? "PASS" : "FAIL") << "\n";
  return report.clean() ? 0 : 4;
}

// --- figure ----------------------------------------------------------------

struct FigureArgs {
  std::string name;
  std::string zeros;
  double alpha_min = -1.0;
  double alpha_max = -1.0;
  double alpha_step = -1.0;
  double divergence_threshold = 1e-8;
};

primeline::Result<std::pair<std::size_t, std::size_t>> parse_zero_range(const std::string& text) {
  const auto dots = text.find("..");
  std::size_t first = 0, last = 0;
  int tail = -1;
  if (dots == std::string::npos) {
    if (std::sscanf(text.c_str(), "%zu%n", &first, &tail) != 1 ||
        tail != static_cast<int>(text.size()))
      return primeline::make_error(errc::parse, "zero range must look like 3 or 1..4: " + text);
    last = first;
  } else {
    const std::string head = text.substr(0, dots), rest = text.substr(dots + 2);
    if (std::sscanf(head.c_str(), "%zu%n", &first, &tail) != 1 ||
        tail != static_cast<int>(head.size()))
      return primeline::make_error(errc::parse, "zero range must look like 3 or 1..4: " + text);
    if (std::sscanf(rest.c_str(), "%zu%n", &last, &tail) != 1 ||
        tail != static_cast<int>(rest.size()))
      return primeline::make_error(errc::parse, "zero range must look like 3 or 1..4: " + text);
  }
  if (first == 0 || last < first)
    return primeline::make_error(errc::invalid_argument, "zero range must satisfy 1 <= first <= last");
  return std::pair(first, last);
}

int emit_to(const GlobalOptions& g, const std::string& file_name,
            const std::function<primeline::Result<std::size_t>(std::ostream&)>& emitter) {
  if (g.to_stdout) {
    auto r = emitter(std::cout);
    if (!r.ok()) return fail(r.error());
    return 0;
  }
  std::filesystem::path path = std::filesystem::path(g.output_dir) / file_name;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) return fail(primeline::make_error(errc::io, "cannot write: " + path.string()));
  auto r = emitter(out);
  if (!r.ok()) return fail(r.error());
  out.close();
  std::cout << "wrote " << path.string() << " (" << r.value() << " rows)\n";
  return 0;
}

int run_figure(const GlobalOptions& g, const FigureArgs& args) {
  const bool panel = args.name == "appendixA" || args.name == "appendixB";
  double alpha_min = args.alpha_min, alpha_max = args.alpha_max, step = args.alpha_step;
  if (alpha_min < 0.0) alpha_min = panel ? 0.1 : 0.1;
  if (alpha_max < 0.0) alpha_max = panel ? 0.9 : (args.name == "fig1" ? 1.5 : 0.9);
  if (step < 0.0) step = panel ? 0.05 : 0.01;

  if (auto e = warm_prime_table(g)) return fail(*e);

  if (!panel) {
    return emit_to(g, args.name + ".csv", [&](std::ostream& out) {
      return primeline::figures::emit_real_axis_scan(out, alpha_min, alpha_max, step, g.cfg,
                                                     args.divergence_threshold, g.workers);
    });
  }

  auto table = primeline::zerofinder::load_reference_table(g.table_path);
  if (!table.ok()) return fail(table.error());
  auto range = parse_zero_range(args.zeros.empty() ? (args.name == "appendixA" ? "1..10" : "1..4")
                                                   : args.zeros);
  if (!range.ok()) return fail(range.error());
  const auto [first, last] = range.value();

  if (args.name == "appendixA") {
    return emit_to(g, "appendixA.csv", [&](std::ostream& out) {
      return primeline::figures::emit_zero_panel(out, first, last, alpha_min, alpha_max, step,
                                                 table.value(), g.cfg, g.workers);
    });
  }
  // appendixB: one file per zero, matching the one-panel-per-zero layout.
  for (std::size_t idx = first; idx <= last; ++idx) {
    char name[40];
    std::snprintf(name, sizeof(name), "appendixB_zero%02zu.csv", idx);
    const int rc = emit_to(g, name, [&](std::ostream& out) {
      return primeline::figures::emit_zero_panel(out, idx, idx, alpha_min, alpha_max, step,
                                                 table.value(), g.cfg, g.workers);
    });
    if (rc != 0) return rc;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime-series zeta evaluation, critical-line zero location, figure datasets"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; '#' starts a comment");

  GlobalOptions g;
  const unsigned hw = std::thread::hardware_concurrency();
  g.workers = hw ? hw : 1;

  app.add_option("-K,--primes", g.cfg.prime_count, "number of primes in every truncated series")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--eta-terms", g.cfg.eta_terms, "eta series length per stage (direct + accelerated)")
      ->check(CLI::Range(std::uint32_t{8}, std::uint32_t{100000}))
      ->capture_default_str();
  std::map<std::string, primeline::series::Acceleration> accel_names{
      {"euler_transform", primeline::series::Acceleration::euler_transform},
      {"direct_partial_sum", primeline::series::Acceleration::direct_partial_sum}};
  app.add_option("--acceleration", g.cfg.acceleration, "eta summation scheme")
      ->transform(CLI::CheckedTransformer(accel_names, CLI::ignore_case))
      ->default_str("euler_transform");
  app.add_option("--pole-guard", g.cfg.pole_guard, "singularity guard radius for denominators")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--table", g.table_path, "reference zero ordinate table")->capture_default_str();
  app.add_option("--output-dir", g.output_dir, "directory for figure CSV files")
      ->capture_default_str();
  app.add_option("--prime-cache", g.prime_cache,
                 "prime cache file; overrides $" + std::string(primeline::primes::kPrimeCacheEnvVar));
  app.add_option("-j,--workers", g.workers, "grid evaluation threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate one function at a complex point");
  eval->fallthrough();
  eval->add_option("function", eval_args.function, "function name")
      ->required()
      ->check(CLI::IsMember({"zeta", "prime-zeta", "alt-prime-zeta", "euler-product", "remainder",
                             "meta", "b-zeta", "b-m"}));
  eval->add_option("s", eval_args.point, "complex point, written a+bi")->required();
  eval->add_option("--meta-mode", eval_args.meta_mode, "b used by meta")
      ->check(CLI::IsMember({"with-b-zeta", "with-b-m", "fixed"}))
      ->capture_default_str();
  eval->add_option("--fixed-b", eval_args.fixed_b, "b value for --meta-mode fixed");

  FindZerosArgs fz_args;
  auto* fz = app.add_subcommand("find-zeros", "scan the critical line and verify against the table");
  fz->fallthrough();
  fz->add_option("t_min", fz_args.t_min, "lower ordinate bound")->required();
  fz->add_option("t_max", fz_args.t_max, "upper ordinate bound")->required();
  fz->add_option("--step", fz_args.step, "scan grid spacing")->capture_default_str();
  fz->add_option("--detection-threshold", fz_args.detection_threshold,
                 "grid residual below this opens a bracket")
      ->capture_default_str();
  fz->add_option("--zeta-gate", fz_args.zeta_gate, "|zeta| acceptance bound for refined candidates")
      ->capture_default_str();
  fz->add_option("--refine-tol", fz_args.refine_tol, "bracket width target for refinement")
      ->capture_default_str();
  fz->add_option("--match-tol", fz_args.match_tol, "verification match distance")
      ->capture_default_str();
  fz->add_option("--report", fz_args.report_path, "JSON-lines candidate report path (default: stdout)");

  FigureArgs fig_args;
  auto* fig = app.add_subcommand("figure", "emit a figure dataset as CSV");
  fig->fallthrough();
  fig->add_option("name", fig_args.name, "figure id")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "appendixA", "appendixB"}));
  fig->add_option("--zeros", fig_args.zeros, "1-based zero index range, e.g. 1..4");
  fig->add_option("--alpha-min", fig_args.alpha_min, "grid start (default per figure)");
  fig->add_option("--alpha-max", fig_args.alpha_max, "grid end (default per figure)");
  fig->add_option("--alpha-step", fig_args.alpha_step, "grid spacing (default per figure)");
  fig->add_option("--divergence-threshold", fig_args.divergence_threshold,
                  "relative beta divergence defining the crossover footer")
      ->capture_default_str();
  fig->add_flag("--stdout", g.to_stdout, "write CSV to standard output instead of files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  if (auto e = primeline::series::validate(g.cfg)) return fail(*e);
  if (eval->parsed()) return run_eval(g, eval_args);
  if (fz->parsed()) return run_find_zeros(g, fz_args);
  return run_figure(g, fig_args);
}
