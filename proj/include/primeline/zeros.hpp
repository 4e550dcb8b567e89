#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "primeline/beta.hpp"
#include "primeline/config.hpp"
#include "primeline/error.hpp"
#include "primeline/series.hpp"

namespace primeline::zerofinder {

using series::Complex;
using series::EvalConfig;

// A bracketed critical-line ordinate: the refined t, the bracket it came from,
// the beta residual there, and |zeta| as an independent cross-check.
struct ZeroCandidate {
  double t;
  double bracket_lo;
  double bracket_hi;
  double residual_at_t;
  double zeta_mod_at_t;
  std::optional<double> matched_reference;
};

class ReferenceZeroTable {
 public:
  explicit ReferenceZeroTable(std::vector<double> ordinates) : ordinates_(std::move(ordinates)) {}
  const std::vector<double>& ordinates() const { return ordinates_; }
  std::size_t size() const { return ordinates_.size(); }
  double operator[](std::size_t i) const { return ordinates_[i]; }

 private:
  std::vector<double> ordinates_;
};

// File format: one positive decimal ordinate per line, ascending; '#' comments.
inline Result<ReferenceZeroTable> load_reference_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) return make_error(errc::io, "cannot open reference table: " + path);
  std::vector<double> ordinates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(begin, end - begin + 1);
    char* parse_end = nullptr;
    const double v = std::strtod(token.c_str(), &parse_end);
    if (parse_end != token.c_str() + token.size())
      return make_error(errc::parse, path + ":" + std::to_string(line_no) + ": not a number: " + token);
    if (!(v > 0.0))
      return make_error(errc::parse, path + ":" + std::to_string(line_no) + ": ordinates must be positive");
    if (!ordinates.empty() && v <= ordinates.back())
      return make_error(errc::parse, path + ":" + std::to_string(line_no) + ": ordinates must be strictly increasing");
    ordinates.push_back(v);
  }
  if (ordinates.empty()) return make_error(errc::io, "reference table has no ordinates: " + path);
  return ReferenceZeroTable(std::move(ordinates));
}

struct ScanOptions {
  double detection_threshold = 0.05;  // grid residual below this opens a bracket
  double zeta_gate = 1e-3;            // refined candidates must have |zeta| below this
  double refine_tol = 1e-9;           // bracket width target for the internal refinement
  unsigned workers = 1;               // grid evaluation threads; output is order-independent
};

namespace detail {

// Residual of the zero criterion at s = 1/2 + ti; singular points yield nullopt.
inline std::optional<double> residual_at(double t, const EvalConfig& cfg) {
  auto pair = beta::beta_pair(Complex(0.5, t), cfg);
  if (!pair.ok()) return std::nullopt;
  return pair.value().residual;
}

// Golden-section minimization over [lo, hi]; singular evaluations repel the
// search as huge values so poles cannot masquerade as minima. The running best
// never regresses. Returns (t, residual) at the best probe once the bracket
// width reaches tol, or nullopt if the iteration cap is hit first.
struct MinimizeOutcome {
  double t;
  double residual;
  double lo;
  double hi;
  bool converged;
};

inline MinimizeOutcome minimize_residual(double lo, double hi, double tol, const EvalConfig& cfg) {
  constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2
  constexpr int kMaxIterations = 400;
  const auto eval = [&cfg](double t) {
    const auto r = residual_at(t, cfg);
    return r ? *r : 1e300;
  };
  double c = hi - kGolden * (hi - lo);
  double d = lo + kGolden * (hi - lo);
  double fc = eval(c);
  double fd = eval(d);
  double best_t = fc <= fd ? c : d;
  double best_f = std::min(fc, fd);
  int iterations = 0;
  while (hi - lo > tol && iterations < kMaxIterations) {
    ++iterations;
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kGolden * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kGolden * (hi - lo);
      fd = eval(d);
    }
    if (fc < best_f) { best_f = fc; best_t = c; }
    if (fd < best_f) { best_f = fd; best_t = d; }
  }
  return {best_t, best_f, lo, hi, hi - lo <= tol};
}

inline double zeta_mod_at(double t, const EvalConfig& cfg) {
  auto z = series::eta_zeta(Complex(0.5, t), cfg);
  return z.ok() ? std::abs(z.value().value) : std::numeric_limits<double>::infinity();
}

}  // namespace detail

// Scan s = 1/2 + ti over [t_min, t_max]: evaluate the residual on the grid,
// bracket each local minimum below the detection threshold, refine it by
// golden section, and keep it only if |zeta| at the refined point passes the
// gate (spurious residual dips between zeros refine to points where |zeta| is
// order one; true zeros drive it below 1e-10). Singular grid points are
// skipped; their count is reported through singular_points when non-null.
inline Result<std::vector<ZeroCandidate>> scan_critical_line(
    double t_min, double t_max, double step, const EvalConfig& cfg,
    const ScanOptions& options = {}, std::size_t* singular_points = nullptr) {
  if (auto e = validate(cfg)) return *e;
  if (!(t_min > 0.0) || !(t_max > t_min))
    return make_error(errc::invalid_argument, "scan range must satisfy 0 < t_min < t_max");
  if (!(step > 0.0) || step > 0.5)
    return make_error(errc::invalid_argument, "scan step must be in (0, 0.5]");
  if (!(options.detection_threshold > 0.0) || !(options.zeta_gate > 0.0) || !(options.refine_tol > 0.0))
    return make_error(errc::invalid_argument, "scan thresholds must be positive");

  const std::size_t n = static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
  std::vector<std::optional<double>> grid(n);
  const auto eval_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < n; i += stride)
      grid[i] = detail::residual_at(t_min + static_cast<double>(i) * step, cfg);
  };
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1 || n < 32) {
    eval_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(eval_range, w, workers);
    for (auto& th : pool) th.join();
  }

  std::size_t singular = 0;
  for (const auto& r : grid)
    if (!r) ++singular;
  if (singular_points) *singular_points = singular;
  if (singular == n) return make_error(errc::scan_failed, "every grid point was singular");

  std::vector<ZeroCandidate> candidates;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!grid[i - 1] || !grid[i] || !grid[i + 1]) continue;
    if (*grid[i] >= options.detection_threshold) continue;
    if (*grid[i] > *grid[i - 1] || *grid[i] > *grid[i + 1]) continue;
    const double lo = t_min + static_cast<double>(i - 1) * step;
    const double hi = t_min + static_cast<double>(i + 1) * step;
    const auto refined = detail::minimize_residual(lo, hi, options.refine_tol, cfg);
    const double zeta_mod = detail::zeta_mod_at(refined.t, cfg);
    if (zeta_mod >= options.zeta_gate) continue;
    candidates.push_back(ZeroCandidate{refined.t, lo, hi, refined.residual, zeta_mod, std::nullopt});
  }

  // Plateau ties can open two brackets onto one minimum; keep the deeper probe.
  std::vector<ZeroCandidate> unique;
  for (const auto& c : candidates) {
    if (!unique.empty() && std::abs(c.t - unique.back().t) < step / 2.0) {
      if (c.residual_at_t < unique.back().residual_at_t) unique.back() = c;
      continue;
    }
    unique.push_back(c);
  }
  return unique;
}

// Re-minimize within the candidate's bracket until its width is at most tol.
inline Result<ZeroCandidate> refine_zero(const ZeroCandidate& candidate, double tol, const EvalConfig& cfg) {
  if (auto e = validate(cfg)) return *e;
  if (!(candidate.bracket_lo < candidate.bracket_hi))
    return make_error(errc::invalid_argument, "degenerate bracket");
  if (!(tol > 0.0)) return make_error(errc::invalid_argument, "tol must be positive");
  const auto outcome = detail::minimize_residual(candidate.bracket_lo, candidate.bracket_hi, tol, cfg);
  if (!outcome.converged)
    return make_error(errc::refinement_failed,
                      "iteration cap reached; best iterate t = " + std::to_string(outcome.t));
  ZeroCandidate refined = candidate;
  refined.t = outcome.t;
  refined.bracket_lo = outcome.lo;
  refined.bracket_hi = outcome.hi;
  refined.residual_at_t = outcome.residual;
  refined.zeta_mod_at_t = detail::zeta_mod_at(outcome.t, cfg);
  return refined;
}

struct MatchRecord {
  std::size_t candidate_index;
  double candidate_t;
  double reference;
  double delta;
};

struct VerificationReport {
  std::vector<MatchRecord> matches;
  std::vector<double> misses;           // candidate t with no reference within tol
  std::vector<double> duplicates;       // references claimed by more than one candidate
  std::vector<double> false_negatives;  // in-range references with no candidate
  std::size_t in_range_reference_count = 0;
  bool clean() const { return misses.empty() && false_negatives.empty(); }
};

// Pair candidates with nearest reference ordinates; [t_min, t_max] bounds which
// references count as reachable when tallying false negatives.
inline Result<VerificationReport> verify_against_table(
    const std::vector<ZeroCandidate>& candidates, const ReferenceZeroTable& table,
    double tol, double t_min, double t_max) {
  if (table.size() == 0) return make_error(errc::invalid_argument, "reference table is empty");
  if (!(tol > 0.0)) return make_error(errc::invalid_argument, "tol must be positive");
  if (!(t_min < t_max)) return make_error(errc::invalid_argument, "t_min must be below t_max");

  const auto& refs = table.ordinates();
  VerificationReport report;
  std::vector<bool> claimed(refs.size(), false);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double t = candidates[i].t;
    auto it = std::lower_bound(refs.begin(), refs.end(), t);
    std::size_t nearest = static_cast<std::size_t>(std::distance(refs.begin(), it));
    if (nearest == refs.size() ||
        (nearest > 0 && t - refs[nearest - 1] < refs[nearest] - t))
      --nearest;
    const double delta = std::abs(t - refs[nearest]);
    if (delta > tol) {
      report.misses.push_back(t);
      continue;
    }
    if (claimed[nearest]) report.duplicates.push_back(refs[nearest]);
    claimed[nearest] = true;
    report.matches.push_back(MatchRecord{i, t, refs[nearest], delta});
  }
  for (std::size_t j = 0; j < refs.size(); ++j) {
    if (refs[j] < t_min || refs[j] > t_max) continue;
    ++report.in_range_reference_count;
    if (!claimed[j]) report.false_negatives.push_back(refs[j]);
  }
  return report;
}

}  // namespace primeline::zerofinder
