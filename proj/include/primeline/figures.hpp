#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "primeline/beta.hpp"
#include "primeline/config.hpp"
#include "primeline/error.hpp"
#include "primeline/meta.hpp"
#include "primeline/series.hpp"
#include "primeline/zeros.hpp"

namespace primeline::figures {

using series::Complex;
using series::EvalConfig;

// One grid point of a convergence dataset. A row is ok only when every column
// evaluated; otherwise it is marked singular and the columns that did evaluate
// stay populated while the failed ones are emitted as empty cells, so singular
// points are visible but never erase neighbouring data.
struct ScanRow {
  double alpha;
  double t;
  std::optional<Complex> b_zeta;
  std::optional<Complex> b_m;
  std::optional<Complex> zeta;
  std::optional<Complex> meta;
  bool ok() const { return b_zeta && b_m && zeta && meta; }
};

namespace detail {

// Locale-independent shortest representation at 12 significant digits.
inline std::string format12(double v) {
  if (v == 0.0) return "0";  // canonicalize negative zero
  char buf[40];
  const auto out = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, out.ptr);
}

inline void append_cell(std::string& line, const std::optional<Complex>& v, bool real_part) {
  line.push_back(',');
  if (v) line += format12(real_part ? v->real() : v->imag());
}

inline void write_row(std::ostream& out, const ScanRow& row) {
  std::string line = format12(row.alpha);
  line.push_back(',');
  line += format12(row.t);
  append_cell(line, row.b_zeta, true);
  append_cell(line, row.b_zeta, false);
  append_cell(line, row.b_m, true);
  append_cell(line, row.b_m, false);
  append_cell(line, row.zeta, true);
  append_cell(line, row.zeta, false);
  append_cell(line, row.meta, true);
  append_cell(line, row.meta, false);
  line += row.ok() ? ",ok\n" : ",singular\n";
  out << line;
}

inline void write_header(std::ostream& out, const std::string& title, const EvalConfig& cfg) {
  out << "# " << title << "\n"
      << "# prime_count = " << cfg.prime_count << "\n"
      << "# eta_terms = " << cfg.eta_terms << "\n"
      << "# acceleration = " << series::acceleration_name(cfg.acceleration) << "\n"
      << "# meta_mode = with_b_zeta\n"
      << "alpha,t,re_b_zeta,im_b_zeta,re_b_m,im_b_m,re_zeta,im_zeta,re_meta,im_meta,status\n";
}

inline ScanRow evaluate_row(double alpha, double t, const EvalConfig& cfg) {
  const Complex s(alpha, t);
  ScanRow row{alpha, t, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  if (auto z = series::eta_zeta(s, cfg); z.ok()) row.zeta = z.value().value;
  if (auto bm = beta::b_m(s, cfg); bm.ok()) row.b_m = bm.value();
  if (auto bz = beta::b_zeta(s, cfg); bz.ok()) {
    row.b_zeta = bz.value();
    if (auto m = meta::meta(s, bz.value(), cfg); m.ok()) row.meta = m.value();
  }
  return row;
}

// Rows are computed index-parallel and assembled in grid order, so the bytes
// emitted do not depend on the worker count.
template <class PointAt>
inline std::vector<ScanRow> evaluate_grid(std::size_t n, unsigned workers,
                                          const EvalConfig& cfg, PointAt point_at) {
  std::vector<ScanRow> rows(n);
  const auto eval_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < n; i += stride) {
      const auto [alpha, t] = point_at(i);
      rows[i] = evaluate_row(alpha, t, cfg);
    }
  };
  const unsigned w = std::max(1u, workers);
  if (w == 1 || n < 32) {
    eval_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned i = 0; i < w; ++i) pool.emplace_back(eval_range, i, w);
    for (auto& th : pool) th.join();
  }
  return rows;
}

inline std::size_t grid_size(double lo, double hi, double step) {
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

}  // namespace detail

// Real-axis dataset, one row per alpha at s = alpha + 0i. The footer reports
// the measured crossover: the first grid alpha where the relative beta
// divergence |b_zeta - b_m| / max(|b_zeta|, |b_m|) exceeds the threshold.
// Left of the crossover the betas coincide to working precision; right of it
// zeta and the meta value coincide instead.
inline Result<std::size_t> emit_real_axis_scan(std::ostream& out, double alpha_min,
                                               double alpha_max, double step,
                                               const EvalConfig& cfg,
                                               double divergence_threshold = 1e-8,
                                               unsigned workers = 1) {
  if (auto e = validate(cfg)) return *e;
  if (!(alpha_min > 0.0) || !(alpha_max > alpha_min))
    return make_error(errc::invalid_argument, "alpha range must satisfy 0 < alpha_min < alpha_max");
  if (!(step > 0.0)) return make_error(errc::invalid_argument, "step must be positive");
  if (!(divergence_threshold > 0.0))
    return make_error(errc::invalid_argument, "divergence threshold must be positive");

  const std::size_t n = detail::grid_size(alpha_min, alpha_max, step);
  const auto rows = detail::evaluate_grid(
      n, workers, cfg,
      [&](std::size_t i) { return std::pair(alpha_min + static_cast<double>(i) * step, 0.0); });

  detail::write_header(out, "real-axis scan", cfg);
  std::optional<double> crossover;
  for (const auto& row : rows) {
    detail::write_row(out, row);
    if (!crossover && row.b_zeta && row.b_m) {
      const double scale = std::max(std::abs(*row.b_zeta), std::abs(*row.b_m));
      if (scale > 0.0 && std::abs(*row.b_zeta - *row.b_m) / scale > divergence_threshold)
        crossover = row.alpha;
    }
  }
  out << "# divergence_threshold = " << detail::format12(divergence_threshold) << "\n";
  out << "# crossover_alpha = " << (crossover ? detail::format12(*crossover) : "none") << "\n";
  return n;
}

// Per-zero panels: for each reference ordinate rho in the 1-based inclusive
// index range, rows over s = alpha + rho*i across the alpha grid.
inline Result<std::size_t> emit_zero_panel(std::ostream& out, std::size_t zero_first,
                                           std::size_t zero_last, double alpha_min,
                                           double alpha_max, double step,
                                           const zerofinder::ReferenceZeroTable& table,
                                           const EvalConfig& cfg, unsigned workers = 1) {
  if (auto e = validate(cfg)) return *e;
  if (zero_first == 0 || zero_last < zero_first)
    return make_error(errc::invalid_argument, "zero index range must satisfy 1 <= first <= last");
  if (zero_last > table.size())
    return make_error(errc::invalid_argument,
                      "reference table has only " + std::to_string(table.size()) + " ordinates");
  if (!(alpha_min > 0.0) || !(alpha_max > alpha_min))
    return make_error(errc::invalid_argument, "alpha range must satisfy 0 < alpha_min < alpha_max");
  if (!(step > 0.0)) return make_error(errc::invalid_argument, "step must be positive");

  const std::size_t per_zero = detail::grid_size(alpha_min, alpha_max, step);
  const std::size_t zeros = zero_last - zero_first + 1;
  const auto rows = detail::evaluate_grid(
      per_zero * zeros, workers, cfg, [&](std::size_t i) {
        const double rho = table[zero_first - 1 + i / per_zero];
        const double alpha = alpha_min + static_cast<double>(i % per_zero) * step;
        return std::pair(alpha, rho);
      });

  detail::write_header(out,
                       "zero panel, zeros " + std::to_string(zero_first) + ".." + std::to_string(zero_last),
                       cfg);
  for (const auto& row : rows) detail::write_row(out, row);
  return rows.size();
}

}  // namespace primeline::figures
