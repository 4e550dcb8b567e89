#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "primeline/config.hpp"
#include "primeline/error.hpp"
#include "primeline/primes.hpp"

namespace primeline::series {

// Every series evaluation reports how hard it worked and how wrong it may be.
struct SeriesValue {
  Complex value;
  std::uint64_t terms_used;
  double truncation_estimate;  // heuristic scale of the omitted tail, not a bound
};

namespace detail {

// p^(-s) = exp(-s ln p) with the real log of the positive base; no branch cuts.
inline Complex prime_power(double log_p, Complex s) {
  return std::exp(-s * log_p);
}

// One pass over the first K primes collects everything the beta/meta layer
// needs: P = sum p^(-s), A = alternating sum, Pi = product of (1 - p^(-s)).
struct PrimeSums {
  Complex P{};
  Complex A{};
  Complex Pi{1.0, 0.0};
  double last_term_abs = 0.0;  // |p_K^(-s)|
  double min_factor_abs = 0.0; // min |1 - p^(-s)| over the product
};

inline Result<PrimeSums> prime_sums(Complex s, const EvalConfig& cfg) {
  auto table = primes::shared_table(cfg.prime_count);
  if (!table.ok()) return table.error();
  const auto& logs = table.value()->log_primes();
  PrimeSums out;
  out.min_factor_abs = std::numeric_limits<double>::infinity();
  double sign = 1.0;
  for (std::uint64_t k = 0; k < cfg.prime_count; ++k) {
    const Complex x = prime_power(logs[k], s);
    out.P += x;
    out.A += sign * x;
    const Complex factor = 1.0 - x;
    out.min_factor_abs = std::min(out.min_factor_abs, std::abs(factor));
    out.Pi *= factor;
    out.last_term_abs = std::abs(x);
    sign = -sign;
  }
  return out;
}

// Alternating eta sum sum_{n>=1} (-1)^(n+1) n^(-s).
//
// euler_transform: the first m = eta_terms terms are summed directly, then the
// Euler transform (halved forward differences) accelerates the next m terms.
// Summing a prefix first keeps |s + j| < m + 1 + j over the transformed block,
// which is what makes the acceleration uniformly accurate for |Im s| up to
// roughly m; the from-the-start transform loses a digit per unit of |Im s|.
// The truncation estimate is the magnitude of the last accelerated correction.
//
// direct_partial_sum: plain partial sum of eta_terms terms; the estimate is the
// first omitted term's magnitude (alternating-series bound scale).
struct EtaSum {
  Complex value;
  std::uint64_t terms_used;
  double estimate;
};

inline EtaSum eta_sum(Complex s, const EvalConfig& cfg) {
  const std::uint32_t n = cfg.eta_terms;
  if (cfg.acceleration == Acceleration::direct_partial_sum) {
    Complex total{};
    double sign = 1.0;
    for (std::uint32_t i = 1; i <= n; ++i) {
      total += sign * std::exp(-s * std::log(static_cast<double>(i)));
      sign = -sign;
    }
    return {total, n, std::pow(static_cast<double>(n) + 1.0, -s.real())};
  }
  Complex head{};
  double sign = 1.0;
  for (std::uint32_t i = 1; i <= n; ++i) {
    head += sign * std::exp(-s * std::log(static_cast<double>(i)));
    sign = -sign;
  }
  // tail = (-1)^m sum_j (-1)^j c_j with c_j = (m+1+j)^(-s); Euler transform:
  // sum_j (-1)^j c_j = sum_k (D^k c)_0 / 2^(k+1), D = forward "minus" difference.
  std::vector<Complex> row(n);
  for (std::uint32_t j = 0; j < n; ++j)
    row[j] = std::exp(-s * std::log(static_cast<double>(n + 1 + j)));
  Complex tail{};
  double weight = 0.5;
  double last = 0.0;
  for (std::uint32_t k = 0; k < n; ++k) {
    const Complex correction = weight * row[0];
    tail += correction;
    last = std::abs(correction);
    for (std::uint32_t j = 0; j + k + 1 < n; ++j) row[j] -= row[j + 1];
    weight *= 0.5;
  }
  const double head_sign = (n % 2 == 0) ? 1.0 : -1.0;
  return {head + head_sign * tail, 2ULL * n, last};
}

}  // namespace detail

// zeta via the eta form: (1 - 2 * 2^(-s))^(-1) * sum (-1)^(n+1) n^(-s).
// Valid for Re(s) > 0 away from the prefactor zeros s = 1 + 2 pi i k / ln 2.
inline Result<SeriesValue> eta_zeta(Complex s, const EvalConfig& cfg) {
  if (auto e = validate(cfg)) return *e;
  if (!is_finite(s)) return make_error(errc::domain, "non-finite input");
  if (s.real() <= 0.0)
    return make_error(errc::domain, "eta form requires Re(s) > 0");
  const Complex prefactor = 1.0 - 2.0 * std::exp(-s * std::log(2.0));
  if (std::abs(prefactor) <= cfg.pole_guard)
    return make_error(errc::singularity, "eta prefactor pole: 2^(1-s) = 1 within pole_guard");
  const auto eta = detail::eta_sum(s, cfg);
  const Complex value = eta.value / prefactor;
  if (!is_finite(value)) return make_error(errc::domain, "eta sum overflowed");
  return SeriesValue{value, eta.terms_used, eta.estimate / std::abs(prefactor)};
}

// Partial prime zeta sum_{k<=K} p_k^(-s); deliberately truncated, never accelerated.
inline Result<SeriesValue> prime_zeta_trunc(Complex s, const EvalConfig& cfg) {
  if (auto e = validate(cfg)) return *e;
  if (!is_finite(s)) return make_error(errc::domain, "non-finite input");
  auto sums = detail::prime_sums(s, cfg);
  if (!sums.ok()) return sums.error();
  if (!is_finite(sums.value().P)) return make_error(errc::domain, "prime zeta sum overflowed");
  return SeriesValue{sums.value().P, cfg.prime_count, sums.value().last_term_abs};
}

// Alternating prime zeta sum_{k<=K} (-1)^(k+1) p_k^(-s).
inline Result<SeriesValue> alt_prime_zeta_trunc(Complex s, const EvalConfig& cfg) {
  if (auto e = validate(cfg)) return *e;
  if (!is_finite(s)) return make_error(errc::domain, "non-finite input");
  auto sums = detail::prime_sums(s, cfg);
  if (!sums.ok()) return sums.error();
  if (!is_finite(sums.value().A)) return make_error(errc::domain, "alternating prime zeta sum overflowed");
  return SeriesValue{sums.value().A, cfg.prime_count, sums.value().last_term_abs};
}

// Partial product prod_{k<=K} (1 - p_k^(-s)); a factor within pole_guard of zero
// means s is on top of a factor zero and the product is meaningless there.
inline Result<SeriesValue> euler_product_trunc(Complex s, const EvalConfig& cfg) {
  if (auto e = validate(cfg)) return *e;
  if (!is_finite(s)) return make_error(errc::domain, "non-finite input");
  auto sums = detail::prime_sums(s, cfg);
  if (!sums.ok()) return sums.error();
  const auto& v = sums.value();
  if (v.min_factor_abs < cfg.pole_guard)
    return make_error(errc::degenerate_product, "euler product factor within pole_guard of zero");
  if (!is_finite(v.Pi)) return make_error(errc::domain, "euler product overflowed");
  return SeriesValue{v.Pi, cfg.prime_count, v.last_term_abs * std::abs(v.Pi)};
}

// Remainder R with 1 + R = Pi * (1 + P), all series at the same truncation K.
inline Result<SeriesValue> remainder_trunc(Complex s, const EvalConfig& cfg) {
  if (auto e = validate(cfg)) return *e;
  if (!is_finite(s)) return make_error(errc::domain, "non-finite input");
  auto sums = detail::prime_sums(s, cfg);
  if (!sums.ok()) return sums.error();
  const auto& v = sums.value();
  if (v.min_factor_abs < cfg.pole_guard)
    return make_error(errc::degenerate_product, "euler product factor within pole_guard of zero");
  const Complex value = v.Pi * (1.0 + v.P) - 1.0;
  if (!is_finite(value)) return make_error(errc::domain, "remainder overflowed");
  const double estimate =
      v.last_term_abs * std::abs(v.Pi) * (1.0 + std::abs(v.P)) + std::abs(v.Pi) * v.last_term_abs;
  return SeriesValue{value, cfg.prime_count, estimate};
}

}  // namespace primeline::series
