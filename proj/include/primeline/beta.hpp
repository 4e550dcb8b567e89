#pragma once

#include <cmath>
#include <numbers>

#include "primeline/config.hpp"
#include "primeline/error.hpp"
#include "primeline/series.hpp"

namespace primeline::beta {

using series::Complex;
using series::EvalConfig;

// exp(exponent * Log(base)) on the principal branch, Im(Log) in (-pi, pi].
inline Result<Complex> principal_power(Complex base, Complex exponent) {
  if (!series::is_finite(base) || !series::is_finite(exponent))
    return make_error(errc::domain, "non-finite input");
  if (base == Complex{}) {
    if (exponent.real() > 0.0) return Complex{};
    return make_error(errc::singularity, "zero base with non-positive exponent");
  }
  const Complex value = std::exp(exponent * std::log(base));
  if (!series::is_finite(value)) return make_error(errc::domain, "power overflowed");
  return value;
}

// True when exponent * Log(base) leaves the principal strip, i.e. when raising
// the result back by 1/exponent lands on a different branch. Used to flag
// residual comparisons that a later b^(-s) would silently contaminate with an
// e^(2 pi i m s) factor.
inline bool branch_wraps(Complex base, Complex exponent) {
  if (base == Complex{}) return false;
  return std::abs(std::imag(exponent * std::log(base))) > std::numbers::pi;
}

// Both closed-form solutions for b at one s, plus their separation. residual = 0
// is exactly the simultaneous Re/Im equality that marks a zeta zero.
// branch_caution marks points where either inner base's root left the principal
// strip; equality testing there compares values from different branches.
struct BetaPair {
  Complex s;
  Complex b_zeta;
  Complex b_m;
  double residual;
  bool branch_caution;
};

namespace detail {

struct BetaParts {
  Complex base_m;    // 2 / (1 + A)
  Complex base_zeta; // 2 / (1 - A/(X - 1)),  X = zeta * (1 + P) * Pi
};

// Shared guards for both betas; eta is only evaluated when the zeta side is needed.
inline Result<BetaParts> beta_parts(Complex s, const EvalConfig& cfg, bool need_zeta_side) {
  auto sums = series::detail::prime_sums(s, cfg);
  if (!sums.ok()) return sums.error();
  const Complex A = sums.value().A;
  const Complex P = sums.value().P;
  const Complex Pi = sums.value().Pi;
  if (!series::is_finite(A) || !series::is_finite(P) || !series::is_finite(Pi))
    return make_error(errc::domain, "prime series overflowed");
  BetaParts parts;
  if (std::abs(1.0 + A) < cfg.pole_guard)
    return make_error(errc::singularity, "1 + A(s) within pole_guard of zero");
  parts.base_m = 2.0 / (1.0 + A);
  if (need_zeta_side) {
    auto zeta = series::eta_zeta(s, cfg);
    if (!zeta.ok()) return zeta.error();
    const Complex X = zeta.value().value * (1.0 + P) * Pi;
    if (!series::is_finite(X)) return make_error(errc::domain, "zeta-product overflowed");
    if (std::abs(X - 1.0) <= cfg.pole_guard)
      return make_error(errc::singularity, "pole of the zeta-side beta: X within pole_guard of 1");
    const Complex inner = 1.0 - A / (X - 1.0);
    if (std::abs(inner) <= cfg.pole_guard)
      return make_error(errc::singularity, "zeta-side inner base within pole_guard of its pole");
    parts.base_zeta = 2.0 / inner;
  }
  return parts;
}

}  // namespace detail

// b_m = (2 / (1 + A(s)))^(1/s): the root that nulls the meta numerator.
inline Result<Complex> b_m(Complex s, const EvalConfig& cfg) {
  if (auto e = validate(cfg)) return *e;
  if (!series::is_finite(s)) return make_error(errc::domain, "non-finite input");
  if (s == Complex{}) return make_error(errc::domain, "s must be nonzero");
  auto parts = detail::beta_parts(s, cfg, false);
  if (!parts.ok()) return parts.error();
  return principal_power(parts.value().base_m, 1.0 / s);
}

// b_zeta = (2 / (1 - A/(X-1)))^(1/s) with X = zeta*(1+P)*Pi: the root that makes
// the meta expression reproduce zeta. Coincides with b_m exactly when X = 0.
inline Result<Complex> b_zeta(Complex s, const EvalConfig& cfg) {
  if (auto e = validate(cfg)) return *e;
  if (!series::is_finite(s)) return make_error(errc::domain, "non-finite input");
  if (s == Complex{}) return make_error(errc::domain, "s must be nonzero");
  auto parts = detail::beta_parts(s, cfg, true);
  if (!parts.ok()) return parts.error();
  return principal_power(parts.value().base_zeta, 1.0 / s);
}

inline Result<BetaPair> beta_pair(Complex s, const EvalConfig& cfg) {
  if (auto e = validate(cfg)) return *e;
  if (!series::is_finite(s)) return make_error(errc::domain, "non-finite input");
  if (s == Complex{}) return make_error(errc::domain, "s must be nonzero");
  auto parts = detail::beta_parts(s, cfg, true);
  if (!parts.ok()) {
    Error e = parts.error();
    e.message = "beta_pair: " + e.message;
    return e;
  }
  const Complex inv_s = 1.0 / s;
  auto bz = principal_power(parts.value().base_zeta, inv_s);
  if (!bz.ok()) {
    Error e = bz.error();
    e.message = "b_zeta: " + e.message;
    return e;
  }
  auto bm = principal_power(parts.value().base_m, inv_s);
  if (!bm.ok()) {
    Error e = bm.error();
    e.message = "b_m: " + e.message;
    return e;
  }
  BetaPair pair;
  pair.s = s;
  pair.b_zeta = bz.value();
  pair.b_m = bm.value();
  pair.residual = std::abs(pair.b_zeta - pair.b_m);
  pair.branch_caution = branch_wraps(parts.value().base_zeta, inv_s) ||
                        branch_wraps(parts.value().base_m, inv_s);
  return pair;
}

}  // namespace primeline::beta
