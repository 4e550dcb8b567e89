#pragma once

#include <cmath>

#include "primeline/beta.hpp"
#include "primeline/config.hpp"
#include "primeline/error.hpp"
#include "primeline/series.hpp"

namespace primeline::meta {

using series::Complex;
using series::EvalConfig;

// Which b feeds the meta expression; the source text leaves it open, so all
// three defensible choices are first-class.
struct MetaMode {
  enum class Kind { with_b_zeta, with_b_m, fixed };
  Kind kind = Kind::with_b_zeta;
  Complex fixed_b{};  // used only when kind == fixed; must be nonzero then
};

inline const char* meta_mode_name(MetaMode::Kind k) {
  switch (k) {
    case MetaMode::Kind::with_b_zeta: return "with_b_zeta";
    case MetaMode::Kind::with_b_m:    return "with_b_m";
    case MetaMode::Kind::fixed:       return "fixed";
  }
  return "unknown";
}

// m(s, b) = [1 + (1 - 2 b^(-s))^(-1) A(s)] / [Pi(s) (1 + P(s))].
// Poles guarded: b^s = 2 (the inverse-weight pole) and a vanishing denominator.
inline Result<Complex> meta(Complex s, Complex b, const EvalConfig& cfg) {
  if (auto e = validate(cfg)) return *e;
  if (!series::is_finite(s) || !series::is_finite(b))
    return make_error(errc::domain, "non-finite input");
  if (b == Complex{}) return make_error(errc::domain, "b must be nonzero");
  auto b_pow = beta::principal_power(b, -s);
  if (!b_pow.ok()) return b_pow.error();
  const Complex weight_denom = 1.0 - 2.0 * b_pow.value();
  if (std::abs(weight_denom) <= cfg.pole_guard)
    return make_error(errc::singularity, "meta pole: b^s within pole_guard of 2");
  auto sums = series::detail::prime_sums(s, cfg);
  if (!sums.ok()) return sums.error();
  const Complex denominator = sums.value().Pi * (1.0 + sums.value().P);
  if (std::abs(denominator) <= cfg.pole_guard)
    return make_error(errc::singularity, "meta denominator Pi*(1+P) within pole_guard of zero");
  const Complex value = (1.0 + sums.value().A / weight_denom) / denominator;
  if (!series::is_finite(value)) return make_error(errc::domain, "meta overflowed");
  return value;
}

inline Result<Complex> meta_auto(Complex s, const MetaMode& mode, const EvalConfig& cfg) {
  switch (mode.kind) {
    case MetaMode::Kind::with_b_zeta: {
      auto b = beta::b_zeta(s, cfg);
      if (!b.ok()) return b.error();
      return meta(s, b.value(), cfg);
    }
    case MetaMode::Kind::with_b_m: {
      auto b = beta::b_m(s, cfg);
      if (!b.ok()) return b.error();
      return meta(s, b.value(), cfg);
    }
    case MetaMode::Kind::fixed: {
      if (mode.fixed_b == Complex{})
        return make_error(errc::invalid_argument, "fixed meta mode requires a nonzero fixed_b");
      return meta(s, mode.fixed_b, cfg);
    }
  }
  return make_error(errc::invalid_argument, "unknown meta mode");
}

}  // namespace primeline::meta
