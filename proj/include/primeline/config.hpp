#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "primeline/error.hpp"

namespace primeline::series {

using Complex = std::complex<double>;

enum class Acceleration { euler_transform, direct_partial_sum };

inline const char* acceleration_name(Acceleration a) {
  return a == Acceleration::euler_transform ? "euler_transform" : "direct_partial_sum";
}

// Truncation and guard parameters shared by every evaluation.
struct EvalConfig {
  std::uint64_t prime_count = 1000;   // K, primes entering each series
  std::uint32_t eta_terms = 64;       // accelerated term budget for the eta sum
  Acceleration acceleration = Acceleration::euler_transform;
  double pole_guard = 1e-8;           // radius treated as "on top of a pole"
};

inline std::optional<Error> validate(const EvalConfig& cfg) {
  if (cfg.prime_count < 1)
    return make_error(errc::invalid_argument, "prime_count must be >= 1");
  if (cfg.eta_terms < 8)
    return make_error(errc::invalid_argument, "eta_terms must be >= 8");
  if (!(cfg.pole_guard > 0.0))
    return make_error(errc::invalid_argument, "pole_guard must be > 0");
  return std::nullopt;
}

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace primeline::series
