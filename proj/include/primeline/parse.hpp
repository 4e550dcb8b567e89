#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#include "primeline/config.hpp"
#include "primeline/error.hpp"

namespace primeline {

namespace detail {

inline bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  // Only finite decimal literals belong to the grammar; "nan"/"inf" do not.
  return end == token.c_str() + token.size() && std::isfinite(out);
}

// Signed coefficient with an implicit 1 when only a sign (or nothing) remains,
// so "i", "+i" and "-i" parse as expected.
inline bool parse_imag_coeff(const std::string& token, double& out) {
  if (token.empty() || token == "+") { out = 1.0; return true; }
  if (token == "-") { out = -1.0; return true; }
  return parse_double(token, out);
}

}  // namespace detail

// Complex literal "a+bi" / "a-bi"; spaces are ignored, either part may be
// omitted ("2", "-1.5i"), exponents allowed ("1e-3+2.5e2i").
inline Result<series::Complex> parse_complex(const std::string& text) {
  std::string compact;
  compact.reserve(text.size());
  for (char c : text)
    if (c != ' ' && c != '\t') compact.push_back(c);
  if (compact.empty()) return make_error(errc::parse, "empty complex literal");

  const bool has_i = compact.back() == 'i' || compact.back() == 'I';
  std::string body = has_i ? compact.substr(0, compact.size() - 1) : compact;

  // Split before the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] != '+' && body[k] != '-') continue;
    const char prev = body[k - 1];
    if (prev == 'e' || prev == 'E') continue;
    split = k;
    break;
  }

  double re = 0.0, im = 0.0;
  if (split == std::string::npos) {
    double v = 0.0;
    const bool parsed = has_i ? detail::parse_imag_coeff(body, v) : detail::parse_double(body, v);
    if (!parsed) return make_error(errc::parse, "bad complex literal: " + text);
    (has_i ? im : re) = v;
    return series::Complex(re, im);
  }
  if (!has_i) return make_error(errc::parse, "bad complex literal (imaginary part needs 'i'): " + text);
  if (!detail::parse_double(body.substr(0, split), re) ||
      !detail::parse_imag_coeff(body.substr(split), im))
    return make_error(errc::parse, "bad complex literal: " + text);
  return series::Complex(re, im);
}

}  // namespace primeline
