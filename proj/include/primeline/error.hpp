#pragma once

#include <string>
#include <utility>
#include <variant>

namespace primeline {

enum class errc {
  invalid_argument,
  domain,
  singularity,
  degenerate_product,
  refinement_failed,
  scan_failed,
  parse,
  io,
};

struct Error {
  errc code;
  std::string message;
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument:   return "invalid-argument";
    case errc::domain:             return "domain";
    case errc::singularity:        return "singularity";
    case errc::degenerate_product: return "degenerate-product";
    case errc::refinement_failed:  return "refinement-failed";
    case errc::scan_failed:        return "scan-failed";
    case errc::parse:              return "parse";
    case errc::io:                 return "io";
  }
  return "unknown";
}

// Value-or-error sum type; errors carry a typed code plus human-readable detail.
template <class T>
class Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Error e) : v_(std::move(e)) {}

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<0>(v_); }
  T&& value() && { return std::get<0>(std::move(v_)); }
  const Error& error() const { return std::get<1>(v_); }

 private:
  std::variant<T, Error> v_;
};

inline Error make_error(errc code, std::string message) {
  return Error{code, std::move(message)};
}

}  // namespace primeline
