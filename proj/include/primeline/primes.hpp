#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "primeline/error.hpp"

namespace primeline::primes {

// Immutable ascending table of the first K primes. Natural logs are
// precomputed once because every series evaluation needs p^(-s) = exp(-s ln p).
class PrimeTable {
 public:
  explicit PrimeTable(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
    log_primes_.reserve(primes_.size());
    for (std::uint64_t p : primes_) log_primes_.push_back(std::log(static_cast<double>(p)));
  }

  const std::vector<std::uint64_t>& primes() const { return primes_; }
  const std::vector<double>& log_primes() const { return log_primes_; }
  std::uint64_t operator[](std::size_t i) const { return primes_[i]; }
  std::size_t count() const { return primes_.size(); }

 private:
  std::vector<std::uint64_t> primes_;
  std::vector<double> log_primes_;
};

// Upper bound on the k-th prime: k(ln k + ln ln k) for k >= 6, constant below.
inline std::uint64_t sieve_bound(std::uint64_t k) {
  if (k < 6) return 15;
  const double kd = static_cast<double>(k);
  return static_cast<std::uint64_t>(kd * (std::log(kd) + std::log(std::log(kd)))) + 2;
}

inline Result<PrimeTable> generate_primes(std::uint64_t k) {
  if (k == 0) return make_error(errc::invalid_argument, "prime count must be >= 1");
  const std::uint64_t limit = sieve_bound(k);
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  out.reserve(k);
  for (std::uint64_t i = 2; i <= limit && out.size() < k; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  if (out.size() < k)
    return make_error(errc::invalid_argument, "sieve bound failed to reach " + std::to_string(k) + " primes");
  return PrimeTable(std::move(out));
}

// Cache file format: newline-delimited decimal primes, nothing else.
inline Result<std::vector<std::uint64_t>> load_prime_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) return make_error(errc::io, "cannot open prime cache: " + path);
  std::vector<std::uint64_t> primes;
  std::uint64_t v = 0;
  while (in >> v) {
    if (!primes.empty() && v <= primes.back())
      return make_error(errc::io, "prime cache not strictly increasing: " + path);
    primes.push_back(v);
  }
  if (!in.eof()) return make_error(errc::io, "prime cache has non-numeric content: " + path);
  if (primes.empty() || primes.front() != 2)
    return make_error(errc::io, "prime cache must start with 2: " + path);
  return primes;
}

inline Result<bool> save_prime_cache(const std::string& path, const std::vector<std::uint64_t>& primes) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) return make_error(errc::io, "cannot write prime cache: " + path);
  for (std::uint64_t p : primes) out << p << '\n';
  out.flush();
  if (!out) return make_error(errc::io, "short write to prime cache: " + path);
  return true;
}

inline constexpr const char* kPrimeCacheEnvVar = "PRIMELINE_PRIME_CACHE";

// Builds (or loads) a table of at least k primes. Cache resolution order:
// explicit path argument, then $PRIMELINE_PRIME_CACHE, else no cache.
// A stale or malformed cache is regenerated and overwritten; a failed write is
// non-fatal (the in-memory table is still returned).
inline Result<PrimeTable> prime_table(std::uint64_t k, const std::string& cache_path = "") {
  if (k == 0) return make_error(errc::invalid_argument, "prime count must be >= 1");
  std::string path = cache_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kPrimeCacheEnvVar)) path = env;
  }
  if (!path.empty()) {
    if (auto cached = load_prime_cache(path); cached.ok() && cached.value().size() >= k) {
      std::vector<std::uint64_t> first(cached.value().begin(), cached.value().begin() + static_cast<std::ptrdiff_t>(k));
      return PrimeTable(std::move(first));
    }
    auto generated = generate_primes(k);
    if (!generated.ok()) return generated;
    save_prime_cache(path, generated.value().primes());  // best effort
    return generated;
  }
  return generate_primes(k);
}

// Process-wide shared table, grown monotonically; snapshots are immutable, so
// concurrent readers never see mutation. Series operations take the first
// cfg.prime_count entries of a snapshot with count >= requested.
inline Result<std::shared_ptr<const PrimeTable>> shared_table(std::uint64_t k, const std::string& cache_path = "") {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> current;
  if (k == 0) return make_error(errc::invalid_argument, "prime count must be >= 1");
  std::lock_guard<std::mutex> lock(mu);
  if (!current || current->count() < k) {
    auto table = prime_table(k, cache_path);
    if (!table.ok()) return table.error();
    current = std::make_shared<const PrimeTable>(std::move(table).value());
  }
  return current;
}

}  // namespace primeline::primes
