#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <vector>

#include "primeline/primes.hpp"

using primeline::errc;
namespace primes = primeline::primes;

namespace {

// Independent oracle: odd-only trial division, no shared code with the sieve.
std::vector<std::uint64_t> trial_division_primes(std::size_t k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; out.size() < k; ++n) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(n);
  }
  return out;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("prime generation matches trial division") {
  auto table = primes::generate_primes(5);
  REQUIRE(table.ok());
  CHECK(table.value().primes() == std::vector<std::uint64_t>{2, 3, 5, 7, 11});

  auto one = primes::generate_primes(1);
  REQUIRE(one.ok());
  CHECK(one.value().primes() == std::vector<std::uint64_t>{2});

  auto big = primes::generate_primes(1000);
  REQUIRE(big.ok());
  REQUIRE(big.value().count() == 1000);
  CHECK(big.value().primes().back() == 7919);
  CHECK(big.value().primes() == trial_division_primes(1000));
}

TEST_CASE("prime tables are prefixes of longer tables") {
  auto small = primes::generate_primes(100);
  auto large = primes::generate_primes(1000);
  REQUIRE(small.ok());
  REQUIRE(large.ok());
  const auto& s = small.value().primes();
  const auto& l = large.value().primes();
  CHECK(std::equal(s.begin(), s.end(), l.begin()));
}

TEST_CASE("sieve bound dominates the k-th prime") {
  for (std::uint64_t k : {1ull, 6ull, 100ull, 1000ull, 10000ull}) {
    auto table = primes::generate_primes(k);
    REQUIRE(table.ok());
    CHECK(table.value().primes().back() <= primes::sieve_bound(k));
  }
}

TEST_CASE("log primes align with the prime values") {
  auto table = primes::generate_primes(50);
  REQUIRE(table.ok());
  const auto& t = table.value();
  for (std::size_t i = 0; i < t.count(); ++i)
    CHECK(t.log_primes()[i] == Catch::Approx(std::log(static_cast<double>(t.primes()[i]))));
}

TEST_CASE("requesting zero primes is rejected") {
  auto r = primes::generate_primes(0);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().code == errc::invalid_argument);
  auto t = primes::prime_table(0);
  REQUIRE_FALSE(t.ok());
  CHECK(t.error().code == errc::invalid_argument);
}

TEST_CASE("prime cache round-trips through a file") {
  const auto path = temp_file("primeline_cache_roundtrip.txt");
  std::filesystem::remove(path);

  auto generated = primes::generate_primes(200);
  REQUIRE(generated.ok());
  auto saved = primes::save_prime_cache(path.string(), generated.value().primes());
  REQUIRE(saved.ok());

  auto loaded = primes::load_prime_cache(path.string());
  REQUIRE(loaded.ok());
  CHECK(loaded.value() == generated.value().primes());
  std::filesystem::remove(path);
}

TEST_CASE("prime_table consults an explicit cache path") {
  const auto path = temp_file("primeline_cache_explicit.txt");
  std::filesystem::remove(path);

  // First call generates and writes the cache.
  auto first = primes::prime_table(50, path.string());
  REQUIRE(first.ok());
  REQUIRE(std::filesystem::exists(path));

  // A stale (shorter) cache is regenerated and overwritten.
  auto grown = primes::prime_table(100, path.string());
  REQUIRE(grown.ok());
  CHECK(grown.value().count() == 100);
  auto reread = primes::load_prime_cache(path.string());
  REQUIRE(reread.ok());
  CHECK(reread.value().size() >= 100);

  // A longer cache serves shorter requests as a prefix.
  auto prefix = primes::prime_table(10, path.string());
  REQUIRE(prefix.ok());
  CHECK(prefix.value().count() == 10);
  CHECK(prefix.value().primes().back() == 29);
  std::filesystem::remove(path);
}

TEST_CASE("prime cache path falls back to the environment variable") {
  const auto path = temp_file("primeline_cache_env.txt");
  std::filesystem::remove(path);
  REQUIRE(setenv(primes::kPrimeCacheEnvVar, path.string().c_str(), 1) == 0);
  auto table = primes::prime_table(25);
  unsetenv(primes::kPrimeCacheEnvVar);
  REQUIRE(table.ok());
  CHECK(table.value().count() == 25);
  CHECK(std::filesystem::exists(path));
  std::filesystem::remove(path);
}

TEST_CASE("malformed prime caches are reported") {
  auto missing = primes::load_prime_cache("/nonexistent/primeline_cache.txt");
  REQUIRE_FALSE(missing.ok());
  CHECK(missing.error().code == errc::io);

  const auto path = temp_file("primeline_cache_junk.txt");
  {
    std::ofstream out(path);
    out << "2\n3\nfive\n";
  }
  auto junk = primes::load_prime_cache(path.string());
  REQUIRE_FALSE(junk.ok());
  CHECK(junk.error().code == errc::io);
  std::filesystem::remove(path);
}

TEST_CASE("shared table grows monotonically and serves prefixes") {
  auto small = primes::shared_table(10);
  REQUIRE(small.ok());
  REQUIRE(small.value()->count() >= 10);
  auto large = primes::shared_table(2000);
  REQUIRE(large.ok());
  REQUIRE(large.value()->count() >= 2000);
  // The grown snapshot still starts with the same primes.
  for (std::size_t i = 0; i < 10; ++i)
    CHECK(small.value()->primes()[i] == large.value()->primes()[i]);
}
