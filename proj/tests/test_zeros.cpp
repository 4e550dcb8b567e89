#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "primeline/zeros.hpp"

using primeline::errc;
using primeline::series::Complex;
using primeline::series::EvalConfig;
namespace zf = primeline::zerofinder;

#ifndef PRIMELINE_DATA_DIR
#define PRIMELINE_DATA_DIR "data"
#endif

namespace {

const EvalConfig kDefault{};

std::filesystem::path write_temp_table(const char* name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("shipped reference table loads") {
  auto table = zf::load_reference_table(std::string(PRIMELINE_DATA_DIR) + "/zeta_zeros_100.txt");
  REQUIRE(table.ok());
  CHECK(table.value().size() == 100);
  CHECK(table.value()[0] == Catch::Approx(14.1347251417347).epsilon(1e-12));
  for (std::size_t i = 1; i < table.value().size(); ++i)
    CHECK(table.value()[i] > table.value()[i - 1]);
}

TEST_CASE("reference table parsing accepts comments and rejects junk") {
  auto good = write_temp_table("primeline_table_good.txt",
                               "# heading\n14.1 # trailing note\n\n  21.0\t\n25.0\n");
  auto table = zf::load_reference_table(good.string());
  REQUIRE(table.ok());
  CHECK(table.value().size() == 3);
  CHECK(table.value()[1] == 21.0);
  std::filesystem::remove(good);

  auto junk = write_temp_table("primeline_table_junk.txt", "14.1\nnot-a-number\n");
  auto r1 = zf::load_reference_table(junk.string());
  REQUIRE_FALSE(r1.ok());
  CHECK(r1.error().code == errc::parse);
  CHECK(r1.error().message.find(":2") != std::string::npos);
  std::filesystem::remove(junk);

  auto unsorted = write_temp_table("primeline_table_unsorted.txt", "21.0\n14.1\n");
  auto r2 = zf::load_reference_table(unsorted.string());
  REQUIRE_FALSE(r2.ok());
  CHECK(r2.error().code == errc::parse);
  std::filesystem::remove(unsorted);

  auto negative = write_temp_table("primeline_table_negative.txt", "-3.0\n");
  auto r3 = zf::load_reference_table(negative.string());
  REQUIRE_FALSE(r3.ok());
  CHECK(r3.error().code == errc::parse);
  std::filesystem::remove(negative);

  auto empty = write_temp_table("primeline_table_empty.txt", "# nothing\n");
  auto r4 = zf::load_reference_table(empty.string());
  REQUIRE_FALSE(r4.ok());
  CHECK(r4.error().code == errc::io);
  std::filesystem::remove(empty);

  auto missing = zf::load_reference_table("/nonexistent/table.txt");
  REQUIRE_FALSE(missing.ok());
  CHECK(missing.error().code == errc::io);
}

TEST_CASE("critical line scan counts zeros per range") {
  auto three = zf::scan_critical_line(10.0, 30.0, 0.05, kDefault);
  REQUIRE(three.ok());
  CHECK(three.value().size() == 3);

  auto one = zf::scan_critical_line(30.0, 32.0, 0.05, kDefault);
  REQUIRE(one.ok());
  REQUIRE(one.value().size() == 1);
  CHECK(one.value()[0].t == Catch::Approx(30.424876125859513).margin(1e-6));

  auto none = zf::scan_critical_line(15.0, 20.0, 0.05, kDefault);
  REQUIRE(none.ok());
  CHECK(none.value().empty());
}

TEST_CASE("scan candidates carry small residual and gated zeta modulus") {
  auto scanned = zf::scan_critical_line(14.0, 14.3, 0.05, kDefault);
  REQUIRE(scanned.ok());
  REQUIRE(scanned.value().size() == 1);
  const auto& c = scanned.value()[0];
  CHECK(c.t == Catch::Approx(14.134725141734693).margin(1e-6));
  CHECK(c.residual_at_t < 1e-8);
  CHECK(c.zeta_mod_at_t < 1e-3);
  CHECK(c.bracket_lo < c.t);
  CHECK(c.t < c.bracket_hi);
}

TEST_CASE("scan rejects malformed ranges") {
  CHECK_FALSE(zf::scan_critical_line(0.0, 10.0, 0.05, kDefault).ok());
  CHECK_FALSE(zf::scan_critical_line(-5.0, 10.0, 0.05, kDefault).ok());
  CHECK_FALSE(zf::scan_critical_line(20.0, 10.0, 0.05, kDefault).ok());
  CHECK_FALSE(zf::scan_critical_line(10.0, 20.0, 0.6, kDefault).ok());
  CHECK_FALSE(zf::scan_critical_line(10.0, 20.0, 0.0, kDefault).ok());
  auto bad_threshold_options = zf::ScanOptions{};
  bad_threshold_options.zeta_gate = 0.0;
  CHECK_FALSE(zf::scan_critical_line(10.0, 20.0, 0.05, kDefault, bad_threshold_options).ok());
}

TEST_CASE("scan results are identical across worker counts") {
  zf::ScanOptions serial;
  serial.workers = 1;
  zf::ScanOptions parallel;
  parallel.workers = 4;
  auto a = zf::scan_critical_line(20.0, 26.0, 0.05, kDefault, serial);
  auto b = zf::scan_critical_line(20.0, 26.0, 0.05, kDefault, parallel);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  REQUIRE(a.value().size() == b.value().size());
  for (std::size_t i = 0; i < a.value().size(); ++i) {
    CHECK(a.value()[i].t == b.value()[i].t);
    CHECK(a.value()[i].residual_at_t == b.value()[i].residual_at_t);
  }
}

TEST_CASE("halving the scan step keeps refined ordinates stable") {
  auto coarse = zf::scan_critical_line(20.5, 21.5, 0.05, kDefault);
  auto fine = zf::scan_critical_line(20.5, 21.5, 0.025, kDefault);
  REQUIRE(coarse.ok());
  REQUIRE(fine.ok());
  REQUIRE(coarse.value().size() == 1);
  REQUIRE(fine.value().size() == 1);
  CHECK(std::abs(coarse.value()[0].t - fine.value()[0].t) < 1e-6);
}

TEST_CASE("refinement tightens a bracket onto the zero") {
  zf::ZeroCandidate seed{};
  seed.bracket_lo = 14.1;
  seed.bracket_hi = 14.2;
  auto refined = zf::refine_zero(seed, 1e-10, kDefault);
  REQUIRE(refined.ok());
  CHECK(refined.value().t == Catch::Approx(14.134725141734693).margin(1e-8));
  CHECK(refined.value().bracket_hi - refined.value().bracket_lo <= 1e-10);
  CHECK(refined.value().zeta_mod_at_t < 1e-9);
}

TEST_CASE("refinement rejects a degenerate bracket") {
  zf::ZeroCandidate seed{};
  seed.bracket_lo = 14.2;
  seed.bracket_hi = 14.2;
  auto r = zf::refine_zero(seed, 1e-9, kDefault);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().code == errc::invalid_argument);
  CHECK(r.error().message.find("degenerate") != std::string::npos);
}

TEST_CASE("verification pairs candidates with references") {
  const zf::ReferenceZeroTable table({14.13, 21.02, 25.01});

  zf::ZeroCandidate a{};
  a.t = 14.1301;
  zf::ZeroCandidate b{};
  b.t = 21.0199;
  auto clean = zf::verify_against_table({a, b}, table, 1e-3, 10.0, 22.0);
  REQUIRE(clean.ok());
  CHECK(clean.value().matches.size() == 2);
  CHECK(clean.value().misses.empty());
  CHECK(clean.value().false_negatives.empty());
  CHECK(clean.value().in_range_reference_count == 2);
  CHECK(clean.value().clean());

  // A candidate far from every reference is a miss; the unclaimed in-range
  // reference becomes a false negative.
  zf::ZeroCandidate stray{};
  stray.t = 17.5;
  auto dirty = zf::verify_against_table({stray}, table, 1e-3, 10.0, 22.0);
  REQUIRE(dirty.ok());
  CHECK(dirty.value().matches.empty());
  REQUIRE(dirty.value().misses.size() == 1);
  CHECK(dirty.value().misses[0] == 17.5);
  CHECK(dirty.value().false_negatives.size() == 2);
  CHECK_FALSE(dirty.value().clean());

  // Two candidates claiming one reference record a duplicate.
  zf::ZeroCandidate twin = a;
  twin.t = 14.1302;
  auto doubled = zf::verify_against_table({a, twin}, table, 1e-3, 14.0, 15.0);
  REQUIRE(doubled.ok());
  CHECK(doubled.value().duplicates.size() == 1);

  // No candidates: verification is clean exactly when no reference is in range.
  auto vacuous = zf::verify_against_table({}, table, 1e-3, 15.0, 20.0);
  REQUIRE(vacuous.ok());
  CHECK(vacuous.value().clean());
  auto missing_all = zf::verify_against_table({}, table, 1e-3, 10.0, 30.0);
  REQUIRE(missing_all.ok());
  CHECK(missing_all.value().false_negatives.size() == 3);

  auto no_table = zf::verify_against_table({a}, zf::ReferenceZeroTable({}), 1e-3, 10.0, 20.0);
  REQUIRE_FALSE(no_table.ok());
  CHECK(no_table.error().code == errc::invalid_argument);
}
