#include <catch2/catch_amalgamated.hpp>

#include "primeline/parse.hpp"

using primeline::series::Complex;

namespace {

Complex parsed(const std::string& text) {
  auto r = primeline::parse_complex(text);
  REQUIRE(r.ok());
  return r.value();
}

bool rejects(const std::string& text) { return !primeline::parse_complex(text).ok(); }

}  // namespace

TEST_CASE("complex literals cover pure real, pure imaginary, and mixed forms") {
  CHECK(parsed("2") == Complex(2.0, 0.0));
  CHECK(parsed("-3.5") == Complex(-3.5, 0.0));
  CHECK(parsed("i") == Complex(0.0, 1.0));
  CHECK(parsed("-i") == Complex(0.0, -1.0));
  CHECK(parsed("+i") == Complex(0.0, 1.0));
  CHECK(parsed("2i") == Complex(0.0, 2.0));
  CHECK(parsed("-1.5i") == Complex(0.0, -1.5));
  CHECK(parsed("3+4i") == Complex(3.0, 4.0));
  CHECK(parsed("3-4i") == Complex(3.0, -4.0));
  CHECK(parsed("-3-4i") == Complex(-3.0, -4.0));
  CHECK(parsed("0.5+14.134725i") == Complex(0.5, 14.134725));
}

TEST_CASE("complex literals accept exponents and embedded spacing") {
  CHECK(parsed("1e-3+2.5e2i") == Complex(0.001, 250.0));
  CHECK(parsed("1E2-3E-1i") == Complex(100.0, -0.3));
  CHECK(parsed(" 0.5 + 14.5i ") == Complex(0.5, 14.5));
  CHECK(parsed("\t2\t-\t3i") == Complex(2.0, -3.0));
  CHECK(parsed("2+3I") == Complex(2.0, 3.0));
}

TEST_CASE("malformed complex literals are rejected") {
  CHECK(rejects(""));
  CHECK(rejects("abc"));
  CHECK(rejects("1+2"));      // two parts need a trailing i
  CHECK(rejects("1i+2"));     // i must be the final character
  CHECK(rejects("--2"));
  CHECK(rejects("2+"));
  CHECK(rejects("+"));
  CHECK(rejects("2+3j"));
  CHECK(rejects("1..5"));
  CHECK(rejects("nan"));
  CHECK(rejects("inf+2i"));
}
