// Evaluates every series, beta, and meta quantity at one complex point and
// prints a small report. Usage: evaluate_point [a+bi] (default 2+0i).

#include <iostream>
#include <string>

#include "primeline/beta.hpp"
#include "primeline/meta.hpp"
#include "primeline/parse.hpp"
#include "primeline/series.hpp"

using primeline::series::Complex;

namespace {

void print_line(const std::string& label, const primeline::Result<Complex>& r) {
  std::cout << label << ": ";
  if (r.ok())
    std::cout << r.value() << "\n";
  else
    std::cout << "[" << primeline::errc_name(r.error().code) << "] " << r.error().message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string text = argc > 1 ? argv[1] : "2+0i";
  const auto parsed = primeline::parse_complex(text);
  if (!parsed.ok()) {
    std::cerr << parsed.error().message << "\n";
    return 2;
  }
  const Complex s = parsed.value();
  primeline::series::EvalConfig cfg;

  std::cout << "s = " << s << ", K = " << cfg.prime_count << ", eta_terms = " << cfg.eta_terms
            << "\n";

  const auto zeta = primeline::series::eta_zeta(s, cfg);
  if (zeta.ok())
    std::cout << "zeta: " << zeta.value().value << "  (terms " << zeta.value().terms_used
              << ", trunc est " << zeta.value().truncation_estimate << ")\n";
  else
    std::cout << "zeta: [" << primeline::errc_name(zeta.error().code) << "] "
              << zeta.error().message << "\n";

  const auto lift = [](const primeline::Result<primeline::series::SeriesValue>& r) {
    return r.ok() ? primeline::Result<Complex>(r.value().value)
                  : primeline::Result<Complex>(r.error());
  };
  print_line("prime zeta", lift(primeline::series::prime_zeta_trunc(s, cfg)));
  print_line("alt prime zeta", lift(primeline::series::alt_prime_zeta_trunc(s, cfg)));
  print_line("euler product", lift(primeline::series::euler_product_trunc(s, cfg)));
  print_line("remainder", lift(primeline::series::remainder_trunc(s, cfg)));
  print_line("b_m", primeline::beta::b_m(s, cfg));
  print_line("b_zeta", primeline::beta::b_zeta(s, cfg));

  const auto pair = primeline::beta::beta_pair(s, cfg);
  if (pair.ok())
    std::cout << "|b_zeta - b_m| = " << pair.value().residual
              << (pair.value().branch_caution ? "  (branch caution)" : "") << "\n";

  print_line("meta(s, b_zeta)",
             primeline::meta::meta_auto(s, {primeline::meta::MetaMode::Kind::with_b_zeta, {}}, cfg));
  print_line("meta(s, b_m)",
             primeline::meta::meta_auto(s, {primeline::meta::MetaMode::Kind::with_b_m, {}}, cfg));
  return 0;
}
