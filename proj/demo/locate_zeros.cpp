// Scans a critical-line range for zeros and checks them against the shipped
// reference table. Usage: locate_zeros [t_min t_max] [table_path].

#include <iostream>
#include <string>

#include "primeline/zeros.hpp"

int main(int argc, char** argv) {
  const double t_min = argc > 2 ? std::stod(argv[1]) : 10.0;
  const double t_max = argc > 2 ? std::stod(argv[2]) : 32.0;
  const std::string table_path = argc > 3 ? argv[3] : "data/zeta_zeros_100.txt";

  primeline::series::EvalConfig cfg;
  auto table = primeline::zerofinder::load_reference_table(table_path);
  if (!table.ok()) {
    std::cerr << table.error().message << "\n";
    return 1;
  }

  auto scanned = primeline::zerofinder::scan_critical_line(t_min, t_max, 0.05, cfg);
  if (!scanned.ok()) {
    std::cerr << scanned.error().message << "\n";
    return 3;
  }
  const auto& candidates = scanned.value();
  std::cout << "scan (" << t_min << ", " << t_max << "): " << candidates.size()
            << " candidate(s)\n";
  for (const auto& c : candidates)
    std::cout << "  t = " << c.t << "  residual = " << c.residual_at_t
              << "  |zeta| = " << c.zeta_mod_at_t << "\n";

  auto report = primeline::zerofinder::verify_against_table(candidates, table.value(), 1e-3,
                                                            t_min, t_max);
  if (!report.ok()) {
    std::cerr << report.error().message << "\n";
    return 3;
  }
  const auto& r = report.value();
  std::cout << "matched " << r.matches.size() << " of " << r.in_range_reference_count
            << " in-range reference zeros";
  if (!r.false_negatives.empty()) {
    std::cout << "; not found:";
    for (double t : r.false_negatives) std::cout << " " << t;
  }
  std::cout << "\n";
  return r.clean() ? 0 : 4;
}
