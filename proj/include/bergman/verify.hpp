#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bergman {

// One invariant check: `observed` compared against `expected` (a bound or a
// target value; the check decides the direction and sets `pass`).
struct CheckRow {
  std::string id;
  std::string params;
  double observed = 0.0;
  double expected = 0.0;
  bool pass = false;
};

// Suites: geometry, quadrature, kernels, estimates, lattice, atomic,
// operators. Unknown names are rejected.
std::vector<CheckRow> verify_suite(const std::string& suite, std::uint64_t seed, int jobs = 0);

const std::vector<std::string>& verify_suite_names();

// CSV rows: check id, parameters, observed, bound/expected, pass.
std::string checks_csv(const std::vector<CheckRow>& rows);

bool all_pass(const std::vector<CheckRow>& rows);

}  // namespace bergman
