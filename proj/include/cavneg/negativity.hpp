#pragma once

#include <optional>

#include "cavneg/spectrum.hpp"

namespace cavneg {

/// Order-h^2 negativity of the Alice / Rob-mode-k pair.
///
/// negativity == 1/2 - h_used^2 * deficit_scaled holds exactly; the value is not
/// clamped, out-of-regime inputs show up in `validity` instead.
struct NegativityResult {
  double negativity = 0.5;
  double deficit_scaled = 0.0;  // (1/2 - N) / h^2
  double h_used = 0.0;
  int k_used = 1;
  ValidityReport validity;
  double truncation_tail = 0.0;
  // (1/2 - N) / (h^2 M^4), massive-limit evaluations only.
  std::optional<double> deficit_mass_scaled;
  // |difference| between two algebraically equivalent evaluation routes.
  std::optional<double> form_discrepancy;
};

NegativityResult make_negativity_result(double deficit_scaled, double h, int k, double M,
                                        double truncation_tail);

/// E_N = ln(1 + N). Throws DomainError for negative N.
double log_negativity(const NegativityResult& r);

}  // namespace cavneg
