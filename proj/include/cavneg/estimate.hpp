#pragma once

#include <iosfwd>
#include <string>

#include "cavneg/spectrum.hpp"

namespace cavneg {

struct EstimateSummary {
  PhysicalInput input;
  DimensionlessParameters params;
  std::string path;                  // "massless" or "massive-limit"
  double peak_deficit_scaled = 0.0;  // max over tau_bar of (1/2 - N) / h^2, one-way trip
  double peak_negativity_drop = 0.0; // h^2 * peak_deficit_scaled
};

/// Converts laboratory parameters and evaluates the one-way degradation peak:
/// 4 Q(k,1) for M = 0, otherwise the large-mass formula sampled over one
/// period 4 M delta / pi.
EstimateSummary estimate_physical(const PhysicalInput& in);

void print_estimate(std::ostream& os, const EstimateSummary& s);

}  // namespace cavneg
