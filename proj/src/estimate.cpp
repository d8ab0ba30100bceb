#include "cavneg/estimate.hpp"

#include <algorithm>
#include <complex>
#include <ostream>

#include "cavneg/closed_forms.hpp"

namespace cavneg {

namespace {
constexpr int kPeakSamples = 4096;
constexpr int kMassiveModes = 2000;
}  // namespace

EstimateSummary estimate_physical(const PhysicalInput& in) {
  EstimateSummary s;
  s.input = in;
  s.params = physical_to_dimensionless(in);
  const double M = s.params.M;
  if (M == 0.0) {
    s.path = "massless";
    s.peak_deficit_scaled = 4.0 * q_function(in.k, std::complex<double>(1.0));
  } else {
    s.path = "massive-limit";
    const double period = 4.0 * M / constants::pi;  // in units of delta
    double peak = 0.0;
    bool limit_ok = true;
    for (int i = 0; i <= kPeakSamples; ++i) {
      const double tau = period * i / kPeakSamples;
      const NegativityResult r =
          negativity_massive_limit(in.k, s.params.h, M, tau, 1.0, std::max(kMassiveModes, in.k + 1));
      peak = std::max(peak, r.deficit_scaled);
      limit_ok = r.validity.mass_limit_ok;
    }
    s.peak_deficit_scaled = peak;
    s.params.validity.mass_limit_ok = limit_ok;
  }
  s.peak_negativity_drop = s.params.h * s.params.h * s.peak_deficit_scaled;
  return s;
}

void print_estimate(std::ostream& os, const EstimateSummary& s) {
  const auto flag = [](bool b) { return b ? "yes" : "no"; };
  os << "h                      " << s.params.h << "\n"
     << "M                      " << s.params.M << "\n"
     << "h*M^2                  " << s.params.h * s.params.M * s.params.M << "\n"
     << "k                      " << s.input.k << "\n"
     << "perturbative (|kh|<0.1) " << flag(s.params.validity.perturbative_ok) << "\n"
     << "massive (hM^2<=100)    " << flag(s.params.validity.massive_ok) << "\n"
     << "|h| < 2                " << flag(s.params.validity.h_bound_ok) << "\n";
  if (s.path == "massive-limit") {
    os << "k/M <= 0.01            " << flag(s.params.validity.mass_limit_ok) << "\n";
  }
  os << "path                   " << s.path << "\n"
     << "peak (1/2-N)/h^2       " << s.peak_deficit_scaled << "\n"
     << "peak 1/2-N             " << s.peak_negativity_drop << "\n";
}

}  // namespace cavneg
