#include "cavneg/spectrum.hpp"

#include <cmath>
#include <string>

#include "cavneg/errors.hpp"

namespace cavneg {

using constants::pi;

void CavityConfig::validate() const {
  if (!(delta > 0.0)) throw DomainError("cavity length delta must be positive");
  if (!(M >= 0.0)) throw DomainError("mass parameter M must be non-negative");
  if (!(std::abs(h) < 2.0)) throw DomainError("|h| must be below 2");
  if (k < 1) throw DomainError("mode index k must be >= 1");
  if (n_max < k + 1) throw ArgumentError("n_max must be at least k + 1");
}

ValidityReport assess_validity(int k, double h, double M, double threshold) {
  ValidityReport r;
  r.perturbative_ok = std::abs(static_cast<double>(k) * h) < threshold;
  r.massive_ok = std::abs(h) * M * M <= kMassiveValidityBound;
  r.h_bound_ok = std::abs(h) < 2.0;
  return r;
}

ValidityReport assess_validity(const CavityConfig& cfg, double threshold) {
  return assess_validity(cfg.k, cfg.h, cfg.M, threshold);
}

double mode_frequency(int n, const CavityConfig& cfg) {
  if (n < 1) throw DomainError("mode index must be >= 1, got " + std::to_string(n));
  return std::hypot(cfg.M, pi * n) / cfg.delta;
}

namespace {

// x / atanh(x), continuous at x = 0.
double ratio_over_atanh(double x) {
  if (x == 0.0) return 1.0;
  return x / std::atanh(x);
}

void check_rindler_domain(const CavityConfig& cfg) {
  if (!(std::abs(cfg.h) < 2.0)) throw DomainError("|h| must be below 2");
  if (cfg.M != 0.0) {
    throw UnsupportedError("Rindler spectrum is only available for a massless field");
  }
}

}  // namespace

double rindler_frequency(int n, const CavityConfig& cfg) {
  if (n < 1) throw DomainError("mode index must be >= 1, got " + std::to_string(n));
  check_rindler_domain(cfg);
  const double half = std::abs(cfg.h) / 2.0;
  return pi * n * ratio_over_atanh(half) / cfg.delta;
}

double acceleration_period(const CavityConfig& cfg) {
  check_rindler_domain(cfg);
  const double half = std::abs(cfg.h) / 2.0;
  return 2.0 * cfg.delta / ratio_over_atanh(half);
}

DimensionlessParameters physical_to_dimensionless(const PhysicalInput& in) {
  if (in.mass && in.transverse_wavelength) {
    throw ArgumentError("give either a mass or a transverse wavelength, not both");
  }
  if (!(in.acceleration >= 0.0)) throw DomainError("acceleration must be non-negative");
  if (!(in.delta > 0.0)) throw DomainError("cavity length must be positive");
  if (in.k < 1) throw DomainError("mode index k must be >= 1");

  const double c = constants::speed_of_light;
  DimensionlessParameters out;
  out.h = in.acceleration * in.delta / (c * c);
  if (in.mass) {
    if (!(*in.mass >= 0.0)) throw DomainError("mass must be non-negative");
    out.M = *in.mass * c * in.delta / constants::reduced_planck;
  } else if (in.transverse_wavelength) {
    if (!(*in.transverse_wavelength > 0.0)) throw DomainError("wavelength must be positive");
    out.M = 2.0 * pi * in.delta / *in.transverse_wavelength;
  }
  out.validity = assess_validity(in.k, out.h, out.M);
  return out;
}

}  // namespace cavneg
