#pragma once

#include <optional>

namespace cavneg {

/// Physical constants (SI, CODATA 2018; c and hbar are exact in the 2019 SI).
namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double speed_of_light = 299792458.0;      // m s^-1
inline constexpr double reduced_planck = 1.054571817e-34;  // J s
}  // namespace constants

inline constexpr double kDefaultPerturbativeThreshold = 0.1;
inline constexpr double kMassiveValidityBound = 100.0;

/// Parameters of one cavity run, in units where c = hbar = 1.
///
/// h is signed: h > 0 accelerates toward increasing x. The proper acceleration
/// at the cavity centre is h / delta.
struct CavityConfig {
  double delta = 1.0;
  double M = 0.0;
  double h = 0.0;
  int k = 1;
  int n_max = 2000;

  /// Throws DomainError / ArgumentError when an invariant is violated.
  void validate() const;
};

struct ValidityReport {
  bool perturbative_ok = true;  // |k h| below the configured threshold
  bool massive_ok = true;       // h M^2 <~ 100
  bool h_bound_ok = true;       // |h| < 2
  bool mass_limit_ok = true;    // k / M <= 0.01; only cleared by the large-mass formula

  bool all() const { return perturbative_ok && massive_ok && h_bound_ok && mass_limit_ok; }
};

ValidityReport assess_validity(int k, double h, double M,
                               double threshold = kDefaultPerturbativeThreshold);
ValidityReport assess_validity(const CavityConfig& cfg,
                               double threshold = kDefaultPerturbativeThreshold);

/// omega_n = sqrt(M^2 + pi^2 n^2) / delta.
double mode_frequency(int n, const CavityConfig& cfg);

/// Frequency of the n-th boost-Killing mode with respect to proper time at the
/// cavity centre, pi |h| n / (2 delta atanh(|h|/2)). h = 0 gives the inertial
/// limit pi n / delta. Only defined for M = 0.
double rindler_frequency(int n, const CavityConfig& cfg);

/// Period 2 pi / rindler_frequency(1): 2 delta atanh(|h|/2) / (|h|/2).
double acceleration_period(const CavityConfig& cfg);

struct PhysicalInput {
  double acceleration = 0.0;  // m s^-2
  double delta = 1.0;         // m
  std::optional<double> mass;                   // kg
  std::optional<double> transverse_wavelength;  // m
  int k = 1;
};

struct DimensionlessParameters {
  double h = 0.0;
  double M = 0.0;
  ValidityReport validity;
};

/// h = a delta / c^2; M = m c delta / hbar, or 2 pi delta / lambda for
/// transverse momentum of a massless quantum.
DimensionlessParameters physical_to_dimensionless(const PhysicalInput& in);

}  // namespace cavneg
