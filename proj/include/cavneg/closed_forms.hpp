#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "cavneg/errors.hpp"
#include "cavneg/negativity.hpp"
#include "cavneg/series.hpp"

namespace cavneg {

namespace detail {

template <typename Real>
void require_unit_modulus(const std::complex<Real>& z, const char* what) {
  if (std::abs(std::abs(z) - Real(1)) > Real(1e-12)) {
    throw DomainError(std::string(what) + ": argument must lie on the unit circle");
  }
}

template <typename Real>
Real tail_target() {
  return std::numeric_limits<Real>::epsilon() / Real(16);
}

}  // namespace detail

/// Li_6(z) = sum_{m>=1} z^m / m^6 for |z| <= 1, summed smallest terms first
/// until the m^-6 tail drops below `tolerance`.
template <typename Real>
std::complex<Real> polylog6(std::complex<Real> z, Real tolerance = detail::tail_target<Real>()) {
  const Real radius = std::abs(z);
  if (radius > Real(1) + Real(1e-12)) throw DomainError("polylog6: |z| > 1");
  const Real theta = std::arg(z);
  // sum_{m>N} m^-6 <= 1 / (5 N^5)
  const auto terms = static_cast<std::int64_t>(
      std::min<Real>(Real(100000), std::ceil(std::pow(Real(1) / (Real(5) * tolerance), Real(0.2)))));
  NeumaierSum<Real> re, im;
  for (std::int64_t m = terms; m >= 1; --m) {
    const Real mm = static_cast<Real>(m);
    const Real weight = std::pow(std::min(radius, Real(1)), mm) / std::pow(mm, Real(6));
    re.add(weight * std::cos(mm * theta));
    im.add(weight * std::sin(mm * theta));
  }
  return {re.value(), im.value()};
}

/// Coefficients a_{n,r} of Q(n, z) = sum_r a_{n,r} Re(z^{1+2r}):
///   a_{n,r} = (4n^2/pi^4) / j^6 + [r >= floor(n/2)] (6n/pi^4) (1/j^5 - n/j^6),  j = 1 + 2r.
template <typename Real>
struct QCoefficients {
  int n = 1;
  std::vector<Real> a;  // a[r], r = 0 .. r_max
  int r_max = 0;

  /// Bound on sum_{r > r_max} a_{n,r}.
  Real tail_bound() const {
    const Real pi4 = std::pow(std::numbers::pi_v<Real>, 4);
    const Real j = static_cast<Real>(2 * r_max + 1);
    const Real nn = static_cast<Real>(n);
    return (4 * nn * nn / pi4) / (5 * std::pow(j, 5)) + (6 * nn / pi4) / (4 * std::pow(j, 4));
  }
};

template <typename Real>
Real q_coefficient(int n, int r) {
  const Real pi4 = std::pow(std::numbers::pi_v<Real>, 4);
  const Real nn = static_cast<Real>(n);
  const Real j = static_cast<Real>(1 + 2 * r);
  const Real j5 = std::pow(j, 5);
  const Real j6 = j5 * j;
  Real a = 4 * nn * nn / (pi4 * j6);
  if (r >= n / 2) a += 6 * nn / pi4 * (1 / j5 - nn / j6);
  return a;
}

/// Smallest r_max (>= n) for which QCoefficients::tail_bound falls below `tolerance`.
template <typename Real>
int default_r_max(int n, Real tolerance = detail::tail_target<Real>()) {
  const Real pi4 = std::pow(std::numbers::pi_v<Real>, 4);
  const Real nn = static_cast<Real>(n);
  // Dominant term (6n/pi^4) / (4 J^4); the J^-5 piece is smaller for J >= n.
  const Real j = std::pow(Real(2) * 6 * nn / (pi4 * 4 * tolerance), Real(0.25));
  const int r = static_cast<int>(std::ceil((j - 1) / 2));
  return std::max(r, n);
}

template <typename Real>
QCoefficients<Real> q_coefficients(int n, int r_max) {
  if (n < 1) throw DomainError("q_coefficients: n must be >= 1");
  if (r_max < n) throw ArgumentError("q_coefficients: r_max must be >= n");
  QCoefficients<Real> q;
  q.n = n;
  q.r_max = r_max;
  q.a.resize(static_cast<std::size_t>(r_max) + 1);
  for (int r = 0; r <= r_max; ++r) q.a[static_cast<std::size_t>(r)] = q_coefficient<Real>(n, r);
  return q;
}

/// Q(n, z) = (4n^2/pi^4) Re(Li6(z) - Li6(z^2)/64)
///         + (6n/pi^4) sum_{r >= floor(n/2)} Re(z^{1+2r}) (1/(1+2r)^5 - n/(1+2r)^6),
/// with the residual sum truncated at r_max (0 selects default_r_max).
template <typename Real>
SeriesValue<Real> q_series(int n, std::complex<Real> z, int r_max = 0) {
  if (n < 1) throw DomainError("q_function: n must be >= 1");
  detail::require_unit_modulus(z, "q_function");
  const Real pi4 = std::pow(std::numbers::pi_v<Real>, 4);
  const Real nn = static_cast<Real>(n);
  if (r_max <= 0) r_max = default_r_max<Real>(n);

  const Real head = 4 * nn * nn / pi4 * std::real(polylog6(z) - polylog6(z * z) / Real(64));

  const Real theta = std::arg(z);
  NeumaierSum<Real> acc;
  for (int r = r_max; r >= n / 2; --r) {
    const Real j = static_cast<Real>(1 + 2 * r);
    const Real j5 = std::pow(j, 5);
    acc.add(std::cos(j * theta) * (1 / j5 - nn / (j5 * j)));
  }
  const Real j = static_cast<Real>(2 * r_max + 1);
  const Real tail = 6 * nn / pi4 * (1 / (4 * std::pow(j, 4)) + nn / (5 * std::pow(j, 5)));
  return {head + 6 * nn / pi4 * acc.value(), tail};
}

template <typename Real>
Real q_function(int n, std::complex<Real> z, int r_max = 0) {
  return q_series(n, z, r_max).value;
}

/// Share of the residual (second) sum in Q(n, 1).
double q_sum_term_share(int n);

/// Unit-modulus phases p = exp(i u), p' = exp(i v), p'' = exp(i w), held by
/// angle so that zero loci are resolved exactly:
///   u = Omega_1 tau_bar,  v = pi tau' / delta,  w = pi tau'' / delta.
struct PhaseTuple {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  std::complex<double> p() const { return std::polar(1.0, u); }
  std::complex<double> p_prime() const { return std::polar(1.0, v); }
  std::complex<double> p_double_prime() const { return std::polar(1.0, w); }

  static PhaseTuple from_complex(std::complex<double> p, std::complex<double> p_prime = 1.0,
                                 std::complex<double> p_double_prime = 1.0);
};

/// sum_r a_{k,r} prod_f |exp(i j angle_f) - 1|^2, j = 1 + 2r, with tail bound.
SeriesValue<double> phase_product_sum(int k, std::span<const double> angles, int r_max = 0);

/// One accelerated segment:  1/2 - 2 [Q(k,1) - Q(k,p)] h^2.
NegativityResult negativity_one_way(int k, double h, const PhaseTuple& phases, int r_max = 0);

/// Out-and-brake trip: 1/2 - 2 [2Q(k,1) - 2Q(k,p) + Q(k,p') - 2Q(k,pp') + Q(k,p^2 p')] h^2.
/// The carried deficit is the coefficient product-sum form.
NegativityResult negativity_two_way(int k, double h, const PhaseTuple& phases, int r_max = 0);

/// Round trip: product-sum with factors |p^j - 1|^2 |(pp')^j - 1|^2 |(p^2 p' p'')^j - 1|^2.
NegativityResult negativity_round_trip(int k, double h, const PhaseTuple& phases, int r_max = 0);

/// Trip ending while still accelerating: 1/2 - Q(k,1) h^2.
NegativityResult negativity_kickstart(int k, double h, int r_max = 0);

/// Lowest 2x2 block replacement for Q(1, z): a10 Re(z) + a11 Re(z^3) / 2.
double q_two_by_two(std::complex<double> z);
double q_two_by_two(std::complex<double> z, double a10, double a11);

/// Large-mass, k << M limit of one accelerated segment:
///   1/2 - h^2 M^4 (256 k^2/pi^8) sum''_n n^2/(k^2-n^2)^6
///         {1 - cos[(sqrt(M^2+pi^2k^2) - sqrt(M^2+pi^2n^2)) tau_bar/delta]},
/// the sum over n = k+1 mod 2, n <= n_max.
NegativityResult negativity_massive_limit(int k, double h, double M, double tau_bar, double delta,
                                          int n_max);

/// (sqrt(M^2 + pi^2 k^2) - sqrt(M^2 + pi^2 n^2)) without cancellation at large M.
double massive_frequency_gap(int k, int n, double M);

}  // namespace cavneg
