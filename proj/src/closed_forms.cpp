#include "cavneg/closed_forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "cavneg/spectrum.hpp"

namespace cavneg {

using constants::pi;

double q_sum_term_share(int n) {
  const SeriesValue<double> q = q_series(n, std::complex<double>(1.0));
  const double nn = n;
  const double head = 4.0 * nn * nn / std::pow(pi, 4) *
                      std::real(polylog6(std::complex<double>(1.0)) * (63.0 / 64.0));
  return (q.value - head) / q.value;
}

PhaseTuple PhaseTuple::from_complex(std::complex<double> p, std::complex<double> p_prime,
                                    std::complex<double> p_double_prime) {
  detail::require_unit_modulus(p, "PhaseTuple");
  detail::require_unit_modulus(p_prime, "PhaseTuple");
  detail::require_unit_modulus(p_double_prime, "PhaseTuple");
  return {std::arg(p), std::arg(p_prime), std::arg(p_double_prime)};
}

SeriesValue<double> phase_product_sum(int k, std::span<const double> angles, int r_max) {
  if (k < 1) throw DomainError("mode index k must be >= 1");
  if (r_max <= 0) r_max = default_r_max<double>(k);
  const QCoefficients<double> q = q_coefficients<double>(k, std::max(r_max, k));
  NeumaierSum<double> acc;
  for (int r = q.r_max; r >= 0; --r) {
    const double j = 1.0 + 2.0 * r;
    double factor = q.a[static_cast<std::size_t>(r)];
    for (double angle : angles) {
      const double s = std::sin(0.5 * j * angle);
      factor *= 4.0 * s * s;
    }
    acc.add(factor);
  }
  const double max_factor = std::pow(4.0, static_cast<double>(angles.size()));
  return {acc.value(), q.tail_bound() * max_factor};
}

namespace {

NegativityResult closed_result(double deficit, double h, int k, double tail) {
  return make_negativity_result(deficit, h, k, 0.0, tail);
}

}  // namespace

NegativityResult negativity_one_way(int k, double h, const PhaseTuple& phases, int r_max) {
  const std::array<double, 1> angles{phases.u};
  const SeriesValue<double> product = phase_product_sum(k, angles, r_max);

  const SeriesValue<double> q1 = q_series(k, std::complex<double>(1.0), r_max);
  const SeriesValue<double> qp = q_series(k, phases.p(), r_max);
  const double q_form = 2.0 * (q1.value - qp.value);

  NegativityResult r = closed_result(q_form, h, k, 2.0 * (q1.tail + qp.tail) + product.tail);
  r.form_discrepancy = std::abs(q_form - product.value);
  return r;
}

NegativityResult negativity_two_way(int k, double h, const PhaseTuple& phases, int r_max) {
  const std::array<double, 2> angles{phases.u, phases.u + phases.v};
  const SeriesValue<double> product = phase_product_sum(k, angles, r_max);

  const std::complex<double> p = phases.p();
  const std::complex<double> pp = phases.p_prime();
  double tails = 0.0;
  auto q = [&](std::complex<double> z, double weight) {
    const SeriesValue<double> s = q_series(k, z, r_max);
    tails += std::abs(weight) * s.tail;
    return weight * s.value;
  };
  const double q_form = 2.0 * (q(1.0, 2.0) + q(p, -2.0) + q(pp, 1.0) + q(p * pp, -2.0) +
                               q(p * p * pp, 1.0));

  NegativityResult r = closed_result(product.value, h, k, product.tail + 2.0 * tails);
  r.form_discrepancy = std::abs(q_form - product.value);
  return r;
}

NegativityResult negativity_round_trip(int k, double h, const PhaseTuple& phases, int r_max) {
  const std::array<double, 3> angles{phases.u, phases.u + phases.v,
                                     2.0 * phases.u + phases.v + phases.w};
  const SeriesValue<double> product = phase_product_sum(k, angles, r_max);
  return closed_result(product.value, h, k, product.tail);
}

NegativityResult negativity_kickstart(int k, double h, int r_max) {
  const SeriesValue<double> q = q_series(k, std::complex<double>(1.0), r_max);
  return closed_result(q.value, h, k, q.tail);
}

double q_two_by_two(std::complex<double> z, double a10, double a11) {
  detail::require_unit_modulus(z, "q_two_by_two");
  return a10 * std::real(z) + 0.5 * a11 * std::real(z * z * z);
}

double q_two_by_two(std::complex<double> z) {
  return q_two_by_two(z, q_coefficient<double>(1, 0), q_coefficient<double>(1, 1));
}

double massive_frequency_gap(int k, int n, double M) {
  const double a = pi * k;
  const double b = pi * n;
  return (a - b) * (a + b) / (std::hypot(M, a) + std::hypot(M, b));
}

NegativityResult negativity_massive_limit(int k, double h, double M, double tau_bar, double delta,
                                          int n_max) {
  if (k < 1) throw DomainError("mode index k must be >= 1");
  if (M == 0.0) throw DomainError("massive limit needs M > 0; use the massless formulas");
  if (!(M > 0.0)) throw DomainError("mass parameter M must be positive");
  if (!(delta > 0.0)) throw DomainError("cavity length must be positive");
  if (n_max < k + 1) throw ArgumentError("n_max must be at least k + 1");

  const double kk = k;
  NeumaierSum<double> acc;
  std::vector<double> envelope;
  envelope.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    if ((n - k) % 2 == 0) {
      envelope.push_back(0.0);
      continue;
    }
    const double nn = n;
    const double gap = kk * kk - nn * nn;
    const double g2 = gap * gap;
    const double weight = nn * nn / (g2 * g2 * g2);
    const double s = std::sin(0.5 * massive_frequency_gap(k, n, M) * tau_bar / delta);
    acc.add(weight * 2.0 * s * s);
    envelope.push_back(2.0 * weight);
  }
  const double prefactor = 256.0 * kk * kk / std::pow(pi, 8);
  const double scaled = prefactor * acc.value();
  const double tail =
      prefactor * power_law_tail<double>(envelope, static_cast<std::size_t>(n_max), 10.0);
  const double M4 = M * M * M * M;

  NegativityResult r = make_negativity_result(M4 * scaled, h, k, M, M4 * tail);
  r.deficit_mass_scaled = scaled;
  r.validity.mass_limit_ok = kk / M <= 0.01;
  return r;
}

}  // namespace cavneg
