#include "cavneg/scenario.hpp"

#include <complex>
#include <string>

#include "cavneg/errors.hpp"

namespace cavneg {

using constants::pi;

Scenario one_way_scenario(const CavityConfig& cfg, double tau_bar) {
  return {{Accelerated{+1, tau_bar}}, cfg, false};
}

Scenario alpha_centauri_scenario(const CavityConfig& cfg, double tau_bar, double tau_coast) {
  return {{Accelerated{+1, tau_bar}, Inertial{tau_coast}, Accelerated{-1, tau_bar}}, cfg, false};
}

Scenario round_trip_scenario(const CavityConfig& cfg, double tau_bar, double tau_coast,
                             double tau_rest) {
  return {{Accelerated{+1, tau_bar}, Inertial{tau_coast}, Accelerated{-1, tau_bar},
           Inertial{tau_rest}, Accelerated{-1, tau_bar}, Inertial{tau_coast},
           Accelerated{+1, tau_bar}},
          cfg,
          false};
}

Scenario kickstart_scenario(const CavityConfig& cfg, double tau_bar) {
  return {{Accelerated{+1, tau_bar}}, cfg, true};
}

BoostKit make_boost_kit(int n_max, double M, bool track_order2) {
  Transform boost = M == 0.0 ? massless_boost_transform<double>(n_max)
                             : massive_boost_transform<double>(n_max, M);
  if (!track_order2) boost.alpha2_diag.reset();
  BoostKit kit;
  kit.inverse = std::make_shared<const Transform>(inverse(boost));
  kit.boost = std::make_shared<const Transform>(std::move(boost));
  kit.n_max = n_max;
  kit.M = M;
  return kit;
}

Transform effective_transform(const Scenario& s, bool track_order2) {
  return effective_transform(s, make_boost_kit(s.cfg.n_max, s.cfg.M, track_order2));
}

namespace {

std::vector<double> inertial_spectrum(const CavityConfig& cfg) {
  std::vector<double> w(static_cast<std::size_t>(cfg.n_max));
  for (int n = 1; n <= cfg.n_max; ++n) w[static_cast<std::size_t>(n - 1)] = mode_frequency(n, cfg);
  return w;
}

std::vector<double> accelerated_spectrum(const CavityConfig& cfg) {
  if (cfg.M != 0.0) return inertial_spectrum(cfg);
  std::vector<double> w(static_cast<std::size_t>(cfg.n_max));
  const double fundamental = rindler_frequency(1, cfg);
  for (int n = 1; n <= cfg.n_max; ++n) w[static_cast<std::size_t>(n - 1)] = n * fundamental;
  return w;
}

// Folds one accelerated segment into `total` in a single pass:
//   segment = [inverse o] phase(zeta) o boost, scaled by `sign`,
//   total   = segment o total   (first order, elementwise).
// Same result as the two compose() calls, without materialising the segment.
void fold_accelerated(Transform& total, const BoostKit& kit, const Transform::Vector& zeta,
                      bool closing, double sign) {
  const Eigen::Index N = total.n_max();
  const Transform& b = *kit.boost;
  const Transform& inv = *kit.inverse;
  // phase o boost has phases zeta*z_b and blocks zeta_m * (A, B)_mn; closing
  // with the inverse adds (A_inv, B_inv)_mn times (zeta z_b)_n or its conjugate.
  const Transform::Vector after_boost = zeta.cwiseProduct(b.phases);
  const Transform::Vector lead = closing ? Transform::Vector(inv.phases.cwiseProduct(zeta)) : zeta;
  const Transform::Vector seg_phase =
      closing ? Transform::Vector(inv.phases.cwiseProduct(after_boost)) : after_boost;

  const bool fresh = !total.has_mixing();
  if (fresh) {
    total.alpha1.resize(N, N);
    total.beta1.resize(N, N);
  }
  for (Eigen::Index n = 0; n < N; ++n) {
    const std::complex<double> zt = sign * total.phases(n);
    const std::complex<double> zt_bar = sign * std::conj(total.phases(n));
    const std::complex<double> za = closing ? after_boost(n) : 0.0;
    const std::complex<double> zb = std::conj(za);
    for (Eigen::Index m = 0; m < N; ++m) {
      std::complex<double> a = lead(m) * b.alpha1(m, n);
      std::complex<double> be = lead(m) * b.beta1(m, n);
      if (closing) {
        a += inv.alpha1(m, n) * za;
        be += inv.beta1(m, n) * zb;
      }
      if (fresh) {
        total.alpha1(m, n) = a * zt;
        total.beta1(m, n) = be * zt_bar;
      } else {
        total.alpha1(m, n) = seg_phase(m) * total.alpha1(m, n) + a * zt;
        total.beta1(m, n) = seg_phase(m) * total.beta1(m, n) + be * zt_bar;
      }
    }
  }
  total.phases = seg_phase.cwiseProduct(total.phases);
}

}  // namespace

Transform effective_transform(const Scenario& s, const BoostKit& kit) {
  s.cfg.validate();
  if (kit.n_max != s.cfg.n_max || kit.M != s.cfg.M || !kit.boost || !kit.inverse) {
    throw ArgumentError("effective_transform: boost kit does not match the cavity config");
  }
  const Eigen::Index N = s.cfg.n_max;
  const std::vector<double> inertial = inertial_spectrum(s.cfg);
  const std::vector<double> accelerated = accelerated_spectrum(s.cfg);
  const bool order2 = kit.boost->alpha2_diag.has_value();

  std::size_t last_accelerated = s.segments.size();
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    if (std::holds_alternative<Accelerated>(s.segments[i])) last_accelerated = i;
  }

  Transform total = Transform::identity(N);
  if (!order2) total.alpha2_diag.reset();
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    if (const auto* coast = std::get_if<Inertial>(&s.segments[i])) {
      if (!(coast->duration >= 0.0)) throw DomainError("segment duration must be non-negative");
      total = compose(phase_rotation<double>(coast->duration, inertial, N), std::move(total));
      continue;
    }
    const auto& accel = std::get<Accelerated>(s.segments[i]);
    if (!(accel.duration >= 0.0)) throw DomainError("segment duration must be non-negative");
    if (accel.sign != 1 && accel.sign != -1) {
      throw ArgumentError("accelerated segment sign must be +1 or -1");
    }
    const bool closing = !(s.kickstart && i == last_accelerated);
    const Transform rotation = phase_rotation<double>(accel.duration, accelerated, N);
    if (!order2) {
      fold_accelerated(total, kit, rotation.phases, closing, accel.sign);
      continue;
    }
    Transform segment = compose(rotation, *kit.boost);
    if (closing) segment = compose(*kit.inverse, std::move(segment));
    if (accel.sign < 0) {
      segment.alpha1 = -segment.alpha1;
      segment.beta1 = -segment.beta1;
    }
    total = compose(std::move(segment), std::move(total));
  }
  return total;
}

NegativityResult negativity_general(const Transform& t, int k, double h, double M) {
  if (k < 1 || 2 * static_cast<Eigen::Index>(k) > t.n_max()) {
    throw ArgumentError("negativity_general: need 1 <= k <= n_max / 2, got k = " +
                        std::to_string(k));
  }
  if (!t.has_mixing()) return make_negativity_result(0.0, h, k, M, 0.0);
  const Eigen::Index col = k - 1;
  NeumaierSum<double> acc;
  std::vector<double> terms(static_cast<std::size_t>(t.n_max()));
  for (Eigen::Index n = 0; n < t.n_max(); ++n) {
    const double term = n == col ? 0.0 : 0.5 * std::norm(t.alpha1(n, col)) + std::norm(t.beta1(n, col));
    terms[static_cast<std::size_t>(n)] = term;
    acc.add(term);
  }
  const double tail = power_law_tail<double>(terms, static_cast<std::size_t>(t.n_max()), 5.0);
  return make_negativity_result(acc.value(), h, k, M, tail);
}

PhaseTuple phases_from_durations(const CavityConfig& cfg, double tau_bar, double tau_coast,
                                 double tau_rest) {
  return {rindler_frequency(1, cfg) * tau_bar, pi * tau_coast / cfg.delta,
          pi * tau_rest / cfg.delta};
}

SegmentDurations durations_from_phases(const CavityConfig& cfg, const PhaseTuple& phases) {
  return {phases.u / rindler_frequency(1, cfg), phases.v * cfg.delta / pi,
          phases.w * cfg.delta / pi};
}

}  // namespace cavneg
