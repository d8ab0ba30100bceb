#include <cmath>

#include "cavneg/errors.hpp"
#include "cavneg/scenario.hpp"
#include "doctest.h"

using namespace cavneg;
using constants::pi;

namespace {

CavityConfig config(int n_max, double h = 0.01, int k = 1) {
  CavityConfig cfg;
  cfg.n_max = n_max;
  cfg.h = h;
  cfg.k = k;
  return cfg;
}

double max_abs(const Transform::Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("a full acceleration period closes the transform") {
  const CavityConfig cfg = config(100, 0.2);
  const Transform t = effective_transform(one_way_scenario(cfg, acceleration_period(cfg)));
  CHECK(max_abs(t.alpha1) < 1e-11);
  CHECK(max_abs(t.beta1) < 1e-11);
  CHECK(negativity_general(t, 1, cfg.h).deficit_scaled < 1e-20);
}

TEST_CASE("pipeline reproduces the closed forms") {
  const CavityConfig cfg = config(400, 0.01, 3);
  const BoostKit kit = make_boost_kit(cfg.n_max, 0.0);
  const PhaseTuple ph{1.3, 2.2, 0.6};
  const SegmentDurations d = durations_from_phases(cfg, ph);
  const PhaseTuple back = phases_from_durations(cfg, d.tau_bar, d.tau_coast, d.tau_rest);
  CHECK(back.u == doctest::Approx(ph.u));
  CHECK(back.v == doctest::Approx(ph.v));
  CHECK(back.w == doctest::Approx(ph.w));

  const Transform one = effective_transform(one_way_scenario(cfg, d.tau_bar), kit);
  const Transform two = effective_transform(alpha_centauri_scenario(cfg, d.tau_bar, d.tau_coast), kit);
  const Transform round =
      effective_transform(round_trip_scenario(cfg, d.tau_bar, d.tau_coast, d.tau_rest), kit);
  const Transform kick = effective_transform(kickstart_scenario(cfg, d.tau_bar), kit);
  for (int k = 1; k <= 3; ++k) {
    CHECK(negativity_general(one, k, cfg.h).deficit_scaled ==
          doctest::Approx(negativity_one_way(k, cfg.h, ph).deficit_scaled).epsilon(1e-9));
    CHECK(negativity_general(two, k, cfg.h).deficit_scaled ==
          doctest::Approx(negativity_two_way(k, cfg.h, ph).deficit_scaled).epsilon(1e-9));
    CHECK(negativity_general(round, k, cfg.h).deficit_scaled ==
          doctest::Approx(negativity_round_trip(k, cfg.h, ph).deficit_scaled).epsilon(1e-9));
    CHECK(negativity_general(kick, k, cfg.h).deficit_scaled ==
          doctest::Approx(negativity_kickstart(k, cfg.h).deficit_scaled).epsilon(1e-9));
  }
}

TEST_CASE("single-pass folding agrees with explicit composition") {
  const CavityConfig cfg = config(120);
  const Scenario scenarios[] = {alpha_centauri_scenario(cfg, 0.8, 0.3),
                                round_trip_scenario(cfg, 0.8, 0.3, 1.1),
                                kickstart_scenario(cfg, 0.5),
                                {{Inertial{0.2}, Accelerated{-1, 0.4}, Inertial{0.1}, Accelerated{+1, 1.3}}, cfg, true}};
  for (const Scenario& s : scenarios) {
    // Tracking the second-order diagonal goes through compose() segment by segment.
    const Transform with = effective_transform(s, true);
    const Transform without = effective_transform(s, false);
    CHECK(with.alpha2_diag.has_value());
    CHECK_FALSE(without.alpha2_diag.has_value());
    CHECK(max_abs(with.alpha1 - without.alpha1) < 1e-13);
    CHECK(max_abs(with.beta1 - without.beta1) < 1e-13);
    CHECK((with.phases - without.phases).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(check_identities(with).order1_residual < 1e-14 * (1 + max_abs(with.alpha1)));
  }
}

TEST_CASE("periodicity and reversal symmetry") {
  const CavityConfig cfg = config(150, 0.05, 2);
  const BoostKit kit = make_boost_kit(cfg.n_max, 0.0);
  const double period = acceleration_period(cfg);
  auto deficit = [&](double tau_bar, double coast) {
    return negativity_general(effective_transform(alpha_centauri_scenario(cfg, tau_bar, coast), kit),
                              2, cfg.h)
        .negativity;
  };
  const double base = deficit(0.7, 0.45);
  CHECK(deficit(0.7 + period, 0.45) == doctest::Approx(base).epsilon(1e-13));
  CHECK(deficit(0.7, 0.45 + 2 * cfg.delta) == doctest::Approx(base).epsilon(1e-13));
  CHECK(deficit(period - 0.7, 2 * cfg.delta - 0.45) == doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("deficit scales out h^2") {
  for (double h : {0.001, 0.01, 0.05}) {
    const CavityConfig cfg = config(200, h);
    const Transform t = effective_transform(one_way_scenario(cfg, 0.4 * acceleration_period(cfg)));
    const NegativityResult r = negativity_general(t, 1, h);
    CHECK(r.deficit_scaled == doctest::Approx(negativity_one_way(1, h, {0.8 * pi}).deficit_scaled).epsilon(1e-9));
    CHECK(r.negativity == doctest::Approx(0.5 - h * h * r.deficit_scaled).epsilon(1e-15));
  }
}

TEST_CASE("a zero-duration accelerated segment is transparent") {
  const CavityConfig cfg = config(80);
  Scenario s{{Accelerated{+1, 0.6}, Accelerated{-1, 0.0}}, cfg, false};
  const Transform t = effective_transform(s);
  const Transform one = effective_transform(one_way_scenario(cfg, 0.6));
  CHECK(negativity_general(t, 1, cfg.h).deficit_scaled ==
        doctest::Approx(negativity_general(one, 1, cfg.h).deficit_scaled));
}

TEST_CASE("massive pipeline approaches the large-mass formula") {
  CavityConfig cfg = config(1000, 1e-7);
  cfg.M = 1e3;
  const double tau = 0.37 * 4.0 * cfg.M / pi;
  const Transform t = effective_transform(one_way_scenario(cfg, tau));
  const double general = negativity_general(t, 1, cfg.h, cfg.M).deficit_scaled;
  const double limit = negativity_massive_limit(1, cfg.h, cfg.M, tau, 1.0, 1000).deficit_scaled;
  CHECK(general == doctest::Approx(limit).epsilon(1e-3));
}

TEST_CASE("argument checks") {
  const CavityConfig cfg = config(10);
  const Transform t = effective_transform(one_way_scenario(cfg, 0.5));
  CHECK_THROWS_AS(negativity_general(t, 6, 0.01), ArgumentError);
  CHECK_THROWS_AS(negativity_general(t, 0, 0.01), ArgumentError);
  CHECK_THROWS_AS(effective_transform(one_way_scenario(cfg, -1.0)), DomainError);
  CHECK_THROWS_AS(effective_transform(one_way_scenario(config(10, 2.5), 1.0)), DomainError);
  CHECK_THROWS_AS(effective_transform(one_way_scenario(cfg, 1.0), make_boost_kit(20, 0.0)), ArgumentError);
}
