#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "cavneg/bogoliubov.hpp"
#include "cavneg/closed_forms.hpp"
#include "cavneg/negativity.hpp"
#include "cavneg/spectrum.hpp"

namespace cavneg {

/// Uniform acceleration for proper time `duration` at the cavity centre.
/// sign = +1 accelerates toward increasing x, -1 toward decreasing x.
struct Accelerated {
  int sign = 1;
  double duration = 0.0;
};

/// Inertial coast (or rest) for proper time `duration`.
struct Inertial {
  double duration = 0.0;
};

using TrajectorySegment = std::variant<Accelerated, Inertial>;

/// Rob's trajectory. Every accelerated segment is entered with a boost and
/// closed with the inverse boost, so the cavity starts and ends inertial;
/// `kickstart` leaves the final accelerated segment open.
struct Scenario {
  std::vector<TrajectorySegment> segments;
  CavityConfig cfg;
  bool kickstart = false;
};

Scenario one_way_scenario(const CavityConfig& cfg, double tau_bar);
/// Blast off, coast for tau_coast, brake with the mirrored manoeuvre.
Scenario alpha_centauri_scenario(const CavityConfig& cfg, double tau_bar, double tau_coast);
/// Outward trip, rest for tau_rest, then the outward manoeuvres reversed.
Scenario round_trip_scenario(const CavityConfig& cfg, double tau_bar, double tau_coast,
                             double tau_rest);
Scenario kickstart_scenario(const CavityConfig& cfg, double tau_bar);

/// Boost and inverse boost for one (n_max, M), shared read-only across
/// scenario evaluations.
struct BoostKit {
  std::shared_ptr<const Transform> boost;
  std::shared_ptr<const Transform> inverse;
  int n_max = 0;
  double M = 0.0;
};

/// With track_order2 = false the second-order diagonal is dropped, which skips
/// its bookkeeping during composition.
BoostKit make_boost_kit(int n_max, double M, bool track_order2 = false);

/// End-to-end transform of a scenario: each accelerated segment is
/// boost -> free evolution over the accelerated spectrum -> inverse boost,
/// each inertial segment is free evolution over omega_n, chained in order.
/// Massless accelerated segments evolve with the Rindler spectrum; massive ones
/// with omega_n.
Transform effective_transform(const Scenario& s, bool track_order2 = false);
Transform effective_transform(const Scenario& s, const BoostKit& kit);

/// 1/2 - h^2 sum_{n != k} (|alpha1_nk|^2 / 2 + |beta1_nk|^2), k one-based.
NegativityResult negativity_general(const Transform& t, int k, double h, double M = 0.0);

/// Phase angles (u, v, w) of the given durations.
PhaseTuple phases_from_durations(const CavityConfig& cfg, double tau_bar, double tau_coast = 0.0,
                                 double tau_rest = 0.0);

struct SegmentDurations {
  double tau_bar = 0.0;
  double tau_coast = 0.0;
  double tau_rest = 0.0;
};

SegmentDurations durations_from_phases(const CavityConfig& cfg, const PhaseTuple& phases);

}  // namespace cavneg
