#include "cavneg/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <optional>
#include <random>

#include "cavneg/closed_forms.hpp"
#include "cavneg/scenario.hpp"

namespace cavneg {

using constants::pi;

namespace {

class Checker {
 public:
  void at_most(std::string name, double measured, double threshold) {
    report_.checks.push_back({std::move(name), measured, threshold, measured <= threshold, "<="});
  }
  void below(std::string name, double measured, double threshold) {
    report_.checks.push_back({std::move(name), measured, threshold, measured < threshold, "<"});
  }
  void above(std::string name, double measured, double threshold) {
    report_.checks.push_back({std::move(name), measured, threshold, measured > threshold, ">"});
  }
  VerificationReport take() { return std::move(report_); }

 private:
  VerificationReport report_;
};

std::string tagged(const std::string& base, int n_max) {
  return base + " (n_max=" + std::to_string(n_max) + ")";
}

void identity_checks(Checker& c, int n_max, std::optional<double> M) {
  const Transform t = M ? massive_boost_transform<double>(n_max, *M) : massless_boost_transform<double>(n_max);
  const IdentityResidual<double> r = check_identities(t);
  char label[64];
  if (M) {
    std::snprintf(label, sizeof label, "massive boost M=%g", *M);
  } else {
    std::snprintf(label, sizeof label, "massless boost");
  }
  c.at_most(tagged(std::string(label) + " identity order 1", n_max), r.order1_residual, 1e-14);
  c.at_most(tagged(std::string(label) + " identity order 2 diagonal", n_max),
            r.order2_diag_residual.value_or(0.0), r.tail_estimate + r.rounding_estimate);
}

void diagonal_sum_check(Checker& c, int n_max) {
  const Transform t = massless_boost_transform<double>(n_max);
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const SeriesValue<double> s = diagonal_mixing_sum(t, n - 1);
    const double expected = pi * pi * n * n / 120.0;
    worst = std::max(worst, std::abs(s.value + 0.5 * s.tail - expected) / expected);
  }
  c.below(tagged("massless diagonal sum = pi^2 n^2/120, n=1..8, relative", n_max), worst, 1e-6);
}

// Evenly spaced, offset by half a cell so no point sits on a zero locus.
std::vector<double> offset_grid(int count) {
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = 2.0 * pi * (i + 0.5) / count;
  return g;
}

struct Equivalence {
  double worst_diff = 0.0;
  double worst_form = 0.0;
};

// Pipeline vs closed forms; `side` points per axis, `points` in total for one-way and kickstart.
Equivalence pipeline_equivalence(const BoostKit& kit, int points, int side2, int side3,
                                 int k_max) {
  CavityConfig cfg;
  cfg.n_max = kit.n_max;
  cfg.h = 0.01;
  cfg.k = k_max;
  Equivalence e;
  auto compare = [&](const Scenario& s, auto closed) {
    const Transform t = effective_transform(s, kit);
    for (int k = 1; k <= k_max; ++k) {
      const NegativityResult general = negativity_general(t, k, cfg.h);
      const NegativityResult exact = closed(k);
      e.worst_diff = std::max(e.worst_diff, std::abs(general.deficit_scaled - exact.deficit_scaled));
      e.worst_form = std::max(e.worst_form, exact.form_discrepancy.value_or(0.0));
    }
  };
  for (double u : offset_grid(points)) {
    const PhaseTuple ph{u, 0, 0};
    const SegmentDurations d = durations_from_phases(cfg, ph);
    compare(one_way_scenario(cfg, d.tau_bar),
            [&](int k) { return negativity_one_way(k, cfg.h, ph); });
    compare(kickstart_scenario(cfg, d.tau_bar),
            [&](int k) { return negativity_kickstart(k, cfg.h); });
  }
  for (double u : offset_grid(side2)) {
    for (double v : offset_grid(side2)) {
      const PhaseTuple ph{u, v, 0};
      const SegmentDurations d = durations_from_phases(cfg, ph);
      compare(alpha_centauri_scenario(cfg, d.tau_bar, d.tau_coast),
              [&](int k) { return negativity_two_way(k, cfg.h, ph); });
    }
  }
  for (double u : offset_grid(side3)) {
    for (double v : offset_grid(side3)) {
      for (double w : offset_grid(side3)) {
        const PhaseTuple ph{u, v, w};
        const SegmentDurations d = durations_from_phases(cfg, ph);
        compare(round_trip_scenario(cfg, d.tau_bar, d.tau_coast, d.tau_rest),
                [&](int k) { return negativity_round_trip(k, cfg.h, ph); });
      }
    }
  }
  return e;
}

void coefficient_checks(Checker& c, const VerificationOptions& opts) {
  double smallest = 1.0;
  for (int n = 1; n <= 32; ++n) {
    for (int r = 0; r <= 2000; ++r) smallest = std::min(smallest, q_coefficient<double>(n, r));
  }
  c.above("a_{n,r} > 0 for n <= 32, r <= 2000", smallest, 0.0);

  c.below("sum-term share of Q(1,1)", q_sum_term_share(1), 0.011);
  double share = 0.0;
  for (int n = 2; n <= 8; ++n) share = std::max(share, q_sum_term_share(n));
  c.below("sum-term share of Q(n,1), n=2..8", share, 0.0025);

  const double a10 = q_coefficient<double>(1, 0);
  const double a11 = q_coefficient<double>(1, 1) * opts.a11_scale;
  const double q1 = q_function(1, std::complex<double>(1.0));
  const double q1_block = q_two_by_two(1.0, a10, a11);
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i < 256; ++i) {
    const std::complex<double> z = std::polar(1.0, 2.0 * pi * i / 256.0);
    const double exact = 2.0 * (q1 - q_function(1, z));
    const double block = 2.0 * (q1_block - q_two_by_two(z, a10, a11));
    worst = std::max(worst, std::abs(exact - block));
    scale = std::max(scale, exact);
  }
  c.below("2x2 block replacement error / max one-way deficit", worst / scale, 0.007);
}

void massive_reduction_check(Checker& c) {
  const Transform massless = massless_boost_transform<double>(200);
  const Transform massive = massive_boost_transform<double>(200, 0.0);
  const double diff = std::max({(massless.alpha1 - massive.alpha1).cwiseAbs().maxCoeff(),
                                (massless.beta1 - massive.beta1).cwiseAbs().maxCoeff(),
                                (*massless.alpha2_diag - *massive.alpha2_diag).cwiseAbs().maxCoeff()});
  c.at_most("massive boost at M=0 vs massless, entrywise (n_max=200)", diff, 1e-12);
}

void periodicity_check(Checker& c, int n_max, int samples) {
  const BoostKit kit = make_boost_kit(n_max, 0.0);
  std::mt19937_64 rng(20100412);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    CavityConfig cfg;
    cfg.n_max = n_max;
    cfg.h = 0.001 + 0.019 * unit(rng);
    cfg.delta = 0.5 + unit(rng);
    cfg.k = 1 + static_cast<int>(4 * unit(rng));
    const double period = acceleration_period(cfg);
    const double tau_bar = period * unit(rng);
    const double coast = 2.0 * cfg.delta * unit(rng);
    const auto neg = [&](double tb, double tc) {
      return negativity_general(effective_transform(alpha_centauri_scenario(cfg, tb, tc), kit),
                                cfg.k, cfg.h)
          .negativity;
    };
    const double base = neg(tau_bar, coast);
    worst = std::max({worst, std::abs(neg(tau_bar + period, coast) - base),
                      std::abs(neg(tau_bar, coast + 2.0 * cfg.delta) - base)});
  }
  c.at_most(tagged("negativity shift by acceleration period / 2 delta", n_max), worst, 1e-12);
}

void convergence_check(Checker& c, int n_max) {
  const BoostKit coarse = make_boost_kit(n_max / 2, 0.0);
  const BoostKit fine = make_boost_kit(n_max, 0.0);
  CavityConfig cfg;
  cfg.h = 0.01;
  cfg.k = 4;
  double worst = 0.0;
  for (double u : offset_grid(4)) {
    CavityConfig c1 = cfg, c2 = cfg;
    c1.n_max = n_max / 2;
    c2.n_max = n_max;
    const double tau = durations_from_phases(cfg, {u, 0, 0}).tau_bar;
    const Transform t1 = effective_transform(one_way_scenario(c1, tau), coarse);
    const Transform t2 = effective_transform(one_way_scenario(c2, tau), fine);
    for (int k = 1; k <= 4; ++k) {
      worst = std::max(worst, std::abs(negativity_general(t2, k, cfg.h).deficit_scaled -
                                       negativity_general(t1, k, cfg.h).deficit_scaled));
    }
  }
  c.below("one-way deficit change on doubling n_max " + std::to_string(n_max / 2) + " -> " +
              std::to_string(n_max),
          worst, 1e-10);
}

void massive_limit_check(Checker& c, int n_max) {
  const double M = 1e3;
  CavityConfig cfg;
  cfg.M = M;
  cfg.h = 1e-7;
  cfg.n_max = n_max;
  const BoostKit kit = make_boost_kit(n_max, M);
  double worst = 0.0;
  for (double s : {0.13, 0.37, 0.5, 0.71}) {
    const double tau = s * 4.0 * M / pi;
    const double general =
        negativity_general(effective_transform(one_way_scenario(cfg, tau), kit), 1, cfg.h, M)
            .deficit_scaled;
    const double limit = negativity_massive_limit(1, cfg.h, M, tau, 1.0, n_max).deficit_scaled;
    worst = std::max(worst, std::abs(general - limit) / limit);
  }
  c.below(tagged("pipeline vs large-mass formula, M=1000, k=1, relative", n_max), worst, 1e-3);
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerificationReport run_verification(VerificationLevel level, const VerificationOptions& opts) {
  Checker c;
  const bool full = level == VerificationLevel::Full;
  const int n_max = full ? 2000 : 500;

  coefficient_checks(c, opts);
  identity_checks(c, n_max, std::nullopt);
  diagonal_sum_check(c, n_max);
  massive_reduction_check(c);
  for (double M : full ? std::vector<double>{0.0, 10.0, 1e3} : std::vector<double>{10.0}) {
    identity_checks(c, n_max, M);
  }

  const BoostKit kit = make_boost_kit(n_max, 0.0);
  const Equivalence e =
      full ? pipeline_equivalence(kit, 64, 8, 4, 4) : pipeline_equivalence(kit, 16, 4, 2, 2);
  const std::string grid = full ? "64" : "16";
  c.at_most(tagged("closed forms vs pipeline, " + grid + " phase points per scenario", n_max),
            e.worst_diff, 1e-8);
  c.at_most("Q-sum vs coefficient product forms", e.worst_form, 1e-12);

  periodicity_check(c, full ? 500 : 200, 16);
  if (full) {
    convergence_check(c, n_max);
    massive_limit_check(c, n_max);
  }
  return c.take();
}

void print_report(std::ostream& os, const VerificationReport& report) {
  char line[256];
  for (const CheckResult& c : report.checks) {
    std::snprintf(line, sizeof line, "%s  %-72s %.3e %s %.3e\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.relation.c_str(), c.threshold);
    os << line;
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const CheckResult& c) { return !c.pass; });
  os << report.checks.size() - static_cast<std::size_t>(failed) << "/" << report.checks.size()
     << " checks passed\n";
}

}  // namespace cavneg
