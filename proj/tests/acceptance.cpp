// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cavneg/bogoliubov.hpp"
#include "cavneg/closed_forms.hpp"
#include "cavneg/estimate.hpp"
#include "cavneg/scenario.hpp"
#include "cavneg/sweep.hpp"

using namespace cavneg;
using constants::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int failures = 0;

void run(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit_s > 0 && secs > time_limit_s) {
    o.pass = false;
    o.detail += fmt("; runtime %.1f s over the %.0f s budget", secs, time_limit_s);
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %d. %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::vector<double> offset_grid(int count) {
  std::vector<double> g;
  for (int i = 0; i < count; ++i) g.push_back(2 * pi * (i + 0.5) / count);
  return g;
}

// ---------------------------------------------------------------------------

Outcome identity_diagonal() {
  const Transform t = massless_boost_transform<double>(2000);
  double worst = 0.0, first = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const SeriesValue<double> s = diagonal_mixing_sum(t, n - 1);
    const double value = s.value + 0.5 * s.tail;  // midpoint of [sum, sum + tail]
    if (n == 1) first = value;
    worst = std::max(worst, std::abs(value - pi * pi * n * n / 120) / (pi * pi * n * n / 120));
  }
  return {worst < 1e-6 && std::abs(first - 0.0822467) < 5e-8,
          fmt("n=1 sum %.9f, max relative error %.2e (tol 1e-6)", first, worst)};
}

Outcome pipeline_equivalence() {
  const int n_max = 2000;
  const BoostKit kit = make_boost_kit(n_max, 0.0);
  CavityConfig cfg;
  cfg.n_max = n_max;
  cfg.h = 0.01;
  cfg.k = 4;
  double worst[4] = {0, 0, 0, 0};
  auto compare = [&](int which, const Scenario& s, const std::function<NegativityResult(int)>& closed) {
    const Transform t = effective_transform(s, kit);
    for (int k = 1; k <= 4; ++k) {
      worst[which] = std::max(worst[which], std::abs(negativity_general(t, k, cfg.h).deficit_scaled -
                                                     closed(k).deficit_scaled));
    }
  };
  for (double u : offset_grid(64)) {
    const PhaseTuple ph{u, 0, 0};
    const double tau = durations_from_phases(cfg, ph).tau_bar;
    compare(0, one_way_scenario(cfg, tau), [&](int k) { return negativity_one_way(k, cfg.h, ph); });
    compare(3, kickstart_scenario(cfg, tau), [&](int k) { return negativity_kickstart(k, cfg.h); });
  }
  for (double u : offset_grid(8)) {
    for (double v : offset_grid(8)) {
      const PhaseTuple ph{u, v, 0};
      const SegmentDurations d = durations_from_phases(cfg, ph);
      compare(1, alpha_centauri_scenario(cfg, d.tau_bar, d.tau_coast),
              [&](int k) { return negativity_two_way(k, cfg.h, ph); });
    }
  }
  for (double u : offset_grid(4)) {
    for (double v : offset_grid(4)) {
      for (double w : offset_grid(4)) {
        const PhaseTuple ph{u, v, w};
        const SegmentDurations d = durations_from_phases(cfg, ph);
        compare(2, round_trip_scenario(cfg, d.tau_bar, d.tau_coast, d.tau_rest),
                [&](int k) { return negativity_round_trip(k, cfg.h, ph); });
      }
    }
  }
  const double all = *std::max_element(worst, worst + 4);
  return {all <= 1e-8, fmt("max |deficit diff| one-way %.1e, two-way %.1e, round-trip %.1e", worst[0],
                           worst[1], worst[2]) +
                           fmt(", kickstart %.1e (tol 1e-8)", worst[3])};
}

Outcome figure2() {
  const std::vector<SweepRow> rows = run_sweep(preset("fig2"));
  const double q11 = q_function(1, std::complex<double>(1.0));
  const double zero_lo = std::abs(rows.front().deficit_scaled);
  const double zero_hi = std::abs(rows.back().deficit_scaled);

  // Unimodal on the grid: strictly up to u = pi, strictly down after.
  bool unimodal = rows.size() == 201;
  for (std::size_t i = 1; i < rows.size() && unimodal; ++i) {
    const double step = rows[i].deficit_scaled - rows[i - 1].deficit_scaled;
    unimodal = i <= 100 ? step > 0 : step < 0;
  }

  // Stationary point of 2 sum a_r (1 - cos j u): root of sum a_r j sin(j u) near the grid maximum.
  const QCoefficients<double> a = q_coefficients<double>(1, 20000);
  auto slope = [&](double u) {
    double s = 0.0;
    for (int r = a.r_max; r >= 0; --r) s += a.a[r] * (2 * r + 1) * std::sin((2 * r + 1) * u);
    return s;
  };
  double lo = rows[99].u, hi = rows[101].u;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0 ? lo : hi) = mid;
  }
  const double u_star = 0.5 * (lo + hi);
  const double peak = negativity_one_way(1, 0.01, {u_star}).deficit_scaled;
  const bool ok = zero_lo <= 1e-12 && zero_hi <= 1e-12 && unimodal &&
                  std::abs(u_star - pi) <= 1e-9 && std::abs(peak - 4 * q11) <= 1e-12 &&
                  std::abs(rows[100].deficit_scaled - 4 * q11) <= 1e-12;
  return {ok, fmt("zeros %.1e, %.1e; argmax u-pi = %.1e (tol 1e-9)", zero_lo, zero_hi, u_star - pi) +
                  fmt("; peak %.12f vs 4Q(1,1) %.12f; unimodal ", peak, 4 * q11) + (unimodal ? "yes" : "no")};
}

Outcome zero_loci() {
  int wrong = 0;
  double max_on = 0.0, min_off = 1.0;
  auto classify = [&](double d, bool on) {
    if (on) {
      max_on = std::max(max_on, std::abs(d));
      if (!(std::abs(d) < 1e-12)) ++wrong;
    } else {
      min_off = std::min(min_off, d);
      if (!(d > 1e-12)) ++wrong;
    }
  };
  const std::vector<SweepRow> two = run_sweep(preset("fig3"));
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      classify(two[i * 101 + j].deficit_scaled, i % 100 == 0 || (i + j) % 100 == 0);
    }
  }
  const char* slices[] = {"fig4a", "fig4b", "fig4c"};
  for (int c = 0; c < 3; ++c) {
    const std::vector<SweepRow> rows = run_sweep(preset(slices[c]));
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 100; ++j) {
        // p^2 p' p'' = 1  <=>  2i + j + 100c/3 = 0 (mod 100)
        const bool on = i % 100 == 0 || (i + j) % 100 == 0 || (3 * (2 * i + j) + 100 * c) % 300 == 0;
        classify(rows[i * 101 + j].deficit_scaled, on);
      }
    }
  }
  return {wrong == 0, fmt("%g misclassified of 4x10201 points; max on-locus %.1e, min off-locus %.2e",
                          double(wrong), max_on, min_off)};
}

Outcome stated_bounds() {
  const double s1 = q_sum_term_share(1);
  double s_rest = 0.0;
  for (int n = 2; n <= 8; ++n) s_rest = std::max(s_rest, q_sum_term_share(n));
  const double q1 = q_function(1, std::complex<double>(1.0));
  const double b1 = q_two_by_two(std::complex<double>(1.0));
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < 256; ++i) {
    const std::complex<double> z = std::polar(1.0, 2 * pi * i / 256);
    const double exact = 2 * (q1 - q_function(1, z));
    worst = std::max(worst, std::abs(exact - 2 * (b1 - q_two_by_two(z))));
    scale = std::max(scale, exact);
  }
  return {s1 < 0.011 && s_rest < 0.0025 && worst / scale < 0.007,
          fmt("share n=1 %.3f%% (<1.1%%), max n=2..8 %.3f%% (<0.25%%), 2x2 error %.3f%% (<0.7%%)",
              100 * s1, 100 * s_rest, 100 * worst / scale)};
}

Outcome massive_consistency() {
  const Transform a = massless_boost_transform<double>(200);
  const Transform b = massive_boost_transform<double>(200, 0.0);
  const double diff = std::max({(a.alpha1 - b.alpha1).cwiseAbs().maxCoeff(),
                                (a.beta1 - b.beta1).cwiseAbs().maxCoeff(),
                                (*a.alpha2_diag - *b.alpha2_diag).cwiseAbs().maxCoeff()});
  bool ok = diff <= 1e-12;
  std::string detail = fmt("M=0 vs massless %.1e (tol 1e-12)", diff);
  for (double M : {10.0, 1e3}) {
    const IdentityResidual<double> r = check_identities(massive_boost_transform<double>(2000, M));
    ok = ok && r.order2_within_tail() && r.order1_residual < 1e-14;
    detail += fmt("; M=%g order-2 residual %.1e vs tail %.1e", M, r.order2_diag_residual.value_or(-1),
                  r.tail_estimate + r.rounding_estimate);
  }
  return {ok, detail};
}

Outcome massive_period() {
  const double M = 1e3, delta = 1.0;
  const int per_period = 400;
  const int window = 4 * per_period;
  const int max_lag = 3 * per_period / 2;
  // Scaled time s = pi tau_bar / (4 M delta); the claimed period is s = 1.
  std::vector<double> f(static_cast<std::size_t>(window + max_lag + 1));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double tau = (double(i) / per_period) * 4 * M * delta / pi;
    f[i] = *negativity_massive_limit(1, 1e-8, M, tau, delta, 2000).deficit_mass_scaled;
  }
  double mean = 0.0;
  for (int i = 0; i < window; ++i) mean += f[i];
  mean /= window;
  std::vector<double> R(static_cast<std::size_t>(max_lag + 1));
  for (int L = 0; L <= max_lag; ++L) {
    double xy = 0, xx = 0, yy = 0;
    for (int i = 0; i < window; ++i) {
      const double x = f[i] - mean, y = f[i + L] - mean;
      xy += x * y;
      xx += x * x;
      yy += y * y;
    }
    R[L] = xy / std::sqrt(xx * yy);
  }
  double best_in_window = -1, best_lag = -1, strongest = -1, strongest_lag = -1;
  for (int L = 1; L < max_lag; ++L) {
    if (R[L] < R[L - 1] || R[L] < R[L + 1]) continue;
    const double lag = double(L) / per_period;
    if (std::abs(lag - 1.0) <= 0.02 && R[L] > best_in_window) {
      best_in_window = R[L];
      best_lag = lag;
    }
    if (R[L] > strongest) {
      strongest = R[L];
      strongest_lag = lag;
    }
  }

  // Figure datasets: k = 1..4 and k = 30.
  int maxima[2] = {0, 0};
  const char* names[] = {"fig5a", "fig5b"};
  bool datasets_ok = true;
  for (int which = 0; which < 2; ++which) {
    SweepSpec spec = preset(names[which]);
    spec.output = std::string(names[which]) + ".csv";
    std::ofstream out(*spec.output);
    const std::vector<SweepRow> rows = run_sweep(spec);
    write_csv(out, spec, rows);
    datasets_ok = datasets_ok && out.good() && rows.size() == spec.ks.size() * 801;
    for (std::size_t i = 1; i + 1 < 401; ++i) {  // first period of the first k
      if (rows[i].deficit_scaled > rows[i - 1].deficit_scaled &&
          rows[i].deficit_scaled > rows[i + 1].deficit_scaled) {
        ++maxima[which];
      }
    }
    for (const SweepRow& r : rows) datasets_ok = datasets_ok && r.deficit_scaled >= 0.0;
  }
  const bool ok = best_in_window >= 0.99 && datasets_ok && maxima[1] > maxima[0];
  return {ok, fmt("autocorrelation local peak %.4f at lag %.4f T (window 0.98..1.02, need >= 0.99); ",
                  best_in_window, best_lag) +
                  fmt("strongest peak %.4f at %.4f T; local maxima per period k=1: %g, k=30: %g",
                      strongest, strongest_lag, maxima[0], maxima[1])};
}

Outcome periodicity() {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n_max = 500;
  const BoostKit kit = make_boost_kit(n_max, 0.0);
  double worst = 0.0;
  for (int i = 0; i < 16; ++i) {
    CavityConfig cfg;
    cfg.n_max = n_max;
    cfg.h = (unit(rng) < 0.5 ? -1 : 1) * (1e-3 + 0.05 * unit(rng));
    cfg.delta = 0.2 + 2 * unit(rng);
    cfg.k = 1 + static_cast<int>(4 * unit(rng));
    const double P = acceleration_period(cfg);
    const double tb = 2 * P * unit(rng), tc = 4 * cfg.delta * unit(rng), tr = 4 * cfg.delta * unit(rng);

    auto general = [&](double a, double b) {
      return negativity_general(effective_transform(alpha_centauri_scenario(cfg, a, b), kit), cfg.k, cfg.h)
          .negativity;
    };
    auto closed = [&](double a, double b, double c) {
      return negativity_round_trip(cfg.k, cfg.h, phases_from_durations(cfg, a, b, c)).negativity;
    };
    const double g = general(tb, tc), c = closed(tb, tc, tr);
    worst = std::max({worst, std::abs(general(tb + P, tc) - g), std::abs(general(tb, tc + 2 * cfg.delta) - g),
                      std::abs(closed(tb + P, tc, tr) - c), std::abs(closed(tb, tc + 2 * cfg.delta, tr) - c),
                      std::abs(closed(tb, tc, tr + 2 * cfg.delta) - c)});
  }
  return {worst <= 1e-12, fmt("max |negativity change| %.1e over 16 points (tol 1e-12)", worst)};
}

Outcome physical() {
  PhysicalInput optical;
  optical.acceleration = 10;
  optical.delta = 10;
  optical.transverse_wavelength = 500e-9;
  const EstimateSummary o = estimate_physical(optical);

  PhysicalInput kaon;
  kaon.acceleration = 1e-10;
  kaon.delta = 0.1;
  kaon.mass = 1e-27;
  const EstimateSummary k = estimate_physical(kaon);
  const double hM2 = k.params.h * k.params.M * k.params.M;
  const bool ok = std::abs(std::log10(o.params.M) - 8) < 0.5 && hM2 <= 100 && k.params.validity.massive_ok;
  return {ok, fmt("optical M = %.3e; kaon M = %.3e, h = %.3e, hM^2 = %.2f (<= 100)", o.params.M, k.params.M,
                  k.params.h, hM2)};
}

}  // namespace

int main() {
  run(1, "order-h^2 diagonal identity, n=1..8, n_max=2000", 10, identity_diagonal);
  run(2, "pipeline vs closed forms, 64-point grids, k=1..4, n_max=2000", 120, pipeline_equivalence);
  run(3, "fig2 zeros and maximum", 0, figure2);
  run(4, "zero loci of the two-way and round-trip deficits", 0, zero_loci);
  run(5, "sum-term shares and 2x2 replacement bound", 0, stated_bounds);
  run(6, "massive boost consistency", 0, massive_consistency);
  run(7, "large-mass waveform period and fig5 datasets", 30, massive_period);
  run(8, "periodicity in tau_bar and tau'", 0, periodicity);
  run(9, "physical estimates", 0, physical);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
