// cavneg: sweeps, figure presets, physical estimates and self-verification for
// order-h^2 negativity of accelerated cavity modes.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cavneg/errors.hpp"
#include "cavneg/estimate.hpp"
#include "cavneg/sweep.hpp"
#include "cavneg/verification.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kValidity = 2, kVerification = 3 };

struct SweepFlags {
  std::optional<std::string> preset, scenario, k, h, M, delta, n_max, r_max, mode, out, workers;
  std::optional<std::string> segments, config, verify;
  std::vector<std::string> axes;
  double mutate_a11 = 1.0;
};

struct EstimateFlags {
  double accel = 0.0;
  double delta = 1.0;
  std::optional<double> mass, wavelength;
  int k = 1;
};

int run_sweep_command(const SweepFlags& f) {
  using namespace cavneg;
  SweepSpec spec;
  if (f.preset) apply_setting(spec, "preset", *f.preset);
  if (f.config) spec = load_config_file(*f.config, spec);

  const std::pair<const char*, const std::optional<std::string>*> overrides[] = {
      {"scenario", &f.scenario}, {"k", &f.k},         {"h", &f.h},
      {"M", &f.M},               {"delta", &f.delta}, {"n_max", &f.n_max},
      {"r_max", &f.r_max},       {"mode", &f.mode},   {"segments", &f.segments},
      {"out", &f.out},           {"workers", &f.workers}};
  for (const auto& [key, value] : overrides) {
    if (*value) apply_setting(spec, key, **value);
  }
  for (const std::string& axis : f.axes) apply_setting(spec, "axis", axis);

  const std::string where = run_sweep_to_output(spec, std::cout);
  if (where != "-") std::cerr << "wrote " << where << "\n";
  return kOk;
}

int run_verify_command(const SweepFlags& f) {
  using namespace cavneg;
  VerificationLevel level;
  if (*f.verify == "fast") {
    level = VerificationLevel::Fast;
  } else if (*f.verify == "full") {
    level = VerificationLevel::Full;
  } else {
    throw ConfigError("verify: expected fast or full");
  }
  const VerificationReport report = run_verification(level, {f.mutate_a11});
  print_report(std::cout, report);
  return report.all_passed() ? kOk : kVerification;
}

int run_estimate_command(const EstimateFlags& f) {
  cavneg::PhysicalInput in;
  in.acceleration = f.accel;
  in.delta = f.delta;
  in.mass = f.mass;
  in.transverse_wavelength = f.wavelength;
  in.k = f.k;
  cavneg::print_estimate(std::cout, cavneg::estimate_physical(in));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement degradation of accelerated cavity modes"};
  app.set_help_flag("--help", "print this help and exit");  // --h is the acceleration
  app.set_version_flag("--version", "cavneg 0.1.0");

  SweepFlags sf;
  app.add_option("--preset", sf.preset, "fig2, fig3, fig4a, fig4b, fig4c, fig5a or fig5b");
  app.add_option("--config", sf.config, "key = value file, applied after the preset");
  app.add_option("--scenario", sf.scenario,
                 "one-way, alpha-centauri, round-trip, kickstart, massive-one-way or custom");
  app.add_option("--k", sf.k, "mode index, or a comma-separated list");
  app.add_option("--h", sf.h, "dimensionless acceleration, |h| < 2");
  app.add_option("--M", sf.M, "dimensionless mass");
  app.add_option("--delta", sf.delta, "cavity length");
  app.add_option("--n-max", sf.n_max, "mode truncation for the general pipeline");
  app.add_option("--r-max", sf.r_max, "truncation of the Q series (0 = automatic)");
  app.add_option("--mode", sf.mode, "closed-form, general or both");
  app.add_option("--axis", sf.axes, "name=start:stop:count, e.g. u=0:2pi:201 (repeatable)");
  app.add_option("--segments", sf.segments, "custom trajectory, e.g. \"A+:0.5, I:2, A-:0.5\"");
  app.add_option("--out", sf.out, "CSV output path (default stdout; relative to $CAVNEG_OUT_DIR)");
  app.add_option("--workers", sf.workers, "worker threads (0 = all cores)");
  app.add_option("--verify", sf.verify, "run the self-check suite: fast or full");
  app.add_option("--mutate-a11", sf.mutate_a11, "scale a_{1,1} in the 2x2 check")->group("");

  EstimateFlags ef;
  CLI::App* estimate = app.add_subcommand("estimate", "dimensionless parameters and peak degradation");
  estimate->add_option("--accel", ef.accel, "proper acceleration [m/s^2]")->required();
  estimate->add_option("--delta", ef.delta, "cavity length [m]")->required();
  auto* mass = estimate->add_option("--mass", ef.mass, "field quantum mass [kg]");
  auto* wavelength =
      estimate->add_option("--wavelength", ef.wavelength, "transverse wavelength [m]");
  mass->excludes(wavelength);
  estimate->add_option("--k", ef.k, "mode index")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*estimate) return run_estimate_command(ef);
    if (sf.verify) return run_verify_command(sf);
    return run_sweep_command(sf);
  } catch (const cavneg::DomainError& e) {
    std::cerr << "cavneg: " << e.what() << "\n";
    return kValidity;
  } catch (const std::exception& e) {
    std::cerr << "cavneg: " << e.what() << "\n";
    return kConfig;
  }
}
