#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavneg/scenario.hpp"

namespace cavneg {

enum class ScenarioKind { OneWay, AlphaCentauri, RoundTrip, Kickstart, MassiveOneWay, Custom };
enum class EvalMode { ClosedForm, General, Both };

std::string_view to_string(ScenarioKind kind);
std::string_view to_string(EvalMode mode);
ScenarioKind parse_scenario_kind(std::string_view text);
EvalMode parse_eval_mode(std::string_view text);

/// Real number with an optional pi factor: "2pi", "-pi/2", "2*pi/3", "1e-3".
double parse_scalar(std::string_view text);

/// One swept coordinate, `count` evenly spaced points from start to stop inclusive.
struct Axis {
  char name = 'u';
  double start = 0.0;
  double stop = 0.0;
  int count = 2;

  double at(int i) const;
};

/// Parses "u=0:2pi:201".
Axis parse_axis(std::string_view text);

/// For the massive-one-way scenario u is the scaled time pi tau_bar / (4 M delta),
/// so u in [0, 1] spans one period of the dominant k=1 beat. For the other
/// scenarios u, v, w are the phases of the closed forms.
struct SweepSpec {
  ScenarioKind scenario = ScenarioKind::OneWay;
  std::string label;  // "scenario" column; defaults to the scenario name
  std::vector<Axis> axes;
  double u = 0.0;     // fixed coordinates for unswept axes
  double v = 0.0;
  double w = 0.0;
  std::vector<int> ks{1};
  double h = 0.01;
  double M = 0.0;
  double delta = 1.0;
  int n_max = 2000;
  int r_max = 0;      // 0: automatic
  EvalMode mode = EvalMode::ClosedForm;
  std::vector<TrajectorySegment> segments;  // custom scenario only
  std::optional<std::string> output;
  int workers = 0;    // 0: hardware concurrency

  /// Throws ConfigError naming the offending field, DomainError for |h| >= 2.
  void validate() const;
  std::string scenario_label() const;
};

/// Named parameter sets: fig2, fig3, fig4a, fig4b, fig4c, fig5a, fig5b.
SweepSpec preset(std::string_view name);
std::vector<std::string> preset_names();

/// Applies one key=value setting. Recognised keys: preset, scenario, k (comma
/// list), h, M, delta, n_max, r_max, mode, axis, u, v, w, segments, out,
/// workers. `preset` replaces the whole spec.
void apply_setting(SweepSpec& spec, std::string_view key, std::string_view value);

/// Flat key = value lines, '#' starts a comment. Repeated `axis` keys accumulate.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);
SweepSpec load_config_file(const std::string& path, SweepSpec base = {});

/// "A+:0.5, I:1, A-:0.5" -> segments (durations in the units of delta).
std::vector<TrajectorySegment> parse_segments(std::string_view text);

struct SweepRow {
  std::string scenario;
  int k = 1;
  double h = 0.0;
  double M = 0.0;
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  double deficit_scaled = 0.0;
  double negativity = 0.5;
  double log_negativity = 0.0;
  std::string method;
  double truncation_tail = 0.0;
  std::optional<double> deficit_general;
  std::optional<double> abs_diff;
  std::optional<double> deficit_m4;  // (1/2 - N) / (h^2 M^4), massive scenario
};

/// Rows ordered by k (outermost), then lexicographically over the axes in the
/// order they were given; independent of the worker count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);
std::string sweep_csv(const SweepSpec& spec);

/// Runs the sweep and writes to spec.output (stdout when unset). A relative
/// output path is resolved against $CAVNEG_OUT_DIR when that is set.
/// Returns the path written, or "-" for stdout.
std::string run_sweep_to_output(const SweepSpec& spec, std::ostream& fallback);

/// Shortest decimal string that reads back to the same double.
std::string format_number(double x);

}  // namespace cavneg
