#include "cavneg/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "cavneg/closed_forms.hpp"
#include "cavneg/errors.hpp"

namespace cavneg {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string normalise_key(std::string_view key) {
  std::string k(trim(key));
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? next : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

double parse_plain(std::string_view text, std::string_view field) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(field) + ": cannot parse number '" + std::string(text) + "'");
  }
  return x;
}

int parse_int(std::string_view text, std::string_view field) {
  text = trim(text);
  int x = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(field) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return x;
}

double parse_field(std::string_view text, std::string_view field) {
  try {
    return parse_scalar(text);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(field) + ": " + e.what());
  }
}

constexpr std::string_view axis_names_for(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::AlphaCentauri: return "uv";
    case ScenarioKind::RoundTrip: return "uvw";
    case ScenarioKind::Custom: return "";
    default: return "u";
  }
}

struct Point {
  double u, v, w;
};

// Evaluates every k of the spec at one grid point.
class PointEvaluator {
 public:
  explicit PointEvaluator(const SweepSpec& spec) : spec_(spec) {
    if (spec.mode != EvalMode::ClosedForm) kit_ = make_boost_kit(spec.n_max, scenario_mass());
  }

  void evaluate(const Point& pt, std::vector<SweepRow*>& out) const {
    std::optional<Transform> transform;
    if (spec_.mode != EvalMode::ClosedForm) transform = effective_transform(build_scenario(pt), kit_);

    for (std::size_t i = 0; i < spec_.ks.size(); ++i) {
      const int k = spec_.ks[i];
      SweepRow& row = *out[i];
      row.scenario = spec_.scenario_label();
      row.k = k;
      row.h = spec_.h;
      row.M = spec_.M;
      row.u = pt.u;
      row.v = pt.v;
      row.w = pt.w;
      row.method = std::string(to_string(spec_.mode));

      NegativityResult primary;
      if (spec_.mode == EvalMode::General) {
        primary = negativity_general(*transform, k, spec_.h, scenario_mass());
      } else {
        primary = closed_form(k, pt);
      }
      if (spec_.mode == EvalMode::Both) {
        const NegativityResult general = negativity_general(*transform, k, spec_.h, scenario_mass());
        row.deficit_general = general.deficit_scaled;
        row.abs_diff = std::abs(primary.deficit_scaled - general.deficit_scaled);
        primary.truncation_tail += general.truncation_tail;
      }
      row.deficit_scaled = primary.deficit_scaled;
      row.negativity = primary.negativity;
      row.log_negativity = primary.negativity >= 0.0 ? std::log1p(primary.negativity)
                                                     : std::numeric_limits<double>::quiet_NaN();
      row.truncation_tail = primary.truncation_tail;
      if (spec_.scenario == ScenarioKind::MassiveOneWay) {
        row.deficit_m4 = primary.deficit_scaled / std::pow(spec_.M, 4);
      }
    }
  }

 private:
  double scenario_mass() const {
    return spec_.scenario == ScenarioKind::MassiveOneWay || spec_.scenario == ScenarioKind::Custom
               ? spec_.M
               : 0.0;
  }

  double massive_tau_bar(double u) const { return u * 4.0 * spec_.M * spec_.delta / constants::pi; }

  CavityConfig config() const {
    CavityConfig cfg;
    cfg.delta = spec_.delta;
    cfg.M = scenario_mass();
    cfg.h = spec_.h;
    cfg.k = *std::max_element(spec_.ks.begin(), spec_.ks.end());
    cfg.n_max = spec_.n_max;
    return cfg;
  }

  Scenario build_scenario(const Point& pt) const {
    const CavityConfig cfg = config();
    if (spec_.scenario == ScenarioKind::Custom) return Scenario{spec_.segments, cfg, false};
    if (spec_.scenario == ScenarioKind::MassiveOneWay) {
      return one_way_scenario(cfg, massive_tau_bar(pt.u));
    }
    const SegmentDurations d = durations_from_phases(cfg, PhaseTuple{pt.u, pt.v, pt.w});
    switch (spec_.scenario) {
      case ScenarioKind::OneWay: return one_way_scenario(cfg, d.tau_bar);
      case ScenarioKind::AlphaCentauri: return alpha_centauri_scenario(cfg, d.tau_bar, d.tau_coast);
      case ScenarioKind::RoundTrip:
        return round_trip_scenario(cfg, d.tau_bar, d.tau_coast, d.tau_rest);
      case ScenarioKind::Kickstart: return kickstart_scenario(cfg, d.tau_bar);
      default: break;
    }
    throw ConfigError("scenario: unsupported");
  }

  NegativityResult closed_form(int k, const Point& pt) const {
    const PhaseTuple phases{pt.u, pt.v, pt.w};
    switch (spec_.scenario) {
      case ScenarioKind::OneWay: return negativity_one_way(k, spec_.h, phases, spec_.r_max);
      case ScenarioKind::AlphaCentauri: return negativity_two_way(k, spec_.h, phases, spec_.r_max);
      case ScenarioKind::RoundTrip: return negativity_round_trip(k, spec_.h, phases, spec_.r_max);
      case ScenarioKind::Kickstart: return negativity_kickstart(k, spec_.h, spec_.r_max);
      case ScenarioKind::MassiveOneWay:
        return negativity_massive_limit(k, spec_.h, spec_.M, massive_tau_bar(pt.u), spec_.delta,
                                        spec_.n_max);
      case ScenarioKind::Custom: break;
    }
    throw ConfigError("mode: custom scenarios have no closed form, use mode=general");
  }

  const SweepSpec& spec_;
  BoostKit kit_;
};

std::vector<Point> grid_points(const SweepSpec& spec) {
  std::vector<Point> points{{spec.u, spec.v, spec.w}};
  for (const Axis& axis : spec.axes) {
    std::vector<Point> next;
    next.reserve(points.size() * static_cast<std::size_t>(axis.count));
    for (const Point& p : points) {
      for (int i = 0; i < axis.count; ++i) {
        Point q = p;
        const double x = axis.at(i);
        if (axis.name == 'u') q.u = x;
        if (axis.name == 'v') q.v = x;
        if (axis.name == 'w') q.w = x;
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  return points;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::OneWay: return "one-way";
    case ScenarioKind::AlphaCentauri: return "alpha-centauri";
    case ScenarioKind::RoundTrip: return "round-trip";
    case ScenarioKind::Kickstart: return "kickstart";
    case ScenarioKind::MassiveOneWay: return "massive-one-way";
    case ScenarioKind::Custom: return "custom";
  }
  return "?";
}

std::string_view to_string(EvalMode mode) {
  switch (mode) {
    case EvalMode::ClosedForm: return "closed-form";
    case EvalMode::General: return "general";
    case EvalMode::Both: return "both";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(std::string_view text) {
  text = trim(text);
  for (auto kind : {ScenarioKind::OneWay, ScenarioKind::AlphaCentauri, ScenarioKind::RoundTrip,
                    ScenarioKind::Kickstart, ScenarioKind::MassiveOneWay, ScenarioKind::Custom}) {
    if (text == to_string(kind)) return kind;
  }
  if (text == "two-way") return ScenarioKind::AlphaCentauri;
  throw ConfigError("scenario: unknown scenario '" + std::string(text) + "'");
}

EvalMode parse_eval_mode(std::string_view text) {
  text = trim(text);
  for (auto mode : {EvalMode::ClosedForm, EvalMode::General, EvalMode::Both}) {
    if (text == to_string(mode)) return mode;
  }
  throw ConfigError("mode: unknown mode '" + std::string(text) + "'");
}

double parse_scalar(std::string_view text) {
  std::string s;
  for (char c : trim(text)) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_plain(s, "value");

  std::string_view head = std::string_view(s).substr(0, at);
  std::string_view tail = std::string_view(s).substr(at + 2);
  if (!head.empty() && head.back() == '*') head.remove_suffix(1);
  double factor = 1.0;
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty() && head != "+") {
    factor = parse_plain(head, "value");
  }
  double x = factor * constants::pi;
  if (!tail.empty()) {
    const char op = tail.front();
    tail.remove_prefix(1);
    const double y = parse_plain(tail, "value");
    if (op == '/') {
      x /= y;
    } else if (op == '*') {
      x *= y;
    } else {
      throw ConfigError("value: cannot parse '" + s + "'");
    }
  }
  return x;
}

double Axis::at(int i) const {
  if (i == count - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

Axis parse_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("axis: expected name=start:stop:count, got '" + std::string(text) + "'");
  }
  const std::string_view name = trim(text.substr(0, eq));
  if (name.size() != 1 || std::string_view("uvw").find(name[0]) == std::string_view::npos) {
    throw ConfigError("axis: name must be one of u, v, w, got '" + std::string(name) + "'");
  }
  const auto parts = split(text.substr(eq + 1), ':');
  if (parts.size() != 3) {
    throw ConfigError("axis " + std::string(name) + ": expected start:stop:count");
  }
  Axis a;
  a.name = name[0];
  const std::string field = "axis " + std::string(name);
  a.start = parse_field(parts[0], field + " start");
  a.stop = parse_field(parts[1], field + " stop");
  a.count = parse_int(parts[2], field + " count");
  return a;
}

std::string SweepSpec::scenario_label() const {
  return label.empty() ? std::string(to_string(scenario)) : label;
}

void SweepSpec::validate() const {
  if (axes.size() > 3) throw ConfigError("axis: at most three axes");
  const std::string_view allowed = axis_names_for(scenario);
  std::set<char> seen;
  for (const Axis& a : axes) {
    const std::string field = std::string("axis ") + a.name;
    if (!seen.insert(a.name).second) throw ConfigError(field + ": given more than once");
    if (a.count < 2) throw ConfigError(field + ": count must be >= 2");
    if (!std::isfinite(a.start) || !std::isfinite(a.stop)) throw ConfigError(field + ": range must be finite");
    if (allowed.find(a.name) == std::string_view::npos) {
      throw ConfigError(field + ": not a coordinate of scenario " + std::string(to_string(scenario)));
    }
  }
  for (const auto& [name, x] : {std::pair{"u", u}, std::pair{"v", v}, std::pair{"w", w}}) {
    if (!std::isfinite(x)) throw ConfigError(std::string(name) + ": must be finite");
  }
  if (ks.empty()) throw ConfigError("k: at least one mode index required");
  for (int k : ks) {
    if (k < 1) throw ConfigError("k: mode indices must be >= 1");
  }
  const int k_max = *std::max_element(ks.begin(), ks.end());
  if (!std::isfinite(h)) throw ConfigError("h: must be finite");
  if (std::abs(h) >= 2.0) throw DomainError("h: |h| must be < 2 (cavity walls must stay timelike)");
  if (!std::isfinite(M) || M < 0.0) throw ConfigError("M: must be finite and >= 0");
  if (!std::isfinite(delta) || delta <= 0.0) throw ConfigError("delta: must be > 0");
  if (n_max < 2) throw ConfigError("n_max: must be >= 2");
  if (r_max < 0) throw ConfigError("r_max: must be >= 0");
  if (r_max > 0 && r_max < k_max) throw ConfigError("r_max: must be >= the largest k");
  if (workers < 0) throw ConfigError("workers: must be >= 0");
  if (mode != EvalMode::ClosedForm && 2 * k_max > n_max) {
    throw ConfigError("n_max: must be >= 2k for the general pipeline");
  }
  if (scenario == ScenarioKind::MassiveOneWay && M <= 0.0) {
    throw ConfigError("M: massive-one-way needs M > 0");
  }
  if (scenario == ScenarioKind::MassiveOneWay && k_max >= n_max) {
    throw ConfigError("n_max: must exceed k");
  }
  if (scenario == ScenarioKind::Custom) {
    if (mode != EvalMode::General) throw ConfigError("mode: custom scenarios need mode=general");
    if (segments.empty()) throw ConfigError("segments: custom scenario has no segments");
  }
}

SweepSpec preset(std::string_view name) {
  SweepSpec s;
  s.label = std::string(name);
  const double two_pi = 2.0 * constants::pi;
  if (name == "fig2") {
    s.scenario = ScenarioKind::OneWay;
    s.axes = {{'u', 0.0, two_pi, 201}};
  } else if (name == "fig3") {
    s.scenario = ScenarioKind::AlphaCentauri;
    s.axes = {{'u', 0.0, two_pi, 101}, {'v', 0.0, two_pi, 101}};
  } else if (name == "fig4a" || name == "fig4b" || name == "fig4c") {
    s.scenario = ScenarioKind::RoundTrip;
    s.axes = {{'u', 0.0, two_pi, 101}, {'v', 0.0, two_pi, 101}};
    // tau'' = 0, 2 delta / 3, 4 delta / 3
    s.w = static_cast<double>(name.back() - 'a') * two_pi / 3.0;
  } else if (name == "fig5a" || name == "fig5b") {
    s.scenario = ScenarioKind::MassiveOneWay;
    s.M = 1e3;
    // The plotted (1/2 - N)/(h^2 M^4) does not depend on h; keep h M^2 well inside validity.
    s.h = 1e-8;
    s.ks = name == "fig5a" ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{30};
    s.axes = {{'u', 0.0, 2.0, 801}};
  } else {
    throw ConfigError("preset: unknown preset '" + std::string(name) + "'");
  }
  return s;
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4a", "fig4b", "fig4c", "fig5a", "fig5b"};
}

std::vector<TrajectorySegment> parse_segments(std::string_view text) {
  std::vector<TrajectorySegment> out;
  for (std::string_view item : split(text, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("segments: expected kind:duration, got '" + std::string(item) + "'");
    }
    const std::string_view kind = trim(item.substr(0, colon));
    const double duration = parse_field(item.substr(colon + 1), "segments");
    if (!(duration >= 0.0) || !std::isfinite(duration)) {
      throw ConfigError("segments: durations must be finite and >= 0");
    }
    if (kind == "A+" || kind == "A") {
      out.emplace_back(Accelerated{+1, duration});
    } else if (kind == "A-") {
      out.emplace_back(Accelerated{-1, duration});
    } else if (kind == "I") {
      out.emplace_back(Inertial{duration});
    } else {
      throw ConfigError("segments: unknown segment kind '" + std::string(kind) + "' (A+, A-, I)");
    }
  }
  return out;
}

void apply_setting(SweepSpec& spec, std::string_view key_in, std::string_view value) {
  const std::string key = normalise_key(key_in);
  value = trim(value);
  if (key == "preset") {
    spec = preset(value);
  } else if (key == "scenario") {
    spec.scenario = parse_scenario_kind(value);
    spec.label.clear();
  } else if (key == "label") {
    spec.label = std::string(value);
  } else if (key == "k") {
    spec.ks.clear();
    for (std::string_view item : split(value, ',')) spec.ks.push_back(parse_int(item, "k"));
  } else if (key == "h") {
    spec.h = parse_field(value, "h");
  } else if (key == "M") {
    spec.M = parse_field(value, "M");
  } else if (key == "delta") {
    spec.delta = parse_field(value, "delta");
  } else if (key == "n_max") {
    spec.n_max = parse_int(value, "n_max");
  } else if (key == "r_max") {
    spec.r_max = parse_int(value, "r_max");
  } else if (key == "mode") {
    spec.mode = parse_eval_mode(value);
  } else if (key == "axis") {
    const Axis a = parse_axis(value);
    auto it = std::find_if(spec.axes.begin(), spec.axes.end(),
                           [&](const Axis& b) { return b.name == a.name; });
    if (it != spec.axes.end()) {
      *it = a;
    } else {
      spec.axes.push_back(a);
    }
  } else if (key == "u") {
    spec.u = parse_field(value, "u");
  } else if (key == "v") {
    spec.v = parse_field(value, "v");
  } else if (key == "w") {
    spec.w = parse_field(value, "w");
  } else if (key == "segments") {
    spec.segments = parse_segments(value);
  } else if (key == "out") {
    spec.output = std::string(value);
  } else if (key == "workers") {
    spec.workers = parse_int(value, "workers");
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    out.emplace_back(normalise_key(line.substr(0, eq)), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

SweepSpec load_config_file(const std::string& path, SweepSpec base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  auto settings = parse_config_text(buf.str());
  // A preset resets the spec, so it goes first regardless of its position.
  std::stable_partition(settings.begin(), settings.end(),
                        [](const auto& kv) { return kv.first == "preset"; });
  for (const auto& [key, value] : settings) apply_setting(base, key, value);
  return base;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<Point> points = grid_points(spec);
  const std::size_t nk = spec.ks.size();
  std::vector<SweepRow> rows(points.size() * nk);

  const PointEvaluator evaluator(spec);
  std::size_t workers = spec.workers > 0 ? static_cast<std::size_t>(spec.workers)
                                         : std::max(1u, std::thread::hardware_concurrency());
  // Each general-pipeline point holds several dense n_max^2 blocks.
  if (spec.workers == 0 && spec.mode != EvalMode::ClosedForm) workers = std::min<std::size_t>(workers, 4);
  workers = std::min(workers, points.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    std::vector<SweepRow*> slots(nk);
    while (true) {
      const std::size_t p = next.fetch_add(1);
      if (p >= points.size()) return;
      try {
        for (std::size_t i = 0; i < nk; ++i) slots[i] = &rows[i * points.size() + p];
        evaluator.evaluate(points[p], slots);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = points.size();
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const bool both = spec.mode == EvalMode::Both;
  const bool massive = spec.scenario == ScenarioKind::MassiveOneWay;
  os << "scenario,k,h,M,u,v,w,deficit_scaled,negativity,log_negativity,method,truncation_tail";
  if (both) os << ",deficit_general,abs_diff";
  if (massive) os << ",deficit_m4";
  os << '\n';
  for (const SweepRow& r : rows) {
    os << r.scenario << ',' << r.k << ',' << format_number(r.h) << ',' << format_number(r.M) << ','
       << format_number(r.u) << ',' << format_number(r.v) << ',' << format_number(r.w) << ','
       << format_number(r.deficit_scaled) << ',' << format_number(r.negativity) << ','
       << format_number(r.log_negativity) << ',' << r.method << ','
       << format_number(r.truncation_tail);
    if (both) os << ',' << format_number(*r.deficit_general) << ',' << format_number(*r.abs_diff);
    if (massive) os << ',' << format_number(r.deficit_m4.value_or(0.0));
    os << '\n';
  }
}

std::string sweep_csv(const SweepSpec& spec) {
  std::ostringstream os;
  write_csv(os, spec, run_sweep(spec));
  return os.str();
}

std::string run_sweep_to_output(const SweepSpec& spec, std::ostream& fallback) {
  const std::vector<SweepRow> rows = run_sweep(spec);
  if (!spec.output || *spec.output == "-") {
    write_csv(fallback, spec, rows);
    return "-";
  }
  std::filesystem::path path(*spec.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("CAVNEG_OUT_DIR"); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_csv(out, spec, rows);
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
  return path.string();
}

}  // namespace cavneg
