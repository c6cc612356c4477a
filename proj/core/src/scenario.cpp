#include "glr/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "glr/errors.hpp"
#include "glr/rng.hpp"

namespace glr {

using nlohmann::json;

namespace {

constexpr double kTimeTolerance = 1e-9;

void validate_log(const VehicleLog& log, const std::string& who, double horizon) {
  try {
    log.track.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(who + " " + e.what());
  }
  if (log.velocities.size() != log.track.positions.size()) {
    throw ValidationError(who + ": velocity count does not match sample count");
  }
  if (std::abs(log.track.timestamps.front()) > kTimeTolerance) {
    throw ValidationError(who + ": track must start at t=0");
  }
  if (std::abs(log.track.timestamps.back() - horizon) > kTimeTolerance) {
    throw ValidationError(who + ": track ends at " + std::to_string(log.track.timestamps.back()) +
                          " s but horizon is " + std::to_string(horizon) + " s");
  }
}

}  // namespace

void Scenario::validate() const {
  if (id.empty()) {
    throw ValidationError("scenario: empty id");
  }
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw ValidationError("scenario " + id + ": sample_rate_hz must be positive");
  }
  if (!(horizon_s > 0.0) || !std::isfinite(horizon_s)) {
    throw ValidationError("scenario " + id + ": horizon_s must be positive");
  }
  validate_log(ego, "scenario " + id + " ego", horizon_s);
  validate_log(target, "scenario " + id + " target", horizon_s);
  const auto expected = static_cast<std::size_t>(std::llround(horizon_s * sample_rate_hz)) + 1;
  if (ego.track.timestamps.size() != expected || target.track.timestamps.size() != expected) {
    throw ValidationError("scenario " + id + ": horizon " + std::to_string(horizon_s) +
                          " s at " + std::to_string(sample_rate_hz) + " Hz needs " +
                          std::to_string(expected) + " samples per track");
  }
  for (std::size_t i = 0; i < expected; ++i) {
    if (std::abs(ego.track.timestamps[i] - target.track.timestamps[i]) > kTimeTolerance) {
      throw ValidationError("scenario " + id + ": ego/target timestamps differ at index " +
                            std::to_string(i));
    }
  }
}

std::string_view family_name(ScenarioFamily family) {
  switch (family) {
    case ScenarioFamily::kStraightOvertake:
      return "straight_overtake";
    case ScenarioFamily::kLaneChangeCut:
      return "lane_change_cut";
    case ScenarioFamily::kArcOvertake:
      return "arc_overtake";
  }
  return "unknown";
}

ScenarioFamily parse_family(std::string_view name) {
  if (name == "straight_overtake" || name == "straight") {
    return ScenarioFamily::kStraightOvertake;
  }
  if (name == "lane_change_cut" || name == "lane_change") {
    return ScenarioFamily::kLaneChangeCut;
  }
  if (name == "arc_overtake" || name == "arc") {
    return ScenarioFamily::kArcOvertake;
  }
  throw ConfigError("unknown scenario family '" + std::string(name) +
                    "' (expected straight_overtake, lane_change_cut or arc_overtake)");
}

void GeneratorSpec::validate() const {
  const auto check = [](const Range& r, const char* name, double min_lo) {
    if (!(r.lo <= r.hi) || !(r.lo >= min_lo) || !std::isfinite(r.hi)) {
      throw ConfigError(std::string("GeneratorSpec: invalid ") + name + " [" +
                        std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
    }
  };
  if (count <= 0) {
    throw ConfigError("GeneratorSpec: count must be positive");
  }
  check(speed_range, "speed_range", 0.0);
  check(lateral_offset_range, "lateral_offset_range", 0.0);
  check(closing_rate_range, "closing_rate_range", 0.0);
  check(pass_time_range, "pass_time_range", 0.0);
  if (!(sample_rate_hz > 0.0) || !(horizon_s > 0.0)) {
    throw ConfigError("GeneratorSpec: sample rate and horizon must be positive");
  }
}

namespace {

double uniform(Rng& rng, const Range& r) {
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

using PathFn = std::function<Vec2(double)>;

VehicleLog sample_path(const PathFn& path, const Pose2& frame, std::size_t samples, double rate) {
  constexpr double kFdStep = 1e-5;
  VehicleLog log;
  log.track.timestamps.reserve(samples);
  log.track.positions.reserve(samples);
  log.velocities.reserve(samples);
  const Mat2 r = rotation(frame.heading());
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / rate;
    log.track.timestamps.push_back(t);
    log.track.positions.push_back(frame.to_world(path(t)));
    log.velocities.push_back(r * ((path(t + kFdStep) - path(t - kFdStep)) / (2.0 * kFdStep)));
  }
  return log;
}

Scenario make_scenario(const GeneratorSpec& spec, int index) {
  Rng rng(derive_seed(derive_seed(spec.seed, stable_hash(family_name(spec.family))),
                      static_cast<std::uint64_t>(index)));
  const double v_target = uniform(rng, spec.speed_range);
  const double closing = uniform(rng, spec.closing_rate_range);
  const double lateral = uniform(rng, spec.lateral_offset_range);
  const double pass_time = uniform(rng, spec.pass_time_range);
  const double side = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
  const double frame_heading = std::uniform_real_distribution<double>(-std::numbers::pi,
                                                                      std::numbers::pi)(rng);
  const Vec2 frame_origin(std::uniform_real_distribution<double>(-500.0, 500.0)(rng),
                          std::uniform_real_distribution<double>(-500.0, 500.0)(rng));
  const double v_ego = v_target + closing;
  const double ego_start = -closing * pass_time;

  PathFn ego_path;
  PathFn target_path;
  switch (spec.family) {
    case ScenarioFamily::kStraightOvertake:
      ego_path = [=](double t) { return Vec2(ego_start + v_ego * t, side * lateral); };
      target_path = [=](double t) { return Vec2(v_target * t, 0.0); };
      break;
    case ScenarioFamily::kLaneChangeCut: {
      const double y_start = side * std::uniform_real_distribution<double>(3.5, 5.0)(rng);
      const double y_end = -side * lateral;
      const double cut_time = std::uniform_real_distribution<double>(2.0, 4.0)(rng);
      const double cut_scale = std::uniform_real_distribution<double>(0.3, 0.6)(rng);
      ego_path = [=](double t) { return Vec2(ego_start + v_ego * t, 0.0); };
      target_path = [=](double t) {
        const double blend = 1.0 / (1.0 + std::exp(-(t - cut_time) / cut_scale));
        return Vec2(v_target * t, y_start + (y_end - y_start) * blend);
      };
      break;
    }
    case ScenarioFamily::kArcOvertake: {
      const double radius = std::uniform_real_distribution<double>(200.0, 600.0)(rng);
      // Arc-length s along the reference line, inward offset `inset`;
      // `side` selects a left or right hand turn.
      const auto on_arc = [=](double s, double inset) {
        const double phi = s / radius;
        return Vec2((radius - inset) * std::sin(phi),
                    side * (radius - (radius - inset) * std::cos(phi)));
      };
      ego_path = [=](double t) { return on_arc(ego_start + v_ego * t, lateral); };
      target_path = [=](double t) { return on_arc(v_target * t, 0.0); };
      break;
    }
  }

  Scenario s;
  std::ostringstream id;
  id << family_name(spec.family) << '-' << spec.seed << '-';
  id.width(3);
  id.fill('0');
  id << index;
  s.id = id.str();
  s.track_tag = "synthetic/" + std::string(family_name(spec.family));
  s.sample_rate_hz = spec.sample_rate_hz;
  s.horizon_s = spec.horizon_s;
  const auto samples = static_cast<std::size_t>(std::llround(spec.horizon_s * spec.sample_rate_hz)) + 1;
  const Pose2 frame(frame_origin, frame_heading);
  s.ego = sample_path(ego_path, frame, samples, spec.sample_rate_hz);
  s.target = sample_path(target_path, frame, samples, spec.sample_rate_hz);
  return s;
}

}  // namespace

std::vector<Scenario> generate(const GeneratorSpec& spec) {
  spec.validate();
  std::vector<Scenario> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    out.push_back(make_scenario(spec, i));
  }
  return out;
}

std::vector<Scenario> default_suite(std::uint64_t seed) {
  std::vector<Scenario> all;
  for (const ScenarioFamily family : {ScenarioFamily::kStraightOvertake,
                                      ScenarioFamily::kLaneChangeCut,
                                      ScenarioFamily::kArcOvertake}) {
    GeneratorSpec spec;
    spec.family = family;
    spec.count = 50;
    spec.seed = seed;
    auto batch = generate(spec);
    std::move(batch.begin(), batch.end(), std::back_inserter(all));
  }
  return all;
}

namespace {

json log_rows(const VehicleLog& log) {
  json rows = json::array();
  for (std::size_t i = 0; i < log.track.timestamps.size(); ++i) {
    const Vec2& p = log.track.positions[i];
    const Vec2& v = log.velocities[i];
    rows.push_back(json::array({log.track.timestamps[i], p.x(), p.y(), v.x(), v.y()}));
  }
  return rows;
}

[[noreturn]] void field_error(const std::string& origin, const std::string& field,
                              const std::string& what) {
  throw ParseError(origin + ": field '" + field + "': " + what);
}

const json& require(const json& obj, const char* key, const std::string& origin) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    field_error(origin, key, "missing");
  }
  return *it;
}

double number_at(const json& v, const std::string& field, const std::string& origin) {
  if (!v.is_number()) {
    field_error(origin, field, "expected a number");
  }
  return v.get<double>();
}

VehicleLog parse_log(const json& rows, const std::string& field, const std::string& origin) {
  if (!rows.is_array()) {
    field_error(origin, field, "expected an array of [t, x, y, vx, vy] rows");
  }
  VehicleLog log;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != 5) {
      field_error(origin, where, "expected [t, x, y, vx, vy]");
    }
    double v[5];
    for (std::size_t c = 0; c < 5; ++c) {
      v[c] = number_at(row[c], where + "[" + std::to_string(c) + "]", origin);
    }
    log.track.timestamps.push_back(v[0]);
    log.track.positions.emplace_back(v[1], v[2]);
    log.velocities.emplace_back(v[3], v[4]);
  }
  return log;
}

}  // namespace

std::string to_json(const Scenario& scenario) {
  // Header fields first, then one sample row per line. nlohmann emits
  // shortest round-trip representations, so reloading is bit-exact.
  std::ostringstream os;
  os << "{\n";
  os << "  \"id\": " << json(scenario.id).dump() << ",\n";
  os << "  \"track_tag\": " << json(scenario.track_tag).dump() << ",\n";
  os << "  \"sample_rate_hz\": " << json(scenario.sample_rate_hz).dump() << ",\n";
  os << "  \"horizon_s\": " << json(scenario.horizon_s).dump() << ",\n";
  const auto write_rows = [&os](const char* key, const VehicleLog& log, bool last) {
    os << "  \"" << key << "\": [\n";
    const json rows = log_rows(log);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << "    " << rows[i].dump() << (i + 1 < rows.size() ? ",\n" : "\n");
    }
    os << "  ]" << (last ? "\n" : ",\n");
  };
  write_rows("ego", scenario.ego, false);
  write_rows("target", scenario.target, true);
  os << "}\n";
  return os.str();
}

Scenario scenario_from_json(std::string_view text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError(origin + ": top-level value must be an object");
  }
  Scenario s;
  const json& id = require(doc, "id", origin);
  if (!id.is_string()) {
    field_error(origin, "id", "expected a string");
  }
  s.id = id.get<std::string>();
  const json& tag = require(doc, "track_tag", origin);
  if (!tag.is_string()) {
    field_error(origin, "track_tag", "expected a string");
  }
  s.track_tag = tag.get<std::string>();
  s.sample_rate_hz = number_at(require(doc, "sample_rate_hz", origin), "sample_rate_hz", origin);
  s.horizon_s = number_at(require(doc, "horizon_s", origin), "horizon_s", origin);
  s.ego = parse_log(require(doc, "ego", origin), "ego", origin);
  s.target = parse_log(require(doc, "target", origin), "target", origin);
  try {
    s.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  return s;
}

void save(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << to_json(scenario);
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path.string() + ": cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str(), path.string());
}

std::vector<std::filesystem::path> list_scenario_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace glr
