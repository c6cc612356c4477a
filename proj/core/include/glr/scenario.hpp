#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "glr/trajectory.hpp"

namespace glr {

/// Recorded track plus per-sample velocities (stored, not used by estimators).
struct VehicleLog {
  SampledTrack track;
  std::vector<Vec2> velocities;
};

/// One overtaking instance: ego and target logs on a shared time base.
struct Scenario {
  std::string id;
  std::string track_tag;
  double sample_rate_hz = 100.0;
  double horizon_s = 6.0;
  VehicleLog ego;
  VehicleLog target;

  /// Throws ValidationError describing the first violated invariant.
  void validate() const;
};

enum class ScenarioFamily { kStraightOvertake, kLaneChangeCut, kArcOvertake };

std::string_view family_name(ScenarioFamily family);
/// Throws ConfigError for unknown names.
ScenarioFamily parse_family(std::string_view name);

struct Range {
  double lo;
  double hi;
};

struct GeneratorSpec {
  ScenarioFamily family = ScenarioFamily::kStraightOvertake;
  int count = 50;
  std::uint64_t seed = 7;
  /// Target speed, m/s.
  Range speed_range{60.0, 90.0};
  /// Centre-to-centre lateral offset at the pass (or final offset after a cut), m.
  Range lateral_offset_range{0.0, 4.5};
  /// Ego speed minus target speed, m/s.
  Range closing_rate_range{0.0, 12.0};
  /// Time at which the ego draws level with the target, s.
  Range pass_time_range{1.0, 5.0};
  double sample_rate_hz = 100.0;
  double horizon_s = 6.0;

  void validate() const;
};

/// Seed-deterministic synthetic scenarios.
std::vector<Scenario> generate(const GeneratorSpec& spec);

/// Default benchmark suite: 50 scenarios from each family.
std::vector<Scenario> default_suite(std::uint64_t seed);

std::string to_json(const Scenario& scenario);
/// Throws ParseError (malformed) or ValidationError (invariant violated).
Scenario scenario_from_json(std::string_view text, const std::string& origin = "<memory>");

void save(const Scenario& scenario, const std::filesystem::path& path);
Scenario load(const std::filesystem::path& path);

/// All *.json scenario files in `dir`, sorted by file name.
std::vector<std::filesystem::path> list_scenario_files(const std::filesystem::path& dir);

}  // namespace glr
