#pragma once

// Run configuration read from a JSON file. A top-level "preset" fills in
// defaults; any key present in the file overrides the preset value.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tension2d/curve.hpp"
#include "tension2d/tension.hpp"

namespace tension2d::cli {

/// Invalid or missing configuration. `line` is 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& field, const std::string& what);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

struct SampledCurve {
  std::vector<Vec2> points;
};
using CurveSpec = std::variant<FourierCurveSpec, PerturbationSpec, SampledCurve>;

struct PresetForce {
  std::string name;  ///< only "table1"
};
struct SampledForce {
  std::vector<Vec2> values;
};
using ForceSpec = std::variant<PresetForce, FrameFourierForce, SampledForce>;

enum class Format { Csv, Json };

struct RunConfig {
  std::string source = "<inline>";  ///< file name used in error messages
  std::string preset;               ///< empty, "table1", "example1" or "example2"
  std::optional<CurveSpec> curve;
  std::optional<ForceSpec> force;
  int n = 64;
  SolveMode mode = SolveMode::Auto;
  std::vector<double> epsilons;
  std::vector<Vec2> probe_points;
  std::uint64_t seed = 20240611;
  std::string level = "quick";
  std::string out = ".";
  std::vector<Format> formats{Format::Csv, Format::Json};

  bool wants(Format f) const;
  std::string curve_type() const;
  std::string force_type() const;
};

/// Parses JSON text. `source` only labels error messages.
RunConfig parse_config(const std::string& text, const std::string& source = "<inline>");
RunConfig load_config(const std::string& path);

/// Defaults for a named preset; throws ConfigError for unknown names.
RunConfig preset_config(const std::string& name);

/// Comma separated list such as "csv,json".
std::vector<Format> parse_formats(const std::string& list);

/// N even and >= 8.
void validate_n(const RunConfig& config, int n);

/// Builds the curve on an N-point grid. Sampled curves must have exactly N points.
ClosedCurve build_config_curve(const RunConfig& config);
ForceDensity build_config_force(const RunConfig& config, const PeriodicGrid& grid);

}  // namespace tension2d::cli
