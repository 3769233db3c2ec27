#include "tension2d_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tension2d::cli {

using nlohmann::json;

namespace {

std::string describe(const std::string& source, int line, const std::string& field,
                     const std::string& what) {
  std::string s = source;
  if (line > 0) s += ":" + std::to_string(line);
  s += ": ";
  if (!field.empty()) s += "field '" + field + "': ";
  return s + what;
}

int line_at(const std::string& text, std::size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

// Walks the raw text key by key to find where a nested field is written.
// Good enough for error messages; JSON itself does not keep positions.
int line_of(const std::string& text, const std::vector<std::string>& path) {
  std::size_t pos = 0;
  for (const auto& key : path) {
    const auto hit = text.find("\"" + key + "\"", pos);
    if (hit == std::string::npos) break;
    pos = hit;
  }
  return pos == 0 ? 0 : line_at(text, pos);
}

std::string dotted(const std::vector<std::string>& path) {
  std::string s;
  for (const auto& k : path) s += (s.empty() ? "" : ".") + k;
  return s;
}

class Reader {
 public:
  Reader(const std::string& text, const std::string& source) : text_(text), source_(source) {}

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& what) const {
    throw ConfigError(source_, line_of(text_, path), dotted(path), what);
  }

  void only_keys(const json& obj, const std::vector<std::string>& path,
                 const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) {
        auto p = path;
        p.push_back(key);
        fail(p, "unknown key");
      }
    }
  }

  double number(const json& j, const std::vector<std::string>& path) const {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
  }

  long long integer(const json& j, const std::vector<std::string>& path) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long long>();
  }

  std::string string(const json& j, const std::vector<std::string>& path) const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  std::vector<double> numbers(const json& j, const std::vector<std::string>& path) const {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number(v, path));
    return out;
  }

  std::vector<Vec2> points(const json& j, const std::vector<std::string>& path) const {
    if (!j.is_array()) fail(path, "expected an array of [x, y] pairs");
    std::vector<Vec2> out;
    for (const auto& p : j) {
      if (!p.is_array() || p.size() != 2) fail(path, "expected an array of [x, y] pairs");
      out.emplace_back(number(p[0], path), number(p[1], path));
    }
    return out;
  }

 private:
  const std::string& text_;
  const std::string& source_;
};

CurveSpec read_curve(const Reader& r, const json& j) {
  const std::vector<std::string> at{"curve"};
  if (!j.is_object()) r.fail(at, "expected an object");
  if (!j.contains("type")) r.fail(at, "missing 'type' (fourier, perturbed_circle or samples)");
  const std::string type = r.string(j["type"], {"curve", "type"});
  auto get = [&](const char* key) {
    return j.contains(key) ? r.numbers(j[key], {"curve", key}) : std::vector<double>{};
  };
  if (type == "fourier") {
    r.only_keys(j, at, {"type", "x_cos", "x_sin", "y_cos", "y_sin"});
    return FourierCurveSpec{get("x_cos"), get("x_sin"), get("y_cos"), get("y_sin")};
  }
  if (type == "perturbed_circle") {
    r.only_keys(j, at, {"type", "g0", "g_cos", "g_sin", "epsilon"});
    PerturbationSpec s;
    if (j.contains("g0")) s.g0 = r.number(j["g0"], {"curve", "g0"});
    s.g_cos = get("g_cos");
    s.g_sin = get("g_sin");
    if (j.contains("epsilon")) s.epsilon = r.number(j["epsilon"], {"curve", "epsilon"});
    return s;
  }
  if (type == "samples") {
    r.only_keys(j, at, {"type", "points"});
    if (!j.contains("points")) r.fail(at, "missing 'points'");
    return SampledCurve{r.points(j["points"], {"curve", "points"})};
  }
  r.fail({"curve", "type"}, "unknown curve type '" + type + "'");
}

ForceSpec read_force(const Reader& r, const json& j) {
  const std::vector<std::string> at{"force"};
  if (!j.is_object()) r.fail(at, "expected an object");
  if (!j.contains("type")) r.fail(at, "missing 'type' (preset, frame or samples)");
  const std::string type = r.string(j["type"], {"force", "type"});
  if (type == "preset") {
    r.only_keys(j, at, {"type", "name"});
    if (!j.contains("name")) r.fail(at, "missing 'name'");
    const std::string name = r.string(j["name"], {"force", "name"});
    if (name != "table1") r.fail({"force", "name"}, "unknown force preset '" + name + "'");
    return PresetForce{name};
  }
  if (type == "frame") {
    r.only_keys(j, at, {"type", "a", "b", "c", "d"});
    FrameFourierForce f;
    for (auto [key, dst] : {std::pair{"a", &f.a}, {"b", &f.b}, {"c", &f.c}, {"d", &f.d}}) {
      if (j.contains(key)) *dst = r.numbers(j[key], {"force", key});
    }
    return f;
  }
  if (type == "samples") {
    r.only_keys(j, at, {"type", "values"});
    if (!j.contains("values")) r.fail(at, "missing 'values'");
    return SampledForce{r.points(j["values"], {"force", "values"})};
  }
  r.fail({"force", "type"}, "unknown force type '" + type + "'");
}

FrameFourierForce table1_force() { return {{4.0}, {0.0, 1.0}, {4.0, -1.0}, {}}; }

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& field,
                         const std::string& what)
    : std::runtime_error(describe(source, line, field, what)), line_(line), field_(field) {}

bool RunConfig::wants(Format f) const {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

std::string RunConfig::curve_type() const {
  if (!curve) return "none";
  switch (curve->index()) {
    case 0: return "fourier";
    case 1: return "perturbed_circle";
    default: return "samples";
  }
}

std::string RunConfig::force_type() const {
  if (!force) return "none";
  switch (force->index()) {
    case 0: return "preset";
    case 1: return "frame";
    default: return "samples";
  }
}

RunConfig preset_config(const std::string& name) {
  RunConfig c;
  c.preset = name;
  const std::vector<double> eps{0.005, 0.01, 0.02, 0.04, 0.08, 0.16};
  if (name == "table1") {
    c.curve = PerturbationSpec{};
    c.force = PresetForce{"table1"};
    c.n = 32;
  } else if (name == "example1") {
    c.curve = PerturbationSpec{0.0, {1.0}, {}, 0.02};
    c.epsilons = eps;
  } else if (name == "example2") {
    c.curve = PerturbationSpec{0.5, {0.0, 0.5}, {}, 0.02};
    c.epsilons = eps;
  } else {
    throw ConfigError("<preset>", 0, "preset", "unknown preset '" + name + "'");
  }
  return c;
}

std::vector<Format> parse_formats(const std::string& list) {
  std::vector<Format> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") {
      out.push_back(Format::Csv);
    } else if (item == "json") {
      out.push_back(Format::Json);
    } else {
      throw ConfigError("<command line>", 0, "format", "unknown format '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("<command line>", 0, "format", "no output format given");
  return out;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source, line_at(text, e.byte > 0 ? e.byte - 1 : 0), "",
                      std::string("malformed JSON: ") + e.what());
  }
  const Reader r(text, source);
  if (!root.is_object()) r.fail({}, "top level must be an object");
  r.only_keys(root, {}, {"preset", "curve", "force", "n", "mode", "epsilons", "probe_points",
                         "seed", "level", "out", "formats"});

  RunConfig c;
  if (root.contains("preset")) {
    const std::string name = r.string(root["preset"], {"preset"});
    try {
      c = preset_config(name);
    } catch (const ConfigError&) {
      r.fail({"preset"}, "unknown preset '" + name + "' (table1, example1, example2)");
    }
  }
  c.source = source;

  if (root.contains("curve")) c.curve = read_curve(r, root["curve"]);
  if (root.contains("force")) c.force = read_force(r, root["force"]);

  if (root.contains("n")) {
    const long long n = r.integer(root["n"], {"n"});
    if (n < 8 || n % 2 != 0 || n > 1 << 16) r.fail({"n"}, "must be even and >= 8");
    c.n = static_cast<int>(n);
  } else if (c.curve && std::holds_alternative<SampledCurve>(*c.curve)) {
    c.n = static_cast<int>(std::get<SampledCurve>(*c.curve).points.size());
  }

  if (root.contains("mode")) {
    try {
      c.mode = solve_mode_from_string(r.string(root["mode"], {"mode"}));
    } catch (const std::invalid_argument&) {
      r.fail({"mode"}, "expected auto, plain or mean_zero");
    }
  }
  if (root.contains("epsilons")) c.epsilons = r.numbers(root["epsilons"], {"epsilons"});
  if (root.contains("probe_points")) c.probe_points = r.points(root["probe_points"], {"probe_points"});
  if (root.contains("seed")) {
    const long long s = r.integer(root["seed"], {"seed"});
    if (s < 0) r.fail({"seed"}, "must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (root.contains("level")) {
    c.level = r.string(root["level"], {"level"});
    if (c.level != "quick" && c.level != "full") r.fail({"level"}, "expected quick or full");
  }
  if (root.contains("out")) c.out = r.string(root["out"], {"out"});
  if (root.contains("formats")) {
    const auto& f = root["formats"];
    if (!f.is_array()) r.fail({"formats"}, "expected an array such as [\"csv\", \"json\"]");
    std::string joined;
    for (const auto& item : f) joined += (joined.empty() ? "" : ",") + r.string(item, {"formats"});
    try {
      c.formats = parse_formats(joined);
    } catch (const ConfigError& e) {
      r.fail({"formats"}, e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "", "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

void validate_n(const RunConfig& config, int n) {
  if (n < 8 || n % 2 != 0) {
    throw ConfigError(config.source, 0, "n", "must be even and >= 8, got " + std::to_string(n));
  }
}

ClosedCurve build_config_curve(const RunConfig& config) {
  if (!config.curve) throw ConfigError(config.source, 0, "curve", "missing curve specification");
  validate_n(config, config.n);
  const PeriodicGrid grid(config.n);
  return std::visit(
      [&](const auto& spec) -> ClosedCurve {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, FourierCurveSpec>) {
          return fourier_curve(spec, grid);
        } else if constexpr (std::is_same_v<T, PerturbationSpec>) {
          return perturbed_circle(spec, grid);
        } else {
          if (static_cast<int>(spec.points.size()) != config.n) {
            throw ConfigError(config.source, 0, "curve.points",
                              "has " + std::to_string(spec.points.size()) + " points but n = " +
                                  std::to_string(config.n));
          }
          return ClosedCurve::from_samples(VectorGridFunction(grid, spec.points));
        }
      },
      *config.curve);
}

ForceDensity build_config_force(const RunConfig& config, const PeriodicGrid& grid) {
  if (!config.force) throw ConfigError(config.source, 0, "force", "missing force specification");
  return std::visit(
      [&](const auto& spec) -> ForceDensity {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, PresetForce>) {
          return table1_force();
        } else if constexpr (std::is_same_v<T, FrameFourierForce>) {
          return spec;
        } else {
          if (static_cast<int>(spec.values.size()) != grid.size()) {
            throw ConfigError(config.source, 0, "force.values",
                              "has " + std::to_string(spec.values.size()) + " samples but n = " +
                                  std::to_string(grid.size()));
          }
          return VectorGridFunction(grid, spec.values);
        }
      },
      *config.force);
}

}  // namespace tension2d::cli
