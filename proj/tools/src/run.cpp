#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tension2d/errors.hpp"
#include "tension2d_cli/commands.hpp"

namespace tension2d::cli {

namespace {

int threads_from_env() {
  const char* v = std::getenv("TENSION2D_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    throw ConfigError("TENSION2D_THREADS", 0, "", std::string("expected a positive integer, got '") + v + "'");
  }
  return static_cast<int>(n);
}

struct Options {
  std::string config;
  std::string out;
  int n = 0;
  std::string format;
  std::string level;
};

void add_common(CLI::App* sub, Options& o, bool config_required) {
  auto* c = sub->add_option("--config", o.config, "JSON run configuration");
  if (config_required) c->required();
  sub->add_option("--out", o.out, "output directory (overrides the config)");
  sub->add_option("--n", o.n, "number of grid points (overrides the config)");
  sub->add_option("--format", o.format, "comma separated output formats: csv,json");
}

void print_summary(const ResultBundle& b) {
  for (const auto& c : b.checks) {
    std::printf("%s %-32s residual %.3e tol %.1e\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.residual,
                c.tolerance);
  }
  for (const auto& [key, value] : b.summary.items()) {
    if (key == "elapsed_seconds" || value.is_object() || value.is_array()) continue;
    std::cout << key << " = " << value.dump() << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Membrane tension solver for two-dimensional Stokes interfaces"};
  app.require_subcommand(1);
  Options o;
  auto* solve = app.add_subcommand("solve", "solve for the tension and interface velocity");
  auto* eig = app.add_subcommand("eig", "spectrum of the tension operator for one curve");
  auto* sweep = app.add_subcommand("sweep", "leading eigenvalue over a list of perturbation sizes");
  auto* verify = app.add_subcommand("verify", "run the oracle and identity suite");
  add_common(solve, o, true);
  add_common(eig, o, true);
  add_common(sweep, o, true);
  add_common(verify, o, false);
  verify->add_option("--level", o.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    RunConfig config = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (o.n != 0) {
      validate_n(config, o.n);
      config.n = o.n;
    }
    if (!o.out.empty()) config.out = o.out;
    if (!o.format.empty()) config.formats = parse_formats(o.format);
    if (!o.level.empty()) config.level = o.level;

    ResultBundle bundle;
    if (solve->parsed()) {
      bundle = cmd_solve(config);
    } else if (eig->parsed()) {
      bundle = cmd_eig(config);
    } else if (sweep->parsed()) {
      bundle = cmd_sweep(config, threads_from_env());
    } else {
      bundle = cmd_verify(config.level, config.seed);
    }
    write_bundle(bundle, config.out, config);
    print_summary(bundle);
    return bundle.all_pass() ? kOk : kCheckFailure;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const tension2d::Error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumericalError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumericalError;
  }
}

}  // namespace tension2d::cli
