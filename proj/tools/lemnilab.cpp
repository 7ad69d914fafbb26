// lemnilab: command-line front end for the lemniscate laboratory.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure
// threshold exceeded, 1 any other error.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "lemni/errors.hpp"
#include "lemni/harness.hpp"

namespace {

using Settings = std::map<std::string, std::string>;

struct OptionAdder {
  CLI::App* app;
  Settings* settings;

  OptionAdder& opt(const std::string& flag, const std::string& key, const std::string& help) {
    Settings* s = settings;
    app->add_option_function<std::string>(flag, [s, key](const std::string& v) { (*s)[key] = v; },
                                          help);
    return *this;
  }
  OptionAdder& flag(const std::string& flag, const std::string& key, const std::string& help) {
    Settings* s = settings;
    app->add_flag_function(flag, [s, key](std::int64_t) { (*s)[key] = "1"; }, help);
    return *this;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random polynomial lemniscate laboratory"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file; command-line flags override it");

  Settings cli;
  auto common_mc = [&](CLI::App* sub) {
    OptionAdder{sub, &cli}
        .opt("--n", "n", "number of roots")
        .opt("--trials", "trials", "number of trials")
        .opt("--seed", "seed", "master seed, decimal or 0x hex")
        .opt("--kappa", "kappa", "annulus width parameter")
        .opt("--threads", "threads", "worker threads, 0 = all cores");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "component counts per trial as CSV");
  common_mc(simulate);
  OptionAdder{simulate, &cli}
      .opt("--area-samples", "area_samples", "Monte Carlo points per trial for the outside area")
      .opt("--boundary-points", "boundary_points", "circle points for the inradius check")
      .opt("--out", "out", "CSV path (sidecar .failures written next to it)")
      .flag("--no-timing", "no_timing", "write 0 in the wall_micros column")
      .flag("--dump-crit", "dump_crit", "also write critical points to <out>.crit.csv");

  CLI::App* scaling = app.add_subcommand("scaling", "mean component count against sqrt(n)");
  common_mc(scaling);
  OptionAdder{scaling, &cli}
      .opt("--n-list", "n_list", "comma-separated values of n")
      .opt("--out", "out", "CSV path")
      .flag("--no-timing", "no_timing", "ignored; kept for symmetry with simulate");

  CLI::App* raster = app.add_subcommand("raster", "rasterize one lemniscate to a PPM image");
  OptionAdder{raster, &cli}
      .opt("--n", "n", "number of roots")
      .opt("--seed", "seed", "master seed")
      .opt("--res", "res", "pixels per side")
      .opt("--bound", "bound", "half-width of the square view")
      .opt("--kappa", "kappa", "inradius disc parameter")
      .opt("--threads", "threads", "rasterization threads")
      .opt("--out", "out", "PPM path");

  app.add_subcommand("constants", "closed-form constants");

  CLI::App* area = app.add_subcommand("area", "Edgeworth prediction of the outside area");
  area->alias("area-predict");
  OptionAdder{area, &cli}
      .opt("--n", "n", "number of roots")
      .opt("--kappa", "kappa", "lower integration limit parameter")
      .opt("--c-n", "c_n", "threshold shift c_n >= 0")
      .flag("--q1", "q1", "include the first Edgeworth correction");

  CLI::App* heavy = app.add_subcommand("heavytail", "walk interval probability vs single big jump");
  OptionAdder{heavy, &cli}
      .opt("--r", "r", "radius in (0, 1)")
      .opt("--n", "n", "walk length")
      .opt("--a", "a", "interval start")
      .opt("--b", "b", "interval end")
      .opt("--trials", "trials", "number of walks")
      .opt("--seed", "seed", "master seed")
      .opt("--out", "out", "CSV path");

  CLI::App* kr = app.add_subcommand("kacrice", "Kac-Rice counting and event estimators");
  common_mc(kr);
  OptionAdder{kr, &cli}
      .opt("--mode", "mode", "epsint, on-event or t0")
      .opt("--eps", "eps", "epsilon for epsint")
      .opt("--grid", "grid", "base grid for epsint")
      .opt("--out", "out", "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    lemni::ExperimentConfig cfg = lemni::default_config(lemni::parse_command(chosen->get_name()));
    if (!config_path.empty()) {
      Settings file = lemni::read_config_file(config_path);
      file.erase("command");
      lemni::apply_settings(cfg, file);
    }
    lemni::apply_settings(cfg, cli);
    lemni::validate(cfg);

    switch (cfg.command) {
      case lemni::Command::Simulate: return lemni::command_simulate(cfg, std::cout);
      case lemni::Command::Scaling: return lemni::command_scaling(cfg, std::cout);
      case lemni::Command::Raster: return lemni::command_raster(cfg, std::cout);
      case lemni::Command::Constants: return lemni::command_constants(std::cout);
      case lemni::Command::Area: return lemni::command_area(cfg, std::cout);
      case lemni::Command::Heavytail: return lemni::command_heavytail(cfg, std::cout);
      case lemni::Command::Kacrice: return lemni::command_kacrice(cfg, std::cout);
    }
  } catch (const lemni::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
