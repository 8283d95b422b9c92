/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "meltsph/benchmarks.hpp"
#include "meltsph/gradlab.hpp"
#include "meltsph/integrator.hpp"
#include "meltsph/io.hpp"

namespace {

using namespace meltsph;

template <int D>
int run_scenario(const ScenarioDoc& doc, const std::string& out_dir, double resolution_scale,
                 long max_steps) {
  auto cfg = build_scenario<D>(doc);
  cfg.apply_resolution_scale(resolution_scale);
  if (!out_dir.empty()) cfg.output.directory = out_dir;
  std::filesystem::create_directories(cfg.output.directory);
  write_manifest(cfg, cfg.output.directory + "/manifest.cfg");

  Simulation<D> sim(cfg);
  std::printf("loaded %s: %d particles, dx = %g, dt = %g, end time = %g\n", cfg.name.c_str(),
              sim.particles().size(), cfg.dx, cfg.dt, cfg.end_time);
  {
    const double admissible = stable_dt(sim.particles(), cfg.materials, cfg.dx, cfg.gravity);
    if (cfg.dt > admissible)
      std::printf("warning: dt = %g exceeds the admissible step %g (headroom %.2f)\n", cfg.dt,
                  admissible, admissible / cfg.dt);
  }

  double next_snapshot = 0.0;
  int snapshot_id = 0;
  auto snapshot = [&]() {
    if (cfg.output.interval <= 0.0 || sim.time() < next_snapshot) return;
    char tag[32];
    std::snprintf(tag, sizeof(tag), "%05d", snapshot_id++);
    if (cfg.output.csv)
      write_csv_snapshot(sim.particles(), sim.liquid_gas_field(),
                         cfg.output.directory + "/snapshot_" + std::string(tag) + ".csv");
    if (cfg.output.vtk)
      write_vtk_snapshot(sim.particles(), sim.liquid_gas_field(),
                         cfg.output.directory + "/snapshot_" + std::string(tag) + ".vtk",
                         sim.time());
    next_snapshot += cfg.output.interval;
  };

  try {
    snapshot();
    while (sim.time() < cfg.end_time - 0.5 * cfg.dt) {
      if (max_steps >= 0 && sim.step_index() >= max_steps) break;
      sim.step();
      snapshot();
      if (sim.step_index() % 2000 == 0) {
        const auto& r = sim.report();
        std::printf("step %-8ld t=%-12.5g umax=%-10.4g rho/rho0=[%.4f %.4f] T=[%.0f %.0f] "
                    "headroom=%.3g\n",
                    r.step, r.time, r.max_speed, r.rho_ratio_min, r.rho_ratio_max, r.T_min,
                    r.T_max, r.dt_headroom);
        if (r.dt_headroom < 1.0)
          std::printf("warning: dt exceeds the current admissible step (headroom %.3g)\n",
                      r.dt_headroom);
      }
    }
  } catch (const DivergenceError& err) {
    std::fprintf(stderr, "run aborted: %s\n", err.what());
    return 2;
  }
  std::printf("finished at t = %g after %ld steps\n", sim.time(), sim.step_index());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weakly compressible SPH solver for thermo-capillary multiphase flow"};
  app.require_subcommand(1);

  std::string scenario_file, out_dir, bench_name, gradlab_file;
  double resolution_scale = 1.0;
  long max_steps = -1;

  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", scenario_file, "scenario .cfg file")->required();
  run->add_option("--out", out_dir, "output directory (overrides the scenario)");
  run->add_option("--resolution-scale", resolution_scale,
                  "coarsen (>1) or refine (<1) dx and dt consistently");
  run->add_option("--max-steps", max_steps, "stop after this many steps");

  auto* bench = app.add_subcommand("bench", "run a named verification benchmark");
  bench->add_option("name", bench_name,
                    "static_droplet | migration | oscillation | melt2d | keyhole2d | point3d")
      ->required();
  bench->add_option("--resolution-scale", resolution_scale, "resolution scale knob");
  bench->add_option("--out", out_dir, "output directory");
  bench->add_option("--max-steps", max_steps, "stop after this many steps");

  auto* glab = app.add_subcommand("gradlab", "temperature-gradient operator comparison");
  glab->add_option("config", gradlab_file, "gradlab .cfg file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto doc = meltsph::parse_scenario_file(scenario_file);
      const int dim = meltsph::scenario_dimension(doc);
      if (dim == 2) return run_scenario<2>(doc, out_dir, resolution_scale, max_steps);
      if (dim == 3) return run_scenario<3>(doc, out_dir, resolution_scale, max_steps);
      throw meltsph::ConfigError("scenario dimension must be 2 or 3");
    }
    if (*bench) {
      meltsph::BenchOptions opts;
      opts.resolution_scale = resolution_scale;
      opts.out_dir = out_dir;
      opts.max_steps = max_steps;
      opts.quiet = false;
      const auto result = meltsph::run_benchmark(bench_name, opts);
      std::printf("benchmark %s: %ld steps to t = %g%s\n", result.name.c_str(), result.steps,
                  result.end_time, result.diverged ? " (diverged)" : "");
      for (const auto& [k, v] : result.scalars) std::printf("  %-24s %.8g\n", k.c_str(), v);
      return result.diverged ? 2 : 0;
    }
    if (*glab) {
      const auto cfg = meltsph::parse_gradlab_config(gradlab_file);
      std::ofstream dump;
      if (!cfg.out_csv.empty()) dump.open(cfg.out_csv);
      const auto report = meltsph::gradient_study(cfg, cfg.out_csv.empty() ? nullptr : &dump);
      meltsph::print_gradlab_report(report, std::cout);
      return 0;
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
