/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_BENCHMARKS_HPP
#define MELTSPH_BENCHMARKS_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meltsph/integrator.hpp"
#include "meltsph/io.hpp"

namespace meltsph {

struct BenchOptions {
  double resolution_scale = 1.0;
  std::string out_dir;     ///< empty keeps the scenario's own output directory
  long max_steps = -1;     ///< hard cap; negative means run to the scenario end time
  std::optional<double> zeta0_lg;  ///< override of the interface viscosity factor
  bool write_snapshots = true;
  bool quiet = true;
};

struct BenchResult {
  std::string name;
  bool diverged = false;
  long failure_step = -1;
  long steps = 0;
  double end_time = 0.0;
  std::map<std::string, double> scalars;
  std::map<std::string, std::vector<std::pair<double, double>>> series;

  double scalar(const std::string& key) const {
    auto it = scalars.find(key);
    if (it == scalars.end()) throw std::out_of_range("benchmark scalar '" + key + "' missing");
    return it->second;
  }
};

inline std::string scenario_dir() {
  if (const char* env = std::getenv("MELTSPH_SCENARIO_DIR")) return env;
#ifdef MELTSPH_SCENARIO_DIR
  return MELTSPH_SCENARIO_DIR;
#else
  return "scenarios";
#endif
}

inline std::string scenario_path(const std::string& name) {
  return scenario_dir() + "/" + name + ".cfg";
}

namespace detail {

// kernel-smoothed (Shepard) pressure sample at an arbitrary point
template <int D>
double smoothed_pressure(const ParticleSet<D>& ps, const KernelSpec& kernel, const Vec<D>& x) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < ps.size(); ++i) {
    if (!ps.is_fluid(i)) continue;
    const double w = kernel_value((ps.pos[i] - x).norm(), kernel);
    if (w == 0.0) continue;
    const double vol = ps.mass[i] / ps.rho[i];
    num += vol * ps.pressure[i] * w;
    den += vol * w;
  }
  return den > 0.0 ? num / den : 0.0;
}

template <int D>
void write_report(const BenchResult& r, const ScenarioConfig<D>& cfg, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_manifest(cfg, dir + "/manifest.cfg");
  std::ofstream out(dir + "/report.txt");
  out << "benchmark: " << r.name << "\n";
  out << "steps: " << r.steps << "\n";
  out << "end_time: " << full_precision(r.end_time) << "\n";
  out << "diverged: " << (r.diverged ? "yes" : "no") << "\n";
  if (r.diverged) out << "failure_step: " << r.failure_step << "\n";
  for (const auto& [k, v] : r.scalars) out << k << ": " << full_precision(v) << "\n";
  for (const auto& [name, series] : r.series) {
    std::ofstream s(dir + "/series_" + name + ".csv");
    s << "t," << name << "\n";
    for (const auto& [t, v] : series) s << full_precision(t) << ',' << full_precision(v) << "\n";
  }
}

}  // namespace detail

/// Shared benchmark loop: steps the simulation to its end time (or the step
/// cap), sampling the observer every `sample_dt` of simulated time and
/// writing scheduled snapshots. Divergence is caught and recorded.
template <int D, class Observer>
void run_bench_loop(Simulation<D>& sim, BenchResult& result, const BenchOptions& opts,
                    double sample_dt, Observer&& observe) {
  const auto& cfg = sim.config();
  const std::string dir = opts.out_dir.empty() ? cfg.output.directory : opts.out_dir;
  if (opts.write_snapshots && cfg.output.interval > 0.0) std::filesystem::create_directories(dir);

  double next_sample = 0.0;
  double next_snapshot = 0.0;
  int snapshot_id = 0;
  auto maybe_output = [&]() {
    if (sim.time() >= next_sample) {
      observe(sim);
      next_sample += sample_dt;
    }
    if (opts.write_snapshots && cfg.output.interval > 0.0 && sim.time() >= next_snapshot) {
      char tag[32];
      std::snprintf(tag, sizeof(tag), "%05d", snapshot_id++);
      if (cfg.output.csv)
        write_csv_snapshot(sim.particles(), sim.liquid_gas_field(),
                           dir + "/snapshot_" + tag + ".csv");
      if (cfg.output.vtk)
        write_vtk_snapshot(sim.particles(), sim.liquid_gas_field(),
                           dir + "/snapshot_" + tag + ".vtk", sim.time());
      next_snapshot += cfg.output.interval;
    }
  };

  try {
    maybe_output();
    while (sim.time() < cfg.end_time - 0.5 * cfg.dt) {
      if (opts.max_steps >= 0 && sim.step_index() >= opts.max_steps) break;
      sim.step();
      maybe_output();
      if (!opts.quiet && sim.step_index() % 1000 == 0) {
        const auto& r = sim.report();
        std::fprintf(stderr, "[%s] step %ld t=%.6g umax=%.4g T=[%.0f %.0f] headroom=%.3g\n",
                     result.name.c_str(), r.step, r.time, r.max_speed, r.T_min, r.T_max,
                     r.dt_headroom);
      }
    }
  } catch (const DivergenceError& err) {
    result.diverged = true;
    result.failure_step = err.step_index;
  }
  result.steps = sim.step_index();
  result.end_time = sim.time();
}

// ---------------------------------------------------------------------------
// benchmark drivers
// ---------------------------------------------------------------------------

/// Static droplet: pressure jump between the droplet center and the far
/// field, plus the radial scatter of the interface band.
inline BenchResult bench_static_droplet(const BenchOptions& opts = {}) {
  BenchResult result;
  result.name = "static_droplet";
  auto cfg = load_scenario<2>(scenario_path("static_droplet"));
  cfg.apply_resolution_scale(opts.resolution_scale);
  if (!opts.out_dir.empty()) cfg.output.directory = opts.out_dir;
  Simulation<2> sim(cfg);

  const Vec<2> center = cfg.regions[1].center;
  const double radius = cfg.regions[1].radius;

  std::vector<double> jumps;
  run_bench_loop(sim, result, opts, cfg.end_time / 60.0, [&](const Simulation<2>& s) {
    const double p_center = detail::smoothed_pressure(s.particles(), s.kernel(), center);
    // far field: mean pressure of outer-fluid particles well clear of the
    // interface band and the walls
    double p_far = 0.0;
    int n_far = 0;
    for (int i = 0; i < s.particles().size(); ++i) {
      if (s.particles().phase[i] != Phase::Gas) continue;
      const double r = (s.particles().pos[i] - center).norm();
      if (r > 1.5 * radius && r < 1.8 * radius) {
        p_far += s.particles().pressure[i];
        ++n_far;
      }
    }
    if (n_far > 0) jumps.push_back(p_center - p_far / n_far);
    result.series["delta_p"].emplace_back(s.time(), jumps.empty() ? 0.0 : jumps.back());
  });

  // average over the last 20% of samples
  const std::size_t tail = std::max<std::size_t>(1, jumps.size() / 5);
  double dp = 0.0;
  for (std::size_t k = jumps.size() - tail; k < jumps.size(); ++k) dp += jumps[k];
  result.scalars["delta_p"] = dp / tail;
  result.scalars["delta_p_expected"] = cfg.materials[0].alpha0 / radius;

  // interface-band radial scatter relative to the droplet radius
  {
    const auto& ps = sim.particles();
    const auto& lg = sim.liquid_gas_field();
    double mean = 0.0, m2 = 0.0;
    int n = 0;
    for (int i = 0; i < ps.size(); ++i) {
      if (ps.phase[i] != Phase::Liquid || !lg.valid[i]) continue;
      if (lg.delta[i] < 0.5 / sim.kernel().h * 0.2) continue;
      const double r = (ps.pos[i] - center).norm();
      mean += r;
      m2 += r * r;
      ++n;
    }
    if (n > 1) {
      mean /= n;
      result.scalars["radial_scatter"] = std::sqrt(std::max(0.0, m2 / n - mean * mean)) / radius;
    }
  }
  detail::write_report(result, cfg, opts.out_dir.empty() ? cfg.output.directory : opts.out_dir);
  return result;
}

/// Thermo-capillary migration: dimensionless groups from the scenario
/// parameters plus the centroid-velocity history U/U_r over t/t_r.
inline BenchResult bench_migration(const BenchOptions& opts = {}) {
  BenchResult result;
  result.name = "migration";
  auto cfg = load_scenario<2>(scenario_path("migration"));
  cfg.apply_resolution_scale(opts.resolution_scale);
  if (!opts.out_dir.empty()) cfg.output.directory = opts.out_dir;

  // pure arithmetic on scenario parameters (outer fluid 2 properties)
  const MaterialParams& outer = cfg.materials[cfg.material_index("fluid2")];
  const MaterialParams& inner = cfg.materials[cfg.material_index("fluid1")];
  const double a = cfg.regions[1].radius;
  const double grad_T = (cfg.T0_hi - cfg.T0_lo) / cfg.domain.length(1);
  const double U_r = inner.alpha_prime0 * grad_T * a / outer.eta;
  const double t_r = a / U_r;
  result.scalars["U_r"] = U_r;
  result.scalars["t_r"] = t_r;
  result.scalars["Re"] = outer.rho0 * a * U_r / outer.eta;
  result.scalars["Ma"] = outer.rho0 * outer.c_p * a * U_r / outer.k;
  result.scalars["Ca"] = outer.eta * U_r / outer.alpha0;

  Simulation<2> sim(cfg);
  std::vector<std::pair<double, double>> centroid;  // (t, y_c)
  run_bench_loop(sim, result, opts, t_r / 50.0, [&](const Simulation<2>& s) {
    double y = 0.0;
    int n = 0;
    for (int i = 0; i < s.particles().size(); ++i) {
      if (s.particles().phase[i] != Phase::Liquid) continue;
      y += s.particles().pos[i].y();
      ++n;
    }
    centroid.emplace_back(s.time(), y / n);
  });

  // centered finite differences of the centroid path
  for (std::size_t k = 1; k + 1 < centroid.size(); ++k) {
    const double u = (centroid[k + 1].second - centroid[k - 1].second) /
                     (centroid[k + 1].first - centroid[k - 1].first);
    result.series["U_over_Ur"].emplace_back(centroid[k].first / t_r, u / U_r);
  }
  detail::write_report(result, cfg, opts.out_dir.empty() ? cfg.output.directory : opts.out_dir);
  return result;
}

/// Droplet oscillation: period from the crossings of the droplet length
/// through its equilibrium diameter.
inline BenchResult bench_oscillation(const BenchOptions& opts = {}) {
  BenchResult result;
  result.name = "oscillation";
  auto cfg = load_scenario<2>(scenario_path("oscillation"));
  cfg.apply_resolution_scale(opts.resolution_scale);
  if (!opts.out_dir.empty()) cfg.output.directory = opts.out_dir;

  const Vec<2> ax = cfg.regions[1].semi_axes;
  const double R = std::sqrt(ax.x() * ax.y());  // equal-area radius
  const MaterialParams& melt = cfg.materials[cfg.material_index("melt")];
  result.scalars["T_analytic"] =
      2.0 * pi * std::sqrt(R * R * R * melt.rho0 / (6.0 * melt.alpha0));

  Simulation<2> sim(cfg);
  std::vector<std::pair<double, double>> length;  // (t, x extent)
  run_bench_loop(sim, result, opts, cfg.dt * 50.0, [&](const Simulation<2>& s) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < s.particles().size(); ++i) {
      if (s.particles().phase[i] != Phase::Liquid) continue;
      lo = std::min(lo, s.particles().pos[i].x());
      hi = std::max(hi, s.particles().pos[i].x());
    }
    length.emplace_back(s.time(), hi - lo);
    result.series["droplet_length"].emplace_back(s.time(), hi - lo);
  });

  // crossings of the equilibrium diameter 2R (linear interpolation in time);
  // the first and third crossing bracket one full period
  std::vector<double> crossings;
  for (std::size_t k = 1; k < length.size(); ++k) {
    const double f0 = length[k - 1].second - 2.0 * R;
    const double f1 = length[k].second - 2.0 * R;
    if (f0 > 0.0 && f1 <= 0.0) {
      crossings.push_back(length[k - 1].first +
                          (length[k].first - length[k - 1].first) * f0 / (f0 - f1));
    } else if (f0 < 0.0 && f1 >= 0.0) {
      crossings.push_back(length[k - 1].first +
                          (length[k].first - length[k - 1].first) * (-f0) / (f1 - f0));
    }
  }
  if (crossings.size() >= 3) result.scalars["period"] = crossings[2] - crossings[0];
  if (!length.empty()) result.scalars["final_length"] = length.back().second;
  result.scalars["crossings"] = static_cast<double>(crossings.size());
  detail::write_report(result, cfg, opts.out_dir.empty() ? cfg.output.directory : opts.out_dir);
  return result;
}

namespace detail {

// shared driver for the laser melting scenarios
template <int D>
BenchResult bench_melting(const std::string& name, const BenchOptions& opts) {
  BenchResult result;
  result.name = name;
  auto cfg = load_scenario<D>(scenario_path(name));
  cfg.apply_resolution_scale(opts.resolution_scale);
  if (opts.zeta0_lg) cfg.physics.zeta0_lg = *opts.zeta0_lg;
  if (!opts.out_dir.empty()) cfg.output.directory = opts.out_dir;

  // initial solid surface height along the beam axis (the substrate box top)
  double surface0 = -1e300;
  for (const auto& r : cfg.regions)
    if (r.phase == Phase::Solid && r.shape == Region<D>::Shape::Box)
      surface0 = std::max(surface0, r.hi[D - 1]);

  Simulation<D> sim(cfg);
  const double c_melt = cfg.materials[cfg.material_index("steel")].sound_speed();
  double max_u_over_c = 0.0;
  std::vector<double> band_kinetic_var;

  run_bench_loop(sim, result, opts, cfg.end_time / 100.0, [&](const Simulation<D>& s) {
    const auto& ps = s.particles();
    const auto& lg = s.liquid_gas_field();
    int liquid = 0;
    double depth = surface0, width_lo = 1e300, width_hi = -1e300;
    // interface-band speed statistics (the spurious-current proxy)
    double u1 = 0.0, u2 = 0.0;
    int nb = 0;
    for (int i = 0; i < ps.size(); ++i) {
      if (ps.phase[i] == Phase::Liquid) {
        ++liquid;
        depth = std::min(depth, ps.pos[i][D - 1]);
        width_lo = std::min(width_lo, ps.pos[i][0]);
        width_hi = std::max(width_hi, ps.pos[i][0]);
        if (lg.delta[i] > 1e-6 / s.kernel().h) {
          const double u = ps.vel[i].norm();
          u1 += u;
          u2 += u * u;
          ++nb;
        }
      }
    }
    result.series["melt_count"].emplace_back(s.time(), liquid);
    result.series["depth"].emplace_back(s.time(), liquid ? surface0 - depth : 0.0);
    result.series["width"].emplace_back(s.time(), liquid ? width_hi - width_lo : 0.0);
    if (nb > 1) {
      const double mean = u1 / nb;
      band_kinetic_var.push_back(std::max(0.0, u2 / nb - mean * mean));
      result.series["band_velocity_variance"].emplace_back(s.time(), band_kinetic_var.back());
    }
    max_u_over_c = std::max(max_u_over_c, s.report().max_speed / c_melt);
  });

  result.scalars["max_u_over_c"] = max_u_over_c;
  if (!result.series["depth"].empty()) {
    result.scalars["final_depth"] = result.series["depth"].back().second;
    result.scalars["final_melt_count"] = result.series["melt_count"].back().second;
  }
  if (!band_kinetic_var.empty()) {
    const std::size_t tail = std::max<std::size_t>(1, band_kinetic_var.size() / 5);
    double v = 0.0;
    for (std::size_t k = band_kinetic_var.size() - tail; k < band_kinetic_var.size(); ++k)
      v += band_kinetic_var[k];
    result.scalars["band_velocity_variance"] = v / tail;
  }
  write_report(result, cfg, opts.out_dir.empty() ? cfg.output.directory : opts.out_dir);
  return result;
}

}  // namespace detail

inline BenchResult bench_melt2d(const BenchOptions& opts = {}) {
  return detail::bench_melting<2>("melt2d", opts);
}
inline BenchResult bench_keyhole2d(const BenchOptions& opts = {}) {
  return detail::bench_melting<2>("keyhole2d", opts);
}
inline BenchResult bench_point3d(const BenchOptions& opts = {}) {
  return detail::bench_melting<3>("point3d", opts);
}

inline BenchResult run_benchmark(const std::string& name, const BenchOptions& opts = {}) {
  if (name == "static_droplet") return bench_static_droplet(opts);
  if (name == "migration") return bench_migration(opts);
  if (name == "oscillation") return bench_oscillation(opts);
  if (name == "melt2d") return bench_melt2d(opts);
  if (name == "keyhole2d") return bench_keyhole2d(opts);
  if (name == "point3d") return bench_point3d(opts);
  throw ConfigError("unknown benchmark '" + name +
                    "' (expected static_droplet, migration, oscillation, melt2d, keyhole2d or "
                    "point3d)");
}

}  // namespace meltsph

#endif
