/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_IO_HPP
#define MELTSPH_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "meltsph/interface_fields.hpp"
#include "meltsph/particles.hpp"
#include "meltsph/scenario.hpp"

namespace meltsph {

namespace detail {

// shortest representation that round-trips a double exactly
inline std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// CSV snapshot: one row per particle, numeric fields with 17 significant
/// digits so parsed values are bit-identical to the state written.
template <int D>
void write_csv_snapshot(const ParticleSet<D>& ps, const InterfaceField<D>& lg,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "id,phase";
  const char* axes[] = {"x", "y", "z"};
  const char* vels[] = {"u", "v", "w"};
  for (int a = 0; a < D; ++a) out << ',' << axes[a];
  for (int a = 0; a < D; ++a) out << ',' << vels[a];
  out << ",rho,p,T,delta_lg,kappa\n";
  for (int i = 0; i < ps.size(); ++i) {
    out << i << ',' << phase_name(ps.phase[i]);
    for (int a = 0; a < D; ++a) out << ',' << detail::full_precision(ps.pos[i][a]);
    for (int a = 0; a < D; ++a) out << ',' << detail::full_precision(ps.vel[i][a]);
    out << ',' << detail::full_precision(ps.rho[i]) << ','
        << detail::full_precision(ps.pressure[i]) << ','
        << detail::full_precision(ps.temperature[i]) << ','
        << detail::full_precision(lg.delta[i]) << ','
        << detail::full_precision(lg.curvature[i]) << '\n';
  }
}

template <int D>
struct CsvSnapshot {
  std::vector<std::string> phase;
  std::vector<Vec<D>> pos, vel;
  std::vector<double> rho, p, T, delta_lg, kappa;
  int size() const { return static_cast<int>(pos.size()); }
};

template <int D>
CsvSnapshot<D> read_csv_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  CsvSnapshot<D> snap;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != static_cast<std::size_t>(2 + 2 * D + 5))
      throw std::runtime_error("bad CSV row in '" + path + "'");
    int c = 1;
    snap.phase.push_back(cells[c++]);
    Vec<D> x, u;
    for (int a = 0; a < D; ++a) x[a] = std::stod(cells[c++]);
    for (int a = 0; a < D; ++a) u[a] = std::stod(cells[c++]);
    snap.pos.push_back(x);
    snap.vel.push_back(u);
    snap.rho.push_back(std::stod(cells[c++]));
    snap.p.push_back(std::stod(cells[c++]));
    snap.T.push_back(std::stod(cells[c++]));
    snap.delta_lg.push_back(std::stod(cells[c++]));
    snap.kappa.push_back(std::stod(cells[c++]));
  }
  return snap;
}

/// Legacy ASCII VTK polydata snapshot: particle positions as POINTS plus one
/// VERTICES cell per particle, state as POINT_DATA.
template <int D>
void write_vtk_snapshot(const ParticleSet<D>& ps, const InterfaceField<D>& lg,
                        const std::string& path, double t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const int n = ps.size();
  out << "# vtk DataFile Version 2.0\n";
  out << "meltsph particle snapshot t=" << detail::full_precision(t) << "\n";
  out << "ASCII\nDATASET POLYDATA\n";
  out << "POINTS " << n << " double\n";
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < 3; ++a) out << (a < D ? ps.pos[i][a] : 0.0) << (a < 2 ? ' ' : '\n');
  }
  out << "VERTICES " << n << ' ' << 2 * n << '\n';
  for (int i = 0; i < n; ++i) out << "1 " << i << '\n';
  out << "POINT_DATA " << n << '\n';
  out << "VECTORS velocity double\n";
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < 3; ++a) out << (a < D ? ps.vel[i][a] : 0.0) << (a < 2 ? ' ' : '\n');
  }
  auto scalars = [&](const char* name, auto&& value) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int i = 0; i < n; ++i) out << value(i) << '\n';
  };
  scalars("density", [&](int i) { return ps.rho[i]; });
  scalars("pressure", [&](int i) { return ps.pressure[i]; });
  scalars("temperature", [&](int i) { return ps.temperature[i]; });
  scalars("delta_lg", [&](int i) { return lg.delta[i]; });
  scalars("curvature", [&](int i) { return lg.curvature[i]; });
  out << "SCALARS phase int 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < n; ++i) out << static_cast<int>(ps.phase[i]) << '\n';
}

/// Echoes the fully resolved configuration (defaults included) next to the
/// run outputs, in the same flat key-value format the loader accepts.
template <int D>
void write_manifest(const ScenarioConfig<D>& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  auto vec = [&](const Vec<D>& v) {
    std::string s;
    for (int a = 0; a < D; ++a) s += (a ? " " : "") + detail::full_precision(v[a]);
    return s;
  };
  out << "# resolved configuration (" << cfg.name << ")\n";
  out << "[domain]\ndim = " << D << "\nmin = " << vec(cfg.domain.lo)
      << "\nmax = " << vec(cfg.domain.hi) << "\nboundary =";
  for (int a = 0; a < D; ++a)
    out << (cfg.boundary[a] == BoundaryKind::Periodic ? " periodic" : " wall");
  out << "\nwall_layers = " << cfg.wall_layers;
  out << "\nwall_material = " << cfg.materials[cfg.wall_material].name;
  const char* axis_names = "xyz";
  for (int a = 0; a < D; ++a)
    for (int s = 0; s < 2; ++s) {
      out << "\nwall_mode_" << axis_names[a] << (s ? "_max" : "_min") << " = "
          << (cfg.face_mode[a][s] == WallMode::FreeSlip ? "freeslip" : "noslip");
      out << "\nwall_temperature_" << axis_names[a] << (s ? "_max" : "_min") << " = "
          << detail::full_precision(cfg.face_temperature[a][s]);
    }
  out << "\n\n[numerics]\ndx = " << detail::full_precision(cfg.dx)
      << "\ndt = " << detail::full_precision(cfg.dt)
      << "\nend_time = " << detail::full_precision(cfg.end_time) << "\n";
  out << "\n[initial]\n";
  if (cfg.T0_axis >= 0)
    out << "temperature_profile = linear " << axis_names[cfg.T0_axis] << ' '
        << detail::full_precision(cfg.T0_lo) << ' ' << detail::full_precision(cfg.T0_hi) << "\n";
  out << "temperature = " << detail::full_precision(cfg.T0) << "\n";
  const auto& ph = cfg.physics;
  out << "\n[physics]\ngravity = " << vec(cfg.gravity);
  auto flag = [&](const char* k, bool v) { out << '\n' << k << " = " << (v ? "on" : "off"); };
  flag("fluid_forces", ph.fluid_forces);
  flag("surface_tension", ph.surface_tension);
  flag("marangoni", ph.marangoni);
  flag("wetting", ph.wetting);
  flag("recoil", ph.recoil);
  flag("evaporation", ph.evaporation);
  flag("laser", ph.laser_heating);
  flag("conduction", ph.conduction);
  flag("transport_velocity", ph.transport_velocity);
  out << "\nflux_sides = "
      << (ph.flux_sides == FluxSides::Auto ? "auto"
          : ph.flux_sides == FluxSides::OneSided ? "one" : "two");
  out << "\nzeta0_lg = " << detail::full_precision(ph.zeta0_lg);
  out << "\nzeta0_sl = " << detail::full_precision(ph.zeta0_sl);
  out << "\nT_ramp_max = " << detail::full_precision(ph.T_ramp_max);
  out << "\neps_visc = " << detail::full_precision(ph.eps_visc);
  out << "\neps_curv_over_h = " << detail::full_precision(ph.eps_curv_over_h);
  out << "\nd_max_over_h = " << detail::full_precision(ph.d_max_over_h) << "\n";
  for (const auto& m : cfg.materials) {
    out << "\n[material." << m.name << "]";
    out << "\nrho0 = " << detail::full_precision(m.rho0);
    out << "\neta = " << detail::full_precision(m.eta);
    out << "\nalpha0 = " << detail::full_precision(m.alpha0);
    out << "\nalpha_prime0 = " << detail::full_precision(m.alpha_prime0);
    out << "\nT_alpha0 = " << detail::full_precision(m.T_alpha0);
    out << "\ntheta0 = " << detail::full_precision(m.theta0_deg);
    out << "\nT_melt = " << detail::full_precision(m.T_melt);
    if (std::isfinite(m.T_vapor)) out << "\nT_vapor = " << detail::full_precision(m.T_vapor);
    out << "\nc_p = " << detail::full_precision(m.c_p);
    out << "\nk = " << detail::full_precision(m.k);
    out << "\nchi_l = " << detail::full_precision(m.chi_l);
    out << "\nC_P = " << detail::full_precision(m.C_P);
    out << "\nC_T = " << detail::full_precision(m.C_T);
    out << "\nh_v = " << detail::full_precision(m.h_v);
    out << "\nT_h0 = " << detail::full_precision(m.T_h0);
    out << "\nC_M = " << detail::full_precision(m.C_M);
    out << "\nc_s = " << detail::full_precision(m.c_s);
    out << "\np0 = " << detail::full_precision(m.p0);
    out << "\np_b = " << detail::full_precision(m.p_b) << "\n";
  }
  for (const auto& r : cfg.regions) {
    out << "\n[region." << r.name << "]";
    out << "\nphase = " << phase_name(r.phase);
    out << "\nmaterial = " << cfg.materials[r.material].name;
    if (r.shape == Region<D>::Shape::Box)
      out << "\nshape = box\nmin = " << vec(r.lo) << "\nmax = " << vec(r.hi);
    else if (r.shape == Region<D>::Shape::Ball)
      out << "\nshape = " << (D == 2 ? "disc" : "sphere") << "\ncenter = " << vec(r.center)
          << "\nradius = " << detail::full_precision(r.radius);
    else if (r.shape == Region<D>::Shape::Ellipse)
      out << "\nshape = ellipse\ncenter = " << vec(r.center)
          << "\nsemi_axes = " << vec(r.semi_axes);
    out << "\n";
  }
  if (cfg.laser.enabled()) {
    out << "\n[laser]\ns0 = " << detail::full_precision(cfg.laser.s0)
        << "\nr_w = " << detail::full_precision(cfg.laser.r_w)
        << "\ndirection = " << vec(cfg.laser.direction);
    for (const auto& w : cfg.laser.path)
      out << "\nwaypoint = " << detail::full_precision(w.t) << ' ' << vec(w.x);
    if (!cfg.laser.on_spans.empty()) {
      out << "\non =";
      for (const auto& [a, b] : cfg.laser.on_spans)
        out << ' ' << detail::full_precision(a) << ' ' << detail::full_precision(b);
    }
    out << "\n";
  }
  for (const auto& [name, r] : cfg.ramps) {
    out << "\n[ramp." << name << "]\nt0 = " << detail::full_precision(r.t0)
        << "\nt1 = " << detail::full_precision(r.t1)
        << "\nfrom = " << detail::full_precision(r.from)
        << "\nto = " << detail::full_precision(r.to) << "\n";
  }
  out << "\n[output]\ninterval = " << detail::full_precision(cfg.output.interval)
      << "\ndirectory = " << cfg.output.directory << "\nformats =";
  if (cfg.output.csv) out << " csv";
  if (cfg.output.vtk) out << " vtk";
  out << "\n";
}

}  // namespace meltsph

#endif
