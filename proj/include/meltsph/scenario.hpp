/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_SCENARIO_HPP
#define MELTSPH_SCENARIO_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "meltsph/common.hpp"
#include "meltsph/materials.hpp"
#include "meltsph/neighbors.hpp"
#include "meltsph/particles.hpp"

namespace meltsph {

enum class BoundaryKind { Wall, Periodic };
enum class WallMode { NoSlip, FreeSlip };
enum class FluxSides { Auto, OneSided, TwoSided };

/// Linear time ramp multiplying one force contribution: factor moves from
/// `from` to `to` on [t0, t1] and is constant outside.
struct Ramp {
  double t0 = 0.0, t1 = 0.0, from = 1.0, to = 1.0;
  double factor(double t) const {
    if (t <= t0) return from;
    if (t >= t1) return to;
    return from + (to - from) * (t - t0) / (t1 - t0);
  }
};

struct PhysicsOptions {
  bool fluid_forces = true;  ///< pressure, viscous and transport-velocity terms
  bool surface_tension = true;
  bool marangoni = true;
  bool wetting = false;
  bool recoil = false;
  bool evaporation = false;
  bool laser_heating = false;
  bool conduction = true;
  bool transport_velocity = true;
  FluxSides flux_sides = FluxSides::Auto;
  double zeta0_lg = 0.0;    ///< liquid-gas interface viscosity factor (at the scenario's base h)
  double zeta0_sl = 0.0;    ///< solid-liquid interface viscosity factor
  double T_ramp_max = 0.0;  ///< upper end of the solid-liquid viscosity ramp
  double eps_visc = 0.01;
  double eps_curv_over_h = 1e-4;
  double d_max_over_h = 1.0;  ///< wetting blend distance in units of h
};

template <int D>
struct Region {
  enum class Shape { Background, Box, Ball, Ellipse };
  std::string name;
  Shape shape = Shape::Background;
  Vec<D> lo = Vec<D>::Zero(), hi = Vec<D>::Zero();  // Box
  Vec<D> center = Vec<D>::Zero();                   // Ball / Ellipse
  double radius = 0.0;
  Vec<D> semi_axes = Vec<D>::Zero();                // Ellipse
  Phase phase = Phase::Gas;
  int material = 0;

  bool contains(const Vec<D>& p) const {
    switch (shape) {
      case Shape::Background: return true;
      case Shape::Box:
        for (int a = 0; a < D; ++a)
          if (p[a] < lo[a] || p[a] >= hi[a]) return false;
        return true;
      case Shape::Ball: return (p - center).squaredNorm() < radius * radius;
      case Shape::Ellipse: {
        double q = 0.0;
        for (int a = 0; a < D; ++a) {
          const double t = (p[a] - center[a]) / semi_axes[a];
          q += t * t;
        }
        return q < 1.0;
      }
    }
    return false;
  }
};

template <int D>
struct OutputOptions {
  double interval = 0.0;  ///< snapshot cadence in simulated time; 0 disables
  bool csv = true;
  bool vtk = false;
  std::string directory = "out";
};

template <int D>
struct ScenarioConfig {
  std::string name = "scenario";

  DomainBox<D> domain;
  std::array<BoundaryKind, D> boundary{};
  int wall_layers = 3;
  int wall_material = 0;
  WallMode wall_mode = WallMode::NoSlip;
  // per-face overrides indexed [axis][side], side 0 = min face, 1 = max face
  std::array<std::array<WallMode, 2>, D> face_mode{};
  std::array<std::array<double, 2>, D> face_temperature{};

  std::vector<MaterialParams> materials;
  std::vector<Region<D>> regions;  // regions[0] is the background

  LaserParams<D> laser;
  Vec<D> gravity = Vec<D>::Zero();

  double dx = 0.0;
  double dt = 0.0;
  double end_time = 0.0;

  double T0 = 0.0;
  int T0_axis = -1;  ///< >= 0 selects a linear profile along that axis
  double T0_lo = 0.0, T0_hi = 0.0;

  PhysicsOptions physics;
  OutputOptions<D> output;
  std::map<std::string, Ramp> ramps;  ///< keyed by force name

  double smoothing_length() const { return dx; }  // h = dx throughout

  double initial_temperature(const Vec<D>& p) const {
    if (T0_axis < 0) return T0;
    const double f = (p[T0_axis] - domain.lo[T0_axis]) / domain.length(T0_axis);
    return T0_lo + (T0_hi - T0_lo) * f;
  }

  double ramp_factor(const std::string& force, double t) const {
    auto it = ramps.find(force);
    return it == ramps.end() ? 1.0 : it->second.factor(t);
  }

  int material_index(const std::string& mat_name) const {
    for (std::size_t k = 0; k < materials.size(); ++k)
      if (materials[k].name == mat_name) return static_cast<int>(k);
    throw ConfigError("unknown material '" + mat_name + "'");
  }

  /// True if the interface fluxes act on both sides of the liquid-gas
  /// interface. Auto resolves by density ratio: two-sided below ratio 10.
  bool two_sided_fluxes() const {
    if (physics.flux_sides == FluxSides::OneSided) return false;
    if (physics.flux_sides == FluxSides::TwoSided) return true;
    double rho_l = 0.0, rho_g = 0.0;
    for (const auto& r : regions) {
      if (r.phase == Phase::Liquid) rho_l = std::max(rho_l, materials[r.material].rho0);
      if (r.phase == Phase::Gas) rho_g = std::max(rho_g, materials[r.material].rho0);
    }
    if (rho_l == 0.0 || rho_g == 0.0) return false;
    const double ratio = std::max(rho_l, rho_g) / std::min(rho_l, rho_g);
    return ratio < 10.0;
  }

  /// Coarsen (s > 1) or refine (s < 1) the discretization. dt follows the
  /// stricter of the advective (dt ~ dx) and capillary (dt ~ dx^1.5) scalings;
  /// the liquid-gas interface viscosity factor scales linearly with h.
  void apply_resolution_scale(double s) {
    if (!(s > 0.0)) throw ConfigError("resolution scale must be positive");
    dx *= s;
    dt *= std::min(s, std::pow(s, 1.5));
    physics.zeta0_lg *= s;
  }

  void validate() const {
    std::vector<std::string> missing;
    if (!(dx > 0.0)) missing.push_back("numerics.dx");
    if (!(dt > 0.0)) missing.push_back("numerics.dt");
    if (!(end_time >= 0.0)) missing.push_back("numerics.end_time");
    if (materials.empty()) missing.push_back("material.<name> section");
    if (regions.empty() || regions[0].shape != Region<D>::Shape::Background)
      missing.push_back("region.background section");
    for (int a = 0; a < D; ++a)
      if (!(domain.hi[a] > domain.lo[a])) missing.push_back("domain.min/max");
    if (!missing.empty()) {
      std::string msg = "scenario is missing required fields:";
      for (const auto& m : missing) msg += " " + m + ";";
      throw ConfigError(msg);
    }
    for (const auto& m : materials) m.validate();
    for (std::size_t k = 1; k < regions.size(); ++k)
      if (regions[k].shape == Region<D>::Shape::Background)
        throw ConfigError("only the first region may be the background");
    if (physics.laser_heating) laser.validate();
    if (wall_layers < 1) throw ConfigError("domain.wall_layers must be at least 1");
  }
};

// ---------------------------------------------------------------------------
// flat sectioned key-value scenario files
// ---------------------------------------------------------------------------

struct ScenarioDoc {
  struct Entry {
    std::string key, value;
    int line;
  };
  struct Section {
    std::string name;
    int line;
    std::vector<Entry> entries;
  };
  std::string path;
  std::vector<Section> sections;

  const Section* find(const std::string& name) const {
    for (const auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

[[noreturn]] inline void fail(const ScenarioDoc& doc, int line, const std::string& msg) {
  throw ConfigError(doc.path + ":" + std::to_string(line) + ": " + msg);
}

inline double to_number(const ScenarioDoc& doc, const ScenarioDoc::Entry& e,
                        const std::string& tok) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) fail(doc, e.line, "bad number '" + tok + "' for key '" + e.key + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(doc, e.line, "bad number '" + tok + "' for key '" + e.key + "'");
  }
}

inline bool to_bool(const ScenarioDoc& doc, const ScenarioDoc::Entry& e) {
  std::string v = e.value;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  fail(doc, e.line, "bad boolean '" + e.value + "' for key '" + e.key + "'");
}

}  // namespace detail

inline ScenarioDoc parse_scenario_text(std::istream& in, const std::string& path) {
  ScenarioDoc doc;
  doc.path = path;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = detail::trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') detail::fail(doc, line, "malformed section header");
      doc.sections.push_back({detail::trim(s.substr(1, s.size() - 2)), line, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) detail::fail(doc, line, "expected 'key = value'");
    if (doc.sections.empty()) detail::fail(doc, line, "key outside of any [section]");
    doc.sections.back().entries.push_back(
        {detail::trim(s.substr(0, eq)), detail::trim(s.substr(eq + 1)), line});
  }
  return doc;
}

inline ScenarioDoc parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  return parse_scenario_text(in, path);
}

inline int scenario_dimension(const ScenarioDoc& doc) {
  if (const auto* s = doc.find("domain"))
    for (const auto& e : s->entries)
      if (e.key == "dim") return static_cast<int>(detail::to_number(doc, e, e.value));
  throw ConfigError(doc.path + ": missing required fields: domain.dim (plus any sections that "
                    "depend on it: domain.min/max, numerics.dx/dt/end_time, material.<name>, "
                    "region.background)");
}

template <int D>
ScenarioConfig<D> build_scenario(const ScenarioDoc& doc) {
  ScenarioConfig<D> cfg;
  cfg.name = doc.path;

  auto vec_value = [&](const ScenarioDoc::Entry& e) {
    const auto t = detail::tokens(e.value);
    if (static_cast<int>(t.size()) != D)
      detail::fail(doc, e.line, "key '" + e.key + "' needs " + std::to_string(D) + " components");
    Vec<D> v;
    for (int a = 0; a < D; ++a) v[a] = detail::to_number(doc, e, t[a]);
    return v;
  };
  auto axis_of = [&](char c, int line) {
    const int a = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : -1;
    if (a < 0 || a >= D) detail::fail(doc, line, std::string("bad axis '") + c + "'");
    return a;
  };
  auto wall_mode_of = [&](const ScenarioDoc::Entry& e, const std::string& v) {
    if (v == "noslip") return WallMode::NoSlip;
    if (v == "freeslip") return WallMode::FreeSlip;
    detail::fail(doc, e.line, "bad wall mode '" + v + "'");
  };

  std::map<std::string, int> material_ids;
  std::string wall_material_name;
  double wall_T_default = std::numeric_limits<double>::quiet_NaN();
  std::array<std::array<std::optional<double>, 2>, D> face_T_override{};
  std::array<std::array<std::optional<WallMode>, 2>, D> face_mode_override{};

  // first pass: materials, so regions can reference them by name
  for (const auto& sec : doc.sections) {
    if (sec.name.rfind("material.", 0) != 0) continue;
    MaterialParams m;
    m.name = sec.name.substr(9);
    for (const auto& e : sec.entries) {
      const double v = e.key == "name" ? 0.0 : detail::to_number(doc, e, e.value);
      if (e.key == "rho0") m.rho0 = v;
      else if (e.key == "eta") m.eta = v;
      else if (e.key == "alpha0") m.alpha0 = v;
      else if (e.key == "alpha_prime0") m.alpha_prime0 = v;
      else if (e.key == "T_alpha0") m.T_alpha0 = v;
      else if (e.key == "theta0") m.theta0_deg = v;
      else if (e.key == "T_melt") m.T_melt = v;
      else if (e.key == "T_vapor") m.T_vapor = v;
      else if (e.key == "c_p") m.c_p = v;
      else if (e.key == "k") m.k = v;
      else if (e.key == "chi_l") m.chi_l = v;
      else if (e.key == "C_P") m.C_P = v;
      else if (e.key == "C_T") m.C_T = v;
      else if (e.key == "h_v") m.h_v = v;
      else if (e.key == "T_h0") m.T_h0 = v;
      else if (e.key == "C_M") m.C_M = v;
      else if (e.key == "c_s") m.c_s = v;
      else if (e.key == "p0") m.p0 = v;
      else if (e.key == "p_b") m.p_b = v;
      else detail::fail(doc, e.line, "unknown material key '" + e.key + "'");
    }
    material_ids[m.name] = static_cast<int>(cfg.materials.size());
    cfg.materials.push_back(m);
  }
  auto material_id = [&](const ScenarioDoc::Entry& e, const std::string& nm) {
    auto it = material_ids.find(nm);
    if (it == material_ids.end()) detail::fail(doc, e.line, "unknown material '" + nm + "'");
    return it->second;
  };

  for (const auto& sec : doc.sections) {
    if (sec.name == "domain") {
      for (const auto& e : sec.entries) {
        if (e.key == "dim") continue;
        else if (e.key == "min") cfg.domain.lo = vec_value(e);
        else if (e.key == "max") cfg.domain.hi = vec_value(e);
        else if (e.key == "boundary") {
          const auto t = detail::tokens(e.value);
          if (static_cast<int>(t.size()) != D)
            detail::fail(doc, e.line, "boundary needs one kind per axis");
          for (int a = 0; a < D; ++a) {
            if (t[a] == "wall") cfg.boundary[a] = BoundaryKind::Wall;
            else if (t[a] == "periodic") {
              cfg.boundary[a] = BoundaryKind::Periodic;
              cfg.domain.periodic[a] = true;
            } else detail::fail(doc, e.line, "bad boundary kind '" + t[a] + "'");
          }
        } else if (e.key == "wall_layers") cfg.wall_layers = static_cast<int>(detail::to_number(doc, e, e.value));
        else if (e.key == "wall_material") wall_material_name = e.value;
        else if (e.key == "wall_mode") cfg.wall_mode = wall_mode_of(e, e.value);
        else if (e.key.rfind("wall_mode_", 0) == 0) {
          // wall_mode_<axis>_<min|max>
          const std::string rest = e.key.substr(10);
          const int a = axis_of(rest[0], e.line);
          const int side = rest.substr(2) == "max" ? 1 : 0;
          face_mode_override[a][side] = wall_mode_of(e, e.value);
        } else if (e.key == "wall_temperature") wall_T_default = detail::to_number(doc, e, e.value);
        else if (e.key.rfind("wall_temperature_", 0) == 0) {
          const std::string rest = e.key.substr(17);
          const int a = axis_of(rest[0], e.line);
          const int side = rest.substr(2) == "max" ? 1 : 0;
          face_T_override[a][side] = detail::to_number(doc, e, e.value);
        } else detail::fail(doc, e.line, "unknown domain key '" + e.key + "'");
      }
    } else if (sec.name == "numerics") {
      for (const auto& e : sec.entries) {
        if (e.key == "dx") cfg.dx = detail::to_number(doc, e, e.value);
        else if (e.key == "dt") cfg.dt = detail::to_number(doc, e, e.value);
        else if (e.key == "end_time") cfg.end_time = detail::to_number(doc, e, e.value);
        else detail::fail(doc, e.line, "unknown numerics key '" + e.key + "'");
      }
    } else if (sec.name == "initial") {
      for (const auto& e : sec.entries) {
        if (e.key == "temperature") cfg.T0 = detail::to_number(doc, e, e.value);
        else if (e.key == "temperature_profile") {
          const auto t = detail::tokens(e.value);
          if (t.size() != 4 || t[0] != "linear")
            detail::fail(doc, e.line, "expected: temperature_profile = linear <axis> <T_lo> <T_hi>");
          cfg.T0_axis = axis_of(t[1][0], e.line);
          cfg.T0_lo = detail::to_number(doc, e, t[2]);
          cfg.T0_hi = detail::to_number(doc, e, t[3]);
        } else detail::fail(doc, e.line, "unknown initial key '" + e.key + "'");
      }
    } else if (sec.name == "physics") {
      for (const auto& e : sec.entries) {
        auto& ph = cfg.physics;
        if (e.key == "gravity") cfg.gravity = vec_value(e);
        else if (e.key == "fluid_forces") ph.fluid_forces = detail::to_bool(doc, e);
        else if (e.key == "surface_tension") ph.surface_tension = detail::to_bool(doc, e);
        else if (e.key == "marangoni") ph.marangoni = detail::to_bool(doc, e);
        else if (e.key == "wetting") ph.wetting = detail::to_bool(doc, e);
        else if (e.key == "recoil") ph.recoil = detail::to_bool(doc, e);
        else if (e.key == "evaporation") ph.evaporation = detail::to_bool(doc, e);
        else if (e.key == "laser") ph.laser_heating = detail::to_bool(doc, e);
        else if (e.key == "conduction") ph.conduction = detail::to_bool(doc, e);
        else if (e.key == "transport_velocity") ph.transport_velocity = detail::to_bool(doc, e);
        else if (e.key == "flux_sides") {
          if (e.value == "auto") ph.flux_sides = FluxSides::Auto;
          else if (e.value == "one") ph.flux_sides = FluxSides::OneSided;
          else if (e.value == "two") ph.flux_sides = FluxSides::TwoSided;
          else detail::fail(doc, e.line, "flux_sides must be auto, one or two");
        } else if (e.key == "zeta0_lg") ph.zeta0_lg = detail::to_number(doc, e, e.value);
        else if (e.key == "zeta0_sl") ph.zeta0_sl = detail::to_number(doc, e, e.value);
        else if (e.key == "T_ramp_max") ph.T_ramp_max = detail::to_number(doc, e, e.value);
        else if (e.key == "eps_visc") ph.eps_visc = detail::to_number(doc, e, e.value);
        else if (e.key == "eps_curv_over_h") ph.eps_curv_over_h = detail::to_number(doc, e, e.value);
        else if (e.key == "d_max_over_h") ph.d_max_over_h = detail::to_number(doc, e, e.value);
        else detail::fail(doc, e.line, "unknown physics key '" + e.key + "'");
      }
    } else if (sec.name.rfind("region.", 0) == 0) {
      Region<D> r;
      r.name = sec.name.substr(7);
      r.shape = r.name == "background" ? Region<D>::Shape::Background : Region<D>::Shape::Box;
      bool have_material = false;
      for (const auto& e : sec.entries) {
        if (e.key == "shape") {
          if (e.value == "box") r.shape = Region<D>::Shape::Box;
          else if (e.value == "disc" || e.value == "sphere" || e.value == "ball")
            r.shape = Region<D>::Shape::Ball;
          else if (e.value == "ellipse" || e.value == "ellipsoid")
            r.shape = Region<D>::Shape::Ellipse;
          else if (e.value == "background") r.shape = Region<D>::Shape::Background;
          else detail::fail(doc, e.line, "bad region shape '" + e.value + "'");
        } else if (e.key == "min") r.lo = vec_value(e);
        else if (e.key == "max") r.hi = vec_value(e);
        else if (e.key == "center") r.center = vec_value(e);
        else if (e.key == "radius") r.radius = detail::to_number(doc, e, e.value);
        else if (e.key == "semi_axes") r.semi_axes = vec_value(e);
        else if (e.key == "phase") {
          if (e.value == "solid") r.phase = Phase::Solid;
          else if (e.value == "liquid") r.phase = Phase::Liquid;
          else if (e.value == "gas") r.phase = Phase::Gas;
          else detail::fail(doc, e.line, "bad phase '" + e.value + "'");
        } else if (e.key == "material") {
          r.material = material_id(e, e.value);
          have_material = true;
        } else detail::fail(doc, e.line, "unknown region key '" + e.key + "'");
      }
      if (!have_material) detail::fail(doc, sec.line, "region '" + r.name + "' needs a material");
      if (r.name == "background") cfg.regions.insert(cfg.regions.begin(), r);
      else cfg.regions.push_back(r);
    } else if (sec.name == "laser") {
      for (const auto& e : sec.entries) {
        if (e.key == "s0") cfg.laser.s0 = detail::to_number(doc, e, e.value);
        else if (e.key == "r_w") cfg.laser.r_w = detail::to_number(doc, e, e.value);
        else if (e.key == "direction") cfg.laser.direction = vec_value(e).normalized();
        else if (e.key == "position") cfg.laser.path = {{0.0, vec_value(e)}};
        else if (e.key == "waypoint") {
          const auto t = detail::tokens(e.value);
          if (static_cast<int>(t.size()) != D + 1)
            detail::fail(doc, e.line, "waypoint = <t> <x...> needs 1+" + std::to_string(D) + " values");
          typename LaserParams<D>::Waypoint w;
          w.t = detail::to_number(doc, e, t[0]);
          for (int a = 0; a < D; ++a) w.x[a] = detail::to_number(doc, e, t[a + 1]);
          cfg.laser.path.push_back(w);
        } else if (e.key == "on") {
          const auto t = detail::tokens(e.value);
          if (t.size() % 2 != 0) detail::fail(doc, e.line, "on = <t0> <t1> [...] needs pairs");
          for (std::size_t k = 0; k + 1 < t.size(); k += 2)
            cfg.laser.on_spans.emplace_back(detail::to_number(doc, e, t[k]),
                                            detail::to_number(doc, e, t[k + 1]));
        } else detail::fail(doc, e.line, "unknown laser key '" + e.key + "'");
      }
    } else if (sec.name == "output") {
      for (const auto& e : sec.entries) {
        if (e.key == "interval") cfg.output.interval = detail::to_number(doc, e, e.value);
        else if (e.key == "directory") cfg.output.directory = e.value;
        else if (e.key == "formats") {
          cfg.output.csv = cfg.output.vtk = false;
          for (const auto& t : detail::tokens(e.value)) {
            if (t == "csv") cfg.output.csv = true;
            else if (t == "vtk") cfg.output.vtk = true;
            else detail::fail(doc, e.line, "unknown output format '" + t + "'");
          }
        } else detail::fail(doc, e.line, "unknown output key '" + e.key + "'");
      }
    } else if (sec.name.rfind("ramp.", 0) == 0) {
      Ramp r;
      for (const auto& e : sec.entries) {
        if (e.key == "t0") r.t0 = detail::to_number(doc, e, e.value);
        else if (e.key == "t1") r.t1 = detail::to_number(doc, e, e.value);
        else if (e.key == "from") r.from = detail::to_number(doc, e, e.value);
        else if (e.key == "to") r.to = detail::to_number(doc, e, e.value);
        else detail::fail(doc, e.line, "unknown ramp key '" + e.key + "'");
      }
      cfg.ramps[sec.name.substr(5)] = r;
    } else if (sec.name.rfind("material.", 0) == 0) {
      // consumed by the first pass
    } else {
      detail::fail(doc, sec.line, "unknown section [" + sec.name + "]");
    }
  }

  if (!wall_material_name.empty()) {
    auto it = material_ids.find(wall_material_name);
    if (it == material_ids.end())
      throw ConfigError(doc.path + ": unknown wall material '" + wall_material_name + "'");
    cfg.wall_material = it->second;
  } else if (!cfg.regions.empty()) {
    cfg.wall_material = cfg.regions[0].material;
  }

  const double wall_T = std::isnan(wall_T_default) ? cfg.T0 : wall_T_default;
  for (int a = 0; a < D; ++a)
    for (int s = 0; s < 2; ++s) {
      cfg.face_temperature[a][s] = face_T_override[a][s].value_or(wall_T);
      cfg.face_mode[a][s] = face_mode_override[a][s].value_or(cfg.wall_mode);
    }

  cfg.validate();
  return cfg;
}

template <int D>
ScenarioConfig<D> load_scenario(const std::string& path) {
  const ScenarioDoc doc = parse_scenario_file(path);
  const int dim = scenario_dimension(doc);
  if (dim != D)
    throw ConfigError(path + ": scenario is " + std::to_string(dim) + "D, expected " +
                      std::to_string(D) + "D");
  return build_scenario<D>(doc);
}

// ---------------------------------------------------------------------------
// lattice initialization
// ---------------------------------------------------------------------------

/// Fills the domain with a cell-centered regular lattice at spacing dx and
/// adds wall_layers rings of boundary particles on every wall axis. Masses are
/// rho0 * dx^D and stay constant for the rest of the run.
template <int D>
ParticleSet<D> initialize_particles(const ScenarioConfig<D>& cfg) {
  const double dx = cfg.dx;
  std::array<int, D> n{};
  for (int a = 0; a < D; ++a) {
    const double cells = cfg.domain.length(a) / dx;
    n[a] = static_cast<int>(std::lround(cells));
    if (std::abs(cells - n[a]) > 1e-6 || n[a] < 1)
      throw ConfigError("domain length along axis " + std::to_string(a) +
                        " is not an integer multiple of dx");
  }

  std::array<int, D> lo{}, hi{};
  for (int a = 0; a < D; ++a) {
    const bool wall = cfg.boundary[a] == BoundaryKind::Wall;
    lo[a] = wall ? -cfg.wall_layers : 0;
    hi[a] = wall ? n[a] + cfg.wall_layers : n[a];
  }

  ParticleSet<D> ps;
  std::array<int, D> idx = lo;
  auto advance = [&]() {
    for (int a = D - 1; a >= 0; --a) {
      if (++idx[a] < hi[a]) return true;
      idx[a] = lo[a];
    }
    return false;
  };

  std::vector<const Region<D>*> shaped;
  for (std::size_t k = 1; k < cfg.regions.size(); ++k) shaped.push_back(&cfg.regions[k]);

  do {
    Vec<D> p;
    bool inside = true;
    for (int a = 0; a < D; ++a) {
      p[a] = cfg.domain.lo[a] + (idx[a] + 0.5) * dx;
      inside &= idx[a] >= 0 && idx[a] < n[a];
    }

    Phase phase = Phase::Gas;
    int material = 0;
    double temperature = 0.0;
    Vec<D> wall_normal = Vec<D>::Zero();

    if (inside) {
      const Region<D>* hit = nullptr;
      for (const Region<D>* r : shaped) {
        if (!r->contains(p)) continue;
        if (hit)
          throw ConfigError("regions '" + hit->name + "' and '" + r->name +
                            "' overlap at a lattice point");
        hit = r;
      }
      const Region<D>& r = hit ? *hit : cfg.regions[0];
      phase = r.phase;
      material = r.material;
      temperature = cfg.initial_temperature(p);
    }

    bool free_slip = false;
    if (!inside) {
      phase = Phase::WallBoundary;
      material = cfg.wall_material;
      double T_sum = 0.0;
      int faces = 0;
      free_slip = true;
      for (int a = 0; a < D; ++a) {
        const int side = idx[a] < 0 ? 0 : idx[a] >= n[a] ? 1 : -1;
        if (side < 0) continue;
        wall_normal[a] = side == 0 ? -1.0 : 1.0;
        T_sum += cfg.face_temperature[a][side];
        free_slip &= cfg.face_mode[a][side] == WallMode::FreeSlip;
        ++faces;
      }
      wall_normal.normalize();
      temperature = T_sum / faces;
    }

    const int i = ps.size();
    ps.resize(i + 1);
    ps.pos[i] = p;
    ps.phase[i] = phase;
    ps.material[i] = material;
    ps.mass[i] = cfg.materials[material].rho0 * std::pow(dx, D);
    ps.rho[i] = cfg.materials[material].rho0;
    ps.bnd_rho[i] = ps.rho[i];
    ps.bnd_volume[i] = std::pow(dx, D);
    ps.temperature[i] = temperature;
    ps.smoothing_h[i] = cfg.smoothing_length();
    ps.wall_normal[i] = wall_normal;
    ps.wall_temperature[i] = temperature;
    ps.wall_free_slip[i] = free_slip ? 1 : 0;
  } while (advance());

  return ps;
}

/// Solid <-> liquid transition on crossing the melt temperature. Freshly
/// solidified particles freeze in place; gas and wall particles never change.
template <int D>
void phase_update(ParticleSet<D>& ps, std::span<const MaterialParams> mats) {
  const int n = ps.size();
  for (int i = 0; i < n; ++i) {
    const double Tm = mats[ps.material[i]].T_melt;
    if (ps.phase[i] == Phase::Solid && ps.temperature[i] > Tm) {
      ps.phase[i] = Phase::Liquid;
    } else if (ps.phase[i] == Phase::Liquid && ps.temperature[i] < Tm) {
      ps.phase[i] = Phase::Solid;
      ps.vel[i].setZero();
      ps.vel_adv[i].setZero();
      ps.acc[i].setZero();
      ps.acc_bg[i].setZero();
    }
  }
}

}  // namespace meltsph

#endif
