/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_PARTICLES_HPP
#define MELTSPH_PARTICLES_HPP

#include <cstdint>
#include <vector>

#include "meltsph/common.hpp"

namespace meltsph {

enum class Phase : std::uint8_t { Solid = 0, Liquid = 1, Gas = 2, WallBoundary = 3 };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Solid: return "solid";
    case Phase::Liquid: return "liquid";
    case Phase::Gas: return "gas";
    case Phase::WallBoundary: return "wall";
  }
  return "?";
}

/// Structure-of-arrays particle state. Solid and wall particles never move
/// (vel, vel_adv and acc stay zero); wall particles additionally never change
/// phase or temperature.
template <int D>
struct ParticleSet {
  std::vector<Vec<D>> pos;
  std::vector<Vec<D>> vel;       ///< momentum velocity u
  std::vector<Vec<D>> vel_adv;   ///< transport (advection) velocity
  std::vector<Vec<D>> acc;
  std::vector<Vec<D>> acc_bg;    ///< background-pressure acceleration of the transport velocity
  std::vector<double> rho;
  std::vector<double> pressure;
  std::vector<double> temperature;
  std::vector<double> dTdt;
  std::vector<double> mass;
  std::vector<double> smoothing_h;
  std::vector<Phase> phase;
  std::vector<int> material;

  // states extrapolated onto boundary-like particles (walls and rigid solid)
  // for the mechanical interaction with the fluid
  std::vector<double> bnd_pressure;
  std::vector<double> bnd_rho;
  std::vector<double> bnd_volume;  ///< effective volume in the pair formulas
  std::vector<Vec<D>> bnd_vel;

  // wall metadata (zero / unset for non-wall particles)
  std::vector<Vec<D>> wall_normal;            ///< outward normal of the wall face
  std::vector<double> wall_temperature;       ///< Dirichlet temperature
  std::vector<std::uint8_t> wall_free_slip;   ///< per-wall velocity mode

  int size() const { return static_cast<int>(pos.size()); }

  void resize(int n) {
    pos.resize(n, Vec<D>::Zero());
    vel.resize(n, Vec<D>::Zero());
    vel_adv.resize(n, Vec<D>::Zero());
    acc.resize(n, Vec<D>::Zero());
    acc_bg.resize(n, Vec<D>::Zero());
    rho.resize(n, 0.0);
    pressure.resize(n, 0.0);
    temperature.resize(n, 0.0);
    dTdt.resize(n, 0.0);
    mass.resize(n, 0.0);
    smoothing_h.resize(n, 0.0);
    phase.resize(n, Phase::Gas);
    material.resize(n, 0);
    bnd_pressure.resize(n, 0.0);
    bnd_rho.resize(n, 0.0);
    bnd_volume.resize(n, 0.0);
    bnd_vel.resize(n, Vec<D>::Zero());
    wall_normal.resize(n, Vec<D>::Zero());
    wall_temperature.resize(n, 0.0);
    wall_free_slip.resize(n, 0);
  }

  bool is_fluid(int i) const { return phase[i] == Phase::Liquid || phase[i] == Phase::Gas; }
  bool is_boundary_like(int i) const {
    return phase[i] == Phase::Solid || phase[i] == Phase::WallBoundary;
  }

  double volume(int i) const { return mass[i] / rho[i]; }
};

}  // namespace meltsph

#endif
