/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_BOUNDARY_HPP
#define MELTSPH_BOUNDARY_HPP

#include <cmath>
#include <span>
#include <type_traits>
#include <vector>

#include "meltsph/fluid.hpp"
#include "meltsph/materials.hpp"
#include "meltsph/pairs.hpp"
#include "meltsph/particles.hpp"
#include "meltsph/scenario.hpp"

namespace meltsph {

/// Generalized wall boundary treatment: wall and rigid-solid particles carry
/// pressures, densities and velocities extrapolated from the surrounding
/// fluid via a local force balance,
///   p_w = (sum_f p_f W + (g - a_w) . sum_f rho_f r_wf W) / sum_f W,
/// density by inverting the equation of state of the dominant fluid neighbor,
/// velocity per wall mode (no-slip mirrors the full fluid velocity around the
/// prescribed wall velocity, free-slip keeps only the tangential part so the
/// pairwise shear vanishes). Solid particles always behave no-slip.
template <int D>
void extrapolate_boundary_states(ParticleSet<D>& ps, std::span<const MaterialParams> mats,
                                 const PairCache<D>& pc,
                                 const std::type_identity_t<Vec<D>>& gravity) {
  parallel_for(ps.size(), [&](int i) {
    if (!ps.is_boundary_like(i)) return;

    double w_sum = 0.0;
    double p_sum = 0.0;
    Vec<D> rho_r_sum = Vec<D>::Zero();
    Vec<D> u_sum = Vec<D>::Zero();
    double w_best = 0.0;
    int dominant_mat = ps.material[i];
    std::array<double, 8> mat_weight{};  // enough for the handful of scenario materials

    for (const auto& e : pc.row(i)) {
      if (!ps.is_fluid(e.j)) continue;
      w_sum += e.w;
      p_sum += ps.pressure[e.j] * e.w;
      rho_r_sum += ps.rho[e.j] * e.rij * e.w;  // r_wf = r_w - r_f
      u_sum += ps.vel[e.j] * e.w;
      const int m = ps.material[e.j];
      if (m >= 0 && m < static_cast<int>(mat_weight.size())) {
        mat_weight[m] += e.w;
        if (mat_weight[m] > w_best) {
          w_best = mat_weight[m];
          dominant_mat = m;
        }
      }
    }

    // geometric cell volume of the boundary particle, independent of which
    // fluid it currently faces
    const double vol_geo = ps.mass[i] / mats[ps.material[i]].rho0;

    if (w_sum <= 0.0) {  // no fluid support: rest state
      ps.bnd_pressure[i] = 0.0;
      ps.bnd_rho[i] = mats[ps.material[i]].rho0;
      ps.bnd_volume[i] = vol_geo;
      ps.bnd_vel[i].setZero();
      return;
    }

    const double p_w = (p_sum + gravity.dot(rho_r_sum)) / w_sum;
    const MaterialParams& fluid_mat = mats[dominant_mat];
    ps.bnd_pressure[i] = p_w;
    ps.bnd_rho[i] = std::max(eos_density(p_w, fluid_mat), 0.1 * fluid_mat.rho0);
    // the effective volume stays the cell volume, compressed consistently
    // with the dominant fluid's state
    ps.bnd_volume[i] = vol_geo * fluid_mat.rho0 / ps.bnd_rho[i];

    const Vec<D> u_f = u_sum / w_sum;
    const bool free_slip = ps.phase[i] == Phase::WallBoundary && ps.wall_free_slip[i];
    if (free_slip) {
      const Vec<D>& n = ps.wall_normal[i];
      ps.bnd_vel[i] = u_f - u_f.dot(n) * n;  // mirror only the tangential part
    } else {
      ps.bnd_vel[i] = -u_f;  // no-slip around a resting wall: u_w = 2*0 - u_f
    }
  });
}

/// Wraps fluid positions into the primary domain on periodic axes
/// (half-open convention: a particle exactly on the upper boundary maps to
/// the lower one).
template <int D>
void apply_periodic_bc(ParticleSet<D>& ps, const DomainBox<D>& box) {
  parallel_for(ps.size(), [&](int i) {
    if (!ps.is_fluid(i)) return;
    for (int a = 0; a < D; ++a) {
      if (!box.periodic[a]) continue;
      const double len = box.length(a);
      double x = ps.pos[i][a];
      x -= len * std::floor((x - box.lo[a]) / len);
      if (x >= box.hi[a]) x = box.lo[a];  // guard against roundoff at the seam
      ps.pos[i][a] = x;
    }
  });
}

}  // namespace meltsph

#endif
