/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_THERMAL_HPP
#define MELTSPH_THERMAL_HPP

#include <cmath>
#include <span>
#include <vector>

#include "meltsph/interface_fields.hpp"
#include "meltsph/interface_forces.hpp"
#include "meltsph/materials.hpp"
#include "meltsph/pairs.hpp"
#include "meltsph/particles.hpp"

namespace meltsph {

/// Specific enthalpy h(T) = c_p (T - T_h0) for constant heat capacity.
inline double specific_enthalpy(double T, const MaterialParams& mat) {
  if (!(T > 0.0)) throw std::domain_error("specific_enthalpy: temperature must be positive");
  return mat.c_p * (T - mat.T_h0);
}

/// Evaporative enthalpy flux per unit area,
///   s_v = -mdot [h_v + h(T)],  mdot = 0.82 c_s p_v(T) sqrt(C_M / T).
inline double evaporation_heat_flux(double T, const MaterialParams& mat) {
  const double mdot = 0.82 * mat.c_s * recoil_pressure(T, mat) * std::sqrt(mat.C_M / T);
  return -mdot * (mat.h_v + specific_enthalpy(T, mat));
}

/// Conductive term of the energy equation (Cleary-Monaghan form, robust
/// across conductivity jumps):
///   (div q)_i = sum_j m_j 4 k_i k_j (T_j - T_i) / (rho_j (k_i + k_j) r_ij) dW/dr.
/// Wall particles participate with their Dirichlet temperature. The pairwise
/// antisymmetry of m_i m_j (...) conserves the total thermal energy of a
/// closed system exactly.
template <int D>
void conduction_divergence(const ParticleSet<D>& ps, std::span<const MaterialParams> mats,
                           const PairCache<D>& pc, std::vector<double>& div_q) {
  div_q.assign(ps.size(), 0.0);
  parallel_for(ps.size(), [&](int i) {
    if (ps.phase[i] == Phase::WallBoundary) return;
    const double k_i = mats[ps.material[i]].k;
    double sum = 0.0;
    for (const auto& e : pc.row(i)) {
      if (e.r == 0.0) continue;
      const double k_j = mats[ps.material[e.j]].k;
      if (k_i + k_j == 0.0) continue;
      const double kk = 4.0 * k_i * k_j / (k_i + k_j);
      sum += ps.mass[e.j] * kk * (ps.temperature[e.j] - ps.temperature[i]) /
             (ps.rho[e.j] * e.r) * e.dw;
    }
    div_q[i] = sum;
  });
}

/// Anti-symmetric SPH temperature gradient for the Marangoni force, evaluated
/// over all neighboring particles (walls contribute their Dirichlet value).
template <int D>
void temperature_gradient_asymmetric(const ParticleSet<D>& ps, const PairCache<D>& pc,
                                     std::vector<Vec<D>>& grad_T) {
  grad_T.assign(ps.size(), Vec<D>::Zero());
  parallel_for(ps.size(), [&](int i) {
    if (!ps.is_fluid(i)) return;
    Vec<D> g = Vec<D>::Zero();
    for (const auto& e : pc.row(i)) {
      if (e.r == 0.0) continue;
      const double vol_j = ps.mass[e.j] / ps.rho[e.j];
      g += vol_j * (ps.temperature[e.j] - ps.temperature[i]) * e.dw * e.e();
    }
    grad_T[i] = g;
  });
}

/// Volumetric laser heating
///   s_i = chi_l <-n_i . e_l> s0 exp[-2 (d_perp / r_w)^2] delta_i
/// applied with the liquid-gas fields on liquid particles and the solid-gas
/// fields on solid particles. A particle near the triple line carrying both
/// deltas receives both contributions.
template <int D>
void laser_source(const ParticleSet<D>& ps, std::span<const MaterialParams> mats,
                  const InterfaceField<D>& lg, const InterfaceField<D>& sg,
                  const LaserParams<D>& laser, double t, std::vector<double>& heating) {
  heating.assign(ps.size(), 0.0);
  if (!laser.enabled() || !laser.is_on(t)) return;
  parallel_for(ps.size(), [&](int i) {
    const Phase phase = ps.phase[i];
    if (phase != Phase::Liquid && phase != Phase::Solid) return;
    const double chi = mats[ps.material[i]].chi_l;
    if (chi == 0.0) return;
    // liquid surfaces carry the lg delta, solid surfaces the sg delta; the
    // two particle populations are disjoint so no flux is double counted
    const InterfaceField<D>& field = phase == Phase::Liquid ? lg : sg;
    if (!field.valid[i]) return;
    const double facing = std::max(0.0, -field.normal[i].dot(laser.direction));
    if (facing == 0.0) return;
    heating[i] = chi * facing * laser.irradiance(ps.pos[i], t) * field.delta[i];
  });
}

/// Evaporative cooling s_i = s_v(T_i) delta_lg_i on liquid particles.
template <int D>
void evaporation_loss(const ParticleSet<D>& ps, std::span<const MaterialParams> mats,
                      const InterfaceField<D>& lg, std::vector<double>& cooling) {
  cooling.assign(ps.size(), 0.0);
  parallel_for(ps.size(), [&](int i) {
    if (ps.phase[i] != Phase::Liquid || !lg.valid[i]) return;
    cooling[i] = evaporation_heat_flux(ps.temperature[i], mats[ps.material[i]]) * lg.delta[i];
  });
}

/// dT_i/dt = [-(div q)_i + s_evap_i + s_laser_i] / (c_p_i rho_i), evaluated
/// for fluid and solid particles; wall temperatures are Dirichlet data.
template <int D>
void energy_rate(const ParticleSet<D>& ps, std::span<const MaterialParams> mats,
                 std::span<const double> div_q, std::span<const double> evaporation,
                 std::span<const double> laser_heating, std::vector<double>& dTdt) {
  dTdt.assign(ps.size(), 0.0);
  parallel_for(ps.size(), [&](int i) {
    if (ps.phase[i] == Phase::WallBoundary) return;
    const MaterialParams& mat = mats[ps.material[i]];
    dTdt[i] = (-div_q[i] + evaporation[i] + laser_heating[i]) / (mat.c_p * ps.rho[i]);
  });
}

}  // namespace meltsph

#endif
