/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_INTERFACE_FORCES_HPP
#define MELTSPH_INTERFACE_FORCES_HPP

#include <cmath>
#include <span>
#include <type_traits>
#include <vector>

#include "meltsph/interface_fields.hpp"
#include "meltsph/materials.hpp"
#include "meltsph/particles.hpp"

namespace meltsph {

/// Anisimov recoil pressure p_v(T) = C_P exp[-C_T (1/T - 1/T_v)].
inline double recoil_pressure(double T, const MaterialParams& mat) {
  if (!(T > 0.0)) throw std::domain_error("recoil_pressure: temperature must be positive");
  return mat.C_P * std::exp(-mat.C_T * (1.0 / T - 1.0 / mat.T_vapor));
}

namespace detail {

template <int D>
inline bool receives_lg_flux(const ParticleSet<D>& ps, int i, bool two_sided) {
  if (ps.phase[i] == Phase::Liquid) return true;
  return two_sided && ps.phase[i] == Phase::Gas;
}

}  // namespace detail

/// Curvature-proportional surface tension normal force
///   F_i = -V_i alpha_i kappa_i n_i delta_i
/// on the liquid side (both sides when two_sided is set).
template <int D>
void accumulate_surface_tension_normal(const ParticleSet<D>& ps,
                                       std::span<const MaterialParams> mats,
                                       const InterfaceField<D>& lg, bool two_sided, double ramp,
                                       std::vector<Vec<D>>& force) {
  if (ramp == 0.0) return;
  parallel_for(ps.size(), [&](int i) {
    if (!detail::receives_lg_flux(ps, i, two_sided) || !lg.valid[i]) return;
    const double alpha =
        ramp * surface_tension_coefficient(ps.temperature[i], mats[ps.material[i]]);
    force[i] += -(ps.mass[i] / ps.rho[i]) * alpha * lg.curvature[i] * lg.delta[i] * lg.normal[i];
  });
}

/// Tangential Marangoni force
///   F_i = V_i (I - n (x) n) (grad T)_i (dalpha/dT)_i delta_i,
/// with the temperature gradient supplied by the anti-symmetric SPH operator.
/// The slope dalpha/dT is negative for a surface tension falling with
/// temperature, so the force points from hot toward cold.
template <int D>
void accumulate_marangoni(const ParticleSet<D>& ps, std::span<const MaterialParams> mats,
                          const InterfaceField<D>& lg,
                          std::span<const std::type_identity_t<Vec<D>>> grad_T,
                          bool two_sided, double ramp, std::vector<Vec<D>>& force) {
  if (ramp == 0.0) return;
  parallel_for(ps.size(), [&](int i) {
    if (!detail::receives_lg_flux(ps, i, two_sided) || !lg.valid[i]) return;
    const double slope = surface_tension_slope(ps.temperature[i], mats[ps.material[i]]);
    if (slope == 0.0) return;
    const Vec<D>& n = lg.normal[i];
    const Vec<D> tangential = grad_T[i] - n.dot(grad_T[i]) * n;
    force[i] += ramp * (ps.mass[i] / ps.rho[i]) * slope * lg.delta[i] * tangential;
  });
}

/// Triple-line wetting force
///   F_i = V_i alpha_i (cos theta - cos theta0) t_sf_i delta_lg_i delta_sf_i
/// with cos theta = n_lg . n_sf.
template <int D>
void accumulate_wetting(const ParticleSet<D>& ps, std::span<const MaterialParams> mats,
                        const InterfaceField<D>& lg, const InterfaceField<D>& sf,
                        const WettingState<D>& wet, bool two_sided, double ramp,
                        std::vector<Vec<D>>& force) {
  if (ramp == 0.0) return;
  parallel_for(ps.size(), [&](int i) {
    if (!detail::receives_lg_flux(ps, i, two_sided)) return;
    if (!lg.valid[i] || !sf.valid[i] || !wet.t_valid[i]) return;
    const MaterialParams& mat = mats[ps.material[i]];
    const double alpha = ramp * surface_tension_coefficient(ps.temperature[i], mat);
    const double cos_theta = lg.normal[i].dot(sf.normal[i]);
    const double cos_theta0 = std::cos(mat.theta0_deg * pi / 180.0);
    force[i] += (ps.mass[i] / ps.rho[i]) * alpha * (cos_theta - cos_theta0) * lg.delta[i] *
                sf.delta[i] * wet.t_sf[i];
  });
}

/// Evaporation-induced recoil force F_i = -V_i p_v(T_i) n_i delta_i on the
/// liquid side of the interface.
template <int D>
void accumulate_recoil(const ParticleSet<D>& ps, std::span<const MaterialParams> mats,
                       const InterfaceField<D>& lg, double ramp, std::vector<Vec<D>>& force) {
  if (ramp == 0.0) return;
  parallel_for(ps.size(), [&](int i) {
    if (ps.phase[i] != Phase::Liquid || !lg.valid[i]) return;
    const double pv = recoil_pressure(ps.temperature[i], mats[ps.material[i]]);
    force[i] += -ramp * (ps.mass[i] / ps.rho[i]) * pv * lg.delta[i] * lg.normal[i];
  });
}

}  // namespace meltsph

#endif
