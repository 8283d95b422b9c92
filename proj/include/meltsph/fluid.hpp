/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_FLUID_HPP
#define MELTSPH_FLUID_HPP

#include <atomic>
#include <span>
#include <vector>

#include "meltsph/materials.hpp"
#include "meltsph/pairs.hpp"
#include "meltsph/particles.hpp"

namespace meltsph {

inline double eos_pressure(double rho, const MaterialParams& mat) {
  return mat.p0 * (rho / mat.rho0 - 1.0);
}

inline double eos_density(double p, const MaterialParams& mat) {
  return mat.rho0 * (p / mat.p0 + 1.0);
}

/// rho_i = m_i sum_j W_ij with the self contribution included; the sum runs
/// over all particle types. Masses are never touched, so total mass is
/// conserved exactly.
template <int D>
void density_summation(ParticleSet<D>& ps, const PairCache<D>& pc) {
  const double w0 = kernel_value(0.0, pc.kernel);
  parallel_for(ps.size(), [&](int i) {
    if (!ps.is_fluid(i)) return;
    double sum = w0;
    for (const auto& e : pc.row(i)) sum += e.w;
    ps.rho[i] = ps.mass[i] * sum;
  });
}

template <int D>
void apply_eos(ParticleSet<D>& ps, std::span<const MaterialParams> mats) {
  parallel_for(ps.size(), [&](int i) {
    if (ps.is_fluid(i)) ps.pressure[i] = eos_pressure(ps.rho[i], mats[ps.material[i]]);
  });
}

namespace detail {

// effective neighbor state: walls and rigid solid particles interact
// mechanically through their extrapolated states
template <int D>
struct PairState {
  double p, rho, vol, eta;
  Vec<D> vel;
};

template <int D>
inline PairState<D> mechanical_state(const ParticleSet<D>& ps, std::span<const MaterialParams> mats,
                                     int j, double eta_i) {
  PairState<D> s;
  if (ps.is_boundary_like(j)) {
    s.p = ps.bnd_pressure[j];
    s.rho = ps.bnd_rho[j];
    s.vol = ps.bnd_volume[j];
    s.vel = ps.bnd_vel[j];
    s.eta = eta_i;  // wall takes the fluid's viscosity so the harmonic mean is eta_i
  } else {
    s.p = ps.pressure[j];
    s.rho = ps.rho[j];
    s.vol = ps.mass[j] / s.rho;
    s.vel = ps.vel[j];
    s.eta = mats[ps.material[j]].eta;
  }
  return s;
}

}  // namespace detail

/// Pairwise pressure and viscous forces,
///   F_i = sum_j (V_i^2 + V_j^2) [ -pbar_ij dW/dr e_ij + etabar_ij u_ij / r_ij dW/dr ],
/// with the density-weighted pressure mean and the harmonic viscosity mean.
/// Fluid-wall and fluid-solid pairs use the extrapolated boundary states.
template <int D>
void accumulate_pressure_viscous_forces(const ParticleSet<D>& ps,
                                        std::span<const MaterialParams> mats,
                                        const PairCache<D>& pc, std::vector<Vec<D>>& force,
                                        std::atomic<long>* skipped_pairs = nullptr) {
  parallel_for(ps.size(), [&](int i) {
    if (!ps.is_fluid(i)) return;
    const double eta_i = mats[ps.material[i]].eta;
    const double p_i = ps.pressure[i];
    const double rho_i = ps.rho[i];
    const double vol_i = ps.mass[i] / rho_i;
    const double vi2 = vol_i * vol_i;
    Vec<D> f = Vec<D>::Zero();
    for (const auto& e : pc.row(i)) {
      if (e.r == 0.0) {
        if (skipped_pairs) skipped_pairs->fetch_add(1, std::memory_order_relaxed);
        continue;
      }
      const auto s = detail::mechanical_state(ps, mats, e.j, eta_i);
      const double vv = vi2 + s.vol * s.vol;
      const double pbar = (s.rho * p_i + rho_i * s.p) / (rho_i + s.rho);
      const double etabar = (eta_i + s.eta) > 0.0 ? 2.0 * eta_i * s.eta / (eta_i + s.eta) : 0.0;
      f += vv * (-pbar * e.dw) * e.e();
      f += vv * etabar * (e.dw / e.r) * (ps.vel[i] - s.vel);
    }
    force[i] += f;
  });
}

/// Transport-velocity contributions: (a) the constant-background-pressure
/// acceleration that drives the advection velocity and (b) the momentum
/// correction built from A = rho u (x) (u_adv - u), averaged per pair.
template <int D>
void accumulate_transport_velocity_terms(const ParticleSet<D>& ps,
                                         std::span<const MaterialParams> mats,
                                         const PairCache<D>& pc, std::vector<Vec<D>>& force,
                                         std::vector<Vec<D>>& accel_bg) {
  parallel_for(ps.size(), [&](int i) {
    if (!ps.is_fluid(i)) return;
    const double p_b = mats[ps.material[i]].p_b;
    const double vol_i = ps.mass[i] / ps.rho[i];
    const double vi2 = vol_i * vol_i;
    const Mat<D> A_i = ps.rho[i] * ps.vel[i] * (ps.vel_adv[i] - ps.vel[i]).transpose();
    Vec<D> f_bg = Vec<D>::Zero();
    Vec<D> f_corr = Vec<D>::Zero();
    for (const auto& e : pc.row(i)) {
      if (e.r == 0.0) continue;
      const int j = e.j;
      const double vol_j =
          ps.is_boundary_like(j) ? ps.bnd_volume[j] : ps.mass[j] / ps.rho[j];
      const double vv = vi2 + vol_j * vol_j;
      const Vec<D> grad = e.dw * e.e();
      f_bg -= vv * p_b * grad;
      if (!ps.is_boundary_like(j)) {
        const Mat<D> A_j = ps.rho[j] * ps.vel[j] * (ps.vel_adv[j] - ps.vel[j]).transpose();
        f_corr += vv * (0.5 * (A_i + A_j)) * grad;
      } else {
        f_corr += vv * (0.5 * A_i) * grad;
      }
    }
    force[i] += f_corr;
    accel_bg[i] = f_bg / ps.mass[i];
  });
}

/// Linear ramp of the solid-liquid interface viscosity: full below the melt
/// temperature, zero above T_max.
inline double solid_liquid_viscosity_ramp(double T, double T_melt, double T_max) {
  if (!(T_max > T_melt)) return T > T_melt ? 0.0 : 1.0;
  if (T < T_melt) return 1.0;
  if (T > T_max) return 0.0;
  return (T - T_max) / (T_melt - T_max);
}

/// Per-particle viscosity factor zeta_i = zeta0_lg delta_lg_i + zeta0_sl
/// f(T_i), nonzero on liquid particles only. The lg part is gated to the
/// numerically nonzero part of the delta field.
template <int D>
std::vector<double> interface_viscosity_factor(const ParticleSet<D>& ps,
                                               std::span<const double> delta_lg,
                                               std::span<const MaterialParams> mats,
                                               double zeta0_lg, double zeta0_sl,
                                               double T_ramp_max) {
  std::vector<double> zeta(ps.size(), 0.0);
  for (int i = 0; i < ps.size(); ++i) {
    if (ps.phase[i] != Phase::Liquid) continue;
    double z = 0.0;
    if (zeta0_lg != 0.0 && delta_lg[i] > 1e-6 / ps.smoothing_h[i]) z += zeta0_lg * delta_lg[i];
    if (zeta0_sl != 0.0)
      z += zeta0_sl * solid_liquid_viscosity_ramp(ps.temperature[i],
                                                  mats[ps.material[i]].T_melt, T_ramp_max);
    zeta[i] = z;
  }
  return zeta;
}

/// Monaghan-style dissipative interface force,
///   F_i = m_i sum_j m_j zetabar_ij hbar cbar (u_ij . r_ij) /
///         (rhobar (r^2 + eps hbar^2)) dW/dr e_ij,
/// acting between fluid particles and across fluid-solid pairs. The pair
/// factor is the arithmetic mean of the per-particle zeta so the force is
/// exactly antisymmetric. Equivalent kinematic viscosity:
/// nu = 0.5 zeta hbar cbar / (d + 2).
template <int D>
void accumulate_interface_dissipation(const ParticleSet<D>& ps,
                                      std::span<const MaterialParams> mats,
                                      const PairCache<D>& pc, std::span<const double> zeta,
                                      double eps_visc, std::vector<Vec<D>>& force) {
  parallel_for(ps.size(), [&](int i) {
    if (!ps.is_fluid(i)) return;
    const double c_i = mats[ps.material[i]].sound_speed();
    Vec<D> f = Vec<D>::Zero();
    for (const auto& e : pc.row(i)) {
      const int j = e.j;
      if (ps.phase[j] == Phase::WallBoundary || e.r == 0.0) continue;
      const double zbar = 0.5 * (zeta[i] + zeta[j]);
      if (zbar == 0.0) continue;
      const double hbar = 0.5 * (ps.smoothing_h[i] + ps.smoothing_h[j]);
      const double cbar = 0.5 * (c_i + mats[ps.material[j]].sound_speed());
      const double rhobar = 0.5 * (ps.rho[i] + ps.rho[j]);
      const Vec<D> u_ij = ps.vel[i] - ps.vel[j];
      const double mu = u_ij.dot(e.rij) / (e.r * e.r + eps_visc * hbar * hbar);
      f += ps.mass[i] * ps.mass[j] * zbar * hbar * cbar * mu / rhobar * e.dw * e.e();
    }
    force[i] += f;
  });
}

}  // namespace meltsph

#endif
