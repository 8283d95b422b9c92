/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_INTERFACE_FIELDS_HPP
#define MELTSPH_INTERFACE_FIELDS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "meltsph/materials.hpp"
#include "meltsph/pairs.hpp"
#include "meltsph/particles.hpp"

namespace meltsph {

/// Phase pairings used for interface detection. Every pairing distinguishes
/// exactly two sides:
///   LiquidGas  — liquid vs gas, solid and wall particles ignored entirely
///   SolidGas   — solid vs gas, liquid ignored (walls ignored)
///   SolidFluid — solid+wall vs liquid+gas, everything participates
enum class Pairing { LiquidGas, SolidGas, SolidFluid };

namespace detail {

// side of a particle under a pairing: -1 not participating, else 0/1
inline int pairing_side(Phase p, Pairing pairing) {
  switch (pairing) {
    case Pairing::LiquidGas:
      if (p == Phase::Liquid) return 0;
      if (p == Phase::Gas) return 1;
      return -1;
    case Pairing::SolidGas:
      if (p == Phase::Solid) return 0;
      if (p == Phase::Gas) return 1;
      return -1;
    case Pairing::SolidFluid:
      if (p == Phase::Solid || p == Phase::WallBoundary) return 0;
      return 1;
  }
  return -1;
}

}  // namespace detail

/// Color-field derived quantities for one pairing. Normals point outward from
/// the particle's own side; `valid` marks ||grad c|| above the curvature
/// tolerance (the indicator N of the curvature sum).
template <int D>
struct InterfaceField {
  std::vector<Vec<D>> grad_c;
  std::vector<Vec<D>> normal;
  std::vector<double> delta;
  std::vector<std::uint8_t> valid;
  std::vector<double> curvature;  // filled for the liquid-gas pairing only

  void resize(int n) {
    grad_c.assign(n, Vec<D>::Zero());
    normal.assign(n, Vec<D>::Zero());
    delta.assign(n, 0.0);
    valid.assign(n, 0);
    curvature.assign(n, 0.0);
  }
};

/// Density-weighted color field gradient,
///   grad c_i = (1/V_i) sum_j (V_i^2 + V_j^2) cbar_ij dW/dr e_ij,
///   cbar_ij = rho_i / (rho_i + rho_j) for cross-side pairs, 0 otherwise,
/// followed by n = grad c / ||grad c|| and delta = ||grad c||.
template <int D>
void compute_color_field(const ParticleSet<D>& ps, const PairCache<D>& pc, Pairing pairing,
                         double eps_curv, InterfaceField<D>& out) {
  out.resize(ps.size());
  parallel_for(ps.size(), [&](int i) {
    const int side_i = detail::pairing_side(ps.phase[i], pairing);
    if (side_i < 0) return;
    const double rho_i = ps.rho[i];
    const double vol_i = ps.mass[i] / rho_i;
    const double vi2 = vol_i * vol_i;
    Vec<D> g = Vec<D>::Zero();
    for (const auto& e : pc.row(i)) {
      const int side_j = detail::pairing_side(ps.phase[e.j], pairing);
      if (side_j < 0 || side_j == side_i || e.r == 0.0) continue;
      const double rho_j = ps.rho[e.j];
      const double vol_j = ps.mass[e.j] / rho_j;
      const double cbar = rho_i / (rho_i + rho_j);
      g += (vi2 + vol_j * vol_j) * cbar * e.dw * e.e();
    }
    g /= vol_i;
    const double norm = g.norm();
    out.grad_c[i] = g;
    out.delta[i] = norm;
    if (norm > eps_curv) {
      out.normal[i] = g / norm;
      out.valid[i] = 1;
    }
  });
}

/// One fused sweep filling all three pairings (used by the solver loop; the
/// single-pairing entry point above is the unit-testable building block).
template <int D>
void compute_all_interface_fields(const ParticleSet<D>& ps, const PairCache<D>& pc,
                                  double eps_curv, InterfaceField<D>& lg, InterfaceField<D>& sg,
                                  InterfaceField<D>& sf) {
  const int n = ps.size();
  lg.resize(n);
  sg.resize(n);
  sf.resize(n);
  parallel_for(n, [&](int i) {
    const Phase phase_i = ps.phase[i];
    const int lg_i = detail::pairing_side(phase_i, Pairing::LiquidGas);
    const int sg_i = detail::pairing_side(phase_i, Pairing::SolidGas);
    const int sf_i = detail::pairing_side(phase_i, Pairing::SolidFluid);
    const double rho_i = ps.rho[i];
    const double vol_i = ps.mass[i] / rho_i;
    const double vi2 = vol_i * vol_i;
    Vec<D> g_lg = Vec<D>::Zero(), g_sg = Vec<D>::Zero(), g_sf = Vec<D>::Zero();
    for (const auto& e : pc.row(i)) {
      if (e.r == 0.0) continue;
      const Phase phase_j = ps.phase[e.j];
      const double rho_j = ps.rho[e.j];
      const double vol_j = ps.mass[e.j] / rho_j;
      const double wgt = (vi2 + vol_j * vol_j) * rho_i / (rho_i + rho_j) * e.dw;
      const Vec<D> contrib = wgt * e.e();
      const int lg_j = detail::pairing_side(phase_j, Pairing::LiquidGas);
      if (lg_i >= 0 && lg_j >= 0 && lg_j != lg_i) g_lg += contrib;
      const int sg_j = detail::pairing_side(phase_j, Pairing::SolidGas);
      if (sg_i >= 0 && sg_j >= 0 && sg_j != sg_i) g_sg += contrib;
      const int sf_j = detail::pairing_side(phase_j, Pairing::SolidFluid);
      if (sf_j != sf_i) g_sf += contrib;
    }
    auto store = [&](InterfaceField<D>& f, const Vec<D>& g_scaled) {
      const Vec<D> g = g_scaled / vol_i;
      const double norm = g.norm();
      f.grad_c[i] = g;
      f.delta[i] = norm;
      if (norm > eps_curv) {
        f.normal[i] = g / norm;
        f.valid[i] = 1;
      }
    };
    if (lg_i >= 0) store(lg, g_lg);
    if (sg_i >= 0) store(sg, g_sg);
    store(sf, g_sf);
  });
}

/// Interface curvature kappa = div n restricted to particles with a valid
/// normal:
///   kappa_i = -(sum_j N_i N_j V_j (n_i - n_j) . dW/dr e_ij) /
///             (sum_j N_i N_j V_j W_ij)
/// with the self term included in the denominator. kappa = 0 wherever the
/// indicator or the denominator vanishes. Normals are stored outward from
/// each particle's own side, so a neighbor across the interface enters with
/// its normal re-aligned to particle i's orientation; each side then measures
/// the divergence of one consistently oriented normal field (and the two
/// sides carry opposite kappa signs for the same physical interface).
template <int D>
void compute_curvature(const ParticleSet<D>& ps, const PairCache<D>& pc, InterfaceField<D>& field,
                       Pairing pairing = Pairing::LiquidGas) {
  const double w0 = kernel_value(0.0, pc.kernel);
  parallel_for(ps.size(), [&](int i) {
    field.curvature[i] = 0.0;
    if (!field.valid[i]) return;
    const int side_i = detail::pairing_side(ps.phase[i], pairing);
    double num = 0.0;
    double den = (ps.mass[i] / ps.rho[i]) * w0;
    for (const auto& e : pc.row(i)) {
      if (!field.valid[e.j] || e.r == 0.0) continue;
      const int side_j = detail::pairing_side(ps.phase[e.j], pairing);
      if (side_j < 0) continue;
      const double flip = side_j == side_i ? 1.0 : -1.0;
      const double vol_j = ps.mass[e.j] / ps.rho[e.j];
      num -= vol_j * (field.normal[i] - flip * field.normal[e.j]).dot(e.e()) * e.dw;
      den += vol_j * e.w;
    }
    if (den > 0.0) field.curvature[i] = num / den;
  });
}

/// Wetting support data per particle.
template <int D>
struct WettingState {
  std::vector<Vec<D>> t_sf;          ///< wall tangent (projection of n_lg)
  std::vector<std::uint8_t> t_valid;
  std::vector<double> wall_distance;  ///< d_w = min_j (r_i - r_j) . n_sf - h
  long degenerate_tangents = 0;

  void resize(int n) {
    t_sf.assign(n, Vec<D>::Zero());
    t_valid.assign(n, 0);
    wall_distance.assign(n, std::numeric_limits<double>::infinity());
  }
};

/// Prescribes the equilibrium-angle normal near walls and blends it with the
/// color-field normal:
///   nhat = t_sf sin(theta0) - n_sf cos(theta0)
///   n    = normalize(f nraw + (1 - f) nhat),  f = clamp(d_w / d_max, 0, 1).
/// Operates in place on the liquid-gas field of fluid particles that see
/// solid or wall neighbors.
template <int D>
void correct_wetting_normals(const ParticleSet<D>& ps, const PairCache<D>& pc,
                             InterfaceField<D>& lg, const InterfaceField<D>& sf,
                             std::span<const MaterialParams> mats, double d_max,
                             WettingState<D>& wet) {
  wet.resize(ps.size());
  std::atomic<long> degenerate{0};
  parallel_for(ps.size(), [&](int i) {
    if (!ps.is_fluid(i) || !lg.valid[i] || !sf.valid[i]) return;

    const Vec<D>& n_sf = sf.normal[i];
    double d_w = std::numeric_limits<double>::infinity();
    for (const auto& e : pc.row(i)) {
      if (!ps.is_boundary_like(e.j)) continue;
      d_w = std::min(d_w, e.rij.dot(n_sf));
    }
    if (!std::isfinite(d_w)) return;  // no wall support, keep the raw normal
    d_w -= ps.smoothing_h[i];
    wet.wall_distance[i] = d_w;

    const double theta0 = mats[ps.material[i]].theta0_deg * pi / 180.0;
    const Vec<D> n_raw = lg.normal[i];
    Vec<D> t = n_raw - n_raw.dot(n_sf) * n_sf;
    const double t_norm = t.norm();
    Vec<D> n_hat;
    if (t_norm > 1e-10) {
      t /= t_norm;
      wet.t_sf[i] = t;
      wet.t_valid[i] = 1;
      n_hat = std::sin(theta0) * t - std::cos(theta0) * n_sf;
    } else {
      degenerate.fetch_add(1, std::memory_order_relaxed);
      const double c = std::cos(theta0);
      if (std::abs(c) < 1e-12) return;  // tangent undefined and no normal component: keep raw
      n_hat = -(c > 0 ? 1.0 : -1.0) * n_sf;
    }

    const double f = std::clamp(d_w / d_max, 0.0, 1.0);
    const Vec<D> blended = f * n_raw + (1.0 - f) * n_hat;
    const double norm = blended.norm();
    if (norm > 1e-12) lg.normal[i] = blended / norm;
  });
  wet.degenerate_tangents = degenerate.load();
}

}  // namespace meltsph

#endif
