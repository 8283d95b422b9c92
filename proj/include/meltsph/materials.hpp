/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_MATERIALS_HPP
#define MELTSPH_MATERIALS_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "meltsph/common.hpp"

namespace meltsph {

/// Per-phase constitutive record. The solver is unit-system agnostic: values
/// are taken verbatim from the scenario file and must form one consistent
/// unit system.
struct MaterialParams {
  std::string name;

  double rho0 = 0.0;           ///< reference density
  double eta = 0.0;            ///< dynamic viscosity
  double alpha0 = 0.0;         ///< surface tension at T_alpha0
  double alpha_prime0 = 0.0;   ///< -d(alpha)/dT of the linear law
  double T_alpha0 = 0.0;       ///< surface tension reference temperature
  double theta0_deg = 90.0;    ///< equilibrium wetting angle, degrees
  double T_melt = 0.0;         ///< solid <-> liquid transition temperature
  double T_vapor = std::numeric_limits<double>::infinity();  ///< boiling temperature
  double c_p = 0.0;            ///< heat capacity
  double k = 0.0;              ///< thermal conductivity
  double chi_l = 0.0;          ///< laser absorptivity
  double C_P = 0.0;            ///< recoil pressure constant
  double C_T = 0.0;            ///< recoil temperature constant
  double h_v = 0.0;            ///< latent heat of evaporation
  double T_h0 = 0.0;           ///< enthalpy reference temperature
  double C_M = 0.0;            ///< vapor mass-flow constant
  double c_s = 1.0;            ///< sticking constant

  double p0 = 0.0;             ///< weakly compressible reference pressure
  double p_b = 0.0;            ///< transport-velocity background pressure

  double sound_speed() const { return std::sqrt(p0 / rho0); }

  void validate() const {
    auto positive = [this](double v, const char* key) {
      if (!(v > 0.0)) throw ConfigError("material '" + name + "': " + key + " must be positive");
    };
    positive(rho0, "rho0");
    positive(eta, "eta");
    positive(c_p, "c_p");
    positive(k, "k");
    positive(p0, "p0");
    if (alpha0 < 0.0) throw ConfigError("material '" + name + "': alpha0 must be non-negative");
    if (chi_l < 0.0) throw ConfigError("material '" + name + "': chi_l must be non-negative");
    if (p_b < 0.0) throw ConfigError("material '" + name + "': p_b must be non-negative");
    if (!(T_melt < T_vapor))
      throw ConfigError("material '" + name + "': melt temperature must lie below boiling temperature");
    if (!(theta0_deg > 0.0 && theta0_deg < 180.0))
      throw ConfigError("material '" + name + "': wetting angle must lie in (0, 180) degrees");
  }
};

/// alpha(T) = alpha0 - alpha'_0 (T - T_alpha0), kept constant once it has
/// dropped to 10% of alpha0.
inline double surface_tension_coefficient(double T, const MaterialParams& mat) {
  const double alpha = mat.alpha0 - mat.alpha_prime0 * (T - mat.T_alpha0);
  return std::max(alpha, 0.1 * mat.alpha0);
}

/// d(alpha)/dT of the regularized law: -alpha'_0 where the linear branch is
/// active, zero where the 10% clamp has engaged.
inline double surface_tension_slope(double T, const MaterialParams& mat) {
  const double alpha = mat.alpha0 - mat.alpha_prime0 * (T - mat.T_alpha0);
  if (alpha <= 0.1 * mat.alpha0) return 0.0;
  return -mat.alpha_prime0;
}

/// Gaussian laser beam: peak irradiance s0, characteristic radius r_w
/// (two standard deviations), direction e_l, piecewise-linear center path.
template <int D>
struct LaserParams {
  double s0 = 0.0;
  double r_w = 0.0;
  Vec<D> direction = -Vec<D>::Unit(D - 1);
  struct Waypoint {
    double t;
    Vec<D> x;
  };
  std::vector<Waypoint> path;                       ///< sorted by t; constant before/after ends
  std::vector<std::pair<double, double>> on_spans;  ///< empty means always on

  bool enabled() const { return s0 > 0.0 && r_w > 0.0; }

  bool is_on(double t) const {
    if (on_spans.empty()) return true;
    for (const auto& [a, b] : on_spans)
      if (t >= a && t <= b) return true;
    return false;
  }

  Vec<D> center(double t) const {
    if (path.empty()) return Vec<D>::Zero();
    if (t <= path.front().t || path.size() == 1) return path.front().x;
    if (t >= path.back().t) return path.back().x;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      if (t <= path[k + 1].t) {
        const double f = (t - path[k].t) / (path[k + 1].t - path[k].t);
        return path[k].x + f * (path[k + 1].x - path[k].x);
      }
    }
    return path.back().x;
  }

  /// Irradiance at x: Gaussian in the radial distance from the beam axis.
  double irradiance(const Vec<D>& x, double t) const {
    if (!enabled() || !is_on(t)) return 0.0;
    const Vec<D> d = x - center(t);
    const Vec<D> radial = d - d.dot(direction) * direction;
    const double q = radial.norm() / r_w;
    return s0 * std::exp(-2.0 * q * q);
  }

  void validate() const {
    if (s0 < 0.0) throw ConfigError("laser: peak irradiance must be non-negative");
    if (enabled()) {
      if (!(r_w > 0.0)) throw ConfigError("laser: characteristic radius must be positive");
      if (std::abs(direction.norm() - 1.0) > 1e-8)
        throw ConfigError("laser: beam direction must be a unit vector");
    }
  }
};

}  // namespace meltsph

#endif
