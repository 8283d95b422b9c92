/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_INTEGRATOR_HPP
#define MELTSPH_INTEGRATOR_HPP

#include <atomic>
#include <cmath>
#include <type_traits>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meltsph/boundary.hpp"
#include "meltsph/fluid.hpp"
#include "meltsph/interface_fields.hpp"
#include "meltsph/interface_forces.hpp"
#include "meltsph/neighbors.hpp"
#include "meltsph/pairs.hpp"
#include "meltsph/particles.hpp"
#include "meltsph/scenario.hpp"
#include "meltsph/thermal.hpp"

namespace meltsph {

struct StepReport {
  long step = 0;
  double time = 0.0;
  double max_speed = 0.0;
  double rho_ratio_min = 1.0;  ///< min rho/rho0 over fluid particles
  double rho_ratio_max = 1.0;
  double T_min = 0.0;
  double T_max = 0.0;
  double dt_headroom = std::numeric_limits<double>::infinity();  ///< stable_dt / dt
  long skipped_pairs = 0;
  long wetting_degenerate = 0;
};

/// The five explicit stability bounds (CFL, viscous, body force, surface
/// tension, conduction) for one material.
struct StableDtTerms {
  double cfl, viscous, body_force, surface_tension, conduction;
  double min() const {
    return std::min({cfl, viscous, body_force, surface_tension, conduction});
  }
};

inline StableDtTerms stable_dt_terms(const MaterialParams& mat, double h, double u_max,
                                     double b_max) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  StableDtTerms t{};
  t.cfl = 0.25 * h / (mat.sound_speed() + u_max);
  const double nu = mat.eta / mat.rho0;
  t.viscous = nu > 0.0 ? 0.125 * h * h / nu : inf;
  t.body_force = b_max > 0.0 ? 0.25 * std::sqrt(h / b_max) : inf;
  t.surface_tension =
      mat.alpha0 > 0.0 ? 0.25 * std::sqrt(mat.rho0 * h * h * h / (2.0 * pi * mat.alpha0)) : inf;
  t.conduction = mat.k > 0.0 ? 0.125 * mat.rho0 * mat.c_p * h * h / mat.k : inf;
  return t;
}

/// Global admissible time step: the per-phase minimum over all five terms.
template <int D>
double stable_dt(const ParticleSet<D>& ps, std::span<const MaterialParams> mats, double h,
                 const std::type_identity_t<Vec<D>>& gravity) {
  double u_max = 0.0;
  std::vector<char> present(mats.size(), 0);
  for (int i = 0; i < ps.size(); ++i) {
    if (!ps.is_fluid(i)) continue;
    present[ps.material[i]] = 1;
    u_max = std::max(u_max, ps.vel[i].norm());
  }
  const double b_max = gravity.norm();
  double dt = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < mats.size(); ++m)
    if (present[m]) dt = std::min(dt, stable_dt_terms(mats[m], h, u_max, b_max).min());
  return dt;
}

/// Weakly compressible SPH solver with kick-drift-kick velocity-Verlet time
/// stepping. One step advances the pipeline
///   kick -> drift -> wrap -> neighbor rebuild -> density -> EOS ->
///   boundary extrapolation -> interface fields -> thermal update ->
///   phase change -> force evaluation -> kick,
/// matching the order in which the state enters each discrete operator.
template <int D>
class Simulation {
 public:
  explicit Simulation(ScenarioConfig<D> cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    ps_ = initialize_particles(cfg_);
    kernel_ = KernelSpec{cfg_.smoothing_length(), 3.0, D};
    eps_curv_ = cfg_.physics.eps_curv_over_h / kernel_.h;
    d_max_ = cfg_.physics.d_max_over_h * kernel_.h;
    two_sided_ = cfg_.two_sided_fluxes();
    // the spatial index must cover the wall slabs outside the fluid domain
    index_box_ = cfg_.domain;
    for (int a = 0; a < D; ++a) {
      if (cfg_.boundary[a] != BoundaryKind::Wall) continue;
      index_box_.lo[a] -= cfg_.wall_layers * cfg_.dx;
      index_box_.hi[a] += cfg_.wall_layers * cfg_.dx;
    }
    evaluate_derived_state(/*advance_thermal=*/false);
    update_report();
  }

  const ScenarioConfig<D>& config() const { return cfg_; }
  const ParticleSet<D>& particles() const { return ps_; }
  ParticleSet<D>& particles() { return ps_; }
  double time() const { return time_; }
  long step_index() const { return step_; }
  const StepReport& report() const { return report_; }
  const InterfaceField<D>& liquid_gas_field() const { return lg_; }
  const InterfaceField<D>& solid_gas_field() const { return sg_; }
  const InterfaceField<D>& solid_fluid_field() const { return sf_; }
  const KernelSpec& kernel() const { return kernel_; }
  const PairCache<D>& pair_cache() const { return pairs_; }
  bool two_sided_fluxes() const { return two_sided_; }
  double total_mass() const {
    double m = 0.0;
    for (int i = 0; i < ps_.size(); ++i) m += ps_.mass[i];
    return m;
  }

  void step() {
    const double dt = cfg_.dt;
    const bool transport = cfg_.physics.transport_velocity;

    // first kick and drift
    parallel_for(ps_.size(), [&](int i) {
      if (!ps_.is_fluid(i)) return;
      ps_.vel[i] += 0.5 * dt * ps_.acc[i];
      ps_.vel_adv[i] = ps_.vel[i];
      if (transport) ps_.vel_adv[i] += 0.5 * dt * ps_.acc_bg[i];
      ps_.pos[i] += dt * ps_.vel_adv[i];
    });
    apply_periodic_bc(ps_, cfg_.domain);

    evaluate_derived_state(/*advance_thermal=*/true);

    // second kick
    parallel_for(ps_.size(), [&](int i) {
      if (!ps_.is_fluid(i)) return;
      ps_.vel[i] += 0.5 * dt * ps_.acc[i];
    });

    time_ += dt;
    ++step_;
    update_report();
    check_finite();
  }

 private:
  // density, boundary extrapolation, interface fields, thermal rates, phase
  // change and forces, in the order the discrete operators consume the state;
  // the construction-time call only evaluates rates without integrating them
  void evaluate_derived_state(bool advance_thermal) {
    const double dt = cfg_.dt;
    skipped_pairs_.store(0);

    try {
      if (!index_)
        index_.emplace(ps_.pos, kernel_.support(), index_box_);
      else
        index_->rebuild(ps_.pos);
    } catch (const std::invalid_argument& err) {
      // a particle has left the wall-extended domain: the run has diverged
      throw DivergenceError(err.what(), step_);
    }
    pairs_.rebuild(ps_.pos, *index_, kernel_);

    density_summation(ps_, pairs_);
    apply_eos(ps_, materials());
    extrapolate_boundary_states(ps_, materials(), pairs_, cfg_.gravity);

    compute_all_interface_fields(ps_, pairs_, eps_curv_, lg_, sg_, sf_);
    if (cfg_.physics.wetting)
      correct_wetting_normals(ps_, pairs_, lg_, sf_, materials(), d_max_, wetting_);
    else
      wetting_.resize(ps_.size());
    compute_curvature(ps_, pairs_, lg_);

    // thermal rates and explicit temperature update (skipped entirely when
    // conduction and every heat source are off)
    if (cfg_.physics.conduction || cfg_.physics.laser_heating || cfg_.physics.evaporation) {
      if (cfg_.physics.conduction)
        conduction_divergence(ps_, materials(), pairs_, div_q_);
      else
        div_q_.assign(ps_.size(), 0.0);
      if (cfg_.physics.laser_heating)
        laser_source(ps_, materials(), lg_, sg_, cfg_.laser, time_, laser_heat_);
      else
        laser_heat_.assign(ps_.size(), 0.0);
      if (cfg_.physics.evaporation)
        evaporation_loss(ps_, materials(), lg_, evap_heat_);
      else
        evap_heat_.assign(ps_.size(), 0.0);
      for (auto& s : laser_heat_) s *= cfg_.ramp_factor("laser", time_);
      energy_rate(ps_, materials(), div_q_, evap_heat_, laser_heat_, ps_.dTdt);
      if (advance_thermal)
        parallel_for(ps_.size(), [&](int i) {
          if (ps_.phase[i] != Phase::WallBoundary) ps_.temperature[i] += dt * ps_.dTdt[i];
        });
    } else {
      ps_.dTdt.assign(ps_.size(), 0.0);
    }

    if (advance_thermal) phase_change_update();
    if (cfg_.physics.marangoni) temperature_gradient_asymmetric(ps_, pairs_, grad_T_);

    compute_forces();
  }

  void phase_change_update() {
    const auto mats = materials();
    for (int i = 0; i < ps_.size(); ++i) {
      const double Tm = mats[ps_.material[i]].T_melt;
      if (ps_.phase[i] == Phase::Solid && ps_.temperature[i] > Tm) {
        ps_.phase[i] = Phase::Liquid;
        ps_.rho[i] = mats[ps_.material[i]].rho0;
        ps_.pressure[i] = 0.0;
      } else if (ps_.phase[i] == Phase::Liquid && ps_.temperature[i] < Tm) {
        ps_.phase[i] = Phase::Solid;
        ps_.vel[i].setZero();
        ps_.vel_adv[i].setZero();
        ps_.acc[i].setZero();
        ps_.acc_bg[i].setZero();
        ps_.rho[i] = mats[ps_.material[i]].rho0;
        ps_.pressure[i] = 0.0;
      }
    }
  }

  void compute_forces() {
    const int n = ps_.size();
    force_.assign(n, Vec<D>::Zero());
    const auto mats = materials();
    const auto& ph = cfg_.physics;

    if (ph.fluid_forces) {
      accumulate_pressure_viscous_forces(ps_, mats, pairs_, force_, &skipped_pairs_);
      if (ph.transport_velocity) {
        accumulate_transport_velocity_terms(ps_, mats, pairs_, force_, ps_.acc_bg);
      } else {
        for (auto& a : ps_.acc_bg) a.setZero();
      }
      if (ph.zeta0_lg != 0.0 || ph.zeta0_sl != 0.0) {
        zeta_ = interface_viscosity_factor(ps_, lg_.delta, mats, ph.zeta0_lg, ph.zeta0_sl,
                                           ph.T_ramp_max);
        const double ramp = cfg_.ramp_factor("dissipation", time_);
        if (ramp != 1.0)
          for (auto& z : zeta_) z *= ramp;
        accumulate_interface_dissipation(ps_, mats, pairs_, zeta_, ph.eps_visc, force_);
      }
    } else {
      for (auto& a : ps_.acc_bg) a.setZero();
    }

    if (ph.surface_tension)
      accumulate_surface_tension_normal(ps_, mats, lg_, two_sided_,
                                        cfg_.ramp_factor("surface_tension", time_), force_);
    if (ph.marangoni)
      accumulate_marangoni(ps_, mats, lg_, grad_T_, two_sided_,
                           cfg_.ramp_factor("marangoni", time_) *
                               cfg_.ramp_factor("surface_tension", time_),
                           force_);
    if (ph.wetting)
      accumulate_wetting(ps_, mats, lg_, sf_, wetting_, two_sided_,
                         cfg_.ramp_factor("wetting", time_) *
                             cfg_.ramp_factor("surface_tension", time_),
                         force_);
    if (ph.recoil)
      accumulate_recoil(ps_, mats, lg_, cfg_.ramp_factor("recoil", time_), force_);

    parallel_for(n, [&](int i) {
      if (ps_.is_fluid(i))
        ps_.acc[i] = force_[i] / ps_.mass[i] + cfg_.gravity;
      else
        ps_.acc[i].setZero();
    });
  }

  void update_report() {
    StepReport r;
    r.step = step_;
    r.time = time_;
    double T_min = std::numeric_limits<double>::infinity(), T_max = -T_min;
    double rr_min = std::numeric_limits<double>::infinity(), rr_max = 0.0, u_max = 0.0;
    const auto mats = materials();
    for (int i = 0; i < ps_.size(); ++i) {
      T_min = std::min(T_min, ps_.temperature[i]);
      T_max = std::max(T_max, ps_.temperature[i]);
      if (!ps_.is_fluid(i)) continue;
      const double ratio = ps_.rho[i] / mats[ps_.material[i]].rho0;
      rr_min = std::min(rr_min, ratio);
      rr_max = std::max(rr_max, ratio);
      u_max = std::max(u_max, ps_.vel[i].norm());
    }
    r.T_min = T_min;
    r.T_max = T_max;
    r.rho_ratio_min = rr_min;
    r.rho_ratio_max = rr_max;
    r.max_speed = u_max;
    r.dt_headroom = stable_dt(ps_, materials(), kernel_.h, cfg_.gravity) / cfg_.dt;
    r.skipped_pairs = skipped_pairs_.load();
    r.wetting_degenerate = wetting_.degenerate_tangents;
    report_ = r;
  }

  void check_finite() const {
    for (int i = 0; i < ps_.size(); ++i) {
      bool ok = std::isfinite(ps_.temperature[i]) && std::isfinite(ps_.rho[i]);
      for (int a = 0; a < D; ++a)
        ok = ok && std::isfinite(ps_.pos[i][a]) && std::isfinite(ps_.vel[i][a]);
      if (!ok)
        throw DivergenceError("non-finite state on particle " + std::to_string(i) + " (" +
                                  phase_name(ps_.phase[i]) + ") at t = " + std::to_string(time_),
                              step_);
    }
  }

  std::span<const MaterialParams> materials() const { return cfg_.materials; }

  ScenarioConfig<D> cfg_;
  ParticleSet<D> ps_;
  KernelSpec kernel_;
  double eps_curv_ = 0.0;
  double d_max_ = 0.0;
  bool two_sided_ = false;
  double time_ = 0.0;
  long step_ = 0;
  DomainBox<D> index_box_;

  std::optional<NeighborIndex<D>> index_;
  PairCache<D> pairs_;
  InterfaceField<D> lg_, sg_, sf_;
  WettingState<D> wetting_;
  std::vector<double> div_q_, laser_heat_, evap_heat_, zeta_;
  std::vector<Vec<D>> grad_T_, force_;
  std::atomic<long> skipped_pairs_{0};
  StepReport report_;
};

}  // namespace meltsph

#endif
