/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_GRADLAB_HPP
#define MELTSPH_GRADLAB_HPP

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "meltsph/gradients.hpp"
#include "meltsph/io.hpp"
#include "meltsph/neighbors.hpp"
#include "meltsph/scenario.hpp"

namespace meltsph {

/// Gradient-operator comparison on a kinked temperature field. The synthetic
/// configuration is a regular lattice with a flat interface normal to one
/// axis; the field carries a constant offset, a tangential slope and a
/// normal slope that jumps across the interface (as a conductivity jump
/// produces). Snapshot mode replays a CSV particle snapshot instead.
struct GradlabConfig {
  enum class Mode { KinkedLattice, Snapshot };
  Mode mode = Mode::KinkedLattice;

  // lattice mode
  int nx = 24, ny = 24;
  double dx = 1.0;
  int normal_axis = 1;
  double interface_offset = 0.5;  ///< interface position in units of dx above the midline
  double T_offset = 1700.0;
  double grad_tangential = 50.0;
  double grad_normal_below = 100.0;
  double grad_normal_above = 50.0;

  // snapshot mode
  std::string snapshot_csv;

  std::string out_csv;  ///< optional per-particle dump
};

inline GradlabConfig parse_gradlab_config(const std::string& path) {
  const ScenarioDoc doc = parse_scenario_file(path);
  GradlabConfig cfg;
  const auto* sec = doc.find("gradlab");
  if (!sec) throw ConfigError(path + ": missing [gradlab] section");
  for (const auto& e : sec->entries) {
    if (e.key == "mode") {
      if (e.value == "kinked_lattice") cfg.mode = GradlabConfig::Mode::KinkedLattice;
      else if (e.value == "snapshot") cfg.mode = GradlabConfig::Mode::Snapshot;
      else detail::fail(doc, e.line, "mode must be kinked_lattice or snapshot");
    } else if (e.key == "nx") cfg.nx = static_cast<int>(detail::to_number(doc, e, e.value));
    else if (e.key == "ny") cfg.ny = static_cast<int>(detail::to_number(doc, e, e.value));
    else if (e.key == "dx") cfg.dx = detail::to_number(doc, e, e.value);
    else if (e.key == "normal_axis") cfg.normal_axis = e.value == "x" ? 0 : 1;
    else if (e.key == "interface_offset") cfg.interface_offset = detail::to_number(doc, e, e.value);
    else if (e.key == "T_offset") cfg.T_offset = detail::to_number(doc, e, e.value);
    else if (e.key == "grad_tangential") cfg.grad_tangential = detail::to_number(doc, e, e.value);
    else if (e.key == "grad_normal_below") cfg.grad_normal_below = detail::to_number(doc, e, e.value);
    else if (e.key == "grad_normal_above") cfg.grad_normal_above = detail::to_number(doc, e, e.value);
    else if (e.key == "snapshot") cfg.snapshot_csv = e.value;
    else if (e.key == "out") cfg.out_csv = e.value;
    else detail::fail(doc, e.line, "unknown gradlab key '" + e.key + "'");
  }
  return cfg;
}

enum class GradientVariant { Standard, Symmetric, Asymmetric, CSPM, CSPH };

inline const char* variant_name(GradientVariant v) {
  switch (v) {
    case GradientVariant::Standard: return "standard";
    case GradientVariant::Symmetric: return "symmetric";
    case GradientVariant::Asymmetric: return "asymmetric";
    case GradientVariant::CSPM: return "cspm";
    case GradientVariant::CSPH: return "csph";
  }
  return "?";
}

/// Relative L2/Linf errors of one variant against the CSPH reference, split
/// by particle population.
struct GradlabErrors {
  struct Entry {
    double l2 = 0.0, linf = 0.0;
    int count = 0;
  };
  // population: 0 interface band (full support), 1 interior (full support),
  // 2 boundary (truncated support)
  std::array<Entry, 3> full_gradient;
  std::array<Entry, 3> tangential;
};

struct GradlabReport {
  std::map<GradientVariant, GradlabErrors> errors;
  long corrected_fallbacks = 0;
};

/// Runs all five gradient approximations over the cloud and accumulates the
/// error table. `positions`, `values`, `volumes`, `densities` describe the
/// cloud; `band[i]`/`boundary[i]` classify particles; `normal` is the
/// interface normal used for the tangential projection.
template <int D>
GradlabReport gradient_study_cloud(const std::vector<Vec<D>>& positions,
                                   const std::vector<double>& values,
                                   const std::vector<double>& volumes,
                                   const std::vector<double>& densities,
                                   const std::vector<std::uint8_t>& band,
                                   const std::vector<std::uint8_t>& boundary, const Vec<D>& normal,
                                   const KernelSpec& kernel, const DomainBox<D>& box,
                                   std::ostream* dump = nullptr) {
  const int n = static_cast<int>(positions.size());
  NeighborIndex<D> index(positions, kernel.support(), box);
  GradlabReport report;
  GradientDiagnostics diag;

  struct Acc {
    double num2 = 0.0, den2 = 0.0, linf = 0.0;
    int count = 0;
  };
  std::map<GradientVariant, std::array<Acc, 3>> acc_full, acc_tan;

  if (dump) {
    *dump << "id,group";
    for (auto v : {GradientVariant::Standard, GradientVariant::Symmetric,
                   GradientVariant::Asymmetric, GradientVariant::CSPM, GradientVariant::CSPH})
      *dump << ',' << variant_name(v) << "_gx," << variant_name(v) << "_gy";
    *dump << "\n";
  }

  for (int i = 0; i < n; ++i) {
    std::vector<FieldSample<D>> cloud;
    index.for_each_neighbor(i, [&](int j, const Vec<D>&, double) {
      cloud.push_back({values[j], positions[j], volumes[j], densities[j]});
    });
    const FieldSample<D> center{values[i], positions[i], volumes[i], densities[i]};

    const Vec<D> g_std = grad_standard<D>(center, cloud, kernel, &diag);
    const Vec<D> g_sym = grad_symmetric<D>(center, cloud, kernel);
    const Vec<D> g_asym = grad_asymmetric<D>(center, cloud, kernel);
    const Vec<D> g_cspm = grad_corrected<D>(center, cloud, kernel, CorrectionScheme::CSPM, &diag);
    const Vec<D> g_csph = grad_corrected<D>(center, cloud, kernel, CorrectionScheme::CSPH, &diag);

    const int group = boundary[i] ? 2 : band[i] ? 0 : 1;
    const Vec<D> ref = g_csph;
    const Vec<D> ref_t = tangential_projection<D>(ref, normal);

    auto account = [&](GradientVariant v, const Vec<D>& g) {
      auto& a = acc_full[v][group];
      a.num2 += (g - ref).squaredNorm();
      a.den2 += ref.squaredNorm();
      a.linf = std::max(a.linf, (g - ref).norm());
      ++a.count;
      const Vec<D> gt = tangential_projection<D>(g, normal);
      auto& at = acc_tan[v][group];
      at.num2 += (gt - ref_t).squaredNorm();
      at.den2 += ref_t.squaredNorm();
      at.linf = std::max(at.linf, (gt - ref_t).norm());
      ++at.count;
    };
    account(GradientVariant::Standard, g_std);
    account(GradientVariant::Symmetric, g_sym);
    account(GradientVariant::Asymmetric, g_asym);
    account(GradientVariant::CSPM, g_cspm);
    account(GradientVariant::CSPH, g_csph);

    if (dump) {
      *dump << i << ',' << group;
      for (const Vec<D>* g : {&g_std, &g_sym, &g_asym, &g_cspm, &g_csph})
        *dump << ',' << (*g)[0] << ',' << (*g)[1 % D];
      *dump << "\n";
    }
  }

  for (auto& [v, groups] : acc_full) {
    for (int g = 0; g < 3; ++g) {
      auto& out = report.errors[v].full_gradient[g];
      out.l2 = groups[g].den2 > 0 ? std::sqrt(groups[g].num2 / groups[g].den2) : 0.0;
      out.linf = groups[g].linf;
      out.count = groups[g].count;
      auto& out_t = report.errors[v].tangential[g];
      const auto& at = acc_tan[v][g];
      out_t.l2 = at.den2 > 0 ? std::sqrt(at.num2 / at.den2) : 0.0;
      out_t.linf = at.linf;
      out_t.count = at.count;
    }
  }
  report.corrected_fallbacks = diag.correction_fallbacks;
  return report;
}

/// Builds the kinked-lattice cloud described by the config and runs the study.
inline GradlabReport gradient_study(const GradlabConfig& cfg, std::ostream* dump = nullptr) {
  if (cfg.mode == GradlabConfig::Mode::Snapshot) {
    auto snap = read_csv_snapshot<2>(cfg.snapshot_csv);
    const int n = snap.size();
    std::vector<Vec<2>> pos = snap.pos;
    std::vector<double> T = snap.T;
    std::vector<double> vol(n), rho = snap.rho;
    std::vector<std::uint8_t> band(n, 0), boundary(n, 0);
    Vec<2> lo = pos[0], hi = pos[0];
    for (const auto& p : pos) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    // infer the spacing from the closest pair along x
    double dx = 1e300;
    for (int i = 1; i < n; ++i) dx = std::min(dx, std::abs(pos[i].x() - pos[i - 1].x()) + 1e-300);
    KernelSpec kernel{dx, 3.0, 2};
    for (int i = 0; i < n; ++i) {
      vol[i] = dx * dx;
      band[i] = snap.delta_lg[i] > 1e-6 / dx ? 1 : 0;
      for (int a = 0; a < 2; ++a)
        if (pos[i][a] < lo[a] + kernel.support() || pos[i][a] > hi[a] - kernel.support())
          boundary[i] = 1;
    }
    DomainBox<2> box{lo - Vec<2>::Constant(dx), hi + Vec<2>::Constant(dx), {false, false}};
    return gradient_study_cloud<2>(pos, T, vol, rho, band, boundary, Vec<2>(0.0, 1.0), kernel,
                                   box, dump);
  }

  const int nx = cfg.nx, ny = cfg.ny;
  const double dx = cfg.dx;
  const int na = cfg.normal_axis;
  const double y_int = (ny / 2 + cfg.interface_offset) * dx;
  std::vector<Vec<2>> pos;
  std::vector<double> T, vol, rho;
  std::vector<std::uint8_t> band, boundary;
  KernelSpec kernel{dx, 3.0, 2};
  const double rc = kernel.support();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      Vec<2> p((i + 0.5) * dx, (j + 0.5) * dx);
      if (na == 0) std::swap(p[0], p[1]);
      const double xn = p[na] - y_int;
      const double xt = p[1 - na];
      const double gn = xn < 0.0 ? cfg.grad_normal_below : cfg.grad_normal_above;
      pos.push_back(p);
      T.push_back(cfg.T_offset + cfg.grad_tangential * xt + gn * xn);
      vol.push_back(dx * dx);
      rho.push_back(1.0);
      band.push_back(std::abs(xn) < rc ? 1 : 0);
      const bool near_edge = p[0] < rc || p[0] > nx * dx - rc || p[1] < rc || p[1] > ny * dx - rc;
      boundary.push_back(near_edge ? 1 : 0);
    }
  DomainBox<2> box{Vec<2>(0, 0), Vec<2>(nx * dx, ny * dx), {false, false}};
  Vec<2> normal = Vec<2>::Zero();
  normal[na] = 1.0;
  return gradient_study_cloud<2>(pos, T, vol, rho, band, boundary, normal, kernel, box, dump);
}

inline void print_gradlab_report(const GradlabReport& report, std::ostream& out) {
  const char* groups[] = {"interface-band", "interior", "boundary"};
  out << "variant      population       n      L2(grad)    Linf(grad)     L2(tan)    Linf(tan)\n";
  for (const auto& [v, err] : report.errors) {
    for (int g = 0; g < 3; ++g) {
      if (err.full_gradient[g].count == 0) continue;
      char line[160];
      std::snprintf(line, sizeof(line), "%-12s %-14s %5d  %11.4e  %11.4e  %11.4e  %11.4e\n",
                    variant_name(v), groups[g], err.full_gradient[g].count,
                    err.full_gradient[g].l2, err.full_gradient[g].linf, err.tangential[g].l2,
                    err.tangential[g].linf);
      out << line;
    }
  }
  if (report.corrected_fallbacks > 0)
    out << "(corrected-scheme fallbacks: " << report.corrected_fallbacks << ")\n";
}

}  // namespace meltsph

#endif
