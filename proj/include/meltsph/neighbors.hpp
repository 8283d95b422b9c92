/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_NEIGHBORS_HPP
#define MELTSPH_NEIGHBORS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "meltsph/common.hpp"

namespace meltsph {

template <int D>
struct DomainBox {
  Vec<D> lo = Vec<D>::Zero();
  Vec<D> hi = Vec<D>::Ones();
  std::array<bool, D> periodic{};

  double length(int axis) const { return hi[axis] - lo[axis]; }
};

/// Uniform-grid spatial index over one particle snapshot. Cell size >= r_c so
/// a one-ring cell sweep finds every pair; displacements use the minimum-image
/// convention on periodic axes. Queries on a built index are read-only.
template <int D>
class NeighborIndex {
 public:
  NeighborIndex(std::span<const Vec<D>> positions, double r_c, const DomainBox<D>& box)
      : box_(box), r_c_(r_c) {
    if (!(r_c > 0.0)) throw std::invalid_argument("NeighborIndex: support radius must be positive");
    for (int a = 0; a < D; ++a) {
      const double len = box_.length(a);
      if (!(len > 0.0)) throw std::invalid_argument("NeighborIndex: empty domain axis");
      ncell_[a] = std::max(1, static_cast<int>(std::floor(len / r_c)));
      cell_len_[a] = len / ncell_[a];
    }
    total_cells_ = 1;
    for (int a = 0; a < D; ++a) total_cells_ *= ncell_[a];
    rebuild(positions);
  }

  /// Re-sorts a new position snapshot into the (fixed) cell grid; buffers
  /// are reused so steady-state rebuilds do not allocate.
  void rebuild(std::span<const Vec<D>> positions) {
    const int n = static_cast<int>(positions.size());
    pos_.assign(positions.begin(), positions.end());
    cell_of_.resize(n);
    cell_start_.assign(total_cells_ + 1, 0);
    for (int i = 0; i < n; ++i) {
      cell_of_[i] = cell_id(pos_[i], i);
      ++cell_start_[cell_of_[i] + 1];
    }
    for (int c = 0; c < total_cells_; ++c) cell_start_[c + 1] += cell_start_[c];
    by_cell_.resize(n);
    cursor_.assign(cell_start_.begin(), cell_start_.end() - 1);
    for (int i = 0; i < n; ++i) by_cell_[cursor_[cell_of_[i]]++] = i;
  }

  int size() const { return static_cast<int>(pos_.size()); }
  double support_radius() const { return r_c_; }
  const DomainBox<D>& box() const { return box_; }

  /// Minimum-image displacement r_i - r_j.
  Vec<D> displacement(const Vec<D>& ri, const Vec<D>& rj) const {
    Vec<D> d = ri - rj;
    for (int a = 0; a < D; ++a) {
      if (!box_.periodic[a]) continue;
      const double len = box_.length(a);
      d[a] -= len * std::nearbyint(d[a] / len);
    }
    return d;
  }

  /// Calls f(j, rij, r) for every neighbor j != i with minimum-image distance
  /// r < r_c; each pair direction is reported exactly once.
  template <class F>
  void for_each_neighbor(int i, F&& f) const {
    if (i < 0 || i >= size()) throw std::out_of_range("NeighborIndex: invalid particle id");
    std::array<std::array<int, 3>, D> axis_cells{};
    std::array<int, D> axis_count{};
    std::array<int, D> center{};
    decompose(cell_of_[i], center);
    for (int a = 0; a < D; ++a) {
      int m = 0;
      for (int off = -1; off <= 1; ++off) {
        int c = center[a] + off;
        if (box_.periodic[a]) {
          c = (c % ncell_[a] + ncell_[a]) % ncell_[a];
        } else if (c < 0 || c >= ncell_[a]) {
          continue;
        }
        bool seen = false;
        for (int k = 0; k < m; ++k) seen |= (axis_cells[a][k] == c);
        if (!seen) axis_cells[a][m++] = c;
      }
      axis_count[a] = m;
    }

    std::array<int, D> pick{};
    visit_cells(i, axis_cells, axis_count, pick, 0, f);
  }

  /// Convenience wrapper used by tests; returns (j, r_ij vector, distance).
  std::vector<std::tuple<int, Vec<D>, double>> neighbors_of(int i) const {
    std::vector<std::tuple<int, Vec<D>, double>> out;
    for_each_neighbor(i, [&](int j, const Vec<D>& rij, double r) { out.emplace_back(j, rij, r); });
    return out;
  }

 private:
  int cell_id(const Vec<D>& p, int particle) const {
    int id = 0;
    for (int a = 0; a < D; ++a) {
      double x = p[a];
      const double len = box_.length(a);
      if (box_.periodic[a]) {
        x -= len * std::floor((x - box_.lo[a]) / len);
      } else if (x < box_.lo[a] || x > box_.hi[a]) {
        throw std::invalid_argument("NeighborIndex: particle " + std::to_string(particle) +
                                    " outside non-periodic domain axis " + std::to_string(a));
      }
      int c = static_cast<int>((x - box_.lo[a]) / cell_len_[a]);
      c = std::clamp(c, 0, ncell_[a] - 1);
      id = id * ncell_[a] + c;
    }
    return id;
  }

  void decompose(int id, std::array<int, D>& coords) const {
    for (int a = D - 1; a >= 0; --a) {
      coords[a] = id % ncell_[a];
      id /= ncell_[a];
    }
  }

  int compose(const std::array<int, D>& coords) const {
    int id = 0;
    for (int a = 0; a < D; ++a) id = id * ncell_[a] + coords[a];
    return id;
  }

  template <class F>
  void visit_cells(int i, const std::array<std::array<int, 3>, D>& axis_cells,
                   const std::array<int, D>& axis_count, std::array<int, D>& pick, int axis,
                   F&& f) const {
    if (axis == D) {
      const int c = compose(pick);
      for (int k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
        const int j = by_cell_[k];
        if (j == i) continue;
        const Vec<D> rij = displacement(pos_[i], pos_[j]);
        const double r = rij.norm();
        if (r < r_c_) f(j, rij, r);
      }
      return;
    }
    for (int k = 0; k < axis_count[axis]; ++k) {
      pick[axis] = axis_cells[axis][k];
      visit_cells(i, axis_cells, axis_count, pick, axis + 1, f);
    }
  }

  DomainBox<D> box_;
  double r_c_;
  std::array<int, D> ncell_{};
  std::array<double, D> cell_len_{};
  int total_cells_ = 0;
  std::vector<Vec<D>> pos_;
  std::vector<int> cell_of_;
  std::vector<int> cell_start_;
  std::vector<int> by_cell_;
  std::vector<int> cursor_;
};

}  // namespace meltsph

#endif
