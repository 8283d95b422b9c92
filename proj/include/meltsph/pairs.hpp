/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_PAIRS_HPP
#define MELTSPH_PAIRS_HPP

#include <span>
#include <vector>

#include "meltsph/common.hpp"
#include "meltsph/kernel.hpp"
#include "meltsph/neighbors.hpp"

namespace meltsph {

/// Per-particle adjacency with cached kernel evaluations, rebuilt once per
/// step and shared by every pair sweep. Row storage persists across rebuilds
/// so the steady state allocates nothing. Entries keep the neighbor order
/// produced by the index, so accumulation order (and thus the result bit
/// pattern) is independent of worker thread count.
template <int D>
struct PairCache {
  struct Entry {
    int j;
    double r;       ///< |r_i - r_j| (minimum image)
    double w;       ///< W(r)
    double dw;      ///< dW/dr
    Vec<D> rij;     ///< r_i - r_j (minimum image)

    Vec<D> e() const { return rij / r; }
  };

  std::vector<std::vector<Entry>> rows;
  KernelSpec kernel;

  int size() const { return static_cast<int>(rows.size()); }

  std::span<const Entry> row(int i) const { return rows[i]; }

  void rebuild(std::span<const Vec<D>> pos, const NeighborIndex<D>& index,
               const KernelSpec& spec) {
    kernel = spec;
    const int n = index.size();
    rows.resize(n);
    const double norm = detail::quintic_norm(spec.h, spec.dim);
    const double inv_h = 1.0 / spec.h;
    parallel_for(n, [&](int i) {
      auto& row = rows[i];
      row.clear();
      index.for_each_neighbor(i, [&](int j, const Vec<D>& rij, double r) {
        const double q = r * inv_h;
        row.push_back(Entry{j, r, norm * detail::quintic_shape(q),
                            norm * inv_h * detail::quintic_shape_derivative(q), rij});
      });
    });
  }

  static PairCache build(std::span<const Vec<D>> pos, const NeighborIndex<D>& index,
                         const KernelSpec& spec) {
    PairCache pc;
    pc.rebuild(pos, index, spec);
    return pc;
  }
};

}  // namespace meltsph

#endif
