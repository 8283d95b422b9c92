/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef MELTSPH_GRADIENTS_HPP
#define MELTSPH_GRADIENTS_HPP

#include <Eigen/SVD>

#include <cstdint>
#include <span>
#include <stdexcept>

#include "meltsph/common.hpp"
#include "meltsph/kernel.hpp"

namespace meltsph {

/// One scalar sample carried by a particle, as consumed by the gradient
/// approximation operators.
template <int D>
struct FieldSample {
  double value = 0.0;
  Vec<D> position = Vec<D>::Zero();
  double volume = 0.0;
  double density = 0.0;
};

enum class CorrectionScheme { CSPM, CSPH };

struct GradientDiagnostics {
  long skipped_pairs = 0;         ///< coincident-position pairs dropped
  long correction_fallbacks = 0;  ///< ill-conditioned corrections demoted to the plain scheme
};

namespace detail {

// Shared neighbor visit: calls f(sample, dWdr, e_ij) for every non-coincident
// neighbor inside the support radius. e_ij points from the neighbor to i.
template <int D, class F>
void visit_neighbors(const FieldSample<D>& center, std::span<const FieldSample<D>> samples,
                     const KernelSpec& spec, GradientDiagnostics* diag, F&& f) {
  const double rc = spec.support();
  for (const FieldSample<D>& s : samples) {
    const Vec<D> rij = center.position - s.position;
    const double r = rij.norm();
    if (r >= rc) continue;
    if (r == 0.0) {
      if (diag) ++diag->skipped_pairs;
      continue;
    }
    f(s, kernel_derivative(r, spec), Vec<D>(rij / r));
  }
}

}  // namespace detail

/// Standard SPH gradient:  sum_j V_j T_j dW/dr e_ij.  Not zero-order
/// consistent; a constant field yields a nonzero result wherever the kernel
/// support is truncated.
template <int D>
Vec<D> grad_standard(const FieldSample<D>& center, std::span<const FieldSample<D>> samples,
                     const KernelSpec& spec, GradientDiagnostics* diag = nullptr) {
  Vec<D> g = Vec<D>::Zero();
  detail::visit_neighbors<D>(center, samples, spec, diag,
                             [&](const FieldSample<D>& s, double dw, const Vec<D>& e) {
                               g += s.volume * s.value * dw * e;
                             });
  return g;
}

/// Symmetric (momentum-conserving) gradient:
///   (1/V_i) sum_j (V_i^2 + V_j^2) (T_i + T_j)/2 dW/dr e_ij.
template <int D>
Vec<D> grad_symmetric(const FieldSample<D>& center, std::span<const FieldSample<D>> samples,
                      const KernelSpec& spec, GradientDiagnostics* diag = nullptr) {
  Vec<D> g = Vec<D>::Zero();
  const double vi2 = center.volume * center.volume;
  detail::visit_neighbors<D>(center, samples, spec, diag,
                             [&](const FieldSample<D>& s, double dw, const Vec<D>& e) {
                               g += (vi2 + s.volume * s.volume) * 0.5 * (center.value + s.value) * dw * e;
                             });
  return g / center.volume;
}

/// Anti-symmetric gradient:  sum_j V_j (T_j - T_i) dW/dr e_ij.  Exactly
/// filters constant fields on any particle arrangement.
template <int D>
Vec<D> grad_asymmetric(const FieldSample<D>& center, std::span<const FieldSample<D>> samples,
                       const KernelSpec& spec, GradientDiagnostics* diag = nullptr) {
  Vec<D> g = Vec<D>::Zero();
  detail::visit_neighbors<D>(center, samples, spec, diag,
                             [&](const FieldSample<D>& s, double dw, const Vec<D>& e) {
                               g += s.volume * (s.value - center.value) * dw * e;
                             });
  return g;
}

/// First-order consistent corrected gradient (CSPM or CSPH renormalization).
/// Both schemes solve the same moment system and reproduce affine fields
/// exactly on arbitrary particle clouds with full support; they differ only in
/// the order of the floating-point operations. If the renormalization matrix
/// condition number exceeds `cond_threshold` the operator falls back to
/// grad_asymmetric and counts the event.
template <int D>
Vec<D> grad_corrected(const FieldSample<D>& center, std::span<const FieldSample<D>> samples,
                      const KernelSpec& spec, CorrectionScheme scheme,
                      GradientDiagnostics* diag = nullptr, double cond_threshold = 1e12) {
  Mat<D> moment = Mat<D>::Zero();  // sum_j V_j (r_j - r_i) (x) grad_i W
  detail::visit_neighbors<D>(center, samples, spec, diag,
                             [&](const FieldSample<D>& s, double dw, const Vec<D>& e) {
                               moment += s.volume * (s.position - center.position) * (dw * e).transpose();
                             });

  Eigen::JacobiSVD<Mat<D>> svd(moment, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smin = svd.singularValues()(D - 1);
  const double smax = svd.singularValues()(0);
  if (!(smin > 0.0) || smax / smin > cond_threshold) {
    if (diag) ++diag->correction_fallbacks;
    return grad_asymmetric(center, samples, spec, nullptr);
  }

  if (scheme == CorrectionScheme::CSPM) {
    // solve  moment * g = sum_j V_j (T_j - T_i) grad_i W
    const Vec<D> rhs = grad_asymmetric(center, samples, spec, nullptr);
    return svd.solve(rhs);
  }
  // CSPH: apply the inverse to each kernel gradient inside the sum
  const Mat<D> correction = svd.solve(Mat<D>::Identity());
  Vec<D> g = Vec<D>::Zero();
  detail::visit_neighbors<D>(center, samples, spec, nullptr,
                             [&](const FieldSample<D>& s, double dw, const Vec<D>& e) {
                               g += s.volume * (s.value - center.value) * (correction * (dw * e));
                             });
  return g;
}

/// (I - n (x) n) grad: removes the component of `grad` along the unit normal.
/// A slightly non-unit normal (norm within [0.9, 1.1]) is normalized
/// internally; anything further off is a domain error.
template <int D>
Vec<D> tangential_projection(const Vec<D>& grad, const Vec<D>& normal) {
  const double n2 = normal.squaredNorm();
  const double n = std::sqrt(n2);
  if (n < 0.9 || n > 1.1) throw std::domain_error("tangential_projection: normal is not unit length");
  const Vec<D> nn = normal / n;
  return grad - nn.dot(grad) * nn;
}

}  // namespace meltsph

#endif
