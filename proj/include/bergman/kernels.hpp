#pragma once

#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// Reproducing kernel K_z(w) = (1 - conj(z) w)^{-(2+alpha)}, principal branch.
// 1 - conj(z) w avoids the closed negative real axis since |conj(z) w| < 1,
// so the branch is continuous on the bidisk.
Complex kernel(DiskPoint z, DiskPoint w, double alpha);

// k_z = (1-|z|^2)^{(2+alpha)/2} K_z, unit 2-norm.
Complex normalized_kernel(DiskPoint z, DiskPoint w, double alpha);

// ||K_z||_{p,alpha} by quadrature on the given grid.
double kernel_norm(DiskPoint z, double p, double alpha, const DiskGrid& grid);

// Adaptive variant; the result carries the convergence flag.
AdaptiveResult kernel_norm_adaptive(DiskPoint z, double p, double alpha, double tol);

struct NormBounds {
  double lower;
  double upper;
};

// Two-sided bounds on ||K_z||_{p,alpha} for p > 1 with c = (p-1)(2+alpha):
//   (1-|z|^2)^{-(p-1)(2+alpha)/p}
//     <= ||K_z||_{p,alpha}
//     <= [G(2+alpha) G(c) / G((2+alpha+c)/2)^2 (1-|z|^2)^{-(p-1)(2+alpha)}]^{1/p}.
NormBounds kernel_norm_bounds(DiskPoint z, double p, double alpha);

// gamma_n = ||w^n||_{2,alpha}^2 = G(n+1) G(alpha+2) / G(n+alpha+2).
double monomial_norm_sq(int n, double alpha);

namespace detail {

inline Complex kernel_raw(Complex z, Complex w, double alpha) {
  return std::pow(1.0 - std::conj(z) * w, -(2.0 + alpha));
}

// |K_z(w)|^p through one real pow.
inline double kernel_abs_pow(Complex z, Complex w, double p_times_order_half) {
  return std::pow(std::norm(1.0 - std::conj(z) * w), -p_times_order_half);
}

}  // namespace detail

}  // namespace bergman
