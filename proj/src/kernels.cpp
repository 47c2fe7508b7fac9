#include "bergman/kernels.hpp"

namespace bergman {

Complex kernel(DiskPoint z, DiskPoint w, double alpha) {
  return detail::kernel_raw(z.value(), w.value(), alpha);
}

Complex normalized_kernel(DiskPoint z, DiskPoint w, double alpha) {
  double scale = std::pow(1.0 - z.abs_sq(), 0.5 * (2.0 + alpha));
  return scale * detail::kernel_raw(z.value(), w.value(), alpha);
}

double kernel_norm(DiskPoint z, double p, double alpha, const DiskGrid& grid) {
  if (!(p > 0.0)) fail(ErrorCode::InvalidArgument, "kernel_norm: p must be > 0");
  Complex zc = z.value();
  double half_exp = 0.5 * p * (2.0 + alpha);
  double integral = grid.integrate_real(
      [zc, half_exp](Complex w) { return std::pow(std::norm(1.0 - std::conj(zc) * w), -half_exp); });
  return std::pow(integral, 1.0 / p);
}

AdaptiveResult kernel_norm_adaptive(DiskPoint z, double p, double alpha, double tol) {
  if (!(p > 0.0)) fail(ErrorCode::InvalidArgument, "kernel_norm_adaptive: p must be > 0");
  Complex zc = z.value();
  double half_exp = 0.5 * p * (2.0 + alpha);
  AdaptiveResult res = integrate_adaptive_real(
      [zc, half_exp](Complex w) { return std::pow(std::norm(1.0 - std::conj(zc) * w), -half_exp); },
      alpha, tol);
  res.value = std::pow(res.value.real(), 1.0 / p);
  return res;
}

NormBounds kernel_norm_bounds(DiskPoint z, double p, double alpha) {
  if (!(p > 1.0)) fail(ErrorCode::InvalidArgument, "kernel_norm_bounds: requires p > 1");
  double c = (p - 1.0) * (2.0 + alpha);
  double one_minus = 1.0 - z.abs_sq();
  double lower = std::pow(one_minus, -(p - 1.0) / p * (2.0 + alpha));
  double constant =
      gamma_fn(2.0 + alpha) * gamma_fn(c) / std::pow(gamma_fn(0.5 * (2.0 + alpha + c)), 2);
  double upper = std::pow(constant * std::pow(one_minus, -(p - 1.0) * (2.0 + alpha)), 1.0 / p);
  return {lower, upper};
}

double monomial_norm_sq(int n, double alpha) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "monomial_norm_sq: n must be >= 0");
  // lgamma keeps the ratio stable for large n.
  return std::exp(std::lgamma(n + 1.0) + std::lgamma(alpha + 2.0) - std::lgamma(n + alpha + 2.0));
}

}  // namespace bergman
