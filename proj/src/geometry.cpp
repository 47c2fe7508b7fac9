#include "bergman/geometry.hpp"

namespace bergman {

DiskPoint mobius(DiskPoint z, DiskPoint w) {
  Complex denom = 1.0 - std::conj(z.value()) * w.value();
  return DiskPoint((z.value() - w.value()) / denom);
}

double pseudo_hyperbolic(DiskPoint z, DiskPoint w) {
  return std::sqrt(detail::pseudo_hyperbolic_sq(z.value(), w.value()));
}

double bergman_metric(DiskPoint z, DiskPoint w) {
  return detail::bergman_metric_raw(z.value(), w.value());
}

EuclideanDisk bergman_disk(DiskPoint a, double r) {
  if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "bergman_disk: r must be positive");
  double s = std::tanh(r);
  double s2 = s * s;
  double a2 = a.abs_sq();
  double denom = 1.0 - s2 * a2;
  return EuclideanDisk((1.0 - s2) / denom * a.value(), (1.0 - a2) / denom * s);
}

}  // namespace bergman
