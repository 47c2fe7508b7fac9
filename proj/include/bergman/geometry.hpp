#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "bergman/errors.hpp"

namespace bergman {

using Complex = std::complex<double>;

// Strictly interior point of the unit disk. Construction rejects
// |z| >= 1 - 1e-15; boundary limits are always taken through sequences
// of interior points.
class DiskPoint {
 public:
  static constexpr double kMaxModulus = 1.0 - 1e-15;

  DiskPoint() : value_(0.0, 0.0) {}
  explicit DiskPoint(Complex value) : value_(value) {
    if (!(std::abs(value) < kMaxModulus)) {
      fail(ErrorCode::Domain, "DiskPoint: |z| must be < 1 - 1e-15, got |z| = " +
                                  std::to_string(std::abs(value)));
    }
  }
  DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

  Complex value() const { return value_; }
  double abs() const { return std::abs(value_); }
  double abs_sq() const { return std::norm(value_); }

 private:
  Complex value_;
};

// Euclidean disk contained in the closed unit disk.
struct EuclideanDisk {
  Complex center;
  double radius;

  EuclideanDisk(Complex c, double rad) : center(c), radius(rad) {
    if (!(rad > 0.0)) fail(ErrorCode::InvalidArgument, "EuclideanDisk: radius must be positive");
    if (std::abs(c) + rad > 1.0 + 1e-12)
      fail(ErrorCode::Internal, "EuclideanDisk: disk leaves the closed unit disk");
  }
  bool contains(Complex w) const { return std::abs(w - center) < radius; }
};

// phi_z(w) = (z - w) / (1 - conj(z) w), the involution swapping 0 and z.
DiskPoint mobius(DiskPoint z, DiskPoint w);

// rho(z, w) = |z - w| / |1 - z conj(w)|, symmetric, in [0, 1).
double pseudo_hyperbolic(DiskPoint z, DiskPoint w);

// beta(z, w) = (1/2) log((1 + rho)/(1 - rho)). Saturates to +infinity once
// rho >= 1 - 1e-15 so boundary scans never abort.
double bergman_metric(DiskPoint z, DiskPoint w);

// Euclidean realization of the Bergman disk D(a, r), with s = tanh r:
//   c0 = (1 - s^2) a / (1 - s^2 |a|^2),  r0 = (1 - |a|^2) s / (1 - s^2 |a|^2).
EuclideanDisk bergman_disk(DiskPoint a, double r);

namespace detail {

// Unchecked fast paths for grid loops; callers guarantee |z|, |w| < 1.
inline double pseudo_hyperbolic_sq(Complex z, Complex w) {
  return std::norm(z - w) / std::norm(1.0 - z * std::conj(w));
}

inline double bergman_metric_raw(Complex z, Complex w) {
  double rho = std::sqrt(pseudo_hyperbolic_sq(z, w));
  if (rho >= 1.0 - 1e-15) return std::numeric_limits<double>::infinity();
  return 0.5 * std::log((1.0 + rho) / (1.0 - rho));
}

}  // namespace detail

}  // namespace bergman
