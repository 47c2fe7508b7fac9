#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

// Weight, integrability exponent and (optional) test exponent governing
// every norm: dA_alpha(z) = (alpha+1)(1-|z|^2)^alpha dA(z), ||.||_{p,alpha}.
struct SpaceParams {
  double alpha = 0.0;  // > -1
  double p = 2.0;      // > 0
  std::optional<double> m;  // > 0 when present

  void validate() const {
    if (!(alpha > -1.0)) fail(ErrorCode::InvalidArgument, "SpaceParams: alpha must be > -1");
    if (!(p > 0.0)) fail(ErrorCode::InvalidArgument, "SpaceParams: p must be > 0");
    if (m && !(*m > 0.0)) fail(ErrorCode::InvalidArgument, "SpaceParams: m must be > 0");
  }
};

// Gamma on (0, 60]; arguments outside that range are rejected (no formula in
// the estimates needs them).
double gamma_fn(double x);

// Gauss-Jacobi rule for the weight (1-u)^alpha on (0,1): nodes/weights such
// that sum_i w_i q(u_i) = int_0^1 (1-u)^alpha q(u) du exactly for polynomials
// q of degree <= 2n-1. Sum of weights is 1/(alpha+1).
//
// Nodes are eigenvalues of the symmetric tridiagonal Jacobi matrix of the
// weight; weights come from the Christoffel function (inverse sum of squared
// orthonormal polynomials), which is stable for any alpha > -1.
class RadialJacobiRule {
 public:
  RadialJacobiRule(double alpha, int n);

  double alpha() const { return alpha_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }      // u_i in (0,1)
  const std::vector<double>& weights() const { return weights_; }  // sum 1/(alpha+1)

 private:
  double alpha_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Tensor rule on the unit disk against dA_alpha: radial Gauss-Jacobi in
// u = |w|^2 composed with the N_theta-point uniform (trapezoid) angular rule,
//   int f dA_alpha ~= (alpha+1) sum_i w_i (1/N_theta) sum_l f(sqrt(u_i) e^{i theta_l}).
// The substitution u = |w|^2 makes dA_alpha = (alpha+1)(1-u)^alpha du dtheta/(2 pi),
// so the Jacobi rule absorbs the (1-u)^alpha singularity for alpha in (-1,0).
class DiskGrid {
 public:
  DiskGrid(double alpha, int n_rad, int n_ang);

  double alpha() const { return alpha_; }
  int n_rad() const { return n_rad_; }
  int n_ang() const { return n_ang_; }
  int node_count() const { return n_rad_ * n_ang_; }

  const std::vector<double>& radial_nodes() const { return rule_.nodes(); }
  const std::vector<double>& radial_weights() const { return rule_.weights(); }

  Complex node(int i, int l) const {
    return Complex(radius_[i] * cos_[l], radius_[i] * sin_[l]);
  }
  // Combined weight of node (i, l): (alpha+1) w_i / n_ang.
  double node_weight(int i) const { return combined_weight_[i]; }

  // Fixed-order (node-index) accumulation; bit-identical across repeated
  // calls with the same integrand. Non-finite node values abort with the
  // offending node named.
  template <class F>
  Complex integrate(F&& f) const {
    Complex acc(0.0, 0.0);
    for (int i = 0; i < n_rad_; ++i) {
      Complex ring(0.0, 0.0);
      for (int l = 0; l < n_ang_; ++l) {
        Complex v = f(node(i, l));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail_node(i, l);
        ring += v;
      }
      acc += combined_weight_[i] * ring;
    }
    return acc;
  }

  template <class F>
  double integrate_real(F&& f) const {
    double acc = 0.0;
    for (int i = 0; i < n_rad_; ++i) {
      double ring = 0.0;
      for (int l = 0; l < n_ang_; ++l) {
        double v = f(node(i, l));
        if (!std::isfinite(v)) fail_node(i, l);
        ring += v;
      }
      acc += combined_weight_[i] * ring;
    }
    return acc;
  }

 private:
  [[noreturn]] void fail_node(int i, int l) const;

  double alpha_;
  int n_rad_, n_ang_;
  RadialJacobiRule rule_;
  std::vector<double> radius_;           // sqrt(u_i)
  std::vector<double> cos_, sin_;        // angle tables
  std::vector<double> combined_weight_;  // (alpha+1) w_i / n_ang
};

// Default working resolution resolves kernels up to |z| ~ 0.995.
inline constexpr int kDefaultRadial = 256;
inline constexpr int kDefaultAngular = 512;
inline constexpr int kMaxRadial = 8192;
inline constexpr int kMaxAngular = 16384;

// Shared immutable grids, keyed by (alpha, n_rad, n_ang).
std::shared_ptr<const DiskGrid> get_grid(double alpha, int n_rad = kDefaultRadial,
                                         int n_ang = kDefaultAngular);

struct AdaptiveResult {
  Complex value{0.0, 0.0};
  double err_est = 0.0;
  bool converged = false;
  int n_rad = 0;  // resolution of the accepted level
  int n_ang = 0;
};

// Doubles n_rad and n_ang until two successive levels differ by less than
// tol (scaled by |value| when that exceeds 1) or the resolution cap is hit;
// err_est is the last difference.
AdaptiveResult integrate_adaptive(const std::function<Complex(Complex)>& f, double alpha,
                                  double tol, int start_rad = 64, int start_ang = 128);

AdaptiveResult integrate_adaptive_real(const std::function<double(Complex)>& f, double alpha,
                                       double tol, int start_rad = 64, int start_ang = 128);

}  // namespace bergman
