#include "bergman/quadrature.hpp"

#include <Eigen/Dense>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace bergman {

double gamma_fn(double x) {
  if (!(x > 0.0)) fail(ErrorCode::InvalidArgument, "gamma_fn: argument must be positive");
  if (!(x <= 60.0)) fail(ErrorCode::InvalidArgument, "gamma_fn: argument must be <= 60");
  return std::tgamma(x);
}

namespace {

// Recurrence coefficients of the monic orthogonal polynomials for the Jacobi
// weight (1-x)^a (1+x)^b on [-1,1] (Gautschi's r_jacobi). We only need b = 0.
struct JacobiRecurrence {
  std::vector<double> diag;     // alpha_k
  std::vector<double> beta;     // beta_k, beta_0 = mu0 = total mass
};

JacobiRecurrence jacobi_recurrence(double a, double b, int n) {
  JacobiRecurrence rec;
  rec.diag.resize(n);
  rec.beta.resize(n);
  double ab = a + b;
  rec.diag[0] = (b - a) / (ab + 2.0);
  rec.beta[0] = std::exp((ab + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                         std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  for (int k = 1; k < n; ++k) {
    double t = 2.0 * k + ab;
    rec.diag[k] = (b * b - a * a) / (t * (t + 2.0));
    if (k == 1) {
      rec.beta[k] = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      rec.beta[k] = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t * t - 1.0));
    }
  }
  return rec;
}

}  // namespace

RadialJacobiRule::RadialJacobiRule(double alpha, int n) : alpha_(alpha) {
  if (!(alpha > -1.0)) fail(ErrorCode::InvalidArgument, "RadialJacobiRule: alpha must be > -1");
  if (n < 1) fail(ErrorCode::InvalidArgument, "RadialJacobiRule: need at least one node");

  JacobiRecurrence rec = jacobi_recurrence(alpha, 0.0, n);

  Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(rec.diag.data(), n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(rec.beta[k]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::Internal, "RadialJacobiRule: tridiagonal eigensolver failed");
  Eigen::VectorXd x = solver.eigenvalues();  // ascending in (-1, 1)

  // w_i = 1 / sum_j p_j(x_i)^2 over the orthonormal polynomials p_j.
  nodes_.resize(n);
  weights_.resize(n);
  double mu0 = rec.beta[0];
  for (int i = 0; i < n; ++i) {
    double pm = 0.0;
    double pc = 1.0 / std::sqrt(mu0);
    double sum = pc * pc;
    for (int j = 1; j < n; ++j) {
      double sb = std::sqrt(rec.beta[j]);
      double pn = ((x[i] - rec.diag[j - 1]) * pc - (j > 1 ? std::sqrt(rec.beta[j - 1]) : 0.0) * pm) / sb;
      pm = pc;
      pc = pn;
      sum += pc * pc;
    }
    // Map x in (-1,1) to u = (1+x)/2 in (0,1); the weight picks up 2^{-(a+1)}.
    nodes_[i] = 0.5 * (1.0 + x[i]);
    weights_[i] = std::exp2(-(alpha + 1.0)) / sum;
  }
  // Pin the total mass to 1/(alpha+1) exactly; the Christoffel sums carry a
  // few ulp of drift for alpha near -1.
  double total = 0.0;
  for (double w : weights_) total += w;
  double rescale = 1.0 / ((alpha + 1.0) * total);
  for (double& w : weights_) w *= rescale;
}

DiskGrid::DiskGrid(double alpha, int n_rad, int n_ang)
    : alpha_(alpha), n_rad_(n_rad), n_ang_(n_ang), rule_(alpha, n_rad) {
  if (n_ang < 8) fail(ErrorCode::InvalidArgument, "DiskGrid: need at least 8 angles");
  radius_.resize(n_rad);
  combined_weight_.resize(n_rad);
  for (int i = 0; i < n_rad; ++i) {
    radius_[i] = std::sqrt(rule_.nodes()[i]);
    combined_weight_[i] = (alpha + 1.0) * rule_.weights()[i] / n_ang;
  }
  cos_.resize(n_ang);
  sin_.resize(n_ang);
  for (int l = 0; l < n_ang; ++l) {
    double theta = 2.0 * std::numbers::pi * l / n_ang;
    cos_[l] = std::cos(theta);
    sin_[l] = std::sin(theta);
  }
}

void DiskGrid::fail_node(int i, int l) const {
  std::ostringstream os;
  os << "DiskGrid::integrate: non-finite integrand at node (radial " << i << ", angular " << l
     << "), w = " << node(i, l).real() << " + " << node(i, l).imag() << "i";
  fail(ErrorCode::InvalidArgument, os.str());
}

namespace {
std::mutex grid_cache_mutex;
std::map<std::tuple<double, int, int>, std::shared_ptr<const DiskGrid>> grid_cache;
}  // namespace

std::shared_ptr<const DiskGrid> get_grid(double alpha, int n_rad, int n_ang) {
  std::lock_guard<std::mutex> lock(grid_cache_mutex);
  auto key = std::make_tuple(alpha, n_rad, n_ang);
  auto it = grid_cache.find(key);
  if (it != grid_cache.end()) return it->second;
  auto grid = std::make_shared<const DiskGrid>(alpha, n_rad, n_ang);
  grid_cache.emplace(key, grid);
  return grid;
}

namespace {

template <class Value, class Integrate>
AdaptiveResult adapt(double tol, int start_rad, int start_ang, Integrate&& level_value) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "integrate_adaptive: tol must be positive");
  AdaptiveResult res;
  int n_rad = start_rad, n_ang = start_ang;
  Complex prev = level_value(n_rad, n_ang);
  res.value = prev;
  res.n_rad = n_rad;
  res.n_ang = n_ang;
  while (n_rad < kMaxRadial) {
    n_rad = std::min(2 * n_rad, kMaxRadial);
    n_ang = std::min(2 * n_ang, kMaxAngular);
    Complex cur = level_value(n_rad, n_ang);
    res.err_est = std::abs(cur - prev);
    res.value = cur;
    res.n_rad = n_rad;
    res.n_ang = n_ang;
    // tol scales with the magnitude once |value| exceeds 1, so large
    // integrals are not held to an unreachable absolute floor.
    if (res.err_est < tol * std::max(1.0, std::abs(cur))) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  res.converged = false;  // cap reached; value returned with err_est > tol
  return res;
}

}  // namespace

AdaptiveResult integrate_adaptive(const std::function<Complex(Complex)>& f, double alpha,
                                  double tol, int start_rad, int start_ang) {
  return adapt<Complex>(tol, start_rad, start_ang, [&](int nr, int na) {
    return get_grid(alpha, nr, na)->integrate(f);
  });
}

AdaptiveResult integrate_adaptive_real(const std::function<double(Complex)>& f, double alpha,
                                       double tol, int start_rad, int start_ang) {
  return adapt<Complex>(tol, start_rad, start_ang, [&](int nr, int na) {
    return Complex(get_grid(alpha, nr, na)->integrate_real(f), 0.0);
  });
}

}  // namespace bergman
