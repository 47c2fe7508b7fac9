#include "bergman/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/report.hpp"

namespace bergman {

EstimateCase classify_estimate_case(double c, double t) {
  if (!(t > -1.0)) fail(ErrorCode::InvalidArgument, "estimate case: t must be > -1");
  EstimateRegime regime =
      c < 0.0 ? EstimateRegime::NegativeC : (c > 0.0 ? EstimateRegime::PositiveC : EstimateRegime::ZeroC);
  return {c, t, regime};
}

IctResult I_ct(DiskPoint z, double c, double t, double tol) {
  classify_estimate_case(c, t);
  double a = z.abs();  // the integral is radially symmetric in z
  double half_exp = 0.5 * (2.0 + t + c);
  // dA = dA_t / ((t+1)(1-u)^t): run the weighted grid and undo the (t+1).
  AdaptiveResult res = integrate_adaptive_real(
      [a, half_exp](Complex w) {
        double m2 = std::norm(1.0 - a * w);
        return std::pow(m2, -half_exp);
      },
      t, tol * (t + 1.0));
  IctResult out;
  out.value = res.value.real() / (t + 1.0);
  out.err_est = res.err_est / (t + 1.0);
  out.converged = res.converged;
  return out;
}

namespace {

// log(1/(1-x))/x with the continuous extension at x = 0.
double log_factor(double x) {
  if (x < 1e-8) return 1.0 + 0.5 * x + x * x / 3.0;
  return -std::log1p(-x) / x;
}

}  // namespace

Bracket I_ct_bounds(DiskPoint z, double c, double t) {
  EstimateCase ec = classify_estimate_case(c, t);
  double g1t = gamma_fn(1.0 + t);
  switch (ec.regime) {
    case EstimateRegime::NegativeC: {
      double lower = g1t / gamma_fn(2.0 + t);
      double upper = g1t * gamma_fn(-c) / std::pow(gamma_fn(0.5 * (2.0 + t - c)), 2);
      return {lower, upper};
    }
    case EstimateRegime::PositiveC: {
      double factor = std::pow(1.0 - z.abs_sq(), -c);
      double lower = g1t / gamma_fn(2.0 + t) * factor;
      double upper = g1t * gamma_fn(c) / std::pow(gamma_fn(0.5 * (2.0 + t + c)), 2) * factor;
      return {lower, upper};
    }
    case EstimateRegime::ZeroC: {
      double lf = log_factor(z.abs_sq());
      double lower = g1t / gamma_fn(1.0 + 0.5 * t) * lf;
      double upper = lf / (1.0 + t);
      return {lower, upper};
    }
  }
  fail(ErrorCode::Internal, "I_ct_bounds: unreachable");
}

LatticeSumResult lattice_sum(const Lattice& lat, double t1, double t2, DiskPoint w) {
  if (!(t1 > 1.0))
    fail(ErrorCode::InvalidArgument, "lattice_sum: t1 must exceed 1 (series need not converge)");
  Complex wc = w.value();
  double acc = 0.0;
  for (const Complex& a : lat.centers()) {
    double one_minus = 1.0 - std::norm(a);
    acc += std::pow(one_minus, t1) * std::pow(std::norm(1.0 - std::conj(a) * wc), -0.5 * t2);
  }
  // Density of centers per unit hyperbolic area, then compare the lost
  // |a| > r_max part with the corresponding integral.
  double r2 = lat.r_max() * lat.r_max();
  double density = lat.size() / (r2 / (1.0 - r2));
  double tail_radial = density * std::pow(1.0 - r2, t1 - 1.0) / (t1 - 1.0);
  double tail_kernel = t2 >= 0.0 ? std::pow(1.0 - w.abs(), -t2) : std::pow(2.0, -t2);
  return {acc, tail_radial * tail_kernel};
}

std::string EnvelopeReport::csv() const {
  CsvWriter csv({"regime", "t1", "t2", "radius", "L", "envelope", "ratio"});
  for (const EnvelopeRow& row : rows) {
    csv.row({regime, format_double(t1), format_double(t2), format_double(row.radius),
             format_double(row.sup_L), format_double(row.envelope), format_double(row.sup_ratio)});
  }
  return csv.take();
}

EnvelopeReport lattice_sum_envelope_check(const Lattice& lat, double t1, double t2,
                                          const std::vector<double>& radii, int n_angles) {
  if (!(t1 > 1.0)) fail(ErrorCode::InvalidArgument, "envelope check: t1 must exceed 1");
  if (radii.size() < 2) fail(ErrorCode::InvalidArgument, "envelope check: need at least two radii");

  EnvelopeReport report;
  report.t1 = t1;
  report.t2 = t2;
  bool log_regime = std::abs(t2 - t1) < 1e-12;
  report.regime = log_regime ? "t2=t1" : (t2 > t1 ? "t2>t1" : "t2<t1");

  std::vector<double> sorted = radii;
  std::sort(sorted.begin(), sorted.end());
  for (double radius : sorted) {
    if (log_regime && radius < 0.1) continue;  // log envelope degenerates at the center
    double one_minus = 1.0 - radius * radius;
    double envelope = 1.0;
    if (log_regime)
      envelope = std::log(1.0 / one_minus);
    else if (t2 > t1)
      envelope = std::pow(one_minus, t1 - t2);
    double sup_L = 0.0;
    for (int l = 0; l < n_angles; ++l) {
      double theta = 2.0 * std::numbers::pi * l / n_angles;
      DiskPoint w(radius * std::cos(theta), radius * std::sin(theta));
      sup_L = std::max(sup_L, lattice_sum(lat, t1, t2, w).value);
    }
    report.rows.push_back({radius, sup_L, envelope, sup_L / envelope});
  }
  if (report.rows.size() < 2)
    fail(ErrorCode::InvalidArgument, "envelope check: not enough usable radii");

  bool finite = true;
  for (const EnvelopeRow& row : report.rows) finite = finite && std::isfinite(row.sup_ratio);
  double last = report.rows.back().sup_ratio;
  double prev = report.rows[report.rows.size() - 2].sup_ratio;
  report.growth = last / prev;
  report.pass = finite && report.growth <= 1.2;
  return report;
}

}  // namespace bergman
