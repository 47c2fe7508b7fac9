#pragma once

#include <string>
#include <vector>

#include "bergman/operators.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// Boundedness exponent threshold for 1 < p < infinity:
//   m > p (2+alpha)/(1+alpha) max{1, 1/(p-1)}.
double m_threshold(double p, double alpha);

struct SmallPThreshold {
  double threshold;      // max{(2+alpha)/(p delta) + 1, (1 + p delta)/(1+alpha) + 1}
  double beta_exponent;  // (2+alpha)/p - 2 + delta, the weight for ||S_z 1||_{m,beta}
};

// Small-exponent variant for 0 < p <= 1; the two branches meet at
// delta = (1+alpha)/p where the threshold is the sharp 2 + 1/(1+alpha).
SmallPThreshold m_threshold_small_p(double p, double alpha, double delta);

enum class PqRegime { Inapplicable, CaseA, CaseB };

struct PqClassification {
  PqRegime regime = PqRegime::Inapplicable;
  double window_lo = 0.0;  // p(2+alpha)/((p-1)(1+alpha))
  double window_hi = 0.0;  // p(2+alpha)/(1+alpha)
  std::string reason;
};

// p -> q boundedness regime for p > 2 and window_lo < m <= window_hi:
// case a when p >= m and q < m(1+alpha)/(2+alpha); case b when p < m and
// q < p/(2+alpha).
PqClassification pq_regime(double p, double q, double m, double alpha);

struct ScanSample {
  double angle = 0.0;
  double radius = 0.0;
  Complex berezin{0.0, 0.0};
  double norm_m = 0.0;     // ||S_z 1||_{m,alpha}
  double norm_1 = 0.0;     // ||S_z 1||_{1,alpha}
  double norm_half = 0.0;  // ||S_z 1||_{m/2,alpha}
  int truncation = 0;
  bool converged = true;
};

struct ScanVerdicts {
  double threshold = 0.0;
  double sup_norm_m = 0.0;
  bool norms_stable = false;
  bool hypothesis_met = false;
  bool compactness_evaluated = false;
  bool compact_consistent = false;
  double outer_over_inner = 0.0;  // max_ray |S~| at outermost / innermost radius
  bool monotone_outer = false;
  double fitted_rate = 0.0;  // slope of log max|S~| against log(1-radius), outer half
};

struct ScanReport {
  std::string op_name;
  double p = 2.0;
  double alpha = 0.0;
  double m = 0.0;
  int rays = 0;
  std::vector<double> radii;
  int n_rad = 0, n_ang = 0;
  std::vector<ScanSample> samples;  // grouped by ray, radius ascending
  ScanVerdicts verdicts;
  bool all_converged = true;

  std::string to_json() const;
  std::string to_csv() const;
  std::string verdict_line() const;
};

// Default boundary discretization: 8 rays, radii 1 - 2^{-j}, j = 1..7.
std::vector<double> default_scan_radii(int levels = 7);

// sup_z ||S_z 1||_{m,alpha} over the given samples plus the hypothesis
// verdict. Computes the full per-sample record (Berezin included).
ScanReport boundedness_report(const OperatorSpec& op, double p, double alpha, double m,
                              const std::vector<DiskPoint>& z_samples, const DiskGrid& grid,
                              int jobs = 0);

// Berezin boundary scan: rays x radii samples, per-sample Berezin values and
// ||S_z 1||_{t,alpha} for t in {m, 1, m/2}. The compactness verdict is
// "consistent with compact" iff the outermost max-over-rays |S~| falls below
// 5% of the innermost and the outer half decays monotonically; a finite scan
// cannot certify the limit, so verdicts are labels, not proofs.
ScanReport compactness_scan(const OperatorSpec& op, double p, double alpha, double m, int rays,
                            const std::vector<double>& radii, const DiskGrid& grid, int jobs = 0);

}  // namespace bergman
