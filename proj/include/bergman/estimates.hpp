#pragma once

#include <string>
#include <vector>

#include "bergman/lattice.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// Regime of the two-sided bound on I_{c,t}, split on the sign of c.
enum class EstimateRegime { NegativeC, PositiveC, ZeroC };

struct EstimateCase {
  double c;
  double t;  // > -1
  EstimateRegime regime;
};

EstimateCase classify_estimate_case(double c, double t);

struct IctResult {
  double value = 0.0;
  double err_est = 0.0;
  bool converged = false;
};

// I_{c,t}(z) = int_D (1-|w|^2)^t / |1-z conj(w)|^{2+t+c} dA(w), plain
// (unweighted) normalized area measure. Radially symmetric in z. Computed
// adaptively with the radial weight (1-u)^t absorbed by the Jacobi rule.
IctResult I_ct(DiskPoint z, double c, double t, double tol = 1e-10);

struct Bracket {
  double lower;
  double upper;
};

// Two-sided bounds on I_{c,t}(z) itself (per-case normalization unfolded):
//   c < 0: G(1+t)/G(2+t) <= I <= G(1+t)G(-c)/G((2+t-c)/2)^2,
//   c > 0: the same constants divided by (1-|z|^2)^c with G(c), G((2+t+c)/2),
//   c = 0: [G(1+t)/G(1+t/2)] L(z) <= I <= L(z)/(1+t),
// where L(z) = log(1/(1-|z|^2))/|z|^2, extended by continuity (L(0) = 1).
Bracket I_ct_bounds(DiskPoint z, double c, double t);

struct LatticeSumParams {
  double t1;  // > 1
  double t2;
};

struct LatticeSumResult {
  double value = 0.0;
  // Integral-comparison estimate of the part lost to the |a_k| <= r_max
  // truncation, using the measured center density.
  double tail_estimate = 0.0;
};

// L(w) = sum_k (1-|a_k|^2)^{t1} / |1 - conj(a_k) w|^{t2} over the truncated
// lattice, fixed summation order. Rejects t1 <= 1.
LatticeSumResult lattice_sum(const Lattice& lat, double t1, double t2, DiskPoint w);

struct EnvelopeRow {
  double radius;
  double sup_L;       // sup over sampled angles at this radius
  double envelope;    // regime envelope evaluated at the radius
  double sup_ratio;   // sup of L / envelope
};

struct EnvelopeReport {
  std::string regime;  // "t2>t1", "t2=t1", "t2<t1"
  double t1 = 0.0, t2 = 0.0;
  std::vector<EnvelopeRow> rows;
  double growth = 0.0;  // sup_ratio(last) / sup_ratio(second to last)
  bool pass = false;    // all ratios finite and growth <= 1.2
  std::string csv() const;  // columns: regime,t1,t2,radius,L,envelope,ratio
};

// Measures the empirical envelope constant sup_w L(w)/envelope(w) on rings of
// the given radii (n_angles samples each). The t2 = t1 regime uses the log
// envelope and skips radii below 0.1 where that envelope degenerates.
EnvelopeReport lattice_sum_envelope_check(const Lattice& lat, double t1, double t2,
                                          const std::vector<double>& radii, int n_angles = 16);

}  // namespace bergman
