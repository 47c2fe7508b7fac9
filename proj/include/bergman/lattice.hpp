#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// Truncated r-lattice in the Bergman metric: centers {a_k} inside
// |w| <= r_max, pairwise beta-separated by at least r/2, whose Bergman
// disks D(a_k, r) cover {|w| <= r_max}. Centers are ordered by increasing
// modulus, then by angle; the first center is the origin.
class Lattice {
 public:
  static constexpr int kMaxCenters = 1000000;

  // Greedy maximal r/2-separated set over a hyperbolic-area-uniform
  // candidate cloud. Maximality of the accepted set makes the covering
  // radius at most r/2 plus the candidate fill distance (r/4 ring pitch),
  // comfortably below r.
  static Lattice build(double r, double r_max);

  // Wraps an explicit center list (imports, adversarial tests). No
  // covering/separation guarantees; use verify_lattice.
  static Lattice from_centers(double r, double r_max, std::vector<Complex> centers);

  double r() const { return r_; }
  double r_max() const { return r_max_; }
  int size() const { return static_cast<int>(centers_.size()); }
  Complex center(int k) const { return centers_[k]; }
  const std::vector<Complex>& centers() const { return centers_; }

  // Max overlap count of the dilated disks {D(a_k, 2r)} over a fixed
  // deterministic sample; finite for any r by hyperbolic volume counting.
  int multiplicity() const { return multiplicity_; }

  // k = argmin_k beta(w, a_k), ties to the smaller index. Rejects |w| > r_max.
  int cell_assign(Complex w) const;

  // Versioned text record: header (r, r_max, count), then one center per
  // line as two decimal floats with 17 significant digits.
  std::string export_text() const;
  static Lattice import_text(const std::string& text);

 private:
  Lattice(double r, double r_max, std::vector<Complex> centers);

  double r_;
  double r_max_;
  std::vector<Complex> centers_;
  int multiplicity_ = 0;
};

struct LatticeReport {
  double worst_gap = 0.0;       // max over samples of min_k beta(w, a_k)
  double min_separation = 0.0;  // min over pairs of beta(a_i, a_j)
  int multiplicity = 0;
  bool covering_pass = false;   // worst_gap < r + 1e-9
  bool separation_pass = false; // min_separation >= r/2
  bool pass = false;
};

// Seeded check of the lattice invariants on n_samples points (half
// area-uniform, half boundary-biased).
LatticeReport verify_lattice(const Lattice& lat, int n_samples, std::uint64_t seed, int jobs = 0);

// Quadrature masses A_alpha(D_k) of the cells induced by cell_assign,
// computed on a Gauss-Legendre grid over {|w| <= r_max} with the weight
// folded into the integrand (no endpoint singularity since r_max < 1).
// Their sum is the dA_alpha mass of the ball, 1 - (1 - r_max^2)^{alpha+1},
// independent of the assignment.
class CellMeasures {
 public:
  CellMeasures(const Lattice& lat, double alpha, int n_rad = kDefaultRadial,
               int n_ang = kDefaultAngular, int jobs = 0);

  double alpha() const { return alpha_; }
  const std::vector<double>& values() const { return values_; }
  double value(int k) const { return values_[k]; }
  double total() const { return total_; }

 private:
  double alpha_;
  std::vector<double> values_;
  double total_ = 0.0;
};

}  // namespace bergman
