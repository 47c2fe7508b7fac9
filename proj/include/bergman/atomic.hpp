#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bergman/kernels.hpp"
#include "bergman/lattice.hpp"

namespace bergman {

// Admissibility of the atom exponent: b > max{1, 1/p} + (alpha+1)/p.
bool atom_admissible(double b, double p, double alpha);

// f_k(w) = (1-|a_k|^2)^{(pb-2-alpha)/p} / (1 - w conj(a_k))^b. For b = 2+alpha
// this is (1-|a_k|^2)^{(p-1)(2+alpha)/p} K_{a_k}(w).
Complex atom(const Lattice& lat, int k, double b, double p, double alpha, Complex w);

// Tf(z) = sum_k A_alpha(D_k) f(a_k) / (1 - conj(a_k) z)^{2+alpha}, the
// lattice-discretized Bergman projection. Finite truncated sum, fixed order.
Complex sampling_apply(const Lattice& lat, const CellMeasures& measures,
                       const std::function<Complex(Complex)>& f, DiskPoint z);

struct SamplingSolution {
  std::vector<Complex> g;     // recovered samples g(a_k)
  double residual = 0.0;      // ||M g - f||_2 at the collocation points
  double rhs_norm = 0.0;      // ||f||_2 at the collocation points
  bool ill_conditioned = false;  // residual > 1e-4 * rhs_norm
};

// Inverts T by collocation at the lattice centers: solves
// [T g](a_j) = f(a_j) by ridge-regularized least squares. A residual above
// 1e-4 ||f|| flags the solve as ill-conditioned (the practical signal that r
// is above the admissible lattice radius).
class SamplingSolver {
 public:
  SamplingSolver(std::shared_ptr<const Lattice> lat, double alpha, double reg = 1e-10,
                 int jobs = 0);
  ~SamplingSolver();
  SamplingSolver(SamplingSolver&&) noexcept;
  SamplingSolver& operator=(SamplingSolver&&) noexcept;

  const Lattice& lattice() const { return *lat_; }
  std::shared_ptr<const Lattice> lattice_ptr() const { return lat_; }
  double alpha() const { return alpha_; }
  const CellMeasures& measures() const { return *measures_; }

  SamplingSolution solve(const std::vector<Complex>& f_at_centers) const;
  SamplingSolution solve_function(const std::function<Complex(Complex)>& f) const;

 private:
  struct Impl;
  std::shared_ptr<const Lattice> lat_;
  double alpha_;
  double reg_;
  std::unique_ptr<const CellMeasures> measures_;
  std::unique_ptr<Impl> impl_;
};

SamplingSolution invert_sampling(const Lattice& lat, double alpha,
                                 const std::function<Complex(Complex)>& f, double reg = 1e-10);

// Atomic expansion over a lattice: f ~ sum_k c_k f_k with the kernel-type
// atoms above.
struct AtomicExpansion {
  std::shared_ptr<const Lattice> lattice;
  double b = 2.0;
  double p = 2.0;
  double alpha = 0.0;
  std::vector<Complex> coeffs;
  double residual = 0.0;
  bool ill_conditioned = false;

  double coeff_norm() const;  // (sum |c_k|^p)^{1/p}
  // Versioned text record: (p, alpha, b, lattice reference), then
  // k, Re c_k, Im c_k per line.
  std::string export_text(const std::string& lattice_ref) const;
};

// Coefficients via invert_sampling and
//   c_k = A_alpha(D_k) g(a_k) / (1-|a_k|^2)^{(p-1)(2+alpha)/p},
// with b = 2+alpha. Requires p > 1 (the coefficient formula's range).
AtomicExpansion decompose(std::shared_ptr<const Lattice> lat,
                          const std::function<Complex(Complex)>& f, double p, double alpha,
                          double reg = 1e-10);
AtomicExpansion decompose(const SamplingSolver& solver,
                          const std::function<Complex(Complex)>& f, double p);

Complex reconstruct(const AtomicExpansion& exp, Complex w);

// Truncated coefficient mass S_n = sum_{|a_k| <= R} |c_{k,n}|^p for the
// weakly-null test sequence f_n = K_{z_n} / ||K_{z_n}||_{p,alpha}.
std::vector<double> weak_null_coeff_decay(std::shared_ptr<const Lattice> lat, double p,
                                          double alpha, const std::vector<DiskPoint>& z_seq,
                                          double R);

}  // namespace bergman
