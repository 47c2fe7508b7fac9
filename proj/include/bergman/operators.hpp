#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bergman/kernels.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

// Series evaluations refuse to grow beyond this length; hitting the cap
// surfaces as a non-converged flag rather than silent truncation error.
inline constexpr int kSeriesCap = 16384;

// Smallest series length N with the geometric tail bound
// sup|coef| q^{N+1} (N+2)^{1+alpha} / ((1-q)^{2+alpha} G(2+alpha)) below tol.
struct TruncationChoice {
  int n = 0;
  bool capped = false;
};
TruncationChoice required_truncation(double q, double alpha, double tol = 1e-13);

struct ToeplitzSymbol {
  std::string name;                          // "" for ad-hoc symbols
  std::function<Complex(Complex)> eval;      // phi(u)
  bool radial = false;                       // phi(u) = profile(|u|^2)
  std::function<double(double)> profile;     // radial profile g on [0,1)
  double radial_power = -1.0;                // g(u) = (1-u)^k when k >= 0 (closed moments)
  bool halfdisk = false;                     // indicator Re u > 0 (closed matrix elements)
};

// Library symbols addressable by name: "one", "oneminusr2",
// "halfdisk", "radialpow:k".
ToeplitzSymbol toeplitz_symbol(const std::string& name);

struct DiagonalSpec {
  std::string name;
  std::function<double(int)> lambda;  // |lambda_n| <= sup_bound
  double sup_bound = 1.0;
  int truncation = 200;  // the operator is the finite sum over n <= truncation
};

struct FiniteRankTerm {
  std::string name;
  std::function<Complex(Complex)> g;  // f -> <f, g> h
  std::function<Complex(Complex)> h;
};

struct IntegralKernelSpec {
  std::string name;
  std::function<Complex(Complex, Complex)> H;  // (Sf)(w) = int H(w,u) f(u) dA_alpha(u)
};

// Tagged description of a concrete operator, rich enough to evaluate
// (S K_z)(w). Operators are specifications, not matrices; every derived
// quantity is a kernel/integral functional of the spec.
class OperatorSpec {
 public:
  enum class Kind { Identity, Toeplitz, Diagonal, FiniteRank, IntegralKernel };

  static OperatorSpec identity();
  static OperatorSpec toeplitz(ToeplitzSymbol symbol);
  static OperatorSpec diagonal(DiagonalSpec spec);
  static OperatorSpec finite_rank(std::vector<FiniteRankTerm> terms);
  static OperatorSpec integral_kernel(IntegralKernelSpec spec);

  // CLI micro-syntax: "identity", "toeplitz:<symbol>", "diagonal:one",
  // "diagonal:inv_n", "diagonal:const:<c>", "rankone".
  static OperatorSpec from_selector(const std::string& selector);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const ToeplitzSymbol& toeplitz_spec() const { return toeplitz_; }
  const DiagonalSpec& diagonal_spec() const { return diagonal_; }
  const std::vector<FiniteRankTerm>& finite_rank_terms() const { return finite_rank_; }
  const IntegralKernelSpec& integral_kernel_spec() const { return integral_kernel_; }

  // Copy with a raised diagonal truncation (used by boundary scans).
  OperatorSpec with_truncation(int n) const;

 private:
  OperatorSpec() = default;
  Kind kind_ = Kind::Identity;
  std::string name_;
  ToeplitzSymbol toeplitz_;
  DiagonalSpec diagonal_;
  std::vector<FiniteRankTerm> finite_rank_;
  IntegralKernelSpec integral_kernel_;
};

// Prepared evaluator of w -> (S K_z)(w) for one (S, z) pair. Construction
// does the z-dependent work once (series coefficients, inner products), so
// grid sweeps pay O(series) per node instead of a quadrature.
struct ApplyPlan {
  std::function<Complex(Complex)> eval;
  int truncation = 0;      // 0 = closed form
  double tail_bound = 0.0;
  bool converged = true;   // false when the series cap was hit
};

// w_max: largest |w| the plan will be evaluated at (drives series lengths).
ApplyPlan make_apply_plan(const OperatorSpec& op, DiskPoint z, double alpha,
                          const DiskGrid& grid, double w_max);

// (S K_z)(w). Toeplitz operators use the projection form
// int phi(u) K_z(u) conj(K_w(u)) dA_alpha(u) here; series fast paths are
// cross-checked against it in the test suite.
Complex apply_to_kernel(const OperatorSpec& op, DiskPoint z, DiskPoint w, double alpha,
                        const DiskGrid& grid);

// U_z f = (f o phi_z) k_z.
Complex u_z_apply(DiskPoint z, const std::function<Complex(Complex)>& f, DiskPoint w,
                  double alpha);

// S_z 1 (w) = (S k_z)(phi_z(w)) k_z(w), with S k_z = (1-|z|^2)^{(2+alpha)/2} S K_z.
Complex s_z_one(const OperatorSpec& op, DiskPoint z, DiskPoint w, double alpha,
                const DiskGrid& grid);

// ||S_z 1||_{m,alpha} by quadrature on the grid.
double s_z_one_norm(const OperatorSpec& op, DiskPoint z, double m, double alpha,
                    const DiskGrid& grid);

// Several ||S_z 1||_{t,alpha} from one sweep over the grid (one plan, one
// pass; accumulation is fixed-order per exponent).
std::vector<double> s_z_one_norms(const OperatorSpec& op, DiskPoint z,
                                  const std::vector<double>& exponents, double alpha,
                                  const DiskGrid& grid, bool* converged = nullptr,
                                  int* truncation = nullptr);

// Berezin transform <S k_z, k_z>, computed as the literal quadrature pairing
// (1-|z|^2)^{2+alpha} int (S K_z)(w) conj(K_z(w)) dA_alpha(w).
Complex berezin(const OperatorSpec& op, DiskPoint z, double alpha, const DiskGrid& grid);

// Same functional through the reproducing property of the analytic function
// S K_z: <S k_z, k_z> = (1-|z|^2)^{2+alpha} (S K_z)(z). One plan evaluation,
// no pairing integral; used by boundary scans and cross-checked against
// berezin() in the tests.
Complex berezin_reproducing(const OperatorSpec& op, DiskPoint z, double alpha,
                            const DiskGrid& grid, bool* converged = nullptr);

struct PointwiseBoundCheck {
  double lhs = 0.0;   // |S K_z (w)|
  double rhs = 0.0;   // ||S_z 1||_m (1-|z|^2)^{-(2+a)/m} (1-|w|^2)^{-(2+a)/m} |1-conj(z)w|^{-(1-2/m)(2+a)}
  bool pass = false;  // lhs <= rhs (1 + 1e-4)
};

PointwiseBoundCheck kernel_pointwise_bound_check(const OperatorSpec& op, DiskPoint z, DiskPoint w,
                                                 double m, double alpha, const DiskGrid& grid);

}  // namespace bergman
