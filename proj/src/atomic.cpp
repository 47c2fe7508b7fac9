#include "bergman/atomic.hpp"

#include <Eigen/Dense>

#include "bergman/parallel.hpp"
#include "bergman/report.hpp"

namespace bergman {

namespace {
using MatrixXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXc = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
}  // namespace

bool atom_admissible(double b, double p, double alpha) {
  return b > std::max(1.0, 1.0 / p) + (alpha + 1.0) / p;
}

Complex atom(const Lattice& lat, int k, double b, double p, double alpha, Complex w) {
  if (k < 0 || k >= lat.size()) fail(ErrorCode::InvalidArgument, "atom: center index out of range");
  if (!atom_admissible(b, p, alpha))
    fail(ErrorCode::InvalidArgument,
         "atom: inadmissible exponent b (need b > max{1, 1/p} + (alpha+1)/p)");
  Complex a = lat.center(k);
  double scale = std::pow(1.0 - std::norm(a), (p * b - 2.0 - alpha) / p);
  return scale * std::pow(1.0 - w * std::conj(a), -b);
}

Complex sampling_apply(const Lattice& lat, const CellMeasures& measures,
                       const std::function<Complex(Complex)>& f, DiskPoint z) {
  double order = 2.0 + measures.alpha();
  Complex acc(0.0, 0.0);
  for (int k = 0; k < lat.size(); ++k) {
    Complex a = lat.center(k);
    acc += measures.value(k) * f(a) * std::pow(1.0 - std::conj(a) * z.value(), -order);
  }
  return acc;
}

struct SamplingSolver::Impl {
  MatrixXc collocation;                 // M_{jk} = A_alpha(D_k) K_{a_k}(a_j)
  Eigen::LDLT<MatrixXc> normal_ldlt;    // factorization of M^H M + reg I
};

SamplingSolver::SamplingSolver(std::shared_ptr<const Lattice> lat, double alpha, double reg,
                               int jobs)
    : lat_(std::move(lat)), alpha_(alpha), reg_(reg), impl_(new Impl) {
  if (!(reg >= 0.0)) fail(ErrorCode::InvalidArgument, "SamplingSolver: reg must be >= 0");
  measures_ = std::make_unique<const CellMeasures>(*lat_, alpha, kDefaultRadial, kDefaultAngular, jobs);
  const int n = lat_->size();
  impl_->collocation.resize(n, n);
  double order = 2.0 + alpha;
  parallel_for(n, jobs, [&](int j) {
    Complex aj = lat_->center(j);
    for (int k = 0; k < n; ++k) {
      Complex ak = lat_->center(k);
      impl_->collocation(j, k) =
          measures_->value(k) * std::pow(1.0 - std::conj(ak) * aj, -order);
    }
  });
  MatrixXc normal = impl_->collocation.adjoint() * impl_->collocation;
  normal.diagonal().array() += reg_;
  impl_->normal_ldlt.compute(normal);
  if (impl_->normal_ldlt.info() != Eigen::Success)
    fail(ErrorCode::IllConditioned, "SamplingSolver: normal-equation factorization failed");
}

SamplingSolver::~SamplingSolver() = default;
SamplingSolver::SamplingSolver(SamplingSolver&&) noexcept = default;
SamplingSolver& SamplingSolver::operator=(SamplingSolver&&) noexcept = default;

SamplingSolution SamplingSolver::solve(const std::vector<Complex>& f_at_centers) const {
  const int n = lat_->size();
  if (static_cast<int>(f_at_centers.size()) != n)
    fail(ErrorCode::InvalidArgument, "SamplingSolver::solve: sample count != center count");
  VectorXc f = Eigen::Map<const VectorXc>(f_at_centers.data(), n);
  VectorXc g = impl_->normal_ldlt.solve(impl_->collocation.adjoint() * f);
  SamplingSolution sol;
  sol.g.assign(g.data(), g.data() + n);
  sol.rhs_norm = f.norm();
  sol.residual = (impl_->collocation * g - f).norm();
  sol.ill_conditioned = sol.residual > 1e-4 * std::max(sol.rhs_norm, 1e-300);
  return sol;
}

SamplingSolution SamplingSolver::solve_function(const std::function<Complex(Complex)>& f) const {
  std::vector<Complex> samples(lat_->size());
  for (int k = 0; k < lat_->size(); ++k) samples[k] = f(lat_->center(k));
  return solve(samples);
}

SamplingSolution invert_sampling(const Lattice& lat, double alpha,
                                 const std::function<Complex(Complex)>& f, double reg) {
  auto copy = std::make_shared<const Lattice>(lat);
  return SamplingSolver(copy, alpha, reg).solve_function(f);
}

double AtomicExpansion::coeff_norm() const {
  double acc = 0.0;
  for (const Complex& c : coeffs) acc += std::pow(std::abs(c), p);
  return std::pow(acc, 1.0 / p);
}

std::string AtomicExpansion::export_text(const std::string& lattice_ref) const {
  std::string out = "bergman-expansion v1\n";
  out += "p " + format_double(p) + "\n";
  out += "alpha " + format_double(alpha) + "\n";
  out += "b " + format_double(b) + "\n";
  out += "lattice " + (lattice_ref.empty() ? std::string("-") : lattice_ref) + "\n";
  out += "count " + format_int(static_cast<long long>(coeffs.size())) + "\n";
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    out += format_int(static_cast<long long>(k)) + " " + format_double(coeffs[k].real()) + " " +
           format_double(coeffs[k].imag()) + "\n";
  }
  return out;
}

AtomicExpansion decompose(const SamplingSolver& solver,
                          const std::function<Complex(Complex)>& f, double p) {
  if (!(p > 1.0))
    fail(ErrorCode::InvalidArgument, "decompose: coefficient formula requires p > 1");
  const Lattice& lat = solver.lattice();
  double alpha = solver.alpha();
  SamplingSolution sol = solver.solve_function(f);

  AtomicExpansion exp;
  exp.lattice = solver.lattice_ptr();
  exp.b = 2.0 + alpha;
  exp.p = p;
  exp.alpha = alpha;
  exp.residual = sol.residual;
  exp.ill_conditioned = sol.ill_conditioned;
  exp.coeffs.resize(lat.size());
  double expo = (p - 1.0) * (2.0 + alpha) / p;
  for (int k = 0; k < lat.size(); ++k) {
    double denom = std::pow(1.0 - std::norm(lat.center(k)), expo);
    exp.coeffs[k] = solver.measures().value(k) * sol.g[k] / denom;
  }
  return exp;
}

AtomicExpansion decompose(std::shared_ptr<const Lattice> lat,
                          const std::function<Complex(Complex)>& f, double p, double alpha,
                          double reg) {
  SamplingSolver solver(std::move(lat), alpha, reg);
  return decompose(solver, f, p);
}

Complex reconstruct(const AtomicExpansion& exp, Complex w) {
  Complex acc(0.0, 0.0);
  const Lattice& lat = *exp.lattice;
  double scale_exp = (exp.p * exp.b - 2.0 - exp.alpha) / exp.p;
  for (int k = 0; k < lat.size(); ++k) {
    Complex a = lat.center(k);
    double scale = std::pow(1.0 - std::norm(a), scale_exp);
    acc += exp.coeffs[k] * scale * std::pow(1.0 - w * std::conj(a), -exp.b);
  }
  return acc;
}

std::vector<double> weak_null_coeff_decay(std::shared_ptr<const Lattice> lat, double p,
                                          double alpha, const std::vector<DiskPoint>& z_seq,
                                          double R) {
  SamplingSolver solver(lat, alpha);
  std::vector<double> out;
  out.reserve(z_seq.size());
  for (const DiskPoint& z : z_seq) {
    AdaptiveResult norm = kernel_norm_adaptive(z, p, alpha, 1e-9);
    double scale = 1.0 / norm.value.real();
    Complex zc = z.value();
    double order = 2.0 + alpha;
    AtomicExpansion exp = decompose(
        solver, [zc, order, scale](Complex w) { return scale * std::pow(1.0 - std::conj(zc) * w, -order); },
        p);
    double s = 0.0;
    if (R > 0.0) {
      for (int k = 0; k < lat->size(); ++k) {
        if (std::abs(lat->center(k)) <= R) s += std::pow(std::abs(exp.coeffs[k]), p);
      }
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace bergman
