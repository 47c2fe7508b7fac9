#include "bergman/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace bergman {

TruncationChoice required_truncation(double q, double alpha, double tol) {
  if (q < 0.0) q = 0.0;
  if (q >= 1.0) return {kSeriesCap, true};
  double a = std::max(alpha, -0.99);
  auto tail = [&](int n) {
    return std::exp((n + 1.0) * std::log(q) + (1.0 + a) * std::log(n + 2.0) -
                    (2.0 + a) * std::log1p(-q) - std::lgamma(2.0 + a));
  };
  int n = 64;
  while (n < kSeriesCap && tail(n) > tol) n *= 2;
  if (tail(n) > tol) return {kSeriesCap, true};
  int lo = n / 2, hi = n;
  while (lo + 1 < hi) {
    int mid = (lo + hi) / 2;
    (tail(mid) > tol ? lo : hi) = mid;
  }
  return {hi, false};
}

ToeplitzSymbol toeplitz_symbol(const std::string& name) {
  ToeplitzSymbol s;
  s.name = name;
  if (name == "one") {
    s.eval = [](Complex) { return Complex(1.0, 0.0); };
    s.radial = true;
    s.profile = [](double) { return 1.0; };
    s.radial_power = 0.0;
    return s;
  }
  if (name == "oneminusr2") {
    s.eval = [](Complex u) { return Complex(1.0 - std::norm(u), 0.0); };
    s.radial = true;
    s.profile = [](double u) { return 1.0 - u; };
    s.radial_power = 1.0;
    return s;
  }
  if (name == "halfdisk") {
    s.eval = [](Complex u) { return Complex(u.real() > 0.0 ? 1.0 : 0.0, 0.0); };
    s.halfdisk = true;
    return s;
  }
  if (name.rfind("radialpow:", 0) == 0) {
    double k = 0.0;
    try {
      k = std::stod(name.substr(10));
    } catch (...) {
      fail(ErrorCode::UnknownName, "toeplitz_symbol: bad exponent in '" + name + "'");
    }
    if (!(k >= 0.0)) fail(ErrorCode::InvalidArgument, "toeplitz_symbol: radialpow needs k >= 0");
    s.eval = [k](Complex u) { return Complex(std::pow(1.0 - std::norm(u), k), 0.0); };
    s.radial = true;
    s.profile = [k](double u) { return std::pow(1.0 - u, k); };
    s.radial_power = k;
    return s;
  }
  fail(ErrorCode::UnknownName, "toeplitz_symbol: unknown symbol '" + name + "'");
}

OperatorSpec OperatorSpec::identity() {
  OperatorSpec op;
  op.kind_ = Kind::Identity;
  op.name_ = "identity";
  return op;
}

OperatorSpec OperatorSpec::toeplitz(ToeplitzSymbol symbol) {
  if (!symbol.eval) fail(ErrorCode::InvalidArgument, "toeplitz: symbol must be evaluable");
  OperatorSpec op;
  op.kind_ = Kind::Toeplitz;
  op.name_ = "toeplitz:" + (symbol.name.empty() ? std::string("custom") : symbol.name);
  op.toeplitz_ = std::move(symbol);
  return op;
}

OperatorSpec OperatorSpec::diagonal(DiagonalSpec spec) {
  if (!spec.lambda) fail(ErrorCode::InvalidArgument, "diagonal: need an eigenvalue sequence");
  if (!(spec.sup_bound >= 0.0)) fail(ErrorCode::InvalidArgument, "diagonal: bad sup bound");
  if (spec.truncation < 0) fail(ErrorCode::InvalidArgument, "diagonal: bad truncation");
  OperatorSpec op;
  op.kind_ = Kind::Diagonal;
  op.name_ = "diagonal:" + (spec.name.empty() ? std::string("custom") : spec.name);
  op.diagonal_ = std::move(spec);
  return op;
}

OperatorSpec OperatorSpec::finite_rank(std::vector<FiniteRankTerm> terms) {
  for (const auto& t : terms)
    if (!t.g || !t.h) fail(ErrorCode::InvalidArgument, "finite_rank: missing term functions");
  OperatorSpec op;
  op.kind_ = Kind::FiniteRank;
  op.name_ = "rankone";
  if (terms.size() != 1) op.name_ = "finiterank:" + std::to_string(terms.size());
  op.finite_rank_ = std::move(terms);
  return op;
}

OperatorSpec OperatorSpec::integral_kernel(IntegralKernelSpec spec) {
  if (!spec.H) fail(ErrorCode::InvalidArgument, "integral_kernel: need a kernel");
  OperatorSpec op;
  op.kind_ = Kind::IntegralKernel;
  op.name_ = "integralkernel:" + (spec.name.empty() ? std::string("custom") : spec.name);
  op.integral_kernel_ = std::move(spec);
  return op;
}

OperatorSpec OperatorSpec::from_selector(const std::string& selector) {
  if (selector == "identity") return identity();
  if (selector == "rankone") {
    FiniteRankTerm term;
    term.name = "proj1";
    term.g = [](Complex) { return Complex(1.0, 0.0); };
    term.h = [](Complex) { return Complex(1.0, 0.0); };
    return finite_rank({term});
  }
  if (selector.rfind("toeplitz:", 0) == 0) return toeplitz(toeplitz_symbol(selector.substr(9)));
  if (selector.rfind("diagonal:", 0) == 0) {
    std::string which = selector.substr(9);
    DiagonalSpec spec;
    if (which == "one") {
      spec.name = "one";
      spec.lambda = [](int) { return 1.0; };
      spec.sup_bound = 1.0;
    } else if (which == "inv_n") {
      spec.name = "inv_n";
      spec.lambda = [](int n) { return 1.0 / (n + 1.0); };
      spec.sup_bound = 1.0;
    } else if (which.rfind("const:", 0) == 0) {
      double c = 0.0;
      try {
        c = std::stod(which.substr(6));
      } catch (...) {
        fail(ErrorCode::UnknownName, "operator selector: bad constant in '" + selector + "'");
      }
      spec.name = which;
      spec.lambda = [c](int) { return c; };
      spec.sup_bound = std::abs(c);
    } else {
      fail(ErrorCode::UnknownName, "operator selector: unknown diagonal '" + which + "'");
    }
    return diagonal(spec);
  }
  fail(ErrorCode::UnknownName, "operator selector: unknown operator '" + selector + "'");
}

OperatorSpec OperatorSpec::with_truncation(int n) const {
  if (kind_ != Kind::Diagonal)
    fail(ErrorCode::InvalidArgument, "with_truncation: only diagonal operators carry one");
  OperatorSpec copy = *this;
  copy.diagonal_.truncation = std::max(copy.diagonal_.truncation, n);
  return copy;
}

namespace {

// 1/gamma_n by the exact recurrence 1/gamma_{n+1} = 1/gamma_n (n+alpha+2)/(n+1).
std::vector<double> inv_gamma_table(int n, double alpha) {
  std::vector<double> inv(n + 1);
  inv[0] = 1.0;
  for (int k = 0; k < n; ++k) inv[k + 1] = inv[k] * (k + alpha + 2.0) / (k + 1.0);
  return inv;
}

Complex horner(const std::vector<Complex>& coeff, Complex w) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * w + coeff[i];
  return acc;
}

// Eigenvalues of T_phi for the radial profile (1-u)^k:
//   lambda_n = G(alpha+k+1)/G(alpha+1) * G(n+alpha+2)/G(n+alpha+k+2).
double radial_power_eigenvalue(int n, double alpha, double k) {
  return std::exp(std::lgamma(alpha + k + 1.0) - std::lgamma(alpha + 1.0) +
                  std::lgamma(n + alpha + 2.0) - std::lgamma(n + alpha + k + 2.0));
}

// lambda_n = (alpha+1) int_0^1 g(u) u^n (1-u)^alpha du / gamma_n for a general
// radial profile, by a Jacobi rule large enough for the requested length.
std::vector<double> radial_eigenvalues(const ToeplitzSymbol& sym, double alpha, int n_terms) {
  std::vector<double> lam(n_terms + 1);
  if (sym.radial_power >= 0.0) {
    for (int n = 0; n <= n_terms; ++n) lam[n] = radial_power_eigenvalue(n, alpha, sym.radial_power);
    return lam;
  }
  int n_rule = std::max(512, n_terms);
  RadialJacobiRule rule(alpha, n_rule);
  std::vector<double> inv = inv_gamma_table(n_terms, alpha);
  for (int n = 0; n <= n_terms; ++n) {
    double acc = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
      acc += rule.weights()[i] * sym.profile(rule.nodes()[i]) * std::pow(rule.nodes()[i], n);
    }
    lam[n] = (alpha + 1.0) * acc * inv[n];
  }
  return lam;
}

ApplyPlan series_plan(std::vector<Complex> coeff, int truncation, double tail, bool capped) {
  ApplyPlan plan;
  plan.truncation = truncation;
  plan.tail_bound = tail;
  plan.converged = !capped;
  plan.eval = [coeff = std::move(coeff)](Complex w) { return horner(coeff, w); };
  return plan;
}

double series_tail_bound(double sup_coef, double q, double alpha, int n) {
  if (q >= 1.0) return std::numeric_limits<double>::infinity();
  return sup_coef * std::exp((n + 1.0) * std::log(q) + (1.0 + std::max(alpha, -0.99)) * std::log(n + 2.0) -
                             (2.0 + alpha) * std::log1p(-q) - std::lgamma(2.0 + alpha));
}

// Half-disk Toeplitz matrix elements in the monomial basis have the closed
// form A_{nm} = R_{(n+m)/2} ang(m-n) / sqrt(gamma_n gamma_m) with
// R_s = G(s+1)G(alpha+2)/G(s+alpha+2) and ang(d) = sin(d pi/2)/(pi d) for odd
// d, 1/2 at d = 0, 0 otherwise. The plan assembles the output coefficients
// e_n = (1/gamma_n) sum_m R_{(n+m)/2} ang(m-n) conj(z)^m / gamma_m directly.
ApplyPlan halfdisk_plan(DiskPoint z, double alpha, double w_max) {
  double q = std::max(z.abs(), 1e-3);
  TruncationChoice tc = required_truncation(q * std::max(w_max, 0.5), alpha);
  int n_terms = std::max(400, tc.n);
  bool capped = tc.capped;
  if (n_terms > kSeriesCap) {
    n_terms = kSeriesCap;
    capped = true;
  }

  std::vector<double> inv = inv_gamma_table(n_terms, alpha);
  // R at half-integer arguments: R_half[i] = R_{i/2}, two interleaved
  // recurrences R_{s+1} = R_s (s+1)/(s+alpha+2).
  std::vector<double> r_half(2 * n_terms + 1);
  r_half[0] = 1.0;
  r_half[1] = std::exp(std::lgamma(1.5) + std::lgamma(alpha + 2.0) - std::lgamma(alpha + 2.5));
  for (int i = 2; i <= 2 * n_terms; ++i) {
    double s = 0.5 * (i - 2);
    r_half[i] = r_half[i - 2] * (s + 1.0) / (s + alpha + 2.0);
  }

  std::vector<Complex> zpow(n_terms + 1);
  zpow[0] = Complex(1.0, 0.0);
  Complex zbar = std::conj(z.value());
  for (int m = 1; m <= n_terms; ++m) zpow[m] = zpow[m - 1] * zbar;

  // e_n = (1/gamma_n) sum_m R_{(n+m)/2} ang(m-n) conj(z)^m / gamma_m, where
  // ang(d) = sin(d pi/2)/(pi d) vanishes for even d != 0 and is 1/2 at d = 0.
  const double inv_pi = 1.0 / std::numbers::pi;
  std::vector<Complex> coeff(n_terms + 1);
  for (int n = 0; n <= n_terms; ++n) {
    Complex acc = 0.5 * r_half[2 * n] * zpow[n] * inv[n];
    for (int m = (n % 2 == 0) ? 1 : 0; m <= n_terms; m += 2) {
      int d = std::abs(m - n);  // odd by construction; ang is even in d
      double ang = ((d % 4 == 1) ? 1.0 : -1.0) * inv_pi / d;
      acc += r_half[n + m] * ang * zpow[m] * inv[m];
    }
    coeff[n] = acc * inv[n];
  }

  double tail = series_tail_bound(1.0, q * w_max, alpha, n_terms);
  return series_plan(std::move(coeff), n_terms, tail, capped);
}

ApplyPlan toeplitz_projection_plan(const ToeplitzSymbol& sym, DiskPoint z, double alpha,
                                   const DiskGrid& grid) {
  Complex zc = z.value();
  double order = 2.0 + alpha;
  ApplyPlan plan;
  plan.eval = [&sym, zc, order, &grid](Complex w) {
    return grid.integrate([&](Complex u) {
      return sym.eval(u) * std::pow(1.0 - std::conj(zc) * u, -order) *
             std::pow(1.0 - w * std::conj(u), -order);
    });
  };
  return plan;
}

}  // namespace

ApplyPlan make_apply_plan(const OperatorSpec& op, DiskPoint z, double alpha,
                          const DiskGrid& grid, double w_max) {
  double order = 2.0 + alpha;
  switch (op.kind()) {
    case OperatorSpec::Kind::Identity: {
      ApplyPlan plan;
      Complex zc = z.value();
      plan.eval = [zc, order](Complex w) { return std::pow(1.0 - std::conj(zc) * w, -order); };
      return plan;
    }
    case OperatorSpec::Kind::Diagonal: {
      const DiagonalSpec& spec = op.diagonal_spec();
      double q = z.abs() * std::min(w_max, 1.0);
      TruncationChoice req = required_truncation(q, alpha, 1e-6);
      if (z.abs() > 0.97 && w_max > 0.97 && spec.truncation < req.n) {
        fail(ErrorCode::InvalidArgument,
             "diagonal evaluation: |z| and |w| both exceed 0.97; raise the truncation to at least " +
                 std::to_string(req.n));
      }
      int n_terms = spec.truncation;
      std::vector<double> inv = inv_gamma_table(n_terms, alpha);
      std::vector<Complex> coeff(n_terms + 1);
      Complex zbar_pow(1.0, 0.0);
      Complex zbar = std::conj(z.value());
      double sup = 0.0;
      for (int n = 0; n <= n_terms; ++n) {
        double lam = spec.lambda(n);
        if (std::abs(lam) > spec.sup_bound * (1.0 + 1e-12))
          fail(ErrorCode::InvalidArgument, "diagonal evaluation: |lambda_n| exceeds the declared bound");
        sup = std::max(sup, std::abs(lam));
        coeff[n] = lam * zbar_pow * inv[n];
        zbar_pow *= zbar;
      }
      // Distance to the untruncated diagonal extension, for the record.
      double tail = series_tail_bound(sup, q, alpha, n_terms);
      return series_plan(std::move(coeff), n_terms, tail, false);
    }
    case OperatorSpec::Kind::Toeplitz: {
      const ToeplitzSymbol& sym = op.toeplitz_spec();
      if (sym.radial) {
        double q = z.abs() * std::min(w_max, 1.0);
        TruncationChoice tc = required_truncation(q, alpha);
        int n_terms = std::max(200, tc.n);
        std::vector<double> lam = radial_eigenvalues(sym, alpha, n_terms);
        std::vector<double> inv = inv_gamma_table(n_terms, alpha);
        std::vector<Complex> coeff(n_terms + 1);
        Complex zbar_pow(1.0, 0.0);
        Complex zbar = std::conj(z.value());
        double sup = 0.0;
        for (int n = 0; n <= n_terms; ++n) {
          sup = std::max(sup, std::abs(lam[n]));
          coeff[n] = lam[n] * zbar_pow * inv[n];
          zbar_pow *= zbar;
        }
        return series_plan(std::move(coeff), n_terms, series_tail_bound(sup, q, alpha, n_terms),
                           tc.capped);
      }
      if (sym.halfdisk) return halfdisk_plan(z, alpha, w_max);
      return toeplitz_projection_plan(sym, z, alpha, grid);
    }
    case OperatorSpec::Kind::FiniteRank: {
      const auto& terms = op.finite_rank_terms();
      Complex zc = z.value();
      std::vector<Complex> inner(terms.size());
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& g = terms[i].g;
        inner[i] = grid.integrate(
            [&](Complex u) { return std::pow(1.0 - std::conj(zc) * u, -order) * std::conj(g(u)); });
      }
      ApplyPlan plan;
      plan.eval = [inner = std::move(inner), &terms](Complex w) {
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i < terms.size(); ++i) acc += inner[i] * terms[i].h(w);
        return acc;
      };
      return plan;
    }
    case OperatorSpec::Kind::IntegralKernel: {
      const IntegralKernelSpec& spec = op.integral_kernel_spec();
      Complex zc = z.value();
      ApplyPlan plan;
      plan.eval = [&spec, zc, order, &grid](Complex w) {
        return grid.integrate(
            [&](Complex u) { return spec.H(w, u) * std::pow(1.0 - std::conj(zc) * u, -order); });
      };
      return plan;
    }
  }
  fail(ErrorCode::Internal, "make_apply_plan: unreachable");
}

Complex apply_to_kernel(const OperatorSpec& op, DiskPoint z, DiskPoint w, double alpha,
                        const DiskGrid& grid) {
  if (op.kind() == OperatorSpec::Kind::Toeplitz) {
    // Projection form, the defining evaluation for Toeplitz operators.
    const ToeplitzSymbol& sym = op.toeplitz_spec();
    return toeplitz_projection_plan(sym, z, alpha, grid).eval(w.value());
  }
  return make_apply_plan(op, z, alpha, grid, w.abs()).eval(w.value());
}

Complex u_z_apply(DiskPoint z, const std::function<Complex(Complex)>& f, DiskPoint w,
                  double alpha) {
  Complex phi = (z.value() - w.value()) / (1.0 - std::conj(z.value()) * w.value());
  double scale = std::pow(1.0 - z.abs_sq(), 0.5 * (2.0 + alpha));
  Complex kz = scale * std::pow(1.0 - std::conj(z.value()) * w.value(), -(2.0 + alpha));
  return f(phi) * kz;
}

Complex s_z_one(const OperatorSpec& op, DiskPoint z, DiskPoint w, double alpha,
                const DiskGrid& grid) {
  Complex phi = (z.value() - w.value()) / (1.0 - std::conj(z.value()) * w.value());
  ApplyPlan plan = make_apply_plan(op, z, alpha, grid, std::abs(phi));
  double scale = std::pow(1.0 - z.abs_sq(), 0.5 * (2.0 + alpha));
  Complex kz = scale * std::pow(1.0 - std::conj(z.value()) * w.value(), -(2.0 + alpha));
  return scale * plan.eval(phi) * kz;
}

std::vector<double> s_z_one_norms(const OperatorSpec& op, DiskPoint z,
                                  const std::vector<double>& exponents, double alpha,
                                  const DiskGrid& grid, bool* converged, int* truncation) {
  for (double t : exponents)
    if (!(t > 0.0)) fail(ErrorCode::InvalidArgument, "s_z_one_norms: exponents must be positive");
  // |phi_z(node)| can approach 1 on the outermost grid ring.
  ApplyPlan plan = make_apply_plan(op, z, alpha, grid, 1.0);
  if (converged) *converged = plan.converged;
  if (truncation) *truncation = plan.truncation;

  Complex zc = z.value();
  double order = 2.0 + alpha;
  double scale = std::pow(1.0 - z.abs_sq(), 0.5 * order);
  std::vector<double> acc(exponents.size(), 0.0);
  for (int i = 0; i < grid.n_rad(); ++i) {
    std::vector<double> ring(exponents.size(), 0.0);
    for (int l = 0; l < grid.n_ang(); ++l) {
      Complex w = grid.node(i, l);
      Complex denom = 1.0 - std::conj(zc) * w;
      Complex phi = (zc - w) / denom;
      Complex kz = scale * std::pow(denom, -order);
      double v = std::abs(scale * plan.eval(phi) * kz);
      if (!std::isfinite(v))
        fail(ErrorCode::InvalidArgument, "s_z_one_norms: non-finite integrand on the grid");
      for (std::size_t e = 0; e < exponents.size(); ++e) ring[e] += std::pow(v, exponents[e]);
    }
    for (std::size_t e = 0; e < exponents.size(); ++e) acc[e] += grid.node_weight(i) * ring[e];
  }
  std::vector<double> out(exponents.size());
  for (std::size_t e = 0; e < exponents.size(); ++e) out[e] = std::pow(acc[e], 1.0 / exponents[e]);
  return out;
}

double s_z_one_norm(const OperatorSpec& op, DiskPoint z, double m, double alpha,
                    const DiskGrid& grid) {
  return s_z_one_norms(op, z, {m}, alpha, grid)[0];
}

Complex berezin(const OperatorSpec& op, DiskPoint z, double alpha, const DiskGrid& grid) {
  ApplyPlan plan = make_apply_plan(op, z, alpha, grid, 1.0);
  Complex zc = z.value();
  double order = 2.0 + alpha;
  Complex pairing = grid.integrate([&](Complex w) {
    return plan.eval(w) * std::conj(std::pow(1.0 - std::conj(zc) * w, -order));
  });
  return std::pow(1.0 - z.abs_sq(), order) * pairing;
}

Complex berezin_reproducing(const OperatorSpec& op, DiskPoint z, double alpha,
                            const DiskGrid& grid, bool* converged) {
  ApplyPlan plan = make_apply_plan(op, z, alpha, grid, z.abs());
  if (converged) *converged = plan.converged;
  return std::pow(1.0 - z.abs_sq(), 2.0 + alpha) * plan.eval(z.value());
}

PointwiseBoundCheck kernel_pointwise_bound_check(const OperatorSpec& op, DiskPoint z, DiskPoint w,
                                                 double m, double alpha, const DiskGrid& grid) {
  if (!(m > 0.0)) fail(ErrorCode::InvalidArgument, "kernel_pointwise_bound_check: m must be > 0");
  double lhs = std::abs(apply_to_kernel(op, z, w, alpha, grid));
  double norm = s_z_one_norm(op, z, m, alpha, grid);
  double order = 2.0 + alpha;
  double rhs = norm * std::pow(1.0 - z.abs_sq(), -order / m) * std::pow(1.0 - w.abs_sq(), -order / m) *
               std::pow(std::abs(1.0 - std::conj(z.value()) * w.value()), -(1.0 - 2.0 / m) * order);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-4)};
}

}  // namespace bergman
