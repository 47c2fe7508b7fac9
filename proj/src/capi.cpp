#include "bergman_capi.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <numbers>
#include <string>

#include "bergman/atomic.hpp"
#include "bergman/diagnostics.hpp"
#include "bergman/estimates.hpp"
#include "bergman/kernels.hpp"
#include "bergman/lattice.hpp"
#include "bergman/operators.hpp"
#include "bergman/report.hpp"
#include "bergman/verify.hpp"

namespace {

thread_local std::string last_error;

int code_of(const bergman::Error& e) { return static_cast<int>(e.code()); }

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return BGM_OK;
  } catch (const bergman::Error& e) {
    last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    last_error = e.what();
    return BGM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return BGM_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Function selectors for atomic runs: "one", "coord",
// "kernel:<re>[,<im>]", "nkernel:<re>[,<im>]".
std::function<bergman::Complex(bergman::Complex)> parse_function_selector(const std::string& sel,
                                                                          double alpha) {
  using bergman::Complex;
  if (sel == "one") return [](Complex) { return Complex(1.0, 0.0); };
  if (sel == "coord") return [](Complex w) { return w; };
  auto parse_point = [&](const std::string& body) {
    double re = 0.0, im = 0.0;
    std::size_t comma = body.find(',');
    try {
      if (comma == std::string::npos) {
        re = std::stod(body);
      } else {
        re = std::stod(body.substr(0, comma));
        im = std::stod(body.substr(comma + 1));
      }
    } catch (...) {
      bergman::fail(bergman::ErrorCode::UnknownName, "bad point in function selector '" + sel + "'");
    }
    return bergman::DiskPoint(re, im);  // validates |z| < 1
  };
  double order = 2.0 + alpha;
  if (sel.rfind("kernel:", 0) == 0) {
    bergman::DiskPoint z = parse_point(sel.substr(7));
    Complex zc = z.value();
    return [zc, order](Complex w) { return std::pow(1.0 - std::conj(zc) * w, -order); };
  }
  if (sel.rfind("nkernel:", 0) == 0) {
    bergman::DiskPoint z = parse_point(sel.substr(8));
    Complex zc = z.value();
    double scale = std::pow(1.0 - std::norm(zc), 0.5 * order);
    return [zc, order, scale](Complex w) { return scale * std::pow(1.0 - std::conj(zc) * w, -order); };
  }
  bergman::fail(bergman::ErrorCode::UnknownName, "unknown function selector '" + sel + "'");
}

}  // namespace

struct bgm_grid {
  std::shared_ptr<const bergman::DiskGrid> grid;
};

struct bgm_lattice {
  std::shared_ptr<const bergman::Lattice> lat;
};

struct bgm_operator {
  bergman::OperatorSpec op;
};

extern "C" {

const char* bgm_version(void) { return "bergman-lab 1.0.0"; }

const char* bgm_last_error(void) { return last_error.c_str(); }

void bgm_string_free(char* s) { std::free(s); }

int bgm_m_threshold(double p, double alpha, double* out) {
  return guarded([&] { *out = bergman::m_threshold(p, alpha); });
}

int bgm_m_threshold_small_p(double p, double alpha, double delta, double* threshold,
                            double* beta_exponent) {
  return guarded([&] {
    bergman::SmallPThreshold t = bergman::m_threshold_small_p(p, alpha, delta);
    *threshold = t.threshold;
    *beta_exponent = t.beta_exponent;
  });
}

int bgm_pq_regime(double p, double q, double m, double alpha, int* regime, double* window_lo,
                  double* window_hi) {
  return guarded([&] {
    bergman::PqClassification c = bergman::pq_regime(p, q, m, alpha);
    *regime = c.regime == bergman::PqRegime::Inapplicable ? 0
              : c.regime == bergman::PqRegime::CaseA      ? 1
                                                          : 2;
    *window_lo = c.window_lo;
    *window_hi = c.window_hi;
  });
}

int bgm_gamma(double x, double* out) {
  return guarded([&] { *out = bergman::gamma_fn(x); });
}

int bgm_mobius(double z_re, double z_im, double w_re, double w_im, double* out_re,
               double* out_im) {
  return guarded([&] {
    bergman::DiskPoint v = bergman::mobius(bergman::DiskPoint(z_re, z_im),
                                           bergman::DiskPoint(w_re, w_im));
    *out_re = v.value().real();
    *out_im = v.value().imag();
  });
}

int bgm_bergman_metric(double z_re, double z_im, double w_re, double w_im, double* out) {
  return guarded([&] {
    *out = bergman::bergman_metric(bergman::DiskPoint(z_re, z_im), bergman::DiskPoint(w_re, w_im));
  });
}

int bgm_grid_create(double alpha, int n_rad, int n_ang, bgm_grid** out) {
  return guarded([&] { *out = new bgm_grid{bergman::get_grid(alpha, n_rad, n_ang)}; });
}

void bgm_grid_free(bgm_grid* grid) { delete grid; }

int bgm_integrate_mass(const bgm_grid* grid, double* out) {
  return guarded([&] { *out = grid->grid->integrate_real([](bergman::Complex) { return 1.0; }); });
}

int bgm_kernel_norm(const bgm_grid* grid, double z_re, double z_im, double p, double* out) {
  return guarded([&] {
    *out = bergman::kernel_norm(bergman::DiskPoint(z_re, z_im), p, grid->grid->alpha(), *grid->grid);
  });
}

int bgm_ict(double z_re, double z_im, double c, double t, double tol, double* value,
            double* err_est, int* converged) {
  return guarded([&] {
    bergman::IctResult res = bergman::I_ct(bergman::DiskPoint(z_re, z_im), c, t, tol);
    *value = res.value;
    *err_est = res.err_est;
    *converged = res.converged ? 1 : 0;
  });
}

int bgm_ict_bounds(double z_re, double z_im, double c, double t, double* lower, double* upper) {
  return guarded([&] {
    bergman::Bracket b = bergman::I_ct_bounds(bergman::DiskPoint(z_re, z_im), c, t);
    *lower = b.lower;
    *upper = b.upper;
  });
}

int bgm_lattice_build(double r, double r_max, bgm_lattice** out) {
  return guarded([&] {
    *out = new bgm_lattice{std::make_shared<const bergman::Lattice>(bergman::Lattice::build(r, r_max))};
  });
}

void bgm_lattice_free(bgm_lattice* lat) { delete lat; }

int bgm_lattice_count(const bgm_lattice* lat, int* out) {
  return guarded([&] { *out = lat->lat->size(); });
}

int bgm_lattice_center(const bgm_lattice* lat, int k, double* re, double* im) {
  return guarded([&] {
    if (k < 0 || k >= lat->lat->size())
      bergman::fail(bergman::ErrorCode::InvalidArgument, "lattice center index out of range");
    *re = lat->lat->center(k).real();
    *im = lat->lat->center(k).imag();
  });
}

int bgm_lattice_export(const bgm_lattice* lat, char** text_out) {
  return guarded([&] { *text_out = dup_string(lat->lat->export_text()); });
}

int bgm_lattice_import(const char* text, bgm_lattice** out) {
  return guarded([&] {
    *out = new bgm_lattice{
        std::make_shared<const bergman::Lattice>(bergman::Lattice::import_text(text))};
  });
}

int bgm_lattice_verify(const bgm_lattice* lat, int n_samples, uint64_t seed, double* worst_gap,
                       double* min_separation, int* pass) {
  return guarded([&] {
    bergman::LatticeReport rep = bergman::verify_lattice(*lat->lat, n_samples, seed);
    *worst_gap = rep.worst_gap;
    *min_separation = rep.min_separation;
    *pass = rep.pass ? 1 : 0;
  });
}

int bgm_lattice_sum(const bgm_lattice* lat, double t1, double t2, double w_re, double w_im,
                    double* value, double* tail_estimate) {
  return guarded([&] {
    bergman::LatticeSumResult res =
        bergman::lattice_sum(*lat->lat, t1, t2, bergman::DiskPoint(w_re, w_im));
    *value = res.value;
    *tail_estimate = res.tail_estimate;
  });
}

int bgm_operator_create(const char* selector, bgm_operator** out) {
  return guarded([&] { *out = new bgm_operator{bergman::OperatorSpec::from_selector(selector)}; });
}

void bgm_operator_free(bgm_operator* op) { delete op; }

int bgm_berezin(const bgm_operator* op, const bgm_grid* grid, double z_re, double z_im,
                double alpha, double* out_re, double* out_im) {
  return guarded([&] {
    bergman::Complex v =
        bergman::berezin(op->op, bergman::DiskPoint(z_re, z_im), alpha, *grid->grid);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

int bgm_sz1_norm(const bgm_operator* op, const bgm_grid* grid, double z_re, double z_im, double m,
                 double alpha, double* out) {
  return guarded([&] {
    *out = bergman::s_z_one_norm(op->op, bergman::DiskPoint(z_re, z_im), m, alpha, *grid->grid);
  });
}

int bgm_verify_run(const char* suite, uint64_t seed, int jobs, char** csv_out, int* n_checks,
                   int* n_failed) {
  return guarded([&] {
    std::vector<bergman::CheckRow> rows = bergman::verify_suite(suite, seed, jobs);
    *csv_out = dup_string(bergman::checks_csv(rows));
    *n_checks = static_cast<int>(rows.size());
    int failed = 0;
    for (const bergman::CheckRow& row : rows)
      if (!row.pass) ++failed;
    *n_failed = failed;
  });
}

int bgm_scan_run(const char* op_selector, double p, double alpha, double m, int rays,
                 int radii_levels, int n_rad, int n_ang, int jobs, char** json_out, char** csv_out,
                 char** verdict_out, int* all_converged, int* compact_consistent) {
  return guarded([&] {
    bergman::OperatorSpec op = bergman::OperatorSpec::from_selector(op_selector);
    auto grid = bergman::get_grid(alpha, n_rad, n_ang);
    bergman::ScanReport report = bergman::compactness_scan(
        op, p, alpha, m, rays, bergman::default_scan_radii(radii_levels), *grid, jobs);
    if (json_out) *json_out = dup_string(report.to_json());
    if (csv_out) *csv_out = dup_string(report.to_csv());
    if (verdict_out) *verdict_out = dup_string(report.verdict_line());
    if (all_converged) *all_converged = report.all_converged ? 1 : 0;
    if (compact_consistent) *compact_consistent = report.verdicts.compact_consistent ? 1 : 0;
  });
}

int bgm_atomic_run(const char* f_selector, double p, double alpha, double r, double r_max,
                   double reg, int jobs, char** expansion_out, char** table_csv_out,
                   double* coeff_ratio, double* residual, int* ill_conditioned,
                   double* max_rel_error) {
  return guarded([&] {
    if (!(p > 1.0))
      bergman::fail(bergman::ErrorCode::InvalidArgument, "atomic run: requires p > 1");
    auto f = parse_function_selector(f_selector, alpha);
    auto lat = std::make_shared<const bergman::Lattice>(bergman::Lattice::build(r, r_max));
    bergman::SamplingSolver solver(lat, alpha, reg, jobs);
    bergman::AtomicExpansion exp = bergman::decompose(solver, f, p);

    bergman::CsvWriter table({"radius", "sup_error", "sup_f", "rel_error"});
    double worst_rel = 0.0;
    for (int ir = 0; ir <= 8; ++ir) {
      double radius = 0.1 * ir;
      double sup_err = 0.0, sup_f = 0.0;
      int n_ang = ir == 0 ? 1 : 16;
      for (int l = 0; l < n_ang; ++l) {
        double theta = 2.0 * std::numbers::pi * l / n_ang;
        bergman::Complex w(radius * std::cos(theta), radius * std::sin(theta));
        sup_err = std::max(sup_err, std::abs(bergman::reconstruct(exp, w) - f(w)));
        sup_f = std::max(sup_f, std::abs(f(w)));
      }
      double rel = sup_err / std::max(sup_f, 1e-300);
      worst_rel = std::max(worst_rel, rel);
      table.row({bergman::format_double(radius), bergman::format_double(sup_err),
                 bergman::format_double(sup_f), bergman::format_double(rel)});
    }

    // ||f||_{p,alpha} for the coefficient-norm ratio.
    bergman::AdaptiveResult fn = bergman::integrate_adaptive_real(
        [&](bergman::Complex w) { return std::pow(std::abs(f(w)), p); }, alpha, 1e-10);
    double f_norm = std::pow(fn.value.real(), 1.0 / p);

    if (expansion_out) *expansion_out = dup_string(exp.export_text("-"));
    if (table_csv_out) *table_csv_out = dup_string(table.take());
    if (coeff_ratio) *coeff_ratio = exp.coeff_norm() / std::max(f_norm, 1e-300);
    if (residual) *residual = exp.residual;
    if (ill_conditioned) *ill_conditioned = exp.ill_conditioned ? 1 : 0;
    if (max_rel_error) *max_rel_error = worst_rel;
  });
}

}  // extern "C"
