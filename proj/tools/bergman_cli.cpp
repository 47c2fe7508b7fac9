// Command-line front end for the Bergman-space diagnostics library. Talks to
// the core exclusively through the C API (bergman_capi.h); every run is a
// reproducible batch job emitting CSV/JSON.
//
// Exit codes: 0 pass, 1 computation/verdict failure, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bergman_capi.h"

namespace {

struct FreeString {
  void operator()(char* s) const { bgm_string_free(s); }
};
using OwnedString = std::unique_ptr<char, FreeString>;

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BERGMAN_LAB_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // library default (hardware concurrency)
}

bool write_file(const std::string& path, const char* content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int fail_usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

int cmd_threshold(double p, double alpha, double delta, bool delta_given) {
  if (p > 1.0) {
    double threshold = 0.0;
    if (bgm_m_threshold(p, alpha, &threshold) != BGM_OK) return fail_usage(bgm_last_error());
    std::printf("exponent-threshold table (p=%.17g, alpha=%.17g)\n", p, alpha);
    std::printf("  boundedness requires  m > %.17g\n", threshold);
    std::printf("  (sup_z ||S_z 1||_{m,alpha} < inf then implies S bounded;\n");
    std::printf("   with the same hypothesis, compact iff Berezin -> 0 at the boundary)\n");
    if (p > 2.0) {
      int regime = 0;
      double lo = 0.0, hi = 0.0;
      bgm_pq_regime(p, 0.5, threshold + 1.0, alpha, &regime, &lo, &hi);
      std::printf("  p->q window for p > 2: %.17g < m <= %.17g\n", lo, hi);
    }
    return 0;
  }
  if (!(p > 0.0)) return fail_usage("threshold: p must be positive");
  if (!delta_given) delta = (1.0 + alpha) / p;  // the sharp choice
  double threshold = 0.0, beta = 0.0;
  if (bgm_m_threshold_small_p(p, alpha, delta, &threshold, &beta) != BGM_OK)
    return fail_usage(bgm_last_error());
  std::printf("exponent-threshold table (p=%.17g, alpha=%.17g, delta=%.17g)\n", p, alpha, delta);
  std::printf("  boundedness requires  m > %.17g  with weight beta = %.17g\n", threshold, beta);
  std::printf("  (at delta = (1+alpha)/p the threshold is the sharp 2 + 1/(1+alpha))\n");
  return 0;
}

int cmd_verify(const std::string& suite, uint64_t seed, int jobs, const std::string& out_path) {
  char* csv = nullptr;
  int n_checks = 0, n_failed = 0;
  int rc = bgm_verify_run(suite.c_str(), seed, jobs, &csv, &n_checks, &n_failed);
  if (rc != BGM_OK) return fail_usage(bgm_last_error());
  OwnedString owned(csv);
  if (!out_path.empty()) {
    if (!write_file(out_path, csv)) return fail_usage("cannot write " + out_path);
  } else {
    std::fputs(csv, stdout);
  }
  std::fprintf(stderr, "verify %s: %d checks, %d failed\n", suite.c_str(), n_checks, n_failed);
  return n_failed == 0 ? 0 : 1;
}

int cmd_scan(const std::string& op, double p, double alpha, double m, int rays, int levels,
             int n_rad, int n_ang, int jobs, const std::string& out_prefix) {
  char* json = nullptr;
  char* csv = nullptr;
  char* verdict = nullptr;
  int all_converged = 0, compact = 0;
  int rc = bgm_scan_run(op.c_str(), p, alpha, m, rays, levels, n_rad, n_ang, jobs, &json, &csv,
                        &verdict, &all_converged, &compact);
  if (rc != BGM_OK) return fail_usage(bgm_last_error());
  OwnedString oj(json), oc(csv), ov(verdict);
  if (!write_file(out_prefix + ".json", json)) return fail_usage("cannot write " + out_prefix + ".json");
  if (!write_file(out_prefix + ".csv", csv)) return fail_usage("cannot write " + out_prefix + ".csv");
  std::printf("%s\n", verdict);
  if (!all_converged) {
    std::fprintf(stderr, "scan: partial output (some samples did not converge)\n");
    return 1;
  }
  return 0;
}

int cmd_atomic(const std::string& f, double p, double alpha, double r, double r_max, double reg,
               int jobs, const std::string& out_prefix) {
  char* expansion = nullptr;
  char* table = nullptr;
  double ratio = 0.0, residual = 0.0, max_rel = 0.0;
  int ill = 0;
  int rc = bgm_atomic_run(f.c_str(), p, alpha, r, r_max, reg, jobs, &expansion, &table, &ratio,
                          &residual, &ill, &max_rel);
  if (rc != BGM_OK) return fail_usage(bgm_last_error());
  OwnedString oe(expansion), ot(table);
  if (!write_file(out_prefix + ".expansion.txt", expansion))
    return fail_usage("cannot write " + out_prefix + ".expansion.txt");
  if (!write_file(out_prefix + ".errors.csv", table))
    return fail_usage("cannot write " + out_prefix + ".errors.csv");
  std::printf("atomic %s: coeff-norm ratio %.17g, solver residual %.17g, max rel error %.17g\n",
              f.c_str(), ratio, residual, max_rel);
  if (ill) {
    std::fprintf(stderr, "atomic: ill-conditioned solve (residual %.17g); r likely too large\n",
                 residual);
    return 1;
  }
  if (max_rel > 0.05) {
    std::fprintf(stderr,
                 "atomic: reconstruction failed (max rel error %.17g > 0.05); r likely too large\n",
                 max_rel);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman-space operator diagnostics: kernels, lattices, atomic decomposition, "
               "Berezin-transform boundary scans"};
  app.require_subcommand(1);

  // threshold
  double p = 2.0, alpha = 0.0, delta = 0.0;
  auto* threshold = app.add_subcommand(
      "threshold", "Boundedness exponent threshold m > p(2+alpha)/(1+alpha) max{1,1/(p-1)} "
                   "(small-p variant and p->q window included)");
  threshold->add_option("--p", p, "integrability exponent")->required();
  threshold->add_option("--alpha", alpha, "weight exponent (> -1)");
  auto* delta_opt = threshold->add_option("--delta", delta, "small-p atom parameter (default (1+alpha)/p)");

  // verify
  std::string suite, verify_out;
  uint64_t seed = 12345;
  int jobs = 0;
  auto* verify = app.add_subcommand("verify", "Run a module invariant suite, emit CSV of checks");
  verify->add_option("suite", suite,
                     "one of: geometry, quadrature, kernels, estimates, lattice, atomic, operators")
      ->required();
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--jobs", jobs, "worker threads (default: BERGMAN_LAB_JOBS or hardware)");
  verify->add_option("--out", verify_out, "CSV output path (default stdout)");

  // scan
  std::string op, scan_out = "scan_report";
  double m = 5.0;
  int rays = 8, levels = 7, n_rad = 256, n_ang = 512;
  auto* scan = app.add_subcommand(
      "scan", "Berezin boundary scan: compact iff the Berezin transform vanishes at the boundary "
              "under the sup-norm hypothesis; emits JSON+CSV and a verdict line");
  scan->add_option("--op", op, "operator selector (identity, toeplitz:<sym>, diagonal:<seq>, rankone)")
      ->required();
  scan->add_option("--p", p, "integrability exponent (> 1)")->required();
  scan->add_option("--alpha", alpha, "weight exponent (> -1)");
  scan->add_option("--m", m, "test exponent for ||S_z 1||_{m,alpha}")->required();
  scan->add_option("--rays", rays, "equally spaced boundary rays");
  scan->add_option("--levels", levels, "radii 1 - 2^{-j}, j = 1..levels");
  scan->add_option("--nrad", n_rad, "radial quadrature nodes");
  scan->add_option("--nang", n_ang, "angular quadrature nodes");
  scan->add_option("--jobs", jobs, "worker threads");
  scan->add_option("--out", scan_out, "output prefix (.json/.csv)");

  // atomic
  std::string fsel, atomic_out = "atomic_report";
  double r = 0.35, r_max = 0.95, reg = 1e-10;
  auto* atomic = app.add_subcommand(
      "atomic", "Atomic decomposition through the sampling operator: expansion file, "
                "reconstruction-error table, coefficient-norm ratio");
  atomic->add_option("--f", fsel, "function selector (one, coord, kernel:<z>, nkernel:<z>)")
      ->required();
  atomic->add_option("--p", p, "integrability exponent (> 1)")->required();
  atomic->add_option("--alpha", alpha, "weight exponent (> -1)");
  atomic->add_option("--r", r, "lattice radius");
  atomic->add_option("--rmax", r_max, "lattice truncation ceiling");
  atomic->add_option("--reg", reg, "ridge parameter for the sampling inversion");
  atomic->add_option("--jobs", jobs, "worker threads");
  atomic->add_option("--out", atomic_out, "output prefix (.expansion.txt/.errors.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*threshold) return cmd_threshold(p, alpha, delta, delta_opt->count() > 0);
    if (*verify) return cmd_verify(suite, seed, resolve_jobs(jobs), verify_out);
    if (*scan) return cmd_scan(op, p, alpha, m, rays, levels, n_rad, n_ang, resolve_jobs(jobs),
                               scan_out);
    if (*atomic) return cmd_atomic(fsel, p, alpha, r, r_max, reg, resolve_jobs(jobs), atomic_out);
  } catch (const std::exception& e) {
    return fail_usage(e.what());
  }
  return 2;
}
