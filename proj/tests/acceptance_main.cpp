// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/atomic.hpp"
#include "bergman/diagnostics.hpp"
#include "bergman/estimates.hpp"
#include "bergman/kernels.hpp"
#include "bergman/lattice.hpp"
#include "bergman/operators.hpp"
#include "bergman/parallel.hpp"
#include "bergman/verify.hpp"

using namespace bergman;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Line {
  int id;
  std::string name;
  Outcome outcome;
  double seconds;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --- 1: two-sided integral brackets --------------------------------------

Outcome criterion_brackets() {
  const std::vector<std::pair<double, double>> cases = {
      {-1.0, 0.0}, {1.0, 0.0}, {2.0, 1.0}, {0.5, -0.5}, {0.0, 0.0}};
  const std::vector<double> radii = {0.0, 0.5, 0.9, 0.99};
  struct Cell {
    double c, t, r;
  };
  std::vector<Cell> cells;
  for (const auto& [c, t] : cases)
    for (double r : radii) cells.push_back({c, t, r});

  std::vector<std::string> issues(cells.size());
  parallel_for(static_cast<int>(cells.size()), 0, [&](int i) {
    const Cell& cell = cells[i];
    IctResult res = I_ct(DiskPoint(cell.r, 0.0), cell.c, cell.t, 1e-10);
    Bracket b = I_ct_bounds(DiskPoint(cell.r, 0.0), cell.c, cell.t);
    double slack = res.err_est + 1e-9;
    if (!res.converged || res.value < b.lower - slack || res.value > b.upper + slack) {
      std::ostringstream os;
      os << "(c=" << cell.c << ",t=" << cell.t << ",|z|=" << cell.r << ") value " << res.value
         << " outside [" << b.lower << "," << b.upper << "] +/- " << slack;
      issues[i] = os.str();
    }
  });
  Outcome out;
  int ok = 0;
  for (const std::string& s : issues) {
    if (s.empty())
      ++ok;
    else if (out.detail.empty())
      out.detail = s;
  }
  out.pass = ok == static_cast<int>(cells.size());
  if (out.pass) out.detail = std::to_string(ok) + "/20 cells inside their brackets";
  return out;
}

// --- 2: reproducing property ----------------------------------------------

Outcome criterion_reproducing() {
  const std::vector<DiskPoint> zs = {DiskPoint(), DiskPoint(0.45, 0.0), DiskPoint(0.0, -0.81),
                                     DiskPoint(0.9 * std::cos(2.4), 0.9 * std::sin(2.4)),
                                     DiskPoint(0.9, 0.0)};
  double worst = 0.0;
  for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
    auto grid = get_grid(alpha);
    for (const DiskPoint& z : zs) {
      Complex zc = z.value();
      double order = 2.0 + alpha;
      for (int n = 0; n <= 10; ++n) {
        Complex v = grid->integrate([n, zc, order](Complex w) {
          return std::pow(w, n) * std::conj(std::pow(1.0 - std::conj(zc) * w, -order));
        });
        worst = std::max(worst, std::abs(v - std::pow(zc, n)));
      }
    }
  }
  double worst_unit = 0.0;
  for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
    auto grid = get_grid(alpha);
    for (double r : {0.0, 0.45, 0.8, 0.95}) {
      DiskPoint z(r * std::cos(0.8), r * std::sin(0.8));
      double norm = kernel_norm(z, 2.0, alpha, *grid);
      worst_unit =
          std::max(worst_unit, std::abs(norm * std::pow(1.0 - z.abs_sq(), 0.5 * (2.0 + alpha)) - 1.0));
    }
  }
  Outcome out;
  out.pass = worst <= 1e-8 && worst_unit <= 1e-8;
  out.detail = "max reproducing error " + fmt(worst) + " (tol 1e-8), max |1 - ||k_z||| " +
               fmt(worst_unit) + " (tol 1e-8)";
  return out;
}

// --- 3: kernel norm brackets ----------------------------------------------

Outcome criterion_norm_brackets() {
  Outcome out;
  double worst_margin = -1.0, worst_p2 = 0.0;
  for (double p : {1.5, 2.0, 3.0}) {
    for (double alpha : {0.0, 1.0}) {
      for (double r : {0.3, 0.8, 0.95}) {
        DiskPoint z(r, 0.0);
        double norm = kernel_norm_adaptive(z, p, alpha, 1e-10).value.real();
        NormBounds b = kernel_norm_bounds(z, p, alpha);
        if (norm < b.lower * (1.0 - 1e-6) || norm > b.upper * (1.0 + 1e-6)) {
          out.pass = false;
          out.detail = "norm outside bracket at p=" + fmt(p) + " alpha=" + fmt(alpha) +
                       " |z|=" + fmt(r);
        }
        worst_margin = std::max({worst_margin, b.lower / norm - 1.0, norm / b.upper - 1.0});
        if (p == 2.0) {
          double closed = std::pow(1.0 - z.abs_sq(), -0.5 * (2.0 + alpha));
          worst_p2 = std::max(worst_p2, std::abs(norm - closed) / closed);
        }
      }
    }
  }
  if (worst_p2 > 1e-6) {
    out.pass = false;
    out.detail = "p=2 closed form mismatch " + fmt(worst_p2);
  }
  if (out.pass)
    out.detail = "all 18 brackets hold; p=2 closed-form deviation " + fmt(worst_p2) + " (tol 1e-6)";
  return out;
}

// --- 4: lattice construction ----------------------------------------------

Outcome criterion_lattice() {
  Lattice lat = Lattice::build(0.5, 0.95);
  LatticeReport rep = verify_lattice(lat, 10000, 20260811);
  Outcome out;
  out.pass = rep.covering_pass && rep.separation_pass;
  std::string detail = "gap " + fmt(rep.worst_gap) + " (< " + fmt(lat.r() + 1e-9) + "), separation " +
                       fmt(rep.min_separation) + " (>= " + fmt(lat.r() / 2.0) + ")";
  for (double alpha : {0.0, 1.0}) {
    CellMeasures cm(lat, alpha);
    double closed = 1.0 - std::pow(1.0 - 0.95 * 0.95, alpha + 1.0);
    double err = std::abs(cm.total() - closed);
    if (err > 1e-3) {
      out.pass = false;
      detail += "; cell total off by " + fmt(err) + " at alpha=" + fmt(alpha);
    } else {
      detail += "; cell-total error " + fmt(err) + " (alpha=" + fmt(alpha) + ", tol 1e-3)";
    }
  }
  out.detail = detail;
  return out;
}

// --- 5: atomic round trip ---------------------------------------------------

double reconstruction_error(const AtomicExpansion& exp, const std::function<Complex(Complex)>& f) {
  double sup_err = 0.0, sup_f = 0.0;
  for (int ir = 0; ir <= 8; ++ir) {
    double radius = 0.1 * ir;
    int n_ang = ir == 0 ? 1 : 16;
    for (int l = 0; l < n_ang; ++l) {
      double theta = 2.0 * std::numbers::pi * l / n_ang;
      Complex w(radius * std::cos(theta), radius * std::sin(theta));
      sup_err = std::max(sup_err, std::abs(reconstruct(exp, w) - f(w)));
      sup_f = std::max(sup_f, std::abs(f(w)));
    }
  }
  return sup_err / sup_f;
}

Outcome criterion_atomic_roundtrip() {
  Outcome out;
  double worst = 0.0;
  for (double alpha : {0.0, 1.0}) {
    double order = 2.0 + alpha;
    std::vector<std::pair<std::string, std::function<Complex(Complex)>>> family = {
        {"one", [](Complex) { return Complex(1.0, 0.0); }},
        {"w", [](Complex w) { return w; }},
        {"K_0.3", [order](Complex w) { return std::pow(1.0 - 0.3 * w, -order); }}};
    std::vector<std::vector<double>> errors(family.size());
    for (double r : {0.7, 0.5, 0.35}) {
      auto lat = std::make_shared<const Lattice>(Lattice::build(r, 0.95));
      SamplingSolver solver(lat, alpha);
      for (std::size_t i = 0; i < family.size(); ++i) {
        errors[i].push_back(reconstruction_error(decompose(solver, family[i].second, 2.0),
                                                 family[i].second));
      }
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
      double final_err = errors[i].back();  // r = 0.35
      worst = std::max(worst, final_err);
      if (final_err > 1e-2) {
        out.pass = false;
        out.detail += family[i].first + " alpha=" + fmt(alpha) + " error " + fmt(final_err) +
                      " > 1e-2; ";
      }
      if (!(errors[i][0] > errors[i][1] && errors[i][1] > errors[i][2])) {
        out.pass = false;
        out.detail += family[i].first + " alpha=" + fmt(alpha) + " not strictly decreasing (" +
                      fmt(errors[i][0]) + ", " + fmt(errors[i][1]) + ", " + fmt(errors[i][2]) +
                      "); ";
      }
    }
  }
  if (out.pass)
    out.detail = "max rel sup error at r=0.35: " + fmt(worst) +
                 " (tol 1e-2); errors strictly decreasing over r in {0.7, 0.5, 0.35}";
  return out;
}

// --- 6: weak-null coefficient decay ----------------------------------------

Outcome criterion_weak_null() {
  auto lat = std::make_shared<const Lattice>(Lattice::build(0.35, 0.95));
  std::vector<DiskPoint> z_seq;
  for (int n = 1; n <= 6; ++n) z_seq.emplace_back(1.0 - std::exp2(-n), 0.0);
  std::vector<double> s = weak_null_coeff_decay(lat, 2.0, 0.0, z_seq, 0.6);
  bool eventually_decreasing = true;
  std::size_t tail_start = s.size() / 2;
  for (std::size_t i = tail_start; i + 1 < s.size(); ++i)
    eventually_decreasing = eventually_decreasing && s[i + 1] <= s[i];
  Outcome out;
  out.pass = eventually_decreasing && s[5] < 0.1 * s[0];
  std::string seq;
  for (double v : s) seq += fmt(v) + " ";
  out.detail = "S_n = [ " + seq + "]; S_6/S_1 = " + fmt(s[5] / s[0]) +
               (out.pass ? " < 0.1, eventually decreasing" : " (needs < 0.1 and decreasing tail)");
  return out;
}

// --- 7: Berezin oracles -----------------------------------------------------

Outcome criterion_berezin_oracles() {
  Outcome out;
  double worst_id = 0.0;
  {
    auto grid = get_grid(0.0);
    OperatorSpec id = OperatorSpec::identity();
    for (double r : {0.0, 0.5, 0.9, 0.95}) {
      DiskPoint z(r * std::cos(1.3), r * std::sin(1.3));
      worst_id = std::max(worst_id, std::abs(berezin(id, z, 0.0, *grid) - 1.0));
    }
    if (worst_id > 1e-8) {
      out.pass = false;
      out.detail += "identity deviation " + fmt(worst_id) + " > 1e-8; ";
    }
  }
  double worst_rank = 0.0;
  for (double alpha : {0.0, 1.0}) {
    auto grid = get_grid(alpha);
    OperatorSpec rankone = OperatorSpec::from_selector("rankone");
    for (double r : {0.0, 0.5, 0.8}) {
      DiskPoint z(r, 0.3 * r);
      double closed = std::pow(1.0 - z.abs_sq(), 2.0 + alpha);
      worst_rank = std::max(worst_rank, std::abs(berezin(rankone, z, alpha, *grid) - closed));
    }
  }
  if (worst_rank > 1e-6) {
    out.pass = false;
    out.detail += "rank-one deviation " + fmt(worst_rank) + " > 1e-6; ";
  }
  double worst_diag = 0.0;
  {
    auto grid = get_grid(0.0);
    OperatorSpec diag = OperatorSpec::from_selector("diagonal:inv_n");
    for (double r : {0.3, 0.6, 0.85}) {
      DiskPoint z(r, -0.2 * r);
      Complex paired = berezin(diag, z, 0.0, *grid);
      double q = z.abs_sq();
      double closed = 0.0, inv_gamma = 1.0, qn = 1.0;
      for (int n = 0; n <= 200; ++n) {
        closed += qn * inv_gamma / (n + 1.0);
        qn *= q;
        inv_gamma *= (n + 2.0) / (n + 1.0);
      }
      closed *= std::pow(1.0 - q, 2.0);
      worst_diag = std::max(worst_diag, std::abs(paired - closed));
    }
    if (worst_diag > 1e-6) {
      out.pass = false;
      out.detail += "diagonal dual-path deviation " + fmt(worst_diag) + " > 1e-6; ";
    }
  }
  if (out.pass)
    out.detail = "identity " + fmt(worst_id) + " (1e-8), rank-one " + fmt(worst_rank) +
                 " (1e-6), diagonal dual-path " + fmt(worst_diag) + " (1e-6)";
  return out;
}

// --- 8: pointwise kernel bound ----------------------------------------------

Outcome criterion_pointwise_bound() {
  auto grid = get_grid(0.0);
  const std::vector<DiskPoint> zs = {DiskPoint(0.0, 0.0), DiskPoint(0.3, 0.0), DiskPoint(0.0, -0.5),
                                     DiskPoint(0.7, 0.0), DiskPoint(-0.4, 0.4)};
  const std::vector<DiskPoint> ws = {DiskPoint(0.1, 0.0), DiskPoint(-0.2, 0.3), DiskPoint(0.0, 0.6),
                                     DiskPoint(0.5, -0.5), DiskPoint(-0.7, 0.0)};
  std::vector<OperatorSpec> ops;
  ops.push_back(OperatorSpec::identity());
  ops.push_back(OperatorSpec::from_selector("toeplitz:one"));
  ops.push_back(OperatorSpec::from_selector("toeplitz:oneminusr2"));
  ops.push_back(OperatorSpec::from_selector("rankone"));
  int failures = 0, total = 0;
  double worst_ratio = 0.0;
  for (const OperatorSpec& op : ops) {
    for (double m : {2.0, 4.0, 8.0}) {
      for (const DiskPoint& z : zs) {
        for (const DiskPoint& w : ws) {
          PointwiseBoundCheck chk = kernel_pointwise_bound_check(op, z, w, m, 0.0, *grid);
          ++total;
          if (!chk.pass) ++failures;
          if (chk.rhs > 0.0) worst_ratio = std::max(worst_ratio, chk.lhs / chk.rhs);
        }
      }
    }
  }
  Outcome out;
  out.pass = failures == 0;
  out.detail = std::to_string(total - failures) + "/" + std::to_string(total) +
               " grid cells pass; worst lhs/rhs = " + fmt(worst_ratio) + " (slack 1e-4)";
  return out;
}

// --- 9: compactness scan verdicts -------------------------------------------

Outcome criterion_scans() {
  Outcome out;
  std::vector<double> radii = default_scan_radii(7);
  struct Job {
    std::string selector;
    double p, alpha, m;
    bool expect_compact;
  };
  const std::vector<Job> jobs = {{"identity", 2.0, 0.0, 5.0, false},
                                 {"toeplitz:one", 2.0, 0.0, 5.0, false},
                                 {"toeplitz:oneminusr2", 2.0, 0.0, 5.0, true},
                                 {"diagonal:inv_n", 2.0, 1.0, 6.0, true},
                                 {"rankone", 2.0, 0.0, 5.0, true}};
  for (const Job& job : jobs) {
    auto grid = get_grid(job.alpha);
    ScanReport rep = compactness_scan(OperatorSpec::from_selector(job.selector), job.p, job.alpha,
                                      job.m, 8, radii, *grid);
    double inner = 0.0, outer = 0.0;
    for (const ScanSample& s : rep.samples) {
      if (s.radius == radii.front()) inner = std::max(inner, std::abs(s.berezin));
      if (s.radius == radii.back()) outer = std::max(outer, std::abs(s.berezin));
    }
    bool ok;
    std::string note;
    if (job.expect_compact) {
      ok = rep.verdicts.compact_consistent && outer < 0.05 * inner && rep.verdicts.monotone_outer;
      note = "outer/inner = " + fmt(outer / inner);
    } else {
      ok = !rep.verdicts.compact_consistent && outer > 0.9;
      note = "outermost |S~| = " + fmt(outer);
    }
    if (!ok) {
      out.pass = false;
      out.detail += job.selector + " verdict wrong (" + note + "); ";
    } else {
      out.detail += job.selector + " ok (" + note + "); ";
    }
  }
  return out;
}

// --- 10: threshold arithmetic ------------------------------------------------

Outcome criterion_thresholds() {
  Outcome out;
  if (m_threshold(2.0, 0.0) != 4.0) {
    out.pass = false;
    out.detail += "m_threshold(2,0) != 4; ";
  }
  for (int i = 1; i <= 50; ++i) {
    double p = 1.0 + 0.5 * i / 51.0;
    if (!(m_threshold(p, 0.0) < 3.0 / (p - 1.0))) {
      out.pass = false;
      out.detail += "threshold comparison fails at p=" + fmt(p) + "; ";
      break;
    }
  }
  for (double p : {0.5, 1.0}) {
    for (double alpha : {0.0, 1.0, 2.5}) {
      double delta = (1.0 + alpha) / p;
      double first = (2.0 + alpha) / (p * delta) + 1.0;
      double second = (1.0 + p * delta) / (1.0 + alpha) + 1.0;
      if (std::abs(first - second) > 1e-12) {
        out.pass = false;
        out.detail += "branch equality fails at p=" + fmt(p) + " alpha=" + fmt(alpha) + "; ";
      }
    }
  }
  bool pq_ok = pq_regime(4.0, 1.0, 3.0, 0.0).regime == PqRegime::CaseA &&
               pq_regime(4.0, 1.5, 5.0, 0.0).regime == PqRegime::CaseB &&
               pq_regime(4.0, 1.0, 2.0, 0.0).regime == PqRegime::Inapplicable;
  if (!pq_ok) {
    out.pass = false;
    out.detail += "pq_regime worked examples misclassified; ";
  }
  if (out.pass)
    out.detail = "m_threshold(2,0) = 4 exact; 50-point comparison grid; branch equality <= 1e-12; "
                 "pq_regime examples classified";
  return out;
}

// --- 11: scan determinism ------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_determinism() {
  Outcome out;
  const char* cli = std::getenv("BERGMAN_CLI");
  if (cli != nullptr) {
    std::string base = std::string(cli) +
                       " scan --op diagonal:inv_n --p 2 --alpha 0 --m 5 --rays 4 --levels 5 "
                       "--nrad 128 --nang 256 --out ";
    struct Run {
      std::string prefix;
      int jobs;
    };
    const std::vector<Run> runs = {{"/tmp/bergman_acc_scan1", 1},
                                   {"/tmp/bergman_acc_scan2", 1},
                                   {"/tmp/bergman_acc_scan3", 3}};
    for (const Run& r : runs) {
      std::string cmd = base + r.prefix + " --jobs " + std::to_string(r.jobs) + " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        out.pass = false;
        out.detail = "CLI scan run failed";
        return out;
      }
    }
    bool same = slurp("/tmp/bergman_acc_scan1.json") == slurp("/tmp/bergman_acc_scan2.json") &&
                slurp("/tmp/bergman_acc_scan1.json") == slurp("/tmp/bergman_acc_scan3.json") &&
                slurp("/tmp/bergman_acc_scan1.csv") == slurp("/tmp/bergman_acc_scan2.csv") &&
                slurp("/tmp/bergman_acc_scan1.csv") == slurp("/tmp/bergman_acc_scan3.csv");
    out.pass = same;
    out.detail = same ? "CLI scan outputs byte-identical across reruns and --jobs {1,3}"
                      : "CLI scan outputs differ";
    return out;
  }
  // Library-level fallback when the CLI path is not provided.
  auto grid = get_grid(0.0, 128, 256);
  OperatorSpec op = OperatorSpec::from_selector("diagonal:inv_n");
  std::vector<double> radii = default_scan_radii(5);
  ScanReport a = compactness_scan(op, 2.0, 0.0, 5.0, 4, radii, *grid, 1);
  ScanReport b = compactness_scan(op, 2.0, 0.0, 5.0, 4, radii, *grid, 3);
  ScanReport c = compactness_scan(op, 2.0, 0.0, 5.0, 4, radii, *grid, 1);
  bool same = a.to_json() == b.to_json() && a.to_json() == c.to_json() &&
              a.to_csv() == b.to_csv() && a.to_csv() == c.to_csv();
  out.pass = same;
  out.detail = same ? "library scan reports byte-identical across jobs {1,3} (no CLI in env)"
                    : "scan reports differ";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "two-sided integral brackets", criterion_brackets},
      {2, "reproducing property and unit normalized kernels", criterion_reproducing},
      {3, "kernel norm brackets", criterion_norm_brackets},
      {4, "lattice covering/separation and cell totals", criterion_lattice},
      {5, "atomic round trip and refinement", criterion_atomic_roundtrip},
      {6, "weak-null truncated coefficient decay", criterion_weak_null},
      {7, "Berezin transform oracles", criterion_berezin_oracles},
      {8, "pointwise kernel bound grid", criterion_pointwise_bound},
      {9, "boundary scan verdicts", criterion_scans},
      {10, "threshold arithmetic", criterion_thresholds},
      {11, "scan determinism", criterion_determinism},
  };

  bool all_pass = true;
  for (const Entry& entry : entries) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = entry.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d: %s | %s [%.1f s]\n", outcome.pass ? "PASS" : "FAIL", entry.id,
                entry.name, outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  std::printf("%s\n", all_pass ? "ALL ACCEPTANCE CRITERIA PASS" : "ACCEPTANCE FAILURES PRESENT");
  return all_pass ? 0 : 1;
}
