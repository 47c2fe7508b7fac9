#include "bergman/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/parallel.hpp"
#include "bergman/report.hpp"

namespace bergman {

double m_threshold(double p, double alpha) {
  if (!(p > 1.0)) fail(ErrorCode::InvalidArgument, "m_threshold: requires p > 1 (use the small-p variant)");
  if (!(alpha > -1.0)) fail(ErrorCode::InvalidArgument, "m_threshold: alpha must be > -1");
  return p * (2.0 + alpha) / (1.0 + alpha) * std::max(1.0, 1.0 / (p - 1.0));
}

SmallPThreshold m_threshold_small_p(double p, double alpha, double delta) {
  if (!(p > 0.0 && p <= 1.0))
    fail(ErrorCode::InvalidArgument, "m_threshold_small_p: requires 0 < p <= 1");
  if (!(alpha > -1.0)) fail(ErrorCode::InvalidArgument, "m_threshold_small_p: alpha must be > -1");
  if (!(delta > 0.0)) fail(ErrorCode::InvalidArgument, "m_threshold_small_p: delta must be > 0");
  SmallPThreshold out;
  out.threshold =
      std::max((2.0 + alpha) / (p * delta) + 1.0, (1.0 + p * delta) / (1.0 + alpha) + 1.0);
  out.beta_exponent = (2.0 + alpha) / p - 2.0 + delta;
  return out;
}

PqClassification pq_regime(double p, double q, double m, double alpha) {
  if (!(p > 2.0)) fail(ErrorCode::InvalidArgument, "pq_regime: requires p > 2");
  if (!(q > 0.0)) fail(ErrorCode::InvalidArgument, "pq_regime: requires q > 0");
  if (!(alpha > -1.0)) fail(ErrorCode::InvalidArgument, "pq_regime: alpha must be > -1");
  PqClassification out;
  out.window_lo = p * (2.0 + alpha) / ((p - 1.0) * (1.0 + alpha));
  out.window_hi = p * (2.0 + alpha) / (1.0 + alpha);
  if (!(m > out.window_lo && m <= out.window_hi)) {
    out.reason = "m outside the window (window_lo, window_hi]";
    return out;
  }
  if (p >= m) {
    if (q < m * (1.0 + alpha) / (2.0 + alpha)) {
      out.regime = PqRegime::CaseA;
      return out;
    }
    out.reason = "p >= m but q >= m(1+alpha)/(2+alpha)";
    return out;
  }
  if (q < p / (2.0 + alpha)) {
    out.regime = PqRegime::CaseB;
    return out;
  }
  out.reason = "p < m but q >= p/(2+alpha)";
  return out;
}

std::vector<double> default_scan_radii(int levels) {
  if (levels < 2) fail(ErrorCode::InvalidArgument, "scan radii: need at least two levels");
  std::vector<double> radii(levels);
  for (int j = 1; j <= levels; ++j) radii[j - 1] = 1.0 - std::exp2(-j);
  return radii;
}

namespace {

void fill_sample(const OperatorSpec& op, double alpha, double m, const DiskGrid& grid,
                 double angle, double radius, ScanSample* out) {
  out->angle = angle;
  out->radius = radius;
  DiskPoint z(radius * std::cos(angle), radius * std::sin(angle));
  bool conv_b = true, conv_n = true;
  out->berezin = berezin_reproducing(op, z, alpha, grid, &conv_b);
  std::vector<double> norms = s_z_one_norms(op, z, {m, 1.0, 0.5 * m}, alpha, grid, &conv_n,
                                            &out->truncation);
  out->norm_m = norms[0];
  out->norm_1 = norms[1];
  out->norm_half = norms[2];
  out->converged = conv_b && conv_n && std::isfinite(out->norm_m);
}

// Scans raise diagonal truncations up front so boundary samples stay inside
// the documented evaluation range.
OperatorSpec prepared_for(const OperatorSpec& op, double max_radius, double alpha) {
  if (op.kind() != OperatorSpec::Kind::Diagonal) return op;
  TruncationChoice tc = required_truncation(max_radius, alpha, 1e-10);
  return op.with_truncation(tc.n);
}

void fill_boundedness_verdicts(ScanReport* report) {
  double sup = 0.0;
  double outer_radius = 0.0;
  for (const ScanSample& s : report->samples) outer_radius = std::max(outer_radius, s.radius);
  double sup_outer = 0.0, sup_inner = 0.0;
  for (const ScanSample& s : report->samples) {
    sup = std::max(sup, s.norm_m);
    if (s.radius >= outer_radius - 1e-15)
      sup_outer = std::max(sup_outer, s.norm_m);
    else
      sup_inner = std::max(sup_inner, s.norm_m);
  }
  report->verdicts.threshold = m_threshold(report->p, report->alpha);
  report->verdicts.sup_norm_m = sup;
  // "Stable" = the outermost ring does not dominate the rest by more than 25%.
  report->verdicts.norms_stable =
      std::isfinite(sup) && (sup_inner == 0.0 ? sup_outer == 0.0 : sup_outer <= 1.25 * sup_inner);
  report->verdicts.hypothesis_met = report->verdicts.norms_stable &&
                                    report->all_converged &&
                                    report->m > report->verdicts.threshold;
}

}  // namespace

ScanReport boundedness_report(const OperatorSpec& op, double p, double alpha, double m,
                              const std::vector<DiskPoint>& z_samples, const DiskGrid& grid,
                              int jobs) {
  SpaceParams{alpha, p, m}.validate();
  if (z_samples.empty()) fail(ErrorCode::InvalidArgument, "boundedness_report: no samples");
  ScanReport report;
  report.op_name = op.name();
  report.p = p;
  report.alpha = alpha;
  report.m = m;
  report.n_rad = grid.n_rad();
  report.n_ang = grid.n_ang();

  double max_radius = 0.0;
  for (const DiskPoint& z : z_samples) max_radius = std::max(max_radius, z.abs());
  OperatorSpec prepared = prepared_for(op, max_radius, alpha);

  report.samples.resize(z_samples.size());
  parallel_for(static_cast<int>(z_samples.size()), jobs, [&](int i) {
    double angle = std::arg(z_samples[i].value());
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;
    if (z_samples[i].abs() == 0.0) angle = 0.0;
    fill_sample(prepared, alpha, m, grid, angle, z_samples[i].abs(), &report.samples[i]);
  });
  std::sort(report.samples.begin(), report.samples.end(), [](const ScanSample& a, const ScanSample& b) {
    if (a.angle != b.angle) return a.angle < b.angle;
    return a.radius < b.radius;
  });
  report.all_converged = true;
  for (const ScanSample& s : report.samples) report.all_converged &= s.converged;
  fill_boundedness_verdicts(&report);
  return report;
}

ScanReport compactness_scan(const OperatorSpec& op, double p, double alpha, double m, int rays,
                            const std::vector<double>& radii, const DiskGrid& grid, int jobs) {
  SpaceParams{alpha, p, m}.validate();
  if (rays < 1) fail(ErrorCode::InvalidArgument, "compactness_scan: need at least one ray");
  if (radii.size() < 2) fail(ErrorCode::InvalidArgument, "compactness_scan: need at least two radii");
  std::vector<double> sorted_radii = radii;
  std::sort(sorted_radii.begin(), sorted_radii.end());
  for (double rho : sorted_radii)
    if (!(rho > 0.0 && rho < 1.0)) fail(ErrorCode::InvalidArgument, "compactness_scan: radii must lie in (0,1)");

  ScanReport report;
  report.op_name = op.name();
  report.p = p;
  report.alpha = alpha;
  report.m = m;
  report.rays = rays;
  report.radii = sorted_radii;
  report.n_rad = grid.n_rad();
  report.n_ang = grid.n_ang();

  OperatorSpec prepared = prepared_for(op, sorted_radii.back(), alpha);

  const int levels = static_cast<int>(sorted_radii.size());
  report.samples.resize(static_cast<std::size_t>(rays) * levels);
  parallel_for(rays * levels, jobs, [&](int idx) {
    int ray = idx / levels;
    int level = idx % levels;
    double angle = 2.0 * std::numbers::pi * ray / rays;
    fill_sample(prepared, alpha, m, grid, angle, sorted_radii[level], &report.samples[idx]);
  });
  report.all_converged = true;
  for (const ScanSample& s : report.samples) report.all_converged &= s.converged;

  fill_boundedness_verdicts(&report);

  // Max over rays of |S~| per radius, innermost to outermost.
  std::vector<double> profile(levels, 0.0);
  for (int ray = 0; ray < rays; ++ray)
    for (int level = 0; level < levels; ++level)
      profile[level] =
          std::max(profile[level], std::abs(report.samples[static_cast<std::size_t>(ray) * levels + level].berezin));

  ScanVerdicts& v = report.verdicts;
  v.compactness_evaluated = true;
  v.outer_over_inner = profile[0] == 0.0 ? 0.0 : profile[levels - 1] / profile[0];
  v.monotone_outer = true;
  for (int j = levels / 2; j + 1 < levels; ++j) {
    if (profile[j + 1] > profile[j] * (1.0 + 1e-9)) v.monotone_outer = false;
  }
  v.compact_consistent = (profile[levels - 1] < 0.05 * profile[0]) && v.monotone_outer;

  // Least-squares slope of log profile vs log(1 - radius) over the outer half.
  int first = levels / 2;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int j = first; j < levels; ++j) {
    if (profile[j] <= 0.0) continue;
    double x = std::log(1.0 - sorted_radii[j]);
    double y = std::log(profile[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  v.fitted_rate = count >= 2 ? (count * sxy - sx * sy) / (count * sxx - sx * sx) : 0.0;
  return report;
}

std::string ScanReport::to_csv() const {
  CsvWriter csv({"angle", "radius", "re_berezin", "im_berezin", "norm_m", "norm_1", "norm_half_m"});
  for (const ScanSample& s : samples) {
    csv.row({format_double(s.angle), format_double(s.radius), format_double(s.berezin.real()),
             format_double(s.berezin.imag()), format_double(s.norm_m), format_double(s.norm_1),
             format_double(s.norm_half)});
  }
  return csv.take();
}

std::string ScanReport::to_json() const {
  JsonWriter j;
  j.begin_object();
  j.key("params");
  j.begin_object();
  j.key("op");
  j.value(op_name);
  j.key("p");
  j.value(p);
  j.key("alpha");
  j.value(alpha);
  j.key("m");
  j.value(m);
  j.end_object();
  j.key("samples");
  j.begin_array();
  for (const ScanSample& s : samples) {
    j.begin_object();
    j.key("angle");
    j.value(s.angle);
    j.key("radius");
    j.value(s.radius);
    j.key("re_berezin");
    j.value(s.berezin.real());
    j.key("im_berezin");
    j.value(s.berezin.imag());
    j.key("norm_m");
    j.value(s.norm_m);
    j.key("norm_1");
    j.value(s.norm_1);
    j.key("norm_half_m");
    j.value(s.norm_half);
    j.key("truncation");
    j.value(s.truncation);
    j.key("converged");
    j.value(s.converged);
    j.end_object();
  }
  j.end_array();
  j.key("verdicts");
  j.begin_object();
  j.key("threshold");
  j.value(verdicts.threshold);
  j.key("sup_norm_m");
  j.value(verdicts.sup_norm_m);
  j.key("norms_stable");
  j.value(verdicts.norms_stable);
  j.key("hypothesis_met");
  j.value(verdicts.hypothesis_met);
  j.key("compactness_evaluated");
  j.value(verdicts.compactness_evaluated);
  j.key("compact_consistent");
  j.value(verdicts.compact_consistent);
  j.key("outer_over_inner");
  j.value(verdicts.outer_over_inner);
  j.key("monotone_outer");
  j.value(verdicts.monotone_outer);
  j.key("fitted_rate");
  j.value(verdicts.fitted_rate);
  j.end_object();
  j.key("metadata");
  j.begin_object();
  j.key("rays");
  j.value(rays);
  j.key("radii");
  j.begin_array();
  for (double rho : radii) j.value(rho);
  j.end_array();
  j.key("n_rad");
  j.value(n_rad);
  j.key("n_ang");
  j.value(n_ang);
  j.key("series_cap");
  j.value(kSeriesCap);
  j.key("all_converged");
  j.value(all_converged);
  j.end_object();
  j.end_object();
  return j.take();
}

std::string ScanReport::verdict_line() const {
  std::string line = op_name + ": ";
  if (verdicts.compactness_evaluated) {
    line += verdicts.compact_consistent ? "compact-consistent" : "not compact-consistent";
    line += " (outer/inner |S~| = " + format_double(verdicts.outer_over_inner) + ")";
  } else {
    line += "boundedness";
  }
  line += "; sup ||S_z 1||_m = " + format_double(verdicts.sup_norm_m);
  line += verdicts.hypothesis_met ? "; hypothesis satisfied (m = " : "; hypothesis not met (m = ";
  line += format_double(m) + ", threshold " + format_double(verdicts.threshold) + ")";
  if (!all_converged) line += "; WARNING: some samples did not converge";
  return line;
}

}  // namespace bergman
