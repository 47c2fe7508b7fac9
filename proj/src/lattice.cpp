#include "bergman/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bergman/parallel.hpp"
#include "bergman/report.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform01(std::mt19937_64& rng) {
  // Portable uniform double in [0,1); std::uniform_real_distribution is
  // implementation-defined.
  return (rng() >> 11) * 0x1.0p-53;
}

// Deterministic mixed sample cloud: even indices area-uniform over
// |w| <= r_max, odd indices uniform in hyperbolic radius (boundary-dense).
Complex sample_point(std::mt19937_64& rng, int index, double r_max) {
  double u = uniform01(rng);
  double v = uniform01(rng);
  double radius;
  if (index % 2 == 0) {
    radius = r_max * std::sqrt(v);
  } else {
    radius = std::tanh(v * std::atanh(r_max));
  }
  double theta = kTwoPi * u;
  return Complex(radius * std::cos(theta), radius * std::sin(theta));
}

struct Ring {
  double beta;    // hyperbolic radius of the ring
  double rho;     // Euclidean radius, tanh(beta)
  std::vector<double> angles;   // accepted angles, ascending
  std::vector<Complex> points;  // accepted centers, same order
};

// True if some accepted center on `ring` lies within beta-distance sep of
// the candidate at (rho1, theta). Only angles with
//   sin^2(dtheta/2) < (cosh(2 sep) - 1)(1-rho1^2)(1-rho2^2) / (8 rho1 rho2)
// can violate separation, which bounds the scan window.
bool ring_conflicts(const Ring& ring, double rho1, double theta, Complex cand, double sep) {
  if (ring.points.empty()) return false;
  double rho2 = ring.rho;
  double sep_sq_lhs = std::cosh(2.0 * sep) - 1.0;
  double window = std::numbers::pi;
  double prod = rho1 * rho2;
  if (prod > 1e-12) {
    double s2 = sep_sq_lhs * (1.0 - rho1 * rho1) * (1.0 - rho2 * rho2) / (8.0 * prod);
    if (s2 < 1.0) window = 2.0 * std::asin(std::sqrt(s2));
  }
  double sep_rho = std::tanh(sep);
  double sep_rho_sq = sep_rho * sep_rho;
  auto check = [&](std::size_t idx) {
    return detail::pseudo_hyperbolic_sq(cand, ring.points[idx]) < sep_rho_sq;
  };
  auto circ_diff = [&](double a) {
    double d = std::abs(a - theta);
    return std::min(d, kTwoPi - d);
  };
  // The set {|dtheta| <= window} is one arc, so two one-directional scans
  // from the insertion point, each stopping at the first point outside the
  // window, visit every point that can conflict.
  const auto& angles = ring.angles;
  std::size_t n = angles.size();
  auto it = std::lower_bound(angles.begin(), angles.end(), theta);
  std::size_t start = static_cast<std::size_t>(it - angles.begin()) % n;
  std::size_t idx = start;
  for (std::size_t step = 0; step < n; ++step, idx = (idx + 1) % n) {
    if (circ_diff(angles[idx]) > window) break;
    if (check(idx)) return true;
  }
  idx = (start + n - 1) % n;
  for (std::size_t step = 0; step < n; ++step, idx = (idx + n - 1) % n) {
    if (circ_diff(angles[idx]) > window) break;
    if (check(idx)) return true;
  }
  return false;
}

}  // namespace

Lattice::Lattice(double r, double r_max, std::vector<Complex> centers)
    : r_(r), r_max_(r_max), centers_(std::move(centers)) {
  // Multiplicity of the dilated disks, sampled deterministically.
  const int n_samples = 10000;
  std::vector<int> counts(n_samples, 0);
  double dilated = std::tanh(2.0 * r_);
  double dilated_sq = dilated * dilated;
  parallel_for(n_samples, 0, [&](int i) {
    std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(i));
    Complex w = sample_point(rng, i, r_max_);
    int c = 0;
    for (const Complex& a : centers_) {
      if (detail::pseudo_hyperbolic_sq(w, a) < dilated_sq) ++c;
    }
    counts[i] = c;
  });
  multiplicity_ = *std::max_element(counts.begin(), counts.end());
}

Lattice Lattice::build(double r, double r_max) {
  if (!(r > 0.0 && r <= 1.0)) fail(ErrorCode::InvalidArgument, "build_lattice: need 0 < r <= 1");
  if (!(r_max > 0.0 && r_max < 1.0))
    fail(ErrorCode::InvalidArgument, "build_lattice: need 0 < r_max < 1");

  double h = r / 4.0;  // candidate ring pitch in the Bergman metric
  double beta_max = std::atanh(r_max);
  double sep = r / 2.0;
  int ring_window = static_cast<int>(std::ceil(sep / h)) + 1;

  std::vector<Ring> rings;
  for (int j = 0;; ++j) {
    double beta = j * h;
    bool last = beta >= beta_max - 1e-12;
    if (last) beta = beta_max;
    Ring ring;
    ring.beta = beta;
    ring.rho = last ? r_max : std::tanh(beta);
    rings.push_back(std::move(ring));
    if (last) break;
  }

  std::vector<Complex> accepted;
  for (std::size_t j = 0; j < rings.size(); ++j) {
    Ring& ring = rings[j];
    int n_ang = (j == 0) ? 1
                         : std::max<int>(1, static_cast<int>(std::ceil(
                                                std::numbers::pi * std::sinh(2.0 * ring.beta) / h)));
    for (int l = 0; l < n_ang; ++l) {
      double theta = kTwoPi * l / n_ang;
      Complex cand(ring.rho * std::cos(theta), ring.rho * std::sin(theta));
      bool conflict = false;
      int lo = std::max<int>(0, static_cast<int>(j) - ring_window);
      for (int jj = lo; jj <= static_cast<int>(j) && !conflict; ++jj) {
        conflict = ring_conflicts(rings[jj], ring.rho, theta, cand, sep);
      }
      if (!conflict) {
        ring.angles.push_back(theta);
        ring.points.push_back(cand);
        accepted.push_back(cand);
        if (static_cast<int>(accepted.size()) > kMaxCenters)
          fail(ErrorCode::InvalidArgument,
               "build_lattice: center count exceeds 10^6; increase r or decrease r_max");
      }
    }
  }
  // Ring-then-angle acceptance order is already (|a_k| ascending, angle).
  return Lattice(r, r_max, std::move(accepted));
}

Lattice Lattice::from_centers(double r, double r_max, std::vector<Complex> centers) {
  if (!(r > 0.0 && r <= 1.0)) fail(ErrorCode::InvalidArgument, "Lattice: need 0 < r <= 1");
  if (!(r_max > 0.0 && r_max < 1.0)) fail(ErrorCode::InvalidArgument, "Lattice: need 0 < r_max < 1");
  if (centers.empty()) fail(ErrorCode::InvalidArgument, "Lattice: need at least one center");
  for (const Complex& a : centers) {
    if (!(std::abs(a) < DiskPoint::kMaxModulus))
      fail(ErrorCode::InvalidArgument, "Lattice: center outside the open disk");
  }
  return Lattice(r, r_max, std::move(centers));
}

int Lattice::cell_assign(Complex w) const {
  if (std::abs(w) > r_max_ * (1.0 + 1e-12))
    fail(ErrorCode::Domain, "cell_assign: |w| exceeds the truncation ceiling r_max");
  int best = 0;
  double best_d = detail::pseudo_hyperbolic_sq(w, centers_[0]);
  for (int k = 1; k < size(); ++k) {
    double d = detail::pseudo_hyperbolic_sq(w, centers_[k]);
    if (d < best_d) {  // strict: ties stay with the smaller index
      best_d = d;
      best = k;
    }
  }
  return best;
}

std::string Lattice::export_text() const {
  std::string out = "bergman-lattice v1\n";
  out += "r " + format_double(r_) + "\n";
  out += "r_max " + format_double(r_max_) + "\n";
  out += "count " + format_int(size()) + "\n";
  for (const Complex& a : centers_) {
    out += format_double(a.real()) + " " + format_double(a.imag()) + "\n";
  }
  return out;
}

Lattice Lattice::import_text(const std::string& text) {
  std::istringstream in(text);
  std::string magic, version;
  if (!(in >> magic >> version) || magic != "bergman-lattice" || version != "v1")
    fail(ErrorCode::Io, "lattice import: bad header (expected 'bergman-lattice v1')");
  std::string key;
  double r = 0.0, r_max = 0.0;
  long long count = 0;
  if (!(in >> key >> r) || key != "r") fail(ErrorCode::Io, "lattice import: missing 'r'");
  if (!(in >> key >> r_max) || key != "r_max") fail(ErrorCode::Io, "lattice import: missing 'r_max'");
  if (!(in >> key >> count) || key != "count") fail(ErrorCode::Io, "lattice import: missing 'count'");
  if (count <= 0 || count > kMaxCenters) fail(ErrorCode::Io, "lattice import: bad center count");
  std::vector<Complex> centers;
  centers.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    double re, im;
    if (!(in >> re >> im)) fail(ErrorCode::Io, "lattice import: truncated center list");
    centers.emplace_back(re, im);
  }
  return from_centers(r, r_max, std::move(centers));
}

LatticeReport verify_lattice(const Lattice& lat, int n_samples, std::uint64_t seed, int jobs) {
  LatticeReport report;
  report.multiplicity = lat.multiplicity();

  std::vector<double> gaps(n_samples, 0.0);
  parallel_for(n_samples, jobs, [&](int i) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ULL);
    Complex w = sample_point(rng, i, lat.r_max());
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& a : lat.centers()) {
      best = std::min(best, detail::pseudo_hyperbolic_sq(w, a));
    }
    double rho = std::sqrt(best);
    gaps[i] = (rho >= 1.0 - 1e-15) ? std::numeric_limits<double>::infinity()
                                   : 0.5 * std::log((1.0 + rho) / (1.0 - rho));
  });
  report.worst_gap = *std::max_element(gaps.begin(), gaps.end());

  const int n = lat.size();
  std::vector<double> row_min(n, std::numeric_limits<double>::infinity());
  parallel_for(n, jobs, [&](int i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = i + 1; j < n; ++j) {
      best = std::min(best, detail::pseudo_hyperbolic_sq(lat.center(i), lat.center(j)));
    }
    row_min[i] = best;
  });
  double min_rho_sq = *std::min_element(row_min.begin(), row_min.end());
  if (n < 2) {
    report.min_separation = std::numeric_limits<double>::infinity();
  } else {
    double rho = std::sqrt(min_rho_sq);
    report.min_separation = (rho >= 1.0 - 1e-15) ? std::numeric_limits<double>::infinity()
                                                 : 0.5 * std::log((1.0 + rho) / (1.0 - rho));
  }

  report.covering_pass = report.worst_gap < lat.r() + 1e-9;
  report.separation_pass = report.min_separation >= lat.r() / 2.0;
  report.pass = report.covering_pass && report.separation_pass;
  return report;
}

CellMeasures::CellMeasures(const Lattice& lat, double alpha, int n_rad, int n_ang, int jobs)
    : alpha_(alpha) {
  if (!(alpha > -1.0)) fail(ErrorCode::InvalidArgument, "CellMeasures: alpha must be > -1");
  // Gauss-Legendre in u on (0, r_max^2); (1-u)^alpha is smooth there.
  RadialJacobiRule legendre(0.0, n_rad);
  const double u_top = lat.r_max() * lat.r_max();
  const int n = lat.size();

  std::vector<int> assign(static_cast<std::size_t>(n_rad) * n_ang, 0);
  std::vector<double> radius(n_rad);
  for (int i = 0; i < n_rad; ++i) radius[i] = std::sqrt(u_top * legendre.nodes()[i]);
  std::vector<double> cos_table(n_ang), sin_table(n_ang);
  for (int l = 0; l < n_ang; ++l) {
    double theta = kTwoPi * l / n_ang;
    cos_table[l] = std::cos(theta);
    sin_table[l] = std::sin(theta);
  }
  parallel_for(n_rad, jobs, [&](int i) {
    for (int l = 0; l < n_ang; ++l) {
      Complex w(radius[i] * cos_table[l], radius[i] * sin_table[l]);
      int best = 0;
      double best_d = detail::pseudo_hyperbolic_sq(w, lat.center(0));
      for (int k = 1; k < n; ++k) {
        double d = detail::pseudo_hyperbolic_sq(w, lat.center(k));
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      assign[static_cast<std::size_t>(i) * n_ang + l] = best;
    }
  });

  // Sequential accumulation in node order: deterministic for any job count.
  values_.assign(n, 0.0);
  for (int i = 0; i < n_rad; ++i) {
    double u = u_top * legendre.nodes()[i];
    double node_w = (alpha + 1.0) * std::pow(1.0 - u, alpha) * u_top * legendre.weights()[i] / n_ang;
    for (int l = 0; l < n_ang; ++l) {
      values_[assign[static_cast<std::size_t>(i) * n_ang + l]] += node_w;
    }
  }
  for (double v : values_) total_ += v;
}

}  // namespace bergman
