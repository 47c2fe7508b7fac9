#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bergman/diagnostics.hpp"

using namespace bergman;

TEST_CASE("m_threshold arithmetic") {
  CHECK(m_threshold(2.0, 0.0) == 4.0);
  CHECK(m_threshold(1.25, 0.0) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(m_threshold(3.0, 1.0) == doctest::Approx(4.5).epsilon(1e-14));
  CHECK_THROWS_AS(m_threshold(1.0, 0.0), Error);
  CHECK_THROWS_AS(m_threshold(2.0, -1.0), Error);
}

TEST_CASE("threshold comparison on (1, 1.5)") {
  // p (2+a)/(1+a) max{1, 1/(p-1)} < 3/(p-1) at alpha = 0 on the open strip.
  for (int i = 1; i <= 50; ++i) {
    double p = 1.0 + 0.5 * i / 51.0;
    CHECK(m_threshold(p, 0.0) < 3.0 / (p - 1.0));
  }
}

TEST_CASE("small-p thresholds") {
  SmallPThreshold a = m_threshold_small_p(1.0, 0.0, 0.5);
  CHECK(a.threshold == doctest::Approx(5.0).epsilon(1e-14));
  SmallPThreshold b = m_threshold_small_p(0.5, 0.0, 4.0);
  CHECK(b.threshold == doctest::Approx(4.0).epsilon(1e-14));
  // Branch equality at the sharp delta.
  for (double p : {0.5, 1.0}) {
    for (double alpha : {0.0, 1.0, 2.5}) {
      double delta = (1.0 + alpha) / p;
      SmallPThreshold t = m_threshold_small_p(p, alpha, delta);
      double first = (2.0 + alpha) / (p * delta) + 1.0;
      double second = (1.0 + p * delta) / (1.0 + alpha) + 1.0;
      CHECK(std::abs(first - second) < 1e-12);
      CHECK(t.threshold == doctest::Approx(2.0 + 1.0 / (1.0 + alpha)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(m_threshold_small_p(1.5, 0.0, 0.5), Error);
  CHECK_THROWS_AS(m_threshold_small_p(0.5, 0.0, 0.0), Error);
}

TEST_CASE("pq regime classification") {
  PqClassification a = pq_regime(4.0, 1.0, 3.0, 0.0);
  CHECK(a.regime == PqRegime::CaseA);
  CHECK(a.window_lo == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(a.window_hi == doctest::Approx(8.0).epsilon(1e-14));

  CHECK(pq_regime(4.0, 1.5, 5.0, 0.0).regime == PqRegime::CaseB);
  CHECK(pq_regime(4.0, 1.0, 2.0, 0.0).regime == PqRegime::Inapplicable);
  // Boundary p = m classifies under case (a).
  CHECK(pq_regime(4.0, 1.0, 4.0, 0.0).regime == PqRegime::CaseA);
  CHECK_THROWS_AS(pq_regime(2.0, 1.0, 3.0, 0.0), Error);
}

TEST_CASE("default scan radii") {
  std::vector<double> radii = default_scan_radii();
  REQUIRE(radii.size() == 7);
  CHECK(radii.front() == 0.5);
  CHECK(radii.back() == doctest::Approx(0.9921875).epsilon(1e-15));
}

TEST_CASE("small compactness scans classify the oracles") {
  auto grid = get_grid(0.0, 64, 128);
  std::vector<double> radii = default_scan_radii(5);  // ceiling 0.96875, cheap

  ScanReport id = compactness_scan(OperatorSpec::identity(), 2.0, 0.0, 5.0, 4, radii, *grid);
  CHECK_FALSE(id.verdicts.compact_consistent);
  CHECK(id.verdicts.hypothesis_met);
  CHECK(id.verdicts.sup_norm_m == doctest::Approx(1.0).epsilon(1e-8));

  // The 5% decay rule needs the full boundary ladder: |S~| ~ 1 - rho^2 for
  // this oracle, so seven levels reach 0.021 of the innermost value.
  ScanReport dg = compactness_scan(OperatorSpec::from_selector("diagonal:inv_n"), 2.0, 0.0, 5.0, 4,
                                   default_scan_radii(7), *grid);
  CHECK(dg.verdicts.compact_consistent);
  CHECK(dg.all_converged);

  // Sample ordering: radius ascending within each ray.
  for (std::size_t i = 1; i < dg.samples.size(); ++i) {
    if (dg.samples[i].angle == dg.samples[i - 1].angle) {
      CHECK(dg.samples[i].radius > dg.samples[i - 1].radius);
    }
  }
}

TEST_CASE("boundedness report on explicit samples") {
  auto grid = get_grid(0.0, 64, 128);
  std::vector<DiskPoint> samples = {DiskPoint(0.1, 0.0), DiskPoint(0.5, 0.0), DiskPoint(0.0, 0.9)};
  ScanReport rep = boundedness_report(OperatorSpec::identity(), 2.0, 0.0, 5.0, samples, *grid);
  CHECK(rep.verdicts.sup_norm_m == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rep.verdicts.hypothesis_met);
  CHECK_FALSE(rep.verdicts.compactness_evaluated);
  // Hypothesis fails when m is below the threshold.
  ScanReport low = boundedness_report(OperatorSpec::identity(), 2.0, 0.0, 3.0, samples, *grid);
  CHECK_FALSE(low.verdicts.hypothesis_met);
  CHECK(low.verdicts.threshold == 4.0);
}

TEST_CASE("report serialization is deterministic and complete") {
  auto grid = get_grid(0.0, 64, 128);
  ScanReport rep = compactness_scan(OperatorSpec::from_selector("diagonal:inv_n"), 2.0, 0.0, 5.0, 2,
                                    default_scan_radii(3), *grid, 1);
  ScanReport rep4 = compactness_scan(OperatorSpec::from_selector("diagonal:inv_n"), 2.0, 0.0, 5.0,
                                     2, default_scan_radii(3), *grid, 4);
  CHECK(rep.to_json() == rep4.to_json());
  CHECK(rep.to_csv() == rep4.to_csv());
  CHECK(rep.to_csv().find("angle,radius,re_berezin,im_berezin,norm_m,norm_1,norm_half_m") == 0);
  CHECK(rep.to_json().find("\"verdicts\"") != std::string::npos);
  CHECK(rep.verdict_line().find("compact") != std::string::npos);
}
