#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bergman/lattice.hpp"
#include "bergman/verify.hpp"

using namespace bergman;

TEST_CASE("build_lattice invariants") {
  Lattice lat = Lattice::build(0.5, 0.95);
  CHECK(lat.center(0) == Complex(0.0, 0.0));
  CHECK(lat.size() > 10);
  // Ordering: modulus ascending.
  for (int k = 1; k < lat.size(); ++k) {
    CHECK(std::abs(lat.center(k)) >= std::abs(lat.center(k - 1)) - 1e-12);
  }
  LatticeReport rep = verify_lattice(lat, 10000, 99);
  CHECK(rep.covering_pass);
  CHECK(rep.separation_pass);
  CHECK(rep.worst_gap < 0.5 + 1e-9);
  CHECK(rep.min_separation >= 0.25);
  CHECK(lat.multiplicity() >= 1);
}

TEST_CASE("construction parameter validation") {
  CHECK_THROWS_AS(Lattice::build(0.0, 0.9), Error);
  CHECK_THROWS_AS(Lattice::build(1.5, 0.9), Error);
  CHECK_THROWS_AS(Lattice::build(0.5, 1.0), Error);
}

TEST_CASE("packing count grows as r shrinks") {
  CHECK(Lattice::build(0.35, 0.9).size() > Lattice::build(0.7, 0.9).size());
}

TEST_CASE("cell assignment") {
  Lattice lat = Lattice::build(0.5, 0.9);
  for (int k : {0, lat.size() / 2, lat.size() - 1}) {
    CHECK(lat.cell_assign(lat.center(k)) == k);
  }
  CHECK_THROWS_AS(lat.cell_assign(Complex(0.95, 0.0)), Error);
  // Ties break toward the smaller index.
  Lattice pair = Lattice::from_centers(0.5, 0.9, {Complex(0.3, 0.0), Complex(-0.3, 0.0)});
  CHECK(pair.cell_assign(Complex(0.0, 0.0)) == 0);
  CHECK(pair.cell_assign(Complex(0.0, 0.5)) == 0);
  // Assigned center is within covering distance of the point.
  for (double r : {0.2, 0.6, 0.89}) {
    Complex w(r * std::cos(1.0), r * std::sin(1.0));
    int k = lat.cell_assign(w);
    CHECK(detail::bergman_metric_raw(w, lat.center(k)) < lat.r());
  }
}

TEST_CASE("cell measures sum to the truncated ball mass") {
  Lattice lat = Lattice::build(0.5, 0.95);
  for (double alpha : {0.0, 1.0}) {
    CellMeasures cm(lat, alpha);
    double closed = 1.0 - std::pow(1.0 - 0.9025, alpha + 1.0);
    CHECK(cm.total() == doctest::Approx(closed).epsilon(1e-6));
    double sum = 0.0;
    for (double v : cm.values()) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum <= 1.0);
  }
}

TEST_CASE("export/import round trip is exact") {
  Lattice lat = Lattice::build(0.6, 0.9);
  std::string text = lat.export_text();
  Lattice back = Lattice::import_text(text);
  REQUIRE(back.size() == lat.size());
  CHECK(back.r() == lat.r());
  CHECK(back.r_max() == lat.r_max());
  for (int k = 0; k < lat.size(); ++k) CHECK(back.center(k) == lat.center(k));
  CHECK(back.export_text() == text);

  CHECK_THROWS_AS(Lattice::import_text("garbage"), Error);
  CHECK_THROWS_AS(Lattice::import_text("bergman-lattice v1\nr 0.5\nr_max 0.9\ncount 3\n0 0\n"),
                  Error);
}

TEST_CASE("adversarial lattices fail verification") {
  Lattice lat = Lattice::build(0.5, 0.95);
  std::vector<Complex> dup = lat.centers();
  dup.push_back(dup.back());
  CHECK_FALSE(verify_lattice(Lattice::from_centers(0.5, 0.95, dup), 1000, 7).separation_pass);

  std::vector<Complex> inner;
  for (const Complex& a : lat.centers())
    if (std::abs(a) < 0.5) inner.push_back(a);
  CHECK_FALSE(verify_lattice(Lattice::from_centers(0.5, 0.95, inner), 1000, 7).covering_pass);
}

TEST_CASE("lattice verify suite is green") {
  for (const CheckRow& row : verify_suite("lattice", 42)) {
    INFO(row.id, " [", row.params, "] observed=", row.observed, " expected=", row.expected);
    CHECK(row.pass);
  }
}
