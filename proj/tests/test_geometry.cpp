#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bergman/geometry.hpp"
#include "bergman/verify.hpp"

using namespace bergman;

TEST_CASE("disk point construction rejects the boundary") {
  CHECK_NOTHROW(DiskPoint(0.999, 0.0));
  CHECK_THROWS_AS(DiskPoint(1.0, 0.0), Error);
  CHECK_THROWS_AS(DiskPoint(0.8, 0.8), Error);
  CHECK_THROWS_AS(DiskPoint(1.0 - 1e-16, 0.0), Error);
}

TEST_CASE("mobius examples") {
  CHECK(mobius(DiskPoint(0.5, 0.0), DiskPoint()).value() == Complex(0.5, 0.0));
  CHECK(std::abs(mobius(DiskPoint(0.5, 0.0), DiskPoint(0.5, 0.0)).value()) == 0.0);
  CHECK(std::abs(mobius(DiskPoint(0.5, 0.0), DiskPoint(0.25, 0.0)).value() -
                 Complex(0.2857142857142857, 0.0)) < 1e-16);
}

TEST_CASE("pseudo-hyperbolic distance") {
  CHECK(pseudo_hyperbolic(DiskPoint(), DiskPoint(0.6, 0.0)) == doctest::Approx(0.6).epsilon(1e-15));
  DiskPoint z(0.3, -0.4);
  CHECK(pseudo_hyperbolic(z, z) == 0.0);
  CHECK(pseudo_hyperbolic(DiskPoint(0.5, 0.0), DiskPoint(0.0, 0.25)) ==
        doctest::Approx(0.5547001962252291).epsilon(1e-14));
  // symmetry
  DiskPoint w(0.7, 0.1);
  CHECK(pseudo_hyperbolic(z, w) == doctest::Approx(pseudo_hyperbolic(w, z)).epsilon(1e-15));
}

TEST_CASE("bergman metric saturates instead of overflowing") {
  CHECK(bergman_metric(DiskPoint(), DiskPoint(0.6, 0.0)) ==
        doctest::Approx(0.6931471805599453).epsilon(1e-14));
  DiskPoint z(0.9999999999, 0.0);
  DiskPoint w(-0.9999999999, 0.0);
  CHECK(std::isinf(bergman_metric(z, w)));
  CHECK(bergman_metric(z, z) == 0.0);
}

TEST_CASE("mobius invariance of the metric") {
  std::mt19937_64 rng(7);
  auto point = [&rng] {
    double radius = 0.95 * std::sqrt((rng() >> 11) * 0x1.0p-53);
    double theta = 6.283185307179586 * ((rng() >> 11) * 0x1.0p-53);
    return DiskPoint(radius * std::cos(theta), radius * std::sin(theta));
  };
  for (int i = 0; i < 200; ++i) {
    DiskPoint a = point(), z = point(), w = point();
    double direct = bergman_metric(z, w);
    double moved = bergman_metric(mobius(a, z), mobius(a, w));
    CHECK(std::abs(direct - moved) < 1e-12);
  }
}

TEST_CASE("bergman disk realization") {
  EuclideanDisk origin = bergman_disk(DiskPoint(), 0.8);
  CHECK(std::abs(origin.center) == 0.0);
  CHECK(origin.radius == doctest::Approx(std::tanh(0.8)).epsilon(1e-15));

  EuclideanDisk ex = bergman_disk(DiskPoint(0.5, 0.0), 0.5);
  CHECK(ex.center.real() == doctest::Approx(0.41540134100829238).epsilon(1e-13));
  CHECK(ex.radius == doctest::Approx(0.36613511384563576).epsilon(1e-13));

  CHECK_THROWS_AS(bergman_disk(DiskPoint(0.5, 0.0), 0.0), Error);
}

TEST_CASE("geometry verify suite is green") {
  for (const CheckRow& row : verify_suite("geometry", 42)) {
    INFO(row.id, " [", row.params, "] observed=", row.observed, " expected=", row.expected);
    CHECK(row.pass);
  }
}
