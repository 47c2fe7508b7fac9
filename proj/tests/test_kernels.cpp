#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bergman/geometry.hpp"
#include "bergman/kernels.hpp"
#include "bergman/verify.hpp"

using namespace bergman;

TEST_CASE("kernel closed values and symmetry") {
  CHECK(kernel(DiskPoint(), DiskPoint(0.3, 0.7), 1.3) == Complex(1.0, 0.0));
  CHECK(kernel(DiskPoint(0.5, 0.0), DiskPoint(0.5, 0.0), 0.0).real() ==
        doctest::Approx(1.0 / 0.5625).epsilon(1e-14));
  DiskPoint z(0.4, -0.2), w(-0.1, 0.6);
  Complex a = kernel(z, w, 0.7);
  Complex b = kernel(w, z, 0.7);
  CHECK(std::abs(a - std::conj(b)) < 1e-14);
}

TEST_CASE("normalized kernel") {
  CHECK(normalized_kernel(DiskPoint(), DiskPoint(0.2, 0.2), 0.5) == Complex(1.0, 0.0));
  // <k_z, 1> = (1-|z|^2)^{(2+alpha)/2} via the reproducing property.
  double alpha = 1.0;
  DiskPoint z(0.6, 0.1);
  auto grid = get_grid(alpha);
  Complex ip = grid->integrate([&](Complex w) {
    return normalized_kernel(z, DiskPoint(w), alpha) * 1.0;
  });
  // <k_z, 1> = conj(<1, k_z>) = conj((1-|z|^2)^{s/2} * 1) with s = 2+alpha
  CHECK(std::abs(ip - std::pow(1.0 - z.abs_sq(), 0.5 * (2.0 + alpha))) < 1e-10);
}

TEST_CASE("kernel norm closed form at p = 2") {
  auto grid = get_grid(0.0);
  for (double r : {0.0, 0.3, 0.8}) {
    DiskPoint z(r, 0.0);
    CHECK(kernel_norm(z, 2.0, 0.0, *grid) ==
          doctest::Approx(std::pow(1.0 - r * r, -1.0)).epsilon(1e-10));
  }
  CHECK(kernel_norm(DiskPoint(), 3.7, 1.2, *grid) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(kernel_norm(DiskPoint(), 0.0, 0.0, *grid), Error);
}

TEST_CASE("kernel norm bounds") {
  // p = 2: the two brackets coincide.
  DiskPoint z(0.8, 0.0);
  NormBounds b2 = kernel_norm_bounds(z, 2.0, 0.0);
  CHECK(b2.lower == doctest::Approx(b2.upper).epsilon(1e-12));
  CHECK(b2.lower == doctest::Approx(1.0 / 0.36).epsilon(1e-12));

  // p = 3, alpha = 0, z = 0.8 against independent 25-digit evaluation.
  NormBounds b3 = kernel_norm_bounds(z, 3.0, 0.0);
  CHECK(b3.lower == doctest::Approx(3.9047808578784687).epsilon(1e-12));
  CHECK(b3.upper == doctest::Approx(4.4698582620631007).epsilon(1e-12));

  CHECK(kernel_norm_bounds(DiskPoint(), 1.5, 0.0).lower == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(kernel_norm_bounds(z, 1.0, 0.0), Error);
}

TEST_CASE("k_z(phi_z(w)) k_z(w) = 1") {
  DiskPoint z(0.55, -0.35);
  for (double alpha : {0.0, 2.5}) {
    for (double r : {0.0, 0.5, 0.9}) {
      DiskPoint w(r * std::cos(2.0), r * std::sin(2.0));
      Complex prod = normalized_kernel(z, mobius(z, w), alpha) * normalized_kernel(z, w, alpha);
      CHECK(std::abs(prod - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("kernels verify suite is green") {
  for (const CheckRow& row : verify_suite("kernels", 42)) {
    INFO(row.id, " [", row.params, "] observed=", row.observed, " expected=", row.expected);
    CHECK(row.pass);
  }
}
