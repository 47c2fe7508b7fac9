#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bergman/geometry.hpp"
#include "bergman/operators.hpp"
#include "bergman/verify.hpp"

using namespace bergman;

TEST_CASE("operator selectors") {
  CHECK(OperatorSpec::from_selector("identity").kind() == OperatorSpec::Kind::Identity);
  CHECK(OperatorSpec::from_selector("toeplitz:one").kind() == OperatorSpec::Kind::Toeplitz);
  CHECK(OperatorSpec::from_selector("toeplitz:radialpow:2").toeplitz_spec().radial);
  CHECK(OperatorSpec::from_selector("diagonal:inv_n").kind() == OperatorSpec::Kind::Diagonal);
  CHECK(OperatorSpec::from_selector("rankone").kind() == OperatorSpec::Kind::FiniteRank);
  CHECK_THROWS_AS(OperatorSpec::from_selector("toeplitz:nope"), Error);
  CHECK_THROWS_AS(OperatorSpec::from_selector("hankel"), Error);
}

TEST_CASE("apply_to_kernel identity and diagonal") {
  auto grid = get_grid(0.0);
  DiskPoint z(0.5, 0.2), w(-0.3, 0.4);
  OperatorSpec id = OperatorSpec::identity();
  Complex expect = std::pow(1.0 - std::conj(z.value()) * w.value(), -2.0);
  CHECK(std::abs(apply_to_kernel(id, z, w, 0.0, *grid) - expect) < 1e-14);

  // Diagonal with lambda = 1 approximates the identity within the
  // documented geometric tail.
  OperatorSpec ones = OperatorSpec::from_selector("diagonal:one");
  CHECK(std::abs(apply_to_kernel(ones, z, w, 0.0, *grid) - expect) < 1e-9);

  // Toeplitz with symbol 1 reproduces the kernel (projection form).
  OperatorSpec t_one = OperatorSpec::from_selector("toeplitz:one");
  CHECK(std::abs(apply_to_kernel(t_one, z, w, 0.0, *grid) - expect) < 1e-9);
}

TEST_CASE("diagonal truncation policy") {
  OperatorSpec d = OperatorSpec::from_selector("diagonal:one");
  auto grid = get_grid(0.0, 32, 64);
  DiskPoint z(0.99, 0.0);
  CHECK_THROWS_AS(make_apply_plan(d, z, 0.0, *grid, 0.99), Error);
  OperatorSpec raised = d.with_truncation(8000);
  CHECK_NOTHROW(make_apply_plan(raised, z, 0.0, *grid, 0.99));
  // Below the 0.97 corner the default length applies unchanged.
  ApplyPlan plan = make_apply_plan(d, DiskPoint(0.5, 0.0), 0.0, *grid, 0.99);
  CHECK(plan.truncation == 200);
}

TEST_CASE("required truncation grows with q") {
  TruncationChoice a = required_truncation(0.5, 0.0);
  TruncationChoice b = required_truncation(0.9, 0.0);
  TruncationChoice c = required_truncation(0.99, 0.0);
  CHECK(a.n < b.n);
  CHECK(b.n < c.n);
  CHECK_FALSE(c.capped);
  CHECK(required_truncation(0.99999, 0.0).capped);
}

TEST_CASE("U_z basics") {
  double alpha = 0.7;
  // U_z 1 = k_z.
  DiskPoint z(0.4, -0.5), w(0.2, 0.6);
  Complex u1 = u_z_apply(z, [](Complex) { return Complex(1.0, 0.0); }, w, alpha);
  double scale = std::pow(1.0 - z.abs_sq(), 0.5 * (2.0 + alpha));
  Complex kz = scale * std::pow(1.0 - std::conj(z.value()) * w.value(), -(2.0 + alpha));
  CHECK(std::abs(u1 - kz) < 1e-14);
  // U_0 f(w) = f(-w) since phi_0(w) = -w and k_0 = 1.
  Complex u0 = u_z_apply(DiskPoint(), [](Complex v) { return v + 2.0; }, w, alpha);
  CHECK(std::abs(u0 - (-w.value() + 2.0)) < 1e-15);
}

TEST_CASE("S_z 1 for the identity is constant 1") {
  auto grid = get_grid(0.0);
  OperatorSpec id = OperatorSpec::identity();
  DiskPoint z(0.8, 0.1);
  for (double r : {0.0, 0.5, 0.95}) {
    DiskPoint w(r * std::cos(0.3), r * std::sin(0.3));
    CHECK(std::abs(s_z_one(id, z, w, 0.0, *grid) - 1.0) < 1e-10);
  }
  CHECK(s_z_one_norm(id, z, 7.0, 0.0, *grid) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(s_z_one_norm(id, z, 0.0, 0.0, *grid), Error);
}

TEST_CASE("berezin oracles at moderate z") {
  auto grid = get_grid(0.0);
  OperatorSpec id = OperatorSpec::identity();
  CHECK(std::abs(berezin(id, DiskPoint(0.7, -0.2), 0.0, *grid) - 1.0) < 1e-9);

  OperatorSpec rankone = OperatorSpec::from_selector("rankone");
  DiskPoint z(0.5, 0.3);
  CHECK(std::abs(berezin(rankone, z, 0.0, *grid) - std::pow(1.0 - z.abs_sq(), 2.0)) < 1e-8);

  // Frozen independent values (mpmath, 25 digits).
  CHECK(std::abs(berezin(OperatorSpec::from_selector("toeplitz:oneminusr2"), DiskPoint(0.7, 0.0),
                         0.0, *grid) -
                 0.31138309744312607) < 1e-8);
  CHECK(std::abs(berezin(OperatorSpec::from_selector("toeplitz:halfdisk"), DiskPoint(0.3, 0.4),
                         0.0, *grid) -
                 0.77707545693570681) < 1e-6);
}

TEST_CASE("pairing and reproducing-collapse paths agree") {
  auto grid = get_grid(0.5);
  DiskPoint z(0.55, -0.25);
  for (const char* sel : {"identity", "toeplitz:oneminusr2", "diagonal:inv_n", "rankone"}) {
    OperatorSpec op = OperatorSpec::from_selector(sel);
    Complex a = berezin(op, z, 0.5, *grid);
    Complex b = berezin_reproducing(op, z, 0.5, *grid);
    INFO(sel);
    CHECK(std::abs(a - b) < 1e-7);
  }
}

TEST_CASE("pointwise kernel bound") {
  auto grid = get_grid(0.0);
  OperatorSpec t_decay = OperatorSpec::from_selector("toeplitz:oneminusr2");
  PointwiseBoundCheck chk =
      kernel_pointwise_bound_check(t_decay, DiskPoint(0.7, 0.0), DiskPoint(0.0, -0.4), 4.0, 0.0,
                                   *grid);
  CHECK(chk.pass);
  CHECK(chk.lhs <= chk.rhs * (1.0 + 1e-4));

  OperatorSpec zero = OperatorSpec::from_selector("diagonal:const:0");
  PointwiseBoundCheck zchk =
      kernel_pointwise_bound_check(zero, DiskPoint(0.3, 0.0), DiskPoint(0.1, 0.1), 2.0, 0.0, *grid);
  CHECK(zchk.lhs == 0.0);
  CHECK(zchk.pass);
}

TEST_CASE("operators verify suite is green") {
  for (const CheckRow& row : verify_suite("operators", 42)) {
    INFO(row.id, " [", row.params, "] observed=", row.observed, " expected=", row.expected);
    CHECK(row.pass);
  }
}
