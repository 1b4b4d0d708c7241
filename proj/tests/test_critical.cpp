#include <cmath>

#include "doctest.h"
#include "tableau/critical.hpp"
#include "tableau/errors.hpp"

using namespace tableau;

namespace {

NormalizedShape box() { return NormalizedShape(InterlacingDiagram({-1, 1}, {0})); }
NormalizedShape heart() { return NormalizedShape(InterlacingDiagram({-5, -1, 5}, {-4, 3})); }
NormalizedShape pipe() { return NormalizedShape(InterlacingDiagram({-200, -90, 103}, {-197, 10})); }
// a_0=-2 < b_1=-1 < a_1=0 < b_2=2 < a_2=3, eta = 1/2
NormalizedShape fig7() { return NormalizedShape(InterlacingDiagram({-2, 0, 3}, {-1, 2})); }

// For the single box the critical equation is the quadratic
// t U^2 + x(2t-1) U + (1-t)(1-x^2) = 0.
double box_disc(double x, double t) {
  const double b = x * (2 * t - 1);
  return b * b - 4 * t * (1 - t) * (1 - x * x);
}

}  // namespace

TEST_CASE("critical polynomial coefficients") {
  auto cp = build_critical_poly(box(), 0.0, 0.5);
  REQUIRE(cp.coeffs.size() == 3);
  CHECK(cp.coeffs[0] == doctest::Approx(0.5));
  CHECK(cp.coeffs[1] == doctest::Approx(0.0));
  CHECK(cp.coeffs[2] == doctest::Approx(0.5));

  auto h = heart();
  const double x = 0.1;
  auto c1 = build_critical_poly(h, x, 1.0);
  std::vector<double> sh;
  for (double b : h.scaled_b()) sh.push_back(x - b);
  auto expect = poly_from_shifts(sh);
  expect.insert(expect.begin(), 0.0);
  REQUIRE(c1.coeffs.size() == expect.size());
  for (std::size_t k = 0; k < expect.size(); ++k) CHECK(c1.coeffs[k] == doctest::Approx(expect[k]));

  CHECK(build_critical_poly(h, x, 0.0).degree() == h.m());
  CHECK(build_critical_poly(h, x, 0.3).degree() == h.m() + 1);
  CHECK(build_critical_poly(h, x, 0.3).coeffs.back() == 0.3);
  CHECK_THROWS_AS(build_critical_poly(h, 5.0, 0.3), DomainError);
  CHECK_THROWS_AS(build_critical_poly(h, 0.0, 1.5), DomainError);
}

TEST_CASE("single box at (0, 1/2) is liquid with U_c = i") {
  auto pc = solve_critical(box(), 0.0, 0.5);
  REQUIRE(pc.liquid());
  CHECK(pc.Uc.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pc.Uc.imag() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pc.alpha == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(pc.beta) < 1e-10);
}

TEST_CASE("t = 1 and t = 0 are frozen") {
  auto h = heart();
  auto pc = solve_critical(h, 0.2, 1.0);
  CHECK(pc.verdict == Phase::Frozen);
  CHECK(pc.roots.size() == 3);
  for (auto r : pc.roots) CHECK(r.imag() == 0.0);
  auto pc0 = solve_critical(h, 0.2, 0.0);
  CHECK(pc0.verdict == Phase::Frozen);
  CHECK(pc0.roots.size() == 2);
}

TEST_CASE("root localization on the three-corner example") {
  auto s = fig7();
  const double x = -0.9;
  for (double t : {0.3, 0.6, 0.9}) {
    auto ivs = localize_real_roots(s, x, t);
    bool found = false;
    for (const auto& iv : ivs)
      if (iv.claim == RootInterval::Claim::AtLeastOne && iv.index == 2) {
        CHECK(iv.lo == doctest::Approx(0.9));
        CHECK(iv.hi == doctest::Approx(1.9));
        CHECK(iv.count >= 1);
        found = true;
      }
    CHECK(found);
  }
  auto r3 = solve_critical(s, x, 0.3);
  int left = 0;
  for (auto r : r3.roots)
    if (is_real_root(r) && r.real() < -0.1) ++left;
  CHECK(left == 2);
  CHECK(r3.regime == FrozenRegime::SmallT);

  auto r9 = solve_critical(s, x, 0.9);
  int inner = 0;
  for (auto r : r9.roots)
    if (is_real_root(r) && r.real() > 0 && r.real() < 0.4) ++inner;
  CHECK(inner == 2);
  CHECK(r9.regime == FrozenRegime::LargeT);

  auto r6 = solve_critical(s, x, 0.6);
  CHECK(r6.liquid());
}

TEST_CASE("t_minus and t_plus") {
  auto h = heart();
  CHECK(t_minus(h, 0.0) == 0.0);
  CHECK(t_plus(h, h.scaled_b()[0]) == 1.0);
  CHECK(t_plus(h, h.scaled_b()[1]) == 1.0);

  // Closed-form oracle for the box: the quadratic discriminant vanishes at
  // t = (2 -+ sqrt 3)/4 when x = 1/2.
  auto b = box();
  const double tm = t_minus(b, 0.5), tp = t_plus(b, 0.5);
  CHECK(tm > 0);
  CHECK(tm == doctest::Approx((2 - std::sqrt(3.0)) / 4).epsilon(1e-7));
  CHECK(tp == doctest::Approx((2 + std::sqrt(3.0)) / 4).epsilon(1e-7));
  CHECK(solve_critical(b, 0.5, tm - 1e-6).regime == FrozenRegime::SmallT);
  CHECK(solve_critical(b, 0.5, tm + 1e-6).liquid());
  CHECK(solve_critical(b, 0.5, tp + 1e-6).regime == FrozenRegime::LargeT);
  CHECK_THROWS_AS(t_minus(h, h.scaled_a()[1]), DomainError);
}

TEST_CASE("degenerate columns") {
  auto h = heart();
  for (double t : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    CHECK(solve_critical(h, h.left(), t).verdict == Phase::Frozen);
    CHECK(solve_critical(h, h.right(), t).verdict == Phase::Frozen);
    CHECK(solve_critical(h, h.left(), t).regime == FrozenRegime::DegenerateEdge);
  }
  auto pc = classify_degenerate(box(), 1, 0.5);
  CHECK(pc.verdict == Phase::Frozen);
  CHECK(pc.roots.size() == 2);
  // interior a_1 of the heart: the reduced equation still has a liquid range
  bool any_liquid = false;
  for (int k = 1; k < 100; ++k) any_liquid |= classify_degenerate(h, 1, k / 100.0).liquid();
  CHECK(any_liquid);
}

TEST_CASE("discriminant") {
  auto b = box();
  CHECK(discriminant_sign(b, 0.0, 0.5) == -1);
  CHECK(discriminant(b, 0.0, 0.5) == doctest::Approx(-1.0));
  for (double x : {-0.7, -0.2, 0.3, 0.8})
    for (double t : {0.1, 0.4, 0.6, 0.95}) CHECK(discriminant(b, x, t) == doctest::Approx(box_disc(x, t)).epsilon(1e-9));
  auto h = heart();
  CHECK(discriminant_sign(h, 0.1, 1.0) >= 0);
  CHECK(discriminant_sign(h, 0.0, 0.5) == -1);
}

TEST_CASE("Burgers residual") {
  auto b = box();
  CHECK(std::abs(burgers_residual(b, 0.0, 0.5, 1e-3)) < 1e-4);
  CHECK(std::abs(burgers_residual(b, 0.0, 0.3, 1e-3)) < 1e-4);
  const double r1 = std::abs(burgers_residual(b, 0.2, 0.4, 1e-3));
  const double r2 = std::abs(burgers_residual(b, 0.2, 0.4, 5e-4));
  CHECK(r1 < 1e-4);
  CHECK(r1 / r2 > 4 / 1.5);
  CHECK(r1 / r2 < 4 * 1.5);
  CHECK_THROWS_AS(burgers_residual(b, 0.9, 0.01, 1e-3), DomainError);
}

TEST_CASE("property: zero or two non-real roots, agreement with the discriminant, small residuals") {
  for (auto s : {heart(), pipe()}) {
    const int n = 200;
    int disagreements = 0;
    for (int i = 0; i < n; ++i) {
      const double x = s.left() + (s.right() - s.left()) * (i + 0.5) / n;
      for (int j = 0; j < n; ++j) {
        const double t = (j + 0.5) / n;
        auto pc = solve_critical(s, x, t);
        int nonreal = 0;
        for (auto r : pc.roots) nonreal += !is_real_root(r);
        REQUIRE((nonreal == 0 || nonreal == 2));
        auto cp = build_critical_poly(s, x, t);
        double cmax = 0;
        for (double c : cp.coeffs) cmax = std::max(cmax, std::abs(c));
        for (auto r : pc.roots) {
          // snapped real parts are evaluated at the real point
          CHECK(std::abs(poly_eval(cp.coeffs, r)) <= 1e-10 * cmax * std::max(1.0, std::pow(std::abs(r), cp.degree())));
        }
        if (j % 4 == 0) {
          const int sg = discriminant_sign(s, x, t);
          if (sg != 0 && (sg == -1) != pc.liquid()) ++disagreements;
        }
      }
    }
    CHECK(disagreements == 0);
  }
}

TEST_CASE("property: liquid set lies inside the intermediate region") {
  auto h = heart();
  for (double x : {-1.2, -0.6, -0.05, 0.3, 0.9}) {
    const double tm = t_minus(h, x), tp = t_plus(h, x);
    CHECK(tm <= tp);
    for (int j = 1; j < 200; ++j) {
      const double t = j / 200.0;
      if (solve_critical(h, x, t).liquid()) {
        CHECK(t > tm);
        CHECK(t < tp);
      }
    }
  }
}

TEST_CASE("property: alpha decays towards the frozen boundary") {
  auto h = heart();
  // rays from a central liquid point towards the bottom edge
  const double x0 = 0.0, t0 = 0.5;
  REQUIRE(solve_critical(h, x0, t0).liquid());
  for (double dir : {-1.0, -0.3, 0.4, 1.0}) {
    double first = solve_critical(h, x0, t0).alpha, last = first;
    for (int k = 1; k < 2000; ++k) {
      const double x = x0 + dir * k * 1e-3 * 0.5, t = t0 + k * 1e-3 * 0.5;
      if (t >= 1 || x <= h.left() || x >= h.right()) break;
      auto pc = solve_critical(h, x, t);
      if (!pc.liquid()) break;
      last = pc.alpha;
    }
    CHECK(last < first);
  }
}
