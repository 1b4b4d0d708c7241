#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tableau/errors.hpp"
#include "tableau/limit_surface.hpp"

using namespace tableau;

namespace {

InterlacingDiagram heart_d() { return InterlacingDiagram({-5, -1, 5}, {-4, 3}); }
InterlacingDiagram pipe_d() { return InterlacingDiagram({-200, -90, 103}, {-197, 10}); }
NormalizedShape box() { return NormalizedShape(InterlacingDiagram({-1, 1}, {0})); }
NormalizedShape rect(int r) { return NormalizedShape(InterlacingDiagram({-1, r}, {r - 1})); }

}  // namespace

TEST_CASE("height at the square's centre line") {
  CHECK(height_infinity(box(), 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(height_infinity(box(), 0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(height_infinity(box(), 0.0, 0.0) == 0.0);
}

TEST_CASE("height on the walls and at the heart's centre") {
  NormalizedShape h(heart_d());
  for (double t : {0.2, 0.7, 1.0}) {
    CHECK(height_infinity(h, h.left(), t) == 0.0);
    CHECK(height_infinity(h, h.right(), t) == 0.0);
  }
  CHECK(height_infinity(h, 0.0, 1.0) == doctest::Approx(2 / std::sqrt(13.0)).epsilon(1e-8));
}

TEST_CASE("property: boundary values and monotonicity") {
  for (auto d : {heart_d(), pipe_d()}) {
    NormalizedShape s(d);
    for (int i = 1; i <= 20; ++i) {
      const double x = s.left() + (s.right() - s.left()) * i / 21.0;
      VerticalSection sec(s, x);
      CHECK(std::abs(sec.total() - 0.5 * (profile_omega(s, x) - std::abs(x))) < 1e-5);
      double prev = 0;
      for (int k = 1; k <= 10; ++k) {
        const double h = sec.height(k / 10.0);
        CHECK(h >= prev - 1e-12);
        prev = h;
      }
    }
  }
}

TEST_CASE("rectangle closed form") {
  // r = 1 integrand
  for (double x : {-0.5, 0.0, 0.3})
    for (double s : {0.2, 0.5, 0.7}) {
      const double rad = 4 * s - 4 * s * s - x * x;
      const double expect = rad > 0 ? std::sqrt(rad) / (2 * s - 2 * s * s) : 0.0;
      CHECK(rect_integrand(1.0, x, s) == doctest::Approx(expect));
    }
  CHECK(rect_height(1.0, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
  auto sq = box();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      const double x = -0.95 + 1.9 * i / 5.0, t = 0.05 + 0.9 * j / 5.0;
      CHECK(std::abs(rect_height(1.0, x, t) - height_infinity(sq, x, t)) < 1e-6);
    }
  auto r2 = rect(2);
  for (double x : {-0.5, 0.1, 1.0})
    for (double t : {0.3, 0.8, 1.0}) CHECK(std::abs(rect_height(2.0, x, t) - height_infinity(r2, x, t)) < 1e-6);
}

TEST_CASE("surface inversion") {
  auto sv = surface_T(box(), 0.0, 1.0);
  CHECK(sv.continuous_at_point);
  CHECK(sv.t_minus_val == doctest::Approx(0.5).epsilon(1e-7));
  CHECK_THROWS_AS(surface_T(box(), 0.0, 2.5), DomainError);

  NormalizedShape h(heart_d());
  for (int i = 1; i < 8; ++i) {
    const double x = h.left() + (h.right() - h.left()) * i / 8.0;
    VerticalSection sec(h, x);
    double prev_m = 0, prev_p = 0;
    for (int j = 1; j < 8; ++j) {
      const double y = std::abs(x) + (profile_omega(h, x) - std::abs(x)) * j / 8.0;
      auto v = surface_T(sec, y);
      CHECK(v.continuous_at_point);
      CHECK(v.t_minus_val >= prev_m);
      CHECK(v.t_plus_val >= prev_p);
      prev_m = v.t_minus_val;
      prev_p = v.t_plus_val;
      CHECK(std::abs(sec.height(v.t_minus_val) - 0.5 * (y - std::abs(x))) < 1e-6);
    }
  }
}

TEST_CASE("continuity criterion") {
  auto rh = continuity_criterion(heart_d());
  CHECK(rh.satisfied);
  REQUIRE(rh.terms.size() == 1);
  CHECK(rh.terms[0].i0 == 1);
  CHECK(rh.terms[0].lhs == Rational(1, 12));
  CHECK(rh.terms[0].rhs == Rational(1, 12));

  auto rp = continuity_criterion(pipe_d());
  CHECK_FALSE(rp.satisfied);
  CHECK(rp.terms[0].lhs == Rational(83, 21230));
  CHECK(rp.terms[0].rhs == Rational(-7, 10700));

  CHECK(continuity_criterion(InterlacingDiagram({-3, 5}, {2})).satisfied);
  CHECK(continuity_criterion(InterlacingDiagram({-3, 5}, {2})).terms.empty());
}

TEST_CASE("continuity and the shape of vertical sections") {
  NormalizedShape h(heart_d());
  for (int i = 1; i < 60; ++i) {
    const double x = h.left() + (h.right() - h.left()) * i / 60.0;
    CHECK(VerticalSection(h, x).liquid_intervals().size() <= 1);
  }
  NormalizedShape p(pipe_d());
  bool split = false;
  double split_x = 0;
  for (int i = 1; i < 200 && !split; ++i) {
    const double x = p.scaled_a()[1] + 0.6 * i / 200.0;
    if (VerticalSection(p, x).liquid_intervals().size() >= 2) {
      split = true;
      split_x = x;
    }
  }
  REQUIRE(split);
  VerticalSection sec(p, split_x);
  auto plateaus = plateau_scan(sec);
  REQUIRE_FALSE(plateaus.empty());
  const double level = plateaus[0].value;
  auto v = surface_T(sec, std::abs(split_x) + 2 * level);
  CHECK_FALSE(v.continuous_at_point);
  CHECK(v.t_minus_val < v.t_plus_val);
}

TEST_CASE("frozen boundary parametrization") {
  NormalizedShape h(heart_d());
  auto [x0, t0] = boundary_point(h, h.left() - 1e-7);
  CHECK(x0 == doctest::Approx(h.left()).epsilon(1e-5));
  (void)t0;
  auto fb = frozen_boundary(h, default_s_grid(h, 200));
  REQUIRE(fb.samples.size() > 100);
  int checked = 0;
  for (std::size_t i = 0; i < fb.samples.size(); i += 7) {
    const auto& smp = fb.samples[i];
    if (smp.t < 0.02 || smp.t > 0.98 || smp.x - h.left() < 0.02 || h.right() - smp.x < 0.02) continue;
    CHECK(std::abs(discriminant(h, smp.x, smp.t)) < 1e-6);
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("L-shape parametrization") {
  CHECK_THROWS_AS(lshape_from_pqr(0.0, 2 - std::sqrt(2.0), 1.0), DomainError);
  auto c = lshape_from_pqr(LShapeParams{Rational(0), Rational(1, 2), Rational(1)});
  CHECK(c.diagram.a() == std::vector<Coord>{-4, 0, 4});
  CHECK(c.diagram.b() == std::vector<Coord>{-3, 3});
  auto c2 = lshape_from_pqr(LShapeParams{Rational(1, 2), Rational(1), Rational(3, 2)});
  CHECK(c2.multiplier == 4);
  CHECK(c2.diagram.a() == std::vector<Coord>{-4, 2, 6});
  CHECK(c2.diagram.b() == std::vector<Coord>{-1, 5});
  CHECK_THROWS_AS(lshape_from_pqr(LShapeParams{Rational(0), Rational(0), Rational(1)}), DomainError);
  // upper edge q = min(p + 2, 2r - p): the corner vanishes
  CHECK(lshape_from_pqr(LShapeParams{Rational(-1, 2), Rational(3, 2), Rational(1)}).diagram ==
        InterlacingDiagram({-1, 1}, {0}));
  CHECK(lshape_from_pqr(LShapeParams{Rational(1, 2), Rational(3, 2), Rational(1)}).diagram ==
        InterlacingDiagram({-1, 1}, {0}));
}

TEST_CASE("phase curves") {
  CHECK(phase_curve_Q(0.0) == doctest::Approx(2 - std::sqrt(2.0)));
  CHECK(phase_curve_Q(1.0) == doctest::Approx(1.0));
  for (double r : {0.5, 1.5, 3.0}) CHECK(phase_curve_Qpm(r, r - 1, -1) == doctest::Approx(1 + r));
}

TEST_CASE("property: rational points on the r = 1 curve satisfy the criterion") {
  int found = 0;
  for (int u = -12; u <= 12 && found < 10; ++u)
    for (int v = 1; v <= 12 && found < 10; ++v) {
      if (u == 0) continue;
      auto [p, q] = phase_curve_rational_point(Rational(u), Rational(v));
      LShapeParams prm{p, q, Rational(1)};
      if (!in_lshape_domain(prm) || p == 0 || q == 2 - (p < 0 ? Rational(-p) : p)) continue;
      CHECK(static_cast<double>(q) == doctest::Approx(phase_curve_Q(static_cast<double>(p))));
      CHECK(continuity_criterion(lshape_from_pqr(prm).diagram).satisfied);
      ++found;
    }
  CHECK(found == 10);
}
