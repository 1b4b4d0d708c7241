#include "tableau/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tableau/errors.hpp"

namespace tableau {

const char* to_string(Phase p) { return p == Phase::Liquid ? "liquid" : "frozen"; }

const char* to_string(FrozenRegime r) {
  switch (r) {
    case FrozenRegime::None: return "none";
    case FrozenRegime::SmallT: return "small_t";
    case FrozenRegime::LargeT: return "large_t";
    case FrozenRegime::IntermediateT: return "intermediate_t";
    case FrozenRegime::DegenerateEdge: return "degenerate_edge";
  }
  return "?";
}

bool is_real_root(Complex r) { return std::abs(r.imag()) <= 1e-8 * (1 + std::abs(r)); }

namespace {

void check_point(const NormalizedShape& shape, double x, double t) {
  if (!(x >= shape.left() && x <= shape.right()))
    throw DomainError("x = " + std::to_string(x) + " outside [eta a_0, eta a_m]");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t = " + std::to_string(t) + " outside [0, 1]");
}

std::vector<double> shifts(const std::vector<double>& scaled, double x, int skip = -1) {
  std::vector<double> s;
  for (std::size_t i = 0; i < scaled.size(); ++i)
    if (static_cast<int>(i) != skip) s.push_back(x - scaled[i]);
  return s;
}

// L - R where L = lead_factor * prod_b and R = (1 - t) prod_a, with the top
// coefficient set to its exact value t; drops it when t == 0.
Poly difference(Poly lhs, const Poly& rhs, double t) {
  Poly c(std::max(lhs.size(), rhs.size()), 0.0);
  for (std::size_t k = 0; k < lhs.size(); ++k) c[k] += lhs[k];
  for (std::size_t k = 0; k < rhs.size(); ++k) c[k] -= (1 - t) * rhs[k];
  c.back() = t;
  if (t == 0.0) c.pop_back();
  return c;
}

std::vector<Complex> real_snapped(std::vector<Complex> roots) {
  for (auto& r : roots)
    if (is_real_root(r)) r = Complex(r.real(), 0.0);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

// Counts of real roots relevant to the two t-region predicates.
int count_outside(const NormalizedShape& shape, double x, const std::vector<Complex>& roots) {
  const double lo = shape.left() - x, hi = shape.right() - x;
  int n = 0;
  for (auto r : roots)
    if (is_real_root(r) && (r.real() < lo || r.real() > hi)) ++n;
  return n;
}

int count_inside_i0(const NormalizedShape& shape, double x, const std::vector<Complex>& roots) {
  const int i0 = column_interval(shape, x);
  const auto& sa = shape.scaled_a();
  const double lo = sa[i0 - 1] - x, hi = sa[i0] - x;
  int n = 0;
  for (auto r : roots)
    if (is_real_root(r) && r.real() > lo && r.real() < hi) ++n;
  return n;
}

// Liquid/frozen decision shared by the generic and the degenerate paths.
void classify(PhaseClassification& pc, double t) {
  std::vector<Complex> upper, lower;
  for (auto r : pc.roots) {
    if (is_real_root(r)) continue;
    (r.imag() > 0 ? upper : lower).push_back(r);
  }
  if (upper.empty() && lower.empty()) {
    pc.verdict = Phase::Frozen;
    return;
  }
  if (upper.size() != 1 || lower.size() != 1)
    throw NumericalError("critical: expected zero or two non-real roots, found " +
                         std::to_string(upper.size() + lower.size()));
  const Complex u = upper[0], l = lower[0];
  if (std::abs(u - std::conj(l)) > 1e-6 * (1 + std::abs(u)))
    throw NumericalError("critical: non-real roots are not a conjugate pair");
  pc.verdict = Phase::Liquid;
  pc.Uc = 0.5 * (u + std::conj(l));
  pc.alpha = pc.Uc.imag() / (1 - t);
  pc.beta = pc.Uc.real() / std::abs(pc.Uc);
}

std::vector<Complex> generic_roots(const NormalizedShape& shape, double x, double t) {
  if (t == 1.0) {
    std::vector<Complex> r{Complex(0)};
    for (double b : shape.scaled_b()) r.emplace_back(b - x, 0.0);
    return r;
  }
  auto cp = build_critical_poly(shape, x, t);
  return real_snapped(aberth_roots(cp.coeffs));
}

}  // namespace

CriticalPoly build_critical_poly(const NormalizedShape& shape, double x, double t) {
  check_point(shape, x, t);
  Poly lhs = poly_from_shifts(shifts(shape.scaled_b(), x));
  lhs.insert(lhs.begin(), 0.0);  // multiply by U
  Poly rhs = poly_from_shifts(shifts(shape.scaled_a(), x));
  return {difference(std::move(lhs), rhs, t), x, t};
}

std::optional<int> degenerate_index(const NormalizedShape& shape, double x) {
  const auto& sa = shape.scaled_a();
  for (std::size_t i = 0; i < sa.size(); ++i)
    if (sa[i] == x) return static_cast<int>(i);
  return std::nullopt;
}

int column_interval(const NormalizedShape& shape, double x) {
  const auto& sa = shape.scaled_a();
  for (std::size_t i = 1; i < sa.size(); ++i)
    if (x > sa[i - 1] && x < sa[i]) return static_cast<int>(i);
  throw DomainError("x = " + std::to_string(x) + " is not strictly between consecutive eta a_i");
}

PhaseClassification classify_degenerate(const NormalizedShape& shape, int i, double t) {
  if (i < 0 || i > shape.m()) throw DomainError("degenerate index out of range");
  const double x = shape.scaled_a()[static_cast<std::size_t>(i)];
  check_point(shape, x, t);
  // U * prod_b - (1-t) * U * prod_{a_j, j != i}: divide out U.
  Poly lhs = poly_from_shifts(shifts(shape.scaled_b(), x));
  Poly rhs = poly_from_shifts(shifts(shape.scaled_a(), x, i));
  PhaseClassification pc;
  if (t == 1.0) {
    pc.roots.emplace_back(0.0);
    for (double b : shape.scaled_b()) pc.roots.emplace_back(b - x, 0.0);
  } else {
    Poly reduced = difference(std::move(lhs), rhs, t);
    pc.roots = aberth_roots(reduced);
    pc.roots.emplace_back(0.0);
    pc.roots = real_snapped(std::move(pc.roots));
  }
  if (i == 0 || i == shape.m() || t == 0.0 || t == 1.0) {
    pc.verdict = Phase::Frozen;
  } else {
    classify(pc, t);
  }
  if (!pc.liquid()) pc.regime = FrozenRegime::DegenerateEdge;
  return pc;
}

PhaseClassification solve_critical(const NormalizedShape& shape, double x, double t) {
  check_point(shape, x, t);
  if (auto i = degenerate_index(shape, x)) return classify_degenerate(shape, *i, t);
  PhaseClassification pc;
  pc.roots = generic_roots(shape, x, t);
  if (t == 0.0) {
    pc.verdict = Phase::Frozen;
    pc.regime = FrozenRegime::SmallT;
    return pc;
  }
  if (t == 1.0) {
    pc.verdict = Phase::Frozen;
    pc.regime = FrozenRegime::LargeT;
    return pc;
  }
  classify(pc, t);
  if (!pc.liquid()) {
    if (count_outside(shape, x, pc.roots) >= 2) pc.regime = FrozenRegime::SmallT;
    else if (count_inside_i0(shape, x, pc.roots) >= 2) pc.regime = FrozenRegime::LargeT;
    else pc.regime = FrozenRegime::IntermediateT;
  }
  return pc;
}

std::vector<RootInterval> localize_real_roots(const NormalizedShape& shape, double x, double t,
                                              double tol) {
  check_point(shape, x, t);
  if (degenerate_index(shape, x))
    throw DomainError("localize_real_roots: x coincides with some eta a_i");
  const int i0 = column_interval(shape, x);
  const auto roots = generic_roots(shape, x, t);
  const auto& sa = shape.scaled_a();
  const auto& sb = shape.scaled_b();
  const int m = shape.m();
  using Claim = RootInterval::Claim;
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<RootInterval> out;
  for (int i = 1; i <= m; ++i) {
    const double ai1 = sa[i - 1] - x, bi = sb[i - 1] - x, ai = sa[i] - x;
    if (i < i0) {
      out.push_back({ai1, bi, true, false, Claim::NoRoot, i, 0});
      out.push_back({bi, ai, true, false, Claim::AtLeastOne, i, 0});
    } else if (i > i0) {
      out.push_back({bi, ai, true, false, Claim::NoRoot, i, 0});
      out.push_back({ai1, bi, false, true, Claim::AtLeastOne, i, 0});
    }
  }
  const double bi0 = sb[i0 - 1] - x;
  out.push_back({-inf, sa[0] - x, false, false, Claim::Unconstrained, -1, 0});
  out.push_back({sa[m] - x, inf, false, false, Claim::Unconstrained, -1, 0});
  out.push_back({sa[i0 - 1] - x, sa[i0] - x, false, false, Claim::Unconstrained, -1, 0});
  out.push_back({std::min(0.0, bi0), std::max(0.0, bi0), false, false, Claim::Unconstrained, -1, 0});

  for (auto& iv : out) {
    for (auto r : roots) {
      if (!is_real_root(r)) continue;
      const double v = r.real();
      const bool above = iv.lo_closed ? v >= iv.lo : v > iv.lo;
      const bool below = iv.hi_closed ? v <= iv.hi : v < iv.hi;
      if (above && below) ++iv.count;
    }
    const double slack = tol * (1 + std::max(std::abs(iv.lo), std::abs(iv.hi)));
    if (iv.claim == Claim::NoRoot) {
      for (auto r : roots)
        if (is_real_root(r) && r.real() > iv.lo + slack && r.real() < iv.hi - slack)
          throw NumericalError("localization: root " + std::to_string(r.real()) +
                               " inside a root-free interval (i = " + std::to_string(iv.index) + ")");
    } else if (iv.claim == Claim::AtLeastOne) {
      bool found = false;
      for (auto r : roots)
        if (r.real() >= iv.lo - slack && r.real() <= iv.hi + slack &&
            std::abs(r.imag()) <= 1e-6 * (1 + std::abs(r)))
          found = true;
      if (!found)
        throw NumericalError("localization: no root in a guaranteed interval (i = " +
                             std::to_string(iv.index) + ")");
    }
  }
  return out;
}

namespace {

std::vector<Complex> predicate_roots(const NormalizedShape& shape, double x, double t) {
  return generic_roots(shape, x, t);
}

void check_t_region_point(const NormalizedShape& shape, double x) {
  check_point(shape, x, 0.5);
  if (degenerate_index(shape, x)) throw DomainError("t_minus/t_plus: x coincides with some eta a_i");
}

}  // namespace

double t_minus(const NormalizedShape& shape, double x) {
  check_t_region_point(shape, x);
  // pred(t): two real roots outside (eta a_0 - x, eta a_m - x); true exactly on [0, t_-].
  auto pred = [&](double t) { return t == 0.0 || count_outside(shape, x, predicate_roots(shape, x, t)) >= 2; };
  double lo = 0.0, hi = 1.0;
  if (pred(hi)) throw NumericalError("t_minus: predicate holds at t = 1 (bracket failure)");
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? lo : hi) = mid;
  }
  return lo;
}

double t_plus(const NormalizedShape& shape, double x) {
  check_t_region_point(shape, x);
  // Exactly at eta b_{i0} the pair near U = 0 stays complex for every t < 1,
  // but its imaginary part drops below the real-root threshold as t -> 1.
  if (x == shape.scaled_b()[static_cast<std::size_t>(column_interval(shape, x) - 1)]) return 1.0;
  // pred(t): two real roots inside (eta a_{i0-1} - x, eta a_{i0} - x); true exactly on [t_+, 1].
  auto pred = [&](double t) { return t == 1.0 || count_inside_i0(shape, x, predicate_roots(shape, x, t)) >= 2; };
  double lo = 0.0, hi = 1.0;
  if (pred(lo)) throw NumericalError("t_plus: predicate holds at t = 0 (bracket failure)");
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

double discriminant(const NormalizedShape& shape, double x, double t) {
  check_point(shape, x, t);
  if (!(t > 0)) throw DomainError("discriminant: requires t > 0");
  const auto pc = solve_critical(shape, x, t);
  Complex prod = 1;
  for (std::size_t i = 0; i < pc.roots.size(); ++i)
    for (std::size_t j = i + 1; j < pc.roots.size(); ++j) {
      const Complex d = pc.roots[i] - pc.roots[j];
      prod *= d * d;
    }
  return std::pow(t, 2 * shape.m()) * prod.real();
}

int discriminant_sign(const NormalizedShape& shape, double x, double t, double tol) {
  const double d = discriminant(shape, x, t);
  if (std::abs(d) < tol) return 0;
  return d < 0 ? -1 : 1;
}

Complex burgers_residual(const NormalizedShape& shape, double x, double t, double h) {
  auto uc = [&](double xx, double tt) {
    const auto pc = solve_critical(shape, xx, tt);
    if (!pc.liquid()) throw DomainError("burgers_residual: stencil point is frozen");
    return pc.Uc;
  };
  const Complex u = uc(x, t);
  const Complex ut = (uc(x, t + h) - uc(x, t - h)) / (2 * h);
  const Complex ux = (uc(x + h, t) - uc(x - h, t)) / (2 * h);
  return ut + u * (ux + 1.0) / (1 - t);
}

}  // namespace tableau
