#include "tableau/limit_surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "tableau/errors.hpp"
#include "tableau/polynomial.hpp"
#include "tableau/quadrature.hpp"

namespace tableau {

namespace {

std::vector<double> sorted_poles(const NormalizedShape& shape) {
  std::vector<double> p = shape.scaled_a();
  p.insert(p.end(), shape.scaled_b().begin(), shape.scaled_b().end());
  std::sort(p.begin(), p.end());
  return p;
}

// Real s with x(s) = x, i.e. roots of B(s) = (s - x) Sigma(s) Q(s) - Q(s)
// where Q(s) = prod (s - eta a_i) prod (s - eta b_i); each gives a point of
// the frozen boundary above x at height 1 - G(s)(s - x).
std::vector<double> boundary_heights_above(const NormalizedShape& shape, double x) {
  const auto& sa = shape.scaled_a();
  const auto& sb = shape.scaled_b();
  std::vector<double> neg_poles;
  for (double v : sa) neg_poles.push_back(-v);
  for (double v : sb) neg_poles.push_back(-v);
  const Poly Q = poly_from_shifts(neg_poles);

  Poly sigmaQ(Q.size() - 1, 0.0);
  for (std::size_t k = 0; k < neg_poles.size(); ++k) {
    std::vector<double> rest;
    for (std::size_t j = 0; j < neg_poles.size(); ++j)
      if (j != k) rest.push_back(neg_poles[j]);
    const Poly part = poly_from_shifts(rest);
    const double sign = k < sa.size() ? 1.0 : -1.0;
    for (std::size_t i = 0; i < part.size(); ++i) sigmaQ[i] += sign * part[i];
  }
  const double lin[2] = {-x, 1.0};
  Poly B = poly_mul(lin, sigmaQ);
  for (std::size_t i = 0; i < Q.size(); ++i) B[i] -= Q[i];
  B.pop_back();  // the monic top terms cancel exactly
  double scale = 0;
  for (double c : B) scale = std::max(scale, std::abs(c));
  while (B.size() > 1 && std::abs(B.back()) <= 1e-13 * scale) B.pop_back();
  if (B.size() < 2) return {};

  std::vector<double> ts;
  for (Complex r : aberth_roots(B)) {
    if (std::abs(r.imag()) > 1e-7 * (1 + std::abs(r))) continue;
    const double s = r.real();
    bool near_pole = false;
    for (double p : neg_poles)
      if (std::abs(s + p) < 1e-10) near_pole = true;
    if (near_pole) continue;
    const double t = 1 - boundary_G(shape, s) * (s - x);
    if (t > 1e-14 && t < 1 - 1e-14) ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

double alpha_at(const NormalizedShape& shape, double x, double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const auto pc = solve_critical(shape, x, t);
  return pc.liquid() ? pc.alpha : 0.0;
}

bool liquid_at(const NormalizedShape& shape, double x, double t) {
  return solve_critical(shape, x, t).liquid();
}

// Boundary between a liquid and a frozen sample, by bisection on the verdict.
double bisect_phase(const NormalizedShape& shape, double x, double lo, double hi, bool lo_liquid) {
  for (int it = 0; it < 55 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (liquid_at(shape, x, mid) == lo_liquid ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

constexpr int kScanSamples = 9;

}  // namespace

VerticalSection::VerticalSection(const NormalizedShape& shape, double x, double tol)
    : shape_(&shape), x_(x), tol_(tol) {
  if (!(x >= shape.left() && x <= shape.right()))
    throw DomainError("height: x outside [eta a_0, eta a_m]");
  if (x == shape.left() || x == shape.right()) return;  // walls are frozen
  transitions_ = boundary_heights_above(shape, x);

  std::vector<double> breaks{0.0};
  for (double t : transitions_)
    if (t - breaks.back() > 1e-13) breaks.push_back(t);
  if (1.0 - breaks.back() > 1e-13) breaks.push_back(1.0);
  else breaks.back() = 1.0;

  std::vector<std::pair<double, double>> raw;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double u = breaks[k], v = breaks[k + 1];
    std::vector<double> ts;
    std::vector<bool> liq;
    for (int j = 1; j <= kScanSamples; ++j) {
      ts.push_back(u + (v - u) * j / (kScanSamples + 1));
      liq.push_back(liquid_at(shape, x, ts.back()));
    }
    // Pieces of [u, v] between verdict changes; ends inherit the nearest sample.
    double start = u;
    for (int j = 0; j + 1 < kScanSamples; ++j) {
      if (liq[j] == liq[j + 1]) continue;
      const double edge = bisect_phase(shape, x, ts[j], ts[j + 1], liq[j]);
      if (liq[j]) raw.emplace_back(start, edge);
      start = edge;
    }
    if (liq.back()) raw.emplace_back(start, v);
  }
  for (const auto& iv : raw) {
    if (!intervals_.empty() && iv.first - intervals_.back().second < 1e-12) intervals_.back().second = iv.second;
    else intervals_.push_back(iv);
  }
  double acc = 0;
  for (const auto& [p, q] : intervals_) {
    const auto r = piece_with_error(p, q);
    acc += r.value;
    error_ += r.error;
    cumulative_.push_back(acc);
  }
}

double VerticalSection::integrand(double s) const { return alpha_at(*shape_, x_, s) / std::numbers::pi; }

// Near verticals where the boundary almost touches t = 1 the liquid/frozen
// verdict is noisy at the level of ~1e-9, so a strict tolerance may be
// unattainable; one retry at 1000x the tolerance, then give up.
QuadResult VerticalSection::piece_with_error(double a, double b) const {
  auto f = [this](double s) { return integrand(s); };
  try {
    return integrate_cosine(f, a, b, tol_);
  } catch (const NumericalError&) {
    return integrate_cosine(f, a, b, 1e3 * tol_);
  }
}

double VerticalSection::piece(double a, double b) const { return piece_with_error(a, b).value; }

// Anchored at whichever end of the interval is nearer, so that the cosine
// substitution always sits on the sqrt-type endpoint closest to t.
double VerticalSection::partial(std::size_t k, double t) const {
  const auto [p, end] = intervals_[k];
  const double q = std::min(t, end);
  if (q <= p) return 0.0;
  const double full = cumulative_[k] - (k == 0 ? 0.0 : cumulative_[k - 1]);
  if (q >= end) return full;
  return q - p <= end - q ? piece(p, q) : full - piece(q, end);
}

double VerticalSection::height(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("height: t outside [0, 1]");
  double h = 0;
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    if (t >= intervals_[k].second) {
      h = cumulative_[k];
      continue;
    }
    if (t > intervals_[k].first) h += partial(k, t);
    break;
  }
  return h;
}

std::vector<double> VerticalSection::heights(const std::vector<double>& ts) const {
  std::vector<double> out;
  out.reserve(ts.size());
  std::size_t k = 0;
  double pos = 0.0, h = 0.0;  // H(pos) = h
  for (double t : ts) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("height: t outside [0, 1]");
    if (t < pos) throw DomainError("heights: t values must be ascending");
    while (k < intervals_.size() && intervals_[k].second <= t) {
      h = cumulative_[k];
      pos = intervals_[k].second;
      ++k;
    }
    if (k < intervals_.size() && t > intervals_[k].first) {
      const double lo = std::max(pos, intervals_[k].first);
      const double end = intervals_[k].second;
      if (end - t < t - lo) h = cumulative_[k] - piece(t, end);
      else if (t > lo) h += piece(lo, t);
    }
    pos = t;
    out.push_back(h);
  }
  return out;
}

double height_infinity(const HeightQuery& q) {
  if (q.shape == nullptr) throw DomainError("height query without a shape");
  return height_infinity(*q.shape, q.x, q.t, q.tol);
}

double height_infinity(const NormalizedShape& shape, double x, double t, double tol) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("height: t outside [0, 1]");
  return VerticalSection(shape, x, tol).height(t);
}

namespace {

// H is continuous and strictly increasing on a liquid interval, so the level
// crossing is a simple bracketed root. Within a relative 1e-7 of either end the
// integrand may blow up like 1/sqrt while t itself is only resolved to 1e-16,
// so those bands are interpolated linearly instead of probed.
double solve_level(const VerticalSection& section, std::size_t k, double level, double tol) {
  const auto [lo, hi] = section.liquid_intervals()[k];
  const double guard = 1e-7 * (hi - lo);
  const double h_lo = section.height(lo), h_hi = section.height(hi);
  const double h_a = section.height(lo + guard), h_b = section.height(hi - guard);
  if (level <= h_lo) return lo;
  if (level >= h_hi) return hi;
  if (level <= h_a) return lo + guard * (level - h_lo) / std::max(h_a - h_lo, 1e-300);
  if (level >= h_b) return hi - guard * (h_hi - level) / std::max(h_hi - h_b, 1e-300);
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      [&](double t) { return section.height(t) - level; }, lo + guard, hi - guard, h_a - level, h_b - level,
      [tol](double u, double v) { return std::abs(v - u) <= tol; }, iters);
  return 0.5 * (a + b);
}

}  // namespace

SurfaceValue surface_T(const VerticalSection& section, double y, double tol) {
  const double target = 0.5 * (y - std::abs(section.x()));
  const double slack = 1e-9;
  const double total = section.total();
  if (target < -slack || target > total + slack)
    throw DomainError("surface: level (y - |x|)/2 outside [0, H(x, 1)]");
  const auto& iv = section.liquid_intervals();
  auto before = [&](std::size_t k) { return k == 0 ? 0.0 : section.height(iv[k - 1].second); };

  SurfaceValue out;
  // T_- = inf{t : H(t) >= target - slack}.
  if (target - slack <= 0.0 || iv.empty()) {
    out.t_minus_val = 0.0;
  } else {
    std::size_t k = 0;
    while (k + 1 < iv.size() && section.height(iv[k].second) < target - slack) ++k;
    out.t_minus_val = solve_level(section, k, target - slack, tol);
  }
  // T_+ = sup{t : H(t) <= target + slack}.
  if (target + slack >= total || iv.empty()) {
    out.t_plus_val = 1.0;
  } else {
    std::size_t k = iv.size() - 1;
    while (k > 0 && before(k) > target + slack) --k;
    if (section.height(iv[k].second) <= target + slack) {
      out.t_plus_val = k + 1 < iv.size() ? iv[k + 1].first : 1.0;
    } else {
      out.t_plus_val = solve_level(section, k, target + slack, tol);
    }
  }
  if (out.t_plus_val < out.t_minus_val) std::swap(out.t_plus_val, out.t_minus_val);
  out.continuous_at_point = out.t_plus_val - out.t_minus_val <= 1e-6;
  return out;
}

SurfaceValue surface_T(const NormalizedShape& shape, double x, double y, double tol) {
  if (!in_domain(shape, x, y)) throw DomainError("surface: (x, y) outside the domain |x| < y < omega(x)");
  return surface_T(VerticalSection(shape, x), y, tol);
}

ContinuityReport continuity_criterion(const InterlacingDiagram& d) {
  ContinuityReport rep;
  const auto& a = d.a();
  const auto& b = d.b();
  for (int i0 = 1; i0 < d.m(); ++i0) {
    ContinuityTerm term{i0, Rational(0), Rational(0)};
    for (int i = 0; i <= d.m(); ++i)
      if (i != i0) term.lhs += Rational(1) / Rational(a[i0] - a[i]);
    for (int i = 0; i < d.m(); ++i) term.rhs += Rational(1) / Rational(a[i0] - b[i]);
    if (term.lhs != term.rhs) rep.satisfied = false;
    rep.terms.push_back(std::move(term));
  }
  return rep;
}

double rect_integrand(double r, double x, double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double sr = std::sqrt(r);
  const double rad = s * (4 * r - (1 + r) * (1 + r) * s) + 2 * (r - 1) * sr * s * x - r * x * x;
  if (rad <= 0.0) return 0.0;
  return std::sqrt(rad) / (2 * sr * (1 - s) * s);
}

double rect_height(double r, double x, double t, double tol) {
  if (!(r > 0)) throw DomainError("rect_height: r must be positive");
  const double sr = std::sqrt(r);
  if (!(x >= -1 / sr && x <= sr)) throw DomainError("rect_height: x outside [-1/sqrt r, sqrt r]");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("rect_height: t outside [0, 1]");
  // Radicand A s^2 + B s + C is positive between its two roots.
  const double A = -(1 + r) * (1 + r);
  const double B = 4 * r + 2 * (r - 1) * sr * x;
  const double C = -r * x * x;
  const double disc = B * B - 4 * A * C;
  if (disc <= 0) return 0.0;
  const double sq = std::sqrt(disc);
  // Stable quadratic roots.
  const double qq = -0.5 * (B + std::copysign(sq, B));
  double s1 = qq / A, s2 = qq != 0.0 ? C / qq : 0.0;
  if (s1 > s2) std::swap(s1, s2);
  const double lo = std::max(0.0, s1), hi = std::min({t, s2, 1.0});
  if (hi <= lo) return 0.0;
  auto f = [&](double s) { return rect_integrand(r, x, s) / std::numbers::pi; };
  return integrate_cosine(f, lo, hi, tol).value;
}

double boundary_sigma(const NormalizedShape& shape, double s) {
  double v = 0;
  for (double a : shape.scaled_a()) v += 1 / (s - a);
  for (double b : shape.scaled_b()) v -= 1 / (s - b);
  return v;
}

double boundary_G(const NormalizedShape& shape, double s) {
  double g = 1;
  const auto& sa = shape.scaled_a();
  const auto& sb = shape.scaled_b();
  for (std::size_t i = 0; i < sb.size(); ++i) g *= (s - sb[i]) / (s - sa[i]);
  return g / (s - sa.back());
}

std::pair<double, double> boundary_point(const NormalizedShape& shape, double s) {
  const double sig = boundary_sigma(shape, s);
  return {s - 1 / sig, 1 - boundary_G(shape, s) / sig};
}

double boundary_xdot(const NormalizedShape& shape, double s) {
  const double sig = boundary_sigma(shape, s);
  double dsig = 0;
  for (double a : shape.scaled_a()) dsig -= 1 / ((s - a) * (s - a));
  for (double b : shape.scaled_b()) dsig += 1 / ((s - b) * (s - b));
  return 1 + dsig / (sig * sig);
}

std::vector<double> default_s_grid(const NormalizedShape& shape, int per_segment) {
  const auto poles = sorted_poles(shape);
  std::vector<double> grid;
  const double pi = std::numbers::pi;
  for (int k = per_segment - 1; k >= 1; --k)
    grid.push_back(poles.front() - std::tan(0.5 * pi * k / per_segment));
  for (std::size_t j = 0; j + 1 < poles.size(); ++j) {
    const double p = poles[j], q = poles[j + 1];
    for (int k = 1; k < per_segment; ++k)
      grid.push_back(p + 0.5 * (q - p) * (1 - std::cos(pi * k / per_segment)));
  }
  for (int k = 1; k < per_segment; ++k) grid.push_back(poles.back() + std::tan(0.5 * pi * k / per_segment));
  return grid;
}

FrozenBoundary frozen_boundary(const NormalizedShape& shape, const std::vector<double>& s_grid, double guard) {
  FrozenBoundary fb;
  fb.poles = sorted_poles(shape);
  auto segment_of = [&](double s) {
    return static_cast<int>(std::upper_bound(fb.poles.begin(), fb.poles.end(), s) - fb.poles.begin());
  };
  std::vector<double> xdot;
  for (double s : s_grid) {
    bool near = false;
    for (double p : fb.poles)
      if (std::abs(s - p) < guard) near = true;
    if (near) {
      ++fb.dropped;
      continue;
    }
    const auto [x, t] = boundary_point(shape, s);
    if (!std::isfinite(x) || !std::isfinite(t) || t < 0.0 || t > 1.0 || x < shape.left() || x > shape.right()) {
      ++fb.dropped;
      continue;
    }
    fb.samples.push_back({s, x, t, segment_of(s), false});
    xdot.push_back(boundary_xdot(shape, s));
  }
  for (std::size_t i = 0; i + 1 < fb.samples.size(); ++i) {
    auto& u = fb.samples[i];
    auto& v = fb.samples[i + 1];
    if (u.segment != v.segment || (xdot[i] > 0) == (xdot[i + 1] > 0)) continue;
    double lo = u.s, hi = v.s;
    const bool lo_pos = xdot[i] > 0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((boundary_xdot(shape, mid) > 0) == lo_pos ? lo : hi) = mid;
    }
    fb.cusps.push_back(0.5 * (lo + hi));
    (std::abs(xdot[i]) <= std::abs(xdot[i + 1]) ? u : v).is_cusp = true;
  }
  return fb;
}

bool in_lshape_domain(const LShapeParams& prm) {
  const auto& [p, q, r] = prm;
  if (!(r > 0)) return false;
  if (!(p > -1 && p < r)) return false;
  const Rational ap = p < 0 ? Rational(-p) : p;
  if (!(ap < q)) return false;
  const Rational cap = std::min<Rational>(p + 2, 2 * r - p);
  return q <= cap;
}

ClearedDiagram lshape_from_pqr(const LShapeParams& prm) {
  if (!in_lshape_domain(prm))
    throw DomainError("lshape: (p, q, r) outside r > 0, -1 < p < r, |p| < q <= min(p + 2, 2r - p)");
  const auto& [p, q, r] = prm;
  std::vector<Rational> a{Rational(-1), p, r};
  std::vector<Rational> b{(p + q - 2) / 2, (p - q + 2 * r) / 2};
  // on q = min(p + 2, 2r - p) a minimum meets the middle maximum and the
  // corner disappears, leaving the r x 1 rectangle
  if (b[0] == p || b[1] == p) {
    a = {Rational(-1), r};
    b = {r - 1};
  }
  return clear_denominators(a, b);
}

ClearedDiagram lshape_from_pqr(double p, double q, double r) {
  return lshape_from_pqr(LShapeParams{rational_from_double(p), rational_from_double(q), rational_from_double(r)});
}

double phase_curve_Q(double p) {
  const double rad = 2 - p * p;
  if (rad < 0) throw DomainError("Q(p): requires p^2 <= 2");
  return 2 - std::sqrt(rad);
}

double phase_curve_Qpm(double r, double p, int sign) {
  const double den = 1 + 2 * p - r;
  if (den == 0.0) throw DomainError("Q±: denominator 1 + 2p - r vanishes");
  const double rad = (1 + p - r) * (1 + 2 * p - r) * (p * r + (1 + r) * (1 + r) - p - 2 * p * p);
  if (rad < 0) throw DomainError("Q±: negative radicand");
  return 1 + r + (sign >= 0 ? 1.0 : -1.0) * std::sqrt(rad) / den;
}

std::pair<Rational, Rational> phase_curve_rational_point(const Rational& u, const Rational& v) {
  if (u == 0 || v == 0) throw DomainError("rational phase point: need u v != 0");
  const Rational n = u * u + v * v;
  return {(u * (2 * v + u) - v * v) / n, 1 + 2 * u * (u - v) / n};
}

std::vector<Plateau> plateau_scan(const VerticalSection& section, double dt, double flat_tol) {
  const int steps = static_cast<int>(std::lround(1.0 / dt));
  std::vector<double> ts(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) ts[static_cast<std::size_t>(k)] = std::min(1.0, k * dt);
  const std::vector<double> h = section.heights(ts);
  std::vector<Plateau> out;
  int run_start = -1;
  auto close = [&](int end) {
    if (run_start > 0 && end < steps && end - run_start >= 3)
      out.push_back({run_start * dt, end * dt, h[static_cast<std::size_t>(run_start)]});
  };
  for (int k = 0; k < steps; ++k) {
    const bool flat = h[static_cast<std::size_t>(k) + 1] - h[static_cast<std::size_t>(k)] < flat_tol;
    if (flat && run_start < 0) run_start = k;
    if (!flat && run_start >= 0) {
      close(k);
      run_start = -1;
    }
  }
  return out;
}

}  // namespace tableau
