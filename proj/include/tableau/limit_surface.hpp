#pragma once

// Limiting height function H(x, t) = (1/pi) int_0^t alpha(x, s) ds, the
// limiting surface T(x, y) obtained by inverting it, the exact continuity
// criterion, the frozen boundary curve, and the rectangle / L-shape families.

#include <string>
#include <utility>
#include <vector>

#include "tableau/critical.hpp"
#include "tableau/diagram.hpp"
#include "tableau/quadrature.hpp"
#include "tableau/rational.hpp"

namespace tableau {

struct HeightQuery {
  const NormalizedShape* shape = nullptr;
  double x = 0;
  double t = 0;
  double tol = 1e-10;
};

/// Liquid intervals of a vertical line {x} x [0, 1] together with their
/// alpha/pi integrals; H(x, .) is then a cheap cumulative lookup.
class VerticalSection {
 public:
  VerticalSection(const NormalizedShape& shape, double x, double tol = 1e-10);

  double x() const { return x_; }
  const std::vector<std::pair<double, double>>& liquid_intervals() const { return intervals_; }
  /// Candidate phase-transition heights in (0, 1) found on this line.
  const std::vector<double>& transitions() const { return transitions_; }
  double height(double t) const;
  /// H at ascending `ts`, integrating only between consecutive points.
  std::vector<double> heights(const std::vector<double>& ts) const;
  double total() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  /// Quadrature error estimate accumulated over the full liquid intervals.
  double error_estimate() const { return error_; }

 private:
  double integrand(double s) const;
  QuadResult piece_with_error(double a, double b) const;
  double piece(double a, double b) const;
  double partial(std::size_t k, double t) const;

  const NormalizedShape* shape_;
  double x_;
  double tol_;
  std::vector<double> transitions_;
  std::vector<std::pair<double, double>> intervals_;
  std::vector<double> cumulative_;
  double error_ = 0;  // integral up to the end of interval k
};

double height_infinity(const HeightQuery& q);
double height_infinity(const NormalizedShape& shape, double x, double t, double tol = 1e-10);

struct SurfaceValue {
  double t_minus_val = 0;
  double t_plus_val = 0;
  bool continuous_at_point = true;
};

/// T_- = inf{t : H >= target}, T_+ = sup{t : H <= target}, target = (y - |x|)/2.
SurfaceValue surface_T(const VerticalSection& section, double y, double tol = 1e-9);
SurfaceValue surface_T(const NormalizedShape& shape, double x, double y, double tol = 1e-9);

struct ContinuityTerm {
  int i0;
  Rational lhs;
  Rational rhs;
  Rational residual() const { return lhs - rhs; }
};

struct ContinuityReport {
  bool satisfied = true;
  std::vector<ContinuityTerm> terms;
};

/// sum_{i != i0} 1/(a_i0 - a_i) == sum_i 1/(a_i0 - b_i) for i0 = 1..m-1, exactly.
ContinuityReport continuity_criterion(const InterlacingDiagram& d);

/// Closed form for the r x 1 rectangle (a = (-1, r), b = (r - 1)), normalized.
double rect_height(double r, double x, double t, double tol = 1e-10);
/// The rectangle's integrand before the 1/pi, with sqrt of negatives taken as 0.
double rect_integrand(double r, double x, double s);

struct BoundarySample {
  double s, x, t;
  int segment;  // index of the gap between consecutive poles (0 = left ray)
  bool is_cusp;
};

struct FrozenBoundary {
  std::vector<BoundarySample> samples;
  std::vector<double> cusps;
  std::vector<double> poles;  // the excluded s-values eta a_i, eta b_i
  int dropped = 0;
};

/// Sigma(s) = sum 1/(s - eta a_i) - sum 1/(s - eta b_i).
double boundary_sigma(const NormalizedShape& shape, double s);
/// G(s) = prod (s - eta b_i) / prod (s - eta a_i).
double boundary_G(const NormalizedShape& shape, double s);
/// (x(s), t(s)) = (s - 1/Sigma, 1 - G/Sigma).
std::pair<double, double> boundary_point(const NormalizedShape& shape, double s);
/// dx/ds = 1 + Sigma'/Sigma^2.
double boundary_xdot(const NormalizedShape& shape, double s);

/// s-values spread over every gap between poles and over the two outer rays,
/// clustered towards the poles.
std::vector<double> default_s_grid(const NormalizedShape& shape, int per_segment = 400);

FrozenBoundary frozen_boundary(const NormalizedShape& shape, const std::vector<double>& s_grid,
                               double guard = 1e-9);

struct LShapeParams {
  Rational p, q, r;
};

bool in_lshape_domain(const LShapeParams& prm);
ClearedDiagram lshape_from_pqr(const LShapeParams& prm);
/// Rejects values that are not exactly rational (e.g. 2 - sqrt 2).
ClearedDiagram lshape_from_pqr(double p, double q, double r);

double phase_curve_Q(double p);
double phase_curve_Qpm(double r, double p, int sign);

/// Rational points (p, Q(p)) for r = 1 from the parameters (u, v), u v != 0:
/// p = (u(2v+u) - v^2)/(u^2+v^2), q = 1 + 2u(u-v)/(u^2+v^2).
std::pair<Rational, Rational> phase_curve_rational_point(const Rational& u, const Rational& v);

struct Plateau {
  double t_start, t_end, value;
};

/// Runs of >= 3 consecutive increments of H below `flat_tol` on a uniform grid
/// of step `dt`, excluding runs touching t = 0 or t = 1.
std::vector<Plateau> plateau_scan(const VerticalSection& section, double dt = 1e-3, double flat_tol = 1e-9);

}  // namespace tableau
