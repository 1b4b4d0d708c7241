#pragma once

// Correlation kernels of the bead process: the finite kernel K_lambda of a
// fixed diagram, the infinite bead kernel J_{alpha,beta}, and the local limit
// kernel K_infinity at a liquid point together with its conjugation to J.

#include <complex>

#include "tableau/critical.hpp"
#include "tableau/diagram.hpp"

namespace tableau {

struct SpaceTimePoint {
  Coord x = 0;
  double t = 0;
};

/// Origin-centred circles of radius r_w (w variable) and r_z (z variable),
/// both in Z + 1/2. The trapezoid rule starts at `nodes` per circle and doubles
/// up to `max_nodes` until successive values differ by less than `tol`.
struct ContourSpec {
  double r_w = 0;
  double r_z = 0;
  int nodes = 64;
  int max_nodes = 4096;
  double tol = 1e-9;
  bool w_inside_z = true;
};

/// R_in = max(l, lambda_1, |x1|, |x2|) + 1/2, R_out = R_in + max(2, ceil(R_in / 2));
/// the w circle is inside iff t1 >= t2.
ContourSpec default_contour(const InterlacingDiagram& d, SpaceTimePoint p1, SpaceTimePoint p2);

/// K_lambda((x1,t1),(x2,t2)) by the double trapezoid rule. Requires t in
/// [0, 1). Throws NumericalError on non-convergence or a non-real result.
double finite_kernel(const InterlacingDiagram& d, SpaceTimePoint p1, SpaceTimePoint p2, const ContourSpec& spec);
double finite_kernel(const InterlacingDiagram& d, SpaceTimePoint p1, SpaceTimePoint p2);

/// Largest t at which the default contours still evaluate the diagonal
/// K_lambda((x,t),(x,t)) reliably.
double finite_kernel_safe_height(const InterlacingDiagram& d, Coord x);

/// Integral of K_lambda((x,t),(x,t)) over [t_lo, t_hi]. The diagonal is a
/// polynomial in t of degree <= a_m - a_0 - 2, so Gauss–Legendre with enough
/// nodes is exact; it also keeps the nodes away from t = 1, where the contour
/// integrand cancels catastrophically.
double finite_kernel_diagonal_integral(const InterlacingDiagram& d, Coord x, double t_lo = 0.0, double t_hi = 1.0);

struct BeadKernelParams {
  double alpha = 1;
  double beta = 0;
};

/// J_{alpha,beta}. For x2 < x1 at equal times the value is the limit t2 -> t1-.
double bead_kernel(const BeadKernelParams& params, SpaceTimePoint p1, SpaceTimePoint p2);

/// Everything K_infinity needs from the critical point at (x0, t0).
struct LocalLimit {
  double x0 = 0;
  double t0 = 0;
  Complex Uc{};
  double alpha = 0;
  double beta = 0;
};

/// Throws DomainError when (x0, t0) is frozen.
LocalLimit local_limit(const NormalizedShape& shape, double x0, double t0);

/// g(y, eps) = exp(eps R cos(theta) / (1 - t0)) (R / (1 - t0))^(-y), R e^{i theta} = U_c,
/// so that K_infinity(p1, p2) = g(p1) / g(p2) J_{alpha,beta}(p1, p2).
double conjugation_g(const LocalLimit& loc, Coord y, double eps);

/// K_infinity through the conjugation identity.
double limit_kernel(const LocalLimit& loc, SpaceTimePoint p1, SpaceTimePoint p2);
double limit_kernel(const NormalizedShape& shape, double x0, double t0, SpaceTimePoint p1, SpaceTimePoint p2);

/// K_infinity by direct quadrature of its defining integral along a polygonal
/// path from conj(U_c) to U_c (left of 0 when t1 >= t2, right otherwise).
double limit_kernel_direct(const LocalLimit& loc, SpaceTimePoint p1, SpaceTimePoint p2);

}  // namespace tableau
