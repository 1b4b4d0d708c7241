#pragma once

#include <functional>

namespace tableau {

struct QuadResult {
  double value = 0;
  double error = 0;
};

/// Adaptive Gauss–Kronrod (7/15) on [a, b]. Throws NumericalError when the
/// error estimate stays above `abs_tol` after `max_depth` bisections.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = 1e-10, unsigned max_depth = 30);

/// Same, after the substitution s = p + (q - p)(1 - cos th)/2, th in [0, pi].
/// The Jacobian's sin th absorbs 1/sqrt endpoint singularities and smooths
/// sqrt-type vanishing.
QuadResult integrate_cosine(const std::function<double(double)>& f, double p, double q,
                            double abs_tol = 1e-10, unsigned max_depth = 30);

/// Fixed 30-point Gauss–Legendre on [a, b] (exact for degree <= 59).
double gauss_legendre_30(const std::function<double(double)>& f, double a, double b);

}  // namespace tableau
