#pragma once

// Dense real polynomials (ascending coefficients) and an Aberth–Ehrlich
// simultaneous root finder.

#include <complex>
#include <span>
#include <vector>

namespace tableau {

using Complex = std::complex<double>;

/// Coefficients c_0 + c_1 U + ... + c_n U^n.
using Poly = std::vector<double>;

Poly poly_mul(std::span<const double> p, std::span<const double> q);
/// Product of (U + shift_k) over all shifts.
Poly poly_from_shifts(std::span<const double> shifts);

Complex poly_eval(std::span<const double> c, Complex z);
double poly_eval(std::span<const double> c, double x);
/// sum |c_k| |z|^k, the natural scale for the rounding error of poly_eval.
double poly_eval_scale(std::span<const double> c, Complex z);

struct AberthOptions {
  int max_iterations = 200;
  double step_tol = 1e-13;
};

/// All complex roots with multiplicity. The top coefficient must be non-zero.
/// Throws NumericalError if the iteration does not settle.
std::vector<Complex> aberth_roots(std::span<const double> coeffs, const AberthOptions& opt = {});

}  // namespace tableau
