#pragma once

#include <complex>

#include "tableau/diagram.hpp"

namespace tableau {

/// log Gamma(z) (some branch; exp() of it is Gamma(z)). Lanczos g = 7 with
/// reflection for Re z < 1/2. Throws DomainError at non-positive integers.
std::complex<double> log_gamma_complex(std::complex<double> z);

/// log F_lambda(u) = sum log Gamma(u - a_i + 1) - sum log Gamma(u - b_i + 1).
/// Gamma poles that cancel between numerator and denominator are removed
/// exactly, so the value is finite at every integer outside {lambda_i - i}.
/// Throws DomainError within 1e-6 of a pole.
std::complex<double> F_lambda_log(const InterlacingDiagram& d, std::complex<double> u);

/// True if u = k is a pole of F_lambda, i.e. k = lambda_i - i for some i >= 1.
bool F_lambda_pole(const InterlacingDiagram& d, Coord k);

}  // namespace tableau
