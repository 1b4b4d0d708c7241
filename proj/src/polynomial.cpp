#include "tableau/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tableau/errors.hpp"

namespace tableau {

Poly poly_mul(std::span<const double> p, std::span<const double> q) {
  if (p.empty() || q.empty()) return {};
  Poly r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

Poly poly_from_shifts(std::span<const double> shifts) {
  Poly r{1.0};
  for (double s : shifts) {
    const double lin[2] = {s, 1.0};
    r = poly_mul(r, lin);
  }
  return r;
}

Complex poly_eval(std::span<const double> c, Complex z) {
  Complex v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
  return v;
}

double poly_eval(std::span<const double> c, double x) {
  double v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

double poly_eval_scale(std::span<const double> c, Complex z) {
  const double r = std::abs(z);
  double v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * r + std::abs(c[k]);
  return v;
}

namespace {

// p(z) and p'(z) by Horner.
void eval_with_derivative(std::span<const double> c, Complex z, Complex& p, Complex& dp) {
  p = 0;
  dp = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

constexpr double kBackwardFactor = 8 * std::numeric_limits<double>::epsilon();

}  // namespace

std::vector<Complex> aberth_roots(std::span<const double> coeffs, const AberthOptions& opt) {
  const std::size_t n = coeffs.size() - 1;
  if (coeffs.empty() || coeffs.back() == 0.0)
    throw NumericalError("aberth: leading coefficient must be non-zero");
  if (n == 0) return {};
  if (n == 1) return {Complex(-coeffs[0] / coeffs[1], 0.0)};

  Poly c(coeffs.begin(), coeffs.end());
  const double lead = c.back();
  for (auto& v : c) v /= lead;

  double radius = 0;
  for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k]));
  radius += 1.0;

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Offset the angles so no start point is real or symmetric about the axis.
    const double th = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, th);
  }

  std::vector<bool> done(n, false);
  std::size_t remaining = n;
  for (int it = 0; it < opt.max_iterations && remaining > 0; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p, dp;
      eval_with_derivative(c, z[k], p, dp);
      if (std::abs(p) <= kBackwardFactor * poly_eval_scale(c, z[k])) {
        done[k] = true;
        --remaining;
        continue;
      }
      Complex sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const Complex ratio = p / dp;
      const Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        z[k] += Complex(1e-8 * (1 + std::abs(z[k])), 1e-8);  // nudge off a critical point
        continue;
      }
      z[k] -= step;
      if (std::abs(step) < opt.step_tol * (1 + std::abs(z[k]))) {
        done[k] = true;
        --remaining;
      }
    }
  }
  if (remaining > 0) throw NumericalError("aberth: root iteration did not converge");

  // Guarded Newton polish: only accept steps that reduce |p|.
  for (auto& r : z) {
    for (int k = 0; k < 3; ++k) {
      Complex p, dp;
      eval_with_derivative(c, r, p, dp);
      if (dp == 0.0 || p == 0.0) break;
      const Complex cand = r - p / dp;
      if (std::abs(poly_eval(c, cand)) < std::abs(p)) r = cand;
      else break;
    }
  }
  return z;
}

}  // namespace tableau
