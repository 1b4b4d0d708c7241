#include "tableau/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <queue>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tableau/errors.hpp"

namespace tableau {

namespace {

struct Panel {
  double a, b, value, error;
  unsigned depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod_panel(const std::function<double(double)>& f, double a, double b, unsigned depth) {
  double err = 0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err, depth};
}

constexpr std::size_t kMaxPanels = 4000;

}  // namespace

// Globally adaptive: always bisect the panel with the largest error estimate.
// The stopping rule error <= abs_tol * max(1, |value|) is absolute for small
// integrals and relative for large ones.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, unsigned max_depth) {
  if (a == b) return {};
  std::priority_queue<Panel> heap;
  heap.push(kronrod_panel(f, a, b, 0));
  double value = heap.top().value, error = heap.top().error;
  while (error > abs_tol * std::max(1.0, std::abs(value))) {
    const Panel worst = heap.top();
    if (worst.depth >= max_depth || heap.size() >= kMaxPanels || !std::isfinite(value)) break;
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = kronrod_panel(f, worst.a, mid, worst.depth + 1);
    const Panel right = kronrod_panel(f, mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // re-sum to shed the drift of the running updates
  value = 0, error = 0;
  for (; !heap.empty(); heap.pop()) value += heap.top().value, error += heap.top().error;
  if (!std::isfinite(value) || error > abs_tol * std::max(1.0, std::abs(value)))
  {
    char msg[160];
    std::snprintf(msg, sizeof msg, "quadrature on [%.17g, %.17g]: error estimate %.3g above tolerance %.3g", a, b,
                  error, abs_tol);
    throw NumericalError(msg);
  }
  return {value, error};
}

QuadResult integrate_cosine(const std::function<double(double)>& f, double p, double q,
                            double abs_tol, unsigned max_depth) {
  if (p == q) return {};
  const double half = 0.5 * (q - p);
  auto g = [&](double th) {
    // offset measured from the nearer endpoint, so s never rounds past it
    const double s = th <= std::numbers::pi / 2 ? p + 2 * half * std::pow(std::sin(th / 2), 2)
                                                : q - 2 * half * std::pow(std::cos(th / 2), 2);
    const double jac = half * std::sin(th);
    if (jac == 0.0) return 0.0;
    return f(s) * jac;
  };
  return integrate_adaptive(g, 0.0, std::numbers::pi, abs_tol, max_depth);
}

double gauss_legendre_30(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
}

}  // namespace tableau
