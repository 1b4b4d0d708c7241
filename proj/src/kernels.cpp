#include "tableau/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "tableau/errors.hpp"
#include "tableau/gamma.hpp"

namespace tableau {

namespace {

using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const C I(0.0, 1.0);

bool half_integer(double r) { return r > 0 && std::abs(r - std::floor(r) - 0.5) < 1e-12; }

// Composite 30-point Gauss–Legendre for a complex integrand along the segment p -> q.
template <class F>
C segment_integral(F&& f, C p, C q, int panels) {
  using GL = boost::math::quadrature::gauss<double, 30>;
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  C total = 0;
  for (int k = 0; k < panels; ++k) {
    const C a = p + (q - p) * (double(k) / panels);
    const C b = p + (q - p) * (double(k + 1) / panels);
    const C mid = 0.5 * (a + b), half = 0.5 * (b - a);
    C acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      acc += w[i] * f(mid + half * x[i]);
      if (x[i] != 0.0) acc += w[i] * f(mid - half * x[i]);
    }
    total += acc * half;
  }
  return total;
}

int panels_for(double oscillation, double degree) {
  return 1 + static_cast<int>(std::abs(oscillation) / 6.0) + static_cast<int>(std::abs(degree) / 40.0);
}

struct Scaled {
  std::vector<C> nodes;
  std::vector<C> values;  // value * node / exp(shift)
  double shift = 0;
};

template <class LogF>
Scaled sample_circle(double r, int M, LogF&& logf) {
  Scaled s;
  s.nodes.resize(static_cast<std::size_t>(M));
  std::vector<C> logs(static_cast<std::size_t>(M));
  double mx = -INFINITY;
  for (int k = 0; k < M; ++k) {
    const C z = std::polar(r, 2 * kPi * k / M);
    s.nodes[static_cast<std::size_t>(k)] = z;
    logs[static_cast<std::size_t>(k)] = logf(z) + std::log(z);
    mx = std::max(mx, logs[static_cast<std::size_t>(k)].real());
  }
  s.shift = mx;
  s.values.resize(logs.size());
  for (std::size_t k = 0; k < logs.size(); ++k) s.values[k] = std::exp(logs[k] - mx);
  return s;
}

}  // namespace

ContourSpec default_contour(const InterlacingDiagram& d, SpaceTimePoint p1, SpaceTimePoint p2) {
  const double base = static_cast<double>(std::max({-d.a_min(), d.a_max(), std::abs(p1.x), std::abs(p2.x)}));
  const double r_in = base + 0.5;
  const double r_out = r_in + std::max(2.0, std::ceil(r_in / 2));
  ContourSpec spec;
  spec.w_inside_z = p1.t >= p2.t;
  spec.r_w = spec.w_inside_z ? r_in : r_out;
  spec.r_z = spec.w_inside_z ? r_out : r_in;
  return spec;
}

double finite_kernel(const InterlacingDiagram& d, SpaceTimePoint p1, SpaceTimePoint p2, const ContourSpec& spec) {
  for (double t : {p1.t, p2.t})
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("finite_kernel: heights must lie in [0, 1)");
  if (!half_integer(spec.r_w) || !half_integer(spec.r_z)) throw DomainError("finite_kernel: radii must lie in Z + 1/2");
  if (spec.w_inside_z != (p1.t >= p2.t))
    throw DomainError("finite_kernel: the w contour must be inside the z contour iff t1 >= t2");
  if (spec.w_inside_z ? spec.r_w >= spec.r_z : spec.r_z >= spec.r_w)
    throw DomainError("finite_kernel: nesting flag disagrees with the radii");
  // w encloses [a_0, x1 - 1], z encloses [x2, a_m - 1]
  if (p1.x - 1 >= d.a_min() && spec.r_w < static_cast<double>(std::max(-d.a_min(), std::abs(p1.x - 1))))
    throw DomainError("finite_kernel: w contour misses [a_0, x1 - 1]");
  if (d.a_max() - 1 >= p2.x && spec.r_z < static_cast<double>(std::max(std::abs(p2.x), std::abs(d.a_max() - 1))))
    throw DomainError("finite_kernel: z contour misses [x2, a_m - 1]");

  const double l1 = std::log1p(-p1.t), l2 = std::log1p(-p2.t);
  const double x1 = static_cast<double>(p1.x), x2 = static_cast<double>(p2.x);
  auto log_a = [&](C z) { return F_lambda_log(d, z) + (z - x2) * l2 - log_gamma_complex(z - x2 + 1.0); };
  auto log_b = [&](C w) { return log_gamma_complex(w - x1 + 1.0) + (x1 - 1.0 - w) * l1 - F_lambda_log(d, w); };

  auto evaluate = [&](int M) {
    const Scaled zs = sample_circle(spec.r_z, M, log_a);
    const Scaled ws = sample_circle(spec.r_w, M, log_b);
    C sum = 0;
    for (std::size_t k = 0; k < zs.nodes.size(); ++k) {
      C inner = 0;
      for (std::size_t j = 0; j < ws.nodes.size(); ++j) inner += ws.values[j] / (zs.nodes[k] - ws.nodes[j]);
      sum += zs.values[k] * inner;
    }
    return -sum * std::exp(zs.shift + ws.shift) / (double(M) * double(M));
  };

  C prev = evaluate(spec.nodes);
  for (int M = 2 * spec.nodes; M <= spec.max_nodes; M *= 2) {
    const C cur = evaluate(M);
    if (std::abs(cur - prev) < spec.tol) {
      if (std::abs(cur.imag()) > spec.tol * std::max(1.0, std::abs(cur.real())))
        throw NumericalError("finite_kernel: imaginary part above tolerance");
      return cur.real();
    }
    prev = cur;
  }
  throw NumericalError("finite_kernel: trapezoid rule did not converge within the node cap");
}

double finite_kernel(const InterlacingDiagram& d, SpaceTimePoint p1, SpaceTimePoint p2) {
  return finite_kernel(d, p1, p2, default_contour(d, p1, p2));
}

// The integrand's dynamic range on the circles grows like
// (1 - t)^-(R_w + R_z + 1); keep it below ~1e6.
double finite_kernel_safe_height(const InterlacingDiagram& d, Coord x) {
  const auto spec = default_contour(d, {x, 0.0}, {x, 0.0});
  return 1.0 - std::pow(10.0, -6.0 / (spec.r_w + spec.r_z + 1.0));
}

double finite_kernel_diagonal_integral(const InterlacingDiagram& d, Coord x, double t_lo, double t_hi) {
  if (!(0.0 <= t_lo && t_lo <= t_hi && t_hi <= 1.0)) throw DomainError("diagonal integral: need 0 <= t_lo <= t_hi <= 1");
  if (x <= d.a_min() || x >= d.a_max() || t_lo == t_hi) return 0.0;
  const int degree = static_cast<int>(d.a_max() - d.a_min() - 2);
  auto K = [&](double t) { return finite_kernel(d, {x, t}, {x, t}); };

  const double safe = finite_kernel_safe_height(d, x);

  if (t_hi <= safe) {
    const int n = degree / 2 + 1;
    const auto zeros = boost::math::legendre_p_zeros<double>(n);
    const double mid = 0.5 * (t_lo + t_hi), half = 0.5 * (t_hi - t_lo);
    double total = 0;
    for (double z : zeros) {
      const double dp = boost::math::legendre_p_prime<double>(n, z);
      const double w = 2.0 / ((1 - z * z) * dp * dp);
      total += w * K(mid + half * z);
      if (z != 0.0) total += w * K(mid - half * z);
    }
    return total * half;
  }
  // Interpolate at Chebyshev points of [0, safe] (exact for the polynomial)
  // and integrate the interpolant over [t_lo, t_hi].
  const int n = degree + 1;
  std::vector<double> f(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double s = std::cos(kPi * (j + 0.5) / n);
    f[static_cast<std::size_t>(j)] = K(0.5 * safe * (s + 1));
  }
  auto cheb = [](int k, double s) {
    double t0 = 1, t1 = s;
    if (k == 0) return t0;
    for (int i = 1; i < k; ++i) {
      const double t2 = 2 * s * t1 - t0;
      t0 = t1;
      t1 = t2;
    }
    return t1;
  };
  auto antideriv = [&](int k, double s) {
    if (k == 0) return s;
    if (k == 1) return 0.5 * s * s;
    return 0.5 * (cheb(k + 1, s) / (k + 1) - cheb(k - 1, s) / (k - 1));
  };
  const double sa = 2 * t_lo / safe - 1, sb = 2 * t_hi / safe - 1;
  double total = 0;
  for (int k = 0; k < n; ++k) {
    double c = 0;
    for (int j = 0; j < n; ++j) c += f[static_cast<std::size_t>(j)] * std::cos(kPi * k * (j + 0.5) / n);
    c *= (k == 0 ? 1.0 : 2.0) / n;
    total += c * (antideriv(k, sb) - antideriv(k, sa));
  }
  return total * 0.5 * safe;
}

double bead_kernel(const BeadKernelParams& params, SpaceTimePoint p1, SpaceTimePoint p2) {
  const double alpha = params.alpha, beta = params.beta;
  if (!(alpha > 0) || !(beta > -1 && beta < 1)) throw DomainError("bead_kernel: need alpha > 0 and -1 < beta < 1");
  const double s = std::sqrt(1 - beta * beta);
  const double a = (p1.t - p2.t) * alpha;
  const Coord dx = p2.x - p1.x;
  auto f = [&](C u) { return std::exp(I * a * u) * std::pow(beta + I * u * s, static_cast<int>(dx)); };

  if (dx >= 0) {
    const C inner = segment_integral(f, -1.0, 1.0, panels_for(a, double(dx)));
    return (alpha / (2 * kPi) * inner).real();
  }
  // Complement of [-1, 1]: close the real line in the half-plane where
  // e^{iau} decays (upper for a >= 0, the t2 -> t1- convention at a = 0).
  // The only singularity is the pole of order k at u* = i beta / s.
  const int k = static_cast<int>(-dx);
  const double side = a >= 0 ? 1.0 : -1.0;
  const C ustar = I * beta / s;
  C complement;
  if (std::abs(ustar.imag()) >= 0.5) {
    const C inner = segment_integral(f, -1.0, 1.0, panels_for(a, k));
    C res = 0;
    if (ustar.imag() * side > 0) {
      double fact = 1;
      for (int j = 2; j < k; ++j) fact *= j;
      res = std::pow(I * s, -k) * std::pow(I * a, k - 1) * std::exp(I * a * ustar) / fact;
    }
    complement = side * 2 * kPi * I * res - inner;
  } else {
    // pole close to the segment: route [-1, 1] through the closing side at
    // height 1 instead, which leaves the pole outside the closed contour
    const C h = side * I;
    const int p = panels_for(a, k);
    const C detour = segment_integral(f, -1.0, -1.0 + h, p) + segment_integral(f, -1.0 + h, 1.0 + h, p) +
                     segment_integral(f, 1.0 + h, 1.0, p);
    complement = -detour;
  }
  return (-alpha / (2 * kPi) * complement).real();
}

LocalLimit local_limit(const NormalizedShape& shape, double x0, double t0) {
  const auto pc = solve_critical(shape, x0, t0);
  if (!pc.liquid()) throw DomainError("limit kernel: the point (x0, t0) is frozen");
  return {x0, t0, pc.Uc, pc.alpha, pc.beta};
}

double conjugation_g(const LocalLimit& loc, Coord y, double eps) {
  const double R = std::abs(loc.Uc);
  const double scale = 1 - loc.t0;
  return std::exp(eps * loc.Uc.real() / scale) * std::pow(R / scale, -static_cast<double>(y));
}

double limit_kernel(const LocalLimit& loc, SpaceTimePoint p1, SpaceTimePoint p2) {
  const double ratio = conjugation_g(loc, p1.x, p1.t) / conjugation_g(loc, p2.x, p2.t);
  return ratio * bead_kernel({loc.alpha, loc.beta}, p1, p2);
}

double limit_kernel(const NormalizedShape& shape, double x0, double t0, SpaceTimePoint p1, SpaceTimePoint p2) {
  return limit_kernel(local_limit(shape, x0, t0), p1, p2);
}

double limit_kernel_direct(const LocalLimit& loc, SpaceTimePoint p1, SpaceTimePoint p2) {
  const double scale = 1 - loc.t0;
  const double dt = p1.t - p2.t;
  const int dx = static_cast<int>(p2.x - p1.x);
  auto h = [&](C W) { return std::exp(W * dt / scale) * std::pow(W / scale, dx) / scale; };
  const C top = loc.Uc, bottom = std::conj(loc.Uc);
  const int panels = panels_for(dt * std::abs(loc.Uc) / scale, dx) + 1;
  C total;
  // for dx < 0 the integrand has a pole at 0, which the path must pass on the
  // left when t1 >= t2 and on the right otherwise
  const double want = dt >= 0 ? -1.0 : 1.0;
  if (dx >= 0 || top.real() * want > 0.25 * std::abs(top)) {
    total = segment_integral(h, bottom, top, panels);
  } else {
    const double c = want * std::abs(top);
    const C b2(c, bottom.imag()), t2(c, top.imag());
    total = segment_integral(h, bottom, b2, panels) + segment_integral(h, b2, t2, panels) +
            segment_integral(h, t2, top, panels);
  }
  return (total / (2 * kPi * I)).real();
}

}  // namespace tableau
