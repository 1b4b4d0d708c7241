#include "tableau/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "tableau/errors.hpp"

namespace tableau {

namespace {

using C = std::complex<double>;

constexpr double kG = 7.0;
constexpr std::array<double, 9> kLanczos{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                         771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                         -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

C lanczos_log(C z) {
  const C x = z - 1.0;
  C acc = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) acc += kLanczos[k] / (x + static_cast<double>(k));
  const C t = x + kG + 0.5;
  return 0.5 * std::log(2 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(acc);
}

// Order of the pole of F at the integer k: #{a_i > k} - #{b_i > k}, 0 or 1.
int pole_order(const InterlacingDiagram& d, Coord k) {
  int order = 0;
  for (Coord a : d.a()) order += a > k;
  for (Coord b : d.b()) order -= b > k;
  return order;
}

}  // namespace

C log_gamma_complex(C z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("log_gamma_complex: pole at a non-positive integer");
  if (z.real() < 0.5) return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) - lanczos_log(1.0 - z);
  return lanczos_log(z);
}

bool F_lambda_pole(const InterlacingDiagram& d, Coord k) { return pole_order(d, k) > 0; }

C F_lambda_log(const InterlacingDiagram& d, C u) {
  const double kr = std::round(u.real());
  const C eps = u - kr;
  if (std::abs(eps) >= 0.25) {
    C acc = 0;
    for (Coord a : d.a()) acc += log_gamma_complex(u - static_cast<double>(a) + 1.0);
    for (Coord b : d.b()) acc -= log_gamma_complex(u - static_cast<double>(b) + 1.0);
    return acc;
  }
  // Near the integer k write Gamma(eps + m), m <= 0, as
  // Gamma(eps + 1) / (eps * prod_{j=m}^{-1} (eps + j)) and cancel the eps factors.
  const Coord k = static_cast<Coord>(kr);
  const int order = pole_order(d, k);
  if (order > 0 && std::abs(eps) < 1e-6) throw DomainError("F_lambda: argument within 1e-6 of a pole");
  const C lg1 = log_gamma_complex(1.0 + eps);
  auto term = [&](Coord c) -> C {
    const Coord m = k - c + 1;
    if (m >= 1) return log_gamma_complex(eps + static_cast<double>(m));
    C acc = lg1;
    for (Coord j = m; j <= -1; ++j) acc -= std::log(eps + static_cast<double>(j));
    return acc;
  };
  C acc = 0;
  for (Coord a : d.a()) acc += term(a);
  for (Coord b : d.b()) acc -= term(b);
  if (order != 0) acc -= static_cast<double>(order) * std::log(eps);
  return acc;
}

}  // namespace tableau
