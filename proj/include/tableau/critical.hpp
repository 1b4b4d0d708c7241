#pragma once

// The critical equation U prod(x - eta b_i + U) = (1 - t) prod(x - eta a_i + U)
// at a point (x, t) of the strip [eta a_0, eta a_m] x [0, 1], its roots, and
// the liquid/frozen classification built on them.

#include <optional>
#include <vector>

#include "tableau/diagram.hpp"
#include "tableau/polynomial.hpp"

namespace tableau {

enum class Phase { Liquid, Frozen };
enum class FrozenRegime { None, SmallT, LargeT, IntermediateT, DegenerateEdge };

const char* to_string(Phase p);
const char* to_string(FrozenRegime r);

struct CriticalPoly {
  Poly coeffs;  // ascending; top coefficient is t (or the degree-m term when t == 0)
  double x = 0;
  double t = 0;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct PhaseClassification {
  std::vector<Complex> roots;
  Phase verdict = Phase::Frozen;
  FrozenRegime regime = FrozenRegime::None;
  // Set only when Liquid.
  Complex Uc{};
  double alpha = 0;
  double beta = 0;

  bool liquid() const { return verdict == Phase::Liquid; }
};

/// |Im r| <= 1e-8 (1 + |r|).
bool is_real_root(Complex r);

CriticalPoly build_critical_poly(const NormalizedShape& shape, double x, double t);

PhaseClassification solve_critical(const NormalizedShape& shape, double x, double t);

/// The point x = eta a_i: the factor U cancels and a degree-m equation remains.
PhaseClassification classify_degenerate(const NormalizedShape& shape, int i, double t);

/// Index i with x == eta a_i exactly, if any.
std::optional<int> degenerate_index(const NormalizedShape& shape, double x);

/// i0 >= 1 with x in (eta a_{i0-1}, eta a_{i0}).
int column_interval(const NormalizedShape& shape, double x);

struct RootInterval {
  enum class Claim { NoRoot, AtLeastOne, Unconstrained };
  double lo, hi;
  bool lo_closed, hi_closed;
  Claim claim;
  int index;  // i of (eta a_{i-1} - x, eta b_i - x] etc., or -1 for the extra intervals
  int count;  // computed real roots inside
};

/// Counts computed real roots in each interval where the interlacing forces
/// (or forbids) a root, plus the outer rays and the i0 interval. Throws NumericalError if a
/// "no root" / "at least one" claim is contradicted beyond `tol`.
std::vector<RootInterval> localize_real_roots(const NormalizedShape& shape, double x, double t,
                                              double tol = 1e-9);

double t_minus(const NormalizedShape& shape, double x);
double t_plus(const NormalizedShape& shape, double x);

/// t^{2m} prod_{i<j} (r_i - r_j)^2 from the computed roots (t > 0).
double discriminant(const NormalizedShape& shape, double x, double t);
/// Sign of the discriminant, 0 when |Disc| < tol.
int discriminant_sign(const NormalizedShape& shape, double x, double t, double tol = 1e-9);

/// Central-difference residual of (U_c)_t + U_c ((U_c)_x + 1) / (1 - t).
Complex burgers_residual(const NormalizedShape& shape, double x, double t, double h);

}  // namespace tableau
