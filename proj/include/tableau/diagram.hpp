#pragma once

// Young diagrams in partition form and in Kerov interlacing coordinates
// a_0 < b_1 < a_1 < ... < b_m < a_m, plus the area-2 normalization used by
// every asymptotic quantity in the library.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tableau/rational.hpp"

namespace tableau {

using Coord = std::int64_t;

/// Non-increasing list of positive row lengths.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> rows);

  const std::vector<int>& rows() const { return rows_; }
  int length() const { return static_cast<int>(rows_.size()); }
  int first_row() const { return rows_.empty() ? 0 : rows_.front(); }
  std::int64_t size() const;
  /// Column lengths (the conjugate partition).
  std::vector<int> columns() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> rows_;
};

/// Interlacing coordinates of a non-empty diagram. The constructor rejects
/// anything that violates strict interlacing or sum(a) == sum(b).
class InterlacingDiagram {
 public:
  InterlacingDiagram(std::vector<Coord> a, std::vector<Coord> b);

  const std::vector<Coord>& a() const { return a_; }
  const std::vector<Coord>& b() const { return b_; }
  int m() const { return static_cast<int>(b_.size()); }
  Coord a_min() const { return a_.front(); }
  Coord a_max() const { return a_.back(); }

  friend bool operator==(const InterlacingDiagram&, const InterlacingDiagram&) = default;

 private:
  std::vector<Coord> a_;
  std::vector<Coord> b_;
};

/// Base diagram scaled by eta = 1/sqrt(|lambda|) so that its Russian-convention
/// picture has area 2.
class NormalizedShape {
 public:
  explicit NormalizedShape(InterlacingDiagram base);

  const InterlacingDiagram& base() const { return base_; }
  double eta() const { return eta_; }
  int m() const { return base_.m(); }
  /// eta * a_i and eta * b_i, computed once so equality tests against them are exact.
  const std::vector<double>& scaled_a() const { return sa_; }
  const std::vector<double>& scaled_b() const { return sb_; }
  double left() const { return sa_.front(); }
  double right() const { return sa_.back(); }

 private:
  InterlacingDiagram base_;
  double eta_;
  std::vector<double> sa_;
  std::vector<double> sb_;
};

InterlacingDiagram interlacing_from_partition(const Partition& p);
Partition partition_from_interlacing(const InterlacingDiagram& d);

/// |lambda| = (sum a_i^2 - sum b_i^2) / 2.
std::int64_t size(const InterlacingDiagram& d);

InterlacingDiagram dilate(const InterlacingDiagram& d, std::int64_t n);

/// omega_lambda(x) = sum |x - a_i| - sum |x - b_i| for the unscaled diagram.
double profile_omega(const InterlacingDiagram& d, double x);
/// omega of the normalized diagram eta*lambda.
double profile_omega(const NormalizedShape& shape, double x);

/// |x| < y < omega(x), strict.
bool in_domain(const NormalizedShape& shape, double x, double y);

/// Number of cells with content x, i.e. (omega(x) - |x|) / 2 at integer x.
std::int64_t column_count(const InterlacingDiagram& d, Coord x);

/// Result of accepting rational coordinates: the integer diagram after
/// multiplying every coordinate by `multiplier` (the lcm of denominators).
struct ClearedDiagram {
  InterlacingDiagram diagram;
  BigInt multiplier;
};

ClearedDiagram clear_denominators(std::span<const Rational> a, std::span<const Rational> b);

/// Accepts {"rows": [...]} or {"a": [...], "b": [...]}; entries of a/b may be
/// integers or rational strings like "3/2". Errors name the failed invariant.
ClearedDiagram diagram_from_json(std::string_view text);

std::string describe(const InterlacingDiagram& d);

}  // namespace tableau
