#pragma once

// Exact sampling of uniform standard / Poissonized Young tableaux and the
// bead configurations and height functions read off them.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tableau/diagram.hpp"

namespace tableau {

using Rng = std::mt19937_64;

/// Independent generator for replicate `replicate` of an experiment seeded
/// with `seed`; the pair is mixed through splitmix64 before seeding.
Rng make_stream(std::uint64_t seed, std::uint64_t replicate);

/// Entries 1..n stored row by row (0-based cell indices).
class StandardTableau {
 public:
  StandardTableau(Partition shape, std::vector<std::int64_t> entries);

  const Partition& shape() const { return shape_; }
  std::int64_t entry(int row, int col) const { return entries_[offset(row) + static_cast<std::size_t>(col)]; }
  std::span<const std::int64_t> flat() const { return entries_; }
  std::int64_t size() const { return static_cast<std::int64_t>(entries_.size()); }
  /// Bijection onto 1..n, increasing along rows and columns.
  bool valid() const;

  friend bool operator==(const StandardTableau&, const StandardTableau&) = default;

 private:
  std::size_t offset(int row) const { return row_start_[static_cast<std::size_t>(row)]; }
  Partition shape_;
  std::vector<std::size_t> row_start_;
  std::vector<std::int64_t> entries_;
};

class PoissonizedTableau {
 public:
  PoissonizedTableau(Partition shape, std::vector<double> values);

  const Partition& shape() const { return shape_; }
  double value(int row, int col) const { return values_[row_start_[static_cast<std::size_t>(row)] + static_cast<std::size_t>(col)]; }
  std::span<const double> flat() const { return values_; }
  bool valid() const;

 private:
  Partition shape_;
  std::vector<std::size_t> row_start_;
  std::vector<double> values_;
};

/// Greene–Nijenhuis–Wilf hook walk: exact uniform SYT of shape p.
StandardTableau hook_walk_sample(const Partition& p, Rng& rng);

/// Replaces entry k by the k-th order statistic of n iid uniforms, giving a
/// uniform point of the order polytope.
PoissonizedTableau poissonize(const StandardTableau& t, Rng& rng);

/// Beads stored thread by thread (CSR), heights sorted within a thread.
/// Threads outside [first_thread, last_thread] are empty.
class BeadConfiguration {
 public:
  BeadConfiguration() = default;
  BeadConfiguration(Coord first_thread, std::vector<std::size_t> offsets, std::vector<double> heights);

  Coord first_thread() const { return first_; }
  Coord last_thread() const { return first_ + static_cast<Coord>(offsets_.size()) - 2; }
  std::span<const double> thread(Coord x) const;
  std::size_t total() const { return heights_.size(); }
  /// Number of beads on thread x with height <= t.
  std::int64_t count(Coord x, double t) const;
  /// Between two consecutive beads on a thread each neighbouring thread
  /// carries exactly one bead.
  bool interlacing() const;

 private:
  Coord first_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<double> heights_;
};

/// One bead per cell (i, j) at thread j - i, height T(i, j). Throws
/// NumericalError if the result fails the interlacing check.
BeadConfiguration beads_from_tableau(const PoissonizedTableau& t);

/// H(x, t): beads on thread x at height <= t.
std::int64_t empirical_height(const BeadConfiguration& b, Coord x, double t);

/// (1/sqrt N) H(floor(x sqrt N), t) on grid[ix][it] for the n-fold dilation
/// of shape0, N = n^2 |shape0|.
std::vector<std::vector<double>> rescaled_height_profile(const InterlacingDiagram& shape0, std::int64_t n,
                                                         const BeadConfiguration& sample,
                                                         std::span<const double> x_grid,
                                                         std::span<const double> t_grid);

/// Beads with |x - x0| <= half_width and |h - t0| sqrt N <= half_height,
/// recentred to local coordinates (x - x0, (h - t0) sqrt N).
BeadConfiguration window_extract(const BeadConfiguration& b, Coord x0_threads, double t0, double N,
                                 Coord half_width, double half_height);

/// Uniform Poissonized tableau of shape p, as beads.
BeadConfiguration sample_beads(const Partition& p, Rng& rng);

}  // namespace tableau
