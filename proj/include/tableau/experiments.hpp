#pragma once

// Seeded Monte Carlo harnesses comparing sampled tableaux of dilated shapes
// with the limit surface and the local bead intensity. Replicate r always uses
// make_stream(seed, r), so results do not depend on the worker count.

#include <cstdint>
#include <functional>
#include <vector>

#include "tableau/diagram.hpp"

namespace tableau {

/// Largest dilation accepted by the harnesses, in cells.
inline constexpr std::int64_t kMaxCells = 1'000'000;

/// Runs body(i) for i in [0, count) on up to `workers` threads.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

/// Partition of the n-fold dilation; DomainError beyond kMaxCells.
Partition dilated_partition(const InterlacingDiagram& shape0, std::int64_t n);

struct LimitGrid {
  std::vector<double> xs;                 // nx points spanning [eta a_0, eta a_m]
  std::vector<double> ts;                 // nt points spanning [0, 1]
  std::vector<std::vector<double>> height;  // H_infinity(xs[i], ts[j])
};

LimitGrid limit_grid(const InterlacingDiagram& shape0, int nx = 41, int nt = 21);

struct CompareResult {
  std::int64_t n = 0;
  std::vector<double> errors;  // sup over the grid, one per replicate
  double median = 0;
};

/// sup |(1/sqrt N) H_{lambda_N} - H_infinity| over `grid` for `reps` samples.
CompareResult compare_limit_shape(const InterlacingDiagram& shape0, const LimitGrid& grid, std::int64_t n, int reps,
                                  std::uint64_t seed, unsigned workers = 1);

struct WindowResult {
  std::int64_t n = 0;
  std::int64_t x0_threads = 0;
  double mean_count = 0;  // beads per window
  double intensity = 0;   // beads per thread per unit local height
};

/// Window of 2 half_width + 1 threads and local height 2 half_height around
/// (x0, t0); x0 sqrt N must be an integer.
WindowResult window_intensity(const InterlacingDiagram& shape0, std::int64_t n, double x0, double t0, int reps,
                              std::uint64_t seed, Coord half_width = 5, double half_height = 5.0,
                              unsigned workers = 1);

double median(std::vector<double> v);

}  // namespace tableau
