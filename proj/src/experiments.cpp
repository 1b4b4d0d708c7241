#include "tableau/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "tableau/errors.hpp"
#include "tableau/limit_surface.hpp"
#include "tableau/sampler.hpp"

namespace tableau {

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Partition dilated_partition(const InterlacingDiagram& shape0, std::int64_t n) {
  if (n < 1) throw DomainError("dilation factor must be >= 1");
  const std::int64_t cells = n * n * size(shape0);
  if (cells > kMaxCells)
    throw DomainError("dilated shape has " + std::to_string(cells) + " cells, above the cap of " +
                      std::to_string(kMaxCells));
  return partition_from_interlacing(dilate(shape0, n));
}

LimitGrid limit_grid(const InterlacingDiagram& shape0, int nx, int nt) {
  if (nx < 2 || nt < 2) throw DomainError("limit grid needs at least two points per axis");
  const NormalizedShape shape(shape0);
  LimitGrid g;
  for (int i = 0; i < nx; ++i) g.xs.push_back(shape.left() + (shape.right() - shape.left()) * i / (nx - 1));
  // exact endpoints, so floor(x sqrt N) lands on a_0 n and a_m n
  g.xs.front() = shape.left();
  g.xs.back() = shape.right();
  for (int j = 0; j < nt; ++j) g.ts.push_back(static_cast<double>(j) / (nt - 1));
  for (double x : g.xs) {
    VerticalSection sec(shape, x);
    std::vector<double> row;
    for (double t : g.ts) row.push_back(sec.height(t));
    g.height.push_back(std::move(row));
  }
  return g;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

CompareResult compare_limit_shape(const InterlacingDiagram& shape0, const LimitGrid& grid, std::int64_t n, int reps,
                                  std::uint64_t seed, unsigned workers) {
  const Partition lam = dilated_partition(shape0, n);
  CompareResult out;
  out.n = n;
  out.errors.assign(static_cast<std::size_t>(reps), 0.0);
  parallel_for(static_cast<std::size_t>(reps), workers, [&](std::size_t r) {
    auto rng = make_stream(seed, r);
    const auto beads = sample_beads(lam, rng);
    const auto emp = rescaled_height_profile(shape0, n, beads, grid.xs, grid.ts);
    double sup = 0;
    for (std::size_t i = 0; i < grid.xs.size(); ++i)
      for (std::size_t j = 0; j < grid.ts.size(); ++j) sup = std::max(sup, std::abs(emp[i][j] - grid.height[i][j]));
    out.errors[r] = sup;
  });
  out.median = median(out.errors);
  return out;
}

WindowResult window_intensity(const InterlacingDiagram& shape0, std::int64_t n, double x0, double t0, int reps,
                              std::uint64_t seed, Coord half_width, double half_height, unsigned workers) {
  const Partition lam = dilated_partition(shape0, n);
  const double N = static_cast<double>(n * n * size(shape0));
  const double scaled = x0 * std::sqrt(N);
  if (std::abs(scaled - std::round(scaled)) > 1e-9) throw DomainError("window: x0 sqrt N must be an integer");
  WindowResult out;
  out.n = n;
  out.x0_threads = static_cast<Coord>(std::llround(scaled));
  std::vector<double> counts(static_cast<std::size_t>(reps), 0.0);
  parallel_for(static_cast<std::size_t>(reps), workers, [&](std::size_t r) {
    auto rng = make_stream(seed, r);
    const auto beads = sample_beads(lam, rng);
    counts[r] = static_cast<double>(window_extract(beads, out.x0_threads, t0, N, half_width, half_height).total());
  });
  double total = 0;
  for (double c : counts) total += c;
  out.mean_count = total / reps;
  out.intensity = out.mean_count / (static_cast<double>(2 * half_width + 1) * 2 * half_height);
  return out;
}

}  // namespace tableau
