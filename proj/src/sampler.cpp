#include "tableau/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tableau/errors.hpp"

namespace tableau {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<std::size_t> row_starts(const Partition& p) {
  std::vector<std::size_t> s(static_cast<std::size_t>(p.length()) + 1, 0);
  for (int i = 0; i < p.length(); ++i) s[static_cast<std::size_t>(i) + 1] = s[static_cast<std::size_t>(i)] + static_cast<std::size_t>(p.rows()[static_cast<std::size_t>(i)]);
  return s;
}

// Fenwick tree over current row lengths; find() maps a uniform cell index to
// its row in O(log l).
class Fenwick {
 public:
  explicit Fenwick(const std::vector<int>& values) : tree_(values.size() + 1, 0) {
    for (std::size_t i = 0; i < values.size(); ++i) add(i, values[i]);
    top_ = 1;
    while (top_ * 2 <= values.size()) top_ *= 2;
  }
  void add(std::size_t i, std::int64_t v) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += v;
  }
  // smallest index whose prefix sum exceeds k; k becomes the offset inside it
  std::size_t find(std::int64_t& k) const {
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step >>= 1)
      if (pos + step < tree_.size() && tree_[pos + step] <= k) {
        pos += step;
        k -= tree_[pos];
      }
    return pos;
  }

 private:
  std::vector<std::int64_t> tree_;
  std::size_t top_;
};

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t replicate) {
  std::uint64_t state = seed;
  std::uint64_t s1 = splitmix64(state);
  state ^= replicate * 0xd1b54a32d192ed03ULL;
  std::uint64_t s2 = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(s1), static_cast<std::uint32_t>(s1 >> 32),
                    static_cast<std::uint32_t>(s2), static_cast<std::uint32_t>(s2 >> 32),
                    static_cast<std::uint32_t>(replicate), static_cast<std::uint32_t>(replicate >> 32)};
  return Rng(seq);
}

StandardTableau::StandardTableau(Partition shape, std::vector<std::int64_t> entries)
    : shape_(std::move(shape)), row_start_(row_starts(shape_)), entries_(std::move(entries)) {
  if (static_cast<std::int64_t>(entries_.size()) != shape_.size())
    throw DomainError("tableau: entry count does not match the shape");
}

bool StandardTableau::valid() const {
  const auto n = size();
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (auto e : entries_) {
    if (e < 1 || e > n || seen[static_cast<std::size_t>(e)]) return false;
    seen[static_cast<std::size_t>(e)] = 1;
  }
  const auto& rows = shape_.rows();
  for (int i = 0; i < shape_.length(); ++i)
    for (int j = 0; j < rows[static_cast<std::size_t>(i)]; ++j) {
      if (j > 0 && entry(i, j - 1) >= entry(i, j)) return false;
      if (i > 0 && entry(i - 1, j) >= entry(i, j)) return false;
    }
  return true;
}

PoissonizedTableau::PoissonizedTableau(Partition shape, std::vector<double> values)
    : shape_(std::move(shape)), row_start_(row_starts(shape_)), values_(std::move(values)) {
  if (static_cast<std::int64_t>(values_.size()) != shape_.size())
    throw DomainError("tableau: value count does not match the shape");
}

bool PoissonizedTableau::valid() const {
  std::vector<double> sorted(values_.begin(), values_.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (!sorted.empty() && (sorted.front() < 0.0 || sorted.back() > 1.0)) return false;
  const auto& rows = shape_.rows();
  for (int i = 0; i < shape_.length(); ++i)
    for (int j = 0; j < rows[static_cast<std::size_t>(i)]; ++j) {
      if (j > 0 && value(i, j - 1) >= value(i, j)) return false;
      if (i > 0 && value(i - 1, j) >= value(i, j)) return false;
    }
  return true;
}

StandardTableau hook_walk_sample(const Partition& p, Rng& rng) {
  std::vector<int> rows = p.rows();
  std::vector<int> cols = p.columns();
  const auto starts = row_starts(p);
  std::vector<std::int64_t> entries(static_cast<std::size_t>(p.size()), 0);
  Fenwick fw(rows);
  for (std::int64_t remaining = p.size(); remaining > 0; --remaining) {
    std::uniform_int_distribution<std::int64_t> cell(0, remaining - 1);
    std::int64_t k = cell(rng);
    std::size_t i = fw.find(k);
    int j = static_cast<int>(k);
    for (;;) {
      const int arm = rows[i] - 1 - j;
      const int leg = cols[static_cast<std::size_t>(j)] - 1 - static_cast<int>(i);
      if (arm == 0 && leg == 0) break;
      std::uniform_int_distribution<int> step(1, arm + leg);
      const int s = step(rng);
      if (s <= arm) j += s;
      else i += static_cast<std::size_t>(s - arm);
    }
    entries[starts[i] + static_cast<std::size_t>(j)] = remaining;
    --rows[i];
    --cols[static_cast<std::size_t>(j)];
    fw.add(i, -1);
  }
  return StandardTableau(p, std::move(entries));
}

PoissonizedTableau poissonize(const StandardTableau& t, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> order(static_cast<std::size_t>(t.size()));
  for (auto& v : order) v = u(rng);
  std::sort(order.begin(), order.end());
  std::vector<double> values(order.size());
  const auto flat = t.flat();
  for (std::size_t c = 0; c < flat.size(); ++c) values[c] = order[static_cast<std::size_t>(flat[c] - 1)];
  return PoissonizedTableau(t.shape(), std::move(values));
}

BeadConfiguration::BeadConfiguration(Coord first_thread, std::vector<std::size_t> offsets, std::vector<double> heights)
    : first_(first_thread), offsets_(std::move(offsets)), heights_(std::move(heights)) {
  if (offsets_.empty() || offsets_.back() != heights_.size())
    throw DomainError("bead configuration: offsets do not cover the heights");
}

std::span<const double> BeadConfiguration::thread(Coord x) const {
  if (x < first_ || x > last_thread()) return {};
  const auto k = static_cast<std::size_t>(x - first_);
  return std::span<const double>(heights_).subspan(offsets_[k], offsets_[k + 1] - offsets_[k]);
}

std::int64_t BeadConfiguration::count(Coord x, double t) const {
  auto h = thread(x);
  return std::upper_bound(h.begin(), h.end(), t) - h.begin();
}

bool BeadConfiguration::interlacing() const {
  for (Coord x = first_; x <= last_thread(); ++x) {
    auto h = thread(x);
    if (!std::is_sorted(h.begin(), h.end())) return false;
    for (Coord y : {x - 1, x + 1}) {
      auto g = thread(y);
      for (std::size_t k = 0; k + 1 < h.size(); ++k) {
        auto lo = std::upper_bound(g.begin(), g.end(), h[k]);
        auto hi = std::lower_bound(g.begin(), g.end(), h[k + 1]);
        if (hi - lo != 1) return false;
      }
    }
  }
  return true;
}

BeadConfiguration beads_from_tableau(const PoissonizedTableau& t) {
  const auto& rows = t.shape().rows();
  if (rows.empty()) return {};
  const Coord first = 1 - t.shape().length();
  const Coord last = rows.front() - 1;
  std::vector<std::size_t> offsets(static_cast<std::size_t>(last - first) + 2, 0);
  for (int i = 0; i < t.shape().length(); ++i)
    for (int j = 0; j < rows[static_cast<std::size_t>(i)]; ++j) ++offsets[static_cast<std::size_t>(j - i - first) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<double> heights(offsets.back());
  auto fill = offsets;
  // rows in increasing order visit each diagonal bottom-up
  for (int i = 0; i < t.shape().length(); ++i)
    for (int j = 0; j < rows[static_cast<std::size_t>(i)]; ++j)
      heights[fill[static_cast<std::size_t>(j - i - first)]++] = t.value(i, j);
  BeadConfiguration b(first, std::move(offsets), std::move(heights));
  if (!b.interlacing()) throw NumericalError("bead configuration violates interlacing");
  return b;
}

std::int64_t empirical_height(const BeadConfiguration& b, Coord x, double t) { return b.count(x, t); }

std::vector<std::vector<double>> rescaled_height_profile(const InterlacingDiagram& shape0, std::int64_t n,
                                                         const BeadConfiguration& sample,
                                                         std::span<const double> x_grid,
                                                         std::span<const double> t_grid) {
  const double N = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(size(shape0));
  const double rootN = std::sqrt(N);
  const double eta = 1.0 / std::sqrt(static_cast<double>(size(shape0)));
  const double lo = eta * static_cast<double>(shape0.a_min()), hi = eta * static_cast<double>(shape0.a_max());
  std::vector<std::vector<double>> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    if (x < lo - 1e-12 || x > hi + 1e-12) throw DomainError("rescaled profile: x outside [eta a_0, eta a_m]");
    // x sqrt N is an integer at the grid ends; guard against rounding just below it
    const Coord thread = static_cast<Coord>(std::floor(x * rootN + 1e-9));
    std::vector<double> row;
    row.reserve(t_grid.size());
    for (double t : t_grid) row.push_back(static_cast<double>(sample.count(thread, t)) / rootN);
    out.push_back(std::move(row));
  }
  return out;
}

BeadConfiguration window_extract(const BeadConfiguration& b, Coord x0_threads, double t0, double N,
                                 Coord half_width, double half_height) {
  const double rootN = std::sqrt(N);
  if (t0 - half_height / rootN < 0.0 || t0 + half_height / rootN > 1.0)
    throw DomainError("window extends outside the strip 0 <= t <= 1");
  std::vector<std::size_t> offsets{0};
  std::vector<double> heights;
  for (Coord dx = -half_width; dx <= half_width; ++dx) {
    auto h = b.thread(x0_threads + dx);
    auto lo = std::lower_bound(h.begin(), h.end(), t0 - half_height / rootN);
    auto hi = std::upper_bound(h.begin(), h.end(), t0 + half_height / rootN);
    for (auto it = lo; it != hi; ++it) {
      const double local = (*it - t0) * rootN;
      if (std::abs(local) <= half_height) heights.push_back(local);
    }
    offsets.push_back(heights.size());
  }
  return BeadConfiguration(-half_width, std::move(offsets), std::move(heights));
}

BeadConfiguration sample_beads(const Partition& p, Rng& rng) {
  auto syt = hook_walk_sample(p, rng);
  return beads_from_tableau(poissonize(syt, rng));
}

}  // namespace tableau
