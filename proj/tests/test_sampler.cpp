#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

#include "doctest.h"
#include "tableau/errors.hpp"
#include "tableau/sampler.hpp"

using namespace tableau;

namespace {

// Every SYT of shape p, built by placing n, n-1, ... into removable corners.
void enumerate(std::vector<int>& rows, std::int64_t next, std::vector<std::vector<std::int64_t>>& grid,
               std::vector<std::vector<std::vector<std::int64_t>>>& out) {
  if (next == 0) {
    out.push_back(grid);
    return;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] == 0) continue;
    if (i + 1 < rows.size() && rows[i + 1] == rows[i]) continue;
    const int j = rows[i] - 1;
    grid[i][static_cast<std::size_t>(j)] = next;
    --rows[i];
    enumerate(rows, next - 1, grid, out);
    ++rows[i];
  }
}

std::vector<std::vector<std::vector<std::int64_t>>> all_syt(const Partition& p) {
  std::vector<int> rows = p.rows();
  std::vector<std::vector<std::int64_t>> grid;
  for (int r : rows) grid.emplace_back(static_cast<std::size_t>(r), 0);
  std::vector<std::vector<std::vector<std::int64_t>>> out;
  enumerate(rows, p.size(), grid, out);
  return out;
}

std::vector<std::int64_t> flatten(const std::vector<std::vector<std::int64_t>>& g) {
  std::vector<std::int64_t> f;
  for (const auto& r : g) f.insert(f.end(), r.begin(), r.end());
  return f;
}

void partitions(int n, int cap, std::vector<int>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int k = std::min(n, cap); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::int64_t hook_count(const Partition& p) {
  // n! / prod hooks, exact for n <= 6
  auto cols = p.columns();
  double prod = 1;
  for (int i = 0; i < p.length(); ++i)
    for (int j = 0; j < p.rows()[static_cast<std::size_t>(i)]; ++j)
      prod *= (p.rows()[static_cast<std::size_t>(i)] - j - 1) + (cols[static_cast<std::size_t>(j)] - i - 1) + 1;
  double fact = 1;
  for (int k = 2; k <= p.size(); ++k) fact *= k;
  return std::llround(fact / prod);
}

}  // namespace

TEST_CASE("a single row has one tableau") {
  auto rng = make_stream(1, 0);
  auto t = hook_walk_sample(Partition({5}), rng);
  for (int j = 0; j < 5; ++j) CHECK(t.entry(0, j) == j + 1);
  auto c = hook_walk_sample(Partition({1, 1, 1}), rng);
  for (int i = 0; i < 3; ++i) CHECK(c.entry(i, 0) == i + 1);
}

TEST_CASE("two-tableau shapes are sampled with frequency 1/2") {
  for (auto p : {Partition({2, 1}), Partition({2, 2})}) {
    auto rng = make_stream(2024, static_cast<std::uint64_t>(p.size()));
    const int samples = 100000;
    auto syts = all_syt(p);
    REQUIRE(syts.size() == 2);
    const auto first = flatten(syts[0]);
    int hits = 0;
    for (int k = 0; k < samples; ++k) {
      auto t = hook_walk_sample(p, rng);
      auto f = t.flat();
      if (std::equal(f.begin(), f.end(), first.begin())) ++hits;
    }
    const double sigma = std::sqrt(0.25 / samples);
    CHECK(std::abs(hits / double(samples) - 0.5) < 3 * sigma);
  }
}

TEST_CASE("property: hook walk matches the hook length formula on shapes up to size 6") {
  int shapes = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<Partition> ps;
    std::vector<int> cur;
    partitions(n, n, cur, ps);
    for (const auto& p : ps) {
      ++shapes;
      auto syts = all_syt(p);
      REQUIRE(static_cast<std::int64_t>(syts.size()) == hook_count(p));
      if (syts.size() < 2) continue;
      std::map<std::vector<std::int64_t>, std::size_t> index;
      for (std::size_t k = 0; k < syts.size(); ++k) index[flatten(syts[k])] = k;
      std::vector<double> counts(syts.size(), 0);
      auto rng = make_stream(77, static_cast<std::uint64_t>(shapes));
      const int samples = 100000;
      for (int s = 0; s < samples; ++s) {
        auto t = hook_walk_sample(p, rng);
        auto f = t.flat();
        auto it = index.find(std::vector<std::int64_t>(f.begin(), f.end()));
        REQUIRE(it != index.end());
        counts[it->second] += 1;
      }
      const double expected = double(samples) / double(syts.size());
      double chi2 = 0;
      for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
      boost::math::chi_squared dist(static_cast<double>(syts.size() - 1));
      CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 0.001);
    }
  }
  CHECK(shapes == 29);
}

TEST_CASE("poissonization") {
  auto rng = make_stream(5, 0);
  double mean = 0;
  for (int k = 0; k < 20000; ++k) {
    auto t = poissonize(hook_walk_sample(Partition({1}), rng), rng);
    mean += t.value(0, 0);
  }
  CHECK(mean / 20000 == doctest::Approx(0.5).epsilon(0.02));

  // the corner (0,0) holds the minimum, distributed Beta(1, n)
  const Partition p({3, 2, 2});
  const double n = 7;
  std::vector<double> mins;
  for (int k = 0; k < 5000; ++k) {
    auto syt = hook_walk_sample(p, rng);
    auto t = poissonize(syt, rng);
    REQUIRE(t.valid());
    // relative order is that of the input tableau
    for (std::size_t a = 0; a < syt.flat().size(); ++a)
      for (std::size_t b = 0; b < syt.flat().size(); ++b)
        REQUIRE((syt.flat()[a] < syt.flat()[b]) == (t.flat()[a] < t.flat()[b]));
    mins.push_back(t.value(0, 0));
  }
  std::sort(mins.begin(), mins.end());
  double D = 0;
  const double m = static_cast<double>(mins.size());
  for (std::size_t k = 0; k < mins.size(); ++k) {
    const double F = 1 - std::pow(1 - mins[k], n);
    D = std::max({D, std::abs(F - k / m), std::abs(F - (k + 1) / m)});
  }
  // asymptotic Kolmogorov critical value at level 0.001
  CHECK(D * std::sqrt(m) < 1.95);
}

TEST_CASE("bead configurations") {
  auto rng = make_stream(9, 0);
  auto one = sample_beads(Partition({1}), rng);
  CHECK(one.total() == 1);
  CHECK(one.thread(0).size() == 1);

  const Partition p({5, 3, 1, 1});
  const auto d = interlacing_from_partition(p);
  auto b = sample_beads(p, rng);
  CHECK(b.first_thread() == -3);
  CHECK(b.last_thread() == 4);
  const std::vector<std::size_t> expected{1, 1, 1, 2, 2, 1, 1, 1};
  for (Coord x = -3; x <= 4; ++x) {
    CHECK(b.thread(x).size() == expected[static_cast<std::size_t>(x + 3)]);
    CHECK(static_cast<std::int64_t>(b.thread(x).size()) == column_count(d, x));
  }
}

TEST_CASE("property: sampled tableaux are monotone and beads interlace") {
  const std::vector<Partition> shapes{Partition({1}),       Partition({2, 1}),    Partition({3, 3}),
                                      Partition({5, 3, 1, 1}), Partition({4, 4, 2}), Partition({6, 1, 1, 1}),
                                      Partition({3, 3, 3}),    Partition({7, 5, 2}), Partition({2, 2, 2, 2, 1}),
                                      partition_from_interlacing(InterlacingDiagram({-5, -1, 5}, {-4, 3}))};
  std::uint64_t rep = 0;
  for (const auto& p : shapes) {
    const auto d = interlacing_from_partition(p);
    for (int k = 0; k < 1000; ++k) {
      auto rng = make_stream(31, rep++);
      auto syt = hook_walk_sample(p, rng);
      REQUIRE(syt.valid());
      auto t = poissonize(syt, rng);
      REQUIRE(t.valid());
      auto b = beads_from_tableau(t);
      REQUIRE(b.interlacing());
      for (Coord x = d.a_min(); x <= d.a_max(); ++x) {
        REQUIRE(empirical_height(b, x, 0.0) == 0);
        REQUIRE(empirical_height(b, x, 1.0) == column_count(d, x));
      }
      // T(x, y) < t  iff  H(x, t) > (y - |x|)/2, Russian coordinates
      for (int i = 0; i < p.length(); ++i)
        for (int j = 0; j < p.rows()[static_cast<std::size_t>(i)]; ++j) {
          const Coord x = j - i;
          const double y = i + j + 1;
          const double v = t.value(i, j);
          for (double tt : {v - 1e-12, v + 1e-12, std::nextafter(v, 2.0), 0.5}) {
            const bool lhs = v < tt;
            const bool rhs = static_cast<double>(empirical_height(b, x, tt)) > 0.5 * (y - std::abs(double(x)));
            REQUIRE(lhs == rhs);
          }
        }
    }
  }
}

TEST_CASE("rescaled profile at t = 1 is the snapped boundary") {
  const InterlacingDiagram heart({-5, -1, 5}, {-4, 3});
  const std::int64_t n = 4;
  auto lam = partition_from_interlacing(dilate(heart, n));
  auto rng = make_stream(3, 0);
  auto b = sample_beads(lam, rng);
  const double N = 16.0 * 13.0;
  NormalizedShape s(heart);
  std::vector<double> xs;
  for (int k = 0; k <= 40; ++k) xs.push_back(s.left() + (s.right() - s.left()) * k / 40.0);
  const std::vector<double> ts{1.0, 0.0};
  auto grid = rescaled_height_profile(heart, n, b, xs, ts);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double thread = std::floor(xs[k] * std::sqrt(N) + 1e-9);
    const double xs_snap = thread / std::sqrt(N);
    CHECK(grid[k][0] == doctest::Approx(0.5 * (profile_omega(s, xs_snap) - std::abs(xs_snap))).epsilon(1e-12));
    CHECK(grid[k][1] == 0.0);
  }
  const std::vector<double> bad{s.right() + 0.1};
  CHECK_THROWS_AS(rescaled_height_profile(heart, n, b, bad, ts), DomainError);
}

TEST_CASE("window recentring") {
  std::vector<std::size_t> off{0, 1, 3, 4};
  std::vector<double> h{0.3, 0.45, 0.52, 0.9};
  BeadConfiguration b(-1, off, h);
  const double N = 100;
  auto w = window_extract(b, 0, 0.5, N, 1, 1.0);
  CHECK(w.first_thread() == -1);
  CHECK(w.thread(-1).empty());
  REQUIRE(w.thread(0).size() == 2);
  CHECK(w.thread(0)[0] == doctest::Approx(-0.5));
  CHECK(w.thread(0)[1] == doctest::Approx(0.2));
  CHECK(w.thread(1).empty());
  CHECK_THROWS_AS(window_extract(b, 0, 0.05, N, 1, 1.0), DomainError);
}

TEST_CASE("sampling is reproducible") {
  const Partition p({6, 4, 4, 1});
  auto r1 = make_stream(42, 7), r2 = make_stream(42, 7), r3 = make_stream(42, 8);
  auto t1 = hook_walk_sample(p, r1), t2 = hook_walk_sample(p, r2);
  CHECK(t1 == t2);
  CHECK(poissonize(t1, r1).flat()[3] == poissonize(t2, r2).flat()[3]);
  bool differs = false;
  for (int k = 0; k < 10 && !differs; ++k) differs = !(hook_walk_sample(p, r3) == t1);
  CHECK(differs);
}
