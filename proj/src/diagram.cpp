#include "tableau/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "tableau/errors.hpp"

namespace tableau {

Partition::Partition(std::vector<int> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] < 1) throw DomainError("partition rows must be positive");
    if (i > 0 && rows_[i] > rows_[i - 1]) throw DomainError("partition rows must be non-increasing");
  }
}

std::int64_t Partition::size() const {
  return std::accumulate(rows_.begin(), rows_.end(), std::int64_t{0});
}

std::vector<int> Partition::columns() const {
  std::vector<int> cols(static_cast<std::size_t>(first_row()), 0);
  for (int r : rows_)
    for (int j = 0; j < r; ++j) ++cols[static_cast<std::size_t>(j)];
  return cols;
}

InterlacingDiagram::InterlacingDiagram(std::vector<Coord> a, std::vector<Coord> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (b_.empty()) throw DomainError("interlacing: need m >= 1 maxima");
  if (a_.size() != b_.size() + 1) throw DomainError("interlacing: need exactly m+1 minima for m maxima");
  for (std::size_t i = 0; i < b_.size(); ++i) {
    if (!(a_[i] < b_[i] && b_[i] < a_[i + 1]))
      throw DomainError("interlacing: strict order a_0 < b_1 < a_1 < ... < a_m violated at index " +
                        std::to_string(i + 1));
  }
  Coord sa = std::accumulate(a_.begin(), a_.end(), Coord{0});
  Coord sb = std::accumulate(b_.begin(), b_.end(), Coord{0});
  if (sa != sb) throw DomainError("interlacing: sum(a) must equal sum(b)");
}

NormalizedShape::NormalizedShape(InterlacingDiagram base)
    : base_(std::move(base)), eta_(1.0 / std::sqrt(static_cast<double>(size(base_)))) {
  for (Coord v : base_.a()) sa_.push_back(eta_ * static_cast<double>(v));
  for (Coord v : base_.b()) sb_.push_back(eta_ * static_cast<double>(v));
}

InterlacingDiagram interlacing_from_partition(const Partition& p) {
  if (p.length() == 0) throw DomainError("empty partition has no interlacing coordinates");
  const auto& r = p.rows();
  const int l = p.length();
  std::vector<Coord> a, b;
  // Walk the rows bottom-up so contents come out increasing.
  a.push_back(-l);  // addable cell (l+1, 1)
  for (int i = l; i >= 1; --i) {
    int li = r[static_cast<std::size_t>(i - 1)];
    int below = i < l ? r[static_cast<std::size_t>(i)] : 0;
    if (li > below) b.push_back(li - i);  // removable (i, λ_i)
    int above = i > 1 ? r[static_cast<std::size_t>(i - 2)] : std::numeric_limits<int>::max();
    if (above > li) a.push_back(li + 1 - i);  // addable (i, λ_i + 1)
  }
  return InterlacingDiagram(std::move(a), std::move(b));
}

Partition partition_from_interlacing(const InterlacingDiagram& d) {
  // Unit steps of the profile from a_0 to a_m: up (slope +1) then down.
  std::vector<bool> up;
  const auto& a = d.a();
  const auto& b = d.b();
  for (int i = 0; i < d.m(); ++i) {
    up.insert(up.end(), static_cast<std::size_t>(b[i] - a[i]), true);
    up.insert(up.end(), static_cast<std::size_t>(a[i + 1] - b[i]), false);
  }
  std::vector<int> rows;
  int ups = 0;
  for (bool u : up) {
    if (u) ++ups;
    else rows.push_back(ups);
  }
  std::reverse(rows.begin(), rows.end());
  return Partition(std::move(rows));
}

std::int64_t size(const InterlacingDiagram& d) {
  std::int64_t s = 0;
  for (Coord v : d.a()) s += v * v;
  for (Coord v : d.b()) s -= v * v;
  return s / 2;
}

InterlacingDiagram dilate(const InterlacingDiagram& d, std::int64_t n) {
  if (n < 1) throw DomainError("dilation factor must be >= 1");
  auto a = d.a(), b = d.b();
  for (auto& v : a) v *= n;
  for (auto& v : b) v *= n;
  return InterlacingDiagram(std::move(a), std::move(b));
}

double profile_omega(const InterlacingDiagram& d, double x) {
  double w = 0;
  for (Coord v : d.a()) w += std::abs(x - static_cast<double>(v));
  for (Coord v : d.b()) w -= std::abs(x - static_cast<double>(v));
  return w;
}

double profile_omega(const NormalizedShape& shape, double x) {
  double w = 0;
  for (double v : shape.scaled_a()) w += std::abs(x - v);
  for (double v : shape.scaled_b()) w -= std::abs(x - v);
  return w;
}

bool in_domain(const NormalizedShape& shape, double x, double y) {
  return std::abs(x) < y && y < profile_omega(shape, x);
}

std::int64_t column_count(const InterlacingDiagram& d, Coord x) {
  std::int64_t w = 0;
  for (Coord v : d.a()) w += std::llabs(x - v);
  for (Coord v : d.b()) w -= std::llabs(x - v);
  return (w - std::llabs(x)) / 2;
}

ClearedDiagram clear_denominators(std::span<const Rational> a, std::span<const Rational> b) {
  BigInt mult = 1;
  auto absorb = [&](const Rational& q) {
    BigInt den = boost::multiprecision::denominator(q);
    mult = mult / boost::multiprecision::gcd(mult, den) * den;
  };
  for (const auto& q : a) absorb(q);
  for (const auto& q : b) absorb(q);
  auto scale = [&](std::span<const Rational> in) {
    std::vector<Coord> out;
    for (const auto& q : in) {
      BigInt v = boost::multiprecision::numerator(q) * (mult / boost::multiprecision::denominator(q));
      if (v > std::numeric_limits<Coord>::max() / 4 || v < std::numeric_limits<Coord>::min() / 4)
        throw DomainError("interlacing coordinate too large after clearing denominators");
      out.push_back(static_cast<Coord>(v));
    }
    return out;
  };
  return {InterlacingDiagram(scale(a), scale(b)), mult};
}

namespace {

Rational json_rational(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw DomainError("shape json: coordinates must be numbers or rational strings");
}

}  // namespace

ClearedDiagram diagram_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("shape json: parse error: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("shape json: expected an object");
  if (j.contains("rows")) {
    if (!j["rows"].is_array()) throw DomainError("shape json: 'rows' must be an array");
    std::vector<int> rows;
    for (const auto& v : j["rows"]) {
      if (!v.is_number_integer()) throw DomainError("shape json: rows must be integers");
      rows.push_back(v.get<int>());
    }
    return {interlacing_from_partition(Partition(std::move(rows))), BigInt(1)};
  }
  if (j.contains("a") && j.contains("b")) {
    if (!j["a"].is_array() || !j["b"].is_array()) throw DomainError("shape json: 'a' and 'b' must be arrays");
    std::vector<Rational> a, b;
    for (const auto& v : j["a"]) a.push_back(json_rational(v));
    for (const auto& v : j["b"]) b.push_back(json_rational(v));
    return clear_denominators(a, b);
  }
  throw DomainError("shape json: need either 'rows' or both 'a' and 'b'");
}

std::string describe(const InterlacingDiagram& d) {
  std::ostringstream os;
  auto list = [&](const std::vector<Coord>& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
  };
  os << "a=";
  list(d.a());
  os << " b=";
  list(d.b());
  return os.str();
}

}  // namespace tableau
