#include "tableau/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "tableau/errors.hpp"

namespace tableau {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt pow10(std::size_t k) {
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw DomainError("not a rational number: '" + std::string(text) + "'");
    BigInt d{std::string(den)};
    if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    q = Rational(BigInt(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw DomainError("not a rational number: '" + std::string(text) + "'");
    BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
    BigInt frac = fp.empty() ? BigInt(0) : BigInt(std::string(fp));
    BigInt scale = pow10(fp.size());
    q = Rational(whole * scale + frac, scale);
  } else {
    if (!all_digits(s)) throw DomainError("not a rational number: '" + std::string(text) + "'");
    q = Rational(BigInt(std::string(s)));
  }
  return negative ? Rational(-q) : q;
}

Rational rational_from_double(double value, long long max_denominator) {
  if (!std::isfinite(value)) throw DomainError("non-finite value is not rational");
  // Continued-fraction convergents; accept the first one that reproduces the
  // double exactly.
  double x = value;
  BigInt h_prev = 1, h = static_cast<long long>(std::floor(x));
  BigInt k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    Rational cand(h, k);
    if (static_cast<double>(cand) == value) return cand;
    if (frac == 0.0) break;
    x = 1.0 / frac;
    double fl = std::floor(x);
    frac = x - fl;
    BigInt an = static_cast<long long>(fl);
    BigInt h_next = an * h + h_prev;
    BigInt k_next = an * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h; h = h_next;
    k_prev = k; k = k_next;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "value " << value << " is not a rational with denominator <= " << max_denominator;
  throw DomainError(msg.str());
}

std::string to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace tableau
