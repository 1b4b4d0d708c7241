#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace tableau {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p/q" or a terminating decimal such as "0.25".
/// Throws DomainError on anything else.
Rational parse_rational(std::string_view text);

/// Exact conversion of a double that is a rational with denominator at most
/// `max_denominator`; throws DomainError otherwise (e.g. 2 - sqrt(2)).
Rational rational_from_double(double value, long long max_denominator = 1000000);

std::string to_string(const Rational& q);

}  // namespace tableau
