#pragma once

// Exact number types shared by every module, plus the error hierarchy.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symcap {

using Rational = mpq_class;
using Integer = mpz_class;
using i128 = __int128;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A region or shape that does not describe a valid toric domain.
class InvalidDomain : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured size or budget limit.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// A quantity cannot be represented exactly (e.g. an irrational weight).
class RepresentabilityError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Recursion exceeded its depth guard.
class NonTermination : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// num / den in lowest terms (gmpxx does not reduce on construction).
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p/q", "p", or a plain decimal such as "0.125" or "1e-6".
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// Canonical serialization: "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);
bool is_integer(const Rational& value);

/// Square root of a rational when it is itself rational.
std::optional<Rational> exact_sqrt(const Rational& value);
Integer isqrt(const Integer& value);

/// value^exponent for any signed exponent (value != 0 when exponent < 0).
Rational power(const Rational& value, long exponent);

bool fits_i128(const Integer& value);
/// Throws ResourceLimit when the value does not fit.
i128 to_i128(const Integer& value);
Integer from_i128(i128 value);
std::string to_string(i128 value);

double to_double(const Rational& value);
/// Natural logarithm of a positive rational, accurate to double precision
/// even when the rational is outside double range.
double ln(const Rational& value);

}  // namespace symcap
