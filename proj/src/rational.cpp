#include "symcap/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>

namespace symcap {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer ten_to(long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

// Decimal with optional sign, fraction and exponent, parsed exactly.
Rational parse_decimal(std::string_view s, std::string_view original) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw FormatError("malformed exponent in number '" + std::string(original) + "'");
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw FormatError("malformed number '" + std::string(original) + "'");
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw FormatError("malformed number '" + std::string(original) + "'");
    digits = std::string(s);
  }
  Rational r{Integer(digits, 10)};
  if (exponent > 0) r *= ten_to(exponent);
  if (exponent < 0) r /= ten_to(-exponent);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw FormatError("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    bool negative = false;
    if (!num.empty() && num.front() == '-') {
      negative = true;
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den))
      throw FormatError("malformed rational '" + std::string(text) + "'");
    Integer d(std::string{den}, 10);
    if (d == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
    Rational r(Integer(std::string{num}, 10), d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  return parse_decimal(s, text);
}

Integer parse_integer(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw FormatError("malformed integer '" + std::string(text) + "'");
  Integer v(std::string{s}, 10);
  return negative ? Integer(-v) : v;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

Integer floor_of(const Rational& value) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& value) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (value < 0) return std::nullopt;
  if (!mpz_perfect_square_p(value.get_num_mpz_t()) || !mpz_perfect_square_p(value.get_den_mpz_t()))
    return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), value.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), value.get_den_mpz_t());
  return Rational(n, d);
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer isqrt(const Integer& value) {
  if (value < 0) throw std::domain_error("isqrt of negative");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), value.get_mpz_t());
  return r;
}

Rational power(const Rational& value, long exponent) {
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), value.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), value.get_den_mpz_t(), e);
  Rational r = exponent < 0 ? Rational(d, n) : Rational(n, d);
  r.canonicalize();
  return r;
}

bool fits_i128(const Integer& value) { return mpz_sizeinbase(value.get_mpz_t(), 2) <= 126; }

i128 to_i128(const Integer& value) {
  if (!fits_i128(value)) throw ResourceLimit("integer " + value.get_str() + " exceeds 126 bits");
  Integer mag = abs(value);
  Integer hi = mag >> 64;
  Integer lo = mag - (hi << 64);
  unsigned __int128 u = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                        static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
  i128 r = static_cast<i128>(u);
  return value < 0 ? -r : r;
}

Integer from_i128(i128 value) {
  bool negative = value < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-value) : static_cast<unsigned __int128>(value);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  Integer r = (hi << 64) + lo;
  return negative ? Integer(-r) : r;
}

std::string to_string(i128 value) { return from_i128(value).get_str(); }

double to_double(const Rational& value) {
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_set_q(t, value.get_mpq_t(), MPFR_RNDN);
  double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

double ln(const Rational& value) {
  if (value <= 0) throw std::domain_error("logarithm of non-positive rational");
  mpfr_t t;
  mpfr_init2(t, 128);
  mpfr_set_q(t, value.get_mpq_t(), MPFR_RNDN);
  mpfr_log(t, t, MPFR_RNDN);
  double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

}  // namespace symcap
