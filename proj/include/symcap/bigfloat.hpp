#pragma once

#include <mpfr.h>

#include <string>

#include "symcap/rational.hpp"

namespace symcap {

inline constexpr long kDefaultPrecisionBits = 200;

/// Owning wrapper around an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(long precision_bits = kDefaultPrecisionBits);
  BigFloat(const Rational& value, long precision_bits, mpfr_rnd_t rounding = MPFR_RNDN);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

  double to_double() const;
  /// Exact (dyadic) rational value of the float.
  Rational to_rational() const;
  std::string to_string(int significant_digits = 40) const;

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_); }

 private:
  mpfr_t value_;
};

BigFloat exp_of(const Rational& y, long precision_bits, mpfr_rnd_t rounding = MPFR_RNDN);
BigFloat ln_of(const Rational& x, long precision_bits, mpfr_rnd_t rounding = MPFR_RNDN);

/// Size of one unit in the last place for |value| at the given precision.
BigFloat ulp_of(const BigFloat& value);

}  // namespace symcap
