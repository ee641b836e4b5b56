#include "symcap/bigfloat.hpp"

#include <cstdlib>
#include <memory>

namespace symcap {

BigFloat::BigFloat(long precision_bits) {
  mpfr_init2(value_, precision_bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const Rational& value, long precision_bits, mpfr_rnd_t rounding) {
  mpfr_init2(value_, precision_bits);
  mpfr_set_q(value_, value.get_mpq_t(), rounding);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

double BigFloat::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

Rational BigFloat::to_rational() const {
  if (!mpfr_number_p(value_)) throw RepresentabilityError("non-finite float has no rational value");
  Rational r;
  mpfr_get_q(r.get_mpq_t(), value_);
  return r;
}

std::string BigFloat::to_string(int significant_digits) const {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", significant_digits, value_);
  std::unique_ptr<char, void (*)(char*)> owned(raw, [](char* p) { mpfr_free_str(p); });
  return std::string(owned.get());
}

BigFloat exp_of(const Rational& y, long precision_bits, mpfr_rnd_t rounding) {
  // Convert with extra guard bits, then round once in the requested direction.
  BigFloat arg(y, precision_bits + 64, rounding);
  BigFloat out(precision_bits);
  mpfr_exp(out.get(), arg.get(), rounding);
  return out;
}

BigFloat ln_of(const Rational& x, long precision_bits, mpfr_rnd_t rounding) {
  if (x <= 0) throw std::domain_error("logarithm of non-positive rational");
  BigFloat arg(x, precision_bits + 64, rounding);
  BigFloat out(precision_bits);
  mpfr_log(out.get(), arg.get(), rounding);
  return out;
}

BigFloat ulp_of(const BigFloat& value) {
  BigFloat out(value.precision());
  if (mpfr_zero_p(value.get())) {
    mpfr_set_ui_2exp(out.get(), 1, -value.precision(), MPFR_RNDN);
    return out;
  }
  mpfr_exp_t e = mpfr_get_exp(value.get());
  mpfr_set_ui_2exp(out.get(), 1, e - value.precision(), MPFR_RNDN);
  return out;
}

}  // namespace symcap
