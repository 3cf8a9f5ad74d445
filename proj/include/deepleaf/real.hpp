#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "deepleaf/types.hpp"

namespace deepleaf {

// Arbitrary-precision real with an explicit per-value mantissa size in bits.
// Thin RAII wrapper over mpfr_t; every operation rounds to nearest and the
// result carries the larger precision of its operands. Keeping the precision
// on the value (rather than in a global) makes independent runs at different
// precisions safe to execute concurrently.
class Real {
 public:
  static constexpr unsigned kDefaultBits = 128;

  explicit Real(unsigned bits = kDefaultBits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(double d, unsigned bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  Real(long n, unsigned bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, n, MPFR_RNDN);
  }
  Real(const BigRat& q, unsigned bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, q.backend().data(), MPFR_RNDN);
  }
  Real(const BigInt& n, unsigned bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, n.backend().data(), MPFR_RNDN);
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  std::string str(int significant_digits = 17) const {
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, significant_digits, v_, MPFR_RNDN);
    std::string digits(s);
    mpfr_free_str(s);
    bool neg = !digits.empty() && digits[0] == '-';
    std::string mant = neg ? digits.substr(1) : digits;
    if (mant.empty()) return "0";
    std::string out = (neg ? "-" : "");
    out += mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
  }

  // in-place arithmetic
  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(long n) { mpfr_mul_si(v_, v_, n, MPFR_RNDN); return *this; }
  Real& operator/=(long n) { mpfr_div_si(v_, v_, n, MPFR_RNDN); return *this; }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(combined(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(combined(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(combined(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(combined(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, long n) {
    Real r(a.precision());
    mpfr_mul_si(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long n) {
    Real r(a.precision());
    mpfr_div_si(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  friend Real abs(const Real& a) {
    Real r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& a) {
    Real r(a.precision());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real exp(const Real& a) {
    Real r(a.precision());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real expm1(const Real& a) {
    Real r(a.precision());
    mpfr_expm1(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real log(const Real& a) {
    Real r(a.precision());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  // 2^e at the given precision
  static Real pow2(long e, unsigned bits) {
    Real r(bits);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

 private:
  static unsigned combined(const Real& a, const Real& b) {
    return a.precision() > b.precision() ? a.precision() : b.precision();
  }
  mpfr_t v_;
};

}  // namespace deepleaf
