#include "rosen/real.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rosen {

Precision::Precision(long b) : bits(b) {
  if (b < kMinBits) {
    throw std::invalid_argument("precision must be at least 64 bits, got " + std::to_string(b));
  }
}

Precision Precision::process_default() {
  static const Precision cached = [] {
    if (const char* env = std::getenv("ROSEN_PRECISION_BITS"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      long bits = std::strtol(env, &end, 10);
      if (end != nullptr && *end == '\0' && bits >= kMinBits) {
        return Precision{bits};
      }
    }
    return Precision{256};
  }();
  return cached;
}

Real::Real() : Real(Precision::process_default()) {}

Real::Real(Precision prec) {
  mpfr_init2(v_, prec.bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double value, Precision prec) {
  mpfr_init2(v_, prec.bits);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

Real::Real(long value, Precision prec) {
  mpfr_init2(v_, prec.bits);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Real Real::parse(std::string_view text, Precision prec) {
  Real out(prec);
  std::string buf(text);
  char* end = nullptr;
  if (!buf.empty()) {
    mpfr_strtofr(out.v_, buf.c_str(), &end, 10, MPFR_RNDN);
  }
  if (buf.empty() || end == buf.c_str() || *end != '\0') {
    throw std::invalid_argument("not a number: '" + buf + "'");
  }
  return out;
}

Real Real::pi(Precision prec) {
  Real out(prec);
  mpfr_const_pi(out.v_, MPFR_RNDN);
  return out;
}

Real Real::ldexp(long mantissa, long e, Precision prec) {
  Real out(prec);
  mpfr_set_si_2exp(out.v_, mantissa, e, MPFR_RNDN);
  return out;
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // Swap into a minimal placeholder so the moved-from object stays valid.
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    }
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) {
    mpfr_swap(v_, other.v_);
  }
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_precision(Precision prec) const {
  Real out(prec);
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

long Real::floor_long() const { return mpfr_get_si(v_, MPFR_RNDD); }

long Real::round_long() const { return mpfr_get_si(v_, MPFR_RNDNA); }

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  size_t n = digits > 0 ? static_cast<size_t>(digits) : mpfr_get_str_ndigits(10, mpfr_get_prec(v_));
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, n, v_, MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mant.empty() && mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  // Scientific form d.ddd e(E-1); plain form for moderate exponents.
  long exp10 = static_cast<long>(e) - 1;
  if (exp10 >= -6 && exp10 < 21) {
    if (exp10 < 0) {
      return sign + "0." + std::string(static_cast<size_t>(-exp10 - 1), '0') + mant;
    }
    auto int_len = static_cast<size_t>(exp10 + 1);
    if (mant.size() <= int_len) {
      return sign + mant + std::string(int_len - mant.size(), '0');
    }
    return sign + mant.substr(0, int_len) + "." + mant.substr(int_len);
  }
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  return out + "e" + std::to_string(exp10);
}

void Real::adopt_max_precision(const Real& rhs) {
  if (mpfr_get_prec(rhs.v_) > mpfr_get_prec(v_)) {
    mpfr_prec_round(v_, mpfr_get_prec(rhs.v_), MPFR_RNDN);
  }
}

Real& Real::operator+=(const Real& rhs) {
  adopt_max_precision(rhs);
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  adopt_max_precision(rhs);
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  adopt_max_precision(rhs);
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  adopt_max_precision(rhs);
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator+=(long rhs) {
  mpfr_add_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(long rhs) {
  mpfr_sub_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long rhs) {
  mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.v_, out.v_, MPFR_RNDN);
  return out;
}

Real operator-(long lhs, const Real& rhs) {
  Real out(rhs.precision());
  mpfr_si_sub(out.v_, lhs, rhs.v_, MPFR_RNDN);
  return out;
}

Real operator/(long lhs, const Real& rhs) {
  Real out(rhs.precision());
  mpfr_si_div(out.v_, lhs, rhs.v_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Real& a, double b) {
  if (mpfr_nan_p(a.v_) || std::isnan(b)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_d(a.v_, b);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(); }

namespace {

template <typename Fn>
Real apply_unary(const Real& x, Fn fn) {
  Real out(x.precision());
  fn(out.get(), x.get(), MPFR_RNDN);
  return out;
}

}  // namespace

Real abs(const Real& x) { return apply_unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return apply_unary(x, mpfr_sqrt); }
Real log(const Real& x) { return apply_unary(x, mpfr_log); }
Real exp(const Real& x) { return apply_unary(x, mpfr_exp); }
Real cos(const Real& x) { return apply_unary(x, mpfr_cos); }
Real sin(const Real& x) { return apply_unary(x, mpfr_sin); }

Real floor(const Real& x) {
  Real out(x.precision());
  mpfr_floor(out.get(), x.get());
  return out;
}

Real pow(const Real& x, long n) {
  Real out(x.precision());
  mpfr_pow_si(out.get(), x.get(), n, MPFR_RNDN);
  return out;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real exp2i(long e, Precision prec) { return Real::ldexp(1, e, prec); }

Real zero_threshold(Precision prec) { return exp2i(-prec.bits / 2, prec); }

}  // namespace rosen
