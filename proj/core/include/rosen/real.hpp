#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rosen {

/// Working precision of a computation, in mantissa bits.
///
/// The zero threshold 2^(-bits/2) is the scale below which a value is treated
/// as zero (G_q-rational termination) or two values as coincident (digit ties).
struct Precision {
  long bits = 256;

  static constexpr long kMinBits = 64;

  Precision() = default;
  explicit Precision(long b);

  /// Process-wide default, read once from ROSEN_PRECISION_BITS (else 256).
  static Precision process_default();

  double zero_threshold_log2() const { return -static_cast<double>(bits) / 2.0; }

  friend bool operator==(const Precision&, const Precision&) = default;
};

/// Arbitrary-precision binary float with value semantics.
///
/// Every value carries its own precision. Binary operations produce a result
/// at the larger of the operand precisions; mixed operations with `double` or
/// `long` use the precision of the `Real` operand. Rounding is to nearest.
class Real {
 public:
  /// Zero at the process default precision.
  Real();
  explicit Real(Precision prec);
  Real(double value, Precision prec);
  Real(long value, Precision prec);
  Real(int value, Precision prec) : Real(static_cast<long>(value), prec) {}

  /// Parses a decimal or hex-float literal; throws std::invalid_argument.
  static Real parse(std::string_view text, Precision prec);
  static Real pi(Precision prec);
  /// x * 2^exp exactly.
  static Real ldexp(long mantissa, long exp, Precision prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Precision precision() const { return Precision{static_cast<long>(mpfr_get_prec(v_))}; }
  /// Copy of this value rounded to a new precision.
  Real with_precision(Precision prec) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// floor(x) as an integer; the value must fit in a long.
  long floor_long() const;
  /// Nearest integer (ties away from zero).
  long round_long() const;

  /// Decimal text with enough significant digits to round-trip at this
  /// precision (or `digits` when positive).
  std::string to_string(int digits = 0) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  Real operator-() const;

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  friend Real operator+(Real lhs, long rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, long rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, long rhs) { return lhs /= rhs; }
  friend Real operator+(long lhs, Real rhs) { return rhs += lhs; }
  friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
  friend Real operator-(long lhs, const Real& rhs);
  friend Real operator/(long lhs, const Real& rhs);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, double b);

  friend std::ostream& operator<<(std::ostream& os, const Real& x);

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

 private:
  void adopt_max_precision(const Real& rhs);

  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
/// 2^e at the given precision.
Real exp2i(long e, Precision prec);

/// 2^(-bits/2) for the given precision.
Real zero_threshold(Precision prec);

}  // namespace rosen
