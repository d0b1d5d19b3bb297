#pragma once

// Arbitrary-precision scalars. Every BigReal carries its own working precision
// (in decimal digits); binary operations run at the larger of the two operand
// precisions. There is no global precision state.

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ksum {

inline constexpr int kMinDigits = 50;
inline constexpr int kDefaultDigits = 250;

/// Binary precision used to carry `digits` decimal digits.
mpfr_prec_t digits_to_bits(int digits);

class BigRational;

class BigReal {
 public:
  /// Zero at the minimum precision; it adopts the precision of whatever it is combined with.
  BigReal();
  BigReal(long value, int digits);
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  /// Accepts decimal and scientific notation ("-1.5e-3").
  static BigReal parse(std::string_view text, int digits);
  static BigReal from_rational(const BigRational& q, int digits);
  static BigReal from_integer(const mpz_class& z, int digits);
  static BigReal pi(int digits);
  static BigReal from_double(double v, int digits);

  int digits() const noexcept { return digits_; }
  mpfr_srcptr get() const noexcept { return value_; }

  /// Copy rounded to another precision.
  BigReal with_digits(int digits) const;

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }
  friend BigReal operator*(BigReal lhs, long rhs) { return lhs *= rhs; }
  friend BigReal operator*(long lhs, BigReal rhs) { return rhs *= lhs; }
  friend BigReal operator/(BigReal lhs, long rhs) { return lhs /= rhs; }
  BigReal operator-() const;

  friend bool operator==(const BigReal& a, const BigReal& b);
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);

  int sign() const noexcept;
  bool is_zero() const noexcept;
  bool is_finite() const noexcept;
  double to_double() const;
  /// Base-10 exponent e such that |x| is in [10^e, 10^(e+1)); zero maps to a large negative value.
  long exponent10() const;

  /// printf-%g style with `significant` digits, round-to-nearest.
  std::string format(int significant) const;
  /// Same, rounding toward zero (the way some printed tables truncate).
  std::string format_truncated(int significant) const;
  /// Scientific notation with `significant` digits.
  std::string format_sci(int significant) const;
  /// Shortest decimal string that parses back to the identical value at this precision.
  std::string serialize() const;

 private:
  explicit BigReal(int digits);  // uninitialised value (NaN) at the given precision
  friend class BigRealAccess;

  mpfr_t value_;
  int digits_;
};

/// Internal escape hatch for modules that call MPFR directly.
class BigRealAccess {
 public:
  static BigReal make(int digits) { return BigReal(digits); }
  static mpfr_ptr raw(BigReal& x) noexcept { return x.value_; }
};

std::ostream& operator<<(std::ostream& os, const BigReal& x);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log10(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal pow(const BigReal& base, const BigReal& exponent);
BigReal pow(const BigReal& base, long exponent);
BigReal gamma(const BigReal& x);
BigReal max(const BigReal& a, const BigReal& b);
BigReal min(const BigReal& a, const BigReal& b);

/// 10^(-digits) at the given precision.
BigReal ten_to_minus(int exponent, int digits);

class BigComplex {
 public:
  BigComplex() = default;
  explicit BigComplex(BigReal re);
  BigComplex(BigReal re, BigReal im);

  const BigReal& re() const noexcept { return re_; }
  const BigReal& im() const noexcept { return im_; }
  int digits() const noexcept { return re_.digits(); }

  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator/=(const BigComplex& rhs);
  BigComplex& operator*=(const BigReal& rhs);
  BigComplex& operator/=(const BigReal& rhs);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator*(const BigReal& b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigReal& b) { return a /= b; }
  BigComplex operator-() const { return BigComplex(-re_, -im_); }

  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const noexcept { return re_.is_finite() && im_.is_finite(); }

 private:
  void align();
  BigReal re_;
  BigReal im_;
};

BigReal abs(const BigComplex& z);
BigReal arg(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex exp(const BigComplex& z);
/// Principal branch.
BigComplex log(const BigComplex& z);
BigComplex sinh(const BigComplex& z);
BigComplex cosh(const BigComplex& z);
BigComplex pow(const BigComplex& z, long n);
/// exp(i*angle)
BigComplex cis(const BigReal& angle);
BigComplex polar(const BigReal& modulus, const BigReal& angle);

/// Exact rational in lowest terms with positive denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long num, long den = 1);
  explicit BigRational(mpq_class q);

  /// "p/q" or "p".
  static BigRational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& get() const noexcept { return value_; }

  BigRational& operator+=(const BigRational& rhs) { value_ += rhs.value_; return *this; }
  BigRational& operator-=(const BigRational& rhs) { value_ -= rhs.value_; return *this; }
  BigRational& operator*=(const BigRational& rhs) { value_ *= rhs.value_; return *this; }
  BigRational& operator/=(const BigRational& rhs);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  BigRational operator-() const { return BigRational(mpq_class(-value_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }
  std::string to_string() const;

 private:
  mpq_class value_;
};

/// Correctly rounded conversion.
BigReal rational_to_real(const BigRational& q, int digits);

/// Precision context: a factory for values at a fixed working precision.
class Precision {
 public:
  explicit Precision(int digits);

  int digits() const noexcept { return digits_; }
  BigReal real(long v) const { return BigReal(v, digits_); }
  BigReal real(std::string_view text) const { return BigReal::parse(text, digits_); }
  BigReal ratio(long num, long den) const { return BigReal(num, digits_) / den; }
  BigReal rational(const BigRational& q) const { return rational_to_real(q, digits_); }
  BigReal pi() const { return BigReal::pi(digits_); }
  BigComplex complex(long re, long im = 0) const { return BigComplex(real(re), real(im)); }
  /// |x| below this counts as zero at working precision.
  BigReal epsilon(int slack_digits = 0) const { return ten_to_minus(digits_ - slack_digits, digits_); }

 private:
  int digits_;
};

/// Throws Error(Config) when digits < kMinDigits.
Precision with_precision(int digits);

}  // namespace ksum
