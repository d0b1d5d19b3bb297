#include "ksum/arith.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

#include "ksum/error.hpp"

namespace ksum {

namespace {

constexpr double kLog2Of10 = 3.321928094887362347870319429489390175864831393;
constexpr mpfr_prec_t kGuardBits = 16;

std::string take_mpfr_string(char* s) {
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

std::string printf_format(const char* pattern, int significant, mpfr_srcptr x) {
  char* buffer = nullptr;
  if (mpfr_asprintf(&buffer, pattern, std::max(significant, 1), x) < 0) {
    fail(ErrorCode::Io, "mpfr_asprintf failed");
  }
  return take_mpfr_string(buffer);
}

}  // namespace

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + kGuardBits;
}

// ---------------------------------------------------------------------------
// BigReal

BigReal::BigReal(int digits) : digits_(digits) { mpfr_init2(value_, digits_to_bits(digits)); }

BigReal::BigReal() : BigReal(kMinDigits) { mpfr_set_zero(value_, 1); }

BigReal::BigReal(long value, int digits) : BigReal(digits) { mpfr_set_si(value_, value, MPFR_RNDN); }

BigReal::BigReal(const BigReal& other) : digits_(other.digits_) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept : digits_(other.digits_) {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
    digits_ = other.digits_;
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  std::swap(digits_, other.digits_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::parse(std::string_view text, int digits) {
  BigReal out(digits);
  const std::string s(text);
  if (s.empty() || mpfr_set_str(out.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
    fail(ErrorCode::Parse, "not a decimal number: '" + s + "'");
  }
  return out;
}

BigReal BigReal::from_rational(const BigRational& q, int digits) {
  BigReal out(digits);
  mpfr_set_q(out.value_, q.get().get_mpq_t(), MPFR_RNDN);
  return out;
}

BigReal BigReal::from_integer(const mpz_class& z, int digits) {
  BigReal out(digits);
  mpfr_set_z(out.value_, z.get_mpz_t(), MPFR_RNDN);
  return out;
}

BigReal BigReal::from_double(double v, int digits) {
  BigReal out(digits);
  mpfr_set_d(out.value_, v, MPFR_RNDN);
  return out;
}

BigReal BigReal::pi(int digits) {
  BigReal out(digits);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

BigReal BigReal::with_digits(int digits) const {
  BigReal out(digits);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

namespace {

// Raises the precision of `x` in place (exactly) so it can hold a result at `digits`.
void widen(mpfr_ptr x, int& own_digits, int digits) {
  if (digits > own_digits) {
    mpfr_prec_round(x, digits_to_bits(digits), MPFR_RNDN);
    own_digits = digits;
  }
}

}  // namespace

BigReal& BigReal::operator+=(const BigReal& rhs) {
  widen(value_, digits_, rhs.digits_);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  widen(value_, digits_, rhs.digits_);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  widen(value_, digits_, rhs.digits_);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  widen(value_, digits_, rhs.digits_);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

int BigReal::sign() const noexcept { return mpfr_sgn(value_); }
bool BigReal::is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
bool BigReal::is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
double BigReal::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

long BigReal::exponent10() const {
  if (is_zero()) return -1000000000L;
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_abs(t, value_, MPFR_RNDN);
  mpfr_log10(t, t, MPFR_RNDD);
  mpfr_floor(t, t);
  const long e = mpfr_get_si(t, MPFR_RNDN);
  mpfr_clear(t);
  return e;
}

std::string BigReal::format(int significant) const { return printf_format("%#.*Rg", significant, value_); }

std::string BigReal::format_truncated(int significant) const {
  return printf_format("%#.*RZg", significant, value_);
}

std::string BigReal::format_sci(int significant) const {
  return printf_format("%.*Re", significant - 1, value_);
}

std::string BigReal::serialize() const {
  if (is_zero()) return mpfr_signbit(value_) ? "-0" : "0";
  if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  const size_t n = mpfr_get_str_ndigits(10, mpfr_get_prec(value_));
  mpfr_exp_t exponent = 0;
  std::string mantissa = take_mpfr_string(mpfr_get_str(nullptr, &exponent, 10, n, value_, MPFR_RNDN));
  std::string sign;
  if (mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();
  std::string out = sign + mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  out += "e" + std::to_string(static_cast<long>(exponent) - 1);
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) {
  return os << x.format(static_cast<int>(std::min<std::streamsize>(os.precision(), 1000)));
}

namespace {

template <typename Fn>
BigReal unary(const BigReal& x, Fn fn) {
  BigReal out = BigRealAccess::make(x.digits());
  fn(BigRealAccess::raw(out), x.get(), MPFR_RNDN);
  return out;
}

template <typename Fn>
BigReal binary(const BigReal& a, const BigReal& b, Fn fn) {
  BigReal out = BigRealAccess::make(std::max(a.digits(), b.digits()));
  fn(BigRealAccess::raw(out), a.get(), b.get(), MPFR_RNDN);
  return out;
}

}  // namespace

BigReal abs(const BigReal& x) {
  return unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { return mpfr_abs(r, a, rnd); });
}
BigReal sqrt(const BigReal& x) { return unary(x, mpfr_sqrt); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }
BigReal log(const BigReal& x) { return unary(x, mpfr_log); }
BigReal log10(const BigReal& x) { return unary(x, mpfr_log10); }
BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }
BigReal sinh(const BigReal& x) { return unary(x, mpfr_sinh); }
BigReal cosh(const BigReal& x) { return unary(x, mpfr_cosh); }
BigReal gamma(const BigReal& x) { return unary(x, mpfr_gamma); }
BigReal atan2(const BigReal& y, const BigReal& x) { return binary(y, x, mpfr_atan2); }
BigReal pow(const BigReal& base, const BigReal& exponent) { return binary(base, exponent, mpfr_pow); }

BigReal pow(const BigReal& base, long exponent) {
  BigReal out = BigRealAccess::make(base.digits());
  mpfr_pow_si(BigRealAccess::raw(out), base.get(), exponent, MPFR_RNDN);
  return out;
}

BigReal max(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_max); }
BigReal min(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_min); }

BigReal ten_to_minus(int exponent, int digits) {
  BigReal out = BigRealAccess::make(digits);
  mpfr_ui_pow_ui(BigRealAccess::raw(out), 10, static_cast<unsigned long>(std::abs(exponent)), MPFR_RNDN);
  if (exponent > 0) mpfr_ui_div(BigRealAccess::raw(out), 1, out.get(), MPFR_RNDN);
  return out;
}

// ---------------------------------------------------------------------------
// BigComplex

BigComplex::BigComplex(BigReal re) : re_(std::move(re)), im_(0L, re_.digits()) {}

BigComplex::BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) { align(); }

void BigComplex::align() {
  if (re_.digits() < im_.digits()) re_ = re_.with_digits(im_.digits());
  if (im_.digits() < re_.digits()) im_ = im_.with_digits(re_.digits());
}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  BigReal re = re_ * rhs.re_ - im_ * rhs.im_;
  BigReal im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs) {
  const BigReal denom = rhs.re_ * rhs.re_ + rhs.im_ * rhs.im_;
  BigReal re = (re_ * rhs.re_ + im_ * rhs.im_) / denom;
  BigReal im = (im_ * rhs.re_ - re_ * rhs.im_) / denom;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigReal& rhs) {
  re_ /= rhs;
  im_ /= rhs;
  return *this;
}

BigReal abs(const BigComplex& z) {
  BigReal out = BigRealAccess::make(z.digits());
  mpfr_hypot(BigRealAccess::raw(out), z.re().get(), z.im().get(), MPFR_RNDN);
  return out;
}

BigReal arg(const BigComplex& z) { return atan2(z.im(), z.re()); }

BigComplex conj(const BigComplex& z) { return BigComplex(z.re(), -z.im()); }

BigComplex cis(const BigReal& angle) {
  BigReal s = BigRealAccess::make(angle.digits());
  BigReal c = BigRealAccess::make(angle.digits());
  mpfr_sin_cos(BigRealAccess::raw(s), BigRealAccess::raw(c), angle.get(), MPFR_RNDN);
  return BigComplex(std::move(c), std::move(s));
}

BigComplex polar(const BigReal& modulus, const BigReal& angle) { return cis(angle) * modulus; }

BigComplex exp(const BigComplex& z) { return polar(exp(z.re()), z.im()); }

BigComplex log(const BigComplex& z) { return BigComplex(log(abs(z)), arg(z)); }

BigComplex sinh(const BigComplex& z) {
  return BigComplex(sinh(z.re()) * cos(z.im()), cosh(z.re()) * sin(z.im()));
}

BigComplex cosh(const BigComplex& z) {
  return BigComplex(cosh(z.re()) * cos(z.im()), sinh(z.re()) * sin(z.im()));
}

BigComplex pow(const BigComplex& z, long n) {
  BigComplex result(BigReal(1, z.digits()));
  BigComplex base = z;
  unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
  while (e != 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  if (n < 0) return BigComplex(BigReal(1, z.digits())) / result;
  return result;
}

// ---------------------------------------------------------------------------
// BigRational

BigRational::BigRational(long num, long den) {
  if (den == 0) fail(ErrorCode::Domain, "rational with zero denominator");
  value_ = mpq_class(mpz_class(num), mpz_class(den));
  value_.canonicalize();
}

BigRational::BigRational(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

BigRational BigRational::parse(std::string_view text) {
  const std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) fail(ErrorCode::Parse, "not a rational: '" + s + "'");
  if (sgn(q.get_den()) == 0) fail(ErrorCode::Domain, "rational with zero denominator: '" + s + "'");
  return BigRational(std::move(q));
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.is_zero()) fail(ErrorCode::Domain, "rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::string BigRational::to_string() const {
  return value_.get_num().get_str(10) + "/" + value_.get_den().get_str(10);
}

BigReal rational_to_real(const BigRational& q, int digits) { return BigReal::from_rational(q, digits); }

// ---------------------------------------------------------------------------

Precision::Precision(int digits) : digits_(digits) {
  if (digits < kMinDigits) {
    fail(ErrorCode::Config,
         "working precision must be at least " + std::to_string(kMinDigits) + " digits, got " +
             std::to_string(digits));
  }
}

Precision with_precision(int digits) { return Precision(digits); }

}  // namespace ksum
