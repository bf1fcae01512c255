#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hardball {

// Arbitrary-precision rational scalar. Arithmetic is closed: no operation
// ever rounds, so identical inputs reproduce bit-identical results.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  // Exact conversion: every finite double is a dyadic rational.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rational: non-finite double");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return Rational(std::move(q));
  }

  // Accepts "a/b", integers, and decimal literals with optional exponent
  // ("-12.5e-3"). Decimal strings parse exactly via powers of ten.
  static std::optional<Rational> parse(std::string_view text);

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.sign() == 0) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  int sign() const { return mpq_sgn(v_.get_mpq_t()); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  double to_double() const { return v_.get_d(); }

  // Canonical form: "a" when the denominator is 1, else "a/b".
  std::string str() const;

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

// Global comparison tolerance for float mode. Comparisons scale the
// tolerance by max(1, |a|, |b|), so tau acts relatively for large values
// and absolutely near zero. tau = 0 reduces to raw IEEE comparison.
double float_tolerance();
void set_float_tolerance(double tau);
constexpr double kDefaultFloatTolerance = 1e-9;

inline bool float_eq(double a, double b, double tol) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}
inline bool float_eq(double a, double b) { return float_eq(a, b, float_tolerance()); }

// Numeric-mode contract shared by all templated algorithms.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr const char* mode_name = "exact";
  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool lt(const Rational& a, const Rational& b) { return a < b; }
  static bool le(const Rational& a, const Rational& b) { return a <= b; }
  static int sign(const Rational& a) { return a.sign(); }
  static Rational from_int(long n) { return Rational(n); }
  static Rational from_fraction(long n, long d) { return Rational(n, d); }
  static double to_double(const Rational& a) { return a.to_double(); }
  static Rational abs(const Rational& a) { return a.abs(); }
  static std::string repr(const Rational& a) { return a.str(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static constexpr const char* mode_name = "float";
  static bool eq(double a, double b) { return float_eq(a, b); }
  static bool lt(double a, double b) { return a < b && !eq(a, b); }
  static bool le(double a, double b) { return a < b || eq(a, b); }
  static int sign(double a) { return eq(a, 0.0) ? 0 : (a < 0.0 ? -1 : 1); }
  static double from_int(long n) { return static_cast<double>(n); }
  static double from_fraction(long n, long d) { return static_cast<double>(n) / static_cast<double>(d); }
  static double to_double(double a) { return a; }
  static double abs(double a) { return std::fabs(a); }
  static std::string repr(double a);
};

template <class S> bool scalar_eq(const S& a, const S& b) { return scalar_traits<S>::eq(a, b); }
template <class S> bool scalar_lt(const S& a, const S& b) { return scalar_traits<S>::lt(a, b); }
template <class S> bool scalar_le(const S& a, const S& b) { return scalar_traits<S>::le(a, b); }
template <class S> bool scalar_gt(const S& a, const S& b) { return scalar_traits<S>::lt(b, a); }
template <class S> bool scalar_ge(const S& a, const S& b) { return scalar_traits<S>::le(b, a); }
template <class S> int scalar_sign(const S& a) { return scalar_traits<S>::sign(a); }

}  // namespace hardball
