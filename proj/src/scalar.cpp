#include "hardball/scalar.hpp"

#include <charconv>
#include <cctype>

namespace hardball {

namespace {
double g_float_tolerance = kDefaultFloatTolerance;
}

double float_tolerance() { return g_float_tolerance; }

void set_float_tolerance(double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  g_float_tolerance = tau;
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::optional<mpz_class> parse_signed_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) return std::nullopt;
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
  // strip surrounding whitespace
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_signed_integer(text.substr(0, slash));
    auto den = parse_signed_integer(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    mpq_class q(*num, *den);
    q.canonicalize();
    return Rational(std::move(q));
  }

  // decimal form: [sign] digits [. digits] [eE [sign] digits]
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_part = text.substr(e + 1);
    auto exp_val = parse_signed_integer(exp_part);
    if (!exp_val || !exp_val->fits_slong_p()) return std::nullopt;
    exponent = exp_val->get_si();
    mantissa = text.substr(0, e);
  }

  bool neg = false;
  if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
    neg = mantissa[0] == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    auto head = mantissa.substr(0, dot);
    auto tail = mantissa.substr(dot + 1);
    if (head.empty() && tail.empty()) return std::nullopt;
    if (!head.empty() && !all_digits(head)) return std::nullopt;
    if (!tail.empty() && !all_digits(tail)) return std::nullopt;
    digits = std::string(head) + std::string(tail);
    frac_digits = static_cast<long>(tail.size());
  } else {
    if (!all_digits(mantissa)) return std::nullopt;
    digits = std::string(mantissa);
  }
  if (digits.empty()) return std::nullopt;

  mpz_class num(digits, 10);
  if (neg) num = -num;
  const long net = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  mpq_class q;
  if (net >= 0)
    q = mpq_class(num * pow10);
  else
    q = mpq_class(num, pow10);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string scalar_traits<double>::repr(double a) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), a);
  return std::string(buf, res.ptr);
}

}  // namespace hardball
