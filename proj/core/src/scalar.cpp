#include "mfd/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mfd {

namespace {

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
  if (a.is_exact() && b.is_exact()) return Scalar(Rational(op(a.rational(), b.rational())));
  return Scalar(op(a.to_double(), b.to_double()));
}

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

boost::multiprecision::cpp_int parse_integer(std::string_view s) {
  if (!is_integer_text(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  std::string digits(s);
  bool negative = digits[0] == '-';
  if (digits[0] == '+' || digits[0] == '-') digits.erase(0, 1);
  // cpp_int reads a leading zero as an octal prefix.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  boost::multiprecision::cpp_int value(digits);
  return negative ? boost::multiprecision::cpp_int(-value) : value;
}

// Exact value of a decimal literal such as "-1.25e-3".
Rational parse_decimal_exact(std::string_view s) {
  std::string text(s);
  std::string mantissa = text;
  long long exponent = 0;
  if (auto pos = text.find_first_of("eE"); pos != std::string::npos) {
    mantissa = text.substr(0, pos);
    std::string exp_text = text.substr(pos + 1);
    if (!is_integer_text(exp_text)) throw std::invalid_argument("bad exponent in '" + text + "'");
    exponent = std::stoll(exp_text);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_point = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("bad decimal '" + text + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw std::invalid_argument("bad decimal '" + text + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad decimal '" + text + "'");
  // cpp_int reads a leading zero as an octal prefix.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Rational value{boost::multiprecision::cpp_int(digits)};
  long long shift = exponent - frac_digits;
  if (shift > 4000 || shift < -4000) throw std::invalid_argument("exponent out of range in '" + text + "'");
  boost::multiprecision::cpp_int ten_power = boost::multiprecision::pow(
      boost::multiprecision::cpp_int(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
  if (shift >= 0) {
    value *= Rational(ten_power);
  } else {
    value /= Rational(ten_power);
  }
  return negative ? Rational(-value) : value;
}

}  // namespace

Scalar Scalar::ratio(long long p, long long q) {
  if (q == 0) throw std::domain_error("zero denominator");
  return Scalar(Rational(p) / Rational(q));
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw std::logic_error("Scalar::rational() called on a float value");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return rational_to_double(std::get<Rational>(value_));
  return std::get<double>(value_);
}

Scalar Scalar::as(NumberMode mode) const {
  if (mode == NumberMode::kFloat) return Scalar(to_double());
  if (is_exact()) return *this;
  double v = std::get<double>(value_);
  if (!std::isfinite(v)) throw std::domain_error("cannot convert non-finite value to rational");
  // Doubles are dyadic rationals, so this conversion is exact.
  return Scalar(Rational(v));
}

bool Scalar::is_zero() const {
  return is_exact() ? std::get<Rational>(value_) == 0 : std::get<double>(value_) == 0.0;
}

int Scalar::sign() const {
  if (is_exact()) return std::get<Rational>(value_).sign();
  double v = std::get<double>(value_);
  return (v > 0) - (v < 0);
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  *this = combine(*this, rhs, [](const auto& x, const auto& y) { return x + y; });
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  *this = combine(*this, rhs, [](const auto& x, const auto& y) { return x - y; });
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  *this = combine(*this, rhs, [](const auto& x, const auto& y) { return x * y; });
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact() && rhs.is_zero()) throw std::domain_error("exact division by zero");
  *this = combine(*this, rhs, [](const auto& x, const auto& y) { return x / y; });
  return *this;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-std::get<Rational>(value_)));
  return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.is_exact() != rhs.is_exact()) return false;
  if (lhs.is_exact()) return lhs.rational() == rhs.rational();
  return lhs.to_double() == rhs.to_double();
}

bool operator<(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.is_exact() && rhs.is_exact()) return lhs.rational() < rhs.rational();
  return lhs.to_double() < rhs.to_double();
}

std::string Scalar::str() const {
  if (is_exact()) return std::get<Rational>(value_).str();
  std::ostringstream os;
  os << std::setprecision(17) << std::get<double>(value_);
  return os.str();
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar sqrt(const Scalar& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt of a negative value");
  return Scalar(std::sqrt(x.to_double()));
}

Scalar pow(const Scalar& x, int n) {
  Scalar base = n < 0 ? Scalar(1) / x : x;
  unsigned e = static_cast<unsigned>(n < 0 ? -n : n);
  Scalar result(1);
  if (!x.is_exact()) result = Scalar(1.0);
  while (e != 0) {
    if ((e & 1U) != 0) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

Scalar parse_scalar(std::string_view text, NumberMode mode) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  Rational exact;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(trim(s.substr(0, slash)));
    auto den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    exact = Rational(num, den);
  } else if (is_integer_text(s)) {
    exact = Rational(parse_integer(s));
  } else if (mode == NumberMode::kFloat) {
    std::size_t used = 0;
    double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + std::string(s) + "'");
    return Scalar(v);
  } else {
    exact = parse_decimal_exact(s);
  }
  Scalar value(exact);
  return mode == NumberMode::kFloat ? value.as(NumberMode::kFloat) : value;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

bool Tolerance::close(const Scalar& x, const Scalar& y) const { return close(x, y, 1.0); }

bool Tolerance::close(const Scalar& x, const Scalar& y, double factor) const {
  if (x.is_exact() && y.is_exact()) return x.rational() == y.rational();
  double a = x.to_double();
  double b = y.to_double();
  double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= eps * factor * scale;
}

bool Tolerance::close(double x, double y) const {
  double scale = std::max({std::abs(x), std::abs(y), 1.0});
  return std::abs(x - y) <= eps * scale;
}

bool Tolerance::is_zero(const Scalar& x) const {
  if (x.is_exact()) return x.is_zero();
  return std::abs(x.to_double()) <= eps;
}

bool Tolerance::is_positive(const Scalar& x) const {
  if (x.is_exact()) return x.sign() > 0;
  return x.to_double() > eps;
}

}  // namespace mfd
