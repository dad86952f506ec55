#ifndef MFD_SCALAR_HPP
#define MFD_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace mfd {

using Rational = boost::multiprecision::cpp_rational;

enum class NumberMode { kRational, kFloat };

/// A number that is either an exact rational or a double.
///
/// Arithmetic between two exact values stays exact; as soon as a float
/// operand is involved the result is a float. Irrational operations
/// (sqrt, spectral data) always produce floats.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(int v) : value_(Rational(v)) {}
  Scalar(long v) : value_(Rational(v)) {}
  Scalar(long long v) : value_(Rational(v)) {}
  Scalar(unsigned v) : value_(Rational(v)) {}
  Scalar(unsigned long v) : value_(Rational(v)) {}
  Scalar(Rational v) : value_(std::move(v)) {}
  Scalar(double v) : value_(v) {}

  /// Exact p/q.
  static Scalar ratio(long long p, long long q);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  NumberMode mode() const {
    return is_exact() ? NumberMode::kRational : NumberMode::kFloat;
  }

  /// Throws std::logic_error for float values.
  const Rational& rational() const;
  double to_double() const;

  /// Converts to the requested mode (rational -> float is lossy).
  Scalar as(NumberMode mode) const;

  bool is_zero() const;
  int sign() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  /// Throws std::domain_error on exact division by zero.
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const;

  /// Representation equality: same mode and identical value.
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend bool operator<(const Scalar& lhs, const Scalar& rhs);
  friend bool operator>(const Scalar& lhs, const Scalar& rhs) { return rhs < lhs; }
  friend bool operator<=(const Scalar& lhs, const Scalar& rhs) { return !(rhs < lhs); }
  friend bool operator>=(const Scalar& lhs, const Scalar& rhs) { return !(lhs < rhs); }

  /// "p/q" (or "p") for exact values, 17 significant digits for floats.
  std::string str() const;

 private:
  std::variant<Rational, double> value_;
};

Scalar abs(const Scalar& x);
Scalar sqrt(const Scalar& x);
Scalar pow(const Scalar& x, int n);

/// Parses "p/q", integers and decimals ("0.125", "1e-3"). In rational mode
/// decimals are converted exactly; in float mode everything becomes a double.
Scalar parse_scalar(std::string_view text, NumberMode mode);

std::ostream& operator<<(std::ostream& os, const Scalar& x);

/// Relative tolerance used by every approximate comparison.
///
/// Two values are close when |x - y| <= eps * max(|x|, |y|, 1). Comparisons
/// between two exact values ignore eps.
struct Tolerance {
  static constexpr double kDefaultEps = 1e-12;
  double eps = kDefaultEps;

  bool close(const Scalar& x, const Scalar& y) const;
  bool close(double x, double y) const;
  /// Same as close() with eps scaled by `factor`.
  bool close(const Scalar& x, const Scalar& y, double factor) const;
  bool is_zero(const Scalar& x) const;
  bool is_positive(const Scalar& x) const;
};

}  // namespace mfd

#endif  // MFD_SCALAR_HPP
