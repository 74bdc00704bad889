#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "affinv/poly.hpp"

namespace affinv {

/// Raised when an expression is evaluated where its denominator vanishes.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by the expression parser; carries the 0-based offset of the problem.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Exact rational function of the chart coordinates x1..xN.
///
/// Stored as numerator/denominator over Z[x] with gcd(num, den) = 1 (integer
/// content included) and a denominator with positive leading coefficient in
/// grlex order. The representation is therefore canonical: two Exprs denote
/// the same function iff they compare equal. Values are immutable and share
/// their polynomial data.
class Expr {
 public:
  /// The zero function.
  Expr();
  Expr(long value);  // NOLINT(google-explicit-constructor)
  explicit Expr(const mpz_class& value);
  explicit Expr(const mpq_class& value);
  explicit Expr(const Poly& numerator);
  /// Canonicalises num/den; throws std::domain_error when den is zero.
  Expr(const Poly& numerator, const Poly& denominator);

  /// The coordinate function x_{k+1} (k is 0-based).
  static Expr coordinate(int k);

  const Poly& numerator() const { return rep_->num; }
  const Poly& denominator() const { return rep_->den; }

  bool is_zero() const { return rep_->num.is_zero(); }
  bool is_constant() const { return rep_->num.is_constant() && rep_->den.is_constant(); }
  bool is_polynomial() const { return rep_->den.is_one(); }
  /// Rational value of a constant expression.
  mpq_class constant_value() const;
  /// One past the highest coordinate index that occurs.
  int span() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  /// Throws std::domain_error when b is the zero function.
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr& operator/=(const Expr& o) { return *this = *this / o; }

  Expr scaled(const mpq_class& c) const;
  /// Integer power; negative exponents require a non-zero expression.
  Expr pow(long e) const;
  /// Partial derivative with respect to x_{k+1} (k is 0-based).
  Expr diff(int k) const;

  /// Exact value at a rational point; throws PoleError on a vanishing denominator.
  mpq_class eval(std::span<const mpq_class> point) const;
  /// Floating-point value; only used by numerical cross-checks.
  double eval_double(std::span<const double> point) const;

  /// Deterministic canonical text that parses back to the same Expr.
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Rep {
    Poly num;
    Poly den;
  };
  struct Canonical {};
  Expr(Canonical, Poly num, Poly den);

  std::shared_ptr<const Rep> rep_;
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

/// Free-function spellings of the arithmetic used by the command layer.
inline Expr diff(const Expr& e, int k) { return e.diff(k); }
inline bool is_zero(const Expr& e) { return e.is_zero(); }

/// Parses the expression grammar:
///   integers, x1..xN, binary + - * /, unary -, parentheses,
///   '^' with an integer (possibly negative) literal exponent.
/// Throws ParseError with the offending position.
Expr parse_expr(std::string_view text, int arity);

/// Parses "p/q" or "p" into an exact rational.
mpq_class parse_rational(std::string_view text);

}  // namespace affinv
