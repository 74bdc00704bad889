#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace affinv {

/// Largest supported number of chart coordinates.
inline constexpr int kMaxVars = 8;

/// Power product x1^e1 ... x8^e8 with cached total degree.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t degree = 0;

  static Monomial variable(int k, unsigned power = 1);

  bool is_one() const { return degree == 0; }
  bool divides(const Monomial& other) const;
  /// Index one past the highest coordinate that occurs.
  int span() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order with x1 > x2 > ... : returns <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b);
Monomial operator*(const Monomial& a, const Monomial& b);
/// Requires divisor.divides(m).
Monomial operator/(const Monomial& m, const Monomial& divisor);
Monomial monomial_gcd(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  mpz_class coeff;
};

/// Sparse multivariate polynomial with integer coefficients. Terms are kept
/// strictly decreasing in grlex order with no zero coefficients, so two
/// polynomials are equal iff their term lists are equal.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpz_class& c);
  explicit Poly(long c) : Poly(mpz_class(c)) {}

  static Poly variable(int k, unsigned power = 1);
  static Poly monomial(const Monomial& m, const mpz_class& c);
  /// Sorts and combines an arbitrary term list.
  static Poly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  /// Constant value; requires is_constant().
  mpz_class constant_value() const;

  int degree_in(int k) const;
  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree; }
  /// Bit set of coordinates that occur.
  unsigned variables() const;
  int span() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  Poly scaled(const mpz_class& c) const;
  Poly times_term(const Monomial& m, const mpz_class& c) const;
  /// Divides every coefficient by c; requires c | content().
  Poly divided_by(const mpz_class& c) const;
  Poly pow(unsigned e) const;
  Poly derivative(int k) const;

  /// gcd of the integer coefficients (positive; 0 for the zero polynomial).
  mpz_class content() const;
  int leading_sign() const { return terms_.empty() ? 0 : sgn(terms_.front().coeff); }

  mpq_class evaluate(std::span<const mpq_class> point) const;
  double evaluate(std::span<const double> point) const;

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  std::vector<Term> terms_;
};

/// Quotient when b divides a exactly in Z[x]; nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Greatest common divisor in Z[x1..xn], normalised to a positive leading
/// coefficient. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// a with positive leading coefficient.
Poly normalize_sign(Poly a);

}  // namespace affinv
