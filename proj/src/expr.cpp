#include "affinv/expr.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

namespace affinv {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

namespace {

Poly exact_quotient(const Poly& a, const Poly& b) {
  if (b.is_one()) return a;
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("internal error: gcd does not divide operand");
  return *std::move(q);
}

}  // namespace

Expr::Expr() : Expr(Canonical{}, Poly{}, Poly(1)) {}

Expr::Expr(long value) : Expr(Canonical{}, Poly(value), Poly(1)) {}

Expr::Expr(const mpz_class& value) : Expr(Canonical{}, Poly(value), Poly(1)) {}

Expr::Expr(const mpq_class& value) : Expr(Poly(value.get_num()), Poly(value.get_den())) {}

Expr::Expr(const Poly& numerator) : Expr(Canonical{}, numerator, Poly(1)) {}

Expr::Expr(const Poly& numerator, const Poly& denominator) {
  if (denominator.is_zero()) throw std::domain_error("division by the zero function");
  if (numerator.is_zero()) {
    rep_ = std::make_shared<const Rep>(Rep{Poly{}, Poly(1)});
    return;
  }
  Poly g = gcd(numerator, denominator);
  Poly num = exact_quotient(numerator, g);
  Poly den = exact_quotient(denominator, g);
  if (den.leading_sign() < 0) {
    num = -num;
    den = -den;
  }
  rep_ = std::make_shared<const Rep>(Rep{std::move(num), std::move(den)});
}

Expr::Expr(Canonical, Poly num, Poly den) : rep_(std::make_shared<const Rep>(Rep{std::move(num), std::move(den)})) {}

Expr Expr::coordinate(int k) { return Expr(Poly::variable(k)); }

mpq_class Expr::constant_value() const {
  if (!is_constant()) throw std::logic_error("expression is not constant: " + to_string());
  mpq_class q(rep_->num.constant_value(), rep_->den.constant_value());
  q.canonicalize();
  return q;
}

int Expr::span() const { return std::max(rep_->num.span(), rep_->den.span()); }

Expr Expr::operator-() const { return Expr(Canonical{}, -rep_->num, rep_->den); }

Expr operator+(const Expr& x, const Expr& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const Poly& a = x.numerator();
  const Poly& b = x.denominator();
  const Poly& c = y.numerator();
  const Poly& d = y.denominator();
  if (b.is_one() && d.is_one()) return Expr(Expr::Canonical{}, a + c, Poly(1));
  if (b == d) {
    Poly n = a + c;
    if (n.is_zero()) return Expr();
    Poly h = gcd(n, b);
    return Expr(Expr::Canonical{}, exact_quotient(n, h), exact_quotient(b, h));
  }
  Poly g = gcd(b, d);
  Poly b1 = exact_quotient(b, g);
  Poly d1 = exact_quotient(d, g);
  Poly n = a * d1 + c * b1;
  if (n.is_zero()) return Expr();
  Poly den = b1 * d;
  if (g.is_one()) return Expr(Expr::Canonical{}, std::move(n), std::move(den));
  Poly h = gcd(n, g);
  return Expr(Expr::Canonical{}, exact_quotient(n, h), exact_quotient(den, h));
}

Expr operator-(const Expr& x, const Expr& y) { return x + (-y); }

Expr operator*(const Expr& x, const Expr& y) {
  if (x.is_zero() || y.is_zero()) return Expr();
  const Poly& a = x.numerator();
  const Poly& b = x.denominator();
  const Poly& c = y.numerator();
  const Poly& d = y.denominator();
  if (b.is_one() && d.is_one()) return Expr(Expr::Canonical{}, a * c, Poly(1));
  Poly g1 = gcd(a, d);
  Poly g2 = gcd(c, b);
  Poly num = exact_quotient(a, g1) * exact_quotient(c, g2);
  Poly den = exact_quotient(b, g2) * exact_quotient(d, g1);
  if (den.leading_sign() < 0) {
    num = -num;
    den = -den;
  }
  return Expr(Expr::Canonical{}, std::move(num), std::move(den));
}

Expr operator/(const Expr& x, const Expr& y) {
  if (y.is_zero()) throw std::domain_error("division by the zero function");
  Poly c = y.denominator();
  Poly d = y.numerator();
  if (d.leading_sign() < 0) {
    c = -c;
    d = -d;
  }
  return x * Expr(Expr::Canonical{}, std::move(c), std::move(d));
}

Expr Expr::scaled(const mpq_class& c) const { return *this * Expr(c); }

Expr Expr::pow(long e) const {
  if (e == 0) return Expr(1);
  if (e < 0) {
    if (is_zero()) throw std::domain_error("negative power of the zero function");
    return (Expr(1) / *this).pow(-e);
  }
  auto ue = static_cast<unsigned>(e);
  return Expr(Canonical{}, rep_->num.pow(ue), rep_->den.pow(ue));
}

Expr Expr::diff(int k) const {
  if (k < 0 || k >= kMaxVars) throw std::out_of_range("coordinate index out of range");
  const Poly& a = rep_->num;
  const Poly& b = rep_->den;
  if (b.is_constant()) return Expr(a.derivative(k), b);
  Poly db = b.derivative(k);
  if (db.is_zero()) return Expr(a.derivative(k), b);
  // (a/b)' = (a' (b/g) - a (b'/g)) / (b (b/g)),  g = gcd(b, b')
  Poly g = gcd(b, db);
  Poly bg = exact_quotient(b, g);
  Poly num = a.derivative(k) * bg - a * exact_quotient(db, g);
  return Expr(num, b * bg);
}

mpq_class Expr::eval(std::span<const mpq_class> point) const {
  mpq_class den = rep_->den.evaluate(point);
  if (den == 0) throw PoleError("pole: denominator " + rep_->den.to_string() + " vanishes");
  mpq_class v = rep_->num.evaluate(point) / den;
  return v;
}

double Expr::eval_double(std::span<const double> point) const {
  return rep_->num.evaluate(point) / rep_->den.evaluate(point);
}

std::string Expr::to_string() const {
  const Poly& num = rep_->num;
  const Poly& den = rep_->den;
  if (den.is_one()) return num.to_string();
  std::string out = num.size() > 1 ? "(" + num.to_string() + ")" : num.to_string();
  out += '/';
  bool bare = den.size() == 1 && den.leading().coeff == 1 &&
              (den.leading().mono.is_one() || std::popcount(den.variables()) == 1);
  if (den.is_constant()) bare = true;
  out += bare ? den.to_string() : "(" + den.to_string() + ")";
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  return a.rep_ == b.rep_ || (a.numerator() == b.numerator() && a.denominator() == b.denominator());
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.to_string(); }

// --- parsing ---------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view text, int arity) : text_(text), arity_(arity) {}

  Expr parse() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer literal");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Expr expression() {
    Expr acc = term();
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Expr term() {
    Expr acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    std::size_t at = pos_;
    long e = exponent();
    if (e < 0 && base.is_zero()) throw ParseError("negative power of zero", at);
    return base.pow(e);
  }

  long exponent() {
    bool paren = accept('(');
    bool negative = accept('-');
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("exponent must be an integer literal");
    mpz_class v = integer();
    if (pos_ < text_.size() && (text_[pos_] == '.' || std::isalpha(static_cast<unsigned char>(text_[pos_]))))
      fail("exponent must be an integer literal");
    if (paren && !accept(')')) fail("exponent must be an integer literal");
    if (!v.fits_slong_p()) fail("exponent too large");
    long e = v.get_si();
    return negative ? -e : e;
  }

  Expr primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (c == 'x') {
      std::size_t at = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected coordinate index after 'x'");
      mpz_class k = integer();
      if (k < 1 || k > arity_)
        throw ParseError("coordinate x" + k.get_str() + " outside 1.." + std::to_string(arity_), at);
      return Expr::coordinate(static_cast<int>(k.get_si()) - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class v = integer();
      if (pos_ < text_.size() && text_[pos_] == '.') fail("only integer literals are allowed");
      return Expr(v);
    }
    if (c == '\0') fail("unexpected end of expression");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  int arity_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, int arity) {
  if (arity < 0 || arity > kMaxVars) throw std::out_of_range("arity must be in 0.." + std::to_string(kMaxVars));
  return Parser(text, arity).parse();
}

mpq_class parse_rational(std::string_view text) {
  Expr e = parse_expr(text, 0);
  return e.constant_value();
}

}  // namespace affinv
