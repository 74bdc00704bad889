#include "affinv/poly.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace affinv {

Monomial Monomial::variable(int k, unsigned power) {
  if (k < 0 || k >= kMaxVars) throw std::out_of_range("coordinate index out of range");
  Monomial m;
  m.exp[k] = static_cast<std::uint16_t>(power);
  m.degree = power;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree > other.degree) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (exp[i] > other.exp[i]) return false;
  return true;
}

int Monomial::span() const {
  for (int i = kMaxVars; i > 0; --i)
    if (exp[i - 1] != 0) return i;
  return 0;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? -1 : 1;
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
  m.degree = a.degree + b.degree;
  return m;
}

Monomial operator/(const Monomial& m, const Monomial& divisor) {
  Monomial q;
  for (int i = 0; i < kMaxVars; ++i) q.exp[i] = static_cast<std::uint16_t>(m.exp[i] - divisor.exp[i]);
  q.degree = m.degree - divisor.degree;
  return q;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) {
    m.exp[i] = std::min(a.exp[i], b.exp[i]);
    m.degree += m.exp[i];
  }
  return m;
}

namespace {

bool term_greater(const Term& a, const Term& b) { return grlex_compare(a.mono, b.mono) > 0; }

// r <- r + sign * c * m * b, merging sorted term lists.
std::vector<Term> add_scaled(const std::vector<Term>& r, const std::vector<Term>& b, const Monomial& m,
                             const mpz_class& c) {
  std::vector<Term> out;
  out.reserve(r.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < r.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(r[i++]);
      continue;
    }
    Monomial bm = b[j].mono * m;
    int cmp = i == r.size() ? -1 : grlex_compare(r[i].mono, bm);
    if (cmp > 0) {
      out.push_back(r[i++]);
    } else if (cmp < 0) {
      out.push_back(Term{bm, b[j].coeff * c});
      ++j;
    } else {
      mpz_class s = r[i].coeff + b[j].coeff * c;
      if (s != 0) out.push_back(Term{bm, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly::Poly(const mpz_class& c) {
  if (c != 0) terms_.push_back(Term{Monomial{}, c});
}

Poly Poly::variable(int k, unsigned power) { return monomial(Monomial::variable(k, power), 1); }

Poly Poly::monomial(const Monomial& m, const mpz_class& c) {
  Poly p;
  if (c != 0) p.terms_.push_back(Term{m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }

mpz_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].coeff;
}

int Poly::degree_in(int k) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.mono.exp[k]);
  return d;
}

unsigned Poly::variables() const {
  unsigned mask = 0;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i)
      if (t.mono.exp[i] != 0) mask |= 1u << i;
  return mask;
}

int Poly::span() const { return static_cast<int>(std::bit_width(variables())); }

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  terms_ = add_scaled(terms_, o.terms_, Monomial{}, 1);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.is_zero()) return *this;
  terms_ = add_scaled(terms_, o.terms_, Monomial{}, -1);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  if (a.size() == 1) return b.times_term(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.size() == 1) return a.times_term(b.terms_[0].mono, b.terms_[0].coeff);
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& large = a.size() <= b.size() ? b : a;
  std::vector<Term> terms;
  terms.reserve(small.size() * large.size());
  for (const auto& s : small.terms_)
    for (const auto& l : large.terms_) terms.push_back(Term{s.mono * l.mono, s.coeff * l.coeff});
  return Poly::from_terms(std::move(terms));
}

Poly Poly::scaled(const mpz_class& c) const {
  if (c == 0) return Poly{};
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::times_term(const Monomial& m, const mpz_class& c) const {
  if (c == 0) return Poly{};
  Poly p;
  p.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves grlex order.
  for (const auto& t : terms_) p.terms_.push_back(Term{t.mono * m, t.coeff * c});
  return p;
}

Poly Poly::divided_by(const mpz_class& c) const {
  Poly p = *this;
  for (auto& t : p.terms_) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  return p;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(int k) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (t.mono.exp[k] == 0) continue;
    Term d{t.mono, t.coeff * t.mono.exp[k]};
    d.mono.exp[k] -= 1;
    d.mono.degree -= 1;
    terms.push_back(std::move(d));
  }
  return from_terms(std::move(terms));
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpq_class Poly::evaluate(std::span<const mpq_class> point) const {
  mpq_class sum = 0;
  mpq_class term;
  for (const auto& t : terms_) {
    term = t.coeff;
    for (int i = 0; i < kMaxVars; ++i) {
      for (unsigned e = 0; e < t.mono.exp[i]; ++e) {
        if (i >= static_cast<int>(point.size())) throw std::out_of_range("evaluation point too short");
        term *= point[i];
      }
    }
    sum += term;
  }
  return sum;
}

double Poly::evaluate(std::span<const double> point) const {
  double sum = 0;
  for (const auto& t : terms_) {
    double term = t.coeff.get_d();
    for (int i = 0; i < kMaxVars; ++i) {
      for (unsigned e = 0; e < t.mono.exp[i]; ++e) {
        if (i >= static_cast<int>(point.size())) throw std::out_of_range("evaluation point too short");
        term *= point[i];
      }
    }
    sum += term;
  }
  return sum;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpz_class mag = abs(t.coeff);
    if (first) {
      if (t.coeff < 0) os << '-';
    } else {
      os << (t.coeff < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || t.mono.is_one()) {
      os << mag.get_str();
      wrote = true;
    }
    for (int i = 0; i < kMaxVars; ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (wrote) os << '*';
      os << 'x' << (i + 1);
      if (t.mono.exp[i] > 1) os << '^' << t.mono.exp[i];
      wrote = true;
    }
  }
  return os.str();
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero()) return Poly{};
  if (b.is_constant()) {
    mpz_class c = b.constant_value();
    std::vector<Term> q;
    q.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
      q.push_back(Term{t.mono, t.coeff / c});
    }
    return Poly::from_terms(std::move(q));
  }
  if (b.total_degree() > a.total_degree()) return std::nullopt;
  const Term& lb = b.leading();
  std::vector<Term> rem = a.terms();
  std::vector<Term> quot;
  while (!rem.empty()) {
    const Term& lr = rem.front();
    if (!lb.mono.divides(lr.mono)) return std::nullopt;
    if (!mpz_divisible_p(lr.coeff.get_mpz_t(), lb.coeff.get_mpz_t())) return std::nullopt;
    Monomial qm = lr.mono / lb.mono;
    mpz_class qc;
    mpz_divexact(qc.get_mpz_t(), lr.coeff.get_mpz_t(), lb.coeff.get_mpz_t());
    rem = add_scaled(rem, b.terms(), qm, -qc);
    quot.push_back(Term{qm, std::move(qc)});
  }
  return Poly::from_terms(std::move(quot));
}

Poly normalize_sign(Poly a) {
  if (a.leading_sign() < 0) return -a;
  return a;
}

namespace {

// Coefficients of p viewed as a polynomial in x_v; entry d multiplies x_v^d.
std::vector<Poly> split_in(const Poly& p, int v) {
  int deg = p.degree_in(v);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(deg) + 1);
  for (const auto& t : p.terms()) {
    Term c = t;
    unsigned d = c.mono.exp[v];
    c.mono.exp[v] = 0;
    c.mono.degree -= d;
    buckets[d].push_back(std::move(c));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(std::move(b)));
  return out;
}

Poly content_in(const Poly& p, int v) {
  std::vector<Poly> coeffs = split_in(p, v);
  // Smallest coefficients first keeps the running gcd cheap.
  std::sort(coeffs.begin(), coeffs.end(), [](const Poly& a, const Poly& b) { return a.size() < b.size(); });
  Poly g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("internal error: expected exact polynomial division");
  return *q;
}

Poly primitive_in(const Poly& p, int v) {
  Poly c = content_in(p, v);
  return normalize_sign(c.is_one() ? p : exact(p, c));
}

// Pseudo-remainder of a by b with respect to x_v.
Poly prem(const Poly& a, const Poly& b, int v) {
  int db = b.degree_in(v);
  std::vector<Poly> bc = split_in(b, v);
  const Poly lcb = bc[static_cast<std::size_t>(db)];
  Poly rest_b = b - lcb * Poly::variable(v, static_cast<unsigned>(db));
  Poly r = a;
  int e = a.degree_in(v) - db + 1;
  while (!r.is_zero()) {
    int dr = r.degree_in(v);
    if (dr < db) break;
    std::vector<Poly> rc = split_in(r, v);
    const Poly& lcr = rc[static_cast<std::size_t>(dr)];
    Poly head = lcr * Poly::variable(v, static_cast<unsigned>(dr));
    r = lcb * (r - head) - lcr * rest_b * Poly::variable(v, static_cast<unsigned>(dr - db));
    --e;
  }
  if (e > 0 && !r.is_zero()) r = r * lcb.pow(static_cast<unsigned>(e));
  return r;
}

Poly monomial_case(const Poly& single, const Poly& other) {
  mpz_class c;
  mpz_class sc = abs(single.leading().coeff);
  mpz_class oc = other.content();
  mpz_gcd(c.get_mpz_t(), sc.get_mpz_t(), oc.get_mpz_t());
  Monomial m = single.leading().mono;
  for (const auto& t : other.terms()) {
    m = monomial_gcd(m, t.mono);
    if (m.is_one()) break;
  }
  return Poly::monomial(m, c);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  if (a.is_constant() || b.is_constant()) {
    mpz_class g;
    mpz_class ca = a.content();
    mpz_class cb = b.content();
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return Poly(g);
  }
  if (a.size() == 1) return monomial_case(a, b);
  if (b.size() == 1) return monomial_case(b, a);
  if (a == b || a == -b) return normalize_sign(a);

  unsigned va = a.variables();
  unsigned vb = b.variables();
  // A coordinate present in only one argument cannot occur in the gcd.
  for (int v = 0; v < kMaxVars; ++v) {
    unsigned bit = 1u << v;
    if ((va & bit) && !(vb & bit)) return gcd(content_in(a, v), b);
    if ((vb & bit) && !(va & bit)) return gcd(a, content_in(b, v));
  }

  // Cheap exact-divisibility shortcuts.
  const Poly& smaller = a.size() <= b.size() ? a : b;
  const Poly& larger = a.size() <= b.size() ? b : a;
  if (divide_exact(larger, smaller)) return normalize_sign(smaller);

  int best = -1;
  int best_deg = 0;
  for (int v = 0; v < kMaxVars; ++v) {
    if (!(va & (1u << v))) continue;
    int d = std::max(a.degree_in(v), b.degree_in(v));
    if (best < 0 || d < best_deg) {
      best = v;
      best_deg = d;
    }
  }
  const int v = best;

  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly pa = normalize_sign(ca.is_one() ? a : exact(a, ca));
  Poly pb = normalize_sign(cb.is_one() ? b : exact(b, cb));
  Poly c = gcd(ca, cb);

  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  Poly g;
  while (true) {
    Poly r = prem(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, v);
  }
  return normalize_sign(c * g);
}

}  // namespace affinv
