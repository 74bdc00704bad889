#pragma once

// Random generators and small reference implementations shared by the
// unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "affinv/analysis.hpp"
#include "affinv/connection.hpp"
#include "affinv/expr.hpp"
#include "affinv/mappings.hpp"
#include "affinv/tensor.hpp"

namespace testing_support {

using namespace affinv;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random polynomial with small integer coefficients, total degree <= deg.
inline Expr random_poly(Rng& rng, int dim, int deg, int terms = 3) {
  Expr e;
  for (int t = 0; t < terms; ++t) {
    Expr m(uniform(rng, -4, 4));
    int left = uniform(rng, 0, deg);
    while (left-- > 0) m *= Expr::coordinate(uniform(rng, 0, dim - 1));
    e += m;
  }
  return e;
}

/// Random expression tree over + - * / and small polynomials. Division is
/// only by nonzero polynomials.
inline Expr random_expr(Rng& rng, int dim, int depth) {
  if (depth == 0) return random_poly(rng, dim, 2);
  Expr a = random_expr(rng, dim, depth - 1);
  Expr b = random_expr(rng, dim, depth - 1);
  switch (uniform(rng, 0, 3)) {
    case 0: return a + b;
    case 1: return a - b;
    case 2: return a * b;
    default:
      if (b.is_zero()) return a;
      return a / b;
  }
}

/// Random tensor; each component is zero with probability 1/3.
inline TensorField random_tensor(Rng& rng, int dim, int up, int down, int deg = 2) {
  TensorField t(dim, up, down);
  for (std::size_t k = 0; k < t.size(); ++k)
    if (uniform(rng, 0, 2) != 0) t.set(t.unflatten(k), random_poly(rng, dim, deg, 2));
  return t;
}

inline TensorField random_symmetric(Rng& rng, int dim, int up, int down, int a, int b, int deg = 2) {
  return sym_part(random_tensor(rng, dim, up, down, deg), a, b);
}

inline TensorField random_antisymmetric(Rng& rng, int dim, int up, int down, int a, int b, int deg = 2) {
  return antisym_part(random_tensor(rng, dim, up, down, deg), a, b);
}

/// Random non-symmetric connection with polynomial coefficients.
inline ConnectionSpace random_connection(Rng& rng, int dim, int deg = 2) {
  return ConnectionSpace(random_tensor(rng, dim, 1, 2, deg));
}

inline TensorField random_one_form(Rng& rng, int dim, int deg = 2) { return random_tensor(rng, dim, 0, 1, deg); }

/// Random points with coordinates p/q, p and q in [1, 10].
inline std::vector<Point> random_points(Rng& rng, int dim, int count) {
  std::vector<Point> pts;
  for (int k = 0; k < count; ++k) {
    Point p;
    for (int i = 0; i < dim; ++i) p.emplace_back(uniform(rng, 1, 10), uniform(rng, 1, 10));
    for (auto& q : p) q.canonicalize();
    pts.push_back(p);
  }
  return pts;
}

/// T^i_jm|n with the plain loops written out, for a (1,2) tensor.
inline TensorField naive_derivative_12(const TensorField& t, const TensorField& l) {
  const int n = t.dim();
  TensorField out(n, 1, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          Expr v = t({i, j, m}).diff(k);
          for (int a = 0; a < n; ++a) {
            v += l({i, a, k}) * t({a, j, m});
            v -= l({a, j, k}) * t({i, a, m});
            v -= l({a, m, k}) * t({i, j, a});
          }
          out.set({i, j, m, k}, v);
        }
  return out;
}

/// Product A^a_{j m} B^i_{a n}-style contractions spelled out; returns the
/// (1,3) tensor with slots (i; j, m, n) of sum_a f(a, i, j, m, n).
template <class F>
TensorField build_13(int n, F f) {
  TensorField out(n, 1, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) out.set({i, j, m, k}, f(i, j, m, k));
  return out;
}

inline Expr delta(int a, int b) { return Expr(a == b ? 1 : 0); }

/// Textbook Gaussian elimination over Q.
inline int naive_rank(RationalMatrix m) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Random matrix up to 10 x 10; about half are built with dependent rows.
inline RationalMatrix random_matrix(Rng& rng) {
  const int rows = uniform(rng, 1, 10), cols = uniform(rng, 1, 10);
  RationalMatrix m(rows, std::vector<mpq_class>(cols));
  for (auto& row : m)
    for (auto& x : row) {
      x = uniform(rng, 0, 2) == 0 ? mpq_class(0) : mpq_class(uniform(rng, -5, 5), uniform(rng, 1, 4));
      x.canonicalize();
    }
  if (rows > 2 && uniform(rng, 0, 1) == 0)
    for (int r = 2; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m[r][c] = mpq_class(r) * m[0][c] - mpq_class(1, r) * m[1][c];
  return m;
}

struct OracleTally {
  int checked = 0;
  int failed = 0;
};

/// Symbolic derivative against a central difference quotient (h = 1e-6,
/// relative tolerance 1e-6) on random expressions and points.
inline OracleTally finite_difference_oracle(Rng& rng, int wanted) {
  const double h = 1e-6;
  OracleTally t;
  for (int k = 0; k < 20 * wanted && t.checked < wanted; ++k) {
    Expr e = random_expr(rng, 3, 2);
    std::vector<double> p(3);
    for (auto& v : p) v = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    // Stay away from poles so the difference quotient is well conditioned.
    if (std::abs(e.denominator().evaluate(std::span<const double>(p))) < 1e-2) continue;
    const int var = uniform(rng, 0, 2);
    const double exact = e.diff(var).eval_double(p);
    // Rounding in the quotient grows like |f| eps / h; keep |f| moderate.
    if (!std::isfinite(exact) || std::abs(e.eval_double(p)) > 1e3) continue;
    auto q = p, r = p;
    q[var] += h;
    r[var] -= h;
    const double fd = (e.eval_double(q) - e.eval_double(r)) / (2 * h);
    if (std::abs(fd - exact) > 1e-6 * std::max(1.0, std::abs(exact))) ++t.failed;
    ++t.checked;
  }
  return t;
}

/// contract() against explicit loops on random (1,3) tensors.
inline OracleTally contraction_oracle(Rng& rng, int count) {
  OracleTally t;
  for (int k = 0; k < count; ++k) {
    const int n = uniform(rng, 2, 3);
    TensorField x = random_tensor(rng, n, 1, 3, 1);
    const int lower = uniform(rng, 1, 3);
    TensorField c = contract(x, {0, lower});
    bool ok = c.up() == 0 && c.down() == 2;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n; ++b) {
        Expr sum;
        for (int s = 0; s < n; ++s) {
          Index idx{};
          idx[0] = s;
          const int rest[2] = {a, b};
          int r = 0;
          for (int slot = 1; slot <= 3; ++slot) idx[slot] = (slot == lower) ? s : rest[r++];
          sum += x.at(idx);
        }
        ok = ok && (sum == c({a, b}));
      }
    if (!ok) ++t.failed;
    ++t.checked;
  }
  return t;
}

/// rank_exact against naive_rank on random matrices.
inline OracleTally rank_oracle(Rng& rng, int count) {
  OracleTally t;
  for (int k = 0; k < count; ++k) {
    RationalMatrix m = random_matrix(rng);
    if (rank_exact(m) != naive_rank(m)) ++t.failed;
    ++t.checked;
  }
  return t;
}

}  // namespace testing_support
