#include "affinv/metric.hpp"

#include <vector>

namespace affinv {

namespace {

using Matrix = std::vector<std::vector<Expr>>;

Matrix as_matrix(const TensorField& m) {
  if (m.rank() != 2) throw TensorShapeError("expected a rank-2 tensor");
  const int n = m.dim();
  Matrix a(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m({i, j});
  return a;
}

Matrix minor_of(const Matrix& a, std::size_t row, std::size_t col) {
  Matrix out;
  out.reserve(a.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == row) continue;
    std::vector<Expr> r;
    r.reserve(a.size() - 1);
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != col) r.push_back(a[i][j]);
    out.push_back(std::move(r));
  }
  return out;
}

// Laplace expansion along the first row; matrices here are at most 8x8 and
// in practice 2x2..4x4.
Expr det(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return Expr(1);
  if (n == 1) return a[0][0];
  if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  Expr sum;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    Expr term = a[0][j] * det(minor_of(a, 0, j));
    sum = (j % 2 == 0) ? sum + term : sum - term;
  }
  return sum;
}

}  // namespace

Expr determinant(const TensorField& m) { return det(as_matrix(m)); }

TensorField invert_symmetric(const TensorField& g_sym) {
  if (g_sym.up() != 0 || g_sym.down() != 2) throw TensorShapeError("expected a (0,2) metric");
  if (!is_symmetric(g_sym, 0, 1)) throw TensorShapeError("metric passed to invert_symmetric is not symmetric");
  const Matrix a = as_matrix(g_sym);
  const Expr d = det(a);
  if (d.is_zero()) throw SingularMetricError("symmetric part of the metric is singular (determinant is identically 0)");
  const int n = g_sym.dim();
  return TensorField::generate(n, 2, 0, [&](const Index& r) {
    // inverse[i][j] = cofactor(j, i) / det
    const auto i = static_cast<std::size_t>(r[0]);
    const auto j = static_cast<std::size_t>(r[1]);
    Expr c = det(minor_of(a, j, i));
    if ((i + j) % 2 == 1) c = -c;
    return c / d;
  });
}

GeneralizedMetric::GeneralizedMetric(TensorField g) {
  if (g.up() != 0 || g.down() != 2) throw TensorShapeError("metric must be a (0,2) tensor");
  auto d = std::make_shared<Data>();
  d->sym = sym_part(g, 0, 1);
  d->antisym = antisym_part(g, 0, 1);
  d->inverse = invert_symmetric(d->sym);
  d->g = std::move(g);
  data_ = std::move(d);
}

TensorField christoffel_symbols(const GeneralizedMetric& metric) {
  const int n = metric.dim();
  const TensorField& g = metric.g();
  const TensorField& inv = metric.inverse();
  // dg[a,b,c] = d_c g_ab
  TensorField dg = TensorField::generate(n, 0, 3, [&](const Index& r) { return g({r[0], r[1]}).diff(r[2]); });
  const Expr half(mpq_class(1, 2));
  return TensorField::generate(n, 1, 2, [&](const Index& r) {
    const int i = r[0];
    const int j = r[1];
    const int k = r[2];
    Expr sum;
    for (int a = 0; a < n; ++a) {
      const Expr& gi = inv({i, a});
      if (gi.is_zero()) continue;
      sum += gi * (dg({j, a, k}) - dg({j, k, a}) + dg({a, k, j}));
    }
    return half * sum;
  });
}

}  // namespace affinv
