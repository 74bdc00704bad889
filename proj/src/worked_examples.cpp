#include "affinv/worked_examples.hpp"

namespace affinv {

TensorField example1_metric() {
  static const char* entries[3][3] = {
      {"x1^2", "x1", "x2"},
      {"-x1", "x2^2", "x3"},
      {"-x2", "-x3", "x3^2"},
  };
  TensorField g(3, 0, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g.set({i, j}, parse_expr(entries[i][j], 3));
  return g;
}

TensorField example2_metric() {
  TensorField g(3, 0, 2);
  for (int i = 0; i < 3; ++i) g.set({i, i}, Expr::coordinate(i).pow(2));
  return g;
}

AlmostGeodesicPi1 example2_mapping() {
  const Expr phi = parse_expr("1 + x1^2 + x2^2 + x3^2", 3);
  TensorField psi(3, 0, 1);
  for (int j = 0; j < 3; ++j) psi.set({j}, Expr(2) * Expr::coordinate(j) / phi);
  TensorField a(3, 0, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.set({i, j}, Expr(2) * psi({i}) * psi({j}));
  return {a, delta_psi(psi)};
}

}  // namespace affinv
