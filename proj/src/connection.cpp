#include "affinv/connection.hpp"

namespace affinv {

namespace {

void require_connection_shape(const TensorField& l) {
  if (l.up() != 1 || l.down() != 2) throw TensorShapeError("connection coefficients must be a (1,2) tensor");
}

}  // namespace

ConnectionSpace::ConnectionSpace(TensorField coefficients) {
  require_connection_shape(coefficients);
  auto d = std::make_shared<Data>();
  d->sym = sym_part(coefficients, 1, 2);
  d->tor = antisym_part(coefficients, 1, 2);
  d->curvature = curvature_tensor(d->sym);
  d->full = std::move(coefficients);
  data_ = std::move(d);
}

TensorField covariant_derivative(const TensorField& t, const TensorField& connection) {
  require_connection_shape(connection);
  if (t.dim() != connection.dim()) throw TensorShapeError("covariant derivative: dimension mismatch");
  if (t.rank() + 1 > kMaxRank) throw TensorShapeError("covariant derivative: rank too large");
  const int n = t.dim();
  const int rank = t.rank();
  const int up = t.up();
  const TensorField& l = connection;
  return TensorField::generate(n, up, t.down() + 1, [&](const Index& r) {
    const int k = r[rank];
    Expr value = t.at(r).diff(k);
    Index idx = r;
    for (int s = 0; s < rank; ++s) {
      const int orig = r[s];
      for (int a = 0; a < n; ++a) {
        idx[s] = a;
        const Expr& ta = t.at(idx);
        if (ta.is_zero()) continue;
        if (s < up) {
          value += l({orig, a, k}) * ta;
        } else {
          value -= l({a, orig, k}) * ta;
        }
      }
      idx[s] = orig;
    }
    return value;
  });
}

TensorField covariant_derivative(const TensorField& t, const ConnectionSpace& space) {
  return covariant_derivative(t, space.symmetric());
}

TensorField covariant_derivative_kind(const TensorField& t, const ConnectionSpace& space, int kind) {
  if (t.up() != 1 || t.down() != 1) throw TensorShapeError("the four kinds are defined for (1,1) tensors only");
  if (kind < 1 || kind > 4) throw std::invalid_argument("covariant derivative kind must be 1..4");
  if (t.dim() != space.dim()) throw TensorShapeError("covariant derivative: dimension mismatch");
  const int n = t.dim();
  const TensorField& l = space.coefficients();
  // Whether the derivative index k sits on the left of the lower pair.
  const bool upper_k_first = kind == 2 || kind == 4;
  const bool lower_k_first = kind == 2 || kind == 3;
  return TensorField::generate(n, 1, 2, [&](const Index& r) {
    const int i = r[0];
    const int j = r[1];
    const int k = r[2];
    Expr value = t({i, j}).diff(k);
    for (int a = 0; a < n; ++a) {
      const Expr& up = upper_k_first ? l({i, k, a}) : l({i, a, k});
      const Expr& down = lower_k_first ? l({a, k, j}) : l({a, j, k});
      value += up * t({a, j}) - down * t({i, a});
    }
    return value;
  });
}

TensorField curvature_tensor(const TensorField& connection) {
  require_connection_shape(connection);
  const int n = connection.dim();
  const TensorField& l = connection;
  // dl[i,j,m,n] = d_n L^i_jm
  TensorField dl = TensorField::generate(n, 1, 3, [&](const Index& r) { return l({r[0], r[1], r[2]}).diff(r[3]); });
  return TensorField::generate(n, 1, 3, [&](const Index& r) {
    const int i = r[0];
    const int j = r[1];
    const int m = r[2];
    const int q = r[3];
    Expr value = dl({i, j, m, q}) - dl({i, j, q, m});
    for (int a = 0; a < n; ++a) value += l({a, j, m}) * l({i, a, q}) - l({a, j, q}) * l({i, a, m});
    return value;
  });
}

TensorField ricci(const TensorField& curvature) {
  if (curvature.up() != 1 || curvature.down() != 3) throw TensorShapeError("ricci: expected a (1,3) tensor");
  return contract(curvature, {0, 3});
}

TensorField curvature_family_K(const ConnectionSpace& space, const CurvatureCoefficients& c) {
  const int n = space.dim();
  const TensorField& tor = space.torsion();
  if (tor.is_zero()) return space.curvature();
  // dt[i,j,m,n] = T^i_jm|n
  TensorField dt = covariant_derivative(tor, space);
  const Expr u(c.u);
  const Expr up(c.u_prime);
  const Expr v(c.v);
  const Expr vp(c.v_prime);
  const Expr w(c.w);
  const TensorField& r = space.curvature();
  return TensorField::generate(n, 1, 3, [&](const Index& idx) {
    const int i = idx[0];
    const int j = idx[1];
    const int m = idx[2];
    const int q = idx[3];
    Expr value = r.at(idx) + u * dt({i, j, m, q}) + up * dt({i, j, q, m});
    Expr sv;
    Expr svp;
    Expr sw;
    for (int a = 0; a < n; ++a) {
      sv += tor({a, j, m}) * tor({i, a, q});
      svp += tor({a, j, q}) * tor({i, a, m});
      sw += tor({a, m, q}) * tor({i, a, j});
    }
    return value + v * sv + vp * svp + w * sw;
  });
}

}  // namespace affinv
