#include <doctest.h>

#include <set>

#include "../support.hpp"
#include "affinv/invariants.hpp"
#include "affinv/metric.hpp"
#include "affinv/worked_examples.hpp"

using namespace affinv;
using namespace testing_support;

namespace {

SideData random_side(Rng& rng, int n, bool with_tau) {
  SideData d;
  d.omega2 = random_symmetric(rng, n, 1, 2, 1, 2);
  d.deformation = random_symmetric(rng, n, 1, 2, 1, 2);
  d.tau = with_tau ? random_antisymmetric(rng, n, 1, 2, 1, 2) : TensorField(n, 1, 2);
  return d;
}

ClassSelector random_selector(Rng& rng, int p) {
  ClassSelector s;
  s.p = p;
  for (int r = 0; r < 3; ++r) {
    s.p1[r] = uniform(rng, 1, 2);
    s.p2[r] = uniform(rng, 1, 2);
  }
  return s;
}

/// Unique trace-free completion of R for a symmetric connection, with
/// R_jm = R^a_jma: W = R + 1/(N+1) delta^i_j (R_mn - R_nm)
///                      + delta^i_m Y_jn - delta^i_n Y_jm,  Y = (N R + R^T)/(N^2 - 1).
TensorField projective_weyl(const TensorField& sym_connection) {
  const int n = sym_connection.dim();
  TensorField r = curvature_tensor(sym_connection);
  TensorField ric = ricci(r);
  const Expr c1(mpq_class(1, n + 1));
  const Expr cy(mpq_class(1, n * n - 1));
  auto y = [&](int a, int b) { return cy * (Expr(n) * ric({a, b}) + ric({b, a})); };
  return build_13(n, [&](int i, int j, int m, int k) {
    return r({i, j, m, k}) + c1 * delta(i, j) * (ric({m, k}) - ric({k, m})) + delta(i, m) * y(j, k) -
           delta(i, k) * y(j, m);
  });
}

TensorField quad(const TensorField& p) {
  const int n = p.dim();
  return build_13(n, [&](int i, int j, int m, int k) {
    Expr v;
    for (int a = 0; a < n; ++a) v += p({a, j, m}) * p({i, a, k}) - p({a, j, k}) * p({i, a, m});
    return v;
  });
}

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("class selectors") {
  auto all = ClassSelector::all(2);
  CHECK(all.size() == 64);
  std::set<std::string> names;
  for (const auto& s : all) names.insert(s.to_string());
  CHECK(names.size() == 64);
  CHECK(all.front().p1 == std::array<int, 3>{1, 1, 1});
  CHECK(all.back().p2 == std::array<int, 3>{2, 2, 2});
  ClassSelector bad;
  bad.p1[1] = 3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ClassSelector{};
  bad.p = 4;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("decomposition T_(p) = T~_(p) + T^") {
  Rng rng(71);
  for (int k = 0; k < 5; ++k) {
    ConnectionSpace s = random_connection(rng, 3);
    SideData d = random_side(rng, 3, true);
    for (int p = 1; p <= 3; ++p)
      CHECK(thomas_general(p, s, d).components ==
            thomas_basic(p, s, d).components + thomas_antisym(s, d.tau).components);
  }
}

TEST_CASE("basic Thomas objects") {
  Rng rng(72);
  ConnectionSpace s = random_connection(rng, 3);
  SideData d = random_side(rng, 3, false);
  CHECK(thomas_basic(1, s, d).components.is_zero());
  CHECK(thomas_basic(2, s, d).components == s.symmetric() - *d.omega2);
  CHECK(thomas_basic(3, s, d).components == s.symmetric() + scale(*d.deformation, mpq_class(1, 2)));
  CHECK(thomas_antisym(s, d.tau).components == s.torsion());
  SideData empty;
  empty.tau = TensorField(3, 1, 2);
  CHECK_THROWS_AS(thomas_basic(2, s, empty), MissingDataError);
  CHECK_THROWS_AS(thomas_basic(3, s, empty), MissingDataError);
}

TEST_CASE("Thomas projective parameter") {
  Rng rng(73);
  ConnectionSpace s = random_connection(rng, 3);
  const TensorField& g = s.symmetric();
  TensorField t = thomas_geodesic(s).components;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Expr trk, trj;
        for (int a = 0; a < 3; ++a) {
          trk += g({a, k, a});
          trj += g({a, j, a});
        }
        CHECK(t({i, j, k}) == g({i, j, k}) - Expr(mpq_class(1, 4)) * (delta(i, j) * trk + delta(i, k) * trj));
      }
  // trace-free
  CHECK(contract(t, {0, 2}).is_zero());
}

TEST_CASE("second-class Weyl object is the projective Weyl tensor of L - sigma") {
  Rng rng(74);
  for (int k = 0; k < 3; ++k) {
    ConnectionSpace s = random_connection(rng, 3, 1);
    TensorField sigma = random_symmetric(rng, 3, 1, 2, 1, 2, 1);
    TensorField w = weyl_derived_second(s, sigma).components;
    CHECK(w == projective_weyl(s.symmetric() - sigma));
    CHECK(contract(w, {0, 3}).is_zero());
    CHECK(contract(w, {0, 1}).is_zero());
    CHECK(is_antisymmetric(w, 2, 3));
  }
}

TEST_CASE("second-class Thomas object") {
  Rng rng(75);
  ConnectionSpace s = random_connection(rng, 3);
  TensorField sigma = random_symmetric(rng, 3, 1, 2, 1, 2);
  TensorField h = s.symmetric() - sigma;
  TensorField t = thomas_derived_second(s, sigma).components;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Expr trj, trk;
        for (int a = 0; a < 3; ++a) {
          trj += h({a, j, a});
          trk += h({a, k, a});
        }
        CHECK(t({i, j, k}) == h({i, j, k}) - Expr(mpq_class(1, 4)) * (trj * delta(i, k) + trk * delta(i, j)));
      }
}

TEST_CASE("example space: W~_(2) closed form") {
  ConnectionSpace s = generalized_christoffel(GeneralizedMetric(example1_metric()));
  SideData d;
  d.omega2 = omega_geodesic(s);
  d.tau = TensorField(3, 1, 2);
  TensorField w = weyl_basic(2, s, d).components;
  auto inv = [](int j) { return Expr(1) / Expr::coordinate(j); };
  // ((x^j)^{-1})_{|n}: partial derivative minus Gamma^a_jn (x^a)^{-1}
  auto dinv = [&](int j, int n) {
    Expr v = inv(j).diff(n);
    for (int a = 0; a < 3; ++a) v -= s.symmetric()({a, j, n}) * inv(a);
    return v;
  };
  const Expr c(mpq_class(1, 16));
  TensorField expect = build_13(3, [&](int i, int j, int m, int n) {
    return -c * delta(i, m) * (Expr(4) * dinv(j, n) + inv(j) * inv(n)) +
           c * delta(i, n) * (Expr(4) * dinv(j, m) + inv(j) * inv(m));
  });
  CHECK(w == expect);
  CHECK(!w.is_zero());
}

TEST_CASE("Weyl basic objects are antisymmetric in m, n") {
  Rng rng(76);
  ConnectionSpace s = random_connection(rng, 3, 1);
  SideData d = random_side(rng, 3, false);
  for (int p = 1; p <= 3; ++p) {
    CHECK(is_antisymmetric(weyl_basic(p, s, d).components, 2, 3));
    CHECK(is_antisymmetric(weyl_basic_full(p, s, d).components, 2, 3));
  }
  CHECK(weyl_basic(1, s, d).components.is_zero());
  CHECK(weyl_basic(2, s, d).components == weyl_basic_full(2, s, d).components);
}

TEST_CASE("class 3: full form minus reduced form is the quadratic term") {
  Rng rng(77);
  ConnectionSpace s = random_connection(rng, 3, 1);
  SideData d = random_side(rng, 3, false);
  TensorField diff = weyl_basic_full(3, s, d).components - weyl_basic(3, s, d).components;
  CHECK(diff == scale(quad(*d.deformation), mpq_class(1, 4)));
}

TEST_CASE("almost geodesic object") {
  ConnectionSpace src(christoffel_symbols(GeneralizedMetric(example2_metric())));
  AlmostGeodesicPi1 m = example2_mapping();
  TensorField w = weyl_almost_geodesic(src, m.a).components;
  TensorField expect = build_13(3, [&](int i, int j, int mm, int n) {
    const Expr h(mpq_class(1, 2));
    return src.curvature()({i, j, mm, n}) + h * delta(i, n) * m.a({j, mm}) - h * delta(i, mm) * m.a({j, n});
  });
  CHECK(w == expect);
  // On this space the class-3 objects differ from it only by quadratic deformation terms.
  SideData d;
  d.deformation = m.deformation;
  d.tau = TensorField(3, 1, 2);
  TensorField q = quad(m.deformation);
  CHECK(!q.is_zero());
  CHECK(weyl_basic(3, src, d).components - w == scale(q, mpq_class(-1, 2)));
  CHECK(weyl_basic_full(3, src, d).components - w == scale(q, mpq_class(-1, 4)));
}

TEST_CASE("family assembled from the basis equals the direct form") {
  Rng rng(78);
  ConnectionSpace s = random_connection(rng, 3, 1);
  SideData d = random_side(rng, 3, true);
  CurvatureCoefficients c{1, 2, 3, 5, 7};
  for (int p = 1; p <= 3; ++p) {
    FamilyBasis b = family_basis(p, s, d);
    for (int k = 0; k < 6; ++k) {
      ClassSelector sel = random_selector(rng, p);
      CHECK(family_from_basis(b, sel, c) == weyl_family(sel, c, s, d).components);
    }
  }
}

TEST_CASE("family with zero coefficients is the basic object") {
  Rng rng(79);
  ConnectionSpace s = random_connection(rng, 3, 1);
  SideData d = random_side(rng, 3, true);
  for (int p = 1; p <= 3; ++p) {
    ClassSelector sel = random_selector(rng, p);
    CHECK(weyl_family(sel, {}, s, d).components == weyl_basic(p, s, d).components);
  }
}

TEST_CASE("equitorsion and K forms equal the direct form when tau = 0") {
  Rng rng(80);
  ConnectionSpace s = random_connection(rng, 3, 1);
  SideData d = random_side(rng, 3, false);
  CurvatureCoefficients c{1, 2, 3, 5, 7};
  for (int k = 0; k < 6; ++k) {
    ClassSelector sel = random_selector(rng, 2);
    TensorField direct = weyl_family(sel, c, s, d).components;
    CHECK(weyl_family_equitorsion(sel, c, s, d).components == direct);
    CHECK(weyl_family_k_form(sel, c, s, d).components == direct);
  }
}

TEST_CASE("family is affine-linear in the coefficients") {
  Rng rng(81);
  ConnectionSpace s = random_connection(rng, 3, 1);
  SideData d = random_side(rng, 3, true);
  ClassSelector sel = random_selector(rng, 2);
  CurvatureCoefficients c1{1, -2, 3, mpq_class(1, 3), 2}, c2{mpq_class(-1, 2), 5, 0, 4, -1};
  CurvatureCoefficients sum{c1.u + c2.u, c1.u_prime + c2.u_prime, c1.v + c2.v, c1.v_prime + c2.v_prime, c1.w + c2.w};
  auto f = [&](const CurvatureCoefficients& c) { return weyl_family(sel, c, s, d).components; };
  CHECK((f(sum) - f(c1) - f(c2) + f({})).is_zero());
}

TEST_CASE("family rows") {
  CurvatureCoefficients c{1, 2, 3, 5, 7};
  ClassSelector sel;  // all ones
  auto row = family_row(sel, c);
  CHECK(row[0] == 1);
  CHECK(row[1] == 1);
  CHECK(row[2] == 2);
  CHECK(row[3] == 3);
  CHECK(row[4] == 5);
  CHECK(row[5] == 7);
  CHECK(row[6] == -1);
  CHECK(row[8] == 1);
  CHECK(row[10] == -2);
  CHECK(row[12] == 2);
  CHECK(row[14] == 3);
  CHECK(family_column_legend().size() == kFamilyColumns);
}

}  // TEST_SUITE
