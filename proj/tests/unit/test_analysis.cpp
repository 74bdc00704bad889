#include <doctest.h>

#include "../support.hpp"
#include "affinv/analysis.hpp"
#include "affinv/metric.hpp"
#include "affinv/worked_examples.hpp"

using namespace affinv;
using namespace testing_support;

namespace {

MappingInstance example_geodesic() {
  ConnectionSpace s = generalized_christoffel(GeneralizedMetric(example1_metric()));
  TensorField psi(3, 0, 1);
  for (int j = 0; j < 3; ++j) psi.set({j}, Expr(1) / Expr::coordinate(j));
  return MappingInstance(s, EquitorsionGeodesic{psi});
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("rank_exact agrees with naive row reduction") {
  Rng rng(91);
  OracleTally t = rank_oracle(rng, 80);
  CHECK(t.checked >= 50);
  CHECK(t.failed == 0);
  CHECK(rank_exact(RationalMatrix{}) == 0);
  CHECK(naive_rank(RationalMatrix{{1, 2}, {2, 4}}) == 1);
}

TEST_CASE("coefficient matrix rank") {
  for (const CurvatureCoefficients& c :
       {CurvatureCoefficients{1, 2, 3, 5, 7}, CurvatureCoefficients{mpq_class(2, 3), -5, 11, mpq_class(1, 7), 13},
        CurvatureCoefficients{-3, mpq_class(9, 4), 0, 1, -2}}) {
    CoefficientMatrix m = coefficient_matrix(c);
    CHECK(m.row_count() == 64);
    CHECK(m.column_count() == kFamilyColumns);
    CHECK(rank_exact(m) == 6);
  }
  CHECK(rank_exact(coefficient_matrix({0, 0, 3, 5, 7})) == 1);
  CHECK(rank_exact(coefficient_matrix({1, 0, 3, 5, 7})) == 4);
}

TEST_CASE("sample points are reproducible and small") {
  auto a = sample_points(3, 5), b = sample_points(3, 5);
  CHECK(a == b);
  CHECK(a != sample_points(3, 5, 7));
  for (const auto& p : a)
    for (const auto& q : p) {
      CHECK(q > 0);
      CHECK(q <= 10);
      CHECK(q >= mpq_class(1, 10));
    }
}

TEST_CASE("compare_at_points reports a witness") {
  TensorField a(2, 1, 1), b(2, 1, 1);
  a.set({0, 1}, parse_expr("x1 + x2", 2));
  b.set({0, 1}, parse_expr("x1 + x2", 2));
  b.set({1, 1}, parse_expr("x1 - x2", 2));
  std::vector<Point> pts{{mpq_class(1), mpq_class(1)}, {mpq_class(2), mpq_class(1)}};
  CHECK(compare_at_points(a, a, pts).exact_equal);
  VerificationReport r = compare_at_points(a, b, pts);
  CHECK(!r.exact_equal);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->component[0] == 1);
  CHECK(r.witness->component[1] == 1);
  CHECK(r.witness->point == pts[1]);
  CHECK(r.witness->target_value == 1);
  CHECK(r.points_used() == 2);
}

TEST_CASE("pole points are skipped; all-pole input raises") {
  TensorField a(1, 0, 1);
  a.set({0}, parse_expr("1/(x1 - 1)", 1));
  std::vector<Point> pts{{mpq_class(1)}, {mpq_class(2)}};
  VerificationReport r = compare_at_points(a, a, pts);
  CHECK(r.points[0].skipped);
  CHECK(r.points_used() == 1);
  std::vector<Point> bad{{mpq_class(1)}};
  CHECK_THROWS_AS(compare_at_points(a, a, bad), NoUsablePointsError);
  CHECK_THROWS_AS(evaluate(a, bad[0]), PoleError);
}

TEST_CASE("geodesic suite is exact-equal, serial and parallel agree") {
  MappingInstance inst = example_geodesic();
  auto pts = sample_points(3, 5);
  CurvatureCoefficients c{1, 2, 3, 5, 7};
  SuiteReport par = run_suite(inst, c, pts, Execution::parallel);
  SuiteReport ser = run_suite(inst, c, pts, Execution::serial);
  CHECK(par.all_equal());
  REQUIRE(par.reports.size() == ser.reports.size());
  for (std::size_t k = 0; k < par.reports.size(); ++k) {
    CHECK(par.reports[k].invariant == ser.reports[k].invariant);
    CHECK(par.reports[k].exact_equal == ser.reports[k].exact_equal);
  }
  CHECK(par.reports.size() >= 64);
}

TEST_CASE("default suite contents") {
  Rng rng(92);
  ConnectionSpace s = random_connection(rng, 3, 1);
  MappingInstance geo(s, EquitorsionGeodesic{random_one_form(rng, 3, 1)});
  Suite sg = default_suite(geo, {1, 2, 3, 5, 7});
  CHECK(sg.family);
  bool has_geodesic = false;
  for (const auto& r : sg.requests) has_geodesic = has_geodesic || r.kind == InvariantKind::thomas_geodesic;
  CHECK(has_geodesic);
  TensorField tau = random_antisymmetric(rng, 3, 1, 2, 1, 2, 1);
  MappingInstance gen(s, General{TensorField(3, 1, 2), TensorField(3, 1, 2), tau});
  Suite sgen = default_suite(gen, {1, 2, 3, 5, 7});
  CHECK(sgen.skipped.size() == 2);
}

TEST_CASE("mutating the target is detected") {
  MappingInstance inst = example_geodesic();
  auto pts = sample_points(3, 3);
  InvariantRequest req;
  req.kind = InvariantKind::thomas_general;
  req.p = 2;
  TensorField l = inst.target().coefficients();
  Index idx{0, 1, 2};
  l.set(idx, l.at(idx) + Expr::coordinate(1));
  MappingInstance bad = MappingInstance::unchecked(inst.source(), inst.spec(), ConnectionSpace(l));
  CHECK(invariance_check(inst, req, pts).exact_equal);
  VerificationReport r = invariance_check(bad, req, pts);
  CHECK(!r.exact_equal);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->source_value != r.witness->target_value);
}

TEST_CASE("verdicts are deterministic") {
  MappingInstance inst = example_geodesic();
  auto pts = sample_points(3, 4);
  InvariantRequest req;
  req.kind = InvariantKind::weyl_family;
  req.selector.p1 = {2, 1, 2};
  req.coeffs = {1, 2, 3, 5, 7};
  auto a = invariance_check(inst, req, pts), b = invariance_check(inst, req, pts, Execution::serial);
  CHECK(a.exact_equal == b.exact_equal);
  CHECK(a.invariant == b.invariant);
  CHECK(a.points.size() == b.points.size());
}

TEST_CASE("family sweep covers 64 selectors") {
  MappingInstance inst = example_geodesic();
  auto pts = sample_points(3, 2);
  auto reports = family_sweep(inst, 2, {1, 2, 3, 5, 7}, pts);
  CHECK(reports.size() == 64);
  bool all = true;
  for (const auto& r : reports) all = all && r.exact_equal;
  CHECK(all);
}

}  // TEST_SUITE
