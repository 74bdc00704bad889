#include <doctest.h>

#include "../support.hpp"
#include "affinv/mappings.hpp"
#include "affinv/metric.hpp"
#include "affinv/worked_examples.hpp"

using namespace affinv;
using namespace testing_support;

namespace {

SecondClass random_second_class(Rng& rng, int n) {
  return {random_one_form(rng, n), random_symmetric(rng, n, 1, 2, 1, 2), std::nullopt, std::nullopt};
}

}  // namespace

TEST_SUITE("mappings") {

TEST_CASE("deformation round-trip for every kind") {
  Rng rng(61);
  for (int k = 0; k < 4; ++k) {
    ConnectionSpace src = random_connection(rng, 3);
    TensorField tau = random_antisymmetric(rng, 3, 1, 2, 1, 2);
    TensorField tau_bar = random_antisymmetric(rng, 3, 1, 2, 1, 2);
    std::vector<MappingSpec> specs{
        EquitorsionGeodesic{random_one_form(rng, 3)},
        random_second_class(rng, 3),
        General{random_symmetric(rng, 3, 1, 2, 1, 2), tau, tau_bar},
    };
    for (const auto& spec : specs) {
      MappingInstance inst(src, spec);
      CHECK(deformation_tensor(inst.source(), inst.target()) == spec_deformation(spec, 3));
      CHECK(inst.deformation() == spec_deformation(spec, 3));
    }
    MappingInstance gen(src, specs[2]);
    CHECK(gen.torsion_deformation() == tau_bar - tau);
    CHECK(gen.target().torsion() - src.torsion() == tau_bar - tau);
    CHECK(!gen.is_equitorsion());
  }
}

TEST_CASE("equitorsion specs keep the torsion") {
  Rng rng(62);
  ConnectionSpace src = random_connection(rng, 3);
  MappingInstance geo(src, EquitorsionGeodesic{random_one_form(rng, 3)});
  MappingInstance sc(src, random_second_class(rng, 3));
  CHECK(geo.is_equitorsion());
  CHECK(sc.is_equitorsion());
  CHECK(geo.target().torsion() == src.torsion());
  CHECK(sc.target().torsion() == src.torsion());
}

TEST_CASE("geodesic mapping: psi recovered, residual zero") {
  Rng rng(63);
  ConnectionSpace src = random_connection(rng, 3);
  TensorField psi = random_one_form(rng, 3);
  MappingInstance inst(src, EquitorsionGeodesic{psi});
  CHECK(psi_from_connections(inst.source(), inst.target()) == psi);
  CHECK(geodesic_residual(inst.source(), inst.target()).is_zero());
  CHECK(inst.target().symmetric() - src.symmetric() == delta_psi(psi));
  // a non-geodesic deformation leaves a residual
  MappingInstance other(src, random_second_class(rng, 3));
  CHECK(!geodesic_residual(other.source(), other.target()).is_zero());
}

TEST_CASE("omega of a geodesic mapping changes by psi delta + delta psi") {
  Rng rng(64);
  ConnectionSpace src = random_connection(rng, 3);
  TensorField psi = random_one_form(rng, 3);
  MappingInstance inst(src, EquitorsionGeodesic{psi});
  CHECK(omega_geodesic(inst.target()) - omega_geodesic(src) == delta_psi(psi));
}

TEST_CASE("example almost geodesic mapping satisfies its condition") {
  ConnectionSpace src(christoffel_symbols(GeneralizedMetric(example2_metric())));
  CHECK(src.curvature().is_zero());
  AlmostGeodesicPi1 m = example2_mapping();
  CHECK(pi1_residual(src, m.deformation, m.a).is_zero());
  CHECK_NOTHROW(MappingInstance(src, m));
  AlmostGeodesicPi1 wrong = m;
  wrong.a = scale(m.a, 2);
  CHECK_THROWS_AS(MappingInstance(src, wrong), MappingSpecError);
}

TEST_CASE("declared symmetries are enforced") {
  Rng rng(65);
  ConnectionSpace src = random_connection(rng, 3);
  TensorField bad(3, 1, 2);
  bad.set({0, 1, 2}, Expr(1));
  CHECK_THROWS_AS(MappingInstance(src, SecondClass{TensorField(3, 0, 1), bad, std::nullopt, std::nullopt}),
                  MappingSpecError);
  CHECK_THROWS_AS(MappingInstance(src, General{bad, TensorField(3, 1, 2), TensorField(3, 1, 2)}), MappingSpecError);
  TensorField sym_tau(3, 1, 2);
  sym_tau.set({0, 1, 1}, Expr(1));
  CHECK_THROWS_AS(MappingInstance(src, General{TensorField(3, 1, 2), sym_tau, sym_tau}), MappingSpecError);
  CHECK_THROWS_AS(MappingInstance(src, EquitorsionGeodesic{TensorField(3, 1, 0)}), MappingSpecError);
}

TEST_CASE("side data") {
  Rng rng(66);
  ConnectionSpace src = random_connection(rng, 3);
  SecondClass sc = random_second_class(rng, 3);
  MappingInstance inst(src, sc);
  SideData s = source_data(inst), t = target_data(inst);
  REQUIRE(s.omega2.has_value());
  REQUIRE(t.omega2.has_value());
  CHECK(*s.omega2 == delta_psi(sc.rho) + sc.sigma);
  CHECK(*t.omega2 - *s.omega2 == sym_part(inst.deformation(), 1, 2));
  CHECK(*s.deformation == -*t.deformation);
  CHECK(omega_object(3, src, s) == scale(*s.deformation, mpq_class(-1, 2)));
  CHECK(omega_object(1, src, s) == src.symmetric());
  CHECK(kind_name(inst.kind()) == "second-class");
  CHECK(parse_kind("almost-geodesic-pi1") == MappingKind::almost_geodesic_pi1);
  CHECK(!parse_kind("projective").has_value());
}

}  // TEST_SUITE
