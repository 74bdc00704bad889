#include <doctest.h>

#include <sstream>

#include "../support.hpp"
#include "affinv/io.hpp"
#include "affinv/report.hpp"

using namespace affinv;
using namespace testing_support;

#ifndef AFFINV_DATA_DIR
#define AFFINV_DATA_DIR "data"
#endif

namespace {

std::string data(const std::string& name) { return read_text_file(std::string(AFFINV_DATA_DIR) + "/" + name); }

/// Every "lhs = value" line of a text report has its value somewhere in the JSON.
void check_values_in_json(const Report& r) {
  const std::string dump = r.json.dump();
  std::istringstream in(r.text);
  std::string line;
  int seen = 0;
  while (std::getline(in, line)) {
    auto pos = line.find(" = ");
    if (pos == std::string::npos || line.find('[') == std::string::npos) continue;
    const std::string value = line.substr(pos + 3);
    CHECK_MESSAGE(dump.find(nlohmann::json(value).dump()) != std::string::npos, line);
    ++seen;
  }
  CHECK(seen > 0);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("space files round-trip byte for byte") {
  for (const char* name : {"example1.space", "example2.space", "flat.space"}) {
    SpaceFile f = parse_space(data(name));
    const std::string once = print_space(f);
    CHECK(print_space(parse_space(once)) == once);
    CHECK(parse_space(once).entries == f.entries);
  }
}

TEST_CASE("connection space files") {
  const std::string text = "dim 2\ncoord x1 x2\nconnection\n1 1 2 x1\n2 2 1 1/x2\n";
  SpaceFile f = parse_space(text);
  CHECK(f.block == SpaceFile::Block::connection);
  CHECK(print_space(f) == text);
  ConnectionSpace s = space_connection(f);
  CHECK(s.coefficients()({0, 0, 1}) == Expr::coordinate(0));
}

TEST_CASE("mapping files round-trip") {
  SpaceFile space = parse_space(data("example1.space"));
  for (const char* name : {"example1_geodesic.map", "second_class.map", "general_torsion.map", "example2_zero.map"}) {
    MappingSpec m = parse_mapping(data(name), space.dim);
    const std::string once = print_mapping(m);
    CHECK(print_mapping(parse_mapping(once, space.dim)) == once);
    CHECK(spec_deformation(parse_mapping(once, space.dim), 3) == spec_deformation(m, 3));
  }
  SpaceFile s2 = parse_space(data("example2.space"));
  MappingSpec pi1 = parse_mapping(data("example2_pi1.map"), s2.dim);
  CHECK(print_mapping(pi1) == data("example2_pi1.map"));
}

TEST_CASE("input errors carry the line") {
  auto line_of = [](const std::string& text, bool mapping) {
    try {
      if (mapping)
        parse_mapping(text, 3);
      else
        parse_space(text);
    } catch (const InputError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("dim 3\ncoord x1 x2 x3\nmetric\n1 1 x1^\n", false) == 4);
  CHECK(line_of("dim 3\ncoord x1 x2 x3\nmetric\n4 1 x1\n", false) == 4);
  CHECK(line_of("dim 3\ncoord x1 x2 x3\nmetric\n1 1 x1\n1 1 x2\n", false) == 5);
  CHECK(line_of("dim 3\ncoord x1 x2\nmetric\n", false) == 2);
  CHECK(line_of("mapping geodesic\nrho 1 x1\n", true) == 2);
  CHECK(line_of("mapping projective\n", true) == 1);
  CHECK_THROWS_AS(parse_mapping(data("broken_symmetry.map"), 3), InputError);
  CHECK_THROWS_AS(read_text_file("/nonexistent/file"), InputError);
}

TEST_CASE("general mappings default tau_bar to tau") {
  MappingSpec m = parse_mapping("mapping general\nP 1 1 1 x1\ntau 1 2 3 x2\ntau 1 3 2 -x2\n", 3);
  const auto& g = std::get<General>(m);
  CHECK(g.tau_bar == g.tau);
}

}  // TEST_SUITE

TEST_SUITE("report") {

TEST_CASE("example 1 report") {
  Report r = example1_report();
  CHECK(r.exit_code == 0);
  CHECK(r.text.find("Gamma[1,2,3] (antisym) = 1/(2*x1^2)") != std::string::npos);
  CHECK(r.text.find("\nR = 0\n") != std::string::npos);
  CHECK(r.text.find("omega2[1,1,1] = 1/(2*x1)") != std::string::npos);
  check_values_in_json(r);
}

TEST_CASE("example 2 report carries the factor note") {
  Report r = example2_report(std::nullopt, 5, kDefaultSeed);
  CHECK(r.exit_code == 0);
  CHECK(r.text.find("factor 1/2") != std::string::npos);
  CHECK(r.text.find("exact-equal  weyl-almost-geodesic") != std::string::npos);
  check_values_in_json(r);
}

TEST_CASE("reports are deterministic") {
  SpaceFile space = parse_space(data("example1.space"));
  MappingSpec m = parse_mapping(data("second_class.map"), 3);
  Report a = verify_report(space, m, {1, 2, 3, 5, 7}, 3, kDefaultSeed);
  Report b = verify_report(space, m, {1, 2, 3, 5, 7}, 3, kDefaultSeed);
  CHECK(a.text == b.text);
  CHECK(a.json == b.json);
  CHECK(a.exit_code == 0);
  CHECK(nlohmann::json::parse(a.json.dump()) == a.json);
}

TEST_CASE("invariants report") {
  SpaceFile space = parse_space(data("example1.space"));
  InvariantsOptions opt;
  Report r = invariants_report(space, std::nullopt, opt);
  CHECK(r.text.find("T[1,1,1] = 1/(2*x1)") != std::string::npos);
  check_values_in_json(r);
  opt.invariant = "weyl-basic";
  opt.p = 3;
  CHECK_THROWS_AS(invariants_report(space, std::nullopt, opt), MissingDataError);
}

TEST_CASE("rank report") {
  Report r = rank_report({1, 2, 3, 5, 7});
  CHECK(r.text.find("rank = 6") != std::string::npos);
  CHECK(r.text.find("columns = 16") != std::string::npos);
  CHECK(r.json["rank"] == 6);
}

}  // TEST_SUITE
