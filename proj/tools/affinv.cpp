// Command-line front end: invariants, verify, example, rank.
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "affinv/report.hpp"

using namespace affinv;

namespace {

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::array<int, 3> parse_triple(const std::string& s, const char* flag) {
  const auto parts = split_commas(s);
  if (parts.size() != 3) throw std::invalid_argument(std::string(flag) + " expects three comma-separated values");
  std::array<int, 3> out{};
  for (int i = 0; i < 3; ++i) {
    if (parts[i] != "1" && parts[i] != "2") throw std::invalid_argument(std::string(flag) + " entries must be 1 or 2");
    out[i] = parts[i][0] - '0';
  }
  return out;
}

std::vector<mpq_class> parse_rationals(const std::string& s, std::size_t count, const char* flag) {
  const auto parts = split_commas(s);
  if (parts.size() != count)
    throw std::invalid_argument(std::string(flag) + " expects " + std::to_string(count) + " comma-separated rationals");
  std::vector<mpq_class> out;
  for (const auto& p : parts) out.push_back(parse_rational(p));
  return out;
}

CurvatureCoefficients coefficients(const std::string& uu, const std::string& vvw) {
  CurvatureCoefficients c;
  const auto a = parse_rationals(uu, 2, "--uu");
  const auto b = parse_rationals(vvw, 3, "--vvw");
  c.u = a[0];
  c.u_prime = a[1];
  c.v = b[0];
  c.v_prime = b[1];
  c.w = b[2];
  return c;
}

int emit(const Report& r, bool as_json) {
  if (as_json)
    std::cout << r.json.dump(2) << '\n';
  else
    std::cout << r.text;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Thomas- and Weyl-type invariants of mappings of affine connection spaces"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output")->ignore_case();

  std::string space_path;
  std::string mapping_path;
  std::string invariant = "thomas-geodesic";
  int p = 2;
  std::string p1 = "1,1,1";
  std::string p2 = "1,1,1";
  std::string uu;
  std::string vvw;
  int points = kDefaultPoints;
  std::uint64_t seed = kDefaultSeed;
  int example_no = 1;

  auto* inv = app.add_subcommand("invariants", "compute one invariant of a space");
  inv->add_option("space", space_path, "space file")->required();
  inv->add_option("--mapping", mapping_path, "mapping file");
  inv->add_option("--invariant", invariant, "invariant name")->check(CLI::IsMember(invariant_names()));
  inv->add_option("--p", p, "class p")->check(CLI::Range(1, 3));
  inv->add_option("--p1", p1, "selector p1 as a,b,c");
  inv->add_option("--p2", p2, "selector p2 as a,b,c");
  inv->add_option("--uu", uu, "u,u'");
  inv->add_option("--vvw", vvw, "v,v',w");
  inv->add_flag("--json", as_json, "machine-readable output");

  auto* ver = app.add_subcommand("verify", "verify invariance under a mapping at exact sample points");
  ver->add_option("space", space_path, "space file")->required();
  ver->add_option("mapping", mapping_path, "mapping file")->required();
  ver->add_option("--points", points, "number of sample points")->check(CLI::Range(1, 1000));
  ver->add_option("--seed", seed, "sample point seed");
  ver->add_option("--uu", uu, "u,u' of the family sweep");
  ver->add_option("--vvw", vvw, "v,v',w of the family sweep");
  ver->add_flag("--json", as_json, "machine-readable output");

  auto* ex = app.add_subcommand("example", "worked examples 1 and 2");
  ex->add_option("number", example_no, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  ex->add_option("--mapping", mapping_path, "almost-geodesic-pi1 mapping file (example 2)");
  ex->add_option("--points", points, "number of sample points")->check(CLI::Range(1, 1000));
  ex->add_option("--seed", seed, "sample point seed");
  ex->add_flag("--json", as_json, "machine-readable output");

  auto* rk = app.add_subcommand("rank", "rank of the family coefficient matrix");
  rk->add_option("--uu", uu, "u,u'");
  rk->add_option("--vvw", vvw, "v,v',w");
  rk->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*inv) {
      const SpaceFile space = parse_space(read_text_file(space_path));
      std::optional<MappingSpec> mapping;
      if (!mapping_path.empty()) mapping = parse_mapping(read_text_file(mapping_path), space.dim);
      InvariantsOptions opt;
      opt.invariant = invariant;
      opt.p = p;
      opt.selector.p1 = parse_triple(p1, "--p1");
      opt.selector.p2 = parse_triple(p2, "--p2");
      opt.coeffs = coefficients(uu.empty() ? "0,0" : uu, vvw.empty() ? "0,0,0" : vvw);
      return emit(invariants_report(space, mapping, opt), as_json);
    }
    if (*ver) {
      const SpaceFile space = parse_space(read_text_file(space_path));
      const MappingSpec mapping = parse_mapping(read_text_file(mapping_path), space.dim);
      const auto c = coefficients(uu.empty() ? "1,2" : uu, vvw.empty() ? "3,5,7" : vvw);
      return emit(verify_report(space, mapping, c, points, seed), as_json);
    }
    if (*ex) {
      if (example_no == 1) return emit(example1_report(), as_json);
      std::optional<AlmostGeodesicPi1> spec;
      if (!mapping_path.empty()) {
        const MappingSpec m = parse_mapping(read_text_file(mapping_path), 3);
        if (!std::holds_alternative<AlmostGeodesicPi1>(m))
          throw InputError("example 2 needs an almost-geodesic-pi1 mapping", 0);
        spec = std::get<AlmostGeodesicPi1>(m);
      }
      return emit(example2_report(spec, points, seed), as_json);
    }
    if (*rk) return emit(rank_report(coefficients(uu.empty() ? "1,2" : uu, vvw.empty() ? "3,5,7" : vvw)), as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
