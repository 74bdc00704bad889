#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "affinv/analysis.hpp"
#include "affinv/io.hpp"

namespace affinv {

/// Output of one command: plain text, the same content as JSON, and the
/// process exit status (0 success, 1 verification violation).
struct Report {
  std::string text;
  nlohmann::json json;
  int exit_code = 0;
};

nlohmann::json tensor_json(const TensorField& t, const std::string& name);

struct InvariantsOptions {
  std::string invariant = "thomas-geodesic";
  int p = 2;
  ClassSelector selector;
  CurvatureCoefficients coeffs;
};

/// Invariant names accepted by invariants_report.
const std::vector<std::string>& invariant_names();

/// Computes one invariant of the space. Without a mapping, class 2 uses the
/// geodesic omega of the space and tau = 0; class 3 and the sigma / a based
/// invariants need a mapping (MissingDataError otherwise).
Report invariants_report(const SpaceFile& space, const std::optional<MappingSpec>& mapping, const InvariantsOptions& opt);

/// Runs the default verification suite of the mapping kind.
Report verify_report(const SpaceFile& space, const MappingSpec& mapping, const CurvatureCoefficients& family_coeffs,
                     int points, std::uint64_t seed);

Report example1_report();
/// With no mapping the built-in pi~1 mapping is used.
Report example2_report(const std::optional<AlmostGeodesicPi1>& mapping, int points, std::uint64_t seed);

Report rank_report(const CurvatureCoefficients& c);

}  // namespace affinv
