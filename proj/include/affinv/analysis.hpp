#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "affinv/invariants.hpp"

namespace affinv {

using Point = std::vector<mpq_class>;

/// Which written form of the Weyl family to evaluate.
enum class FamilyForm { direct, equitorsion, k_form };

/// One invariant to compute on both sides of a mapping.
struct InvariantRequest {
  InvariantKind kind = InvariantKind::thomas_basic;
  int p = 2;
  ClassSelector selector;
  CurvatureCoefficients coeffs;
  FamilyForm form = FamilyForm::direct;

  std::string label() const;
};

/// Evaluates the request on one side. Kinds that need class data (sigma,
/// tau, a, omega) read it from `data`.
InvariantResult compute_invariant(const InvariantRequest& req, const ConnectionSpace& space, const SideData& data);

/// Exact values of all components at a point (row-major). Throws PoleError.
std::vector<mpq_class> evaluate(const TensorField& t, const Point& point, Execution exec = default_execution());

struct PointOutcome {
  Point point;
  bool skipped = false;  // a pole on either side
  mpq_class max_discrepancy = 0;
};

struct Witness {
  Index component{};
  int rank = 0;
  Point point;
  mpq_class source_value;
  mpq_class target_value;
};

struct VerificationReport {
  std::string invariant;
  std::string mapping;
  std::vector<PointOutcome> points;
  bool exact_equal = true;
  std::optional<Witness> witness;
  std::vector<std::string> notes;

  std::size_t points_used() const;
};

/// Raised when every sample point hits a pole.
class NoUsablePointsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Computes the invariant on the source (with source_data) and on the
/// target (with target_data) and compares exact values componentwise at
/// every point. Points are evaluated independently; the report lists them
/// in input order.
VerificationReport invariance_check(const MappingInstance& inst, const InvariantRequest& req,
                                    std::span<const Point> points, Execution exec = default_execution());

/// Same comparison for already computed source/target tensors.
VerificationReport compare_at_points(const TensorField& source, const TensorField& target,
                                     std::span<const Point> points, Execution exec = default_execution());

/// Verifies all 64 (p1, p2) family members at class p using the term
/// basis of each side; one report per selector, in ClassSelector::all order.
std::vector<VerificationReport> family_sweep(const MappingInstance& inst, int p, const CurvatureCoefficients& c,
                                             std::span<const Point> points, Execution exec = default_execution());

/// Requests applicable to the instance's mapping kind, plus notes for the
/// suites that were skipped.
struct Suite {
  std::vector<InvariantRequest> requests;
  bool family = false;  // run family_sweep at p = 2
  std::vector<std::string> skipped;
};
Suite default_suite(const MappingInstance& inst, const CurvatureCoefficients& family_coeffs);

struct SuiteReport {
  std::vector<VerificationReport> reports;
  std::vector<std::string> skipped;
  bool all_equal() const;
};
SuiteReport run_suite(const MappingInstance& inst, const CurvatureCoefficients& family_coeffs,
                      std::span<const Point> points, Execution exec = default_execution());

/// Reproducible sample points: each coordinate is p/q with p, q uniform in
/// [1, 10], drawn from a seeded 64-bit Mersenne twister.
inline constexpr std::uint64_t kDefaultSeed = 20190901;
inline constexpr int kDefaultPoints = 5;
std::vector<Point> sample_points(int dim, int count, std::uint64_t seed = kDefaultSeed);

using RationalMatrix = std::vector<std::vector<mpq_class>>;

struct CoefficientMatrix {
  std::vector<ClassSelector> selectors;  // row labels
  RationalMatrix rows;                   // 64 x kFamilyColumns
  std::size_t row_count() const { return rows.size(); }
  std::size_t column_count() const { return rows.empty() ? 0 : rows.front().size(); }
};

/// One row per (p1, p2) combination (p fixed to 2; the rows do not depend on p).
CoefficientMatrix coefficient_matrix(const CurvatureCoefficients& c);

/// Exact rank over Q by fraction-free (Bareiss) elimination.
int rank_exact(const RationalMatrix& m);
inline int rank_exact(const CoefficientMatrix& m) { return rank_exact(m.rows); }

}  // namespace affinv
