#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "affinv/connection.hpp"

namespace affinv {

/// A mapping spec whose declared symmetries, or the almost geodesic
/// condition, do not hold.
class MappingSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested data is not available for the invariant class.
class MissingDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Equitorsion geodesic mapping, P = psi_j delta^i_k + psi_k delta^i_j.
struct EquitorsionGeodesic {
  TensorField psi;  // (0,1)
};

/// Second-class mapping: symmetric deformation delta rho + delta rho + sigma.
/// Torsion data defaults to tau = 0, tau_bar = tau (equitorsion).
struct SecondClass {
  TensorField rho;    // (0,1)
  TensorField sigma;  // (1,2), symmetric in j,k
  std::optional<TensorField> tau;
  std::optional<TensorField> tau_bar;
};

/// Arbitrary symmetric deformation with explicit torsion data.
struct General {
  TensorField sym_deformation;  // (1,2), symmetric
  TensorField tau;              // (1,2), antisymmetric
  TensorField tau_bar;          // (1,2), antisymmetric
};

/// Almost geodesic mapping of type pi~1. The deformation is stored, and
/// validated against the defining second-order condition with a.
struct AlmostGeodesicPi1 {
  TensorField a;            // (0,2), symmetric
  TensorField deformation;  // (1,2), symmetric
};

using MappingSpec = std::variant<EquitorsionGeodesic, SecondClass, General, AlmostGeodesicPi1>;

enum class MappingKind { geodesic, second_class, general, almost_geodesic_pi1 };

MappingKind kind_of(const MappingSpec& spec);
/// File-format spelling: geodesic, second-class, general, almost-geodesic-pi1.
std::string kind_name(MappingKind kind);
std::optional<MappingKind> parse_kind(const std::string& name);

/// Full analytic deformation P^i_jk of the spec (symmetric part plus
/// tau_bar - tau).
TensorField spec_deformation(const MappingSpec& spec, int dim);

/// Checks shapes and declared symmetries; for pi~1 also the defining
/// condition against the given source. Throws MappingSpecError.
void validate_spec(const MappingSpec& spec, const ConnectionSpace& source);

/// Data entering the invariants on one side of the mapping. Each side is
/// built from its own connection plus its own copy of the class data.
struct SideData {
  std::optional<TensorField> omega2;      // omega_(2)
  std::optional<TensorField> deformation;  // symmetric deformation seen from this side (class 3)
  TensorField tau;                         // torsion object of the decomposition
  std::optional<TensorField> sigma;        // second-class sigma
  std::optional<TensorField> a;            // pi~1 tensor
};

class MappingInstance {
 public:
  /// Builds the target L_bar = L + P after validating the spec.
  MappingInstance(ConnectionSpace source, MappingSpec spec);

  /// Pairs a spec with an arbitrary target without checking that the
  /// deformation matches. Used to test that violations are detected.
  static MappingInstance unchecked(ConnectionSpace source, MappingSpec spec, ConnectionSpace target);

  const ConnectionSpace& source() const { return data_->source; }
  const ConnectionSpace& target() const { return data_->target; }
  const MappingSpec& spec() const { return data_->spec; }
  MappingKind kind() const { return kind_of(data_->spec); }
  int dim() const { return data_->source.dim(); }
  /// The spec's analytic deformation tensor.
  const TensorField& deformation() const { return data_->deformation; }
  /// xi = antisymmetric part of P = tau_bar - tau.
  const TensorField& torsion_deformation() const { return data_->xi; }
  bool is_equitorsion() const { return data_->xi.is_zero(); }

 private:
  struct Data {
    ConnectionSpace source;
    ConnectionSpace target;
    MappingSpec spec;
    TensorField deformation;
    TensorField xi;
  };
  explicit MappingInstance(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

inline MappingInstance apply_mapping(const ConnectionSpace& source, const MappingSpec& spec) {
  return MappingInstance(source, spec);
}

/// P = L_bar - L, componentwise.
TensorField deformation_tensor(const ConnectionSpace& source, const ConnectionSpace& target);

/// omega_(2) of a geodesic mapping computed intrinsically:
/// 1/(N+1) (delta^i_j G^a_ka + delta^i_k G^a_ja), G the symmetric part.
TensorField omega_geodesic(const ConnectionSpace& space);

/// psi_j = 1/(N+1) (G_bar^a_ja - G^a_ja), symmetric parts.
TensorField psi_from_connections(const ConnectionSpace& source, const ConnectionSpace& target);

/// P_sym - psi delta - delta psi for the psi recovered from the pair.
TensorField geodesic_residual(const ConnectionSpace& source, const ConnectionSpace& target);

/// Left minus right side of the pi~1 condition
///   P^i_nm|j + P^i_jm|n + P^a_jm P^i_an + P^a_nm P^i_aj - delta^i_j a_mn - delta^i_n a_mj
/// as a (1,3) tensor with slots (i; j, m, n).
TensorField pi1_residual(const ConnectionSpace& source, const TensorField& deformation, const TensorField& a);

/// Class data of the source side and of the target side of an instance.
SideData source_data(const MappingInstance& inst);
SideData target_data(const MappingInstance& inst);

/// omega_(p) of a space: p = 1 the symmetric part of its connection,
/// p = 2 the supplied omega, p = 3 minus half the side's deformation.
TensorField omega_object(int p, const ConnectionSpace& space, const SideData& data);

/// psi_j delta^i_k + psi_k delta^i_j.
TensorField delta_psi(const TensorField& psi);

}  // namespace affinv
