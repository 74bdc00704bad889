#pragma once

#include <array>
#include <string>
#include <vector>

#include "affinv/mappings.hpp"

namespace affinv {

/// Class selector (p; p1, p2). p picks the omega object of the basic part,
/// p1 = (p1_1, p1_2, p1_3) the omegas multiplying the u terms and
/// p2 = (p2_1, p2_2, p2_3) those multiplying the u' terms.
struct ClassSelector {
  int p = 2;
  std::array<int, 3> p1{1, 1, 1};
  std::array<int, 3> p2{1, 1, 1};

  /// Throws std::invalid_argument when out of range.
  void validate() const;
  std::string to_string() const;
  /// All 64 (p1, p2) combinations for a fixed p, p1 major, first entry slowest.
  static std::vector<ClassSelector> all(int p);

  friend bool operator==(const ClassSelector&, const ClassSelector&) = default;
};

enum class InvariantKind {
  thomas_basic,
  thomas_geodesic,
  thomas_derived,
  thomas_antisym,
  thomas_general,
  weyl_basic,
  weyl_derived,
  weyl_family,
  weyl_almost_geodesic,
};

std::string kind_name(InvariantKind kind);

struct InvariantResult {
  InvariantKind kind;
  TensorField components;
  /// Which object, class selector and coefficients produced the value.
  std::string provenance;
};

/// T~_(p) = L_sym - omega_(p). p = 1 gives 0, p = 3 gives (L_bar_sym + L_sym)/2.
InvariantResult thomas_basic(int p, const ConnectionSpace& space, const SideData& data);

/// Thomas projective parameter G - 1/(N+1) (delta^i_j G^a_ka + delta^i_k G^a_ja).
InvariantResult thomas_geodesic(const ConnectionSpace& space);

/// W~_(p) = R - w_jm|n + w_jn|m + w^a_jm w^i_an - w^a_jn w^i_am.
/// For p = 3 the quadratic terms are dropped (they are themselves invariant);
/// weyl_basic_full keeps them for every p.
InvariantResult weyl_basic(int p, const ConnectionSpace& space, const SideData& data);
InvariantResult weyl_basic_full(int p, const ConnectionSpace& space, const SideData& data);

/// Second-class Thomas invariant for omega = delta rho + delta rho + sigma:
/// L - sigma - 1/(N+1) ((L^a_ja - sigma^a_ja) delta^i_k + (L^a_ka - sigma^a_ka) delta^i_j),
/// L the symmetric part.
InvariantResult thomas_derived_second(const ConnectionSpace& space, const TensorField& sigma);

/// Second-class Weyl invariant for omega = delta rho + delta rho + sigma,
/// written out in R, the Ricci tensor R_jm = R^a_jma, and sigma.
InvariantResult weyl_derived_second(const ConnectionSpace& space, const TensorField& sigma);

/// T^ = L_vee - tau.
InvariantResult thomas_antisym(const ConnectionSpace& space, const TensorField& tau);

/// T_(p) = L - omega_(p) - tau (full L), so T_(p) = T~_(p) + T^.
InvariantResult thomas_general(int p, const ConnectionSpace& space, const SideData& data);

/// Weyl-type family member
///   W~_(p) + u (T^_jm|n - w1^i_an T^a_jm + w2^a_jn T^i_am)
///          + u' (T^_jn|m - w1'^i_am T^a_jn + w2'^a_jm T^i_an)
///          + (u w3 + u' w3')^a_mn T^i_ja
///          + v T^a_jm T^i_an + v' T^a_jn T^i_am + w T^a_mn T^i_aj
/// with T^ = L_vee - tau and w_r = omega_(p1_r), w_r' = omega_(p2_r).
InvariantResult weyl_family(const ClassSelector& sel, const CurvatureCoefficients& c, const ConnectionSpace& space,
                            const SideData& data);

/// The equitorsion form: the same expression written directly in L_vee
/// (tau ignored). Coincides with weyl_family when tau = 0.
InvariantResult weyl_family_equitorsion(const ClassSelector& sel, const CurvatureCoefficients& c,
                                        const ConnectionSpace& space, const SideData& data);

/// Equitorsion form written through the curvature family K:
///   K - w_jm|n + w_jn|m + w w - w w - u (w1 L_vee - w2 L_vee) - u' (w1' L_vee - w2' L_vee)
///   + (u w3 + u' w3') L_vee.
InvariantResult weyl_family_k_form(const ClassSelector& sel, const CurvatureCoefficients& c,
                                   const ConnectionSpace& space, const SideData& data);

/// R + 1/2 delta^i_n a_jm - 1/2 delta^i_m a_jn.
InvariantResult weyl_almost_geodesic(const ConnectionSpace& space, const TensorField& a);

/// Term basis of the family expansion. Column order:
///   0 W~_(p)           1 T^_jm|n          2 T^_jn|m
///   3 T^a_jm T^i_an    4 T^a_jn T^i_am    5 T^a_mn T^i_aj
///   6 L^i_an T^a_jm    7 w^i_an T^a_jm    8 L^a_jn T^i_am   9 w^a_jn T^i_am
///  10 L^i_am T^a_jn   11 w^i_am T^a_jn   12 L^a_jm T^i_an  13 w^a_jm T^i_an
///  14 L^a_mn T^i_ja   15 w^a_mn T^i_ja
/// with L the symmetric part (omega_(1)) and w = omega_(2).
inline constexpr int kFamilyColumns = 16;
const std::array<std::string, kFamilyColumns>& family_column_legend();

/// Coefficients of the 16 basis terms for one selector.
std::array<mpq_class, kFamilyColumns> family_row(const ClassSelector& sel, const CurvatureCoefficients& c);

/// The 16 basis tensors of a space (p fixes the W~ column).
struct FamilyBasis {
  int p = 2;
  std::array<TensorField, kFamilyColumns> terms;
};
FamilyBasis family_basis(int p, const ConnectionSpace& space, const SideData& data);

/// Family member assembled from the basis and family_row.
TensorField family_from_basis(const FamilyBasis& basis, const ClassSelector& sel, const CurvatureCoefficients& c);

}  // namespace affinv
