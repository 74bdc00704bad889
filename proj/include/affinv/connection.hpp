#pragma once

#include <memory>

#include "affinv/tensor.hpp"

namespace affinv {

/// Free parameters u, u', v, v', w of the curvature family K.
struct CurvatureCoefficients {
  mpq_class u = 0;
  mpq_class u_prime = 0;
  mpq_class v = 0;
  mpq_class v_prime = 0;
  mpq_class w = 0;

  friend bool operator==(const CurvatureCoefficients&, const CurvatureCoefficients&) = default;
};

/// Affine connection space with (possibly) non-symmetric coefficients
/// L^i_jk, stored as a (1,2) tensor with slots (i; j, k).
///
/// The symmetric part (the associated torsion-free connection), the torsion
/// part and the curvature R of the associated space are computed once at
/// construction. Copies share these caches.
class ConnectionSpace {
 public:
  explicit ConnectionSpace(TensorField coefficients);

  int dim() const { return data_->full.dim(); }
  const TensorField& coefficients() const { return data_->full; }
  /// L^i_(jk), symmetric in j,k.
  const TensorField& symmetric() const { return data_->sym; }
  /// L^i_[jk], antisymmetric in j,k.
  const TensorField& torsion() const { return data_->tor; }
  /// R^i_jmn of the associated space.
  const TensorField& curvature() const { return data_->curvature; }
  bool is_symmetric() const { return data_->tor.is_zero(); }

 private:
  struct Data {
    TensorField full;
    TensorField sym;
    TensorField tor;
    TensorField curvature;
  };
  std::shared_ptr<const Data> data_;
};

/// Covariant derivative with respect to a symmetric connection given by its
/// coefficients; adds one covariant slot (the derivative index) at the end.
TensorField covariant_derivative(const TensorField& t, const TensorField& connection);
/// Same, using the associated (symmetric) connection of the space.
TensorField covariant_derivative(const TensorField& t, const ConnectionSpace& space);

/// The four kinds of covariant derivative of a (1,1) tensor with respect to
/// the full non-symmetric connection. kind is 1..4:
///   1: a^i_j,k + L^i_ak a^a_j - L^a_jk a^i_a
///   2: a^i_j,k + L^i_ka a^a_j - L^a_kj a^i_a
///   3: a^i_j,k + L^i_ak a^a_j - L^a_kj a^i_a
///   4: a^i_j,k + L^i_ka a^a_j - L^a_jk a^i_a
TensorField covariant_derivative_kind(const TensorField& t, const ConnectionSpace& space, int kind);

/// R^i_jmn = L^i_jm,n - L^i_jn,m + L^a_jm L^i_an - L^a_jn L^i_am for a
/// symmetric coefficient tensor.
TensorField curvature_tensor(const TensorField& connection);
inline TensorField curvature_R(const ConnectionSpace& space) { return space.curvature(); }

/// Ricci contraction R_jm = R^a_jma (trace of the upper index with the last
/// lower index). With this convention R^a_amn = -(R_mn - R_nm).
TensorField ricci(const TensorField& curvature);

/// K = R + u T_jm|n + u' T_jn|m + v T^a_jm T^i_an + v' T^a_jn T^i_am + w T^a_mn T^i_aj
/// with T the torsion part and | the associated covariant derivative.
TensorField curvature_family_K(const ConnectionSpace& space, const CurvatureCoefficients& c);

}  // namespace affinv
