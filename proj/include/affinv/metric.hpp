#pragma once

#include <memory>
#include <stdexcept>

#include "affinv/connection.hpp"

namespace affinv {

/// The symmetric part of a metric has identically vanishing determinant.
class SingularMetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Determinant of a square (0,2), (2,0) or (1,1) tensor read as a matrix.
Expr determinant(const TensorField& m);

/// Exact inverse of a symmetric (0,2) tensor as adjugate / determinant;
/// returns the (2,0) tensor g^ij. Singularity is functional: it is raised
/// only when the determinant is the zero function.
TensorField invert_symmetric(const TensorField& g_sym);

/// Possibly non-symmetric metric g_ij of a generalized Riemannian space.
class GeneralizedMetric {
 public:
  explicit GeneralizedMetric(TensorField g);

  int dim() const { return data_->g.dim(); }
  const TensorField& g() const { return data_->g; }
  const TensorField& symmetric() const { return data_->sym; }
  const TensorField& antisymmetric() const { return data_->antisym; }
  /// g^ij with g^ia g_(aj) = delta^i_j.
  const TensorField& inverse() const { return data_->inverse; }

 private:
  struct Data {
    TensorField g;
    TensorField sym;
    TensorField antisym;
    TensorField inverse;
  };
  std::shared_ptr<const Data> data_;
};

/// Gamma^i_jk = 1/2 g^ia (g_ja,k - g_jk,a + g_ak,j) with the full metric.
TensorField christoffel_symbols(const GeneralizedMetric& metric);
inline ConnectionSpace generalized_christoffel(const GeneralizedMetric& metric) {
  return ConnectionSpace(christoffel_symbols(metric));
}

}  // namespace affinv
