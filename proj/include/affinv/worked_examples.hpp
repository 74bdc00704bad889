#pragma once

#include "affinv/mappings.hpp"
#include "affinv/metric.hpp"

namespace affinv {

/// Non-symmetric metric on R^3:
///   [ x1^2   x1    x2  ]
///   [ -x1   x2^2   x3  ]
///   [ -x2   -x3   x3^2 ]
TensorField example1_metric();

/// The symmetric part diag(x1^2, x2^2, x3^2) of the metric above.
TensorField example2_metric();

/// An almost geodesic (pi~1) mapping of the example 2 space:
/// psi_j = 2 x_j / (1 + x1^2 + x2^2 + x3^2) (so psi_j|k = -psi_j psi_k),
/// P = psi delta + delta psi and a = 2 psi psi.
AlmostGeodesicPi1 example2_mapping();

}  // namespace affinv
