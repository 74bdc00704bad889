#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "affinv/mappings.hpp"
#include "affinv/metric.hpp"

namespace affinv {

/// Malformed input file; carries the 1-based line (0 when not line specific).
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, int line);
  int line() const { return line_; }

 private:
  int line_;
};

/// Space file:
///   dim N
///   coord x1 ... xN
///   metric            (then lines "i j <expr>")
/// or
///   connection        (then lines "i j k <expr>")
/// Unlisted entries are zero; '#' starts a comment.
struct SpaceFile {
  enum class Block { metric, connection };
  int dim = 0;
  Block block = Block::metric;
  TensorField entries;  // g_ij as (0,2) or L^i_jk as (1,2)
};

SpaceFile parse_space(std::string_view text);
/// Canonical text: nonzero entries in row-major order.
std::string print_space(const SpaceFile& f);
/// The connection of the file (generalized Christoffel symbols for a metric).
ConnectionSpace space_connection(const SpaceFile& f);

/// Mapping file:
///   mapping <geodesic|second-class|general|almost-geodesic-pi1>
/// then sparse entries "psi j <e>", "rho j <e>", "sigma i j k <e>",
/// "tau i j k <e>", "tau_bar i j k <e>", "a i j <e>", "P i j k <e>".
/// A keyword alone on a line declares an all-zero block.
///   geodesic:            psi
///   second-class:        rho and/or sigma, optional tau, tau_bar
///   general:             P, optional tau, tau_bar (tau_bar defaults to tau)
///   almost-geodesic-pi1: a, P
/// Symmetry constraints are checked on load.
MappingSpec parse_mapping(std::string_view text, int dim);
std::string print_mapping(const MappingSpec& spec);

std::string read_text_file(const std::string& path);

}  // namespace affinv
