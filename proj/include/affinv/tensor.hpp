#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "affinv/expr.hpp"
#include "affinv/parallel.hpp"

namespace affinv {

/// Mismatched dimensions, valences or slot choices.
class TensorShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxRank = 6;

/// 0-based component indices; contravariant slots first, then covariant.
using Index = std::array<int, kMaxRank>;

/// A slot pair used for contraction (one upper, one lower).
struct IndexPair {
  int first;
  int second;
};

/// Dense (r,s)-valent field of Exprs over an N-dimensional chart.
///
/// Slot convention: the r contravariant slots come first, then the s
/// covariant slots, each in declaration order. Components are stored
/// row-major, so the last slot varies fastest.
class TensorField {
 public:
  using Generator = std::function<Expr(const Index&)>;

  TensorField() = default;
  /// The zero tensor.
  TensorField(int dim, int up, int down);

  /// Fills every component from fn; components are independent and may be
  /// computed concurrently.
  static TensorField generate(int dim, int up, int down, const Generator& fn,
                              Execution exec = default_execution());

  int dim() const { return dim_; }
  int up() const { return up_; }
  int down() const { return down_; }
  int rank() const { return up_ + down_; }
  std::size_t size() const { return components_.size(); }

  const Expr& operator()(std::initializer_list<int> idx) const;
  const Expr& at(const Index& idx) const { return components_[flatten(idx)]; }
  const Expr& flat(std::size_t k) const { return components_[k]; }
  void set(const Index& idx, Expr value) { components_[flatten(idx)] = std::move(value); }
  void set(std::initializer_list<int> idx, Expr value);

  std::size_t flatten(const Index& idx) const;
  Index unflatten(std::size_t k) const;

  bool is_zero() const;
  bool same_shape(const TensorField& o) const {
    return dim_ == o.dim_ && up_ == o.up_ && down_ == o.down_;
  }

  /// Componentwise map.
  TensorField map(const std::function<Expr(const Expr&)>& fn, Execution exec = default_execution()) const;

  TensorField operator-() const;
  friend TensorField operator+(const TensorField& a, const TensorField& b);
  friend TensorField operator-(const TensorField& a, const TensorField& b);
  friend TensorField operator*(const Expr& s, const TensorField& t);
  friend bool operator==(const TensorField& a, const TensorField& b);

 private:
  int dim_ = 0;
  int up_ = 0;
  int down_ = 0;
  std::vector<Expr> components_;
};

TensorField scale(const TensorField& t, const mpq_class& c);

/// 1/2 (T + T with slots a, b exchanged); both slots must share variance.
TensorField sym_part(const TensorField& t, int a, int b);
/// 1/2 (T - T with slots a, b exchanged).
TensorField antisym_part(const TensorField& t, int a, int b);
/// Slots a, b exchanged.
TensorField swap_slots(const TensorField& t, int a, int b);

/// Trace over one contravariant and one covariant slot.
TensorField contract(const TensorField& t, IndexPair pair);
/// Result slots: A's upper, B's upper, A's lower, B's lower.
TensorField outer_product(const TensorField& a, const TensorField& b);
/// delta^i_j as a (1,1) tensor.
TensorField kronecker_delta(int dim);

bool is_symmetric(const TensorField& t, int a, int b);
bool is_antisymmetric(const TensorField& t, int a, int b);

/// Listing of the nonzero components, one `name[i,j,k] = expr` per line,
/// indices 1-based, in row-major order. Prints `name = 0` for the zero tensor.
std::string format_components(const TensorField& t, const std::string& name, const std::string& suffix = "");

}  // namespace affinv
