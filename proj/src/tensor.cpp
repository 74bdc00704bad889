#include "affinv/tensor.hpp"

#include <sstream>

namespace affinv {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

void require_same_shape(const TensorField& a, const TensorField& b, const char* op) {
  if (!a.same_shape(b)) throw TensorShapeError(std::string(op) + ": dimension/valence mismatch");
}

void require_slot(const TensorField& t, int s) {
  if (s < 0 || s >= t.rank()) throw TensorShapeError("slot index out of range");
}

}  // namespace

TensorField::TensorField(int dim, int up, int down) : dim_(dim), up_(up), down_(down) {
  if (dim < 1 || dim > kMaxVars) throw TensorShapeError("dimension must be in 1.." + std::to_string(kMaxVars));
  if (up < 0 || down < 0 || up + down > kMaxRank) throw TensorShapeError("unsupported valence");
  components_.assign(ipow(dim, up + down), Expr());
}

TensorField TensorField::generate(int dim, int up, int down, const Generator& fn, Execution exec) {
  TensorField t(dim, up, down);
  parallel_for(
      t.size(), [&](std::size_t k) { t.components_[k] = fn(t.unflatten(k)); }, exec);
  return t;
}

const Expr& TensorField::operator()(std::initializer_list<int> idx) const {
  if (static_cast<int>(idx.size()) != rank()) throw TensorShapeError("wrong number of indices");
  Index i{};
  int n = 0;
  for (int v : idx) i[n++] = v;
  return at(i);
}

void TensorField::set(std::initializer_list<int> idx, Expr value) {
  if (static_cast<int>(idx.size()) != rank()) throw TensorShapeError("wrong number of indices");
  Index i{};
  int n = 0;
  for (int v : idx) i[n++] = v;
  set(i, std::move(value));
}

std::size_t TensorField::flatten(const Index& idx) const {
  std::size_t k = 0;
  for (int s = 0; s < rank(); ++s) {
    if (idx[s] < 0 || idx[s] >= dim_) throw TensorShapeError("component index out of range");
    k = k * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx[s]);
  }
  return k;
}

Index TensorField::unflatten(std::size_t k) const {
  Index idx{};
  for (int s = rank() - 1; s >= 0; --s) {
    idx[s] = static_cast<int>(k % static_cast<std::size_t>(dim_));
    k /= static_cast<std::size_t>(dim_);
  }
  return idx;
}

bool TensorField::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

TensorField TensorField::map(const std::function<Expr(const Expr&)>& fn, Execution exec) const {
  TensorField out(dim_, up_, down_);
  parallel_for(
      size(), [&](std::size_t k) { out.components_[k] = fn(components_[k]); }, exec);
  return out;
}

TensorField TensorField::operator-() const {
  return map([](const Expr& e) { return -e; });
}

TensorField operator+(const TensorField& a, const TensorField& b) {
  require_same_shape(a, b, "add");
  TensorField out(a.dim_, a.up_, a.down_);
  parallel_for(out.size(), [&](std::size_t k) { out.components_[k] = a.components_[k] + b.components_[k]; });
  return out;
}

TensorField operator-(const TensorField& a, const TensorField& b) {
  require_same_shape(a, b, "sub");
  TensorField out(a.dim_, a.up_, a.down_);
  parallel_for(out.size(), [&](std::size_t k) { out.components_[k] = a.components_[k] - b.components_[k]; });
  return out;
}

TensorField operator*(const Expr& s, const TensorField& t) {
  return t.map([&](const Expr& e) { return s * e; });
}

bool operator==(const TensorField& a, const TensorField& b) {
  return a.same_shape(b) && a.components_ == b.components_;
}

TensorField scale(const TensorField& t, const mpq_class& c) { return Expr(c) * t; }

TensorField swap_slots(const TensorField& t, int a, int b) {
  require_slot(t, a);
  require_slot(t, b);
  return TensorField::generate(t.dim(), t.up(), t.down(), [&](const Index& idx) {
    Index s = idx;
    std::swap(s[a], s[b]);
    return t.at(s);
  });
}

namespace {

void require_same_variance(const TensorField& t, int a, int b) {
  require_slot(t, a);
  require_slot(t, b);
  if (a == b) throw TensorShapeError("slots must be distinct");
  if ((a < t.up()) != (b < t.up())) throw TensorShapeError("slots of mixed variance");
}

}  // namespace

TensorField sym_part(const TensorField& t, int a, int b) {
  require_same_variance(t, a, b);
  const Expr half(mpq_class(1, 2));
  return TensorField::generate(t.dim(), t.up(), t.down(), [&](const Index& idx) {
    Index s = idx;
    std::swap(s[a], s[b]);
    return half * (t.at(idx) + t.at(s));
  });
}

TensorField antisym_part(const TensorField& t, int a, int b) {
  require_same_variance(t, a, b);
  const Expr half(mpq_class(1, 2));
  return TensorField::generate(t.dim(), t.up(), t.down(), [&](const Index& idx) {
    Index s = idx;
    std::swap(s[a], s[b]);
    return half * (t.at(idx) - t.at(s));
  });
}

bool is_symmetric(const TensorField& t, int a, int b) {
  require_same_variance(t, a, b);
  for (std::size_t k = 0; k < t.size(); ++k) {
    Index idx = t.unflatten(k);
    if (idx[a] >= idx[b]) continue;
    Index s = idx;
    std::swap(s[a], s[b]);
    if (!(t.at(idx) == t.at(s))) return false;
  }
  return true;
}

bool is_antisymmetric(const TensorField& t, int a, int b) {
  require_same_variance(t, a, b);
  for (std::size_t k = 0; k < t.size(); ++k) {
    Index idx = t.unflatten(k);
    if (idx[a] > idx[b]) continue;
    Index s = idx;
    std::swap(s[a], s[b]);
    if (!((t.at(idx) + t.at(s)).is_zero())) return false;
  }
  return true;
}

TensorField contract(const TensorField& t, IndexPair pair) {
  int a = pair.first;
  int b = pair.second;
  require_slot(t, a);
  require_slot(t, b);
  if (a >= t.up()) std::swap(a, b);
  if (a >= t.up() || b < t.up()) throw TensorShapeError("contraction needs one upper and one lower slot");
  const int n = t.dim();
  if (t.rank() == 2) {
    // Scalar result is stored as a (0,0) tensor with a single component.
    Expr sum;
    Index idx{};
    for (int alpha = 0; alpha < n; ++alpha) {
      idx[a] = alpha;
      idx[b] = alpha;
      sum += t.at(idx);
    }
    TensorField out(n, 0, 0);
    out.set(Index{}, sum);
    return out;
  }
  return TensorField::generate(n, t.up() - 1, t.down() - 1, [&](const Index& r) {
    // Re-insert the traced pair into the reduced index list.
    Index full{};
    int src = 0;
    for (int s = 0; s < t.rank(); ++s) {
      if (s == a || s == b) continue;
      full[s] = r[src++];
    }
    Expr sum;
    for (int alpha = 0; alpha < n; ++alpha) {
      full[a] = alpha;
      full[b] = alpha;
      sum += t.at(full);
    }
    return sum;
  });
}

TensorField outer_product(const TensorField& a, const TensorField& b) {
  if (a.dim() != b.dim()) throw TensorShapeError("outer product: dimension mismatch");
  return TensorField::generate(a.dim(), a.up() + b.up(), a.down() + b.down(), [&](const Index& r) {
    Index ia{};
    Index ib{};
    int p = 0;
    for (int s = 0; s < a.up(); ++s) ia[s] = r[p++];
    for (int s = 0; s < b.up(); ++s) ib[s] = r[p++];
    for (int s = 0; s < a.down(); ++s) ia[a.up() + s] = r[p++];
    for (int s = 0; s < b.down(); ++s) ib[b.up() + s] = r[p++];
    return a.at(ia) * b.at(ib);
  });
}

TensorField kronecker_delta(int dim) {
  TensorField d(dim, 1, 1);
  for (int i = 0; i < dim; ++i) d.set({i, i}, Expr(1));
  return d;
}

std::string format_components(const TensorField& t, const std::string& name, const std::string& suffix) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Expr& e = t.flat(k);
    if (e.is_zero()) continue;
    any = true;
    os << name;
    if (t.rank() > 0) {
      Index idx = t.unflatten(k);
      os << '[';
      for (int s = 0; s < t.rank(); ++s) os << (s ? "," : "") << idx[s] + 1;
      os << ']';
    }
    os << suffix << " = " << e.to_string() << '\n';
  }
  if (!any) os << name << suffix << " = 0\n";
  return os.str();
}

}  // namespace affinv
