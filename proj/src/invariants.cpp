#include "affinv/invariants.hpp"

#include <sstream>
#include <stdexcept>

namespace affinv {

namespace {

std::string coeff_text(const CurvatureCoefficients& c) {
  std::ostringstream os;
  os << "u=" << c.u << " u'=" << c.u_prime << " v=" << c.v << " v'=" << c.v_prime << " w=" << c.w;
  return os.str();
}

void require_p(int p) {
  if (p < 1 || p > 3) throw std::invalid_argument("class p must be 1, 2 or 3");
}

void require_12(const TensorField& t, int dim, const char* what) {
  if (t.dim() != dim || t.up() != 1 || t.down() != 2)
    throw TensorShapeError(std::string(what) + " must be a (1,2) tensor of matching dimension");
}

// (1,3) tensor from a component function of (i, j, m, n).
template <class F>
TensorField gen13(int n, F&& f) {
  return TensorField::generate(n, 1, 3, [&](const Index& r) { return f(r[0], r[1], r[2], r[3]); });
}

// sum_a X^a_jm Y^i_an
TensorField chain_first(const TensorField& x, const TensorField& y) {
  const int n = x.dim();
  return gen13(n, [&](int i, int j, int m, int q) {
    Expr s;
    for (int a = 0; a < n; ++a) s += x({a, j, m}) * y({i, a, q});
    return s;
  });
}

// The W~ core shared by the basic and K-based forms.
TensorField weyl_core(const TensorField& base, const ConnectionSpace& space, const TensorField& w, bool quadratic) {
  const int n = space.dim();
  const TensorField dw = covariant_derivative(w, space);
  return gen13(n, [&](int i, int j, int m, int q) {
    Expr v = base({i, j, m, q}) - dw({i, j, m, q}) + dw({i, j, q, m});
    if (quadratic)
      for (int a = 0; a < n; ++a) v += w({a, j, m}) * w({i, a, q}) - w({a, j, q}) * w({i, a, m});
    return v;
  });
}

struct SelectedOmegas {
  TensorField w1, w2, w3, v1, v2, v3;
};

SelectedOmegas select_omegas(const ClassSelector& sel, const ConnectionSpace& space, const SideData& data) {
  auto pick = [&](int q) { return omega_object(q, space, data); };
  return {pick(sel.p1[0]), pick(sel.p1[1]), pick(sel.p1[2]), pick(sel.p2[0]), pick(sel.p2[1]), pick(sel.p2[2])};
}

// Correction terms of the family around W~ for a torsion-like object t.
TensorField family_correction(const ClassSelector& sel, const CurvatureCoefficients& c, const ConnectionSpace& space,
                              const SideData& data, const TensorField& t) {
  const int n = space.dim();
  const SelectedOmegas om = select_omegas(sel, space, data);
  const TensorField dt = covariant_derivative(t, space);
  const Expr u(c.u);
  const Expr up(c.u_prime);
  const Expr v(c.v);
  const Expr vp(c.v_prime);
  const Expr w(c.w);
  return gen13(n, [&](int i, int j, int m, int q) {
    Expr tu = dt({i, j, m, q});
    Expr tup = dt({i, j, q, m});
    Expr c3;
    Expr sv;
    Expr svp;
    Expr sw;
    for (int a = 0; a < n; ++a) {
      tu += om.w2({a, j, q}) * t({i, a, m}) - om.w1({i, a, q}) * t({a, j, m});
      tup += om.v2({a, j, m}) * t({i, a, q}) - om.v1({i, a, m}) * t({a, j, q});
      c3 += (u * om.w3({a, m, q}) + up * om.v3({a, m, q})) * t({i, j, a});
      sv += t({a, j, m}) * t({i, a, q});
      svp += t({a, j, q}) * t({i, a, m});
      sw += t({a, m, q}) * t({i, a, j});
    }
    return u * tu + up * tup + c3 + v * sv + vp * svp + w * sw;
  });
}

}  // namespace

void ClassSelector::validate() const {
  require_p(p);
  for (int x : p1)
    if (x != 1 && x != 2) throw std::invalid_argument("selector entries p1 must be 1 or 2");
  for (int x : p2)
    if (x != 1 && x != 2) throw std::invalid_argument("selector entries p2 must be 1 or 2");
}

std::string ClassSelector::to_string() const {
  std::ostringstream os;
  os << "p=" << p << " p1=(" << p1[0] << "," << p1[1] << "," << p1[2] << ") p2=(" << p2[0] << "," << p2[1] << ","
     << p2[2] << ")";
  return os.str();
}

std::vector<ClassSelector> ClassSelector::all(int p) {
  require_p(p);
  std::vector<ClassSelector> out;
  out.reserve(64);
  for (int bits = 0; bits < 64; ++bits) {
    ClassSelector s;
    s.p = p;
    for (int r = 0; r < 3; ++r) {
      s.p1[r] = 1 + ((bits >> (5 - r)) & 1);
      s.p2[r] = 1 + ((bits >> (2 - r)) & 1);
    }
    out.push_back(s);
  }
  return out;
}

std::string kind_name(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::thomas_basic:
      return "thomas-basic";
    case InvariantKind::thomas_geodesic:
      return "thomas-geodesic";
    case InvariantKind::thomas_derived:
      return "thomas-derived";
    case InvariantKind::thomas_antisym:
      return "thomas-antisym";
    case InvariantKind::thomas_general:
      return "thomas-general";
    case InvariantKind::weyl_basic:
      return "weyl-basic";
    case InvariantKind::weyl_derived:
      return "weyl-derived";
    case InvariantKind::weyl_family:
      return "weyl-family";
    case InvariantKind::weyl_almost_geodesic:
      return "weyl-almost-geodesic";
  }
  return "unknown";
}

InvariantResult thomas_basic(int p, const ConnectionSpace& space, const SideData& data) {
  require_p(p);
  TensorField t = space.symmetric() - omega_object(p, space, data);
  return {InvariantKind::thomas_basic, std::move(t), "thomas-basic p=" + std::to_string(p)};
}

InvariantResult thomas_geodesic(const ConnectionSpace& space) {
  TensorField t = space.symmetric() - omega_geodesic(space);
  return {InvariantKind::thomas_geodesic, std::move(t), "thomas-geodesic (projective parameter)"};
}

InvariantResult weyl_basic(int p, const ConnectionSpace& space, const SideData& data) {
  require_p(p);
  TensorField w = weyl_core(space.curvature(), space, omega_object(p, space, data), p != 3);
  return {InvariantKind::weyl_basic, std::move(w),
          "weyl-basic p=" + std::to_string(p) + (p == 3 ? " (quadratic omega terms dropped)" : "")};
}

InvariantResult weyl_basic_full(int p, const ConnectionSpace& space, const SideData& data) {
  require_p(p);
  TensorField w = weyl_core(space.curvature(), space, omega_object(p, space, data), true);
  return {InvariantKind::weyl_basic, std::move(w), "weyl-basic p=" + std::to_string(p) + " (full)"};
}

InvariantResult thomas_derived_second(const ConnectionSpace& space, const TensorField& sigma) {
  const int n = space.dim();
  require_12(sigma, n, "sigma");
  const TensorField& l = space.symmetric();
  const Expr k(mpq_class(1, n + 1));
  // tr_j = L^a_ja - sigma^a_ja
  std::vector<Expr> tr(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < n; ++a) tr[j] += l({a, j, a}) - sigma({a, j, a});
  TensorField t = TensorField::generate(n, 1, 2, [&](const Index& r) {
    const int i = r[0];
    const int j = r[1];
    const int q = r[2];
    Expr v = l({i, j, q}) - sigma({i, j, q});
    Expr d;
    if (i == q) d += tr[j];
    if (i == j) d += tr[q];
    return v - k * d;
  });
  return {InvariantKind::thomas_derived, std::move(t), "thomas-derived (second class, sigma)"};
}

InvariantResult weyl_derived_second(const ConnectionSpace& space, const TensorField& sigma) {
  const int n = space.dim();
  require_12(sigma, n, "sigma");
  const TensorField& r = space.curvature();
  const TensorField ric = ricci(r);
  const TensorField ds = covariant_derivative(sigma, space);  // ds[i,j,k,l] = sigma^i_jk|l
  const Expr c1(mpq_class(1, n + 1));
  const Expr cn(mpq_class(n, n * n - 1));
  const Expr c2(mpq_class(1, n * n - 1));
  const Expr np1(n + 1);
  // s_m|n = sigma^a_am|n
  auto trace_d = [&](int m, int q) {
    Expr s;
    for (int a = 0; a < n; ++a) s += ds({a, a, m, q});
    return s;
  };
  // bracket of the delta^i_m / delta^i_n terms, with (j, x) = (j, n) or (j, m)
  auto bracket = [&](int j, int x) {
    Expr v = trace_d(j, x) - trace_d(x, j);
    Expr inner;
    for (int a = 0; a < n; ++a) {
      inner += ds({a, j, x, a}) - ds({a, j, a, x});
      for (int b = 0; b < n; ++b) inner += sigma({a, j, b}) * sigma({b, x, a}) - sigma({a, j, x}) * sigma({b, a, b});
    }
    return v + np1 * inner;
  };
  TensorField w = gen13(n, [&](int i, int j, int m, int q) {
    Expr v = r({i, j, m, q}) - ds({i, j, m, q}) + ds({i, j, q, m});
    for (int a = 0; a < n; ++a) v += sigma({a, j, m}) * sigma({i, a, q}) - sigma({a, j, q}) * sigma({i, a, m});
    if (i == j) v += c1 * (ric({m, q}) - ric({q, m}) + trace_d(m, q) - trace_d(q, m));
    if (i == m) v += cn * ric({j, q}) + c2 * ric({q, j}) - c2 * bracket(j, q);
    if (i == q) v += -cn * ric({j, m}) - c2 * ric({m, j}) + c2 * bracket(j, m);
    return v;
  });
  return {InvariantKind::weyl_derived, std::move(w), "weyl-derived (second class, sigma)"};
}

InvariantResult thomas_antisym(const ConnectionSpace& space, const TensorField& tau) {
  require_12(tau, space.dim(), "tau");
  if (!is_antisymmetric(tau, 1, 2)) throw std::invalid_argument("tau must be antisymmetric in its lower indices");
  return {InvariantKind::thomas_antisym, space.torsion() - tau, "thomas-antisym"};
}

InvariantResult thomas_general(int p, const ConnectionSpace& space, const SideData& data) {
  require_p(p);
  require_12(data.tau, space.dim(), "tau");
  TensorField t = space.coefficients() - omega_object(p, space, data) - data.tau;
  return {InvariantKind::thomas_general, std::move(t), "thomas-general p=" + std::to_string(p)};
}

InvariantResult weyl_family(const ClassSelector& sel, const CurvatureCoefficients& c, const ConnectionSpace& space,
                            const SideData& data) {
  sel.validate();
  require_12(data.tau, space.dim(), "tau");
  const TensorField t_hat = space.torsion() - data.tau;
  TensorField w = weyl_basic(sel.p, space, data).components + family_correction(sel, c, space, data, t_hat);
  return {InvariantKind::weyl_family, std::move(w), "weyl-family " + sel.to_string() + " " + coeff_text(c)};
}

InvariantResult weyl_family_equitorsion(const ClassSelector& sel, const CurvatureCoefficients& c,
                                        const ConnectionSpace& space, const SideData& data) {
  sel.validate();
  const int n = space.dim();
  const TensorField& lv = space.torsion();
  const TensorField base = weyl_basic(sel.p, space, data).components;
  const SelectedOmegas om = select_omegas(sel, space, data);
  const TensorField dl = covariant_derivative(lv, space);
  const Expr u(c.u);
  const Expr up(c.u_prime);
  const Expr v(c.v);
  const Expr vp(c.v_prime);
  const Expr w(c.w);
  TensorField out = gen13(n, [&](int i, int j, int m, int q) {
    Expr val = base({i, j, m, q});
    Expr cross;
    Expr bu = dl({i, j, m, q});
    Expr bup = dl({i, j, q, m});
    Expr quad;
    for (int a = 0; a < n; ++a) {
      cross += (u * om.w3({a, m, q}) + up * om.v3({a, m, q})) * lv({i, j, a});
      bu += -om.w1({i, a, q}) * lv({a, j, m}) + om.w2({a, j, q}) * lv({i, a, m});
      bup += -om.v1({i, a, m}) * lv({a, j, q}) + om.v2({a, j, m}) * lv({i, a, q});
      quad += v * lv({a, j, m}) * lv({i, a, q}) + vp * lv({a, j, q}) * lv({i, a, m}) + w * lv({a, m, q}) * lv({i, a, j});
    }
    return val + cross + u * bu + up * bup + quad;
  });
  return {InvariantKind::weyl_family, std::move(out),
          "weyl-family (equitorsion form) " + sel.to_string() + " " + coeff_text(c)};
}

InvariantResult weyl_family_k_form(const ClassSelector& sel, const CurvatureCoefficients& c,
                                   const ConnectionSpace& space, const SideData& data) {
  sel.validate();
  const int n = space.dim();
  const TensorField& lv = space.torsion();
  const TensorField k = curvature_family_K(space, c);
  const TensorField core = weyl_core(k, space, omega_object(sel.p, space, data), sel.p != 3);
  const SelectedOmegas om = select_omegas(sel, space, data);
  const Expr u(c.u);
  const Expr up(c.u_prime);
  TensorField out = gen13(n, [&](int i, int j, int m, int q) {
    Expr val = core({i, j, m, q});
    for (int a = 0; a < n; ++a) {
      val -= u * (om.w1({i, a, q}) * lv({a, j, m}) - om.w2({a, j, q}) * lv({i, a, m}));
      val -= up * (om.v1({i, a, m}) * lv({a, j, q}) - om.v2({a, j, m}) * lv({i, a, q}));
      val += (u * om.w3({a, m, q}) + up * om.v3({a, m, q})) * lv({i, j, a});
    }
    return val;
  });
  return {InvariantKind::weyl_family, std::move(out), "weyl-family (K form) " + sel.to_string() + " " + coeff_text(c)};
}

InvariantResult weyl_almost_geodesic(const ConnectionSpace& space, const TensorField& a) {
  const int n = space.dim();
  if (a.dim() != n || a.up() != 0 || a.down() != 2) throw TensorShapeError("a must be a (0,2) tensor");
  if (!is_symmetric(a, 0, 1)) throw std::invalid_argument("a must be symmetric");
  const TensorField& r = space.curvature();
  const Expr half(mpq_class(1, 2));
  TensorField w = gen13(n, [&](int i, int j, int m, int q) {
    Expr v = r({i, j, m, q});
    if (i == q) v += half * a({j, m});
    if (i == m) v -= half * a({j, q});
    return v;
  });
  return {InvariantKind::weyl_almost_geodesic, std::move(w), "weyl-almost-geodesic (class 3, pi1)"};
}

const std::array<std::string, kFamilyColumns>& family_column_legend() {
  static const std::array<std::string, kFamilyColumns> legend = {
      "W~_(p)",          "T^_jm|n",         "T^_jn|m",         "T^a_jm T^i_an",
      "T^a_jn T^i_am",   "T^a_mn T^i_aj",   "L^i_an T^a_jm",   "w^i_an T^a_jm",
      "L^a_jn T^i_am",   "w^a_jn T^i_am",   "L^i_am T^a_jn",   "w^i_am T^a_jn",
      "L^a_jm T^i_an",   "w^a_jm T^i_an",   "L^a_mn T^i_ja",   "w^a_mn T^i_ja",
  };
  return legend;
}

std::array<mpq_class, kFamilyColumns> family_row(const ClassSelector& sel, const CurvatureCoefficients& c) {
  sel.validate();
  std::array<mpq_class, kFamilyColumns> row;
  for (auto& x : row) x = 0;
  row[0] = 1;
  row[1] = c.u;
  row[2] = c.u_prime;
  row[3] = c.v;
  row[4] = c.v_prime;
  row[5] = c.w;
  // Each selector entry routes its term to the L column (1) or the w column (2).
  auto put = [&](int base, int choice, const mpq_class& coeff) { row[base + choice - 1] += coeff; };
  put(6, sel.p1[0], -c.u);
  put(8, sel.p1[1], c.u);
  put(10, sel.p2[0], -c.u_prime);
  put(12, sel.p2[1], c.u_prime);
  put(14, sel.p1[2], c.u);
  put(14, sel.p2[2], c.u_prime);
  return row;
}

FamilyBasis family_basis(int p, const ConnectionSpace& space, const SideData& data) {
  require_p(p);
  require_12(data.tau, space.dim(), "tau");
  const int n = space.dim();
  const TensorField t = space.torsion() - data.tau;
  const TensorField& l = space.symmetric();
  const TensorField w = omega_object(2, space, data);
  const TensorField dt = covariant_derivative(t, space);
  FamilyBasis b;
  b.p = p;
  b.terms[0] = weyl_basic(p, space, data).components;
  b.terms[1] = dt;
  b.terms[2] = swap_slots(dt, 2, 3);
  b.terms[3] = chain_first(t, t);
  b.terms[4] = swap_slots(b.terms[3], 2, 3);
  b.terms[5] = gen13(n, [&](int i, int j, int m, int q) {
    Expr s;
    for (int a = 0; a < n; ++a) s += t({a, m, q}) * t({i, a, j});
    return s;
  });
  // A_x = x^i_an T^a_jm, B_x = x^a_jn T^i_am, C_x = x^a_mn T^i_ja
  auto block_a = [&](const TensorField& x) { return chain_first(t, x); };
  auto block_b = [&](const TensorField& x) {
    return gen13(n, [&](int i, int j, int m, int q) {
      Expr s;
      for (int a = 0; a < n; ++a) s += x({a, j, q}) * t({i, a, m});
      return s;
    });
  };
  auto block_c = [&](const TensorField& x) {
    return gen13(n, [&](int i, int j, int m, int q) {
      Expr s;
      for (int a = 0; a < n; ++a) s += x({a, m, q}) * t({i, j, a});
      return s;
    });
  };
  b.terms[6] = block_a(l);
  b.terms[7] = block_a(w);
  b.terms[8] = block_b(l);
  b.terms[9] = block_b(w);
  b.terms[10] = swap_slots(b.terms[6], 2, 3);
  b.terms[11] = swap_slots(b.terms[7], 2, 3);
  b.terms[12] = swap_slots(b.terms[8], 2, 3);
  b.terms[13] = swap_slots(b.terms[9], 2, 3);
  b.terms[14] = block_c(l);
  b.terms[15] = block_c(w);
  return b;
}

TensorField family_from_basis(const FamilyBasis& basis, const ClassSelector& sel, const CurvatureCoefficients& c) {
  const auto row = family_row(sel, c);
  const TensorField& first = basis.terms[0];
  return TensorField::generate(first.dim(), 1, 3, [&](const Index& r) {
    Expr s;
    for (int k = 0; k < kFamilyColumns; ++k)
      if (row[k] != 0) s += Expr(row[k]) * basis.terms[k].at(r);
    return s;
  });
}

}  // namespace affinv
