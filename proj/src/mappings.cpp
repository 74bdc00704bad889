#include "affinv/mappings.hpp"

namespace affinv {

namespace {

void require_shape(const TensorField& t, int dim, int up, int down, const std::string& what) {
  if (t.dim() != dim || t.up() != up || t.down() != down)
    throw MappingSpecError(what + ": expected a (" + std::to_string(up) + "," + std::to_string(down) +
                           ") tensor of dimension " + std::to_string(dim));
}

void require_sym(const TensorField& t, int a, int b, const std::string& what) {
  if (!is_symmetric(t, a, b)) throw MappingSpecError(what + " must be symmetric");
}

void require_antisym(const TensorField& t, int a, int b, const std::string& what) {
  if (!is_antisymmetric(t, a, b)) throw MappingSpecError(what + " must be antisymmetric");
}

TensorField zero12(int dim) { return TensorField(dim, 1, 2); }

TensorField delta_rho_sigma(const TensorField& rho, const TensorField& sigma) {
  return delta_psi(rho) + sigma;
}

struct TorsionPair {
  TensorField tau;
  TensorField tau_bar;
};

TorsionPair torsion_pair(const MappingSpec& spec, int dim) {
  if (const auto* s = std::get_if<SecondClass>(&spec)) {
    TensorField tau = s->tau ? *s->tau : zero12(dim);
    TensorField tau_bar = s->tau_bar ? *s->tau_bar : tau;
    return {tau, tau_bar};
  }
  if (const auto* g = std::get_if<General>(&spec)) return {g->tau, g->tau_bar};
  return {zero12(dim), zero12(dim)};
}

// Symmetric part of the spec deformation.
TensorField spec_sym_deformation(const MappingSpec& spec, int dim) {
  return std::visit(
      [dim](const auto& s) -> TensorField {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EquitorsionGeodesic>) {
          return delta_psi(s.psi);
        } else if constexpr (std::is_same_v<T, SecondClass>) {
          return delta_rho_sigma(s.rho, s.sigma);
        } else if constexpr (std::is_same_v<T, General>) {
          return s.sym_deformation;
        } else {
          (void)dim;
          return s.deformation;
        }
      },
      spec);
}

}  // namespace

MappingKind kind_of(const MappingSpec& spec) { return static_cast<MappingKind>(spec.index()); }

std::string kind_name(MappingKind kind) {
  switch (kind) {
    case MappingKind::geodesic:
      return "geodesic";
    case MappingKind::second_class:
      return "second-class";
    case MappingKind::general:
      return "general";
    case MappingKind::almost_geodesic_pi1:
      return "almost-geodesic-pi1";
  }
  return "unknown";
}

std::optional<MappingKind> parse_kind(const std::string& name) {
  for (auto k : {MappingKind::geodesic, MappingKind::second_class, MappingKind::general,
                 MappingKind::almost_geodesic_pi1})
    if (kind_name(k) == name) return k;
  return std::nullopt;
}

TensorField delta_psi(const TensorField& psi) {
  if (psi.up() != 0 || psi.down() != 1) throw TensorShapeError("psi must be a (0,1) tensor");
  const int n = psi.dim();
  TensorField out(n, 1, 2);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      // psi_j delta^i_k + psi_k delta^i_j
      out.set({i, i, k}, out({i, i, k}) + psi({k}));
      out.set({i, k, i}, out({i, k, i}) + psi({k}));
    }
  return out;
}

TensorField spec_deformation(const MappingSpec& spec, int dim) {
  const auto [tau, tau_bar] = torsion_pair(spec, dim);
  return spec_sym_deformation(spec, dim) + (tau_bar - tau);
}

void validate_spec(const MappingSpec& spec, const ConnectionSpace& source) {
  const int n = source.dim();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EquitorsionGeodesic>) {
          require_shape(s.psi, n, 0, 1, "psi");
        } else if constexpr (std::is_same_v<T, SecondClass>) {
          require_shape(s.rho, n, 0, 1, "rho");
          require_shape(s.sigma, n, 1, 2, "sigma");
          require_sym(s.sigma, 1, 2, "sigma");
          if (s.tau) {
            require_shape(*s.tau, n, 1, 2, "tau");
            require_antisym(*s.tau, 1, 2, "tau");
          }
          if (s.tau_bar) {
            require_shape(*s.tau_bar, n, 1, 2, "tau_bar");
            require_antisym(*s.tau_bar, 1, 2, "tau_bar");
          }
        } else if constexpr (std::is_same_v<T, General>) {
          require_shape(s.sym_deformation, n, 1, 2, "sym_deformation");
          require_sym(s.sym_deformation, 1, 2, "sym_deformation");
          require_shape(s.tau, n, 1, 2, "tau");
          require_antisym(s.tau, 1, 2, "tau");
          require_shape(s.tau_bar, n, 1, 2, "tau_bar");
          require_antisym(s.tau_bar, 1, 2, "tau_bar");
        } else {
          require_shape(s.a, n, 0, 2, "a");
          require_sym(s.a, 0, 1, "a");
          require_shape(s.deformation, n, 1, 2, "P");
          require_sym(s.deformation, 1, 2, "P");
          if (!pi1_residual(source, s.deformation, s.a).is_zero())
            throw MappingSpecError("deformation does not satisfy the almost geodesic (pi1) condition with the given a");
        }
      },
      spec);
}

MappingInstance::MappingInstance(ConnectionSpace source, MappingSpec spec) {
  validate_spec(spec, source);
  const int n = source.dim();
  TensorField p = spec_deformation(spec, n);
  auto d = std::make_shared<Data>(Data{source, ConnectionSpace(source.coefficients() + p), std::move(spec), p,
                                       antisym_part(p, 1, 2)});
  data_ = std::move(d);
}

MappingInstance MappingInstance::unchecked(ConnectionSpace source, MappingSpec spec, ConnectionSpace target) {
  if (source.dim() != target.dim()) throw TensorShapeError("source and target dimensions differ");
  TensorField p = spec_deformation(spec, source.dim());
  TensorField xi = antisym_part(p, 1, 2);
  return MappingInstance(std::make_shared<const Data>(
      Data{std::move(source), std::move(target), std::move(spec), std::move(p), std::move(xi)}));
}

TensorField deformation_tensor(const ConnectionSpace& source, const ConnectionSpace& target) {
  if (source.dim() != target.dim()) throw TensorShapeError("deformation: dimension mismatch");
  return target.coefficients() - source.coefficients();
}

TensorField omega_geodesic(const ConnectionSpace& space) {
  const int n = space.dim();
  // trace_k = G^a_ka
  const TensorField trace = contract(space.symmetric(), {0, 2});
  TensorField psi_like = scale(trace, mpq_class(1, n + 1));
  return delta_psi(psi_like);
}

TensorField psi_from_connections(const ConnectionSpace& source, const ConnectionSpace& target) {
  const int n = source.dim();
  if (target.dim() != n) throw TensorShapeError("psi: dimension mismatch");
  const TensorField diff = contract(target.symmetric() - source.symmetric(), {0, 2});
  return scale(diff, mpq_class(1, n + 1));
}

TensorField geodesic_residual(const ConnectionSpace& source, const ConnectionSpace& target) {
  const TensorField psi = psi_from_connections(source, target);
  return (target.symmetric() - source.symmetric()) - delta_psi(psi);
}

TensorField pi1_residual(const ConnectionSpace& source, const TensorField& p, const TensorField& a) {
  const int n = source.dim();
  // dp[i,j,k,l] = P^i_jk|l
  const TensorField dp = covariant_derivative(p, source);
  return TensorField::generate(n, 1, 3, [&](const Index& r) {
    const int i = r[0];
    const int j = r[1];
    const int m = r[2];
    const int q = r[3];
    Expr v = dp({i, q, m, j}) + dp({i, j, m, q});
    for (int al = 0; al < n; ++al) v += p({al, j, m}) * p({i, al, q}) + p({al, q, m}) * p({i, al, j});
    if (i == j) v -= a({m, q});
    if (i == q) v -= a({m, j});
    return v;
  });
}

SideData source_data(const MappingInstance& inst) {
  const int n = inst.dim();
  const auto [tau, tau_bar] = torsion_pair(inst.spec(), n);
  SideData d;
  d.tau = tau;
  d.deformation = sym_part(inst.deformation(), 1, 2);
  switch (inst.kind()) {
    case MappingKind::geodesic:
      d.omega2 = omega_geodesic(inst.source());
      break;
    case MappingKind::second_class: {
      const auto& s = std::get<SecondClass>(inst.spec());
      d.omega2 = delta_rho_sigma(s.rho, s.sigma);
      d.sigma = s.sigma;
      break;
    }
    case MappingKind::general:
      d.omega2 = zero12(n);
      break;
    case MappingKind::almost_geodesic_pi1:
      d.omega2 = zero12(n);
      d.a = std::get<AlmostGeodesicPi1>(inst.spec()).a;
      break;
  }
  return d;
}

SideData target_data(const MappingInstance& inst) {
  const int n = inst.dim();
  const auto [tau, tau_bar] = torsion_pair(inst.spec(), n);
  const TensorField p_sym = sym_part(inst.deformation(), 1, 2);
  SideData d;
  d.tau = tau_bar;
  d.deformation = -p_sym;
  switch (inst.kind()) {
    case MappingKind::geodesic:
      d.omega2 = omega_geodesic(inst.target());
      break;
    case MappingKind::second_class: {
      // omega_bar = omega + P_sym, i.e. rho_bar = 2 rho and sigma_bar = 2 sigma.
      const auto& s = std::get<SecondClass>(inst.spec());
      d.omega2 = scale(delta_rho_sigma(s.rho, s.sigma), 2);
      d.sigma = scale(s.sigma, 2);
      break;
    }
    case MappingKind::general:
      d.omega2 = p_sym;
      break;
    case MappingKind::almost_geodesic_pi1:
      d.omega2 = p_sym;
      d.a = -std::get<AlmostGeodesicPi1>(inst.spec()).a;
      break;
  }
  return d;
}

TensorField omega_object(int p, const ConnectionSpace& space, const SideData& data) {
  switch (p) {
    case 1:
      return space.symmetric();
    case 2:
      if (!data.omega2) throw MissingDataError("class 2 needs omega data");
      return *data.omega2;
    case 3:
      if (!data.deformation) throw MissingDataError("class 3 needs a mapping instance (deformation tensor)");
      return scale(*data.deformation, mpq_class(-1, 2));
    default:
      throw std::invalid_argument("class p must be 1, 2 or 3");
  }
}

}  // namespace affinv
