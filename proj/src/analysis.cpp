#include "affinv/analysis.hpp"

#include <random>
#include <sstream>

namespace affinv {

namespace {

const TensorField& need(const std::optional<TensorField>& t, const char* what) {
  if (!t) throw MissingDataError(std::string("this invariant needs ") + what);
  return *t;
}

std::string describe(const MappingInstance& inst) {
  std::ostringstream os;
  os << kind_name(inst.kind()) << " mapping, N=" << inst.dim() << (inst.is_equitorsion() ? ", equitorsion" : ", torsion changes");
  return os.str();
}

// Compare two evaluated tensors at one point; fills the outcome and returns
// the index of the first differing component or npos.
std::size_t compare_values(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b, PointOutcome& out) {
  std::size_t first = std::string::npos;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == b[k]) continue;
    mpq_class d = abs(a[k] - b[k]);
    if (d > out.max_discrepancy) out.max_discrepancy = d;
    if (first == std::string::npos) first = k;
  }
  return first;
}

struct PointEval {
  PointOutcome outcome;
  std::size_t first_bad = std::string::npos;
  std::vector<mpq_class> src;
  std::vector<mpq_class> tgt;
};

void finish_report(VerificationReport& rep, const std::vector<PointEval>& evals, const TensorField& shape) {
  std::size_t skipped = 0;
  for (const auto& e : evals) {
    rep.points.push_back(e.outcome);
    if (e.outcome.skipped) {
      ++skipped;
      continue;
    }
    if (e.first_bad != std::string::npos && !rep.witness) {
      rep.exact_equal = false;
      Witness w;
      w.component = shape.unflatten(e.first_bad);
      w.rank = shape.rank();
      w.point = e.outcome.point;
      w.source_value = e.src[e.first_bad];
      w.target_value = e.tgt[e.first_bad];
      rep.witness = w;
    }
  }
  if (skipped == evals.size()) throw NoUsablePointsError("every sample point is a pole of the compared objects");
  if (skipped > 0) rep.notes.push_back(std::to_string(skipped) + " point(s) skipped at poles");
}

}  // namespace

std::string InvariantRequest::label() const {
  switch (kind) {
    case InvariantKind::thomas_basic:
    case InvariantKind::weyl_basic:
    case InvariantKind::thomas_general:
      return kind_name(kind) + " p=" + std::to_string(p);
    case InvariantKind::weyl_family: {
      std::ostringstream os;
      os << kind_name(kind);
      if (form == FamilyForm::equitorsion) os << " (equitorsion form)";
      if (form == FamilyForm::k_form) os << " (K form)";
      os << " " << selector.to_string() << " u=" << coeffs.u << " u'=" << coeffs.u_prime << " v=" << coeffs.v
         << " v'=" << coeffs.v_prime << " w=" << coeffs.w;
      return os.str();
    }
    default:
      return kind_name(kind);
  }
}

InvariantResult compute_invariant(const InvariantRequest& req, const ConnectionSpace& space, const SideData& data) {
  switch (req.kind) {
    case InvariantKind::thomas_basic:
      return thomas_basic(req.p, space, data);
    case InvariantKind::thomas_geodesic:
      return thomas_geodesic(space);
    case InvariantKind::thomas_derived:
      return thomas_derived_second(space, need(data.sigma, "second-class sigma"));
    case InvariantKind::thomas_antisym:
      return thomas_antisym(space, data.tau);
    case InvariantKind::thomas_general:
      return thomas_general(req.p, space, data);
    case InvariantKind::weyl_basic:
      return weyl_basic(req.p, space, data);
    case InvariantKind::weyl_derived:
      return weyl_derived_second(space, need(data.sigma, "second-class sigma"));
    case InvariantKind::weyl_family:
      switch (req.form) {
        case FamilyForm::direct:
          return weyl_family(req.selector, req.coeffs, space, data);
        case FamilyForm::equitorsion:
          return weyl_family_equitorsion(req.selector, req.coeffs, space, data);
        case FamilyForm::k_form:
          return weyl_family_k_form(req.selector, req.coeffs, space, data);
      }
      break;
    case InvariantKind::weyl_almost_geodesic:
      return weyl_almost_geodesic(space, need(data.a, "the almost geodesic tensor a"));
  }
  throw std::invalid_argument("unknown invariant");
}

std::vector<mpq_class> evaluate(const TensorField& t, const Point& point, Execution exec) {
  std::vector<mpq_class> out(t.size());
  parallel_for(
      t.size(), [&](std::size_t k) { out[k] = t.flat(k).eval(point); }, exec);
  return out;
}

std::size_t VerificationReport::points_used() const {
  std::size_t n = 0;
  for (const auto& p : points)
    if (!p.skipped) ++n;
  return n;
}

VerificationReport compare_at_points(const TensorField& source, const TensorField& target,
                                     std::span<const Point> points, Execution exec) {
  if (!source.same_shape(target)) throw TensorShapeError("compared tensors differ in shape");
  std::vector<PointEval> evals(points.size());
  parallel_for(
      points.size(),
      [&](std::size_t k) {
        PointEval& e = evals[k];
        e.outcome.point = points[k];
        try {
          e.src = evaluate(source, points[k], Execution::serial);
          e.tgt = evaluate(target, points[k], Execution::serial);
        } catch (const PoleError&) {
          e.outcome.skipped = true;
          return;
        }
        e.first_bad = compare_values(e.src, e.tgt, e.outcome);
      },
      exec);
  VerificationReport rep;
  finish_report(rep, evals, source);
  return rep;
}

VerificationReport invariance_check(const MappingInstance& inst, const InvariantRequest& req,
                                    std::span<const Point> points, Execution exec) {
  const SideData src_data = source_data(inst);
  const SideData tgt_data = target_data(inst);
  TensorField src;
  TensorField tgt;
  {
    ExecutionScope scope(exec);
    src = compute_invariant(req, inst.source(), src_data).components;
    tgt = compute_invariant(req, inst.target(), tgt_data).components;
  }
  VerificationReport rep = compare_at_points(src, tgt, points, exec);
  rep.invariant = req.label();
  rep.mapping = describe(inst);
  return rep;
}

std::vector<VerificationReport> family_sweep(const MappingInstance& inst, int p, const CurvatureCoefficients& c,
                                             std::span<const Point> points, Execution exec) {
  const std::vector<ClassSelector> selectors = ClassSelector::all(p);
  FamilyBasis sb;
  FamilyBasis tb;
  {
    ExecutionScope scope(exec);
    sb = family_basis(p, inst.source(), source_data(inst));
    tb = family_basis(p, inst.target(), target_data(inst));
  }
  // Evaluate every basis tensor once per point and side.
  struct PointBasis {
    bool pole = false;
    std::array<std::vector<mpq_class>, kFamilyColumns> src;
    std::array<std::vector<mpq_class>, kFamilyColumns> tgt;
  };
  std::vector<PointBasis> pb(points.size());
  std::vector<char> pole_job(points.size() * kFamilyColumns, 0);
  parallel_for(
      points.size() * kFamilyColumns,
      [&](std::size_t job) {
        const std::size_t k = job / kFamilyColumns;
        const std::size_t col = job % kFamilyColumns;
        try {
          pb[k].src[col] = evaluate(sb.terms[col], points[k], Execution::serial);
          pb[k].tgt[col] = evaluate(tb.terms[col], points[k], Execution::serial);
        } catch (const PoleError&) {
          pole_job[job] = 1;
        }
      },
      exec);
  for (std::size_t job = 0; job < pole_job.size(); ++job)
    if (pole_job[job]) pb[job / kFamilyColumns].pole = true;

  const std::size_t comps = sb.terms[0].size();
  std::vector<VerificationReport> reports(selectors.size());
  parallel_for(
      selectors.size(),
      [&](std::size_t s) {
        const auto row = family_row(selectors[s], c);
        std::vector<PointEval> evals(points.size());
        for (std::size_t k = 0; k < points.size(); ++k) {
          PointEval& e = evals[k];
          e.outcome.point = points[k];
          if (pb[k].pole) {
            e.outcome.skipped = true;
            continue;
          }
          e.src.assign(comps, mpq_class(0));
          e.tgt.assign(comps, mpq_class(0));
          for (int col = 0; col < kFamilyColumns; ++col) {
            if (row[col] == 0) continue;
            for (std::size_t q = 0; q < comps; ++q) {
              e.src[q] += row[col] * pb[k].src[col][q];
              e.tgt[q] += row[col] * pb[k].tgt[col][q];
            }
          }
          e.first_bad = compare_values(e.src, e.tgt, e.outcome);
        }
        VerificationReport& rep = reports[s];
        InvariantRequest req;
        req.kind = InvariantKind::weyl_family;
        req.p = p;
        req.selector = selectors[s];
        req.coeffs = c;
        rep.invariant = req.label();
        rep.mapping = describe(inst);
        finish_report(rep, evals, sb.terms[0]);
      },
      exec);
  return reports;
}

Suite default_suite(const MappingInstance& inst, const CurvatureCoefficients& family_coeffs) {
  Suite s;
  auto add = [&](InvariantKind k, int p = 2) {
    InvariantRequest r;
    r.kind = k;
    r.p = p;
    s.requests.push_back(r);
  };
  const MappingKind kind = inst.kind();
  if (kind == MappingKind::geodesic) add(InvariantKind::thomas_geodesic);
  for (int p = 1; p <= 3; ++p) add(InvariantKind::thomas_basic, p);
  for (int p = 1; p <= 3; ++p) add(InvariantKind::weyl_basic, p);
  if (kind == MappingKind::second_class) {
    add(InvariantKind::thomas_derived);
    add(InvariantKind::weyl_derived);
  }
  if (kind == MappingKind::almost_geodesic_pi1) add(InvariantKind::weyl_almost_geodesic);
  add(InvariantKind::thomas_antisym);
  for (int p = 1; p <= 3; ++p) add(InvariantKind::thomas_general, p);
  s.family = true;
  if (inst.is_equitorsion()) {
    InvariantRequest r;
    r.kind = InvariantKind::weyl_family;
    r.form = FamilyForm::equitorsion;
    r.selector.p = 2;
    r.selector.p1 = {1, 1, 1};
    r.selector.p2 = {2, 2, 2};
    r.coeffs = family_coeffs;
    s.requests.push_back(r);
  } else {
    s.skipped.push_back("weyl-family (equitorsion form): skipped, the mapping changes the torsion (tau_bar != tau)");
  }
  if (kind != MappingKind::geodesic)
    s.skipped.push_back("thomas-geodesic: skipped, applies to geodesic mappings only");
  return s;
}

bool SuiteReport::all_equal() const {
  for (const auto& r : reports)
    if (!r.exact_equal) return false;
  return true;
}

SuiteReport run_suite(const MappingInstance& inst, const CurvatureCoefficients& family_coeffs,
                      std::span<const Point> points, Execution exec) {
  const Suite suite = default_suite(inst, family_coeffs);
  SuiteReport out;
  out.skipped = suite.skipped;
  for (const auto& req : suite.requests) out.reports.push_back(invariance_check(inst, req, points, exec));
  if (suite.family) {
    auto fam = family_sweep(inst, 2, family_coeffs, points, exec);
    for (auto& r : fam) out.reports.push_back(std::move(r));
  }
  return out;
}

std::vector<Point> sample_points(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(1, 10);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Point p;
    for (int i = 0; i < dim; ++i) {
      const int num = dist(rng);
      const int den = dist(rng);
      mpq_class q(num, den);
      q.canonicalize();
      p.push_back(q);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

CoefficientMatrix coefficient_matrix(const CurvatureCoefficients& c) {
  CoefficientMatrix m;
  m.selectors = ClassSelector::all(2);
  for (const auto& sel : m.selectors) {
    const auto row = family_row(sel, c);
    m.rows.emplace_back(row.begin(), row.end());
  }
  return m;
}

int rank_exact(const RationalMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  // Clear denominators row by row; the rank is unchanged.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (m[i].size() != cols) throw std::invalid_argument("ragged matrix");
    mpz_class l = 1;
    for (const auto& x : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
  }
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class v = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace affinv
