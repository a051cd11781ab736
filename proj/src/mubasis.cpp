#include "mubasis/mubasis.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

#include "mubasis/arith.hpp"
#include "mubasis/grobner.hpp"
#include "mubasis/resolution.hpp"

namespace mubasis {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Poly det3(const Poly& a, const Poly& b, const Poly& c, const Poly& d, const Poly& e, const Poly& f, const Poly& g,
          const Poly& h, const Poly& i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

Poly dot(const PolyVector& v, const PolyVector& a) {
  Poly s(a.front().nvars());
  for (std::size_t i = 0; i < a.size(); ++i) s += v[i] * a[i];
  return s;
}

std::vector<grobner::Vec> as_vecs(const Basis& b) { return {b[0], b[1], b[2]}; }

// Scale so the first nonzero entry has leading coefficient 1.
PolyVector normalized(PolyVector v) {
  for (const auto& p : v)
    if (!p.is_zero()) {
      Scalar c = 1 / p.leading_coeff();
      for (auto& q : v) q *= c;
      break;
    }
  return v;
}

bool inter_reduce(Basis& basis) {
  bool any = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < 3; ++i) {
      grobner::GroebnerBasis others = grobner::buchberger({basis[(i + 1) % 3], basis[(i + 2) % 3]}, 2, 4);
      PolyVector reduced = others.normal_form(basis[i]);
      if (vector_degree(reduced) < vector_degree(basis[i])) {
        basis[i] = std::move(reduced);
        changed = any = true;
      }
    }
  }
  return any;
}

Scalar value_at(const Poly& p, const Scalar& s, const Scalar& t) {
  return p.evaluate(0, s).evaluate(1, t).constant_term();
}

// alpha with o = alpha * a, or nullopt. Both vectors are numeric.
std::optional<Scalar> proportion(const std::array<Scalar, 4>& o, const std::array<Scalar, 4>& a) {
  std::optional<Scalar> alpha;
  for (int i = 0; i < 4; ++i) {
    if (sgn(a[i]) == 0) {
      if (sgn(o[i]) != 0) return std::nullopt;
      continue;
    }
    Scalar q = o[i] / a[i];
    if (alpha && *alpha != q) return std::nullopt;
    alpha = q;
  }
  return alpha;
}

std::array<Scalar, 4> numeric_outer(const std::array<std::array<Scalar, 4>, 3>& v) {
  std::array<Scalar, 4> out;
  for (int skip = 0; skip < 4; ++skip) {
    int c[3], k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != skip) c[k++] = j;
    Scalar m = v[0][c[0]] * (v[1][c[1]] * v[2][c[2]] - v[1][c[2]] * v[2][c[1]]) -
               v[0][c[1]] * (v[1][c[0]] * v[2][c[2]] - v[1][c[2]] * v[2][c[0]]) +
               v[0][c[2]] * (v[1][c[0]] * v[2][c[1]] - v[1][c[1]] * v[2][c[0]]);
    out[skip] = skip % 2 == 0 ? m : -m;
  }
  return out;
}

int degree_sum(const Basis& b) {
  int sum = 0;
  for (const auto& v : b) sum += std::max(0, vector_degree(v));
  return sum;
}

// Looks for a triple of smaller degree sum among the low-degree elements of a
// reduced Groebner basis of Syz(a). A triple whose outer product is a nonzero
// constant multiple of a is a basis, so candidates are screened at two
// points and then checked exactly.
bool lower_degree_basis(Basis& basis, const Parametrization& p) {
  constexpr std::size_t kPool = 24;
  const int current = degree_sum(basis);
  const grobner::GroebnerBasis gb = grobner::buchberger(grobner::syzygy_generators(p.a), 2, 4);
  std::vector<PolyVector> pool(gb.elements().begin(), gb.elements().end());
  std::stable_sort(pool.begin(), pool.end(),
                   [](const PolyVector& x, const PolyVector& y) { return vector_degree(x) < vector_degree(y); });
  if (pool.size() > kPool) pool.resize(kPool);
  const int n = static_cast<int>(pool.size());

  const std::array<std::pair<Scalar, Scalar>, 2> points{{{Scalar(2), Scalar(-3)}, {Scalar(5), Scalar(7, 2)}}};
  std::vector<std::array<std::array<Scalar, 4>, 2>> values(n);
  std::array<std::array<Scalar, 4>, 2> a_values;
  for (int k = 0; k < 2; ++k) {
    for (int c = 0; c < 4; ++c) a_values[k][c] = value_at(p.a[c], points[k].first, points[k].second);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < 4; ++c) values[i][k][c] = value_at(pool[i][c], points[k].first, points[k].second);
  }

  struct Triple {
    int sum, i, j, k;
  };
  std::vector<Triple> triples;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        int sum = std::max(0, vector_degree(pool[i])) + std::max(0, vector_degree(pool[j])) +
                  std::max(0, vector_degree(pool[k]));
        if (sum < current && sum >= p.d) triples.push_back({sum, i, j, k});
      }
  std::stable_sort(triples.begin(), triples.end(), [](const Triple& x, const Triple& y) { return x.sum < y.sum; });

  for (const auto& t : triples) {
    std::optional<Scalar> alpha;
    bool ok = true;
    for (int k = 0; k < 2 && ok; ++k) {
      auto o = numeric_outer({values[t.i][k], values[t.j][k], values[t.k][k]});
      auto q = proportion(o, a_values[k]);
      ok = q && sgn(*q) != 0 && (!alpha || *alpha == *q);
      if (ok) alpha = q;
    }
    if (!ok) continue;
    PolyVector o = outer_product(pool[t.i], pool[t.j], pool[t.k]);
    bool exact = true;
    for (int c = 0; c < 4 && exact; ++c) exact = o[c] == *alpha * p.a[c];
    if (!exact) continue;
    basis = {pool[t.i], pool[t.j], pool[t.k]};
    return true;
  }
  return false;
}

bounds::Case classify(const PipelineReport& report, const PolyVector& b) {
  if (report.branch == Branch::pd1) return bounds::Case::pd1;
  if (report.height != 3) return bounds::Case::general;
  PolyVector nonzero;
  for (const auto& g : b)
    if (!g.is_zero()) nonzero.push_back(g);
  if (nonzero.size() == 4 &&
      bounds::general_aci_shape_check(grobner::free_resolution(nonzero, false), report.d))
    return bounds::Case::generic_aci;
  return bounds::Case::height3;
}

}  // namespace

int vector_degree(const PolyVector& v) {
  int d = kDegreeOfZero;
  for (const auto& p : v) d = std::max(d, p.degree());
  return d;
}

std::string branch_name(Branch b) { return b == Branch::pd1 ? "pd1" : "pd2"; }

Parametrization validate(const PolyVector& a) {
  if (a.size() != 4) throw InvalidInput("expected four polynomials, got " + std::to_string(a.size()));
  Parametrization p;
  p.a = a;
  bool any = false, all_constant = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].nvars() != 2) throw InvalidInput("parametrization entries must be polynomials in s, t");
    if (a[i].is_zero()) {
      p.warnings.push_back("a" + std::to_string(i + 1) + " is zero");
      continue;
    }
    any = true;
    p.d = std::max(p.d, a[i].degree());
    all_constant = all_constant && a[i].is_constant();
  }
  if (!any) throw InvalidInput("all four polynomials are zero");
  Poly g = arith::gcd_many(a);
  if (!g.is_constant()) throw InvalidInput("common factor " + g.to_string());
  if (all_constant) p.warnings.push_back("all entries are constant");
  return p;
}

PolyVector homogenize_ideal(const Parametrization& p) {
  PolyVector b;
  for (const auto& ai : p.a) b.push_back(arith::homogenize(ai, p.d));
  if (!arith::gcd_many(b).is_constant()) throw VerificationError("homogenized generators share a factor");
  return b;
}

PolyVector outer_product(const PolyVector& p, const PolyVector& q, const PolyVector& r) {
  if (p.size() != 4 || q.size() != 4 || r.size() != 4) throw InvalidInput("outer_product: vectors of length 4 expected");
  PolyVector out;
  for (int skip = 0; skip < 4; ++skip) {
    int c[3], k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != skip) c[k++] = j;
    Poly m = det3(p[c[0]], p[c[1]], p[c[2]], q[c[0]], q[c[1]], q[c[2]], r[c[0]], r[c[1]], r[c[2]]);
    out.push_back(skip % 2 == 0 ? m : -m);
  }
  return out;
}

Scalar verify_mu_basis(const Basis& basis, const Parametrization& p) {
  for (int k = 0; k < 3; ++k) {
    if (basis[k].size() != 4) throw BasisRejected("basis vectors must have four entries");
    if (!dot(basis[k], p.a).is_zero()) throw BasisRejected("not a syzygy: vector " + std::to_string(k + 1));
  }

  PolyVector o = outer_product(basis[0], basis[1], basis[2]);
  if (std::all_of(o.begin(), o.end(), [](const Poly& x) { return x.is_zero(); }))
    throw BasisRejected("alpha = 0 (degenerate triple)");
  Scalar alpha = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (!p.a[i].is_zero()) {
      auto [quot, rem] = divide(o[i], p.a[i]);
      if (!rem.is_zero() || !quot.is_constant()) throw BasisRejected("outer product not proportional");
      alpha = quot.constant_term();
      break;
    }
  for (std::size_t i = 0; i < 4; ++i)
    if (o[i] != alpha * p.a[i]) throw BasisRejected("outer product not proportional");
  if (sgn(alpha) == 0) throw BasisRejected("outer product not proportional");

  std::vector<grobner::Vec> syz = grobner::syzygy_generators(p.a);
  grobner::GroebnerBasis spanned = grobner::buchberger(as_vecs(basis), 2, 4);
  for (const auto& s : syz)
    if (!spanned.contains(s)) throw BasisRejected("does not generate Syz");
  grobner::GroebnerBasis full = grobner::buchberger(syz, 2, 4);
  for (const auto& v : basis)
    if (!full.contains(v)) throw BasisRejected("does not generate Syz");
  return alpha;
}

Basis extract_basis(const PolyMatrix& G, const PolyMatrix& N, int n) {
  const int m = N.rows();
  if (N.cols() != m || G.cols() != m || G.rows() != 4 || n != m - 3)
    throw InvalidInput("extract_basis: expected G 4 x m, N m x m, n = m - 3");
  if (!arith::determinant(N).is_nonzero_constant()) throw InvalidInput("extract_basis: N is not invertible");
  PolyMatrix GN = G * N;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < 4; ++i)
      if (!GN(i, j).is_zero()) throw InvalidInput("extract_basis: G N e_" + std::to_string(j + 1) + " is not zero");
  return {GN.col(n), GN.col(n + 1), GN.col(n + 2)};
}

PipelineResult compute_mu_basis(const Parametrization& p, const PipelineOptions& options) {
  PipelineResult out;
  PipelineReport& report = out.report;
  report.d = p.d;
  report.warnings = p.warnings;
  const int d = p.d;

  auto start = Clock::now();
  PolyVector b = homogenize_ideal(p);
  grobner::FreeResolution res = grobner::free_resolution(b, true);
  report.timings.emplace_back("resolution", seconds_since(start));
  report.shifts0 = res.shifts0;
  report.q_shifts = res.shifts1;
  report.p_shifts = res.shifts2;
  report.beta2 = res.r2();
  if (res.r0() != 4 || res.r1() - res.r2() != 3) throw VerificationError("syzygy module does not have rank 3");

  const PolyMatrix G = arith::dehomogenize(res.d1);
  report.gamma1 = std::max(0, G.degree());
  Basis basis;
  start = Clock::now();
  if (res.r2() == 0) {
    report.branch = Branch::pd1;
    for (int i = 0; i < 3; ++i) basis[i] = G.col(i);
    int total = 0;
    for (int q : res.shifts1) {
      report.mu.push_back(q - d);
      total += q - d;
    }
    if (total != d) throw VerificationError("pd1 shifts do not sum to d");
  } else {
    report.branch = Branch::pd2;
    const PolyMatrix F = arith::dehomogenize(res.d2);
    report.gamma2 = std::max(0, F.degree());
    if (report.gamma1 > 2 * d - 1) throw VerificationError("dehomogenized first map exceeds degree 2d-1");
    if (report.gamma2 > 2 * d) throw VerificationError("dehomogenized second map exceeds degree 2d");
    qs::CompletionCertificate cert = qs::complete_columns(F, options.seed, options.strategy);
    CompletionSummary summary;
    summary.m = F.rows();
    summary.n = F.cols();
    summary.deg_F = report.gamma2;
    summary.deg_M = cert.deg_M;
    summary.deg_N = std::max(0, cert.M_inv.degree());
    summary.bound = cert.bound;
    summary.within_bound = cert.within_bound;
    summary.det = cert.det;
    summary.steps = cert.steps;
    report.completion = summary;
    basis = extract_basis(G, cert.M_inv, F.cols());
  }
  report.timings.emplace_back("basis", seconds_since(start));

  report.extracted_degree = std::max(0, std::max({vector_degree(basis[0]), vector_degree(basis[1]), vector_degree(basis[2])}));
  if (options.inter_reduce) {
    start = Clock::now();
    bool lowered = lower_degree_basis(basis, p);
    report.inter_reduced = inter_reduce(basis) || lowered;
    report.timings.emplace_back("inter_reduction", seconds_since(start));
  }
  for (auto& v : basis) v = normalized(std::move(v));
  std::sort(basis.begin(), basis.end(), [](const PolyVector& x, const PolyVector& y) {
    int dx = vector_degree(x), dy = vector_degree(y);
    if (dx != dy) return dx < dy;
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::string sx = x[i].to_string(), sy = y[i].to_string();
      if (sx != sy) return sx < sy;
    }
    return false;
  });

  start = Clock::now();
  out.basis.alpha = verify_mu_basis(basis, p);
  report.timings.emplace_back("verification", seconds_since(start));
  out.basis.vectors = basis;
  for (int i = 0; i < 3; ++i) {
    out.basis.degrees[i] = std::max(0, vector_degree(basis[i]));
    out.basis.degree_sum += out.basis.degrees[i];
  }
  const int max_degree = *std::max_element(out.basis.degrees.begin(), out.basis.degrees.end());

  start = Clock::now();
  report.height = grobner::height(b);
  bounds::Case c = classify(report, b);
  report.bounds = bounds::evaluate_bounds(d, 4, c, report.beta2, report.gamma1, report.gamma2);
  report.bounds.verdicts = bounds::check_resolution_bounds(res, d, 4);
  auto& verdicts = report.bounds.verdicts;
  verdicts.push_back(
      bounds::make_verdict("extracted basis degree <= case " + bounds::case_label(c) + " value",
                           report.bounds.case_value(), report.extracted_degree));
  verdicts.push_back(
      bounds::make_verdict("basis degree <= case " + bounds::case_label(c) + " value", report.bounds.case_value(),
                           max_degree));
  verdicts.push_back(bounds::make_verdict("basis degree <= 2d-min(2,d)", report.bounds.lazard, max_degree, false));
  if (report.completion) {
    verdicts.push_back(
        bounds::make_verdict("extracted basis degree <= gamma1(beta2+2)QS(D)", report.bounds.basis_bound,
                             report.extracted_degree, false));
    verdicts.push_back(bounds::make_verdict("deg M <= QS(n(1+deg F))", report.completion->bound,
                                            report.completion->deg_M, false));
  }
  report.timings.emplace_back("bounds", seconds_since(start));
  return out;
}

bounds::BoundsReport parametrization_bounds(const Parametrization& p) {
  PolyVector b = homogenize_ideal(p);
  grobner::FreeResolution res = grobner::free_resolution(b, true);
  PipelineReport report;
  report.d = p.d;
  report.branch = res.r2() == 0 ? Branch::pd1 : Branch::pd2;
  report.beta2 = res.r2();
  report.gamma1 = std::max(0, arith::dehomogenize(res.d1).degree());
  if (res.r2() > 0) report.gamma2 = std::max(0, arith::dehomogenize(res.d2).degree());
  report.height = grobner::height(b);
  bounds::BoundsReport out =
      bounds::evaluate_bounds(p.d, 4, classify(report, b), report.beta2, report.gamma1, report.gamma2);
  out.verdicts = bounds::check_resolution_bounds(res, p.d, 4);
  return out;
}

}  // namespace mubasis
