#include "mubasis/bounds.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>

#include "mubasis/arith.hpp"
#include "mubasis/errors.hpp"
#include "mubasis/grobner.hpp"
#include "mubasis/quillen_suslin.hpp"

namespace mubasis::bounds {

std::string case_label(Case c) {
  switch (c) {
    case Case::general: return "i";
    case Case::height3: return "ii";
    case Case::generic_aci: return "iii";
    case Case::pd1: return "iv";
  }
  return "?";
}

Verdict make_verdict(std::string name, const BigInt& bound, const BigInt& observed, bool asserted) {
  return Verdict{std::move(name), bound, observed, observed <= bound, asserted};
}

bool BoundsReport::all_asserted_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass || !v.asserted; });
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt basis_degree_formula(long beta2, long gamma1, long gamma2) {
  BigInt D = BigInt(beta2) * (1 + gamma2);
  return BigInt(gamma1) * (beta2 + 2) * qs::qs_formula(D);
}

BigInt case_bound(Case c, int d) {
  const long dd = d;
  switch (c) {
    case Case::general:
      return basis_degree_formula(binomial(3 * dd, 2).get_si(), std::max(0L, 2 * dd - 1), 2 * dd);
    case Case::height3: return basis_degree_formula(std::max(0L, 2 * dd - 1), std::max(0L, 2 * dd - 1), 2 * dd);
    case Case::generic_aci: return basis_degree_formula(dd, dd, 2);
    case Case::pd1: return dd;
  }
  return 0;
}

BoundsReport evaluate_bounds(int d, int m, Case c, int beta2, int gamma1, int gamma2) {
  BoundsReport r;
  r.d = d;
  r.m = m;
  r.applicable = c;
  r.reg_bound = 3 * d - 2;
  r.beta2_bound = binomial(3L * d, 2);
  r.beta2_equal_bound = m * binomial(2L * d, 2);
  r.beta1_bound = beta2 + m - 1;
  r.height3_beta1_bound = 2 * d + 2;
  r.height3_beta2_bound = 2 * d - 1;
  r.lazard = 2 * d - std::min(2, d);
  r.qs_D = BigInt(beta2) * (1 + gamma2);
  r.qs_bound = qs::qs_formula(r.qs_D);
  r.basis_bound = basis_degree_formula(beta2, gamma1, gamma2);
  for (Case k : {Case::general, Case::height3, Case::generic_aci, Case::pd1})
    r.case_values[static_cast<int>(k)] = case_bound(k, d);
  return r;
}

std::vector<Verdict> check_resolution_bounds(const grobner::FreeResolution& res, int d, int m) {
  using namespace grobner;
  PolyVector gens;
  for (const auto& g : res.generators)
    if (!g.is_zero()) gens.push_back(g);
  const FreeResolution minimal = res.fixed_first_map ? free_resolution(gens, false) : res;
  const auto inv = resolution_invariants(minimal);
  const int reg = inv.table.regularity;
  const long beta1 = minimal.r1(), beta2 = minimal.r2();
  GroebnerBasis gb = ideal_basis(gens);
  bool equal_degree = static_cast<int>(gens.size()) == m;
  for (const auto& g : gens) equal_degree = equal_degree && g.degree() == d;

  std::vector<Verdict> out;
  out.push_back(make_verdict("reg(J) <= 3d-2", 3 * d - 2, reg));
  out.push_back(make_verdict("beta2 <= C(3d,2)", binomial(3L * d, 2), beta2));
  out.push_back(make_verdict("beta2 <= H_J(reg)", hilbert_function(gb, reg), beta2));
  if (equal_degree) out.push_back(make_verdict("beta2 <= m*C(2d,2)", m * binomial(2L * d, 2), beta2));
  out.push_back(make_verdict("beta1 <= beta2+m-1", beta2 + m - 1, beta1));
  std::map<int, int> graded;
  for (int p : minimal.shifts2) ++graded[p];
  for (const auto& [p, count] : graded)
    out.push_back(make_verdict("beta2_" + std::to_string(p) + " <= H_J(p-2)-H_J(p-3)",
                               hilbert_function(gb, p - 2) - hilbert_function(gb, p - 3), count));
  int max_q = 0, max_p = 0;
  for (int q : res.shifts1) max_q = std::max(max_q, q);
  for (int p : res.shifts2) max_p = std::max(max_p, p);
  if (!res.shifts1.empty()) out.push_back(make_verdict("max q_i <= 3d-1", 3 * d - 1, max_q));
  if (!res.shifts2.empty()) out.push_back(make_verdict("max p_i <= 3d", 3 * d, max_p));
  if (res.r1() > 0)
    out.push_back(make_verdict("deg d1|u=1 <= 2d-1", 2 * d - 1, std::max(0, arith::dehomogenize(res.d1).degree())));
  if (res.r2() > 0)
    out.push_back(make_verdict("deg d2|u=1 <= 2d", 2 * d, std::max(0, arith::dehomogenize(res.d2).degree())));
  if (equal_degree && m == 4 && grobner::height(gens) == 3) {
    out.push_back(make_verdict("height 3: beta1 <= 2d+2", 2 * d + 2, beta1));
    out.push_back(make_verdict("height 3: beta2 <= 2d-1", 2 * d - 1, beta2));
  }
  // Constant generators (d = 0) fall outside every inequality above.
  if (d < 1)
    for (auto& v : out) v.asserted = false;
  return out;
}

// ---------------------------------------------------------------------------
// Pairwise coprime sequences.

namespace {

// Lazily produced sequence h_1, h_2, ... of pairwise coprime elements of the
// ideal generated by a family with gcd 1.
class CoprimeStream {
 public:
  explicit CoprimeStream(PolyVector f) : f_(std::move(f)) {
    if (f_.size() == 1) return;  // a unit: the constant sequence
    PolyVector head(f_.begin(), f_.end() - 1);
    g_ = arith::gcd_many(head);
    PolyVector reduced;
    for (const auto& p : head) reduced.push_back(exact_divide(p, g_));
    inner_ = std::make_unique<CoprimeStream>(std::move(reduced));
  }

  Poly next() {
    if (!inner_) return f_.front();
    if (produced_ == 0) {
      ++produced_;
      product_ = f_.back();
      g_k_ = g_;
      return f_.back();
    }
    if (produced_ > 1) product_ = product_ * last_;  // deferred so the final product is never formed
    for (std::size_t j = 0; j < kMaxCandidates; ++j) {
      Poly candidate = g_k_ * inner(j);
      if (!arith::coprime(product_, candidate)) continue;
      last_ = product_ + candidate;
      g_k_ = std::move(candidate);
      ++produced_;
      return last_;
    }
    throw AlgorithmFailure("coprime_sequence: no admissible inner element");
  }

 private:
  static constexpr std::size_t kMaxCandidates = 64;

  const Poly& inner(std::size_t j) {
    while (cache_.size() <= j) cache_.push_back(inner_->next());
    return cache_[j];
  }

  PolyVector f_;
  Poly g_;
  std::unique_ptr<CoprimeStream> inner_;
  PolyVector cache_;
  Poly product_;  // h_1 ... h_{k-1}
  Poly last_;     // h_k
  Poly g_k_;
  int produced_ = 0;
};

// Membership test for a zero-dimensional ideal in k[s,t] through the
// multiplication matrices of the quotient algebra: the normal form of
// sum_a s^a (sum_b c_ab t^b) is evaluated by Horner's rule in s.
class QuotientAlgebra {
 public:
  static std::optional<QuotientAlgebra> build(const grobner::GroebnerBasis& gb) {
    if (gb.nvars() != 2) return std::nullopt;
    auto lms = gb.leading_monomials();
    int bound[2] = {-1, -1};
    for (const auto& m : lms)
      for (int v = 0; v < 2; ++v)
        if (m.exp[v] > 0 && m.exp[1 - v] == 0 && (bound[v] < 0 || m.exp[v] < bound[v])) bound[v] = m.exp[v];
    if (lms.empty() || bound[0] < 0 || bound[1] < 0) return std::nullopt;
    QuotientAlgebra q;
    for (int a = 0; a < bound[0]; ++a)
      for (int b = 0; b < bound[1]; ++b) {
        Monomial m{{a, b, 0}};
        if (std::none_of(lms.begin(), lms.end(), [&](const Monomial& l) { return l.divides(m); })) {
          q.index_[m.key()] = q.basis_.size();
          q.basis_.push_back(m);
        }
      }
    for (int v = 0; v < 2; ++v) {
      q.mult_[v].assign(q.basis_.size(), {});
      for (std::size_t j = 0; j < q.basis_.size(); ++j) {
        Monomial m = q.basis_[j];
        ++m.exp[v];
        q.mult_[v][j] = q.coordinates(gb.normal_form(Poly::monomial(2, m)));
      }
    }
    return q;
  }

  bool reduces_to_zero(const Poly& h) const {
    const std::size_t n = basis_.size();
    if (n == 0) return true;
    const int deg_t = std::max(0, h.degree_in(1)), deg_s = std::max(0, h.degree_in(0));
    std::vector<std::vector<Scalar>> t_pow(static_cast<std::size_t>(deg_t) + 1);
    t_pow[0] = unit();
    for (int b = 1; b <= deg_t; ++b) t_pow[b] = apply(1, t_pow[b - 1]);
    std::vector<std::vector<Scalar>> w(static_cast<std::size_t>(deg_s) + 1, std::vector<Scalar>(n));
    for (const auto& term : h.terms())
      for (std::size_t i = 0; i < n; ++i) w[term.mono.exp[0]][i] += term.coeff * t_pow[term.mono.exp[1]][i];
    std::vector<Scalar> acc = w[deg_s];
    for (int a = deg_s - 1; a >= 0; --a) {
      acc = apply(0, acc);
      for (std::size_t i = 0; i < n; ++i) acc[i] += w[a][i];
    }
    return std::all_of(acc.begin(), acc.end(), [](const Scalar& c) { return sgn(c) == 0; });
  }

 private:
  std::vector<Scalar> unit() const {
    std::vector<Scalar> e(basis_.size());
    e[index_.at(Monomial{}.key())] = 1;
    return e;
  }

  std::vector<Scalar> coordinates(const Poly& p) const {
    std::vector<Scalar> c(basis_.size());
    for (const auto& t : p.terms()) c[index_.at(t.mono.key())] = t.coeff;
    return c;
  }

  // Column j of mult_[v] holds the coordinates of x_v * basis_j.
  std::vector<Scalar> apply(int v, const std::vector<Scalar>& x) const {
    std::vector<Scalar> y(basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (sgn(x[j]) == 0) continue;
      const auto& col = mult_[v][j];
      for (std::size_t i = 0; i < basis_.size(); ++i)
        if (sgn(col[i]) != 0) y[i] += col[i] * x[j];
    }
    return y;
  }

  std::vector<Monomial> basis_;
  std::map<std::uint64_t, std::size_t> index_;
  std::array<std::vector<std::vector<Scalar>>, 2> mult_;
};

}  // namespace

PolyVector coprime_sequence(const PolyVector& f_in, int N) {
  if (N < 0) throw InvalidInput("coprime_sequence: negative length");
  PolyVector f;
  for (const auto& p : f_in)
    if (!p.is_zero()) f.push_back(p);
  if (f_in.size() < 2 || f.empty()) throw InvalidInput("coprime_sequence: need at least two polynomials, not all zero");
  Poly g = arith::gcd_many(f);
  if (!g.is_constant()) throw InvalidInput("coprime_sequence: common factor " + g.to_string());

  CoprimeStream stream(f);
  PolyVector out;
  for (int i = 0; i < N; ++i) out.push_back(stream.next());

  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (!arith::coprime(out[i], out[j]))
        throw VerificationError("coprime_sequence: elements " + std::to_string(i) + " and " + std::to_string(j) +
                                " share a factor");
  grobner::GroebnerBasis gb = grobner::ideal_basis(f);
  if (!gb.is_unit_ideal()) {
    auto algebra = QuotientAlgebra::build(gb);
    for (const auto& h : out) {
      bool zero = algebra ? algebra->reduces_to_zero(h) : gb.normal_form(h).is_zero();
      if (!zero) throw VerificationError("coprime_sequence: element outside the ideal");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linkage.

SocleReport socle_check(const PolyVector& b, std::uint64_t seed) {
  using namespace grobner;
  SocleReport r;
  if (b.size() != 4) {
    r.reason = "needs exactly four generators";
    return r;
  }
  const int d = b[0].degree();
  r.d = d;
  r.expected_socle = 2 * d - 3;
  for (const auto& g : b)
    if (g.is_zero() || g.nvars() != 3 || !g.is_homogeneous() || g.degree() != d) {
      r.reason = "generators are not nonzero forms of one degree in s, t, u";
      return r;
    }
  if (d < 1) {
    r.reason = "degree must be positive";
    return r;
  }
  if (height(b) != 3) {
    r.reason = "height is not 3";
    return r;
  }
  std::vector<Vec> as_vectors;
  for (const auto& g : b) as_vectors.push_back({g});
  if (minimal_generators(as_vectors).size() != 4) {
    r.reason = "not minimally 4-generated";
    return r;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-10, 9);
  PolyVector h;
  bool found = false;
  for (r.retries = 0; r.retries < 20 && !found; ++r.retries) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        int a = pick(rng);
        r.transform[i][j] = j < i ? 0 : j == i ? 1 : (a >= 0 ? a + 1 : a);
      }
    h.assign(4, Poly(3));
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) h[i] += Scalar(r.transform[i][j]) * b[j];
    found = height({h[0], h[1], h[2]}) == 3;
  }
  if (!found) {
    r.reason = "no complete intersection found in 20 draws";
    return r;
  }
  r.complete_intersection = {h[0], h[1], h[2]};
  if (ideal_basis(r.complete_intersection).contains(h[3])) {
    r.reason = "ideal is a complete intersection";
    return r;
  }
  r.applicable = true;
  r.linked = ideal_quotient(r.complete_intersection, b);

  GroebnerBasis gG = ideal_basis(r.linked), gK = ideal_basis(r.complete_intersection), gJ = ideal_basis(b);
  const int top = 3 * d - 3;
  for (int t = 0; t <= top + 1; ++t) r.hilbert_linked.push_back(quotient_hilbert_function(gG, t));
  r.artinian = krull_dimension(r.linked) == 0;
  for (int t = 0; t <= top + 1; ++t)
    if (r.hilbert_linked[t] != 0) r.observed_socle = t;
  r.socle_degree = r.observed_socle == r.expected_socle;
  r.hilbert_identity = true;
  for (int t = 0; t <= top; ++t)
    if (r.hilbert_linked[t] != quotient_hilbert_function(gK, top - t) - quotient_hilbert_function(gJ, top - t))
      r.hilbert_identity = false;
  r.symmetric = true;
  for (int t = 0; t <= r.expected_socle; ++t)
    if (r.hilbert_linked[t] != r.hilbert_linked[r.expected_socle - t]) r.symmetric = false;
  r.hilbert_linked.pop_back();
  return r;
}

ResolutionShape general_aci_shape(int d) {
  ResolutionShape s;
  s.shifts0.assign(4, d);
  s.shifts1.assign(d, 2 * d - 1);
  s.shifts1.insert(s.shifts1.end(), 3, 2 * d);
  s.shifts2.assign(d, 2 * d + 1);
  return s;
}

bool general_aci_shape_check(const grobner::FreeResolution& minimal, int d) {
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  ResolutionShape want = general_aci_shape(d);
  return sorted(minimal.shifts0) == want.shifts0 && sorted(minimal.shifts1) == want.shifts1 &&
         sorted(minimal.shifts2) == want.shifts2;
}

}  // namespace mubasis::bounds
