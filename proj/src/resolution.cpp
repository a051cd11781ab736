#include "mubasis/resolution.hpp"

#include <algorithm>

#include "mubasis/errors.hpp"

namespace mubasis::grobner {

namespace {

long binomial(long n, long k) {
  if (k < 0 || n < k) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

PolyMatrix matrix_from_columns(int nvars, int rows, const std::vector<Vec>& cols) {
  PolyMatrix m(nvars, rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i].is_zero() ? Poly(nvars) : cols[j][i];
  return m;
}

std::vector<int> column_shifts(const std::vector<Vec>& cols, const std::vector<int>& row_shifts) {
  std::vector<int> out;
  for (const auto& c : cols) out.push_back(weighted_degree(c, row_shifts));
  return out;
}

void check_graded(const PolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const Poly& p = m(i, j);
      if (p.is_zero()) continue;
      if (!p.is_homogeneous() || p.degree() != cols[j] - rows[i])
        throw VerificationError("free_resolution: map is not graded");
    }
}

}  // namespace

FreeResolution free_resolution(const PolyVector& input, bool fixed_first_map) {
  if (input.empty()) throw InvalidInput("free_resolution: no generators");
  FreeResolution res;
  res.nvars = input.front().nvars();
  res.fixed_first_map = fixed_first_map;
  int top = 0;
  bool any = false;
  for (const auto& g : input) {
    if (!g.is_homogeneous()) throw InvalidInput("free_resolution: non-homogeneous generator " + g.to_string());
    if (!g.is_zero()) {
      top = any ? std::max(top, g.degree()) : g.degree();
      any = true;
    }
  }
  if (!any) throw InvalidInput("free_resolution: zero ideal");
  res.degree = top;
  const int nv = res.nvars;

  if (fixed_first_map) {
    res.generators = input;
  } else {
    std::vector<Vec> v;
    for (const auto& g : input)
      if (!g.is_zero()) v.push_back({g});
    for (auto& g : minimal_generators(v)) res.generators.push_back(g.front());
  }
  const int r0 = static_cast<int>(res.generators.size());
  for (const auto& g : res.generators) res.shifts0.push_back(g.is_zero() ? top : g.degree());

  // First syzygies: those of the nonzero generators, plus a unit vector for
  // every zero generator.
  std::vector<int> nz;
  std::vector<Vec> nz_gens;
  for (int i = 0; i < r0; ++i)
    if (!res.generators[i].is_zero()) {
      nz.push_back(i);
      nz_gens.push_back({res.generators[i]});
    }
  std::vector<Vec> syz1;
  if (nz_gens.size() > 1)
    for (const auto& w : syzygy_generators(nz_gens)) {
      Vec full(r0, Poly(nv));
      for (std::size_t k = 0; k < nz.size(); ++k) full[nz[k]] = w[k];
      syz1.push_back(std::move(full));
    }
  for (int i = 0; i < r0; ++i)
    if (res.generators[i].is_zero()) {
      Vec e(r0, Poly(nv));
      e[i] = Poly::constant(nv, 1);
      syz1.push_back(std::move(e));
    }
  std::vector<Vec> cols1 = minimal_generators(syz1, res.shifts0);
  res.shifts1 = column_shifts(cols1, res.shifts0);
  res.d1 = matrix_from_columns(nv, r0, cols1);

  std::vector<Vec> cols2;
  if (!cols1.empty()) cols2 = minimal_generators(syzygy_generators(cols1, res.shifts0), res.shifts1);
  res.shifts2 = column_shifts(cols2, res.shifts1);
  res.d2 = matrix_from_columns(nv, static_cast<int>(cols1.size()), cols2);
  if (!cols2.empty() && !syzygy_generators(cols2, res.shifts1).empty())
    throw AlgorithmFailure("free_resolution: resolution longer than 2");

  // Exactness and grading.
  PolyMatrix row(nv, 1, r0);
  for (int i = 0; i < r0; ++i) row(0, i) = res.generators[i];
  if (res.r1() > 0 && !(row * res.d1).is_zero()) throw VerificationError("free_resolution: gens * d1 != 0");
  if (res.r2() > 0 && !(res.d1 * res.d2).is_zero()) throw VerificationError("free_resolution: d1 * d2 != 0");
  if (r0 - res.r1() + res.r2() != 1) throw VerificationError("free_resolution: alternating rank sum != 1");
  check_graded(res.d1, res.shifts0, res.shifts1);
  check_graded(res.d2, res.shifts1, res.shifts2);
  for (int i = 0; i < res.d2.rows(); ++i)
    for (int j = 0; j < res.d2.cols(); ++j)
      if (sgn(res.d2(i, j).constant_term()) != 0) throw VerificationError("free_resolution: d2 is not minimal");
  return res;
}

ResolutionInvariants resolution_invariants(const FreeResolution& res) {
  ResolutionInvariants out;
  const std::vector<int>* shifts[3] = {&res.shifts0, &res.shifts1, &res.shifts2};
  bool first = true;
  for (int i = 0; i < 3; ++i) {
    std::map<int, int> row;
    for (int s : *shifts[i]) ++row[s];
    if (shifts[i]->empty()) break;
    out.table.betti.push_back(row);
    out.table.totals.push_back(static_cast<int>(shifts[i]->size()));
    int m = *std::max_element(shifts[i]->begin(), shifts[i]->end()) - i;
    out.table.regularity = first ? m : std::max(out.table.regularity, m);
    first = false;
  }
  out.a = res.r2();
  out.gamma1 = std::max(0, res.d1.degree());
  out.gamma2 = std::max(0, res.d2.degree());
  return out;
}

long quotient_hilbert_function(const GroebnerBasis& gb, int k) {
  if (k < 0) return 0;
  const int n = gb.nvars();
  auto lms = gb.leading_monomials();
  long count = 0;
  Monomial m;
  // Enumerate exponent vectors of total degree k.
  for (int a = 0; a <= k; ++a) {
    if (n == 2) {
      m.exp = {a, k - a, 0};
      bool standard = true;
      for (const auto& l : lms)
        if (l.divides(m)) standard = false;
      count += standard;
      continue;
    }
    for (int b = 0; a + b <= k; ++b) {
      m.exp = {a, b, k - a - b};
      bool standard = true;
      for (const auto& l : lms)
        if (l.divides(m)) {
          standard = false;
          break;
        }
      count += standard;
    }
  }
  return count;
}

long hilbert_function(const GroebnerBasis& gb, int k) {
  if (k < 0) return 0;
  return binomial(k + gb.nvars() - 1, gb.nvars() - 1) - quotient_hilbert_function(gb, k);
}

long hilbert_function(const PolyVector& gens, int k) { return hilbert_function(ideal_basis(gens), k); }

int krull_dimension(const PolyVector& gens) {
  GroebnerBasis gb = ideal_basis(gens);
  const int n = gb.nvars();
  auto lms = gb.leading_monomials();
  if (lms.empty()) return n;
  if (gb.is_unit_ideal()) return -1;
  int best = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    // Independent set: no leading monomial supported inside the set.
    bool independent = true;
    for (const auto& m : lms) {
      bool inside = true;
      for (int v = 0; v < n; ++v)
        if (m.exp[v] > 0 && !(mask & (1 << v))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

int height(const PolyVector& gens) {
  int dim = krull_dimension(gens);
  return dim < 0 ? gens.front().nvars() : gens.front().nvars() - dim;
}

namespace {

PolyVector nonzero(const PolyVector& v) {
  PolyVector out;
  for (const auto& p : v)
    if (!p.is_zero()) out.push_back(p);
  return out;
}

PolyVector reduced_generators(const PolyVector& gens) {
  PolyVector out;
  GroebnerBasis gb = ideal_basis(gens);
  for (const auto& e : gb.elements()) out.push_back(e.front());
  return out;
}

}  // namespace

PolyVector ideal_intersection(const PolyVector& a_in, const PolyVector& b_in) {
  PolyVector a = nonzero(a_in), b = nonzero(b_in);
  if (a.empty() || b.empty()) return {};
  std::vector<Vec> v;
  for (const auto& p : a) v.push_back({p});
  for (const auto& p : b) v.push_back({-p});
  PolyVector out;
  for (const auto& w : syzygy_generators(v)) {
    Poly h(a.front().nvars());
    for (std::size_t i = 0; i < a.size(); ++i) h += w[i] * a[i];
    if (!h.is_zero()) out.push_back(h);
  }
  if (out.empty()) return {};
  return reduced_generators(out);
}

PolyVector ideal_quotient(const PolyVector& K_in, const PolyVector& J_in) {
  if (J_in.empty() && K_in.empty()) throw InvalidInput("ideal_quotient: no ring");
  const int nv = (J_in.empty() ? K_in : J_in).front().nvars();
  PolyVector K = nonzero(K_in), J = nonzero(J_in);
  if (J.empty()) return {Poly::constant(nv, 1)};
  PolyVector result;
  bool first = true;
  for (const auto& f : J) {
    PolyVector quotient;
    if (K.empty()) {
      quotient = {};
    } else {
      std::vector<Vec> v{{f}};
      for (const auto& k : K) v.push_back({k});
      for (const auto& w : syzygy_generators(v))
        if (!w[0].is_zero()) quotient.push_back(w[0]);
      if (!quotient.empty()) quotient = reduced_generators(quotient);
    }
    if (first) {
      result = quotient;
      first = false;
    } else {
      result = ideal_intersection(result, quotient);
    }
    if (result.empty()) break;
  }
  return result;
}

}  // namespace mubasis::grobner
