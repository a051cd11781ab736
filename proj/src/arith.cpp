#include "mubasis/arith.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>

#include "mubasis/errors.hpp"

namespace mubasis::arith {

namespace {

int main_variable(const Poly& a, const Poly& b) {
  for (int v = kMaxVars - 1; v >= 0; --v)
    if (a.involves(v) || b.involves(v)) return v;
  return -1;
}

Poly var_power(int nvars, int var, int e) {
  Monomial m;
  m.exp[var] = e;
  return Poly::monomial(nvars, m, 1);
}

Poly leading_coeff_in(const Poly& p, int var) {
  auto c = p.coefficients_in(var);
  return c.back();
}

// Pseudo-remainder of a by b in `var`.
Poly pseudo_remainder(const Poly& a, const Poly& b, int var) {
  const int n = b.degree_in(var);
  const Poly lcb = leading_coeff_in(b, var);
  Poly r = a;
  while (!r.is_zero() && r.degree_in(var) >= n) {
    int dr = r.degree_in(var);
    Poly lcr = leading_coeff_in(r, var);
    r = lcb * r - lcr * var_power(r.nvars(), var, dr - n) * b;
  }
  return r;
}

Poly primitive_part(const Poly& p, int var) { return exact_divide(p, content_in(p, var)); }

Poly gcd_nonzero(const Poly& a, const Poly& b) {
  const int n = std::max(a.nvars(), b.nvars());
  if (a.is_constant() || b.is_constant()) return Poly::constant(n, 1);
  const int x = main_variable(a, b);
  if (!a.involves(x)) return gcd_nonzero(a, content_in(b, x));
  if (!b.involves(x)) return gcd_nonzero(content_in(a, x), b);

  Poly ca = content_in(a, x), cb = content_in(b, x);
  Poly content_gcd = gcd_nonzero(ca, cb);
  Poly A = exact_divide(a, ca), B = exact_divide(b, cb);
  if (A.degree_in(x) < B.degree_in(x)) std::swap(A, B);
  Poly g(n);
  while (true) {
    Poly r = pseudo_remainder(A, B, x);
    if (r.is_zero()) {
      g = B;
      break;
    }
    if (r.degree_in(x) == 0) {
      g = Poly::constant(n, 1);
      break;
    }
    A = std::move(B);
    B = primitive_part(r, x).monic();
  }
  return (content_gcd * g).monic();
}

}  // namespace

Poly content_in(const Poly& p, int var) {
  if (p.is_zero()) return p;
  if (!p.involves(var)) return p.monic();
  Poly c(p.nvars());
  for (const auto& coeff : p.coefficients_in(var)) {
    if (coeff.is_zero()) continue;
    c = c.is_zero() ? coeff.monic() : gcd_nonzero(c, coeff);
    if (c.is_constant()) break;
  }
  return c;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw InvalidInput("undefined gcd of zero family");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  return gcd_nonzero(a, b);
}

namespace {

using u64 = std::uint64_t;

constexpr std::array<u64, 3> kPrimes{2305843009213693951ULL, 2147483647ULL, 998244353ULL};

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  for (; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

// Residue of a rational; nullopt when p divides the denominator.
std::optional<u64> residue(const Scalar& c, u64 p) {
  u64 den = mpz_fdiv_ui(c.get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  u64 num = mpz_fdiv_ui(c.get_num_mpz_t(), p);
  return mulmod(num, powmod(den, p - 2, p), p);
}

using ModPoly = std::vector<u64>;  // ascending, trimmed

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Degree of gcd over F_p.
int gcd_degree_mod(ModPoly a, ModPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    u64 inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      u64 q = mulmod(a.back(), inv, p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - mulmod(q, b[i], p)) % p;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// f(x, y := y0) mod p as a polynomial in x. Other variables must be absent.
std::optional<ModPoly> specialize(const Poly& f, int x, int y, u64 y0, u64 p) {
  ModPoly out(static_cast<std::size_t>(std::max(0, f.degree_in(x))) + 1, 0);
  std::vector<u64> pw(static_cast<std::size_t>(y < 0 ? 0 : std::max(0, f.degree_in(y))) + 1, 1);
  for (std::size_t i = 1; i < pw.size(); ++i) pw[i] = mulmod(pw[i - 1], y0, p);
  for (const auto& t : f.terms()) {
    auto c = residue(t.coeff, p);
    if (!c) return std::nullopt;
    u64 v = y < 0 ? *c : mulmod(*c, pw[t.mono.exp[y]], p);
    auto& slot = out[t.mono.exp[x]];
    slot = (slot + v) % p;
  }
  return out;
}

// Proves that a and b share no factor of positive degree in x. Requires one
// of them to keep its x-degree under the specialization so that any common
// factor keeps its x-degree too.
bool no_common_factor_in(const Poly& a, const Poly& b, int x, int y, int attempts) {
  if (!a.involves(x) && !b.involves(x)) return true;
  const Poly& keep = a.involves(x) ? a : b;
  const Poly& other = a.involves(x) ? b : a;
  std::mt19937_64 rng(0x5eed + 131 * x + y);
  for (int k = 0; k < attempts; ++k) {
    const u64 p = kPrimes[k % kPrimes.size()];
    const u64 y0 = y < 0 ? 0 : rng() % p;
    auto fk = specialize(keep, x, y, y0, p);
    auto fo = specialize(other, x, y, y0, p);
    if (!fk || !fo) continue;
    if (static_cast<int>(fk->size()) - 1 != keep.degree_in(x) || fk->back() == 0) continue;
    ModPoly g = *fo;
    trim(g);
    if (g.empty()) continue;  // other vanishes on the specialization
    if (gcd_degree_mod(*fk, g, p) == 0) return true;
  }
  return false;
}

}  // namespace

bool certify_coprime(const Poly& a, const Poly& b, int attempts) {
  if (a.is_zero() || b.is_zero()) return (a.is_zero() ? b : a).is_nonzero_constant();
  if (a.is_constant() || b.is_constant()) return true;
  std::vector<int> vars;
  for (int v = 0; v < kMaxVars; ++v)
    if (a.involves(v) || b.involves(v)) vars.push_back(v);
  if (vars.size() > 2) return false;
  const int x = vars[0], y = vars.size() > 1 ? vars[1] : -1;
  if (!no_common_factor_in(a, b, x, y, attempts)) return false;
  return y < 0 || no_common_factor_in(a, b, y, x, attempts);
}

bool coprime(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return false;
  return certify_coprime(a, b) || gcd(a, b).is_constant();
}

Poly gcd_many(const PolyVector& ps) {
  if (ps.empty()) throw InvalidInput("undefined gcd of zero family");
  Poly g(ps.front().nvars());
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p.monic() : gcd_nonzero(g, p);
    if (g.is_constant()) break;
  }
  if (g.is_zero()) throw InvalidInput("undefined gcd of zero family");
  return g;
}

Poly homogenize(const Poly& p, int d) {
  if (p.nvars() != 2) throw InvalidInput("homogenize expects a polynomial in s, t");
  if (p.degree() > d) throw InvalidInput("homogenize: degree exceeds target degree");
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    m.exp[2] = d - m.degree();
    terms.push_back({m, t.coeff});
  }
  return Poly(3, std::move(terms));
}

Poly dehomogenize(const Poly& p) { return p.evaluate(2, 1).with_nvars(2); }

PolyMatrix dehomogenize(const PolyMatrix& m) {
  return m.map([](const Poly& p) { return dehomogenize(p); });
}

Poly determinant(const PolyMatrix& input) {
  if (input.rows() != input.cols()) throw InvalidInput("determinant of a non-square matrix");
  const int n = input.rows();
  if (n == 0) return Poly::constant(input.nvars(), 1);
  PolyMatrix m = input;
  Poly prev = Poly::constant(m.nvars(), 1);
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m(i, k).is_zero()) {
          pivot = i;
          break;
        }
      if (pivot < 0) return Poly(m.nvars());
      m.swap_rows(k, pivot);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Poly num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = prev.is_nonzero_constant() ? num * (1 / prev.constant_term()) : exact_divide(num, prev);
      }
      m(i, k) = Poly(m.nvars());
    }
    prev = m(k, k);
  }
  Poly d = m(n - 1, n - 1);
  return sign > 0 ? d : -d;
}

namespace {

PolyMatrix minor_matrix(const PolyMatrix& m, int skip_row, int skip_col) {
  PolyMatrix out(m.nvars(), m.rows() - 1, m.cols() - 1);
  for (int i = 0, r = 0; i < m.rows(); ++i) {
    if (i == skip_row) continue;
    for (int j = 0, c = 0; j < m.cols(); ++j) {
      if (j == skip_col) continue;
      out(r, c++) = m(i, j);
    }
    ++r;
  }
  return out;
}

}  // namespace

MatrixInverse mat_inverse(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("mat_inverse: matrix is not square");
  const int n = m.rows();
  Poly det = determinant(m);
  if (!det.is_nonzero_constant()) throw InvalidInput("not invertible over the polynomial ring");
  Scalar d = det.constant_term();
  PolyMatrix inv(m.nvars(), n, n);
  if (n == 1) {
    inv(0, 0) = Poly::constant(m.nvars(), 1 / d);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Poly cof = determinant(minor_matrix(m, i, j));
        if ((i + j) % 2) cof = -cof;
        inv(j, i) = cof * (1 / d);
      }
  }
  if (!(inv * m).is_identity()) throw VerificationError("mat_inverse: N*M != I");
  return {inv, d};
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b, int var) {
  const int n = std::max(a.nvars(), b.nvars());
  for (int v = 0; v < kMaxVars; ++v)
    if (v != var && (a.involves(v) || b.involves(v))) throw InvalidInput("extended_gcd expects univariate input");
  Poly r0 = a, r1 = b;
  Poly x0 = Poly::constant(n, 1), x1(n);
  Poly y0(n), y1 = Poly::constant(n, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divide(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly x2 = x0 - q * x1;
    Poly y2 = y0 - q * y1;
    x0 = std::move(x1);
    x1 = std::move(x2);
    y0 = std::move(y1);
    y1 = std::move(y2);
  }
  if (r0.is_zero()) return {r0, x0, y0};
  Scalar inv = 1 / r0.leading_coeff();
  return {r0 * inv, x0 * inv, y0 * inv};
}

std::pair<Poly, Poly> divide_by_monic(const Poly& f, const Poly& divisor, int var) {
  const int n = std::max(f.nvars(), divisor.nvars());
  auto dc = divisor.coefficients_in(var);
  if (dc.empty()) throw InvalidInput("division by the zero polynomial");
  const int dn = static_cast<int>(dc.size()) - 1;
  if (!dc.back().is_nonzero_constant()) throw InvalidInput("divisor is not monic in the division variable");
  const Scalar inv = 1 / dc.back().constant_term();
  auto fc = f.coefficients_in(var);
  if (static_cast<int>(fc.size()) <= dn) return {Poly(n), f};
  std::vector<Poly> qc(fc.size() - dn, Poly(n));
  for (int k = static_cast<int>(fc.size()) - 1; k >= dn; --k) {
    if (fc[k].is_zero()) continue;
    Poly q = fc[k] * inv;
    for (int i = 0; i <= dn; ++i)
      if (!dc[i].is_zero()) fc[k - dn + i] -= q * dc[i];
    qc[k - dn] = std::move(q);
  }
  fc.resize(dn);
  return {Poly::from_coefficients(n, var, qc), Poly::from_coefficients(n, var, fc)};
}

ResultantData resultant_with_cofactors(const Poly& f, const Poly& g, int var) {
  const int nv = std::max(f.nvars(), g.nvars());
  if (f.is_zero() || g.is_zero()) return {Poly(nv), Poly(nv), Poly(nv)};
  auto fc = f.coefficients_in(var), gc = g.coefficients_in(var);
  const int m = static_cast<int>(fc.size()) - 1, n = static_cast<int>(gc.size()) - 1;
  if (m == 0 && n == 0) return {Poly::constant(nv, 1), Poly(nv), Poly(nv)};  // degenerate; handled by callers
  if (n == 0) return {g.pow(m), Poly(nv), g.pow(m - 1)};
  if (m == 0) return {f.pow(n), f.pow(n - 1), Poly(nv)};
  const int size = m + n;
  // Row r holds the coefficient of var^(size-1-r); columns 0..n-1 are var^i f,
  // columns n..n+m-1 are var^i g.
  PolyMatrix syl(nv, size, size);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) syl(size - 1 - (i + k), i) = fc[k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) syl(size - 1 - (i + k), n + i) = gc[k];
  Poly res = determinant(syl);
  if (res.is_zero()) return {res, Poly(nv), Poly(nv)};
  std::vector<Poly> z(size, Poly(nv));
  const int last = size - 1;
  for (int i = 0; i < size; ++i) {
    Poly c = determinant(minor_matrix(syl, last, i));
    z[i] = ((last + i) % 2) ? -c : c;
  }
  std::vector<Poly> xc(z.begin(), z.begin() + n), yc(z.begin() + n, z.end());
  ResultantData out{res, Poly::from_coefficients(nv, var, xc), Poly::from_coefficients(nv, var, yc)};
  if (out.x * f + out.y * g != res) throw VerificationError("resultant cofactor identity failed");
  return out;
}

}  // namespace mubasis::arith
