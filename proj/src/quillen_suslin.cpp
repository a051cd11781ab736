#include "mubasis/quillen_suslin.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "mubasis/arith.hpp"
#include "mubasis/errors.hpp"
#include "mubasis/grobner.hpp"

namespace mubasis::qs {

namespace {

constexpr int kS = 0;
constexpr int kT = 1;

using Rng = std::mt19937_64;

// Row operations applied to a matrix A, accumulated into U (so U * A0 = A)
// and its inverse.
class Tracker {
 public:
  explicit Tracker(PolyMatrix a)
      : a_(std::move(a)), u_(PolyMatrix::identity(a_.nvars(), a_.rows())), uinv_(u_) {}

  const PolyMatrix& a() const { return a_; }
  const Poly& v(int i) const { return a_(i, 0); }
  const PolyMatrix& u() const { return u_; }
  const PolyMatrix& uinv() const { return uinv_; }
  int size() const { return a_.rows(); }

  // row_t += f * row_s
  void add(int t, int s, const Poly& f) {
    if (f.is_zero()) return;
    a_.add_row_multiple(t, s, f);
    u_.add_row_multiple(t, s, f);
    for (int r = 0; r < uinv_.rows(); ++r)
      if (!uinv_(r, t).is_zero()) uinv_(r, s) -= f * uinv_(r, t);
  }
  void swap(int i, int j) {
    if (i == j) return;
    a_.swap_rows(i, j);
    u_.swap_rows(i, j);
    for (int r = 0; r < uinv_.rows(); ++r) std::swap(uinv_(r, i), uinv_(r, j));
  }
  void scale(int i, const Scalar& c) {
    a_.scale_row(i, c);
    u_.scale_row(i, c);
    Scalar inv = 1 / c;
    for (int r = 0; r < uinv_.rows(); ++r) uinv_(r, i) *= inv;
  }
  // Left-multiply by E (size x size) whose inverse is einv.
  void apply(const PolyMatrix& e, const PolyMatrix& einv) {
    a_ = e * a_;
    u_ = e * u_;
    uinv_ = uinv_ * einv;
  }

 private:
  PolyMatrix a_, u_, uinv_;
};

// Column with a nonzero constant at i: move it to the top and clear the rest.
void finish_with_unit(Tracker& tr, int i) {
  tr.swap(0, i);
  tr.scale(0, 1 / tr.v(0).constant_term());
  for (int l = 1; l < tr.size(); ++l)
    if (!tr.v(l).is_zero()) tr.add(l, 0, -tr.v(l));
}

int constant_entry(const Tracker& tr) {
  for (int i = 0; i < tr.size(); ++i)
    if (tr.v(i).is_nonzero_constant()) return i;
  return -1;
}

// Rows i, j with x v_i + y v_j = 1: the 2 x 2 block [[x, y], [-v_j, v_i]]
// puts 1 at i and 0 at j.
void apply_pair(Tracker& tr, int i, int j, const Poly& x, const Poly& y) {
  const int k = tr.size();
  const int nv = tr.a().nvars();
  PolyMatrix e = PolyMatrix::identity(nv, k), einv = e;
  const Poly vi = tr.v(i), vj = tr.v(j);
  e(i, i) = x;
  e(i, j) = y;
  e(j, i) = -vj;
  e(j, j) = vi;
  einv(i, i) = vi;
  einv(i, j) = -y;
  einv(j, i) = vj;
  einv(j, j) = x;
  tr.apply(e, einv);
}

bool try_pairs(Tracker& tr, Rng& rng) {
  const int k = tr.size();
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int attempt = 0; attempt < 3; ++attempt) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j || tr.v(i).is_zero() || tr.v(j).is_zero()) continue;
        if (attempt == 0 && j < i) continue;
        // attempt > 0: v_j + sum of random constant multiples of the others.
        Poly g = tr.v(j);
        std::vector<std::pair<int, int>> mix;
        if (attempt > 0)
          for (int l = 0; l < k; ++l) {
            if (l == i || l == j) continue;
            int c = coef(rng);
            if (c != 0) {
              mix.push_back({l, c});
              g += tr.v(l) * Scalar(c);
            }
          }
        auto c = grobner::lift(Poly::constant(tr.a().nvars(), 1), PolyVector{tr.v(i), g});
        if (!c) continue;
        for (auto [l, m] : mix) tr.add(j, l, Poly::constant(tr.a().nvars(), m));
        apply_pair(tr, i, j, (*c)[0], (*c)[1]);
        finish_with_unit(tr, i);
        return true;
      }
  }
  return false;
}

// Length >= 4: random constant combinations v_i + l_i v_last (i < last) are
// unimodular for almost all l, which frees the last slot.
bool try_stable_range(Tracker& tr, Rng& rng) {
  const int k = tr.size();
  const int last = k - 1;
  const int nv = tr.a().nvars();
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::uniform_int_distribution<int> coef(-(2 + attempt), 2 + attempt);
    std::vector<int> lambda(last, 0);
    PolyVector w;
    for (int i = 0; i < last; ++i) {
      if (attempt > 0) lambda[i] = coef(rng);
      w.push_back(tr.v(i) + tr.v(last) * Scalar(lambda[i]));
    }
    auto h = grobner::lift(Poly::constant(nv, 1), w);
    if (!h) continue;
    for (int i = 0; i < last; ++i) tr.add(i, last, Poly::constant(nv, lambda[i]));
    const Poly f = Poly::constant(nv, 1) - tr.v(last);
    for (int i = 0; i < last; ++i) tr.add(last, i, f * (*h)[i]);
    finish_with_unit(tr, last);
    return true;
  }
  return false;
}

// Euclid over k[s] for a column without t.
void euclid_column(Tracker& tr) {
  while (true) {
    int best = -1, count = 0;
    for (int i = 0; i < tr.size(); ++i) {
      if (tr.v(i).is_zero()) continue;
      ++count;
      if (best < 0 || tr.v(i).degree() < tr.v(best).degree()) best = i;
    }
    if (best < 0) throw AlgorithmFailure("completion failed: zero column");
    if (count == 1) {
      if (!tr.v(best).is_nonzero_constant()) throw AlgorithmFailure("completion failed: column not unimodular over k[s]");
      finish_with_unit(tr, best);
      return;
    }
    for (int l = 0; l < tr.size(); ++l) {
      if (l == best || tr.v(l).is_zero()) continue;
      auto [q, r] = divide(tr.v(l), tr.v(best));
      tr.add(l, best, -q);
    }
  }
}

bool monic_in(const Poly& p, int var) {
  if (!p.involves(var)) return false;
  return p.coefficients_in(var).back().is_nonzero_constant();
}

PolyMatrix substitute_t(const PolyMatrix& m, const Poly& value) {
  return m.map([&](const Poly& p) { return p.involves(kT) ? p.substitute(kT, value) : p; });
}

bool divide_matrix(PolyMatrix& m, const Poly& d) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      auto [q, r] = divide(m(i, j), d);
      if (!r.is_zero()) return false;
      m(i, j) = std::move(q);
    }
  return true;
}

struct LocalSolution {
  Poly c;          // in k[s]
  PolyMatrix P;    // c * P_local, with P_local v = e_{i0} over k[s]_c[t]
  PolyMatrix Pinv; // c * P_local^{-1}
};

// Local solution at a resultant c = Res_t(f, g), g = v_i1 + sum lambda_l v_l.
LocalSolution local_solution(const PolyVector& v, int i0, int i1, const std::vector<int>& lambda,
                             const arith::ResultantData& rd, const Poly& g) {
  const int k = static_cast<int>(v.size());
  const int nv = v.front().nvars();
  const Poly& c = rd.res;
  const Poly& f = v[i0];
  PolyMatrix L = PolyMatrix::identity(nv, k), Linv = L;
  for (int l = 0; l < k; ++l) {
    if (l == i0 || l == i1 || lambda[l] == 0) continue;
    L(i1, l) = Poly::constant(nv, lambda[l]);
    Linv(i1, l) = Poly::constant(nv, -lambda[l]);
  }
  PolyMatrix B(nv, k, k), Binv(nv, k, k);
  for (int l = 0; l < k; ++l) B(l, l) = Binv(l, l) = c;
  B(i0, i0) = rd.x;
  B(i0, i1) = rd.y;
  B(i1, i0) = -(c * g);
  B(i1, i1) = c * f;
  Binv(i0, i0) = c * f;
  Binv(i0, i1) = -rd.y;
  Binv(i1, i0) = c * g;
  Binv(i1, i1) = rd.x;
  PolyMatrix C = PolyMatrix::identity(nv, k), Cinv = C;
  for (int l = 0; l < k; ++l) {
    if (l == i0 || l == i1) continue;
    C(l, i0) = -v[l];
    Cinv(l, i0) = v[l];
  }
  LocalSolution out{c, C * B * L, Linv * Binv * Cinv};
  PolyMatrix check = out.P * out.Pinv;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (check(i, j) != (i == j ? c * c : Poly(nv))) throw VerificationError("local solution is not invertible");
  return out;
}

// For v over k[s][t] with v[i0] monic in t, returns (U, U^{-1}) with
// U v = v(t = 0).
std::pair<PolyMatrix, PolyMatrix> horrocks_patch(const PolyVector& v_in, int i0, Rng& rng) {
  const int k = static_cast<int>(v_in.size());
  const int nv = v_in.front().nvars();
  Tracker red(PolyMatrix::column(v_in));
  // Normalize f and reduce the other entries modulo f.
  {
    auto lc = v_in[i0].coefficients_in(kT).back().constant_term();
    red.scale(i0, 1 / lc);
    for (int l = 0; l < k; ++l) {
      if (l == i0) continue;
      auto [q, r] = arith::divide_by_monic(red.v(l), red.v(i0), kT);
      red.add(l, i0, -q);
    }
  }
  PolyVector v = red.a().col(0);
  const Poly& f = v[i0];

  std::vector<LocalSolution> locals;
  Poly running;
  std::uniform_int_distribution<int> coef(-6, 6);
  for (int attempt = 0; attempt < 60; ++attempt) {
    for (int i1 = 0; i1 < k; ++i1) {
      if (i1 == i0) continue;
      std::vector<int> lambda(k, 0);
      Poly g = v[i1];
      if (attempt > 0 || k == 2)
        for (int l = 0; l < k; ++l) {
          if (l == i0 || l == i1) continue;
          lambda[l] = coef(rng);
          g += v[l] * Scalar(lambda[l]);
        }
      if (g.is_zero()) continue;
      auto rd = arith::resultant_with_cofactors(f, g, kT);
      if (rd.res.is_zero()) continue;
      Poly next = running.is_zero() ? rd.res.monic() : arith::gcd(running, rd.res);
      if (!running.is_zero() && next.degree() >= running.degree()) continue;
      locals.push_back(local_solution(v, i0, i1, lambda, rd, g));
      running = next;
      if (running.is_nonzero_constant()) break;
    }
    if (!running.is_zero() && running.is_nonzero_constant()) break;
  }
  if (running.is_zero() || !running.is_nonzero_constant()) throw AlgorithmFailure("completion failed: local denominators not comaximal");

  const Poly t = Poly::variable(nv, kT);
  for (int K = 1; K <= 3; ++K) {
    // sum a_j c_j^K = 1 in k[s].
    PolyVector powers;
    for (const auto& l : locals) powers.push_back(l.c.pow(K));
    PolyVector a(powers.size(), Poly(nv));
    Poly acc = powers[0];
    a[0] = Poly::constant(nv, 1);
    for (std::size_t j = 1; j < powers.size(); ++j) {
      auto e = arith::extended_gcd(acc, powers[j], kS);
      for (std::size_t i = 0; i < j; ++i) a[i] *= e.x;
      a[j] = e.y;
      acc = e.gcd;
    }
    if (!acc.is_nonzero_constant()) throw AlgorithmFailure("completion failed: patching coefficients");
    for (auto& x : a) x *= 1 / acc.constant_term();

    PolyMatrix U = PolyMatrix::identity(nv, k), Uinv = U;
    Poly prev(nv);
    bool ok = true;
    for (std::size_t j = 0; j < locals.size() && ok; ++j) {
      Poly next = prev + t * a[j] * powers[j];
      const Poly c2 = locals[j].c * locals[j].c;
      PolyMatrix E = substitute_t(locals[j].Pinv, prev) * substitute_t(locals[j].P, next);
      PolyMatrix Einv = substitute_t(locals[j].Pinv, next) * substitute_t(locals[j].P, prev);
      ok = divide_matrix(E, c2) && divide_matrix(Einv, c2);
      U = U * E;
      Uinv = Einv * Uinv;
      prev = std::move(next);
    }
    if (!ok) continue;
    if (prev != t) throw VerificationError("patching: partition of t failed");
    // Undo the reduction: U_total = R(0)^{-1} U R.
    PolyMatrix R = red.u(), Rinv = red.uinv();
    PolyMatrix R0inv = substitute_t(Rinv, Poly(nv)), R0 = substitute_t(R, Poly(nv));
    PolyMatrix total = R0inv * U * R, total_inv = Rinv * Uinv * R0;
    PolyVector target;
    for (const auto& p : v_in) target.push_back(p.involves(kT) ? p.substitute(kT, Poly(nv)) : p);
    if (mat_vec(total, v_in) != target) throw VerificationError("patching: U v != v(0)");
    return {total, total_inv};
  }
  throw AlgorithmFailure("completion failed: patching matrices not polynomial");
}

Poly shear(const Poly& p, const Scalar& mu) {
  if (!p.involves(kS) || sgn(mu) == 0) return p;
  return p.substitute(kS, Poly::variable(p.nvars(), kS) + Poly::variable(p.nvars(), kT) * mu);
}

// Unimodular column over k[s,t] through a shear making one entry monic in t,
// patching to t = 0 and Euclid over k[s].
void patch_column(Tracker& tr, Rng& rng) {
  const int k = tr.size();
  bool involves_t = false;
  for (int i = 0; i < k; ++i) involves_t = involves_t || tr.v(i).involves(kT);
  if (!involves_t) {
    euclid_column(tr);
    return;
  }
  const Scalar shears[] = {0, 1, -1, 2, -2, 3, -3, 5, 7};
  for (const Scalar& mu : shears) {
    PolyVector w;
    for (int i = 0; i < k; ++i) w.push_back(shear(tr.v(i), mu));
    int i0 = -1;
    for (int i = 0; i < k; ++i)
      if (monic_in(w[i], kT) && (i0 < 0 || w[i].degree_in(kT) < w[i0].degree_in(kT))) i0 = i;
    if (i0 < 0) continue;
    auto [U, Uinv] = horrocks_patch(w, i0, rng);
    Tracker inner(PolyMatrix::column(w));
    inner.apply(U, Uinv);
    euclid_column(inner);
    PolyMatrix X = inner.u().map([&](const Poly& p) { return shear(p, -mu); });
    PolyMatrix Xinv = inner.uinv().map([&](const Poly& p) { return shear(p, -mu); });
    tr.apply(X, Xinv);
    if (!tr.v(0).is_nonzero_constant()) throw VerificationError("patching: column not reduced");
    for (int i = 1; i < k; ++i)
      if (!tr.v(i).is_zero()) throw VerificationError("patching: column not reduced");
    return;
  }
  throw AlgorithmFailure("completion failed: no shear makes an entry monic");
}

// Returns a label for the strategy used; tr ends with its column equal to e_1.
std::string reduce_column(Tracker& tr, Rng& rng, Strategy strategy) {
  const int k = tr.size();
  if (strategy == Strategy::patching) {
    patch_column(tr, rng);
    return "patch";
  }
  int c = constant_entry(tr);
  if (c >= 0) {
    finish_with_unit(tr, c);
    return "unit";
  }
  if (k >= 4 && try_stable_range(tr, rng)) return "stable";
  if (try_pairs(tr, rng)) return "pair";
  patch_column(tr, rng);
  return "patch";
}

PolyMatrix embed(const PolyMatrix& block, int m, int offset) {
  PolyMatrix out = PolyMatrix::identity(block.nvars(), m);
  for (int i = 0; i < block.rows(); ++i)
    for (int j = 0; j < block.cols(); ++j) out(offset + i, offset + j) = block(i, j);
  return out;
}

void require_two_variables(const PolyMatrix& F) {
  for (int i = 0; i < F.rows(); ++i)
    for (int j = 0; j < F.cols(); ++j)
      if (F(i, j).involves(2)) throw InvalidInput("completion is implemented over k[s,t] only");
}

}  // namespace

bool is_unimodular(const PolyMatrix& F) {
  const int m = F.rows(), n = F.cols();
  if (n < 1 || m < n) throw InvalidInput("is_unimodular: expected m >= n >= 1");
  PolyVector minors;
  std::vector<int> rows(n);
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + n, true);
  do {
    int r = 0;
    for (int i = 0; i < m; ++i)
      if (pick[i]) rows[r++] = i;
    PolyMatrix sub(F.nvars(), n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sub(i, j) = F(rows[i], j);
    Poly d = arith::determinant(sub);
    if (d.is_nonzero_constant()) return true;
    if (!d.is_zero()) minors.push_back(d);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (minors.empty()) return false;
  return grobner::ideal_basis(minors).is_unit_ideal();
}

PolyMatrix left_inverse(const PolyMatrix& F) {
  const int m = F.rows(), n = F.cols();
  const int nv = F.nvars();
  std::vector<grobner::Vec> rows;
  for (int i = 0; i < m; ++i) rows.push_back(F.row(i));
  std::vector<grobner::Vec> targets;
  for (int i = 0; i < n; ++i) {
    targets.emplace_back(n, Poly(nv));
    targets.back()[i] = Poly::constant(nv, 1);
  }
  auto lifted = grobner::lift_many(targets, rows);
  PolyMatrix H(nv, n, m);
  for (int i = 0; i < n; ++i) {
    if (!lifted[i]) throw InvalidInput("left_inverse: matrix is not unimodular");
    for (int k = 0; k < m; ++k) H(i, k) = (*lifted[i])[k];
  }
  if (!(H * F).is_identity()) throw VerificationError("left_inverse: H * F != I");
  return H;
}

namespace {

struct Completion {
  PolyMatrix M, M_inv;
  std::vector<std::string> steps;
};

// With units_only, gives up (nullopt) at the first column without a constant
// entry.
std::optional<Completion> column_completion(const PolyMatrix& F, std::uint64_t seed, Strategy strategy,
                                            bool units_only = false) {
  const int m = F.rows(), n = F.cols();
  Rng rng(seed);
  Tracker tr(F);
  Completion out;
  for (int j = 0; j < n; ++j) {
    Tracker sub(tr.a().block(j, j, m - j, 1));
    if (units_only && constant_entry(sub) < 0) return std::nullopt;
    out.steps.push_back(reduce_column(sub, rng, strategy));
    tr.apply(embed(sub.u(), m, j), embed(sub.uinv(), m, j));
    for (int r = 0; r < j; ++r)
      if (!tr.a()(r, j).is_zero()) tr.add(r, j, -tr.a()(r, j));
  }
  out.M = tr.u();
  out.M_inv = tr.uinv();
  return out;
}

PolyMatrix from_rows(int nvars, int ncols, const std::vector<grobner::Vec>& rows) {
  PolyMatrix out(nvars, static_cast<int>(rows.size()), ncols);
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < ncols; ++j) out(i, j) = rows[i][j];
  return out;
}

// Index of an entry that is a nonzero constant once the content of v is
// divided out, or -1.
int constant_after_content(const PolyVector& v) {
  if (std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); })) return -1;
  const Poly g = arith::gcd_many(v);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero() || v[k].degree() != g.degree()) continue;
    auto [q, r] = divide(v[k], g);
    if (r.is_zero() && q.is_nonzero_constant()) return static_cast<int>(k);
  }
  return -1;
}

// M = [H; N] with H F = I and the rows of N a basis of the left kernel
// K = {y : y F = 0}, which is free of rank m - n. Kernel generators are
// dropped while some relation among them has a constant entry. A single
// remaining relation r is unimodular; with U r = e_1 and V = U^{-1}, the rows
// 2.. of V^T Gk form a basis (Gk the generator matrix).
//
// M^{-1} = [F | (I - F H) Y] for any Y with N Y = I. Lifting the rows of
// I - F H through Gk gives Z with Z Gk = I - F H, so Gk Z = I + lambda r^T
// and Y = Z U_1^T works, U_1 being rows 2.. of U.
std::optional<Completion> kernel_completion(const PolyMatrix& F, std::uint64_t seed) {
  const int m = F.rows(), n = F.cols(), nv = F.nvars(), rank = m - n;
  Completion out;
  out.steps.push_back("kernel");
  std::vector<grobner::Vec> rows;
  for (int i = 0; i < m; ++i) rows.push_back(F.row(i));
  std::vector<grobner::Vec> gens = grobner::minimal_generators(grobner::syzygy_generators(rows));
  if (static_cast<int>(gens.size()) < rank) return std::nullopt;
  std::optional<CompletionCertificate> rotation;
  while (static_cast<int>(gens.size()) > rank) {
    std::vector<grobner::Vec> relations = grobner::syzygy_generators(gens);
    int drop = -1;
    for (const auto& r : relations)
      if ((drop = constant_after_content(r)) >= 0) break;
    if (drop >= 0) {
      gens.erase(gens.begin() + drop);
      continue;
    }
    if (static_cast<int>(gens.size()) != rank + 1 || relations.empty()) return std::nullopt;
    PolyVector r = relations.front();
    const Poly g = arith::gcd_many(r);
    for (auto& x : r) x = divide(x, g).first;
    rotation = complete_columns(PolyMatrix::column(r), seed, Strategy::columns);
    for (const auto& step : rotation->steps) out.steps.push_back(step);
    break;
  }
  const PolyMatrix Gk = from_rows(nv, m, gens);
  const PolyMatrix H = left_inverse(F);
  const PolyMatrix P = PolyMatrix::identity(nv, m) - F * H;
  std::vector<grobner::Vec> targets;
  for (int i = 0; i < m; ++i) targets.push_back(P.row(i));
  auto lifted = grobner::lift_many(targets, gens);
  PolyMatrix Z(nv, m, Gk.rows());
  for (int i = 0; i < m; ++i) {
    if (!lifted[i]) return std::nullopt;
    for (int j = 0; j < Gk.rows(); ++j) Z(i, j) = (*lifted[i])[j];
  }
  PolyMatrix N = Gk, Y = Z;
  if (rotation) {
    const int k = Gk.rows();
    N = rotation->M_inv.transpose().block(1, 0, k - 1, k) * Gk;
    Y = Z * rotation->M.block(1, 0, k - 1, k).transpose();
  }
  const PolyMatrix X = P * Y;
  out.M = PolyMatrix(nv, m, m);
  out.M_inv = PolyMatrix(nv, m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) out.M(i, j) = H(i, j);
    for (int i = 0; i < rank; ++i) out.M(n + i, j) = N(i, j);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) out.M_inv(i, j) = F(i, j);
    for (int j = 0; j < rank; ++j) out.M_inv(i, n + j) = X(i, j);
  }
  return out;
}

bool certifies(const PolyMatrix& F, const Completion& c) {
  const int m = F.rows(), n = F.cols();
  PolyMatrix expected(F.nvars(), m, n);
  for (int i = 0; i < n; ++i) expected(i, i) = Poly::constant(F.nvars(), 1);
  return c.M * F == expected && (c.M * c.M_inv).is_identity();
}

}  // namespace

CompletionCertificate complete_columns(const PolyMatrix& F, std::uint64_t seed, Strategy strategy) {
  const int m = F.rows(), n = F.cols();
  if (n < 1 || m <= n) throw InvalidInput("complete_columns: expected m > n >= 1");
  require_two_variables(F);
  if (!is_unimodular(F)) throw InvalidInput("complete_columns: matrix is not unimodular");
  std::optional<Completion> done;
  if (strategy == Strategy::automatic && n >= 2) {
    done = column_completion(F, seed, strategy, true);
    if (!done) done = kernel_completion(F, seed);
    if (done && !certifies(F, *done)) done.reset();
  }
  if (!done) {
    done = column_completion(F, seed, strategy);
    if (!certifies(F, *done)) throw VerificationError("complete_columns: M * F != [I; 0] or M * M^{-1} != I");
  }
  CompletionCertificate cert;
  cert.M = std::move(done->M);
  cert.M_inv = std::move(done->M_inv);
  cert.steps = std::move(done->steps);
  // M M^{-1} = I makes det M a unit of k[s,t], so its value at the origin is
  // the determinant.
  const PolyMatrix at_origin = cert.M.map([](const Poly& p) { return Poly::constant(p.nvars(), p.constant_term()); });
  Poly det = arith::determinant(at_origin);
  if (!det.is_nonzero_constant()) throw VerificationError("complete_columns: det M is not a nonzero constant");
  cert.det = det.constant_term();
  cert.deg_M = std::max(0, cert.M.degree());
  cert.bound = qs_degree_bound(n, std::max(0, F.degree()));
  cert.within_bound = BigInt(cert.deg_M) <= cert.bound;
  return cert;
}

namespace {

Poly swap_st(const Poly& p) {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    std::swap(m.exp[0], m.exp[1]);
    terms.push_back({m, t.coeff});
  }
  return Poly(p.nvars(), std::move(terms));
}

}  // namespace

PolyMatrix variable_elimination_step(const PolyMatrix& F, int var, std::uint64_t seed) {
  if (var != kS && var != kT) throw InvalidInput("variable_elimination_step: var must be s or t");
  require_two_variables(F);
  const int r = F.rows(), k = F.cols();
  const int nv = F.nvars();
  if (r < 1 || k <= r) throw InvalidInput("variable_elimination_step: expected a wide row-unimodular matrix");
  PolyMatrix F0 = F.map([&](const Poly& p) { return p.involves(var) ? p.substitute(var, Poly(nv)) : p; });
  bool involves = false;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) involves = involves || F(i, j).involves(var);
  if (!involves) return PolyMatrix::identity(nv, k);
  if (!is_unimodular(F.transpose())) throw InvalidInput("variable_elimination_step: matrix is not unimodular");

  PolyMatrix M;
  int constant = -1, monic = -1;
  if (r == 1)
    for (int j = 0; j < k; ++j) {
      if (F(0, j).is_nonzero_constant() && constant < 0) constant = j;
      if (monic_in(F(0, j), var) && monic < 0) monic = j;
    }
  if (constant >= 0) {
    // F M = F(0) by adding multiples of the constant column.
    M = PolyMatrix::identity(nv, k);
    const Scalar inv = 1 / F(0, constant).constant_term();
    for (int i = 0; i < k; ++i)
      if (i != constant) M(constant, i) = (F0(0, i) - F(0, i)) * inv;
  } else if (monic >= 0) {
    PolyVector v = F.row(0);
    if (var == kS)
      for (auto& p : v) p = swap_st(p);
    Rng rng(seed);
    auto [U, Uinv] = horrocks_patch(v, monic, rng);
    if (var == kS) U = U.map(swap_st);
    M = U.transpose();
  } else {
    auto cert = complete_columns(F.transpose(), seed);
    PolyMatrix inv0 = cert.M_inv.map([&](const Poly& p) { return p.involves(var) ? p.substitute(var, Poly(nv)) : p; });
    M = (inv0 * cert.M).transpose();
  }
  if (F * M != F0) throw VerificationError("variable_elimination_step: F * M != F(0)");
  if (!arith::determinant(M).is_nonzero_constant()) throw VerificationError("variable_elimination_step: M not invertible");
  return M;
}

BigInt qs_formula(const BigInt& D) {
  BigInt d2 = D * D;
  BigInt one_plus = 1 + D;
  BigInt op2 = one_plus * one_plus;
  return 2 * D * (1 + 2 * D) * (1 + d2 * d2) * (op2 * op2);
}

BigInt qs_degree_bound(int n_or_m, int deg_F) {
  if (n_or_m < 1 || deg_F < 0) throw InvalidInput("qs_degree_bound: expected n >= 1 and deg F >= 0");
  return qs_formula(BigInt(n_or_m) * (1 + deg_F));
}

}  // namespace mubasis::qs
