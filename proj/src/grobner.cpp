#include "mubasis/grobner.hpp"

#include <algorithm>
#include <numeric>

#include "mubasis/errors.hpp"

namespace mubasis::grobner {

namespace {

struct MTerm {
  Monomial m;
  int comp;
  Scalar c;
};

// Sparse module vector, terms sorted descending in the active order.
using MPoly = std::vector<MTerm>;

class Order {
 public:
  Order(const ModuleOrder& o, int rank) : block_(o.block), shifts_(rank, 0) {
    for (int i = 0; i < rank && i < static_cast<int>(o.shifts.size()); ++i) shifts_[i] = o.shifts[i];
  }

  int weight(const Monomial& m, int c) const { return m.degree() + shifts_[c]; }

  int compare(const Monomial& a, int ca, const Monomial& b, int cb) const {
    if (block_ > 0) {
      bool ea = ca < block_, eb = cb < block_;
      if (ea != eb) return ea ? 1 : -1;
    }
    int wa = weight(a, ca), wb = weight(b, cb);
    if (wa != wb) return wa < wb ? -1 : 1;
    if (int g = grevlex_compare(a, b)) return g;
    if (ca != cb) return ca < cb ? 1 : -1;
    return 0;
  }

  bool greater(const MTerm& a, const MTerm& b) const { return compare(a.m, a.comp, b.m, b.comp) > 0; }

 private:
  int block_;
  std::vector<int> shifts_;
};

MPoly to_mpoly(const Vec& v, const Order& ord) {
  MPoly out;
  for (int c = 0; c < static_cast<int>(v.size()); ++c)
    for (const auto& t : v[c].terms()) out.push_back({t.mono, c, t.coeff});
  std::sort(out.begin(), out.end(), [&](const MTerm& a, const MTerm& b) { return ord.greater(a, b); });
  return out;
}

Vec to_vec(const MPoly& p, int nvars, int rank) {
  std::vector<std::vector<Term>> comps(rank);
  for (const auto& t : p) comps[t.comp].push_back({t.m, t.c});
  Vec out;
  out.reserve(rank);
  for (auto& c : comps) out.emplace_back(nvars, std::move(c));
  return out;
}

// f[start..] - c * m * g, merged.
MPoly sub_mul(const MPoly& f, std::size_t start, const Monomial& m, const Scalar& c, const MPoly& g,
              const Order& ord) {
  MPoly out;
  out.reserve(f.size() - start + g.size());
  auto a = f.begin() + static_cast<std::ptrdiff_t>(start), ae = f.end();
  auto b = g.begin(), be = g.end();
  while (a != ae && b != be) {
    Monomial bm = b->m * m;
    int cmp = ord.compare(a->m, a->comp, bm, b->comp);
    if (cmp > 0) {
      out.push_back(*a++);
    } else if (cmp < 0) {
      out.push_back({bm, b->comp, -(c * b->c)});
      ++b;
    } else {
      Scalar s = a->c - c * b->c;
      if (sgn(s) != 0) out.push_back({bm, b->comp, std::move(s)});
      ++a;
      ++b;
    }
  }
  for (; a != ae; ++a) out.push_back(*a);
  for (; b != be; ++b) out.push_back({b->m * m, b->comp, -(c * b->c)});
  return out;
}

void make_monic(MPoly& p) {
  if (p.empty() || p.front().c == 1) return;
  Scalar inv = 1 / p.front().c;
  for (auto& t : p) t.c *= inv;
}

struct Elem {
  MPoly p;
  int sugar = 0;
  Monomial lm() const { return p.front().m; }
  int lc() const { return p.front().comp; }
};

int find_reducer(const std::vector<Elem>& g, const std::vector<char>& usable, const Monomial& m, int comp) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (usable[i] && g[i].lc() == comp && g[i].lm().divides(m)) return static_cast<int>(i);
  return -1;
}

// Full normal form. Irreducible terms are moved to the result in order, so it
// stays sorted.
MPoly reduce_full(MPoly f, const std::vector<Elem>& g, const std::vector<char>& usable, const Order& ord) {
  MPoly r;
  std::size_t pos = 0;
  while (pos < f.size()) {
    const MTerm& t = f[pos];
    int k = find_reducer(g, usable, t.m, t.comp);
    if (k < 0) {
      r.push_back(t);
      ++pos;
      continue;
    }
    f = sub_mul(f, pos, t.m / g[k].lm(), t.c / g[k].p.front().c, g[k].p, ord);
    pos = 0;
  }
  return r;
}

MPoly reduce_top(MPoly f, const std::vector<Elem>& g, const std::vector<char>& usable, const Order& ord) {
  while (!f.empty()) {
    const MTerm& t = f.front();
    int k = find_reducer(g, usable, t.m, t.comp);
    if (k < 0) break;
    f = sub_mul(f, 0, t.m / g[k].lm(), t.c / g[k].p.front().c, g[k].p, ord);
  }
  return f;
}

struct Pair {
  int i, j;
  Monomial lcm;
  int comp;
  int sugar;
};

}  // namespace

struct GroebnerBasis::Impl {
  int nvars = 2;
  int rank = 1;
  ModuleOrder order;
  Order ord{ModuleOrder{}, 1};
  std::vector<Elem> elems;
  std::vector<Vec> vecs;
};

int weighted_degree(const Vec& v, const std::vector<int>& shifts) {
  int best = kDegreeOfZero;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c].is_zero()) continue;
    int s = c < shifts.size() ? shifts[c] : 0;
    best = std::max(best, v[c].degree() + s);
  }
  return best;
}

GroebnerBasis buchberger(const std::vector<Vec>& gens, int nvars, int rank, const ModuleOrder& order) {
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != rank) throw InvalidInput("buchberger: generator rank mismatch");
    for (const auto& p : g)
      if (p.nvars() != nvars && !p.is_zero()) throw InvalidInput("buchberger: generators from different rings");
  }
  auto impl = std::make_shared<GroebnerBasis::Impl>();
  impl->nvars = nvars;
  impl->rank = rank;
  impl->order = order;
  impl->ord = Order(order, rank);
  const Order& ord = impl->ord;
  const bool ideal_case = rank == 1;

  std::vector<Elem> G;
  std::vector<char> active;
  std::vector<Pair> B;

  auto sugar_of = [&](const MPoly& p) {
    int s = 0;
    for (const auto& t : p) s = std::max(s, ord.weight(t.m, t.comp));
    return s;
  };

  auto update = [&](Elem h) {
    make_monic(h.p);
    const int hi = static_cast<int>(G.size());
    const Monomial hm = h.lm();
    const int hc = h.lc();
    G.push_back(std::move(h));
    active.push_back(1);

    std::vector<Pair> C;
    for (int i = 0; i < hi; ++i) {
      if (!active[i] || G[i].lc() != hc) continue;
      Monomial L = lcm(G[i].lm(), hm);
      int sg = std::max(G[i].sugar + (L.degree() - G[i].lm().degree()), G[hi].sugar + (L.degree() - hm.degree()));
      C.push_back({i, hi, L, hc, sg});
    }
    auto is_coprime = [&](const Pair& p) { return ideal_case && coprime(G[p.i].lm(), G[p.j].lm()); };
    std::vector<Pair> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const Pair& p = C[k];
      bool keep = is_coprime(p);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < C.size() && keep; ++l)
          if (C[l].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : D)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> nb;
    for (const auto& p : B) {
      if (p.comp == hc && hm.divides(p.lcm) && lcm(G[p.i].lm(), hm) != p.lcm && lcm(G[p.j].lm(), hm) != p.lcm)
        continue;
      nb.push_back(p);
    }
    for (const auto& p : D)
      if (!is_coprime(p)) nb.push_back(p);
    B = std::move(nb);
    for (int i = 0; i < hi; ++i)
      if (active[i] && G[i].lc() == hc && hm.divides(G[i].lm())) active[i] = 0;
  };

  // Seed with the inputs, lowest weight first.
  std::vector<MPoly> seeds;
  for (const auto& g : gens) {
    MPoly p = to_mpoly(g, ord);
    if (!p.empty()) seeds.push_back(std::move(p));
  }
  std::stable_sort(seeds.begin(), seeds.end(), [&](const MPoly& a, const MPoly& b) { return ord.greater(b.front(), a.front()); });
  std::vector<char> all;
  for (auto& s : seeds) {
    all.assign(G.size(), 1);
    int sg = sugar_of(s);
    MPoly r = reduce_top(std::move(s), G, all, ord);
    if (!r.empty()) update(Elem{std::move(r), sg});
  }

  while (!B.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < B.size(); ++k) {
      const Pair &a = B[k], &b = B[best];
      if (a.sugar != b.sugar ? a.sugar < b.sugar : ord.compare(a.lcm, a.comp, b.lcm, b.comp) < 0) best = k;
    }
    Pair p = B[best];
    B.erase(B.begin() + static_cast<std::ptrdiff_t>(best));
    const Elem &gi = G[p.i], &gj = G[p.j];
    MPoly s;
    {
      MPoly zero;
      MPoly a = sub_mul(zero, 0, p.lcm / gi.lm(), Scalar(-1), gi.p, ord);
      s = sub_mul(a, 0, p.lcm / gj.lm(), Scalar(1), gj.p, ord);
    }
    all.assign(G.size(), 1);
    MPoly r = reduce_top(std::move(s), G, all, ord);
    if (!r.empty()) update(Elem{std::move(r), p.sugar});
  }

  // Minimal basis, then tail reduction.
  std::vector<Elem> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (!active[i]) continue;
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j || !active[j] || G[j].lc() != G[i].lc()) continue;
      if (G[j].lm().divides(G[i].lm()) && (G[j].lm() != G[i].lm() || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Elem& a, const Elem& b) { return ord.greater(b.p.front(), a.p.front()); });
  std::vector<char> mask(minimal.size(), 1);
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    MTerm head = minimal[i].p.front();
    MPoly tail(minimal[i].p.begin() + 1, minimal[i].p.end());
    mask[i] = 0;
    MPoly reduced = reduce_full(std::move(tail), minimal, mask, ord);
    mask[i] = 1;
    reduced.insert(reduced.begin(), head);
    make_monic(reduced);
    minimal[i].p = std::move(reduced);
  }
  impl->elems = std::move(minimal);
  for (const auto& e : impl->elems) impl->vecs.push_back(to_vec(e.p, nvars, rank));
  GroebnerBasis out;
  out.impl_ = std::move(impl);
  return out;
}

namespace {
const GroebnerBasis::Impl& empty_impl() {
  static const GroebnerBasis::Impl e;
  return e;
}
}  // namespace

int GroebnerBasis::nvars() const { return impl_ ? impl_->nvars : 2; }
int GroebnerBasis::rank() const { return impl_ ? impl_->rank : 1; }
const ModuleOrder& GroebnerBasis::order() const { return impl_ ? impl_->order : empty_impl().order; }
const std::vector<Vec>& GroebnerBasis::elements() const { return impl_ ? impl_->vecs : empty_impl().vecs; }

Vec GroebnerBasis::normal_form(const Vec& f) const {
  if (!impl_) return f;
  if (static_cast<int>(f.size()) != impl_->rank) throw InvalidInput("normal_form: rank mismatch");
  std::vector<char> all(impl_->elems.size(), 1);
  MPoly r = reduce_full(to_mpoly(f, impl_->ord), impl_->elems, all, impl_->ord);
  return to_vec(r, impl_->nvars, impl_->rank);
}

Poly GroebnerBasis::normal_form(const Poly& f) const {
  if (rank() != 1) throw InvalidInput("normal_form: polynomial against a module basis");
  return normal_form(Vec{f}).front();
}

bool GroebnerBasis::contains(const Vec& f) const {
  for (const auto& p : normal_form(f))
    if (!p.is_zero()) return false;
  return true;
}

bool GroebnerBasis::contains(const Poly& f) const { return normal_form(f).is_zero(); }

std::vector<std::pair<Monomial, int>> GroebnerBasis::leading_terms() const {
  std::vector<std::pair<Monomial, int>> out;
  if (impl_)
    for (const auto& e : impl_->elems) out.emplace_back(e.lm(), e.lc());
  return out;
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& [m, c] : leading_terms()) out.push_back(m);
  return out;
}

bool GroebnerBasis::is_unit_ideal() const {
  if (rank() != 1) return false;
  for (const auto& m : leading_monomials())
    if (m.is_one()) return true;
  return false;
}

GroebnerBasis ideal_basis(const PolyVector& gens) {
  if (gens.empty()) throw InvalidInput("ideal_basis: empty generator list");
  std::vector<Vec> v;
  for (const auto& g : gens) v.push_back({g});
  return buchberger(v, gens.front().nvars(), 1);
}

namespace {

int ring_of(const std::vector<Vec>& vs) {
  for (const auto& v : vs)
    for (const auto& p : v)
      if (!p.is_zero()) return p.nvars();
  return vs.empty() || vs.front().empty() ? 2 : vs.front().front().nvars();
}

// Groebner basis of the tagged generators (v_i | e_i) under elimination of
// the first n components.
GroebnerBasis tagged_basis(const std::vector<Vec>& vectors, const std::vector<int>& shifts, int nvars) {
  const int n = static_cast<int>(vectors.front().size());
  const int k = static_cast<int>(vectors.size());
  ModuleOrder order;
  order.block = n;
  order.shifts.assign(n + k, 0);
  for (int c = 0; c < n && c < static_cast<int>(shifts.size()); ++c) order.shifts[c] = shifts[c];
  std::vector<Vec> gens;
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(vectors[i].size()) != n) throw InvalidInput("syzygy: vectors of different lengths");
    int w = weighted_degree(vectors[i], shifts);
    order.shifts[n + i] = w == kDegreeOfZero ? 0 : w;
    Vec g = vectors[i];
    for (int j = 0; j < k; ++j) g.push_back(j == i ? Poly::constant(nvars, 1) : Poly(nvars));
    for (auto& p : g)
      if (p.is_zero()) p = Poly(nvars);
    gens.push_back(std::move(g));
  }
  return buchberger(gens, nvars, n + k, order);
}

}  // namespace

std::vector<Vec> syzygy_generators(const std::vector<Vec>& vectors, const std::vector<int>& shifts) {
  if (vectors.empty()) throw InvalidInput("syzygy_generators: empty input");
  const int nvars = ring_of(vectors);
  const int n = static_cast<int>(vectors.front().size());
  GroebnerBasis gb = tagged_basis(vectors, shifts, nvars);
  std::vector<Vec> out;
  for (const auto& e : gb.elements()) {
    bool zero_head = true;
    for (int c = 0; c < n && zero_head; ++c) zero_head = e[c].is_zero();
    if (zero_head) out.emplace_back(e.begin() + n, e.end());
  }
  for (const auto& w : out) {
    Vec sum(n, Poly(nvars));
    for (std::size_t i = 0; i < w.size(); ++i)
      for (int c = 0; c < n; ++c) sum[c] += w[i] * vectors[i][c];
    for (const auto& p : sum)
      if (!p.is_zero()) throw VerificationError("syzygy_generators: produced a non-syzygy");
  }
  return out;
}

std::vector<Vec> syzygy_generators(const PolyVector& scalars) {
  std::vector<Vec> v;
  for (const auto& p : scalars) v.push_back({p});
  return syzygy_generators(v);
}

std::vector<std::optional<PolyVector>> lift_many(const std::vector<Vec>& targets, const std::vector<Vec>& gens) {
  if (gens.empty()) throw InvalidInput("lift: empty generator list");
  const int nvars = ring_of(gens);
  const int n = static_cast<int>(gens.front().size());
  const int k = static_cast<int>(gens.size());
  for (const auto& t : targets)
    if (static_cast<int>(t.size()) != n) throw InvalidInput("lift: target length mismatch");
  GroebnerBasis gb = tagged_basis(gens, {}, nvars);
  std::vector<std::optional<PolyVector>> out;
  for (const auto& target : targets) {
    Vec start = target;
    for (auto& p : start)
      if (p.is_zero()) p = Poly(nvars);
    for (int j = 0; j < k; ++j) start.push_back(Poly(nvars));
    Vec r = gb.normal_form(start);
    bool member = true;
    for (int c = 0; c < n && member; ++c) member = r[c].is_zero();
    if (!member) {
      out.emplace_back();
      continue;
    }
    PolyVector coeffs;
    for (int j = 0; j < k; ++j) coeffs.push_back(-r[n + j]);
    Vec check(n, Poly(nvars));
    for (int j = 0; j < k; ++j)
      for (int c = 0; c < n; ++c) check[c] += coeffs[j] * gens[j][c];
    for (int c = 0; c < n; ++c)
      if (check[c] != target[c]) throw VerificationError("lift: coefficient identity failed");
    out.emplace_back(std::move(coeffs));
  }
  return out;
}

std::optional<PolyVector> lift(const Vec& target, const std::vector<Vec>& gens) {
  return lift_many({target}, gens).front();
}

std::optional<PolyVector> lift(const Poly& target, const PolyVector& gens) {
  std::vector<Vec> v;
  for (const auto& g : gens) v.push_back({g});
  return lift(Vec{target}, v);
}

std::vector<Vec> minimal_generators(const std::vector<Vec>& gens, const std::vector<int>& shifts) {
  std::vector<Vec> sorted;
  for (const auto& g : gens)
    if (weighted_degree(g, shifts) != kDegreeOfZero) sorted.push_back(g);
  if (sorted.empty()) return {};
  const int nvars = ring_of(sorted);
  const int rank = static_cast<int>(sorted.front().size());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const Vec& a, const Vec& b) { return weighted_degree(a, shifts) < weighted_degree(b, shifts); });
  ModuleOrder order{shifts, 0};
  std::vector<Vec> kept;
  GroebnerBasis gb;
  for (const auto& g : sorted) {
    if (!kept.empty() && gb.contains(g)) continue;
    kept.push_back(g);
    gb = buchberger(kept, nvars, rank, order);
  }
  return kept;
}

bool same_module(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  auto nonzero = [](const std::vector<Vec>& v) {
    std::vector<Vec> out;
    for (const auto& x : v)
      if (weighted_degree(x) != kDegreeOfZero) out.push_back(x);
    return out;
  };
  auto na = nonzero(a), nb = nonzero(b);
  if (na.empty() || nb.empty()) return na.empty() && nb.empty();
  const int nvars = ring_of(na);
  const int rank = static_cast<int>(na.front().size());
  GroebnerBasis ga = buchberger(na, nvars, rank), gb = buchberger(nb, nvars, rank);
  for (const auto& x : nb)
    if (!ga.contains(x)) return false;
  for (const auto& x : na)
    if (!gb.contains(x)) return false;
  return true;
}

}  // namespace mubasis::grobner
