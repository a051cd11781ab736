#include "mubasis/poly.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_map>

#include "mubasis/errors.hpp"

namespace mubasis {

namespace {

bool term_greater(const Term& a, const Term& b) { return grevlex_compare(a.mono, b.mono) > 0; }

// Kronecker substitution: clear denominators, pack each sign part of each
// factor into one big integer (one fixed-width slot per dense monomial
// index), multiply with GMP and unpack. Pays off for large dense factors.
struct Packed {
  mpz_class pos, neg;
};

BigInt denominator_lcm(const std::vector<Term>& terms) {
  BigInt l = 1;
  for (const auto& t : terms) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l;
}

Packed pack(const std::vector<Term>& terms, const BigInt& scale, const std::array<std::size_t, kMaxVars>& stride,
            std::size_t slot_limbs) {
  std::size_t top = 0;
  for (const auto& t : terms) {
    std::size_t idx = 0;
    for (int v = 0; v < kMaxVars; ++v) idx += stride[v] * t.mono.exp[v];
    top = std::max(top, idx);
  }
  std::vector<mp_limb_t> pos((top + 1) * slot_limbs, 0), neg((top + 1) * slot_limbs, 0);
  BigInt c;
  for (const auto& t : terms) {
    std::size_t idx = 0;
    for (int v = 0; v < kMaxVars; ++v) idx += stride[v] * t.mono.exp[v];
    c = scale / t.coeff.get_den() * t.coeff.get_num();
    auto& buf = sgn(c) > 0 ? pos : neg;
    mpz_export(buf.data() + idx * slot_limbs, nullptr, -1, sizeof(mp_limb_t), 0, 0, c.get_mpz_t());
  }
  Packed out;
  mpz_import(out.pos.get_mpz_t(), pos.size(), -1, sizeof(mp_limb_t), 0, 0, pos.data());
  mpz_import(out.neg.get_mpz_t(), neg.size(), -1, sizeof(mp_limb_t), 0, 0, neg.data());
  return out;
}

void unpack_add(const mpz_class& value, int sign, std::size_t slots, std::size_t slot_limbs,
                std::vector<BigInt>& acc) {
  if (sgn(value) == 0) return;
  std::vector<mp_limb_t> buf(slots * slot_limbs + mpz_size(value.get_mpz_t()), 0);
  mpz_export(buf.data(), nullptr, -1, sizeof(mp_limb_t), 0, 0, value.get_mpz_t());
  BigInt c;
  for (std::size_t i = 0; i < slots; ++i) {
    mpz_import(c.get_mpz_t(), slot_limbs, -1, sizeof(mp_limb_t), 0, 0, buf.data() + i * slot_limbs);
    if (sgn(c) == 0) continue;
    if (sign > 0)
      acc[i] += c;
    else
      acc[i] -= c;
  }
}

std::vector<Term> kronecker_product(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::array<int, kMaxVars> da{}, db{};
  for (const auto& t : a)
    for (int v = 0; v < kMaxVars; ++v) da[v] = std::max(da[v], t.mono.exp[v]);
  for (const auto& t : b)
    for (int v = 0; v < kMaxVars; ++v) db[v] = std::max(db[v], t.mono.exp[v]);
  std::array<std::size_t, kMaxVars> stride{};
  std::size_t slots = 1;
  for (int v = 0; v < kMaxVars; ++v) {
    stride[v] = slots;
    slots *= static_cast<std::size_t>(da[v] + db[v] + 1);
  }
  const BigInt la = denominator_lcm(a), lb = denominator_lcm(b);
  std::size_t bits_a = 0, bits_b = 0;
  for (const auto& t : a)
    bits_a = std::max(bits_a, mpz_sizeinbase(BigInt(la / t.coeff.get_den() * t.coeff.get_num()).get_mpz_t(), 2));
  for (const auto& t : b)
    bits_b = std::max(bits_b, mpz_sizeinbase(BigInt(lb / t.coeff.get_den() * t.coeff.get_num()).get_mpz_t(), 2));
  std::size_t count_bits = 1;
  while ((std::size_t{1} << count_bits) < std::min(a.size(), b.size()) + 1) ++count_bits;
  const std::size_t slot_bits = bits_a + bits_b + count_bits + 1;
  const std::size_t limb_bits = 8 * sizeof(mp_limb_t);
  const std::size_t slot_limbs = (slot_bits + limb_bits - 1) / limb_bits;

  Packed pa = pack(a, la, stride, slot_limbs), pb = pack(b, lb, stride, slot_limbs);
  std::vector<BigInt> acc(slots);
  mpz_class prod;
  auto accumulate = [&](const mpz_class& x, const mpz_class& y, int sign) {
    if (sgn(x) == 0 || sgn(y) == 0) return;
    mpz_mul(prod.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    unpack_add(prod, sign, slots, slot_limbs, acc);
  };
  accumulate(pa.pos, pb.pos, 1);
  accumulate(pa.pos, pb.neg, -1);
  accumulate(pa.neg, pb.pos, -1);
  accumulate(pa.neg, pb.neg, 1);

  const BigInt denom = la * lb;
  std::vector<Term> out;
  for (std::size_t i = 0; i < slots; ++i) {
    if (sgn(acc[i]) == 0) continue;
    Monomial m;
    std::size_t rest = i;
    for (int v = kMaxVars - 1; v >= 0; --v) {
      m.exp[v] = static_cast<int>(rest / stride[v]);
      rest %= stride[v];
    }
    Scalar c(acc[i], denom);
    c.canonicalize();
    out.push_back({m, std::move(c)});
  }
  return out;
}

bool prefer_kronecker(const std::vector<Term>& a, const std::vector<Term>& b) {
  const double work = static_cast<double>(a.size()) * static_cast<double>(b.size());
  if (work < 4.0e4) return false;
  double dense = 1;
  for (int v = 0; v < kMaxVars; ++v) {
    int da = 0, db = 0;
    for (const auto& t : a) da = std::max(da, t.mono.exp[v]);
    for (const auto& t : b) db = std::max(db, t.mono.exp[v]);
    dense *= da + db + 1;
  }
  return dense <= 16.0 * work;
}

}  // namespace

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.exp[i] = std::max(a.exp[i], b.exp[i]);
  return m;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.exp[i] > 0 && b.exp[i] > 0) return false;
  return true;
}

char variable_name(int index) { return "stu"[index]; }

Poly::Poly(int nvars, std::vector<Term> terms) : nvars_(nvars), terms_(std::move(terms)) { normalize(); }

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  terms_ = std::move(out);
}

Poly Poly::constant(int nvars, const Scalar& c) {
  Poly p(nvars);
  if (sgn(c) != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Poly Poly::variable(int nvars, int index) {
  Monomial m;
  m.exp[index] = 1;
  return monomial(nvars, m, 1);
}

Poly Poly::monomial(int nvars, const Monomial& m, const Scalar& c) {
  Poly p(nvars);
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.front().mono.degree();
  for (const auto& t : terms_)
    if (t.mono.degree() != d) return false;
  return true;
}

int Poly::degree() const {
  // Grevlex sorts by total degree first.
  return terms_.empty() ? kDegreeOfZero : terms_.front().mono.degree();
}

int Poly::degree_in(int var) const {
  int d = kDegreeOfZero;
  for (const auto& t : terms_) d = std::max(d, t.mono.exp[var]);
  return d;
}

bool Poly::involves(int var) const {
  for (const auto& t : terms_)
    if (t.mono.exp[var] != 0) return true;
  return false;
}

Scalar Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

Scalar Poly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return grevlex_compare(t.mono, x) > 0; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    int n = std::max(nvars_, other.nvars_);
    *this = other;
    nvars_ = n;
    return *this;
  }
  nvars_ = std::max(nvars_, other.nvars_);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = other.terms_.begin(), be = other.terms_.end();
  while (a != ae && b != be) {
    int c = grevlex_compare(a->mono, b->mono);
    if (c > 0) {
      out.push_back(std::move(*a++));
    } else if (c < 0) {
      out.push_back(*b++);
    } else {
      Scalar s = a->coeff + b->coeff;
      if (sgn(s) != 0) out.push_back({a->mono, std::move(s)});
      ++a;
      ++b;
    }
  }
  for (; a != ae; ++a) out.push_back(std::move(*a));
  for (; b != be; ++b) out.push_back(*b);
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  sub_mul_term(Monomial{}, 1, other);
  return *this;
}

void Poly::sub_mul_term(const Monomial& m, const Scalar& c, const Poly& other) {
  if (other.terms_.empty() || sgn(c) == 0) return;
  nvars_ = std::max(nvars_, other.nvars_);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = other.terms_.begin(), be = other.terms_.end();
  const bool unit = m.is_one();
  while (a != ae && b != be) {
    Monomial bm = unit ? b->mono : b->mono * m;
    int cmp = grevlex_compare(a->mono, bm);
    if (cmp > 0) {
      out.push_back(std::move(*a++));
    } else if (cmp < 0) {
      out.push_back({bm, -(c * b->coeff)});
      ++b;
    } else {
      Scalar s = a->coeff - c * b->coeff;
      if (sgn(s) != 0) out.push_back({bm, std::move(s)});
      ++a;
      ++b;
    }
  }
  for (; a != ae; ++a) out.push_back(std::move(*a));
  for (; b != be; ++b) out.push_back({unit ? b->mono : b->mono * m, -(c * b->coeff)});
  terms_ = std::move(out);
}

Poly& Poly::operator*=(const Scalar& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  int n = std::max(a.nvars_, b.nvars_);
  if (a.terms_.empty() || b.terms_.empty()) return Poly(n);
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff).with_nvars(n);
  if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff).with_nvars(n);
  if (prefer_kronecker(a.terms_, b.terms_)) {
    Poly r(n);
    r.terms_ = kronecker_product(a.terms_, b.terms_);
    std::sort(r.terms_.begin(), r.terms_.end(), term_greater);
    return r;
  }
  // Schoolbook on integer numerators, one canonicalization per result term.
  const BigInt la = denominator_lcm(a.terms_), lb = denominator_lcm(b.terms_);
  std::vector<BigInt> na, nb;
  na.reserve(a.terms_.size());
  nb.reserve(b.terms_.size());
  for (const auto& x : a.terms_) na.push_back(x.coeff.get_num() * (la / x.coeff.get_den()));
  for (const auto& y : b.terms_) nb.push_back(y.coeff.get_num() * (lb / y.coeff.get_den()));
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(a.terms_.size() * b.terms_.size());
  std::vector<Monomial> monos;
  std::vector<BigInt> acc;
  for (std::size_t i = 0; i < na.size(); ++i)
    for (std::size_t j = 0; j < nb.size(); ++j) {
      Monomial m = a.terms_[i].mono * b.terms_[j].mono;
      auto [it, inserted] = index.try_emplace(m.key(), acc.size());
      if (inserted) {
        monos.push_back(m);
        acc.emplace_back();
      }
      mpz_addmul(acc[it->second].get_mpz_t(), na[i].get_mpz_t(), nb[j].get_mpz_t());
    }
  const BigInt den = la * lb;
  Poly r(n);
  r.terms_.reserve(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (sgn(acc[k]) == 0) continue;
    Scalar c(acc[k], den);
    c.canonicalize();
    r.terms_.push_back({monos[k], std::move(c)});
  }
  std::sort(r.terms_.begin(), r.terms_.end(), term_greater);
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

Poly Poly::mul_term(const Monomial& m, const Scalar& c) const {
  Poly r(nvars_);
  if (sgn(c) == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::pow(int e) const {
  Poly result = constant(nvars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Scalar inv = 1 / terms_.front().coeff;
  return *this * inv;
}

Poly Poly::with_nvars(int nvars) const {
  Poly r = *this;
  for (int v = nvars; v < kMaxVars; ++v)
    if (involves(v)) throw InvalidInput(std::string("polynomial involves variable ") + variable_name(v));
  r.nvars_ = nvars;
  return r;
}

Poly Poly::substitute(int var, const Poly& value) const {
  std::vector<Poly> coeffs = coefficients_in(var);
  int n = std::max(nvars_, value.nvars());
  Poly result(n);
  // Horner in `value`.
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    result = result * value;
    result += *it;
  }
  result.nvars_ = n;
  return result;
}

Poly Poly::evaluate(int var, const Scalar& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  std::vector<Scalar> powers{1};
  for (const auto& t : terms_) {
    int e = t.mono.exp[var];
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
    Monomial m = t.mono;
    m.exp[var] = 0;
    out.push_back({m, t.coeff * powers[e]});
  }
  return Poly(nvars_, std::move(out));
}

std::vector<Poly> Poly::coefficients_in(int var) const {
  int d = degree_in(var);
  if (d < 0) return {};
  std::vector<std::vector<Term>> buckets(d + 1);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    int e = m.exp[var];
    m.exp[var] = 0;
    buckets[e].push_back({m, t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(d + 1);
  for (auto& b : buckets) {
    Poly p(nvars_);
    // Removing one variable from a grevlex-sorted list can break the order.
    p.terms_ = std::move(b);
    std::sort(p.terms_.begin(), p.terms_.end(), term_greater);
    out.push_back(std::move(p));
  }
  return out;
}

Poly Poly::from_coefficients(int nvars, int var, const std::vector<Poly>& coeffs) {
  std::vector<Term> all;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (const auto& t : coeffs[i].terms()) {
      Monomial m = t.mono;
      m.exp[var] += static_cast<int>(i);
      all.push_back({m, t.coeff});
    }
  }
  return Poly(nvars, std::move(all));
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (c != 1 || t.mono.is_one()) {
      os << c.get_str();
      wrote = true;
    }
    for (int v = 0; v < kMaxVars; ++v) {
      int e = t.mono.exp[v];
      if (e == 0) continue;
      if (wrote) os << '*';
      os << variable_name(v);
      if (e > 1) os << '^' << e;
      wrote = true;
    }
  }
  return os.str();
}

std::pair<Poly, Poly> divide(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw InvalidInput("division by the zero polynomial");
  int n = std::max(f.nvars(), g.nvars());
  Poly p = f;
  const Monomial& lm = g.leading_monomial();
  const Scalar& lc = g.leading_coeff();
  std::vector<Term> quot, rem;
  while (!p.is_zero()) {
    Term lt = p.leading_term();
    if (lm.divides(lt.mono)) {
      Monomial m = lt.mono / lm;
      Scalar c = lt.coeff / lc;
      p.sub_mul_term(m, c, g);
      quot.push_back({m, std::move(c)});
    } else {
      p.sub_mul_term(Monomial{}, 1, Poly::monomial(n, lt.mono, lt.coeff));
      rem.push_back(std::move(lt));
    }
  }
  return {Poly(n, std::move(quot)), Poly(n, std::move(rem))};
}

Poly exact_divide(const Poly& f, const Poly& g) {
  auto [q, r] = divide(f, g);
  if (!r.is_zero()) throw InvalidInput("inexact polynomial division");
  return q;
}

bool divides(const Poly& g, const Poly& f) {
  if (g.is_zero()) return f.is_zero();
  return divide(f, g).second.is_zero();
}

}  // namespace mubasis
