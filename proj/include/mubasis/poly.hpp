#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mubasis {

using Scalar = mpq_class;
using BigInt = mpz_class;

// Variables are indexed s = 0, t = 1, u = 2. A ring is described by its
// variable count: 2 for k[s,t], 3 for k[s,t,u].
inline constexpr int kMaxVars = 3;

// Degree reported for the zero polynomial. Never enters a max-degree.
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

struct Monomial {
  std::array<int, kMaxVars> exp{};

  int degree() const { return exp[0] + exp[1] + exp[2]; }
  bool is_one() const { return exp[0] == 0 && exp[1] == 0 && exp[2] == 0; }
  bool divides(const Monomial& other) const {
    return exp[0] <= other.exp[0] && exp[1] <= other.exp[1] && exp[2] <= other.exp[2];
  }
  std::uint64_t key() const {
    return (std::uint64_t(exp[0]) << 42) | (std::uint64_t(exp[1]) << 21) | std::uint64_t(exp[2]);
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    return {{a.exp[0] + b.exp[0], a.exp[1] + b.exp[1], a.exp[2] + b.exp[2]}};
  }
  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    return {{a.exp[0] - b.exp[0], a.exp[1] - b.exp[1], a.exp[2] - b.exp[2]}};
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.exp != b.exp; }
};

Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

// Graded reverse lexicographic order with s > t > u. Returns <0, 0, >0.
inline int grevlex_compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (int i = kMaxVars - 1; i >= 0; --i) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? -1 : 1;
  }
  return 0;
}

struct Term {
  Monomial mono;
  Scalar coeff;
};

// Sparse polynomial over Q. Terms are kept sorted grevlex-descending with no
// zero coefficients, so equality is structural.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  Poly(int nvars, std::vector<Term> terms);  // normalizes

  static Poly constant(int nvars, const Scalar& c);
  static Poly variable(int nvars, int index);
  static Poly monomial(int nvars, const Monomial& m, const Scalar& c = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_nonzero_constant() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }
  bool is_homogeneous() const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  // Total degree; kDegreeOfZero for the zero polynomial.
  int degree() const;
  int degree_in(int var) const;
  bool involves(int var) const;

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }
  Scalar constant_term() const;
  Scalar coeff(const Monomial& m) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Scalar& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly mul_term(const Monomial& m, const Scalar& c) const;
  // this - c * m * other, in one merge pass.
  void sub_mul_term(const Monomial& m, const Scalar& c, const Poly& other);
  Poly pow(int e) const;

  // Scales so the grevlex leading coefficient is 1.
  Poly monic() const;

  // Same polynomial seen in a ring with a different variable count. Dropping a
  // variable requires it to be absent.
  Poly with_nvars(int nvars) const;

  // Replace variable `var` by the polynomial `value` (same ring).
  Poly substitute(int var, const Poly& value) const;
  Poly evaluate(int var, const Scalar& value) const;

  // Coefficients with respect to `var`: result[i] is the coefficient of var^i.
  std::vector<Poly> coefficients_in(int var) const;
  static Poly from_coefficients(int nvars, int var, const std::vector<Poly>& coeffs);

  std::string to_string() const;

 private:
  void normalize();

  int nvars_ = 2;
  std::vector<Term> terms_;
};

using PolyVector = std::vector<Poly>;

// Multivariate division by a single divisor under grevlex.
std::pair<Poly, Poly> divide(const Poly& f, const Poly& g);
// Throws InvalidInput when g does not divide f.
Poly exact_divide(const Poly& f, const Poly& g);
bool divides(const Poly& g, const Poly& f);

// Canonical variable names for printing and parsing.
char variable_name(int index);

}  // namespace mubasis

template <>
struct std::hash<mubasis::Monomial> {
  std::size_t operator()(const mubasis::Monomial& m) const noexcept { return std::hash<std::uint64_t>{}(m.key()); }
};
