#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mubasis/poly.hpp"

namespace mubasis::grobner {

// An element of a free module R^n is stored as its n component polynomials.
// Ideals are the rank-1 case.
using Vec = PolyVector;

// Module monomial order. Terms are compared by
//   1. elimination block: terms in components [0, block) beat all others,
//   2. weighted degree deg(m) + shifts[c],
//   3. grevlex on the monomial (s > t > u),
//   4. smaller component index first.
// With block = 0 and all shifts zero this is plain term-over-position grevlex.
struct ModuleOrder {
  std::vector<int> shifts;
  int block = 0;
};

// Weighted degree of a vector: max over nonzero components of deg + shift.
// kDegreeOfZero for the zero vector.
int weighted_degree(const Vec& v, const std::vector<int>& shifts = {});

class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  int nvars() const;
  int rank() const;
  const ModuleOrder& order() const;
  // Reduced: monic, no term of an element divisible by another leading term.
  const std::vector<Vec>& elements() const;
  std::size_t size() const { return elements().size(); }

  Vec normal_form(const Vec& f) const;
  Poly normal_form(const Poly& f) const;
  bool contains(const Vec& f) const;
  bool contains(const Poly& f) const;

  // Leading monomial and component of each element, in element order.
  std::vector<std::pair<Monomial, int>> leading_terms() const;
  std::vector<Monomial> leading_monomials() const;
  bool is_unit_ideal() const;

  struct Impl;

 private:
  friend GroebnerBasis buchberger(const std::vector<Vec>&, int, int, const ModuleOrder&);
  std::shared_ptr<const Impl> impl_;
};

// Reduced Groebner basis of the submodule of R^rank generated by gens.
// Zero generators are ignored. Throws InvalidInput on mixed rings or ranks.
GroebnerBasis buchberger(const std::vector<Vec>& gens, int nvars, int rank, const ModuleOrder& order = {});
// Ideal case under grevlex.
GroebnerBasis ideal_basis(const PolyVector& gens);

// Generators of Syz(v_1..v_k) = {w in R^k : sum w_i v_i = 0}. The v_i live in
// a free module with the given component shifts. For graded input the result
// is graded, and it is a Groebner basis of Syz for the order induced by the
// shifts deg(v_i).
std::vector<Vec> syzygy_generators(const std::vector<Vec>& vectors, const std::vector<int>& shifts = {});
std::vector<Vec> syzygy_generators(const PolyVector& scalars);

// Coefficients c with sum c_i gens_i = target, or nullopt when target is not
// in the submodule.
std::optional<PolyVector> lift(const Vec& target, const std::vector<Vec>& gens);
std::optional<PolyVector> lift(const Poly& target, const PolyVector& gens);
// lift for several targets over one Groebner basis.
std::vector<std::optional<PolyVector>> lift_many(const std::vector<Vec>& targets, const std::vector<Vec>& gens);

// Greedy minimal generating set of a graded submodule: candidates are scanned
// by weighted degree and kept when not in the span of those already kept.
std::vector<Vec> minimal_generators(const std::vector<Vec>& gens, const std::vector<int>& shifts = {});

// Equality of the submodules generated by a and b.
bool same_module(const std::vector<Vec>& a, const std::vector<Vec>& b);

}  // namespace mubasis::grobner
