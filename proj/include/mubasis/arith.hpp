#pragma once

#include <utility>
#include <vector>

#include "mubasis/poly.hpp"
#include "mubasis/poly_matrix.hpp"

namespace mubasis::arith {

// Monic (grevlex) gcd. gcd(0, 0) throws.
Poly gcd(const Poly& a, const Poly& b);
Poly gcd_many(const PolyVector& ps);

// One-sided coprimality test: true is a proof that gcd(a, b) = 1 (built from
// specializations modulo word-size primes); false only means no proof was
// found. Polynomials involving all three variables are never certified.
bool certify_coprime(const Poly& a, const Poly& b, int attempts = 6);
// Exact answer: certificate first, full gcd otherwise.
bool coprime(const Poly& a, const Poly& b);

// Content of p viewed as a polynomial in `var`, and the primitive part p / content.
Poly content_in(const Poly& p, int var);

// u^d p(s/u, t/u) in k[s,t,u]. Throws if deg p > d.
Poly homogenize(const Poly& p, int d);
// Sets u = 1 and returns a polynomial in k[s,t].
Poly dehomogenize(const Poly& p);
PolyMatrix dehomogenize(const PolyMatrix& m);

// Fraction-free (Bareiss) determinant over the polynomial ring.
Poly determinant(const PolyMatrix& m);

struct MatrixInverse {
  PolyMatrix inverse;
  Scalar det;
};

// Adjugate inverse, valid when det(M) is a nonzero constant. The product
// N * M = I is checked before returning.
MatrixInverse mat_inverse(const PolyMatrix& m);

// Univariate helpers in a single variable `var` (other variables absent).
struct ExtendedGcd {
  Poly gcd;  // monic
  Poly x;    // x * a + y * b = gcd
  Poly y;
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b, int var);

// Division with respect to `var` by a divisor whose leading coefficient in
// `var` is a nonzero constant. Returns (quotient, remainder), deg_var(rem) < deg_var(divisor).
std::pair<Poly, Poly> divide_by_monic(const Poly& f, const Poly& divisor, int var);

// Sylvester resultant of f and g in `var`, with cofactors x, y such that
// x * f + y * g = res. Returns res = 0 (and zero cofactors) when f, g share a factor.
struct ResultantData {
  Poly res;
  Poly x;
  Poly y;
};
ResultantData resultant_with_cofactors(const Poly& f, const Poly& g, int var);

}  // namespace mubasis::arith
