#pragma once

#include <map>
#include <vector>

#include "mubasis/grobner.hpp"
#include "mubasis/poly_matrix.hpp"

namespace mubasis::grobner {

// Graded free resolution of a homogeneous ideal of length at most two:
//   0 -> F2 --d2--> F1 --d1--> F0 --gens--> I -> 0.
// Shifts are the internal degrees of the basis elements of each F_i, so F_i
// is the direct sum of S(-shift).
struct FreeResolution {
  int nvars = 3;
  int degree = 0;  // max generator degree
  bool fixed_first_map = false;
  PolyVector generators;
  std::vector<int> shifts0;
  PolyMatrix d1;  // r0 x r1
  std::vector<int> shifts1;
  PolyMatrix d2;  // r1 x r2
  std::vector<int> shifts2;

  int r0() const { return static_cast<int>(shifts0.size()); }
  int r1() const { return static_cast<int>(shifts1.size()); }
  int r2() const { return static_cast<int>(shifts2.size()); }
};

// With fixed_first_map the given generators (zeros allowed) form F0 as is and
// only the later maps are minimized. Otherwise the generators are first
// reduced to a minimal system and the whole resolution is minimal.
// Throws InvalidInput on non-homogeneous generators.
FreeResolution free_resolution(const PolyVector& gens, bool fixed_first_map);

struct BettiTable {
  // betti[i][p]: number of basis elements of F_i in internal degree p.
  std::vector<std::map<int, int>> betti;
  std::vector<int> totals;
  // max_i (max shift of F_i - i); the regularity of the ideal when the
  // resolution is minimal.
  int regularity = 0;
};

struct ResolutionInvariants {
  BettiTable table;
  int a = 0;       // rank of the last module
  int gamma1 = 0;  // deg d1
  int gamma2 = 0;  // deg d2, 0 when d2 is empty
};

ResolutionInvariants resolution_invariants(const FreeResolution& res);

// Dimension of the degree-k piece of the ideal.
long hilbert_function(const GroebnerBasis& gb, int k);
long hilbert_function(const PolyVector& gens, int k);
// Dimension of the degree-k piece of the quotient ring.
long quotient_hilbert_function(const GroebnerBasis& gb, int k);

// Krull dimension of the quotient ring: nvars for the zero ideal, -1 for the
// unit ideal.
int krull_dimension(const PolyVector& gens);
int height(const PolyVector& gens);

// Reduced Groebner basis of K : J. J = 0 gives the unit ideal.
PolyVector ideal_quotient(const PolyVector& K, const PolyVector& J);
PolyVector ideal_intersection(const PolyVector& a, const PolyVector& b);

}  // namespace mubasis::grobner
