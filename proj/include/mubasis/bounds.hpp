#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mubasis/resolution.hpp"

namespace mubasis::bounds {

// Which degree bound applies to a parametrization, from weakest to strongest:
// general, height-3 ideal, general almost complete intersection, pd 1.
enum class Case { general, height3, generic_aci, pd1 };
std::string case_label(Case c);  // "i" .. "iv"

struct Verdict {
  std::string name;
  BigInt bound;
  BigInt observed;
  bool pass = true;
  // Proved inequalities must pass on valid input; informational ones are
  // comparisons against bounds that need not hold for this construction.
  bool asserted = true;
};

Verdict make_verdict(std::string name, const BigInt& bound, const BigInt& observed, bool asserted = true);

struct BoundsReport {
  int d = 0;
  int m = 4;
  Case applicable = Case::general;
  BigInt reg_bound;             // 3d - 2
  BigInt beta2_bound;           // C(3d, 2)
  BigInt beta2_equal_bound;     // m C(2d, 2)
  BigInt beta1_bound;           // beta2 + m - 1
  BigInt height3_beta1_bound;   // 2d + 2
  BigInt height3_beta2_bound;   // 2d - 1
  BigInt lazard;                // 2d - min(2, d)
  BigInt qs_D;                  // beta2 (1 + gamma2)
  BigInt qs_bound;              // qs_formula(qs_D)
  BigInt basis_bound;           // gamma1 (beta2 + 2) qs_formula(qs_D)
  std::array<BigInt, 4> case_values;  // indexed by Case
  std::vector<Verdict> verdicts;

  const BigInt& case_value() const { return case_values[static_cast<int>(applicable)]; }
  bool all_asserted_pass() const;
};

BigInt binomial(long n, long k);

// gamma1 (beta2 + 2) * 2D(1+2D)(1+D^4)(1+D)^4 with D = beta2 (1 + gamma2).
BigInt basis_degree_formula(long beta2, long gamma1, long gamma2);
// Case value: d for pd1, otherwise basis_degree_formula with the case's
// parameter bounds substituted.
BigInt case_bound(Case c, int d);

BoundsReport evaluate_bounds(int d, int m, Case c, int beta2, int gamma1, int gamma2);

// Proved inequalities evaluated on a resolution of homogeneous generators of
// degree <= d. A fixed-first-map resolution is accepted; the invariants that
// refer to the minimal resolution are recomputed from its generators.
// For d = 0 every verdict is informational.
std::vector<Verdict> check_resolution_bounds(const grobner::FreeResolution& res, int d, int m);

// N pairwise coprime elements of the ideal (f_1..f_m), gcd(f) = 1, built by
// the inductive product-plus-multiple recursion. Verified before returning:
// pairwise coprime and every element reduces to zero modulo the ideal.
PolyVector coprime_sequence(const PolyVector& f, int N);

struct SocleReport {
  bool applicable = false;
  std::string reason;  // why not applicable
  int d = 0;
  int expected_socle = 0;  // 2d - 3
  int observed_socle = -1;
  int retries = 0;
  std::array<std::array<int, 4>, 4> transform{};  // upper unitriangular scalars
  PolyVector complete_intersection;
  PolyVector linked;  // G = K : J
  std::vector<long> hilbert_linked;  // H_{S/G}(t), t = 0..3d-3
  bool artinian = false;
  bool socle_degree = false;
  bool hilbert_identity = false;
  bool symmetric = false;
  bool passed() const { return applicable && artinian && socle_degree && hilbert_identity && symmetric; }
};

// Links J = (b_1..b_4) through a complete intersection inside it and checks
// the socle degree and Hilbert function relations of the linked ideal.
SocleReport socle_check(const PolyVector& b, std::uint64_t seed);

struct ResolutionShape {
  std::vector<int> shifts0, shifts1, shifts2;  // ascending
};
// Minimal resolution shape of a general almost complete intersection of
// four forms of degree d in three variables.
ResolutionShape general_aci_shape(int d);
bool general_aci_shape_check(const grobner::FreeResolution& minimal, int d);

}  // namespace mubasis::bounds
