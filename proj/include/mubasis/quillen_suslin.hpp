#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mubasis/poly_matrix.hpp"

namespace mubasis::qs {

// True iff the maximal minors of F (m x n, m >= n) generate the unit ideal.
bool is_unimodular(const PolyMatrix& F);

// H with H * F = I_n. Throws InvalidInput when F is not unimodular.
PolyMatrix left_inverse(const PolyMatrix& F);

struct CompletionCertificate {
  PolyMatrix M;  // M * F = [I_n; 0]
  PolyMatrix M_inv;
  Scalar det;
  int deg_M = 0;
  BigInt bound;  // qs_degree_bound(n, deg F)
  bool within_bound = false;
  // How F was reduced: per column "unit", "pair", "stable" or "patch", or
  // "kernel" followed by the steps of any inner column completion.
  std::vector<std::string> steps;
};

enum class Strategy {
  // Left-kernel basis for n >= 2, falling back to column-by-column reduction.
  automatic,
  // Column-by-column reduction only.
  columns,
  // Reduce every column by local solutions and patching, skipping the
  // elementary shortcuts. Meant for exercising that path.
  patching,
};

// Completion of a unimodular m x n matrix (m > n) over k[s,t]. The
// certificate is checked by exact multiplication before it is returned.
// Throws InvalidInput when F is not unimodular and AlgorithmFailure
// ("completion failed") when every retry is exhausted.
CompletionCertificate complete_columns(const PolyMatrix& F, std::uint64_t seed = 0,
                                       Strategy strategy = Strategy::automatic);

// For a row-unimodular F over k[s,t] returns an invertible M with
// F * M = F with `var` set to 0.
PolyMatrix variable_elimination_step(const PolyMatrix& F, int var, std::uint64_t seed = 0);

// 2D(1+2D)(1+D^4)(1+D)^4 with D = n_or_m * (1 + deg_F).
BigInt qs_degree_bound(int n_or_m, int deg_F);
BigInt qs_formula(const BigInt& D);

}  // namespace mubasis::qs
