#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mubasis/bounds.hpp"
#include "mubasis/errors.hpp"
#include "mubasis/poly_matrix.hpp"
#include "mubasis/quillen_suslin.hpp"

namespace mubasis {

// A candidate basis failed one of the three checks of verify_mu_basis.
class BasisRejected : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

// Four polynomials in k[s,t] with gcd 1.
struct Parametrization {
  PolyVector a;
  int d = 0;
  std::vector<std::string> warnings;
};

// Throws InvalidInput for a common factor (named in the message) or an
// all-zero tuple. Zero or all-constant entries only produce warnings.
Parametrization validate(const PolyVector& a);

// u^d a_i(s/u, t/u) in k[s,t,u].
PolyVector homogenize_ideal(const Parametrization& p);

// The signed 3x3-minor vector of three 4-vectors: minors with column i
// removed, signs + - + -.
PolyVector outer_product(const PolyVector& p, const PolyVector& q, const PolyVector& r);

using Basis = std::array<PolyVector, 3>;

struct MuBasis {
  Basis vectors;
  Scalar alpha;
  std::array<int, 3> degrees{};
  int degree_sum = 0;
};

// Returns alpha with outer_product = alpha * a after checking that every
// vector is a syzygy, that the outer product is a nonzero constant multiple
// of a, and that the vectors generate the whole syzygy module. Each failure
// throws BasisRejected with its own message.
Scalar verify_mu_basis(const Basis& basis, const Parametrization& p);

// Columns n+1..n+3 of G N, after checking that N is invertible and that the
// first n columns of G N vanish.
Basis extract_basis(const PolyMatrix& G, const PolyMatrix& N, int n);

enum class Branch { pd1, pd2 };
std::string branch_name(Branch b);

struct CompletionSummary {
  int m = 0;
  int n = 0;
  int deg_F = 0;
  int deg_M = 0;
  int deg_N = 0;
  BigInt bound;
  bool within_bound = false;
  Scalar det;
  std::vector<std::string> steps;
};

struct PipelineReport {
  Branch branch = Branch::pd1;
  int d = 0;
  int height = 0;
  int gamma1 = 0;  // degree of the dehomogenized first map
  int gamma2 = 0;  // degree of the dehomogenized second map
  int beta2 = 0;   // rank of the second module of the fixed-first-map resolution
  std::vector<int> shifts0;
  std::vector<int> q_shifts;
  std::vector<int> p_shifts;
  std::vector<int> mu;  // pd1 only: q_i - d
  std::optional<CompletionSummary> completion;
  bounds::BoundsReport bounds;
  int extracted_degree = 0;  // basis degree before the post-extraction reduction
  bool inter_reduced = false;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> timings;  // seconds
};

struct PipelineOptions {
  std::uint64_t seed = 0;
  // After extraction, look for a lower-degree basis among Groebner basis
  // elements of Syz and reduce each vector modulo the other two while that
  // lowers its degree.
  bool inter_reduce = true;
  qs::Strategy strategy = qs::Strategy::automatic;
};

struct PipelineResult {
  MuBasis basis;
  PipelineReport report;
};

PipelineResult compute_mu_basis(const Parametrization& p, const PipelineOptions& options = {});

// Case classification, bound values and resolution verdicts without
// computing a basis.
bounds::BoundsReport parametrization_bounds(const Parametrization& p);

int vector_degree(const PolyVector& v);

}  // namespace mubasis
