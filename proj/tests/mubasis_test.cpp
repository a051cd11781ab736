#include <gtest/gtest.h>

#include <random>

#include "mubasis/arith.hpp"
#include "mubasis/grobner.hpp"
#include "mubasis/mubasis.hpp"
#include "test_util.hpp"

using namespace mubasis;
using namespace mubasis::testing;

namespace {

const char* kExample = "(s^2, t^2, s^2 - 1, s^2 + 1)";

Basis example_basis() { return {V("(-t^2, 1, t^2, 0)"), V("(-2, 0, 1, 1)"), V("(1 - s^2, 0, s^2, 0)")}; }

PolyMatrix example_G() {
  return PolyMatrix::from_columns(2, 4, {V("(-2, 0, 1, 1)"), V("(-t^2, 1, t^2, 0)"), V("(-t^2, s^2, 0, 0)"),
                                         V("(1 - s^2, 0, s^2, 0)")});
}

// Completion of the column (0, s^2, -1, -t^2); its first column is that column.
PolyMatrix example_N() {
  return PolyMatrix::from_columns(2, 4, {V("(0, s^2, -1, -t^2)"), V("(0, 1, 0, 0)"), V("(1, 0, 0, 0)"),
                                         V("(0, 0, 0, 1)")});
}

std::vector<grobner::Vec> vecs(const Basis& b) { return {b[0], b[1], b[2]}; }

std::string rejection(const Basis& b, const Parametrization& p) {
  try {
    verify_mu_basis(b, p);
  } catch (const BasisRejected& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Validate, Examples) {
  auto p = validate(V(kExample));
  EXPECT_EQ(p.d, 2);
  EXPECT_TRUE(p.warnings.empty());
  try {
    validate(V("(s, s, s, s)"));
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("common factor s"), std::string::npos) << e.what();
  }
  auto unit = validate(V("(1, 0, 0, 0)"));
  EXPECT_EQ(unit.d, 0);
  EXPECT_FALSE(unit.warnings.empty());
  EXPECT_THROW(validate(V("(0, 0, 0, 0)")), InvalidInput);
  EXPECT_THROW(validate(V("(s, t, 1)")), InvalidInput);
}

TEST(HomogenizeIdeal, Examples) {
  EXPECT_EQ(homogenize_ideal(validate(V(kExample))), V("(s^2, t^2, s^2 - u^2, s^2 + u^2)", 3));
  EXPECT_EQ(homogenize_ideal(validate(V("(s, t, 1, 1)"))), V("(s, t, u, u)", 3));
  auto forms = V("(s^2, s*t, t^2 - s^2, 3*t^2)");
  auto b = homogenize_ideal(validate(V("(s^2, s*t, t^2 - s^2, 3*t^2 + s)")));
  EXPECT_EQ(b[0], forms[0].with_nvars(3));
  EXPECT_EQ(b[1], forms[1].with_nvars(3));
  EXPECT_EQ(b[2], forms[2].with_nvars(3));
}

TEST(OuterProduct, Examples) {
  EXPECT_EQ(outer_product(V("(1, 0, 0, 0)"), V("(0, 1, 0, 0)"), V("(0, 0, 1, 0)")), V("(0, 0, 0, -1)"));
  auto b = example_basis();
  EXPECT_EQ(outer_product(b[0], b[0], b[2]), V("(0, 0, 0, 0)"));
  EXPECT_EQ(outer_product(b[0], b[1], b[2]), V("(-s^2, -t^2, -s^2 + 1, -s^2 - 1)"));
}

TEST(OuterProduct, AlternatingAndMultilinear) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    PolyVector p, q, r;
    for (int k = 0; k < 4; ++k) {
      p.push_back(random_poly(rng, 2, 2, 3));
      q.push_back(random_poly(rng, 2, 2, 3));
      r.push_back(random_poly(rng, 2, 2, 3));
    }
    PolyVector o = outer_product(p, q, r), swapped = outer_product(q, p, r);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(o[k], -swapped[k]);
    // Each vector is orthogonal to the outer product.
    Poly s(2);
    for (int k = 0; k < 4; ++k) s += p[k] * o[k];
    EXPECT_TRUE(s.is_zero());
  }
}

TEST(VerifyMuBasis, WorkedExample) {
  auto p = validate(V(kExample));
  auto b = example_basis();
  EXPECT_EQ(verify_mu_basis(b, p), -1);
  Basis doubled = b;
  for (auto& x : doubled[0]) x *= Scalar(2);
  EXPECT_EQ(verify_mu_basis(doubled, p), -2);
}

TEST(VerifyMuBasis, Rejections) {
  auto p = validate(V(kExample));
  auto b = example_basis();
  EXPECT_EQ(rejection({b[0], b[0], b[2]}, p), "alpha = 0 (degenerate triple)");
  EXPECT_EQ(rejection({b[0], b[1], V("(1, 0, 0, 0)")}, p), "not a syzygy: vector 3");
  Basis scaled = b;
  for (auto& x : scaled[2]) x *= P("s");
  EXPECT_EQ(rejection(scaled, p), "outer product not proportional");
}

TEST(VerifyMuBasis, ScalingMultipliesAlpha) {
  auto p = validate(V(kExample));
  auto b = example_basis();
  for (int c : {-3, 2, 7}) {
    Basis scaled = b;
    for (auto& x : scaled[1]) x *= Scalar(c, 5);
    EXPECT_EQ(verify_mu_basis(scaled, p), Scalar(-c, 5));
  }
}

TEST(ExtractBasis, WorkedExample) {
  auto out = extract_basis(example_G(), example_N(), 1);
  auto b = example_basis();
  EXPECT_EQ(out[0], b[0]);
  EXPECT_EQ(out[1], b[1]);
  EXPECT_EQ(out[2], b[2]);
}

TEST(ExtractBasis, Definition) {
  PolyMatrix G = PolyMatrix::from_columns(2, 4, {V("(s, 1, 0, t)"), V("(1, t, s^2, 0)"), V("(0, 0, 1, s)")});
  PolyMatrix N = PolyMatrix::identity(2, 3);
  auto out = extract_basis(G, N, 0);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(out[j], G.col(j));

  std::mt19937_64 rng(5);
  PolyMatrix R(2, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 1; j < 4; ++j) R(i, j) = random_poly(rng, 2, 2, 3);
  out = extract_basis(R, PolyMatrix::identity(2, 4), 1);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(out[j], R.col(j + 1));
}

TEST(ExtractBasis, Preconditions) {
  PolyMatrix N = example_N();
  N(3, 0) = P("t^2");  // first column no longer in the kernel of G
  EXPECT_THROW(extract_basis(example_G(), N, 1), InvalidInput);
  PolyMatrix singular = example_N();
  singular(0, 2) = P("s");
  EXPECT_THROW(extract_basis(example_G(), singular, 1), InvalidInput);
}

TEST(Pipeline, WorkedExample) {
  auto p = validate(V(kExample));
  auto r = compute_mu_basis(p);
  EXPECT_NE(r.basis.alpha, 0);
  EXPECT_EQ(r.report.branch, Branch::pd2);
  EXPECT_EQ(r.report.beta2, 1);
  EXPECT_EQ(r.report.gamma1, 2);
  EXPECT_EQ(r.report.gamma2, 2);
  for (int q : r.report.q_shifts) EXPECT_LE(q, 5);
  for (int s : r.report.p_shifts) EXPECT_LE(s, 6);
  EXPECT_TRUE(grobner::same_module(vecs(r.basis.vectors), vecs(example_basis())));
  EXPECT_TRUE(r.report.bounds.all_asserted_pass());
  ASSERT_TRUE(r.report.completion.has_value());
  EXPECT_EQ(r.report.completion->m, 4);
  EXPECT_EQ(r.report.completion->n, 1);
  EXPECT_EQ(r.basis.degree_sum, r.basis.degrees[0] + r.basis.degrees[1] + r.basis.degrees[2]);
  EXPECT_LE(r.basis.degree_sum, 4);
}

TEST(Pipeline, BilinearExample) {
  auto r = compute_mu_basis(validate(V("(1, s, t, s*t)")));
  for (int deg : r.basis.degrees) EXPECT_LE(deg, 1);
  Basis relations{V("(-s, 1, 0, 0)"), V("(-t, 0, 1, 0)"), V("(0, -t, 0, 1)")};
  EXPECT_TRUE(grobner::same_module(vecs(r.basis.vectors), vecs(relations)));
}

TEST(Pipeline, UnitEntry) {
  auto r = compute_mu_basis(validate(V("(1, 0, 0, 0)")));
  EXPECT_EQ(r.report.branch, Branch::pd1);
  EXPECT_TRUE(r.basis.alpha == 1 || r.basis.alpha == -1);
  Basis units{V("(0, 1, 0, 0)"), V("(0, 0, 1, 0)"), V("(0, 0, 0, 1)")};
  EXPECT_TRUE(grobner::same_module(vecs(r.basis.vectors), vecs(units)));
}

TEST(Pipeline, ProjectiveDimensionOne) {
  auto r = compute_mu_basis(validate(V("(1, s, s^2, s^3)")));
  EXPECT_EQ(r.report.branch, Branch::pd1);
  EXPECT_EQ(r.report.mu, (std::vector<int>{1, 1, 1}));
  for (int deg : r.basis.degrees) EXPECT_LE(deg, 3);
  EXPECT_EQ(r.report.bounds.applicable, bounds::Case::pd1);
}

TEST(Pipeline, SeedDeterminismAndForcedPatching) {
  auto p = validate(V("(s^2 + t, t^2 - s, s*t + 1, s - t + 2)"));
  PipelineOptions o;
  o.seed = 4;
  auto a = compute_mu_basis(p, o), b = compute_mu_basis(p, o);
  EXPECT_EQ(a.basis.vectors, b.basis.vectors);
  EXPECT_EQ(a.basis.alpha, b.basis.alpha);
  o.strategy = qs::Strategy::patching;
  o.inter_reduce = false;
  auto c = compute_mu_basis(validate(V(kExample)), o);
  EXPECT_TRUE(grobner::same_module(vecs(c.basis.vectors), vecs(example_basis())));
}

TEST(Pipeline, PostExtractionReduction) {
  auto p = validate(V("(-2*s^2 + 3*t^2 + s + 3*t + 1, -s^2 + t^2, 2*s, -3*t - 1)"));
  auto reduced = compute_mu_basis(p);
  EXPECT_EQ(reduced.basis.degrees, (std::array<int, 3>{1, 2, 2}));
  EXPECT_TRUE(reduced.report.inter_reduced);
  PipelineOptions raw;
  raw.inter_reduce = false;
  auto extracted = compute_mu_basis(p, raw);
  EXPECT_FALSE(extracted.report.inter_reduced);
  EXPECT_EQ(*std::max_element(extracted.basis.degrees.begin(), extracted.basis.degrees.end()),
            extracted.report.extracted_degree);
  EXPECT_EQ(reduced.report.extracted_degree, extracted.report.extracted_degree);
  EXPECT_TRUE(grobner::same_module(vecs(reduced.basis.vectors), vecs(extracted.basis.vectors)));
}

TEST(Pipeline, RandomParametrizations) {
  std::mt19937_64 rng(1234);
  int done = 0;
  for (int i = 0; done < 20 && i < 100; ++i) {
    PolyVector a;
    for (int k = 0; k < 4; ++k) a.push_back(random_poly(rng, 2, 1 + i % 3, 3, 0.5));
    Parametrization p;
    try {
      p = validate(a);
    } catch (const InvalidInput&) {
      continue;
    }
    auto r = compute_mu_basis(p, {static_cast<std::uint64_t>(i)});
    EXPECT_NE(r.basis.alpha, 0);
    for (const auto& v : r.report.bounds.verdicts)
      if (v.asserted) EXPECT_TRUE(v.pass) << v.name << ": " << v.observed << " > " << v.bound;
    EXPECT_LE(*std::max_element(r.basis.degrees.begin(), r.basis.degrees.end()), r.report.extracted_degree);
    if (r.report.branch == Branch::pd1) {
      int dmax = *std::max_element(r.basis.degrees.begin(), r.basis.degrees.end());
      EXPECT_LE(dmax, p.d);
    }
    ++done;
  }
  EXPECT_EQ(done, 20);
}
