#include <gtest/gtest.h>

#include <random>

#include "mubasis/arith.hpp"
#include "mubasis/errors.hpp"
#include "mubasis/quillen_suslin.hpp"
#include "mubasis/resolution.hpp"
#include "test_util.hpp"

using namespace mubasis;
using namespace mubasis::qs;
using namespace mubasis::testing;

namespace {

PolyMatrix col(const char* text) { return PolyMatrix::column(V(text)); }

PolyMatrix stacked_identity(int m, int n) {
  PolyMatrix out(2, m, n);
  for (int i = 0; i < n; ++i) out(i, i) = P("1");
  return out;
}

void expect_certificate(const PolyMatrix& F, const CompletionCertificate& c) {
  EXPECT_EQ(c.M * F, stacked_identity(F.rows(), F.cols()));
  EXPECT_TRUE((c.M * c.M_inv).is_identity());
  EXPECT_TRUE((c.M_inv * c.M).is_identity());
  EXPECT_NE(c.det, 0);
  Poly det = arith::determinant(c.M);
  EXPECT_TRUE(det.is_nonzero_constant());
  EXPECT_EQ(det.constant_term(), c.det);
  EXPECT_EQ(c.deg_M, std::max(0, c.M.degree()));
}

// Product of random elementary matrices: an invertible matrix over k[s,t].
PolyMatrix random_unimodular(std::mt19937_64& rng, int k, int steps, int deg) {
  PolyMatrix u = PolyMatrix::identity(2, k);
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (int i = 0; i < steps; ++i) {
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    u.add_row_multiple(a, b, random_poly(rng, 2, deg, 3, 0.5));
  }
  std::uniform_int_distribution<int> perm(0, k - 1);
  u.swap_rows(0, perm(rng));
  return u;
}

}  // namespace

TEST(Unimodular, Examples) {
  EXPECT_TRUE(is_unimodular(col("(0, s^2, -1, -t^2)")));
  EXPECT_FALSE(is_unimodular(col("(s, t)")));
  EXPECT_TRUE(is_unimodular(stacked_identity(4, 2)));
  EXPECT_TRUE(is_unimodular(col("(s, 1 - s)")));
  EXPECT_TRUE(is_unimodular(col("(s, t, 1 - s*t)")));
  EXPECT_FALSE(is_unimodular(col("(s^2, s*t, t^2)")));
}

TEST(LeftInverse, Examples) {
  EXPECT_EQ(left_inverse(col("(0, s^2, -1, -t^2)")).row(0), V("(0, 0, -1, 0)"));
  EXPECT_EQ(left_inverse(stacked_identity(3, 1)).row(0), V("(1, 0, 0)"));
  EXPECT_EQ(left_inverse(col("(s, 1 - s)")).row(0), V("(1, 1)"));
  EXPECT_THROW(left_inverse(col("(s, t)")), InvalidInput);
}

TEST(LeftInverse, RandomUnimodularMatrices) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int i = 0; checked < 30 && i < 200; ++i) {
    int k = 2 + i % 4, n = 1 + i % (k - 1);
    PolyMatrix u = random_unimodular(rng, k, 6, 1);
    PolyMatrix F = u.block(0, 0, k, n);
    if (F.degree() > 3) continue;
    PolyMatrix H = left_inverse(F);
    EXPECT_TRUE((H * F).is_identity());
    ++checked;
  }
  EXPECT_EQ(checked, 30);
}

TEST(Complete, WorkedExampleColumn) {
  PolyMatrix F = col("(0, s^2, -1, -t^2)");
  auto c = complete_columns(F);
  expect_certificate(F, c);
  EXPECT_EQ(c.steps, (std::vector<std::string>{"unit"}));
  EXPECT_TRUE(c.within_bound);
  EXPECT_EQ(c.bound, 881664);  // n = 1, deg F = 2
}

TEST(Complete, TrivialShapes) {
  auto id = complete_columns(stacked_identity(4, 2));
  EXPECT_TRUE(id.M.is_identity());
  auto last = complete_columns(col("(0, 0, 1)"));
  PolyMatrix swap = PolyMatrix::identity(2, 3);
  swap.swap_rows(0, 2);
  EXPECT_EQ(last.M, swap);
}

TEST(Complete, RejectsNonUnimodular) {
  EXPECT_THROW(complete_columns(col("(s, t, s*t)")), InvalidInput);
  EXPECT_THROW(complete_columns(stacked_identity(2, 2)), InvalidInput);
}

TEST(Complete, RandomUnimodularInputs) {
  std::mt19937_64 rng(2024);
  int verified = 0;
  std::map<std::string, int> used;
  for (int i = 0; verified < 36 && i < 400; ++i) {
    int k = 2 + i % 5;
    int n = 1 + (i / 5) % std::max(1, k - 1);
    if (n >= k) n = k - 1;
    PolyMatrix u = random_unimodular(rng, k, 5 + i % 4, 1 + i % 2);
    PolyMatrix F = u.block(0, 0, k, n);
    if (F.degree() > 3 || F.degree() < 1) continue;
    auto c = complete_columns(F, i);
    expect_certificate(F, c);
    for (const auto& s : c.steps) ++used[s];
    ++verified;
  }
  EXPECT_GE(verified, 30);
  EXPECT_GT(used["stable"] + used["pair"] + used["unit"], 0);
}

TEST(Complete, ForcedPatching) {
  for (const char* text : {"(s, t, 1 - s*t)", "(t, 1 - s*t)", "(s^2 + t, 1 + s*t + s^3)", "(1 + s*t, s^2, t)",
                           "(t^2 - s, t + 1, s)"}) {
    PolyMatrix F = col(text);
    ASSERT_TRUE(is_unimodular(F)) << text;
    auto c = complete_columns(F, 5, Strategy::patching);
    expect_certificate(F, c);
    EXPECT_EQ(c.steps.front(), "patch") << text;
  }
}

TEST(Complete, ForcedPatchingTwoColumns) {
  std::mt19937_64 rng(77);
  PolyMatrix u = random_unimodular(rng, 3, 4, 1);
  PolyMatrix F = u.block(0, 0, 3, 2);
  auto c = complete_columns(F, 1, Strategy::patching);
  expect_certificate(F, c);
}

TEST(Complete, SeedReproducible) {
  PolyMatrix F = col("(s, t, 1 - s*t)");
  auto a = complete_columns(F, 9, Strategy::patching);
  auto b = complete_columns(F, 9, Strategy::patching);
  EXPECT_EQ(a.M, b.M);
}

// Dehomogenized second maps of resolutions of four random forms: the
// matrices the pipeline completes.
TEST(Complete, SecondSyzygyMatrices) {
  std::mt19937_64 rng(606);
  int kernel = 0, checked = 0;
  for (int i = 0; checked < 6 && i < 30; ++i) {
    const int d = 2 + i % 2;
    PolyVector b;
    for (int k = 0; k < 4; ++k) b.push_back(random_form(rng, d, 3));
    auto res = grobner::free_resolution(b, true);
    if (res.r2() == 0) continue;
    PolyMatrix F = arith::dehomogenize(res.d2);
    if (!is_unimodular(F)) continue;
    auto c = complete_columns(F, i);
    expect_certificate(F, c);
    kernel += c.steps.front() == "kernel";
    ++checked;
  }
  EXPECT_EQ(checked, 6);
  EXPECT_GT(kernel, 0);
}

TEST(VariableElimination, Examples) {
  PolyMatrix row(2, 1, 2);
  row(0, 0) = P("s");
  row(0, 1) = P("1");
  EXPECT_TRUE(variable_elimination_step(row, 1).is_identity());

  row(0, 0) = P("t");
  row(0, 1) = P("1");
  PolyMatrix m = variable_elimination_step(row, 1);
  PolyMatrix expected = PolyMatrix::identity(2, 2);
  expected(1, 0) = P("-t");
  EXPECT_EQ(m, expected);

  row(0, 0) = P("1");
  row(0, 1) = P("t");
  m = variable_elimination_step(row, 1);
  expected = PolyMatrix::identity(2, 2);
  expected(0, 1) = P("-t");
  EXPECT_EQ(m, expected);
}

TEST(VariableElimination, MonicAndGeneralRows) {
  for (const char* text : {"(t, 1 - s*t)", "(t^2 + s, 1 + s*t - t^2*s)", "(s*t - 1, s)", "(s, t, 1 - s*t)"}) {
    PolyVector v = V(text);
    PolyMatrix row(2, 1, static_cast<int>(v.size()));
    for (std::size_t j = 0; j < v.size(); ++j) row(0, static_cast<int>(j)) = v[j];
    if (!is_unimodular(row.transpose())) continue;
    for (int var : {0, 1}) {
      PolyMatrix M = variable_elimination_step(row, var, 3);
      PolyMatrix F0 = row.map([&](const Poly& p) { return p.substitute(var, Poly(2)); });
      EXPECT_EQ(row * M, F0) << text << " var " << var;
      EXPECT_TRUE(arith::determinant(M).is_nonzero_constant());
    }
  }
}

TEST(DegreeBound, HandValues) {
  EXPECT_EQ(qs_formula(1), 192);
  EXPECT_EQ(qs_formula(2), 27540);
  EXPECT_EQ(qs_formula(3), 881664);
  EXPECT_EQ(qs_degree_bound(1, 0), 192);
  EXPECT_EQ(qs_degree_bound(1, 1), 27540);
  EXPECT_EQ(qs_degree_bound(3, 0), 881664);
}

TEST(DegreeBound, Monotone) {
  for (int n = 1; n <= 6; ++n)
    for (int d = 0; d <= 6; ++d) {
      EXPECT_LE(qs_degree_bound(n, d), qs_degree_bound(n + 1, d));
      EXPECT_LE(qs_degree_bound(n, d), qs_degree_bound(n, d + 1));
    }
}
