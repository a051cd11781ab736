// Acceptance checks 1-7. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "mubasis/arith.hpp"
#include "mubasis/bounds.hpp"
#include "mubasis/cli.hpp"
#include "mubasis/mubasis.hpp"
#include "mubasis/quillen_suslin.hpp"
#include "test_util.hpp"

using namespace mubasis;
using namespace mubasis::testing;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

const char* kExample = "(s^2, t^2, s^2 - 1, s^2 + 1)";
const char* kExampleBasis = "((-t^2, 1, t^2, 0), (-2, 0, 1, 1), (1 - s^2, 0, s^2, 0))";

int failures = 0;

void report(int n, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

std::vector<grobner::Vec> vecs(const std::vector<PolyVector>& b) { return {b.begin(), b.end()}; }

void golden() {
  std::ostringstream why;
  auto start = Clock::now();
  cli::InputSpec in;
  in.text = kExample;
  auto o = cli::run(cli::Command::compute, in);
  double secs = since(start);
  const auto& doc = o.document;
  bool ok = o.exit_code == 0 && doc["alpha"] != "0" && secs <= 10;
  if (ok) {
    const auto& r = doc["resolution"];
    ok = doc["branch"] == "pd2" && r["beta2"] == 1 && r["gamma1"] == 2 && r["gamma2"] == 2;
    for (const auto& q : r["q_shifts"]) ok = ok && q.get<int>() <= 5;
    for (const auto& p : r["p_shifts"]) ok = ok && p.get<int>() <= 6;
    std::vector<PolyVector> basis;
    for (const auto& v : doc["basis"]) {
      PolyVector pv;
      for (const auto& e : v) pv.push_back(P(e.get<std::string>()));
      basis.push_back(pv);
    }
    bool verified = verify_mu_basis({basis[0], basis[1], basis[2]}, validate(V(kExample))) != 0;
    bool same = grobner::same_module(vecs(basis), vecs(io::parse_tuple_list(kExampleBasis)));
    ok = ok && verified && same;
    why << "alpha=" << doc["alpha"].get<std::string>() << " branch=" << doc["branch"].get<std::string>()
        << " beta2=" << r["beta2"] << " gamma=(" << r["gamma1"] << "," << r["gamma2"] << ") q=" << r["q_shifts"].dump()
        << " p=" << r["p_shifts"].dump() << " same_module=" << same;
  } else {
    why << "exit " << o.exit_code;
  }
  why << " time=" << secs << "s";
  report(1, ok, why.str());
}

void paper_basis() {
  cli::InputSpec in;
  in.text = kExample;
  in.basis = kExampleBasis;
  auto o = cli::run(cli::Command::verify, in);
  bool ok = o.exit_code == 0 && o.document["alpha"] == "-1";
  if (ok)
    for (const auto& [k, v] : o.document["stages"].items()) ok = ok && v.get<bool>();
  report(2, ok, "alpha=" + (o.document.contains("alpha") ? o.document["alpha"].get<std::string>() : "none"));
}

void koszul() {
  auto check = [](const char* gens, std::vector<std::vector<int>> shifts, int reg) {
    auto res = grobner::free_resolution(V(gens, 3), false);
    auto inv = grobner::resolution_invariants(res);
    return res.shifts0 == shifts[0] && res.shifts1 == shifts[1] && res.shifts2 == shifts[2] &&
           inv.table.regularity == reg;
  };
  bool linear = check("(s, t, u)", {{1, 1, 1}, {2, 2, 2}, {3}}, 1);
  bool squares = check("(s^2, t^2, u^2)", {{2, 2, 2}, {4, 4, 4}, {6}}, 4);
  bool equality = 3 * 2 - 2 == 4;
  report(3, linear && squares && equality,
         std::string("(s,t,u) ") + (linear ? "ok" : "mismatch") + ", (s^2,t^2,u^2) " + (squares ? "ok" : "mismatch"));
}

void random_suite() {
  std::mt19937_64 rng(20240601);
  auto start = Clock::now();
  int runs = 0, bad = 0, verdicts = 0;
  std::string first_failure;
  while (runs < 100) {
    PolyVector a;
    std::uniform_int_distribution<int> deg(1, 3);
    for (int k = 0; k < 4; ++k) a.push_back(random_poly(rng, 2, deg(rng), 3, 0.5));
    Parametrization p;
    try {
      p = validate(a);
    } catch (const InvalidInput&) {
      continue;
    }
    if (p.d < 1) continue;
    ++runs;
    try {
      auto r = compute_mu_basis(p, {static_cast<std::uint64_t>(runs)});
      bool ok = r.basis.vectors.size() == 3 && r.basis.alpha != 0 && verify_mu_basis(r.basis.vectors, p) == r.basis.alpha;
      for (const auto& v : r.report.bounds.verdicts) {
        if (!v.asserted) continue;
        ++verdicts;
        if (!v.pass) {
          ok = false;
          if (first_failure.empty()) first_failure = v.name;
        }
      }
      bad += !ok;
    } catch (const std::exception& e) {
      ++bad;
      if (first_failure.empty()) first_failure = e.what();
    }
  }
  double secs = since(start);
  std::ostringstream why;
  why << runs << " parametrizations, " << verdicts << " asserted verdicts, " << bad << " failures, " << secs << "s";
  if (!first_failure.empty()) why << " first: " << first_failure;
  report(4, bad == 0 && runs >= 50 && secs <= 900, why.str());
}

PolyMatrix random_unimodular(std::mt19937_64& rng, int k, int steps, int deg) {
  PolyMatrix u = PolyMatrix::identity(2, k);
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (int i = 0; i < steps; ++i) {
    int a = pick(rng), b = pick(rng);
    if (a != b) u.add_row_multiple(a, b, random_poly(rng, 2, deg, 3, 0.5));
  }
  u.swap_rows(0, pick(rng));
  return u;
}

bool certificate_holds(const PolyMatrix& F, const qs::CompletionCertificate& c) {
  PolyMatrix target(2, F.rows(), F.cols());
  for (int i = 0; i < F.cols(); ++i) target(i, i) = Poly::constant(2, 1);
  Poly det = arith::determinant(c.M);
  return c.M * F == target && (c.M * c.M_inv).is_identity() && det.is_nonzero_constant() &&
         det.constant_term() == c.det;
}

void certificates() {
  std::mt19937_64 rng(777);
  int checked = 0, bad = 0;
  for (int i = 0; checked < 30 && i < 400; ++i) {
    int k = 2 + i % 4;
    int n = 1 + (i / 4) % (k - 1);
    PolyMatrix F = random_unimodular(rng, k, 5 + i % 4, 1 + i % 2).block(0, 0, k, n);
    if (F.degree() < 1 || F.degree() > 3) continue;
    ++checked;
    try {
      bad += !certificate_holds(F, qs::complete_columns(F, i));
    } catch (const std::exception&) {
      ++bad;
    }
  }
  // Second-syzygy matrices of random forms, as used by the pipeline.
  int syz = 0;
  for (int i = 0; syz < 6 && i < 40; ++i) {
    PolyVector b;
    for (int k = 0; k < 4; ++k) b.push_back(random_form(rng, 2, 3));
    auto res = grobner::free_resolution(b, true);
    if (res.r2() == 0) continue;
    PolyMatrix F = arith::dehomogenize(res.d2);
    if (F.degree() > 3 || !qs::is_unimodular(F)) continue;
    ++syz;
    try {
      bad += !certificate_holds(F, qs::complete_columns(F, i));
    } catch (const std::exception&) {
      ++bad;
    }
  }
  // D = n (1 + deg F) = 1, 2, 3.
  BigInt q1 = qs::qs_degree_bound(1, 0), q2 = qs::qs_degree_bound(1, 1), q3 = qs::qs_degree_bound(1, 2);
  bool hand = q1 == 192 && q2 == 27540 && q3 == 881664 && qs::qs_degree_bound(3, 0) == q3;
  std::ostringstream why;
  why << checked + syz << " certificates (" << syz << " syzygy matrices), " << bad << " failures; QS(1,2,3)="
      << q1 << "/" << q2 << "/" << q3;
  report(5, bad == 0 && checked + syz >= 30 && hand, why.str());
}

void liaison() {
  std::mt19937_64 rng(4242);
  int passed = 0, applicable = 0, failed = 0;
  bool shape[2] = {false, false};
  for (int d : {2, 3}) {
    int here = 0;
    for (int i = 0; here < 5 && i < 40; ++i) {
      PolyVector b;
      for (int k = 0; k < 4; ++k) b.push_back(random_form(rng, d, 3));
      auto r = bounds::socle_check(b, i);
      if (!r.applicable) continue;
      ++applicable;
      ++here;
      if (r.passed() && r.observed_socle == 2 * d - 3)
        ++passed;
      else
        ++failed;
    }
    for (int i = 0; i < 10 && !shape[d - 2]; ++i) {
      PolyVector b;
      for (int k = 0; k < 4; ++k) b.push_back(random_form(rng, d, 3));
      shape[d - 2] = bounds::general_aci_shape_check(grobner::free_resolution(b, false), d);
    }
  }
  std::ostringstream why;
  why << passed << "/" << applicable << " socle checks passed; shape d=2 " << shape[0] << ", d=3 " << shape[1];
  report(6, failed == 0 && applicable >= 10 && shape[0] && shape[1], why.str());
}

// coprime_sequence verifies pairwise coprimality and ideal membership of its
// whole output exactly (throwing otherwise). Element degrees double at each
// step, so the independent recheck here stops at degree 64 for membership
// and 32 for gcds.
void coprime() {
  constexpr int kRecheckDegree = 64, kGcdDegree = 32;
  std::mt19937_64 rng(99);
  int families = 0, bad = 0, rechecked = 0;
  auto start = Clock::now();
  while (families < 10) {
    int m = 2 + families % 3;
    PolyVector f;
    for (int i = 0; i < m; ++i) f.push_back(random_poly(rng, 2, 2, 3, 0.6));
    if (std::any_of(f.begin(), f.end(), [](const Poly& p) { return p.is_zero(); })) continue;
    if (!arith::gcd_many(f).is_constant()) continue;
    ++families;
    try {
      auto h = bounds::coprime_sequence(f, 10);
      bool ok = h.size() == 10;
      auto gb = grobner::ideal_basis(f);
      for (std::size_t i = 0; ok && i < h.size(); ++i) {
        if (h[i].degree() > kRecheckDegree) continue;
        ok = gb.contains(h[i]);
        ++rechecked;
        for (std::size_t j = i + 1; ok && j < h.size(); ++j)
          if (h[i].degree() <= kGcdDegree && h[j].degree() <= kGcdDegree) ok = arith::gcd(h[i], h[j]).is_constant();
      }
      bad += !ok;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  std::ostringstream why;
  why << families << " families, N=10, " << bad << " failures, " << rechecked << " elements rechecked independently, "
      << since(start) << "s";
  report(7, bad == 0, why.str());
}

}  // namespace

// Optional arguments select criteria by number; default is all.
int main(int argc, char** argv) {
  void (*checks[])() = {golden, paper_basis, koszul, random_suite, certificates, liaison, coprime};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  for (int n = 1; n <= 7; ++n)
    if (selected.empty() || std::find(selected.begin(), selected.end(), n) != selected.end()) checks[n - 1]();
  return failures == 0 ? 0 : 1;
}
