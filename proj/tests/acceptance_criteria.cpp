// Acceptance battery: ten criteria, one pass/fail line each, exit code is the
// number of failed criteria. Tolerances are pinned next to each criterion.
#include "torsion_lab/koszul.hpp"
#include "torsion_lab/local_algebra.hpp"
#include "torsion_lab/polynomial.hpp"
#include "torsion_lab/tame_symbol.hpp"
#include "torsion_lab/testgen.hpp"
#include "torsion_lab/torsion.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace torsion_lab;

namespace {

const RankPolicy kPolicy;

struct Criterion {
  int id;
  bool ok = true;
  std::string detail;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  explicit Criterion(int n) : id(n) {}

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& s) {
    if (detail.empty()) detail = s;
  }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  // returns 1 on failure so main can sum
  int report() {
    std::printf("criterion %2d: %s  (%s) [%.2f s]\n", id, ok ? "PASS" : "FAIL",
                detail.c_str(), seconds());
    return ok ? 0 : 1;
  }
};

std::string fnum(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

MultiPolynomial ux() { return mp_var(1, 0); }
MultiPolynomial px() { return mp_var(2, 0); }
MultiPolynomial py() { return mp_var(2, 1); }

MultiPolynomial pow_mp(const MultiPolynomial& p, int k) {
  MultiPolynomial r = mp_const(p.nvars, 1.0);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

LimitSchedule tight_schedule(unsigned seed) {
  LimitSchedule S = make_limit_schedule(seed);
  S.stab_tol = 1e-9;
  return S;
}

// affine polynomial in n variables vanishing at the given spectrum point
MultiPolynomial affine_through(testgen::Rng& rng, const std::vector<cd>& pt) {
  int n = static_cast<int>(pt.size());
  MultiPolynomial p = mp_zero(n);
  cd shift(0.0, 0.0);
  for (int v = 0; v < n; ++v) {
    cd a = testgen::crand(rng, 1.0) + cd(0.3, 0.0);
    p = p + a * mp_var(n, v);
    shift += a * pt[static_cast<std::size_t>(v)];
  }
  return p - mp_const(n, shift);
}

// affine polynomial bounded away from zero on every listed spectrum point
MultiPolynomial affine_avoiding(testgen::Rng& rng, int n,
                                const std::vector<std::vector<cd>>& pts) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    MultiPolynomial p = mp_const(n, testgen::crand(rng, 1.5) + cd(1.0, 0.0));
    for (int v = 0; v < n; ++v) p = p + testgen::crand(rng, 1.0) * mp_var(n, v);
    bool good = true;
    for (const auto& pt : pts)
      if (std::abs(eval(p, pt)) < 5e-2) good = false;
    if (good) return p;
  }
  throw std::runtime_error("affine_avoiding: no admissible polynomial found");
}

double rel_err(cd got, cd want) {
  double d = std::max(std::abs(got), std::abs(want));
  if (d == 0.0) return 0.0;
  return std::abs(got - want) / d;
}

}  // namespace

// 1. closed-form symbol values through both evaluation routes
static int criterion1() {
  Criterion c(1);
  const double tol = 1e-6;
  struct Case {
    const char* name;
    MultiPolynomial f1, g1;  // one variable, for the closed form
    MultiPolynomial f2, g2;  // two variables, for the local limit on h = y
    cd want;
  };
  std::vector<Case> cases;
  cases.push_back({"(z,z)", ux(), ux(), px(), px(), cd(-1.0, 0.0)});
  cases.push_back({"(1+z,z)", mp_const(1, 1.0) + ux(), ux(), mp_const(2, 1.0) + px(), px(),
                   cd(1.0, 0.0)});
  cases.push_back({"(unit,unit)", ux() - mp_const(1, 3.0), ux() + mp_const(1, 2.0),
                   px() - mp_const(2, 3.0), px() + mp_const(2, 2.0), cd(1.0, 0.0)});
  double worst = 0.0;
  for (auto& k : cases) {
    auto t0 = std::chrono::steady_clock::now();
    cd reg = tame_symbol_regular(k.f1, k.g1, cd(0));
    SymbolProblem P{py(), k.f2, k.g2, {cd(0), cd(0)}, 0.5};
    cd loc = tame_symbol_local(P, make_limit_schedule(42), kPolicy);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double e = std::max(rel_err(reg, k.want), rel_err(loc, k.want));
    worst = std::max(worst, e);
    if (e > tol) c.fail(std::string(k.name) + " off by " + fnum(e));
    if (dt >= 1.0) c.fail(std::string(k.name) + " took " + fnum(dt) + " s");
  }
  c.note("3 values x 2 routes, worst rel err " + fnum(worst));
  return c.report();
}

// 2. cusp curve value through the limit procedure
static int criterion2() {
  Criterion c(2);
  const double tol = 1e-6;
  MultiPolynomial cusp = py() * py() - px() * px() * px();
  SymbolProblem P{cusp, px(), py(), {cd(0), cd(0)}, 0.5};
  LimitSchedule S = make_limit_schedule(42);  // max_steps = 40
  SymbolTrace tr;
  try {
    cd v = tame_symbol_local(P, S, kPolicy, nullptr, &tr);
    double e = rel_err(v, cd(1.0, 0.0));
    c.note("value " + fnum(v.real()) + (v.imag() < 0 ? "-" : "+") + fnum(std::abs(v.imag())) +
           "i in " + std::to_string(tr.q.size()) + " steps, rel err " + fnum(e));
    if (e > tol) c.fail("rel err " + fnum(e));
    if (static_cast<int>(tr.q.size()) > 40) c.fail("needed more than 40 steps");
  } catch (const std::exception& e) {
    c.fail(e.what());
  }
  if (c.seconds() >= 5.0) c.fail("took " + fnum(c.seconds()) + " s");
  return c.report();
}

// 3. disc-model product formula against the symbol product
static int criterion3() {
  Criterion c(3);
  const double tol = 1e-6;
  testgen::Rng rng(1003);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    int df = 1 + static_cast<int>(rng() % 5), dg = 1 + static_cast<int>(rng() % 5);
    auto rf = testgen::roots_in_bands(rng, df, 0.1, 0.9, 1.1, 1.8, 5e-2);
    auto rg = testgen::roots_in_bands(rng, dg, 0.1, 0.9, 1.1, 1.8, 5e-2);
    cd lf = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.28));
    cd lg = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.28));
    DiscModelProblem P{testgen::poly_from_roots(rf, lf), testgen::poly_from_roots(rg, lg)};
    try {
      cd a = carey_pincus(P);
      cd b = joint_torsion_global(P);
      double e = rel_err(a, b);
      worst = std::max(worst, e);
      if (e > tol) c.fail("pair " + std::to_string(i) + " off by " + fnum(e));
    } catch (const std::exception& e) {
      c.fail(std::string("pair ") + std::to_string(i) + ": " + e.what());
    }
  }
  c.note("20 pairs, worst rel gap " + fnum(worst));
  if (c.seconds() >= 30.0) c.fail("took " + fnum(c.seconds()) + " s");
  return c.report();
}

// 4. winding quadrature equals minus the interior root count
static int criterion4() {
  Criterion c(4);
  testgen::Rng rng(1004);
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    int deg = 1 + static_cast<int>(rng() % 5);
    auto roots = testgen::roots_in_bands(rng, deg, 0.15, 0.85, 1.15, 1.8, 5e-2);
    cd lead = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.28));
    int inside = 0;
    for (cd r : roots)
      if (std::abs(r) < 1.0) ++inside;
    try {
      int w = noether_index(testgen::poly_from_roots(roots, lead));
      if (w != -inside)
        c.fail("poly " + std::to_string(i) + ": got " + std::to_string(w) + ", want " +
               std::to_string(-inside));
      ++checked;
    } catch (const std::exception& e) {
      c.fail(std::string("poly ") + std::to_string(i) + ": " + e.what());
    }
  }
  c.note(std::to_string(checked) + " polynomials, exact integer agreement");
  if (c.seconds() >= 5.0) c.fail("took " + fnum(c.seconds()) + " s");
  return c.report();
}

// 5. three evaluations of the joint torsion of a matrix tuple
static int criterion5() {
  Criterion c(5);
  const double tol = 1e-8;
  testgen::Rng rng(1005);
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    int n = 1 + static_cast<int>(rng() % 3);
    int dim = 3 + static_cast<int>(rng() % 6);  // dims <= 8
    std::vector<testgen::SpectrumBlock> blocks;
    std::vector<Matrix> A = testgen::commuting_tuple(rng, dim, n, &blocks);
    std::vector<std::vector<cd>> pts;
    for (const auto& b : blocks) pts.push_back(b.lambda);
    try {
      std::vector<MultiPolynomial> h;
      for (int j = 0; j + 1 < n; ++j)
        h.push_back(affine_through(rng, pts[static_cast<std::size_t>(
                                            rng() % pts.size())]));
      MultiPolynomial f = affine_avoiding(rng, n, pts);
      MultiPolynomial g = affine_avoiding(rng, n, pts);

      // cone evaluation
      std::vector<Matrix> hA;
      for (const auto& p : h) hA.push_back(eval_matrix(p, A));
      CochainComplex X;
      DegreeMap fmap, gmap;
      if (hA.empty()) {
        X = CochainComplex{0, {dim}, {}};
        fmap = DegreeMap{0, {eval_matrix(f, A)}};
        gmap = DegreeMap{0, {eval_matrix(g, A)}};
      } else {
        X = build_koszul(hA);
        fmap = koszul_module_action(hA, eval_matrix(f, A), X);
        gmap = koszul_module_action(hA, eval_matrix(g, A), X);
      }
      cd jt = joint_torsion(X, fmap, gmap, kPolicy, nullptr).value();

      // Lefschetz-quotient evaluation
      cd ns = joint_torsion_nonsingular(A, h, f, g, kPolicy, nullptr).value();

      // explicit spectral product: every factor carries the local Koszul
      // index as exponent, which vanishes identically in finite dimensions
      cd prod(1.0, 0.0);
      for (const auto& ev : joint_eigenvalues(A, kPolicy, nullptr)) {
        int ind = koszul_index_at(A, ev.lambda, kPolicy, nullptr);
        long long e = static_cast<long long>(ev.multiplicity) * ind;
        if (e == 0) continue;  // skipped exactly
        prod *= std::pow(eval(f, ev.lambda), static_cast<double>(e)) /
                std::pow(eval(g, ev.lambda), static_cast<double>(e));
      }

      double e1 = rel_err(jt, ns), e2 = rel_err(jt, prod);
      worst = std::max(worst, std::max(e1, e2));
      if (e1 > tol) c.fail("tuple " + std::to_string(i) + " cone vs quotient " + fnum(e1));
      if (e2 > tol) c.fail("tuple " + std::to_string(i) + " cone vs product " + fnum(e2));
    } catch (const std::exception& e) {
      c.fail(std::string("tuple ") + std::to_string(i) + ": " + e.what());
    }
  }
  c.note("30 tuples, worst rel gap " + fnum(worst));
  if (c.seconds() >= 60.0) c.fail("took " + fnum(c.seconds()) + " s");
  return c.report();
}

// 6. complement choice and volume rescaling leave the torsion unchanged
static int criterion6() {
  Criterion c(6);
  const double tol = 1e-9;
  testgen::Rng rng(1006);
  double worst = 0.0;

  // 25 cases: torsion of a cone six-term sequence under random complements
  for (int i = 0; i < 25; ++i) {
    int dim = 3 + static_cast<int>(rng() % 4);  // Koszul spaces dim, 2 dim <= 12
    std::vector<Matrix> A = testgen::commuting_tuple(rng, dim, 2);
    CochainComplex X = build_koszul(A);
    Matrix M = A[0] + testgen::crand(rng, 1.0) * A[1] +
               testgen::crand(rng, 1.0) * Matrix::Identity(dim, dim);
    DegreeMap f = koszul_module_action(A, M, X);
    CochainComplex C = cone(X, X, f);
    CohomologyData cohX = cohomology(X, kPolicy, nullptr, "acc6");
    CohomologyData cohC = cohomology(C, kPolicy, nullptr, "acc6");
    SixTermSequence S = six_term(X, X, f, C, cohX, cohX, cohC);
    LogComplex base = torsion_iso(S, kPolicy, nullptr);

    const Matrix* maps[6] = {&S.fp, &S.fm, &S.ip, &S.im_, &S.pp, &S.pm};
    ComplementChoice choice;
    for (int m = 0; m < 6; ++m) {
      Matrix ker = kernel_of(*maps[m], kPolicy, nullptr, "acc6");
      Matrix t = kernel_complement_of(*maps[m], kPolicy, nullptr, "acc6");
      if (t.cols() == 0) continue;
      // mix: invertible recombination plus a kernel-direction shear
      Matrix R = testgen::gaussian_matrix(rng, t.cols(), t.cols()) +
                 2.0 * Matrix::Identity(t.cols(), t.cols());
      Matrix G = ker.cols() > 0 ? testgen::gaussian_matrix(rng, ker.cols(), t.cols())
                                : Matrix(0, t.cols());
      choice.t[static_cast<std::size_t>(m)] = Matrix(t * R + 0.3 * ker * G);
    }
    LogComplex alt = torsion_iso(S, kPolicy, nullptr, &choice);
    double e = rel_gap(base, alt);
    worst = std::max(worst, e);
    if (e > tol) c.fail("complement case " + std::to_string(i) + " gap " + fnum(e));
  }

  // 25 cases: joint torsion under reference-volume rescaling
  for (int i = 0; i < 25; ++i) {
    int dim = 3 + static_cast<int>(rng() % 4);
    std::vector<Matrix> A = testgen::commuting_tuple(rng, dim, 2);
    CochainComplex X = build_koszul(A);
    Matrix Mf = A[0] + testgen::crand(rng, 1.0) * Matrix::Identity(dim, dim);
    Matrix Mg = A[1] * A[1] + testgen::crand(rng, 1.0) * A[0] +
                testgen::crand(rng, 1.0) * Matrix::Identity(dim, dim);
    DegreeMap f = koszul_module_action(A, Mf, X);
    DegreeMap g = koszul_module_action(A, Mg, X);
    LogComplex base = joint_torsion(X, f, g, kPolicy, nullptr);
    testgen::Rng vr(2000 + static_cast<unsigned>(i));
    VolumeTweak tweak = [&vr](ConeId, int, const Matrix& reps) -> Matrix {
      if (reps.cols() == 0) return reps;
      cd s = std::polar(testgen::urand(vr, 0.3, 3.0), testgen::urand(vr, 0.0, 6.28));
      return Matrix(s * reps);
    };
    LogComplex alt = joint_torsion(X, f, g, kPolicy, nullptr, &tweak);
    double e = rel_gap(base, alt);
    worst = std::max(worst, e);
    if (e > tol) c.fail("volume case " + std::to_string(i) + " gap " + fnum(e));
  }
  c.note("50 cases, worst rel gap " + fnum(worst));
  return c.report();
}

// 7. transition numbers compose and invert
static int criterion7() {
  Criterion c(7);
  const double tol = 1e-8;
  testgen::Rng rng(1007);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    int n = 2;
    int dim = 3 + static_cast<int>(rng() % 4);
    std::vector<testgen::SpectrumBlock> blocks;
    std::vector<Matrix> A = testgen::commuting_tuple(rng, dim, n, &blocks);
    std::vector<std::vector<cd>> pts;
    for (const auto& b : blocks) pts.push_back(b.lambda);
    try {
      std::vector<MultiPolynomial> g;
      for (int j = 0; j < 3; ++j) g.push_back(affine_avoiding(rng, n, pts));
      LogComplex t01 = transition_number(A, g, 0, 1, kPolicy, nullptr);
      LogComplex t10 = transition_number(A, g, 1, 0, kPolicy, nullptr);
      LogComplex t12 = transition_number(A, g, 1, 2, kPolicy, nullptr);
      LogComplex t02 = transition_number(A, g, 0, 2, kPolicy, nullptr);
      double e1 = std::abs((t01 * t10).value() - cd(1.0, 0.0));
      double e2 = rel_gap(t01 * t12, t02);
      worst = std::max(worst, std::max(e1, e2));
      if (e1 > tol) c.fail("tuple " + std::to_string(i) + " inverse law " + fnum(e1));
      if (e2 > tol) c.fail("tuple " + std::to_string(i) + " cocycle law " + fnum(e2));
    } catch (const std::exception& e) {
      c.fail(std::string("tuple ") + std::to_string(i) + ": " + e.what());
    }
  }
  c.note("20 tuples with m = 3, worst deviation " + fnum(worst));
  return c.report();
}

// 8. multiplicity engine: closed forms and perturbation counts
static int criterion8() {
  Criterion c(8);
  testgen::Rng rng(1008);
  try {
    int m = multiplicity({pow_mp(px(), 2), pow_mp(py(), 3)}, {cd(0), cd(0)}, kPolicy);
    if (m != 6) c.fail("m0(x^2, y^3) = " + std::to_string(m) + ", want 6");
    for (int k = 1; k <= 10; ++k) {
      int mk = multiplicity({pow_mp(ux(), k)}, {cd(0)}, kPolicy);
      if (mk != k) c.fail("m0(z^" + std::to_string(k) + ") = " + std::to_string(mk));
    }
  } catch (const std::exception& e) {
    c.fail(e.what());
  }

  // seeded plane systems: powers of two well-conditioned linear forms
  int done = 0;
  for (int i = 0; i < 10; ++i) {
    Matrix L;
    do {
      L = testgen::gaussian_matrix(rng, 2, 2);
    } while (condition_of(L) >= 5.0 ||
             L.jacobiSvd().singularValues().minCoeff() < 0.3);
    int p = 1 + static_cast<int>(rng() % 3), q = 1 + static_cast<int>(rng() % 3);
    if (p * q > 6) q = 6 / p;
    MultiPolynomial l1 = L(0, 0) * px() + L(0, 1) * py();
    MultiPolynomial l2 = L(1, 0) * px() + L(1, 1) * py();
    MultiPolynomial g1 = pow_mp(l1, p), g2 = pow_mp(l2, q);
    try {
      int m = multiplicity({g1, g2}, {cd(0), cd(0)}, kPolicy);
      if (m != p * q)
        c.fail("system " + std::to_string(i) + ": m = " + std::to_string(m) + ", want " +
               std::to_string(p * q));
      cd w1 = std::polar(testgen::urand(rng, 2e-4, 1e-3), testgen::urand(rng, 0.0, 6.28));
      cd w2 = std::polar(testgen::urand(rng, 2e-4, 1e-3), testgen::urand(rng, 0.0, 6.28));
      ZeroSet zs = solve_system({g1 - mp_const(2, w1), g2 - mp_const(2, w2)}, {cd(0), cd(0)},
                                0.55, kPolicy);
      int count = 0;
      bool simple = true;
      for (const auto& z : zs) {
        if (z.multiplicity != 1) simple = false;
        count += z.multiplicity;
      }
      if (!simple) c.fail("system " + std::to_string(i) + ": perturbed zero not simple");
      if (count != m)
        c.fail("system " + std::to_string(i) + ": " + std::to_string(count) +
               " perturbed zeros, want " + std::to_string(m));
      ++done;
    } catch (const std::exception& e) {
      c.fail(std::string("system ") + std::to_string(i) + ": " + e.what());
    }
  }
  c.note("closed forms plus " + std::to_string(done) + " perturbation counts, exact");
  return c.report();
}

// 9. symbol identities on seeded triples over h = y
static int criterion9() {
  Criterion c(9);
  const double tol = 1e-6;
  testgen::Rng rng(1009);
  double worst = 0.0;
  auto factor = [&rng]() {
    std::vector<cd> roots;
    if (rng() % 2 == 0) roots.push_back(cd(0.0, 0.0));
    int extra = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < extra; ++j)
      roots.push_back(std::polar(testgen::urand(rng, 0.6, 1.8),
                                 testgen::urand(rng, 0.0, 6.28)));
    cd lead = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.28));
    return testgen::lift_to_plane(testgen::poly_from_roots(roots, lead));
  };
  for (int i = 0; i < 10; ++i) {
    MultiPolynomial f1 = factor(), f2 = factor(), f3 = factor();
    cd alpha = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.28));
    MultiPolynomial t = alpha * px();
    try {
      AxiomsReport rep = symbol_axioms_check(py(), f1, f2, f3, t, {cd(0), cd(0)}, 0.3,
                                             tight_schedule(3000 + static_cast<unsigned>(i)),
                                             kPolicy);
      worst = std::max(worst, rep.max_deviation);
      if (rep.max_deviation > tol)
        c.fail("triple " + std::to_string(i) + " deviation " + fnum(rep.max_deviation));
    } catch (const std::exception& e) {
      c.fail(std::string("triple ") + std::to_string(i) + ": " + e.what());
    }
  }
  c.note("10 triples, worst deviation " + fnum(worst));
  return c.report();
}

// 10. continuity probe in the first argument
static int criterion10() {
  Criterion c(10);
  // The exact value is constant across the probe (the invariant is identically
  // 1 on finite-dimensional complexes), so the measured deviations sit at the
  // numerical noise floor; deviations at or below 1e-9 are accepted without
  // demanding further monotone decrease through pure roundoff.
  const double noise_floor = 1e-9;
  const double ts[4] = {1e-2, 1e-3, 1e-4, 1e-5};
  testgen::Rng rng(1010);
  double worstC = 0.0;
  for (int i = 0; i < 10; ++i) {
    int dim = 3 + static_cast<int>(rng() % 3);
    std::vector<Matrix> A = testgen::commuting_tuple(rng, dim, 2);
    CochainComplex X = build_koszul(A);
    Matrix I = Matrix::Identity(dim, dim);
    Matrix Mf = A[0] + testgen::crand(rng, 1.0) * I;
    Matrix Mg = A[1] * A[1] + testgen::crand(rng, 1.0) * A[0] + testgen::crand(rng, 1.0) * I;
    Matrix Me = A[0] * A[1] + testgen::crand(rng, 1.0) * I;  // commutes with both
    DegreeMap g = koszul_module_action(A, Mg, X);
    try {
      cd base = joint_torsion(X, koszul_module_action(A, Mf, X), g, kPolicy, nullptr).value();
      double prev = 0.0;
      double C = 0.0;
      for (int s = 0; s < 4; ++s) {
        Matrix Mft = Mf + ts[s] * Me;
        cd jt = joint_torsion(X, koszul_module_action(A, Mft, X), g, kPolicy, nullptr).value();
        double d = std::abs(jt - base);
        C = std::max(C, d / ts[s]);
        if (s > 0 && d > prev && d > noise_floor)
          c.fail("case " + std::to_string(i) + ": deviation rose to " + fnum(d) + " at t = " +
                 fnum(ts[s]));
        prev = d;
      }
      if (!std::isfinite(C)) c.fail("case " + std::to_string(i) + ": C not finite");
      worstC = std::max(worstC, C);
    } catch (const std::exception& e) {
      c.fail(std::string("case ") + std::to_string(i) + ": " + e.what());
    }
  }
  c.note("10 cases, fitted C <= " + fnum(worstC));
  return c.report();
}

int main() {
  int failures = 0;
  failures += criterion1();
  failures += criterion2();
  failures += criterion3();
  failures += criterion4();
  failures += criterion5();
  failures += criterion6();
  failures += criterion7();
  failures += criterion8();
  failures += criterion9();
  failures += criterion10();
  if (failures == 0)
    std::printf("acceptance: all 10 criteria passed\n");
  else
    std::printf("acceptance: %d criteria failed\n", failures);
  return failures;
}
