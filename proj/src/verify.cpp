#include "torsion_lab/verify.hpp"

#include "torsion_lab/complexes.hpp"
#include "torsion_lab/koszul.hpp"
#include "torsion_lab/local_algebra.hpp"
#include "torsion_lab/polynomial.hpp"
#include "torsion_lab/tame_symbol.hpp"
#include "torsion_lab/testgen.hpp"
#include "torsion_lab/torsion.hpp"
#include "torsion_lab/types.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

namespace torsion_lab {

int VerifyReport::passed() const {
  int n = 0;
  for (const auto& t : tests)
    if (t.ok) ++n;
  return n;
}

int VerifyReport::failed() const {
  int n = 0;
  for (const auto& t : tests)
    if (!t.ok) ++n;
  return n;
}

namespace {

using testgen::Rng;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

void run_case(VerifyReport& rep, const std::string& name,
              const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    rep.tests.push_back({name, ok, detail});
  } catch (const std::exception& e) {
    rep.tests.push_back({name, false, std::string("exception: ") + e.what()});
  }
}

std::pair<bool, std::string> near(cd got, cd want, double tol) {
  double dev = std::abs(got - want) / std::max(1.0, std::abs(want));
  return {dev <= tol, "dev=" + fmt(dev)};
}

MultiPolynomial ux() { return mp_var(1, 0); }
MultiPolynomial px() { return mp_var(2, 0); }
MultiPolynomial py() { return mp_var(2, 1); }

DegreeMap identity_map(const CochainComplex& X) {
  DegreeMap f;
  f.min_degree = X.min_degree;
  for (int i = 0; i < X.degree_count(); ++i)
    f.comp.push_back(Matrix::Identity(X.dims[static_cast<std::size_t>(i)],
                                      X.dims[static_cast<std::size_t>(i)]));
  return f;
}

// ---- signs: frozen scalar values of every module ----

void suite_signs(VerifyReport& rep) {
  RankPolicy policy;

  run_case(rep, "signs/koszul-trivial-tuple", [&] {
    std::vector<Matrix> A = {Matrix::Zero(1, 1), Matrix::Zero(1, 1)};
    CochainComplex K = build_koszul(A);
    CohomologyData coh = cohomology(K, policy, nullptr, "verify");
    bool ok = coh.h_at(-2) == 1 && coh.h_at(-1) == 2 && coh.h_at(0) == 1 && coh.index() == 0;
    return std::pair<bool, std::string>{ok, "dims " + std::to_string(coh.h_at(-2)) + "," +
                                                std::to_string(coh.h_at(-1)) + "," +
                                                std::to_string(coh.h_at(0))};
  });

  run_case(rep, "signs/koszul-acyclic-tuple", [&] {
    Matrix A1 = Matrix::Zero(2, 2), A2 = Matrix::Zero(2, 2);
    A1(0, 0) = 1.0;
    A2(1, 1) = 3.0;
    CochainComplex K = build_koszul({A1, A2});
    CohomologyData coh = cohomology(K, policy, nullptr, "verify");
    return std::pair<bool, std::string>{coh.acyclic(), "h+=" + std::to_string(coh.h_plus()) +
                                                           " h-=" + std::to_string(coh.h_minus())};
  });

  run_case(rep, "signs/torsion-scalar-map", [&] {
    CochainComplex X{0, {1}, {}};
    DegreeMap f{0, {cd(2.0, 0.0) * Matrix::Identity(1, 1)}};
    return near(torsion_of_map(X, X, f, policy, nullptr).value(), cd(0.5, 0.0), 1e-12);
  });

  run_case(rep, "signs/torsion-identity-map", [&] {
    Rng rng(7);
    std::vector<Matrix> A = testgen::commuting_tuple(rng, 3, 2);
    CochainComplex X = build_koszul(A);
    return near(torsion_of_map(X, X, identity_map(X), policy, nullptr).value(), cd(1.0, 0.0),
                1e-10);
  });

  run_case(rep, "signs/torsion-zero-endomorphism", [&] {
    CochainComplex X{0, {1}, {}};
    DegreeMap f{0, {Matrix::Zero(1, 1)}};
    return near(torsion_of_map(X, X, f, policy, nullptr).value(), cd(-1.0, 0.0), 1e-12);
  });

  run_case(rep, "signs/regular-symbol-self", [&] {
    return near(tame_symbol_regular(ux(), ux(), cd(0.0, 0.0)), cd(-1.0, 0.0), 1e-12);
  });

  run_case(rep, "signs/regular-symbol-powers", [&] {
    MultiPolynomial f = ux() * ux();
    MultiPolynomial g = ux() * ux() * ux();
    return near(tame_symbol_regular(f, g, cd(0.0, 0.0)), cd(1.0, 0.0), 1e-12);
  });

  run_case(rep, "signs/local-symbol-self", [&] {
    SymbolProblem P{py(), px(), px(), {cd(0.0, 0.0), cd(0.0, 0.0)}, 0.5};
    return near(tame_symbol_local(P, make_limit_schedule(42), policy), cd(-1.0, 0.0), 1e-7);
  });

  run_case(rep, "signs/local-symbol-cusp", [&] {
    MultiPolynomial h = py() * py() - px() * px() * px();
    SymbolProblem P{h, px(), py(), {cd(0.0, 0.0), cd(0.0, 0.0)}, 0.5};
    return near(tame_symbol_local(P, make_limit_schedule(42), policy), cd(1.0, 0.0), 1e-7);
  });

  run_case(rep, "signs/local-symbol-unit", [&] {
    SymbolProblem P{py(), mp_const(2, 1.0) + px(), px(), {cd(0.0, 0.0), cd(0.0, 0.0)}, 0.5};
    return near(tame_symbol_local(P, make_limit_schedule(42), policy), cd(1.0, 0.0), 1e-6);
  });

  run_case(rep, "signs/disc-product-self", [&] {
    return near(carey_pincus({ux(), ux()}), cd(-1.0, 0.0), 1e-10);
  });

  run_case(rep, "signs/disc-product-shifted", [&] {
    DiscModelProblem P{ux(), ux() - mp_const(1, 0.5)};
    return near(carey_pincus(P), cd(-1.0, 0.0), 1e-10);
  });

  run_case(rep, "signs/disc-product-outside", [&] {
    DiscModelProblem P{ux() - mp_const(1, 2.0), ux() - mp_const(1, 3.0)};
    return near(carey_pincus(P), cd(1.0, 0.0), 1e-10);
  });

  run_case(rep, "signs/disc-global-shifted", [&] {
    DiscModelProblem P{ux(), ux() - mp_const(1, 0.5)};
    return near(joint_torsion_global(P), cd(-1.0, 0.0), 1e-10);
  });

  run_case(rep, "signs/winding-cubic", [&] {
    MultiPolynomial f = ux() * ux() * ux();
    int w = noether_index(f);
    return std::pair<bool, std::string>{w == -3, "got " + std::to_string(w)};
  });

  run_case(rep, "signs/winding-outside", [&] {
    int w = noether_index(ux() - mp_const(1, 2.0));
    return std::pair<bool, std::string>{w == 0, "got " + std::to_string(w)};
  });

  run_case(rep, "signs/winding-additive", [&] {
    MultiPolynomial f = ux() - mp_const(1, 0.3);
    MultiPolynomial g = (ux() - mp_const(1, 0.2)) * (ux() - mp_const(1, cd(1.7, 0.0)));
    int wf = noether_index(f), wg = noether_index(g), wfg = noether_index(f * g);
    return std::pair<bool, std::string>{wfg == wf + wg, std::to_string(wf) + "+" +
                                                            std::to_string(wg) + " vs " +
                                                            std::to_string(wfg)};
  });

  run_case(rep, "signs/multiplicity-simple", [&] {
    int m = multiplicity({px(), py()}, {cd(0.0, 0.0), cd(0.0, 0.0)}, policy);
    return std::pair<bool, std::string>{m == 1, "got " + std::to_string(m)};
  });

  run_case(rep, "signs/multiplicity-monomial", [&] {
    int m = multiplicity({px() * px(), py() * py() * py()}, {cd(0.0, 0.0), cd(0.0, 0.0)}, policy);
    return std::pair<bool, std::string>{m == 6, "got " + std::to_string(m)};
  });

  run_case(rep, "signs/multiplicity-univariate", [&] {
    MultiPolynomial z4 = ux() * ux() * ux() * ux();
    int m = multiplicity({z4}, {cd(0.0, 0.0)}, policy);
    return std::pair<bool, std::string>{m == 4, "got " + std::to_string(m)};
  });

  run_case(rep, "signs/solve-univariate", [&] {
    MultiPolynomial p =
        (ux() - mp_const(1, 1.0)) * (ux() - mp_const(1, 2.0)) * (ux() - mp_const(1, 2.0));
    ZeroSet zs = solve_system({p}, {cd(0.0, 0.0)}, 3.0, policy);
    bool ok = zs.size() == 2 && zs[0].multiplicity == 1 && zs[1].multiplicity == 2 &&
              std::abs(zs[0].point[0] - cd(1.0, 0.0)) < 1e-8 &&
              std::abs(zs[1].point[0] - cd(2.0, 0.0)) < 1e-7;
    return std::pair<bool, std::string>{ok, std::to_string(zs.size()) + " clusters"};
  });

  run_case(rep, "signs/solve-bivariate", [&] {
    ZeroSet zs = solve_system({py() - px() * px(), py()}, {cd(0.0, 0.0), cd(0.0, 0.0)}, 0.5,
                              policy);
    bool ok = zs.size() == 1 && zs[0].multiplicity == 2 && std::abs(zs[0].point[0]) < 1e-8 &&
              std::abs(zs[0].point[1]) < 1e-8;
    return std::pair<bool, std::string>{ok, std::to_string(zs.size()) + " clusters"};
  });
}

// ---- axioms: the defining identities at seeded triples ----

MultiPolynomial random_axiom_factor(Rng& rng, bool allow_root_at_origin) {
  std::vector<cd> roots;
  if (allow_root_at_origin && testgen::urand(rng, 0.0, 1.0) < 0.5) roots.push_back(cd(0.0, 0.0));
  int extra = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < extra; ++i)
    roots.push_back(std::polar(testgen::urand(rng, 0.6, 1.8),
                               testgen::urand(rng, 0.0, 6.283185307179586)));
  cd lead = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.283185307179586));
  return testgen::lift_to_plane(testgen::poly_from_roots(roots, lead));
}

void one_axiom_case(VerifyReport& rep, const std::string& name, const MultiPolynomial& f1,
                    const MultiPolynomial& f2, const MultiPolynomial& f3, const MultiPolynomial& t,
                    unsigned seed) {
  run_case(rep, name, [&] {
    RankPolicy policy;
    LimitSchedule S = make_limit_schedule(seed);
    S.stab_tol = 1e-9;
    AxiomsReport r = symbol_axioms_check(py(), f1, f2, f3, t, {cd(0.0, 0.0), cd(0.0, 0.0)}, 0.3,
                                         S, policy);
    return std::pair<bool, std::string>{r.max_deviation <= 1e-6, "dev=" + fmt(r.max_deviation)};
  });
}

void suite_axioms(VerifyReport& rep, unsigned seed) {
  one_axiom_case(rep, "axioms/fixed-mixed", px() - mp_const(2, 2.0), px(),
                 mp_const(2, 1.0) + px(), px(), seed);
  one_axiom_case(rep, "axioms/fixed-units",
                 px() - mp_const(2, cd(0.0, 1.5)), mp_const(2, 2.0) + px(),
                 px() - mp_const(2, 0.7), cd(1.3, 0.4) * px(), seed + 1);

  Rng rng(seed);
  for (int i = 0; i < 4; ++i) {
    MultiPolynomial f1 = random_axiom_factor(rng, true);
    MultiPolynomial f2 = random_axiom_factor(rng, true);
    MultiPolynomial f3 = random_axiom_factor(rng, i % 2 == 0);
    cd alpha = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.283185307179586));
    MultiPolynomial t = alpha * px();
    one_axiom_case(rep, "axioms/seeded-" + std::to_string(i), f1, f2, f3, t,
                   seed + 10 + static_cast<unsigned>(i));
  }
}

// ---- agreement: independent computations of the same value ----

struct TupleCase {
  std::vector<Matrix> A;
  std::vector<MultiPolynomial> h;
  MultiPolynomial f, g;
};

MultiPolynomial affine_through(Rng& rng, int nvars, const std::vector<cd>& point) {
  MultiPolynomial p = mp_zero(nvars);
  for (int v = 0; v < nvars; ++v) {
    cd a = std::polar(testgen::urand(rng, 0.5, 1.5), testgen::urand(rng, 0.0, 6.283185307179586));
    p = p + a * (mp_var(nvars, v) - mp_const(nvars, point[static_cast<std::size_t>(v)]));
  }
  return p;
}

MultiPolynomial affine_avoiding(Rng& rng, int nvars, const std::vector<testgen::SpectrumBlock>& blocks) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    MultiPolynomial p = mp_const(nvars, testgen::crand(rng, 2.0));
    for (int v = 0; v < nvars; ++v) p = p + testgen::crand(rng, 1.0) * mp_var(nvars, v);
    bool ok = true;
    for (const auto& b : blocks)
      if (std::abs(eval(p, b.lambda)) < 5e-2) ok = false;
    if (ok) return p;
  }
  throw NumericalError("verify: could not place an avoiding affine function");
}

TupleCase make_tuple_case(Rng& rng, int dim, int n) {
  TupleCase tc;
  std::vector<testgen::SpectrumBlock> blocks;
  tc.A = testgen::commuting_tuple(rng, dim, n, &blocks);
  std::size_t hit = rng() % blocks.size();
  for (int j = 0; j + 1 < n; ++j)
    tc.h.push_back(affine_through(rng, n, blocks[hit].lambda));
  tc.f = affine_avoiding(rng, n, blocks);
  tc.g = affine_avoiding(rng, n, blocks);
  return tc;
}

CochainComplex base_complex(const TupleCase& tc, std::vector<Matrix>* hA_out) {
  std::vector<Matrix> hA;
  for (const auto& p : tc.h) hA.push_back(eval_matrix(p, tc.A));
  if (hA.empty()) {
    // empty base tuple: the module itself in degree 0
    CochainComplex X{0, {static_cast<int>(tc.A[0].rows())}, {}};
    if (hA_out) *hA_out = hA;
    return X;
  }
  CochainComplex X = build_koszul(hA);
  if (hA_out) *hA_out = hA;
  return X;
}

void suite_agreement(VerifyReport& rep, unsigned seed) {
  RankPolicy policy;
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);

  const int dims[4] = {4, 5, 6, 8};
  const int ns[4] = {2, 2, 3, 3};
  for (int i = 0; i < 4; ++i) {
    run_case(rep, "agreement/tuple-three-ways-" + std::to_string(i), [&] {
      TupleCase tc = make_tuple_case(rng, dims[i], ns[i]);
      std::vector<Matrix> hA;
      CochainComplex X = base_complex(tc, &hA);
      DegreeMap fmap, gmap;
      if (hA.empty()) {
        fmap = DegreeMap{0, {eval_matrix(tc.f, tc.A)}};
        gmap = DegreeMap{0, {eval_matrix(tc.g, tc.A)}};
      } else {
        fmap = koszul_module_action(hA, eval_matrix(tc.f, tc.A), X);
        gmap = koszul_module_action(hA, eval_matrix(tc.g, tc.A), X);
      }
      cd jt = joint_torsion(X, fmap, gmap, policy, nullptr).value();
      cd ns_val = joint_torsion_nonsingular(tc.A, tc.h, tc.f, tc.g, policy, nullptr).value();
      cd glob = joint_torsion_global(tc.A, tc.h, tc.f, tc.g, policy);
      double d1 = std::abs(jt - ns_val), d2 = std::abs(jt - glob), d3 = std::abs(jt - cd(1.0, 0.0));
      bool ok = d1 <= 1e-8 && d2 <= 1e-8 && d3 <= 1e-8;
      return std::pair<bool, std::string>{ok, "cone-vs-lefschetz=" + fmt(d1) +
                                                  " cone-vs-product=" + fmt(d2) +
                                                  " vs-one=" + fmt(d3)};
    });
  }

  for (int i = 0; i < 4; ++i) {
    run_case(rep, "agreement/disc-product-" + std::to_string(i), [&] {
      int nf = 2 + static_cast<int>(rng() % 3);
      int ng = 2 + static_cast<int>(rng() % 3);
      std::vector<cd> rf = testgen::roots_in_bands(rng, nf, 0.05, 0.88, 1.12, 1.8, 5e-2);
      std::vector<cd> rg = testgen::roots_in_bands(rng, ng, 0.05, 0.88, 1.12, 1.8, 5e-2);
      cd lf = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.28));
      cd lg = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.28));
      DiscModelProblem P{testgen::poly_from_roots(rf, lf), testgen::poly_from_roots(rg, lg)};
      cd a = carey_pincus(P);
      cd b = joint_torsion_global(P);
      return near(a, b, 1e-6);
    });
  }

  for (int i = 0; i < 3; ++i) {
    run_case(rep, "agreement/local-vs-regular-" + std::to_string(i), [&] {
      std::vector<cd> rf, rg;
      if (i != 1) rf.push_back(cd(0.0, 0.0));
      if (i != 0) rg.push_back(cd(0.0, 0.0));
      int nf = 1 + static_cast<int>(rng() % 2);
      for (cd r : testgen::roots_in_bands(rng, nf, 0.6, 1.8, 0.0, -1.0, 5e-2)) rf.push_back(r);
      for (cd r : testgen::roots_in_bands(rng, 1, 0.6, 1.8, 0.0, -1.0, 5e-2)) rg.push_back(r);
      MultiPolynomial fu = testgen::poly_from_roots(rf, std::polar(testgen::urand(rng, 0.5, 2.0),
                                                                   testgen::urand(rng, 0.0, 6.28)));
      MultiPolynomial gu = testgen::poly_from_roots(rg, std::polar(testgen::urand(rng, 0.5, 2.0),
                                                                   testgen::urand(rng, 0.0, 6.28)));
      SymbolProblem P{py(), testgen::lift_to_plane(fu), testgen::lift_to_plane(gu),
                      {cd(0.0, 0.0), cd(0.0, 0.0)}, 0.3};
      LimitSchedule S = make_limit_schedule(seed + static_cast<unsigned>(i));
      S.stab_tol = 1e-9;
      cd loc = tame_symbol_local(P, S, policy);
      cd reg = tame_symbol_regular(fu, gu, cd(0.0, 0.0));
      return near(loc, reg, 1e-6);
    });
  }

  run_case(rep, "agreement/eps-independence", [&] {
    MultiPolynomial f = px() * (px() - mp_const(2, cd(1.2, 0.0)));
    MultiPolynomial g = cd(2.0, 0.0) * (px() - mp_const(2, cd(0.8, 0.0)));
    LimitSchedule S = make_limit_schedule(seed);
    S.stab_tol = 1e-9;
    SymbolProblem P1{py(), f, g, {cd(0.0, 0.0), cd(0.0, 0.0)}, 0.5};
    SymbolProblem P2 = P1;
    P2.eps = 0.25;
    return near(tame_symbol_local(P1, S, policy), tame_symbol_local(P2, S, policy), 1e-6);
  });

  run_case(rep, "agreement/theta-independence", [&] {
    MultiPolynomial f = px() * (px() - mp_const(2, cd(1.2, 0.0)));
    MultiPolynomial g = cd(2.0, 0.0) * (px() - mp_const(2, cd(0.8, 0.0)));
    SymbolProblem P{py(), f, g, {cd(0.0, 0.0), cd(0.0, 0.0)}, 0.5};
    LimitSchedule S1 = make_limit_schedule(seed);
    S1.theta = 0.3;
    S1.stab_tol = 1e-9;
    LimitSchedule S2 = S1;
    S2.theta = 2.1;
    return near(tame_symbol_local(P, S1, policy), tame_symbol_local(P, S2, policy), 1e-6);
  });

  run_case(rep, "agreement/complement-invariance", [&] {
    std::vector<Matrix> A = testgen::commuting_tuple(rng, 3, 2);
    CochainComplex X = build_koszul(A);
    Matrix M = A[0] * A[0] + cd(0.3, 0.1) * A[1] + Matrix::Identity(3, 3);
    DegreeMap fmap = koszul_module_action(A, M, X);
    CochainComplex C = cone(X, X, fmap);
    CohomologyData cohX = cohomology(X, policy, nullptr, "verify");
    CohomologyData cohC = cohomology(C, policy, nullptr, "verify");
    SixTermSequence S = six_term(X, X, fmap, C, cohX, cohX, cohC);
    LogComplex t0 = torsion_iso(S, policy, nullptr);
    const Matrix* maps[6] = {&S.fp, &S.fm, &S.ip, &S.im_, &S.pp, &S.pm};
    ComplementChoice cc;
    for (int m = 0; m < 6; ++m) {
      Matrix ker = kernel_of(*maps[m], policy, nullptr, "verify");
      Matrix base = kernel_complement_of(*maps[m], policy, nullptr, "verify");
      if (base.cols() == 0) continue;
      Matrix R = testgen::gaussian_matrix(rng, static_cast<int>(base.cols()),
                                          static_cast<int>(base.cols()));
      R += cd(2.0, 0.0) * Matrix::Identity(base.cols(), base.cols());
      Matrix t = base * R;
      if (ker.cols() > 0)
        t += cd(0.3, 0.0) * ker *
             testgen::gaussian_matrix(rng, static_cast<int>(ker.cols()),
                                      static_cast<int>(base.cols()));
      cc.t[static_cast<std::size_t>(m)] = t;
    }
    LogComplex t1 = torsion_iso(S, policy, nullptr, &cc);
    double dev = rel_gap(t0, t1);
    return std::pair<bool, std::string>{dev <= 1e-9, "dev=" + fmt(dev)};
  });

  run_case(rep, "agreement/volume-invariance", [&] {
    std::vector<Matrix> A = testgen::commuting_tuple(rng, 4, 2);
    CochainComplex X = build_koszul(A);
    Matrix Mf = A[0] + cd(0.2, 0.4) * A[1] * A[1] + cd(1.0, 0.3) * Matrix::Identity(4, 4);
    Matrix Mg = A[1] + cd(0.5, -0.1) * A[0] + cd(0.7, 0.0) * Matrix::Identity(4, 4);
    DegreeMap fmap = koszul_module_action(A, Mf, X);
    DegreeMap gmap = koszul_module_action(A, Mg, X);
    LogComplex j0 = joint_torsion(X, fmap, gmap, policy, nullptr);
    Rng local(seed + 99);
    VolumeTweak tweak = [&local](ConeId, int, const Matrix& reps) -> Matrix {
      if (reps.cols() == 0) return reps;
      cd s = std::polar(testgen::urand(local, 0.5, 2.0), testgen::urand(local, 0.0, 6.28));
      return Matrix(s * reps);
    };
    LogComplex j1 = joint_torsion(X, fmap, gmap, policy, nullptr, &tweak);
    double dev = rel_gap(j0, j1);
    return std::pair<bool, std::string>{dev <= 1e-10, "dev=" + fmt(dev)};
  });
}

}  // namespace

VerifyReport run_verify_suite(const std::string& suite, unsigned seed) {
  VerifyReport rep;
  rep.suite = suite;
  if (suite == "signs")
    suite_signs(rep);
  else if (suite == "axioms")
    suite_axioms(rep, seed);
  else if (suite == "agreement")
    suite_agreement(rep, seed);
  else if (suite == "all") {
    suite_signs(rep);
    suite_axioms(rep, seed);
    suite_agreement(rep, seed);
  } else {
    throw ValidationError("unknown verify suite \"" + suite +
                          "\" (expected signs, axioms, agreement, or all)");
  }
  return rep;
}

}  // namespace torsion_lab
