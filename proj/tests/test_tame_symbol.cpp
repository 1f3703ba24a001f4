#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torsion_lab/polynomial.hpp"
#include "torsion_lab/tame_symbol.hpp"
#include "torsion_lab/testgen.hpp"

#include <cmath>

using namespace torsion_lab;

namespace {

const RankPolicy kPolicy;

MultiPolynomial ux() { return mp_var(1, 0); }
MultiPolynomial px() { return mp_var(2, 0); }
MultiPolynomial py() { return mp_var(2, 1); }

LimitSchedule tight_schedule() {
  LimitSchedule S = make_limit_schedule(42);
  S.stab_tol = 1e-9;
  return S;
}

}  // namespace

TEST_CASE("regular symbol closed form") {
  // c(f, f) at a simple zero is -1
  CHECK(std::abs(tame_symbol_regular(ux(), ux(), cd(0)) - cd(-1.0, 0.0)) < 1e-12);
  // orders 2 and 3: sign (-1)^6 = +1, unit parts 1
  MultiPolynomial x2 = ux() * ux();
  MultiPolynomial x3 = x2 * ux();
  CHECK(std::abs(tame_symbol_regular(x2, x3, cd(0)) - cd(1.0, 0.0)) < 1e-12);
  // both nonvanishing: plain ratio f(x0)^0 / g(x0)^0 = 1
  MultiPolynomial u = ux() - mp_const(1, 3.0);
  CHECK(std::abs(tame_symbol_regular(u, u, cd(0)) - cd(1.0, 0.0)) < 1e-12);
  // f = z(z - 2), g = z at 0: (-1)^1 * phi(0)^1 / 1 = -(-2) = 2
  MultiPolynomial f = ux() * (ux() - mp_const(1, 2.0));
  CHECK(std::abs(tame_symbol_regular(f, ux(), cd(0)) - cd(2.0, 0.0)) < 1e-12);
  // antisymmetry of the closed form at the same point
  cd a = tame_symbol_regular(f, ux() - mp_const(1, 0.5), cd(0.5));
  cd b = tame_symbol_regular(ux() - mp_const(1, 0.5), f, cd(0.5));
  CHECK(std::abs(a * b - cd(1.0, 0.0)) < 1e-12);
}

TEST_CASE("local symbol on the line h = y") {
  LimitSchedule S = tight_schedule();
  // self symbol at a simple zero
  SymbolProblem P{py(), px(), px(), {cd(0), cd(0)}, 0.5};
  cd v = tame_symbol_local(P, S, kPolicy);
  CHECK(std::abs(v - cd(-1.0, 0.0)) < 1e-7);

  // unit pair: q is identically 1, stabilizes immediately
  SymbolProblem PU{py(), px() + mp_const(2, 1.0), px() + mp_const(2, 1.0), {cd(0), cd(0)}, 0.5};
  CHECK(std::abs(tame_symbol_local(PU, S, kPolicy) - cd(1.0, 0.0)) < 1e-6);

  // f a unit, g vanishing
  SymbolProblem PM{py(), px() + mp_const(2, 1.0), px(), {cd(0), cd(0)}, 0.5};
  cd w = tame_symbol_local(PM, S, kPolicy);
  CHECK(std::abs(w - cd(1.0, 0.0)) < 1e-6);

  // agreement with the regular closed form for a degree-2 pair
  MultiPolynomial f2 = px() * (px() - mp_const(2, cd(1.5, 0.3)));
  MultiPolynomial g2 = mp_const(2, 2.0) * (px() - mp_const(2, cd(0.9, -0.4)));
  SymbolProblem PA{py(), f2, g2, {cd(0), cd(0)}, 0.3};
  cd got = tame_symbol_local(PA, S, kPolicy);
  MultiPolynomial f1 = ux() * (ux() - mp_const(1, cd(1.5, 0.3)));
  MultiPolynomial g1 = mp_const(1, 2.0) * (ux() - mp_const(1, cd(0.9, -0.4)));
  cd want = tame_symbol_regular(f1, g1, cd(0));
  CHECK(std::abs(got - want) < 1e-6 * std::abs(want));
}

TEST_CASE("local symbol on the cusp") {
  // f = x and g = y on y^2 = x^3: every q(w_k) is exactly 1
  MultiPolynomial cusp = py() * py() - px() * px() * px();
  SymbolProblem P{cusp, px(), py(), {cd(0), cd(0)}, 0.5};
  LimitSchedule S = make_limit_schedule(42);
  SymbolTrace tr;
  cd v = tame_symbol_local(P, S, kPolicy, nullptr, &tr);
  CHECK(std::abs(v - cd(1.0, 0.0)) < 1e-6);
  REQUIRE(tr.q.size() >= 3);
  for (cd q : tr.q) CHECK(std::abs(q - cd(1.0, 0.0)) < 1e-6);
}

TEST_CASE("local symbol is independent of eps and direction") {
  MultiPolynomial f = px() * (px() - mp_const(2, 1.2));
  MultiPolynomial g = mp_const(2, 2.0) * (px() - mp_const(2, 0.8));
  LimitSchedule S = tight_schedule();
  SymbolProblem P1{py(), f, g, {cd(0), cd(0)}, 0.5};
  SymbolProblem P2{py(), f, g, {cd(0), cd(0)}, 0.25};
  cd v1 = tame_symbol_local(P1, S, kPolicy);
  cd v2 = tame_symbol_local(P2, S, kPolicy);
  CHECK(std::abs(v1 - v2) < 1e-6);

  LimitSchedule Sb = S;
  Sb.theta = 2.1;
  cd v3 = tame_symbol_local(P1, Sb, kPolicy);
  CHECK(std::abs(v1 - v3) < 1e-6);
}

TEST_CASE("local symbol admissibility") {
  // point not on the curve
  SymbolProblem off{py(), px(), px(), {cd(0), cd(1.0)}, 0.5};
  CHECK_THROWS_AS(tame_symbol_local(off, make_limit_schedule(1), kPolicy), ValidationError);

  // a foreign zero of Z(h, f) inside the ball: f also vanishes at x = 0.2
  MultiPolynomial f = px() * (px() - mp_const(2, 0.2));
  SymbolProblem crowded{py(), f, px() + mp_const(2, 1.0), {cd(0), cd(0)}, 0.5};
  try {
    tame_symbol_local(crowded, make_limit_schedule(1), kPolicy);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("shrink eps") != std::string::npos);
  }
}

TEST_CASE("local symbol reports non-stabilization with its tail") {
  SymbolProblem P{py(), px() * (px() - mp_const(2, 1.2)), px() - mp_const(2, 0.8),
                  {cd(0), cd(0)}, 0.5};
  LimitSchedule S;
  S.theta = 0.7;
  S.max_steps = 3;
  S.stab_tol = 1e-14;
  try {
    tame_symbol_local(P, S, kPolicy);
    FAIL("expected StabilizationError");
  } catch (const StabilizationError& e) {
    CHECK(e.tail.size() >= 1);
    CHECK(e.tail.size() <= 8);
  }
}

TEST_CASE("disc model factors") {
  MultiPolynomial z = ux();
  DiscModelProblem self{z, z};
  CHECK(std::abs(carey_pincus(self) - cd(-1.0, 0.0)) < 1e-10);
  CHECK(std::abs(joint_torsion_global(self) - cd(-1.0, 0.0)) < 1e-10);

  // shifted simple zeros inside the disc
  DiscModelProblem pair{z * (z - mp_const(1, 0.5)), z - mp_const(1, 0.5)};
  cd c1 = carey_pincus(pair);
  cd g1 = joint_torsion_global(pair);
  CHECK(std::abs(c1 - g1) < 1e-9 * std::abs(g1));

  // all zeros outside: empty product
  DiscModelProblem out{z - mp_const(1, 2.0), z - mp_const(1, 3.0)};
  CHECK(std::abs(carey_pincus(out) - cd(1.0, 0.0)) < 1e-12);

  // zero on the circle is rejected
  DiscModelProblem bad{z - mp_const(1, 1.0), z - mp_const(1, 3.0)};
  CHECK_THROWS_AS(carey_pincus(bad), ValidationError);
}

TEST_CASE("carey_pincus agrees with the symbol product on seeded pairs") {
  for (unsigned seed : {3u, 11u, 25u}) {
    testgen::Rng rng(seed);
    auto rf = testgen::roots_in_bands(rng, 2 + static_cast<int>(seed % 2), 0.1, 0.85, 1.15,
                                      1.8, 5e-2);
    auto rg = testgen::roots_in_bands(rng, 2, 0.1, 0.85, 1.15, 1.8, 5e-2);
    cd lf = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.28));
    cd lg = std::polar(testgen::urand(rng, 0.5, 2.0), testgen::urand(rng, 0.0, 6.28));
    DiscModelProblem P{testgen::poly_from_roots(rf, lf), testgen::poly_from_roots(rg, lg)};
    cd a = carey_pincus(P);
    cd b = joint_torsion_global(P);
    CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
  }
}

TEST_CASE("noether index") {
  MultiPolynomial z = ux();
  MultiPolynomial z3 = z * z * z;
  CHECK(noether_index(z3) == -3);
  CHECK(noether_index(z - mp_const(1, 2.0)) == 0);
  // additivity under products
  MultiPolynomial p = z * (z - mp_const(1, 0.5));
  MultiPolynomial q = z - mp_const(1, cd(0.2, 0.3));
  CHECK(noether_index(p * q) == noether_index(p) + noether_index(q));
  // root hugging the circle defeats the quadrature
  CHECK_THROWS_AS(noether_index(z - mp_const(1, 1.0 + 1e-7)), NumericalError);
}

TEST_CASE("global product over a matrix tuple") {
  // A = diag(1, 0) with empty h: factors carry exponent Ind = 0, product 1
  Matrix A0 = Matrix::Zero(2, 2);
  A0(0, 0) = 1.0;
  MultiPolynomial fz = mp_var(1, 0);
  MultiPolynomial gz = mp_var(1, 0) - mp_const(1, 2.0);
  cd v = joint_torsion_global({A0}, {}, fz, gz, kPolicy);
  CHECK(std::abs(v - cd(1.0, 0.0)) < 1e-10);
}

TEST_CASE("symbol axioms on a fixed triple") {
  MultiPolynomial f1 = px() - mp_const(2, 2.0);
  MultiPolynomial f2 = px();
  MultiPolynomial f3 = px() + mp_const(2, 1.0);
  MultiPolynomial t = cd(0.8, 0.1) * px();
  AxiomsReport rep = symbol_axioms_check(py(), f1, f2, f3, t, {cd(0), cd(0)}, 0.3,
                                         tight_schedule(), kPolicy);
  CHECK(rep.max_deviation <= 1e-6);
  CHECK(std::abs(rep.antisymmetry - cd(1.0, 0.0)) <= 1e-6);
  CHECK(std::abs(rep.multiplicativity - cd(1.0, 0.0)) <= 1e-6);
  CHECK(std::abs(rep.steinberg - cd(1.0, 0.0)) <= 1e-6);
}
