#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "torsion_lab/local_algebra.hpp"
#include "torsion_lab/polynomial.hpp"
#include "torsion_lab/testgen.hpp"

#include <algorithm>
#include <cmath>

using namespace torsion_lab;

namespace {

const RankPolicy kPolicy;

MultiPolynomial X2() { return mp_var(2, 0); }
MultiPolynomial Y2() { return mp_var(2, 1); }

MultiPolynomial pow_mp(const MultiPolynomial& p, int k) {
  MultiPolynomial r = mp_const(p.nvars, 1.0);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

const ZeroPoint* find_zero(const ZeroSet& zs, const std::vector<cd>& pt, double tol) {
  for (const auto& z : zs) {
    double d = 0.0;
    for (std::size_t i = 0; i < pt.size(); ++i) d = std::max(d, std::abs(z.point[i] - pt[i]));
    if (d < tol) return &z;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("multiplicity of transverse and degenerate plane zeros") {
  // simple transverse crossing
  CHECK(multiplicity({X2(), Y2()}, {cd(0), cd(0)}, kPolicy) == 1);
  // intersection number of coordinate powers is the product of exponents
  CHECK(multiplicity({pow_mp(X2(), 2), pow_mp(Y2(), 3)}, {cd(0), cd(0)}, kPolicy) == 6);
  // cusp meets a line through the singular point
  MultiPolynomial cusp = Y2() * Y2() - X2() * X2() * X2();
  CHECK(multiplicity({cusp, Y2()}, {cd(0), cd(0)}, kPolicy) == 3);
  CHECK(multiplicity({cusp, X2()}, {cd(0), cd(0)}, kPolicy) == 2);
  // translated point
  MultiPolynomial f = (X2() - mp_const(2, 1.0)) * (X2() - mp_const(2, 1.0));
  CHECK(multiplicity({f, Y2() - mp_const(2, cd(0.0, 2.0))}, {cd(1.0), cd(0.0, 2.0)}, kPolicy) ==
        2);
}

TEST_CASE("multiplicity of univariate germs") {
  for (int k = 1; k <= 6; ++k) {
    MultiPolynomial zk = pow_mp(mp_var(1, 0), k);
    CHECK(multiplicity({zk}, {cd(0)}, kPolicy) == k);
  }
  MultiPolynomial shifted = pow_mp(mp_var(1, 0) - mp_const(1, cd(2.0, -1.0)), 4);
  CHECK(multiplicity({shifted}, {cd(2.0, -1.0)}, kPolicy) == 4);
}

TEST_CASE("multiplicity is 0 away from the zero set") {
  CHECK(multiplicity({X2(), Y2()}, {cd(1.0), cd(0)}, kPolicy) == 0);
  CHECK(multiplicity({mp_var(1, 0)}, {cd(0.5)}, kPolicy) == 0);
}

TEST_CASE("multiplicity rejects ill-posed systems") {
  // non-square system
  CHECK_THROWS_AS(multiplicity({X2()}, {cd(0), cd(0)}, kPolicy), ValidationError);
  // non-isolated zero: x vanishes on a whole line
  CHECK_THROWS_AS(multiplicity({X2(), X2()}, {cd(0), cd(0)}, kPolicy), NumericalError);
}

TEST_CASE("solve_system in one variable") {
  // (z - 1)(z - 2)^2
  MultiPolynomial z = mp_var(1, 0);
  MultiPolynomial p = (z - mp_const(1, 1.0)) * (z - mp_const(1, 2.0)) * (z - mp_const(1, 2.0));
  ZeroSet zs = solve_system({p}, {cd(0)}, 3.0, kPolicy);
  REQUIRE(zs.size() == 2);
  const ZeroPoint* z1 = find_zero(zs, {cd(1.0)}, 1e-6);
  const ZeroPoint* z2 = find_zero(zs, {cd(2.0)}, 1e-5);
  REQUIRE(z1 != nullptr);
  REQUIRE(z2 != nullptr);
  CHECK(z1->multiplicity == 1);
  CHECK(z2->multiplicity == 2);

  // radius restricts the zero set
  ZeroSet inner = solve_system({p}, {cd(0)}, 1.5, kPolicy);
  REQUIRE(inner.size() == 1);
  CHECK(inner[0].multiplicity == 1);
}

TEST_CASE("solve_system in two variables") {
  // parabola meets the axis tangentially
  MultiPolynomial g1 = Y2() - X2() * X2();
  ZeroSet zs = solve_system({g1, Y2()}, {cd(0), cd(0)}, 1.0, kPolicy);
  REQUIRE(zs.size() == 1);
  CHECK(std::abs(zs[0].point[0]) < 1e-6);
  CHECK(std::abs(zs[0].point[1]) < 1e-6);
  CHECK(zs[0].multiplicity == 2);

  // two transverse points, one outside the ball
  MultiPolynomial h1 = (X2() - mp_const(2, 0.3)) * (X2() - mp_const(2, 5.0));
  MultiPolynomial h2 = Y2() - X2();
  ZeroSet ts = solve_system({h1, h2}, {cd(0), cd(0)}, 1.0, kPolicy);
  REQUIRE(ts.size() == 1);
  const ZeroPoint* t0 = find_zero(ts, {cd(0.3), cd(0.3)}, 1e-6);
  REQUIRE(t0 != nullptr);
  CHECK(t0->multiplicity == 1);

  // system with no y dependence in either equation is not zero-dimensional
  CHECK_THROWS_AS(solve_system({X2(), X2() * X2()}, {cd(0), cd(0)}, 1.0, kPolicy),
                  ValidationError);
}

TEST_CASE("solve_system flags zeros hugging the boundary") {
  MultiPolynomial z = mp_var(1, 0);
  MultiPolynomial p = z - mp_const(1, 1.0);
  CHECK_THROWS_AS(solve_system({p}, {cd(0)}, 1.0 + 1e-9, kPolicy), ValidationError);
}

TEST_CASE("multiplicity equals the count of nearby simple perturbed zeros") {
  // m_0(g) simple zeros of g - w appear near the origin for small generic w
  testgen::Rng rng(17);
  MultiPolynomial g1 = pow_mp(X2(), 2) - Y2() * Y2() * Y2();
  MultiPolynomial g2 = Y2() * X2();
  int m = multiplicity({g1, g2}, {cd(0), cd(0)}, kPolicy);
  REQUIRE(m > 0);
  cd w1 = testgen::crand(rng, 1e-3), w2 = testgen::crand(rng, 1e-3);
  ZeroSet zs = solve_system({g1 - mp_const(2, w1), g2 - mp_const(2, w2)}, {cd(0), cd(0)}, 0.8,
                            kPolicy);
  int count = 0;
  for (const auto& zp : zs) {
    CHECK(zp.multiplicity == 1);
    count += zp.multiplicity;
  }
  CHECK(count == m);
}
