#pragma once

#include "torsion_lab/local_algebra.hpp"
#include "torsion_lab/polynomial.hpp"
#include "torsion_lab/types.hpp"

#include <vector>

namespace torsion_lab {

/// Local symbol evaluation data on the plane curve {h = 0}: the symbol
/// c_lambda(h; f, g) is taken at the point lambda of the curve, inside the
/// ball of radius eps around lambda. Admissibility (checked): lambda lies on
/// the curve, and the zero sets Z(h,f) and Z(h,g) meet the closed eps-ball
/// only at lambda.
struct SymbolProblem {
  MultiPolynomial h;
  MultiPolynomial f;
  MultiPolynomial g;
  std::vector<cd> lambda;
  double eps = 0.5;
};

/// Univariate pair on the classical disc model: spectrum the closed unit
/// disc, essential spectrum the unit circle, index constant 1 inside.
/// Admissibility (checked): neither polynomial has a zero within 1e-9 of the
/// unit circle.
struct DiscModelProblem {
  MultiPolynomial f;
  MultiPolynomial g;
};

/// Shrinking perturbation path w_k = w0 * ratio^k * e^{i theta} used by the
/// limit procedure. theta defaults to a fixed seeded pseudo-random direction
/// (make_limit_schedule); on boundary or triple-zero collisions the direction
/// is rotated by the golden angle and the schedule restarts (at most 8
/// rotations).
struct LimitSchedule {
  double w0 = 1e-2;
  double ratio = 0.5;
  double theta = 0.0;
  int max_steps = 40;
  double stab_tol = 1e-7;
};

/// Schedule with the direction drawn from a seeded generator.
LimitSchedule make_limit_schedule(unsigned seed);

/// Convergence record of the last attempted direction.
struct SymbolTrace {
  std::vector<cd> q;
  int retries = 0;
};

/// c_lambda(h; f, g) by the perturbation limit: for each w_k the value
///   q(w_k) = (f(lambda) - w_k)^{m_lambda(h,g)}
///            / prod_{nu in Z(h, f - w_k), |nu - lambda| < eps/2} g(nu)^{m_nu(h, f - w_k)}
/// is formed from solve_system zeros and local multiplicities; the result is
/// the stabilized value once three consecutive q agree to stab_tol relative.
///
/// Throws ValidationError on inadmissible problems (point off the curve,
/// foreign zeros inside the eps-ball, persistent boundary collisions: shrink
/// eps) and StabilizationError (with the trailing q values) when max_steps
/// pass without stabilization.
cd tame_symbol_local(const SymbolProblem& P, const LimitSchedule& S, const RankPolicy& policy,
                     Diagnostics* diag = nullptr, SymbolTrace* trace = nullptr);

/// Regular-point closed form on the affine line: with f = (z - x0)^m phi,
/// g = (z - x0)^k psi and phi(x0), psi(x0) != 0 (repeated synthetic
/// division), returns (-1)^{m k} phi(x0)^k / psi(x0)^m.
cd tame_symbol_regular(const MultiPolynomial& f, const MultiPolynomial& g, cd x0);

/// Global product over the disc model: product of c_lambda(f, g)^{Ind} with
/// Ind = 1 (model constant) over the zeros of f and g in the open unit disc,
/// each local factor from tame_symbol_regular.
cd joint_torsion_global(const DiscModelProblem& P, Diagnostics* diag = nullptr);

/// Global product over a commuting matrix tuple: the factors run over the
/// joint eigenvalues lying on {h = 0} with f or g vanishing; each carries the
/// exponent Ind(A - lambda), the Euler characteristic of the local Koszul
/// complex, which vanishes identically in finite dimensions, so factors with
/// exponent 0 are skipped exactly.
cd joint_torsion_global(const std::vector<Matrix>& A, const std::vector<MultiPolynomial>& h,
                        const MultiPolynomial& f, const MultiPolynomial& g,
                        const RankPolicy& policy, Diagnostics* diag = nullptr);

/// Classical disc-model product: for each zero lambda of f or g in the open
/// disc, with m_f, m_g the root multiplicities at lambda, the factor is
///   (-1)^{m_f m_g} * phi(lambda)^{m_g} / psi(lambda)^{m_f},
/// where phi, psi strip the lambda-root factors of f and g. Computed from
/// companion-matrix root multisets, independently of tame_symbol_regular.
cd carey_pincus(const DiscModelProblem& P, Diagnostics* diag = nullptr);

/// Winding-number index: minus the winding number of f around the unit
/// circle, by trapezoidal quadrature of f'/f on 4096 nodes. Must equal minus
/// the number of roots in the open disc (independent companion-matrix
/// cross-check). Throws NumericalError when the quadrature lands farther than
/// 0.1 from an integer (near-circle zero).
int noether_index(const MultiPolynomial& f, Diagnostics* diag = nullptr);

/// The three defining identities of the symbol, evaluated through
/// tame_symbol_local at one point of the curve {h = 0}. Each field should be
/// 1; max_deviation is the largest |value - 1|.
struct AxiomsReport {
  cd antisymmetry;      // c(f1, f2) * c(f2, f1)
  cd multiplicativity;  // c(f1, f2 f3) / (c(f1, f2) c(f1, f3))
  cd steinberg;         // c(t, 1 - t)
  double max_deviation = 0.0;
};

AxiomsReport symbol_axioms_check(const MultiPolynomial& h, const MultiPolynomial& f1,
                                 const MultiPolynomial& f2, const MultiPolynomial& f3,
                                 const MultiPolynomial& t, const std::vector<cd>& lambda,
                                 double eps, const LimitSchedule& S, const RankPolicy& policy,
                                 Diagnostics* diag = nullptr);

}  // namespace torsion_lab
