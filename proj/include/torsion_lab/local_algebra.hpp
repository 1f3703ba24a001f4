#pragma once

#include "torsion_lab/polynomial.hpp"
#include "torsion_lab/types.hpp"

#include <vector>

namespace torsion_lab {

/// A common zero of a polynomial system together with its local multiplicity.
struct ZeroPoint {
  std::vector<cd> point;
  int multiplicity = 0;
};

using ZeroSet = std::vector<ZeroPoint>;

/// Local multiplicity of the square system g at lambda: the dimension of the
/// local quotient ring at lambda. After translating lambda to the origin the
/// codimension d_N of the degree-truncated ideal (rows x^alpha * g_i, |alpha|
/// < N, inside the span of monomials of degree < N) is computed for growing N;
/// the answer is the first value with d_N = d_{N+1} = d_{N+2}.
///
/// Returns 0 when some |g_i(lambda)| is decidedly nonzero. Throws
/// NumericalError when no stabilization occurs by N = 30 (zero not isolated
/// or multiplicity too large).
int multiplicity(const std::vector<MultiPolynomial>& g, const std::vector<cd>& lambda,
                 const RankPolicy& policy, Diagnostics* diag = nullptr);

/// Common zeros of the square system g (one or two variables) inside the open
/// ball |z - center| < radius, each with its local multiplicity.
///
/// Candidates come from companion-matrix roots (one variable) or from
/// resultant elimination plus back-substitution into the equation of larger
/// degree in the eliminated variable (two variables); they are polished by
/// Newton iteration on the full system, filtered by residual, and merged by
/// single-linkage clustering at tolerance 1e-6 * (1 + radius).
///
/// Throws ValidationError when the system is not zero-dimensional in the
/// region or when a zero lies within 1e-6 * (1 + radius) of the boundary.
ZeroSet solve_system(const std::vector<MultiPolynomial>& g, const std::vector<cd>& center,
                     double radius, const RankPolicy& policy, Diagnostics* diag = nullptr);

}  // namespace torsion_lab
