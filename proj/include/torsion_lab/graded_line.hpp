#pragma once

#include "torsion_lab/types.hpp"

namespace torsion_lab {

/// Element of a one-dimensional graded line: a scalar multiple of the chosen
/// reference volume, together with the integer degree of the line.
///
/// Every grading-dependent sign used by the torsion engine is produced by the
/// functions in this header; no other code applies ad-hoc signs.
struct GradedLineElement {
  cd scalar = cd(1.0, 0.0);
  int degree = 0;
};

/// Tensor product: scalars multiply, degrees add.
inline GradedLineElement tensor(const GradedLineElement& a, const GradedLineElement& b) {
  return {a.scalar * b.scalar, a.degree + b.degree};
}

/// Parity sign (-1)^k, safe for negative and large exponents.
inline int parity_sign(long long k) { return (k % 2 == 0) ? 1 : -1; }

/// Sign of the symmetry isomorphism L ⊗ M -> M ⊗ L on lines of degrees n, m:
/// the swap multiplies by (-1)^{nm}.
inline int swap_sign(int n, int m) { return ((n & 1) != 0 && (m & 1) != 0) ? -1 : 1; }

/// Apply the symmetry isomorphism to a ⊗ b, producing the element of the
/// swapped tensor line.
inline GradedLineElement swapped(const GradedLineElement& a, const GradedLineElement& b) {
  GradedLineElement r = tensor(b, a);
  r.scalar *= static_cast<double>(swap_sign(a.degree, b.degree));
  return r;
}

/// Sign carried by the evaluation/coevaluation pairings between a line of
/// degree n and one of degree m; identical to the swap sign by convention.
inline int pairing_sign(int n, int m) { return swap_sign(n, m); }

/// Dual element: the functional on the line that pairs with the given element
/// to 1. Lives in the dual line, which carries the negated degree.
inline GradedLineElement dual(const GradedLineElement& a) {
  if (a.scalar == cd(0.0, 0.0)) throw NumericalError("dual of zero line element");
  return {cd(1.0, 0.0) / a.scalar, -a.degree};
}

}  // namespace torsion_lab
