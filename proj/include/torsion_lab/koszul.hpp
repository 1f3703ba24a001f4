#pragma once

#include "torsion_lab/complexes.hpp"

#include <vector>

namespace torsion_lab {

/// Koszul complex K(A, H) of a commuting tuple A = (A_1, ..., A_n) acting on
/// H = C^dim:
///   K^k = H ⊗ Λ^{-k}(C^n),  k = -n, ..., 0,
///   d = Σ_j A_j ⊗ eps*_j.
///
/// Basis layout of K^k: the size-(-k) subsets I in lexicographic order, and
/// within each subset block the module basis of H (module index fastest). The
/// block of d mapping the I-block to the (I \ {j})-block is
/// (interior sign) · A_j.
///
/// Prepending a component to the tuple is compatible with mapping cones: with
/// these conventions (cone block order X^{k+1} first, lex subsets, module
/// index fastest), the natural identification of K((B, A_1, ..., A_n), H)
/// with the cone of the action of B on K(A, H) is the identity matrix on the
/// ordered bases; no signs or permutations appear. (Subsets containing the
/// lowest index are lexicographically first, and interior multiplication by
/// that index always carries sign +1.)
CochainComplex build_koszul(const std::vector<Matrix>& A);

/// Verify that the tuple members are square, of equal size, and commute to
/// tolerance; returns the worst pairwise commutator norm. Throws
/// ValidationError when shapes are wrong.
double tuple_commute_defect(const std::vector<Matrix>& A);

/// The degreewise action M ⊗ id on K(A, H): block diagonal with one M block
/// per subset. It is a cochain map of K(A, H) whenever M commutes with every
/// A_j.
DegreeMap koszul_module_action(const std::vector<Matrix>& A, const Matrix& M,
                               const CochainComplex& K);

/// One point of the joint spectrum with algebraic multiplicity.
struct JointEigenvalue {
  std::vector<cd> lambda;
  int multiplicity = 0;
};

/// Joint eigenvalues of a commuting tuple via a Schur decomposition of a fixed
/// generic linear combination; the triangularization is verified on every
/// member and re-tried with rotated coefficients on failure. Diagonal entries
/// are clustered at 1e-4 relative scale (defective points scatter as
/// roundoff^{1/k}); each point reports the cluster mean and total multiplicity.
std::vector<JointEigenvalue> joint_eigenvalues(const std::vector<Matrix>& A,
                                               const RankPolicy& policy, Diagnostics* diag);

/// Fredholm index of K(A - lambda, H), computed from cohomology dimensions.
int koszul_index_at(const std::vector<Matrix>& A, const std::vector<cd>& lambda,
                    const RankPolicy& policy, Diagnostics* diag);

}  // namespace torsion_lab
