#pragma once

#include "torsion_lab/complexes.hpp"
#include "torsion_lab/graded_line.hpp"
#include "torsion_lab/polynomial.hpp"

#include <array>
#include <functional>
#include <optional>

namespace torsion_lab {

/// Six-term exact sequence of Z/2-graded cohomology spaces
///
///   V1+ --f+--> V2+ --i+--> V+ --p+--> V1- --f---> V2- --i---> V- --p---> V1+
///
/// with every map expressed in fixed reference bases; the reference volumes
/// are the wedge of those basis columns in order.
struct SixTermSequence {
  Matrix fp, fm;   // f±  : V1± -> V2±
  Matrix ip, im_;  // i±  : V2± -> V±
  Matrix pp, pm;   // p+  : V+ -> V1-,  p- : V- -> V1+
};

/// Optional injected complements for the six kernels, ordered
/// (f+, f-, i+, i-, p+, p-). Each matrix's columns must span a subspace
/// transversal to the corresponding kernel inside the map's domain.
struct ComplementChoice {
  std::array<std::optional<Matrix>, 6> t;
};

/// Scalar s of the torsion isomorphism of the sequence: the canonical map
/// |V2| -> |V1| ⊗ |V| sends the V2 reference volume to s times the tensor of
/// the V1 and V reference volumes. Algorithm: choose complements t of the six
/// kernels (orthogonal by default), form the basis-change matrices
///   B2± = [f±·t1± | t2±],  B± = [i±·t2± | t±],
///   B1+ = [p-·t- | t1+],   B1- = [p+·t+ | t1-],
/// and return (-1)^mu · det(B1+) det(B+) det(B2-) / (det(B1-) det(B-) det(B2+))
/// with the sign exponent
///   mu = r(i+)(r(f-)+r(f+)) + r(f-)(r(p+)+r(p-)) + r(p-)(r(i+)+r(i-)) + r(p+).
/// The result does not depend on the complement choice.
LogComplex torsion_iso(const SixTermSequence& S, const RankPolicy& policy, Diagnostics* diag,
                       const ComplementChoice* complements = nullptr);

/// Scalar of the canonical determinant isomorphism of a short exact sequence
/// 0 -> V --iota--> W --pi--> Z -> 0 (reference volumes: standard bases):
/// |W| maps to s · (vol V ⊗ vol Z), with the sign (-1)^{dim V · dim Z}.
cd ses_determinant_iso(const Matrix& iota, const Matrix& pi, const RankPolicy& policy,
                       Diagnostics* diag);

/// Six-term sequence of the mapping cone C = C_f of f : X -> Y, with all maps
/// written in the harmonic bases cohX / cohY / cohC. The p-slots land in
/// H^{k+1}(X) (the cone projection to X[1]).
SixTermSequence six_term(const CochainComplex& X, const CochainComplex& Y, const DegreeMap& f,
                         const CochainComplex& C, const CohomologyData& cohX,
                         const CohomologyData& cohY, const CohomologyData& cohC);

/// Torsion scalar of a cochain map f : X -> Y relative to the harmonic
/// reference volumes on H(X), H(Y), H(C_f).
LogComplex torsion_of_map(const CochainComplex& X, const CochainComplex& Y, const DegreeMap& f,
                          const RankPolicy& policy, Diagnostics* diag);

/// Which cone's cohomology volumes a VolumeTweak is modifying.
enum class ConeId { cone_f = 0, cone_g = 1, cone_delta_g = 2, cone_delta_f = 3 };

/// Test hook: rescale / replace the harmonic representative bases used as
/// reference volumes. The returned columns must span the same harmonic space.
using VolumeTweak = std::function<Matrix(ConeId, int degree, const Matrix& reps)>;

struct JointTorsionProblem {
  CochainComplex X;
  DegreeMap f, g;
  RankPolicy policy;
};

/// Joint torsion JT(X; f, g) of two commuting cochain endomorphisms:
/// the composite of the torsion isomorphism of delta(g) acting on C_f, the
/// comparison isomorphism Phi between the two iterated cones, and the inverse
/// torsion isomorphism of delta(f) acting on C_g, i.e.
///   JT = s_Phi · s_g / s_f
/// with all three scalars taken in one consistent set of reference volumes
/// (they cancel, so JT is volume-independent).
LogComplex joint_torsion(const CochainComplex& X, const DegreeMap& f, const DegreeMap& g,
                         const RankPolicy& policy, Diagnostics* diag,
                         const VolumeTweak* tweak = nullptr);

inline LogComplex joint_torsion(const JointTorsionProblem& P, Diagnostics* diag) {
  return joint_torsion(P.X, P.f, P.g, P.policy, diag);
}

/// Multiplicative Lefschetz number det H^+(f) / det H^-(f). Errors when an
/// induced map is singular; warns when one is invertible but has condition
/// number above 1e8.
LogComplex lefschetz(const CochainComplex& X, const DegreeMap& f, const RankPolicy& policy,
                     Diagnostics* diag);

/// Joint torsion of the pair (f, g) over the base tuple h on a matrix model,
/// evaluated through the quotient of multiplicative Lefschetz numbers
///   M(K((h,g),H); f) / M(K((h,f),H); g).
/// Precondition: K((h,f,g), H) is acyclic (checked); on failure the error
/// message points to the perturbation-limit procedure instead.
LogComplex joint_torsion_nonsingular(const std::vector<Matrix>& A,
                                     const std::vector<MultiPolynomial>& h,
                                     const MultiPolynomial& f, const MultiPolynomial& g,
                                     const RankPolicy& policy, Diagnostics* diag);

/// Transition number tau_{i,j} of the tuple g = (g_1, ..., g_m) applied to A:
/// the joint torsion of the actions of g_i and g_j on the Koszul complex of
/// the remaining members (positions i and j removed; removed once when
/// i == j). Indices are 0-based.
LogComplex transition_number(const std::vector<Matrix>& A, const std::vector<MultiPolynomial>& g,
                             int i, int j, const RankPolicy& policy, Diagnostics* diag);

}  // namespace torsion_lab
