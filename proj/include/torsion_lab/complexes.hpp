#pragma once

#include "torsion_lab/types.hpp"

#include <vector>

namespace torsion_lab {

/// Bounded cochain complex of finite-dimensional spaces over C.
/// Space number i lives in degree min_degree + i and has dimension dims[i];
/// d[i] maps degree min_degree + i to min_degree + i + 1 and has shape
/// dims[i+1] x dims[i]. A complex with a single space has no differentials.
struct CochainComplex {
  int min_degree = 0;
  std::vector<int> dims;
  std::vector<Matrix> d;

  int degree_count() const { return static_cast<int>(dims.size()); }
  int max_degree() const { return min_degree + degree_count() - 1; }

  int dim(int k) const {
    int i = k - min_degree;
    if (i < 0 || i >= degree_count()) return 0;
    return dims[i];
  }

  /// Differential out of degree k; a correctly shaped zero matrix outside the
  /// stored range.
  Matrix d_at(int k) const {
    int i = k - min_degree;
    if (i < 0 || i >= static_cast<int>(d.size())) return Matrix::Zero(dim(k + 1), dim(k));
    return d[i];
  }
};

/// Degreewise linear map between complexes sharing a degree indexing.
/// comp[i] acts on degree min_degree + i.
struct DegreeMap {
  int min_degree = 0;
  std::vector<Matrix> comp;

  Matrix at(int k, const CochainComplex& from, const CochainComplex& to) const {
    int i = k - min_degree;
    if (i < 0 || i >= static_cast<int>(comp.size())) return Matrix::Zero(to.dim(k), from.dim(k));
    return comp[i];
  }
};

/// Shape checks plus d∘d ≈ 0. Throws ValidationError on failure.
void validate_complex(const CochainComplex& X, double tol = 1e-10);

/// Build a DegreeMap covering every degree of `from`, filling absent degrees
/// with zero blocks of the right shape.
DegreeMap make_degree_map(const CochainComplex& from, const CochainComplex& to,
                          int min_degree, const std::vector<Matrix>& comps);

/// Max over degrees of || d_Y f - f d_X || (cochain-map defect).
double cochain_defect(const CochainComplex& X, const CochainComplex& Y, const DegreeMap& f);

/// Max over degrees of || f g - g f || for two endomorphism maps of X.
double commute_defect(const CochainComplex& X, const DegreeMap& f, const DegreeMap& g);

/// X[1]: degree k space is X^{k+1}; differential is -d_X^{k+1}.
CochainComplex shift(const CochainComplex& X);

/// Mapping cone of f : X -> Y.
/// C_f^k = X^{k+1} ⊕ Y^k (X block first), with differential
///   [ -d_X^{k+1}   0      ]
///   [  f^{k+1}     d_Y^k  ].
CochainComplex cone(const CochainComplex& X, const CochainComplex& Y, const DegreeMap& f);

/// Canonical inclusion Y -> C_f (bottom block).
DegreeMap cone_inclusion(const CochainComplex& X, const CochainComplex& Y, const CochainComplex& C);

/// Canonical projection C_f -> X[1] (top block), expressed against X's own
/// degree labels: the degree-k component lands in X^{k+1}.
DegreeMap cone_projection(const CochainComplex& X, const CochainComplex& Y, const CochainComplex& C);

/// For endomorphisms f, g of X: the degreewise map diag(g^{k+1}, g^k) on
/// C_f^k = X^{k+1} ⊕ X^k. It is a cochain map of C_f whenever g is a cochain
/// map commuting with f.
DegreeMap delta_map(const CochainComplex& X, const DegreeMap& g, const CochainComplex& C);

/// Orthonormal harmonic representatives of cohomology:
/// reps[i] has orthonormal columns spanning ker d^k ∩ (im d^{k-1})^perp.
struct CohomologyData {
  int min_degree = 0;
  std::vector<int> h;
  std::vector<Matrix> reps;

  int h_at(int k) const {
    int i = k - min_degree;
    if (i < 0 || i >= static_cast<int>(h.size())) return 0;
    return h[i];
  }
  Matrix reps_at(int k) const {
    int i = k - min_degree;
    if (i < 0 || i >= static_cast<int>(reps.size())) return Matrix(0, 0);
    return reps[i];
  }
  int h_plus() const {
    int s = 0;
    for (std::size_t i = 0; i < h.size(); ++i)
      if (((min_degree + static_cast<int>(i)) % 2) == 0) s += h[i];
    return s;
  }
  int h_minus() const {
    int s = 0;
    for (std::size_t i = 0; i < h.size(); ++i)
      if (((min_degree + static_cast<int>(i)) % 2) != 0) s += h[i];
    return s;
  }
  /// Alternating sum Σ (-1)^k dim H^k (the Fredholm index of the complex).
  int index() const { return h_plus() - h_minus(); }
  bool acyclic() const { return h_plus() + h_minus() == 0; }
};

CohomologyData cohomology(const CochainComplex& X, const RankPolicy& policy, Diagnostics* diag,
                          const std::string& where);

/// Matrix of H^k(f) : H^k(X) -> H^k(Y) in the harmonic bases of cohX / cohY.
/// Requires f to be a cochain map (so that f preserves kernels and images).
Matrix induced_on_H(const CochainComplex& X, const CochainComplex& Y, const DegreeMap& f,
                    const CohomologyData& cohX, const CohomologyData& cohY, int k);

}  // namespace torsion_lab
