#include "torsion_lab/koszul.hpp"

#include "torsion_lab/exterior.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace torsion_lab {

double tuple_commute_defect(const std::vector<Matrix>& A) {
  if (A.empty()) throw ValidationError("empty operator tuple");
  Eigen::Index dim = A[0].rows();
  for (const auto& m : A) {
    if (m.rows() != m.cols()) throw ValidationError("tuple member is not square");
    if (m.rows() != dim) throw ValidationError("tuple members have mismatched sizes");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j)
      worst = std::max(worst, (A[i] * A[j] - A[j] * A[i]).norm());
  return worst;
}

CochainComplex build_koszul(const std::vector<Matrix>& A) {
  double defect = tuple_commute_defect(A);
  int n = static_cast<int>(A.size());
  int dim = static_cast<int>(A[0].rows());
  double scale = 1.0;
  for (const auto& m : A) scale = std::max(scale, m.norm());
  if (defect > 1e-8 * scale * scale) {
    std::ostringstream os;
    os << "operator tuple does not commute: worst commutator norm " << defect;
    throw ValidationError(os.str());
  }

  CochainComplex K;
  K.min_degree = -n;
  for (int k = -n; k <= 0; ++k)
    K.dims.push_back(dim * static_cast<int>(binom(n, -k)));
  for (int k = -n; k < 0; ++k) {
    auto source = subsets_of_size(n, -k);
    auto target = subsets_of_size(n, -(k + 1));
    Matrix D = Matrix::Zero(K.dims[k + 1 + n], K.dims[k + n]);
    for (std::size_t s = 0; s < source.size(); ++s) {
      for (int j : source[s]) {
        InteriorTerm t = interior_mult(source[s], j);
        int tpos = subset_position(target, t.rest);
        D.block(tpos * dim, static_cast<int>(s) * dim, dim, dim) +=
            static_cast<double>(t.sign) * A[static_cast<std::size_t>(j)];
      }
    }
    K.d.push_back(D);
  }
  return K;
}

DegreeMap koszul_module_action(const std::vector<Matrix>& A, const Matrix& M,
                               const CochainComplex& K) {
  int n = static_cast<int>(A.size());
  int dim = static_cast<int>(A[0].rows());
  if (M.rows() != dim || M.cols() != dim)
    throw ValidationError("module action matrix has wrong size");
  DegreeMap f;
  f.min_degree = K.min_degree;
  f.comp.resize(K.degree_count());
  for (int i = 0; i < K.degree_count(); ++i) {
    int blocks = static_cast<int>(binom(n, -(K.min_degree + i)));
    Matrix m = Matrix::Zero(dim * blocks, dim * blocks);
    for (int b = 0; b < blocks; ++b) m.block(b * dim, b * dim, dim, dim) = M;
    f.comp[i] = m;
  }
  return f;
}

namespace {

std::vector<double> generic_coefficients(int n, int attempt) {
  // Fixed irrational-ratio coefficients; later attempts rotate them so a
  // degenerate combination cannot persist.
  std::vector<double> c(n);
  const double base[6] = {1.0, 1.4142135623730951, 1.7320508075688772,
                          2.2360679774997896, 2.6457513110645907, 3.3166247903554};
  for (int j = 0; j < n; ++j)
    c[j] = base[(j + attempt) % 6] + 0.137 * attempt;
  return c;
}

}  // namespace

std::vector<JointEigenvalue> joint_eigenvalues(const std::vector<Matrix>& A,
                                               const RankPolicy& policy, Diagnostics* diag) {
  (void)policy;
  int n = static_cast<int>(A.size());
  int dim = static_cast<int>(A[0].rows());
  double scale = 1.0;
  for (const auto& m : A) scale = std::max(scale, m.norm());

  for (int attempt = 0; attempt < 6; ++attempt) {
    auto c = generic_coefficients(n, attempt);
    Matrix B = Matrix::Zero(dim, dim);
    for (int j = 0; j < n; ++j) B += c[static_cast<std::size_t>(j)] * A[static_cast<std::size_t>(j)];
    Eigen::ComplexSchur<Matrix> schur(B, true);
    if (schur.info() != Eigen::Success) continue;
    const Matrix& Q = schur.matrixU();

    bool ok = true;
    std::vector<Matrix> T(A.size());
    for (std::size_t j = 0; j < A.size(); ++j) {
      T[j] = Q.adjoint() * A[j] * Q;
      double below = 0.0;
      for (int r = 1; r < dim; ++r)
        for (int col = 0; col < r; ++col) below = std::max(below, std::abs(T[j](r, col)));
      if (below > 1e-7 * (1.0 + scale)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    // Defective eigenvalues of Jordan size k scatter as roundoff^{1/k} (~1e-5
    // for k = 3), so clustering is coarser than the triangularization check;
    // the scatter star is symmetric, so the cluster mean restores the point.
    std::vector<JointEigenvalue> points;
    std::vector<std::vector<cd>> sums;
    for (int i = 0; i < dim; ++i) {
      std::vector<cd> lam(A.size());
      for (std::size_t j = 0; j < A.size(); ++j) lam[j] = T[j](i, i);
      bool merged = false;
      for (std::size_t pi = 0; pi < points.size(); ++pi) {
        double dist = 0.0;
        for (std::size_t j = 0; j < lam.size(); ++j)
          dist += std::abs(points[pi].lambda[j] - lam[j]);
        if (dist < 1e-4 * (1.0 + scale)) {
          ++points[pi].multiplicity;
          for (std::size_t j = 0; j < lam.size(); ++j) {
            sums[pi][j] += lam[j];
            points[pi].lambda[j] = sums[pi][j] / static_cast<double>(points[pi].multiplicity);
          }
          merged = true;
          break;
        }
      }
      if (!merged) {
        points.push_back({lam, 1});
        sums.push_back(lam);
      }
    }
    return points;
  }
  if (diag) diag->add(Severity::error, "joint_eigenvalues", "simultaneous triangularization failed");
  throw NumericalError("joint_eigenvalues: simultaneous triangularization failed");
}

int koszul_index_at(const std::vector<Matrix>& A, const std::vector<cd>& lambda,
                    const RankPolicy& policy, Diagnostics* diag) {
  if (lambda.size() != A.size()) throw ValidationError("lambda size does not match tuple size");
  std::vector<Matrix> shifted = A;
  for (std::size_t j = 0; j < shifted.size(); ++j)
    shifted[j] -= lambda[j] * Matrix::Identity(shifted[j].rows(), shifted[j].cols());
  CochainComplex K = build_koszul(shifted);
  return cohomology(K, policy, diag, "koszul_index_at").index();
}

}  // namespace torsion_lab
