#include "torsion_lab/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <sstream>

namespace torsion_lab {

namespace {

struct SvdResult {
  Eigen::JacobiSVD<Matrix> svd;
  int rank = 0;
  double threshold = 0.0;
};

SvdResult svd_with_rank(const Matrix& M, const RankPolicy& policy, Diagnostics* diag,
                        const std::string& where) {
  SvdResult r;
  if (M.rows() == 0 || M.cols() == 0) {
    r.rank = 0;
    r.threshold = policy.abs_floor;
    return r;
  }
  r.svd.compute(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = r.svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  r.threshold = std::max(policy.rel * smax, policy.abs_floor);
  int rank = 0;
  bool near = false;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > r.threshold) ++rank;
    if (sv(i) > r.threshold / 10.0 && sv(i) < r.threshold * 10.0) near = true;
  }
  r.rank = rank;
  if (near && diag) {
    std::ostringstream os;
    os << "singular value within a factor 10 of the rank threshold " << r.threshold
       << "; rank decision " << rank << " may be sensitive";
    diag_warn(diag, where, os.str());
  }
  return r;
}

}  // namespace

int rank_of(const Matrix& M, const RankPolicy& policy, Diagnostics* diag, const std::string& where) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  // Rank-only query: singular values suffice, and divide-and-conquer is much
  // faster than Jacobi once the matrix is no longer small.
  Eigen::VectorXd sv;
  if (std::min(M.rows(), M.cols()) > 64) {
    Eigen::BDCSVD<Matrix> svd(M);
    sv = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Matrix> svd(M);
    sv = svd.singularValues();
  }
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  double threshold = std::max(policy.rel * smax, policy.abs_floor);
  int rank = 0;
  bool near = false;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
    if (sv(i) > threshold / 10.0 && sv(i) < threshold * 10.0) near = true;
  }
  if (near && diag) {
    std::ostringstream os;
    os << "singular value within a factor 10 of the rank threshold " << threshold
       << "; rank decision " << rank << " may be sensitive";
    diag_warn(diag, where, os.str());
  }
  return rank;
}

Matrix kernel_of(const Matrix& M, const RankPolicy& policy, Diagnostics* diag,
                 const std::string& where) {
  if (M.rows() == 0 || M.cols() == 0)
    return Matrix::Identity(M.cols(), M.cols());
  SvdResult r = svd_with_rank(M, policy, diag, where);
  return r.svd.matrixV().rightCols(M.cols() - r.rank);
}

Matrix kernel_complement_of(const Matrix& M, const RankPolicy& policy, Diagnostics* diag,
                            const std::string& where) {
  if (M.rows() == 0 || M.cols() == 0)
    return Matrix(M.cols(), 0);
  SvdResult r = svd_with_rank(M, policy, diag, where);
  return r.svd.matrixV().leftCols(r.rank);
}

Matrix image_of(const Matrix& M, const RankPolicy& policy, Diagnostics* diag,
                const std::string& where) {
  if (M.rows() == 0 || M.cols() == 0)
    return Matrix(M.rows(), 0);
  SvdResult r = svd_with_rank(M, policy, diag, where);
  return r.svd.matrixU().leftCols(r.rank);
}

LogComplex det_log(const Matrix& M) {
  if (M.rows() != M.cols()) throw NumericalError("det_log: matrix not square");
  if (M.rows() == 0) return LogComplex::one();
  Eigen::PartialPivLU<Matrix> lu(M);
  LogComplex acc = LogComplex::one();
  const Matrix& U = lu.matrixLU();
  for (int i = 0; i < U.rows(); ++i) {
    cd pivot = U(i, i);
    if (std::abs(pivot) < 1e-300)
      throw NumericalError("det_log: singular matrix");
    acc = acc * LogComplex::from(pivot);
  }
  int sign = lu.permutationP().determinant();
  if (sign < 0) acc = acc * LogComplex::from(cd(-1.0, 0.0));
  return acc;
}

double condition_of(const Matrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return 1.0;
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace torsion_lab
