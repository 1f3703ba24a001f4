#pragma once

#include "torsion_lab/polynomial.hpp"
#include "torsion_lab/types.hpp"

#include <random>
#include <utility>
#include <vector>

/// Seeded generators shared by the verification suites and the test binaries.
/// Everything is a pure function of the passed generator state.
namespace torsion_lab::testgen {

using Rng = std::mt19937_64;

inline double urand(Rng& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

/// Uniform over the disc of the given radius.
inline cd crand(Rng& rng, double radius) {
  double r = radius * std::sqrt(urand(rng, 0.0, 1.0));
  double t = urand(rng, 0.0, 2.0 * 3.14159265358979323846);
  return std::polar(r, t);
}

inline Matrix gaussian_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = cd(n(rng), n(rng));
  return m;
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the R diagonal
/// phases absorbed into Q.
inline Matrix haar_unitary(Rng& rng, int n) {
  Matrix g = gaussian_matrix(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cd d = r(i, i);
    cd phase = std::abs(d) > 0 ? d / std::abs(d) : cd(1.0, 0.0);
    q.col(i) *= phase;
  }
  return q;
}

/// One joint-spectrum block of a generated tuple.
struct SpectrumBlock {
  std::vector<cd> lambda;  // one component per tuple member
  int size = 0;
};

/// Exactly commuting tuple of n matrices of the given dimension: on each
/// block the members are polynomials in one shared nilpotent shift, and the
/// whole sum is conjugated by one Haar unitary. Eigenvalue blocks are
/// separated by at least min_sep in the max norm.
inline std::vector<Matrix> commuting_tuple(Rng& rng, int dim, int n,
                                           std::vector<SpectrumBlock>* blocks_out = nullptr,
                                           double min_sep = 5e-2) {
  std::vector<int> sizes;
  int left = dim;
  while (left > 0) {
    int s = std::min<int>(left, 1 + static_cast<int>(rng() % 3));
    sizes.push_back(s);
    left -= s;
  }
  std::vector<SpectrumBlock> blocks;
  for (int s : sizes) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::vector<cd> lam;
      for (int j = 0; j < n; ++j) lam.push_back(crand(rng, 1.5));
      bool ok = true;
      for (const auto& b : blocks) {
        double d = 0.0;
        for (int j = 0; j < n; ++j) d = std::max(d, std::abs(lam[static_cast<std::size_t>(j)] -
                                                             b.lambda[static_cast<std::size_t>(j)]));
        if (d < min_sep) ok = false;
      }
      if (ok) {
        blocks.push_back({std::move(lam), s});
        break;
      }
    }
  }

  std::vector<Matrix> A(static_cast<std::size_t>(n), Matrix::Zero(dim, dim));
  int off = 0;
  for (const auto& b : blocks) {
    Matrix N = Matrix::Zero(b.size, b.size);
    for (int i = 0; i + 1 < b.size; ++i) N(i, i + 1) = cd(1.0, 0.0);
    for (int j = 0; j < n; ++j) {
      Matrix blk = b.lambda[static_cast<std::size_t>(j)] * Matrix::Identity(b.size, b.size);
      if (b.size > 1) blk += crand(rng, 1.0) * N;
      if (b.size > 2) blk += crand(rng, 1.0) * (N * N);
      A[static_cast<std::size_t>(j)].block(off, off, b.size, b.size) = blk;
    }
    off += b.size;
  }
  Matrix Q = haar_unitary(rng, dim);
  for (auto& m : A) m = Q * m * Q.adjoint();
  if (blocks_out) *blocks_out = std::move(blocks);
  return A;
}

/// Monic-times-lead univariate polynomial with the given roots.
inline MultiPolynomial poly_from_roots(const std::vector<cd>& roots, cd lead) {
  std::vector<cd> c = {lead};
  for (cd r : roots) {
    std::vector<cd> next(c.size() + 1, cd(0.0, 0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * r;
    }
    c = std::move(next);
  }
  return from_uni_coeffs(c);
}

/// Roots inside [rlo1, rhi1] or [rlo2, rhi2] in radius (second band skipped
/// when rlo2 >= rhi2), pairwise separated by at least min_sep.
inline std::vector<cd> roots_in_bands(Rng& rng, int count, double rlo1, double rhi1, double rlo2,
                                      double rhi2, double min_sep) {
  std::vector<cd> out;
  while (static_cast<int>(out.size()) < count) {
    bool second = rlo2 < rhi2 && urand(rng, 0.0, 1.0) < 0.4;
    double r = second ? urand(rng, rlo2, rhi2) : urand(rng, rlo1, rhi1);
    cd z = std::polar(r, urand(rng, 0.0, 2.0 * 3.14159265358979323846));
    bool ok = true;
    for (cd w : out)
      if (std::abs(z - w) < min_sep) ok = false;
    if (ok) out.push_back(z);
  }
  return out;
}

/// Bivariate polynomial depending only on the first variable.
inline MultiPolynomial lift_to_plane(const MultiPolynomial& p) {
  MultiPolynomial out;
  out.nvars = 2;
  for (const auto& [e, c] : p.terms) out.terms[{e[0], 0}] = c;
  return out;
}

}  // namespace torsion_lab::testgen
