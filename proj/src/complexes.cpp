#include "torsion_lab/complexes.hpp"

#include <sstream>

namespace torsion_lab {

void validate_complex(const CochainComplex& X, double tol) {
  if (X.dims.empty()) throw ValidationError("complex has no spaces");
  if (X.d.size() + 1 != X.dims.size())
    throw ValidationError("complex must have exactly one differential per adjacent degree pair");
  for (std::size_t i = 0; i < X.d.size(); ++i) {
    if (X.d[i].rows() != X.dims[i + 1] || X.d[i].cols() != X.dims[i]) {
      std::ostringstream os;
      os << "differential out of degree " << (X.min_degree + static_cast<int>(i))
         << " has shape " << X.d[i].rows() << "x" << X.d[i].cols() << ", expected "
         << X.dims[i + 1] << "x" << X.dims[i];
      throw ValidationError(os.str());
    }
  }
  for (std::size_t i = 0; i + 1 < X.d.size(); ++i) {
    double scale = 1.0 + X.d[i].norm() * X.d[i + 1].norm();
    double defect = (X.d[i + 1] * X.d[i]).norm();
    if (defect > tol * scale) {
      std::ostringstream os;
      os << "d∘d out of degree " << (X.min_degree + static_cast<int>(i)) << " has norm "
         << defect;
      throw ValidationError(os.str());
    }
  }
}

DegreeMap make_degree_map(const CochainComplex& from, const CochainComplex& to,
                          int min_degree, const std::vector<Matrix>& comps) {
  DegreeMap f;
  f.min_degree = from.min_degree;
  f.comp.resize(from.degree_count());
  for (int i = 0; i < from.degree_count(); ++i) {
    int k = from.min_degree + i;
    int j = k - min_degree;
    if (j >= 0 && j < static_cast<int>(comps.size()) && comps[j].size() > 0) {
      if (comps[j].rows() != to.dim(k) || comps[j].cols() != from.dim(k)) {
        std::ostringstream os;
        os << "map component at degree " << k << " has shape " << comps[j].rows() << "x"
           << comps[j].cols() << ", expected " << to.dim(k) << "x" << from.dim(k);
        throw ValidationError(os.str());
      }
      f.comp[i] = comps[j];
    } else {
      f.comp[i] = Matrix::Zero(to.dim(k), from.dim(k));
    }
  }
  return f;
}

double cochain_defect(const CochainComplex& X, const CochainComplex& Y, const DegreeMap& f) {
  double worst = 0.0;
  for (int k = X.min_degree - 1; k <= X.max_degree(); ++k) {
    Matrix lhs = Y.d_at(k) * f.at(k, X, Y);
    Matrix rhs = f.at(k + 1, X, Y) * X.d_at(k);
    if (lhs.size() == 0 && rhs.size() == 0) continue;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

double commute_defect(const CochainComplex& X, const DegreeMap& f, const DegreeMap& g) {
  double worst = 0.0;
  for (int k = X.min_degree; k <= X.max_degree(); ++k) {
    Matrix a = f.at(k, X, X) * g.at(k, X, X);
    Matrix b = g.at(k, X, X) * f.at(k, X, X);
    if (a.size() == 0) continue;
    worst = std::max(worst, (a - b).norm());
  }
  return worst;
}

CochainComplex shift(const CochainComplex& X) {
  CochainComplex S;
  S.min_degree = X.min_degree - 1;
  S.dims = X.dims;
  S.d.reserve(X.d.size());
  for (const auto& m : X.d) S.d.push_back(-m);
  return S;
}

CochainComplex cone(const CochainComplex& X, const CochainComplex& Y, const DegreeMap& f) {
  CochainComplex C;
  C.min_degree = std::min(X.min_degree - 1, Y.min_degree);
  int cmax = std::max(X.max_degree() - 1, Y.max_degree());
  for (int k = C.min_degree; k <= cmax; ++k) C.dims.push_back(X.dim(k + 1) + Y.dim(k));
  for (int k = C.min_degree; k < cmax; ++k) {
    int rx = X.dim(k + 2), ry = Y.dim(k + 1);
    int cx = X.dim(k + 1), cy = Y.dim(k);
    Matrix D = Matrix::Zero(rx + ry, cx + cy);
    D.topLeftCorner(rx, cx) = -X.d_at(k + 1);
    D.bottomLeftCorner(ry, cx) = f.at(k + 1, X, Y);
    D.bottomRightCorner(ry, cy) = Y.d_at(k);
    C.d.push_back(D);
  }
  return C;
}

DegreeMap cone_inclusion(const CochainComplex&, const CochainComplex& Y, const CochainComplex& C) {
  DegreeMap inc;
  inc.min_degree = Y.min_degree;
  inc.comp.resize(Y.degree_count());
  for (int i = 0; i < Y.degree_count(); ++i) {
    int k = Y.min_degree + i;
    Matrix m = Matrix::Zero(C.dim(k), Y.dim(k));
    m.bottomRows(Y.dim(k)) = Matrix::Identity(Y.dim(k), Y.dim(k));
    inc.comp[i] = m;
  }
  return inc;
}

DegreeMap cone_projection(const CochainComplex& X, const CochainComplex& Y, const CochainComplex& C) {
  DegreeMap pr;
  pr.min_degree = C.min_degree;
  pr.comp.resize(C.degree_count());
  for (int i = 0; i < C.degree_count(); ++i) {
    int k = C.min_degree + i;
    Matrix m = Matrix::Zero(X.dim(k + 1), C.dim(k));
    m.leftCols(X.dim(k + 1)) = Matrix::Identity(X.dim(k + 1), X.dim(k + 1));
    pr.comp[i] = m;
  }
  (void)Y;
  return pr;
}

DegreeMap delta_map(const CochainComplex& X, const DegreeMap& g, const CochainComplex& C) {
  DegreeMap dg;
  dg.min_degree = C.min_degree;
  dg.comp.resize(C.degree_count());
  for (int i = 0; i < C.degree_count(); ++i) {
    int k = C.min_degree + i;
    int a = X.dim(k + 1), b = X.dim(k);
    Matrix m = Matrix::Zero(a + b, a + b);
    m.topLeftCorner(a, a) = g.at(k + 1, X, X);
    m.bottomRightCorner(b, b) = g.at(k, X, X);
    dg.comp[i] = m;
  }
  return dg;
}

CohomologyData cohomology(const CochainComplex& X, const RankPolicy& policy, Diagnostics* diag,
                          const std::string& where) {
  CohomologyData coh;
  coh.min_degree = X.min_degree;
  coh.h.resize(X.degree_count());
  coh.reps.resize(X.degree_count());
  for (int i = 0; i < X.degree_count(); ++i) {
    int k = X.min_degree + i;
    int n = X.dim(k);
    Matrix dk = X.d_at(k);
    Matrix dkm1 = X.d_at(k - 1);
    // harmonic space: ker d^k ∩ ker (d^{k-1})^* as kernel of the stacked map
    Matrix stacked(dk.rows() + dkm1.cols(), n);
    stacked.topRows(dk.rows()) = dk;
    stacked.bottomRows(dkm1.cols()) = dkm1.adjoint();
    std::ostringstream os;
    os << where << ": cohomology degree " << k;
    Matrix basis = kernel_of(stacked, policy, diag, os.str());
    coh.reps[i] = basis;
    coh.h[i] = static_cast<int>(basis.cols());
  }
  return coh;
}

Matrix induced_on_H(const CochainComplex& X, const CochainComplex& Y, const DegreeMap& f,
                    const CohomologyData& cohX, const CohomologyData& cohY, int k) {
  Matrix rx = cohX.reps_at(k);
  Matrix ry = cohY.reps_at(k);
  if (rx.cols() == 0 || ry.cols() == 0) return Matrix(ry.cols(), rx.cols());
  // Coordinates in the target representative basis. A least-squares solve keeps
  // this correct for any basis of the harmonic space, orthonormal or not: the
  // exact part of f(rep) is orthogonal to the harmonic space and drops out.
  Matrix img = f.at(k, X, Y) * rx;
  return ry.colPivHouseholderQr().solve(img);
}

}  // namespace torsion_lab
