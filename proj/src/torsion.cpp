#include "torsion_lab/torsion.hpp"

#include "torsion_lab/koszul.hpp"

#include <sstream>

namespace torsion_lab {

namespace {

struct ParityLayout {
  // ascending degrees of one parity and the block offset of each degree
  std::vector<int> degrees;
  std::vector<int> offsets;
  int total = 0;

  int offset_of(int k) const {
    for (std::size_t i = 0; i < degrees.size(); ++i)
      if (degrees[i] == k) return offsets[i];
    return -1;
  }
};

ParityLayout layout(const CohomologyData& coh, int parity, int klo, int khi) {
  ParityLayout L;
  for (int k = klo; k <= khi; ++k) {
    if (((k % 2) + 2) % 2 != parity) continue;
    int h = coh.h_at(k);
    if (h == 0) continue;
    L.degrees.push_back(k);
    L.offsets.push_back(L.total);
    L.total += h;
  }
  return L;
}

Matrix coords_in(const Matrix& reps, const Matrix& vectors) {
  if (reps.cols() == 0 || vectors.cols() == 0) return Matrix(reps.cols(), vectors.cols());
  return reps.colPivHouseholderQr().solve(vectors);
}

void check_composite(const Matrix& a, const Matrix& b, const char* where) {
  // a ∘ b should vanish on an exact sequence
  if (a.cols() != b.rows() || a.rows() == 0 || b.cols() == 0) return;
  double scale = 1.0 + a.norm() * b.norm();
  double defect = (a * b).norm();
  if (defect > 1e-6 * scale) {
    std::ostringstream os;
    os << "six-term sequence not exact: composite at " << where << " has norm " << defect;
    throw ValidationError(os.str());
  }
}

Matrix default_complement(const Matrix& M, const RankPolicy& policy, Diagnostics* diag,
                          const std::string& where) {
  return kernel_complement_of(M, policy, diag, where);
}

Matrix chosen_complement(const Matrix& M, const RankPolicy& policy, Diagnostics* diag,
                         const std::string& where, const ComplementChoice* choice,
                         std::size_t slot) {
  if (!choice || !choice->t[slot]) return default_complement(M, policy, diag, where);
  const Matrix& t = *choice->t[slot];
  int r = rank_of(M, policy, nullptr, where);
  if (t.rows() != M.cols() || t.cols() != r)
    throw ValidationError("injected complement has wrong shape at " + where);
  Matrix ker = kernel_of(M, policy, nullptr, where);
  Matrix joined(t.rows(), ker.cols() + t.cols());
  joined.leftCols(ker.cols()) = ker;
  joined.rightCols(t.cols()) = t;
  if (rank_of(joined, policy, nullptr, where) != static_cast<int>(joined.cols()))
    throw ValidationError("injected complement is not transversal to the kernel at " + where);
  return t;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  Matrix r(std::max(a.rows(), b.rows()), a.cols() + b.cols());
  if (a.cols() > 0) r.leftCols(a.cols()) = a;
  if (b.cols() > 0) r.rightCols(b.cols()) = b;
  return r;
}

}  // namespace

LogComplex torsion_iso(const SixTermSequence& S, const RankPolicy& policy, Diagnostics* diag,
                       const ComplementChoice* complements) {
  const int dV1p = static_cast<int>(S.fp.cols());
  const int dV1m = static_cast<int>(S.fm.cols());
  const int dV2p = static_cast<int>(S.fp.rows());
  const int dV2m = static_cast<int>(S.fm.rows());
  const int dVp = static_cast<int>(S.ip.rows());
  const int dVm = static_cast<int>(S.im_.rows());
  if (S.ip.cols() != dV2p || S.im_.cols() != dV2m || S.pp.cols() != dVp || S.pm.cols() != dVm ||
      S.pp.rows() != dV1m || S.pm.rows() != dV1p)
    throw ValidationError("six-term sequence has inconsistent shapes");

  const int a = rank_of(S.fp, policy, diag, "torsion_iso: f+");
  const int ap = rank_of(S.fm, policy, diag, "torsion_iso: f-");
  const int b = rank_of(S.ip, policy, diag, "torsion_iso: i+");
  const int bp = rank_of(S.im_, policy, diag, "torsion_iso: i-");
  const int c = rank_of(S.pp, policy, diag, "torsion_iso: p+");
  const int cp = rank_of(S.pm, policy, diag, "torsion_iso: p-");

  auto require = [](bool ok, const char* node) {
    if (!ok)
      throw ValidationError(std::string("six-term sequence not exact at ") + node +
                            " (rank bookkeeping)");
  };
  require(a + b == dV2p, "V2+");
  require(b + c == dVp, "V+");
  require(c + ap == dV1m, "V1-");
  require(ap + bp == dV2m, "V2-");
  require(bp + cp == dVm, "V-");
  require(cp + a == dV1p, "V1+");

  check_composite(S.ip, S.fp, "i+ f+");
  check_composite(S.pp, S.ip, "p+ i+");
  check_composite(S.fm, S.pp, "f- p+");
  check_composite(S.im_, S.fm, "i- f-");
  check_composite(S.pm, S.im_, "p- i-");
  check_composite(S.fp, S.pm, "f+ p-");

  Matrix t1p = chosen_complement(S.fp, policy, diag, "torsion_iso: complement f+", complements, 0);
  Matrix t1m = chosen_complement(S.fm, policy, diag, "torsion_iso: complement f-", complements, 1);
  Matrix t2p = chosen_complement(S.ip, policy, diag, "torsion_iso: complement i+", complements, 2);
  Matrix t2m = chosen_complement(S.im_, policy, diag, "torsion_iso: complement i-", complements, 3);
  Matrix tp = chosen_complement(S.pp, policy, diag, "torsion_iso: complement p+", complements, 4);
  Matrix tm = chosen_complement(S.pm, policy, diag, "torsion_iso: complement p-", complements, 5);

  Matrix B2p = hcat(S.fp * t1p, t2p);
  Matrix B2m = hcat(S.fm * t1m, t2m);
  Matrix Bp = hcat(S.ip * t2p, tp);
  Matrix Bm = hcat(S.im_ * t2m, tm);
  Matrix B1p = hcat(S.pm * tm, t1p);
  Matrix B1m = hcat(S.pp * tp, t1m);

  const long long mu = static_cast<long long>(b) * (ap + a) + static_cast<long long>(ap) * (c + cp) +
                       static_cast<long long>(cp) * (b + bp) + c;

  LogComplex s = det_log(B1p) * det_log(Bp) * det_log(B2m) /
                 (det_log(B1m) * det_log(Bm) * det_log(B2p));
  if (parity_sign(mu) < 0) s = s * LogComplex::from(cd(-1.0, 0.0));
  return s;
}

cd ses_determinant_iso(const Matrix& iota, const Matrix& pi, const RankPolicy& policy,
                       Diagnostics* diag) {
  const int dimV = static_cast<int>(iota.cols());
  const int dimW = static_cast<int>(iota.rows());
  const int dimZ = static_cast<int>(pi.rows());
  if (pi.cols() != dimW) throw ValidationError("ses_determinant_iso: shape mismatch");
  if (dimV + dimZ != dimW)
    throw ValidationError("ses_determinant_iso: dimensions are not exact (dim V + dim Z != dim W)");
  if (rank_of(iota, policy, diag, "ses: iota") != dimV)
    throw ValidationError("ses_determinant_iso: inclusion is not injective");
  if (rank_of(pi, policy, diag, "ses: pi") != dimZ)
    throw ValidationError("ses_determinant_iso: projection is not surjective");
  if (dimV > 0 && dimZ > 0) {
    double defect = (pi * iota).norm();
    if (defect > 1e-6 * (1.0 + pi.norm() * iota.norm()))
      throw ValidationError("ses_determinant_iso: pi ∘ iota != 0");
  }
  // Orthonormal complement of the image of iota inside W.
  Matrix C = kernel_of(iota.adjoint(), policy, diag, "ses: image complement");
  Matrix MW = hcat(iota, C);
  LogComplex s = det_log(pi * C) / det_log(MW);
  cd v = s.value();
  return static_cast<double>(parity_sign(static_cast<long long>(dimV) * dimZ)) * v;
}

SixTermSequence six_term(const CochainComplex& X, const CochainComplex& Y, const DegreeMap& f,
                         const CochainComplex& C, const CohomologyData& cohX,
                         const CohomologyData& cohY, const CohomologyData& cohC) {
  const int klo = std::min({X.min_degree - 1, Y.min_degree, C.min_degree});
  const int khi = std::max({X.max_degree() + 1, Y.max_degree(), C.max_degree()});

  ParityLayout X0 = layout(cohX, 0, klo, khi), X1 = layout(cohX, 1, klo, khi);
  ParityLayout Y0 = layout(cohY, 0, klo, khi), Y1 = layout(cohY, 1, klo, khi);
  ParityLayout C0 = layout(cohC, 0, klo, khi), C1 = layout(cohC, 1, klo, khi);

  DegreeMap inc = cone_inclusion(X, Y, C);
  DegreeMap pr = cone_projection(X, Y, C);

  SixTermSequence S;
  S.fp = Matrix::Zero(Y0.total, X0.total);
  S.fm = Matrix::Zero(Y1.total, X1.total);
  S.ip = Matrix::Zero(C0.total, Y0.total);
  S.im_ = Matrix::Zero(C1.total, Y1.total);
  S.pp = Matrix::Zero(X1.total, C0.total);
  S.pm = Matrix::Zero(X0.total, C1.total);

  auto fill_f = [&](const ParityLayout& LX, const ParityLayout& LY, Matrix& dst) {
    for (std::size_t i = 0; i < LX.degrees.size(); ++i) {
      int k = LX.degrees[i];
      int oy = LY.offset_of(k);
      if (oy < 0) continue;
      Matrix blockm = induced_on_H(X, Y, f, cohX, cohY, k);
      dst.block(oy, LX.offsets[i], blockm.rows(), blockm.cols()) = blockm;
    }
  };
  fill_f(X0, Y0, S.fp);
  fill_f(X1, Y1, S.fm);

  auto fill_i = [&](const ParityLayout& LY, const ParityLayout& LC, Matrix& dst) {
    for (std::size_t i = 0; i < LY.degrees.size(); ++i) {
      int k = LY.degrees[i];
      int oc = LC.offset_of(k);
      if (oc < 0) continue;
      Matrix blockm = induced_on_H(Y, C, inc, cohY, cohC, k);
      dst.block(oc, LY.offsets[i], blockm.rows(), blockm.cols()) = blockm;
    }
  };
  fill_i(Y0, C0, S.ip);
  fill_i(Y1, C1, S.im_);

  // p : H^k(C) -> H^{k+1}(X), induced by the top-block projection.
  auto fill_p = [&](const ParityLayout& LC, const ParityLayout& LXnext, Matrix& dst) {
    for (std::size_t i = 0; i < LC.degrees.size(); ++i) {
      int k = LC.degrees[i];
      int ox = LXnext.offset_of(k + 1);
      if (ox < 0) continue;
      Matrix img = pr.at(k, C, X) * cohC.reps_at(k);
      Matrix blockm = coords_in(cohX.reps_at(k + 1), img);
      dst.block(ox, LC.offsets[i], blockm.rows(), blockm.cols()) = blockm;
    }
  };
  fill_p(C0, X1, S.pp);
  fill_p(C1, X0, S.pm);

  return S;
}

LogComplex torsion_of_map(const CochainComplex& X, const CochainComplex& Y, const DegreeMap& f,
                          const RankPolicy& policy, Diagnostics* diag) {
  validate_complex(X);
  validate_complex(Y);
  double scale = 1.0;
  for (const auto& m : f.comp) scale = std::max(scale, m.norm());
  double defect = cochain_defect(X, Y, f);
  if (defect > 1e-8 * scale) {
    std::ostringstream os;
    os << "torsion_of_map: not a cochain map (defect norm " << defect << ")";
    throw ValidationError(os.str());
  }
  CochainComplex C = cone(X, Y, f);
  CohomologyData cohX = cohomology(X, policy, diag, "torsion_of_map: X");
  CohomologyData cohY = cohomology(Y, policy, diag, "torsion_of_map: Y");
  CohomologyData cohC = cohomology(C, policy, diag, "torsion_of_map: cone");
  SixTermSequence S = six_term(X, Y, f, C, cohX, cohY, cohC);
  return torsion_iso(S, policy, diag);
}

namespace {

/// Comparison isomorphism Phi : C_{delta(g)} -> C_{delta(f)} for endomorphisms
/// f, g of X. In the block decomposition
///   C_{delta(g)}^k = (X^{k+2} ⊕ X^{k+1}) ⊕ (X^{k+1} ⊕ X^k)
/// it negates the first block and swaps the two middle blocks.
DegreeMap phi_map(const CochainComplex& X, const CochainComplex& Dg) {
  DegreeMap phi;
  phi.min_degree = Dg.min_degree;
  phi.comp.resize(Dg.degree_count());
  for (int idx = 0; idx < Dg.degree_count(); ++idx) {
    int k = Dg.min_degree + idx;
    int a = X.dim(k + 2), b = X.dim(k + 1), c = X.dim(k);
    Matrix m = Matrix::Zero(a + 2 * b + c, a + 2 * b + c);
    m.block(0, 0, a, a) = -Matrix::Identity(a, a);
    m.block(a, a + b, b, b) = Matrix::Identity(b, b);
    m.block(a + b, a, b, b) = Matrix::Identity(b, b);
    m.block(a + 2 * b, a + 2 * b, c, c) = Matrix::Identity(c, c);
    phi.comp[idx] = m;
  }
  return phi;
}

CohomologyData tweaked_cohomology(const CochainComplex& Z, const RankPolicy& policy,
                                  Diagnostics* diag, const std::string& where,
                                  const VolumeTweak* tweak, ConeId id) {
  CohomologyData coh = cohomology(Z, policy, diag, where);
  if (tweak && *tweak) {
    for (std::size_t i = 0; i < coh.reps.size(); ++i) {
      int k = coh.min_degree + static_cast<int>(i);
      coh.reps[i] = (*tweak)(id, k, coh.reps[i]);
      if (coh.reps[i].cols() != coh.h[i])
        throw ValidationError("volume tweak changed the cohomology dimension");
    }
  }
  return coh;
}

}  // namespace

LogComplex joint_torsion(const CochainComplex& X, const DegreeMap& f, const DegreeMap& g,
                         const RankPolicy& policy, Diagnostics* diag, const VolumeTweak* tweak) {
  validate_complex(X);
  double scale = 1.0;
  for (const auto& m : f.comp) scale = std::max(scale, m.norm());
  for (const auto& m : g.comp) scale = std::max(scale, m.norm());
  double df = cochain_defect(X, X, f);
  double dg = cochain_defect(X, X, g);
  if (df > 1e-8 * scale || dg > 1e-8 * scale) {
    std::ostringstream os;
    os << "joint_torsion: input is not a cochain map (defect norms " << df << ", " << dg << ")";
    throw ValidationError(os.str());
  }
  double dc = commute_defect(X, f, g);
  if (dc > 1e-8 * scale * scale) {
    std::ostringstream os;
    os << "joint_torsion: maps do not commute (defect norm " << dc << ")";
    throw ValidationError(os.str());
  }

  CochainComplex Cf = cone(X, X, f);
  CochainComplex Cg = cone(X, X, g);
  DegreeMap delta_g = delta_map(X, g, Cf);
  DegreeMap delta_f = delta_map(X, f, Cg);
  CochainComplex Dg = cone(Cf, Cf, delta_g);
  CochainComplex Df = cone(Cg, Cg, delta_f);

  CohomologyData cohCf =
      tweaked_cohomology(Cf, policy, diag, "joint_torsion: C_f", tweak, ConeId::cone_f);
  CohomologyData cohCg =
      tweaked_cohomology(Cg, policy, diag, "joint_torsion: C_g", tweak, ConeId::cone_g);
  CohomologyData cohDg =
      tweaked_cohomology(Dg, policy, diag, "joint_torsion: C_{delta g}", tweak, ConeId::cone_delta_g);
  CohomologyData cohDf =
      tweaked_cohomology(Df, policy, diag, "joint_torsion: C_{delta f}", tweak, ConeId::cone_delta_f);

  LogComplex s_g =
      torsion_iso(six_term(Cf, Cf, delta_g, Dg, cohCf, cohCf, cohDg), policy, diag);
  LogComplex s_f =
      torsion_iso(six_term(Cg, Cg, delta_f, Df, cohCg, cohCg, cohDf), policy, diag);

  DegreeMap phi = phi_map(X, Dg);
  double dphi = cochain_defect(Dg, Df, phi);
  if (dphi > 1e-8 * (1.0 + scale))
    throw NumericalError("joint_torsion: comparison map failed the cochain check");

  LogComplex s_phi = LogComplex::one();
  for (int k = Dg.min_degree; k <= Dg.max_degree(); ++k) {
    if (cohDg.h_at(k) != cohDf.h_at(k))
      throw NumericalError("joint_torsion: cone cohomologies disagree in dimension");
    if (cohDg.h_at(k) == 0) continue;
    Matrix m = coords_in(cohDf.reps_at(k), phi.at(k, Dg, Df) * cohDg.reps_at(k));
    LogComplex d = det_log(m);
    s_phi = (k % 2 == 0) ? s_phi * d : s_phi / d;
  }

  return s_phi * s_g / s_f;
}

LogComplex lefschetz(const CochainComplex& X, const DegreeMap& f, const RankPolicy& policy,
                     Diagnostics* diag) {
  validate_complex(X);
  double scale = 1.0;
  for (const auto& m : f.comp) scale = std::max(scale, m.norm());
  double defect = cochain_defect(X, X, f);
  if (defect > 1e-8 * scale)
    throw ValidationError("lefschetz: not a cochain map");

  CohomologyData coh = cohomology(X, policy, diag, "lefschetz");
  LogComplex num = LogComplex::one(), den = LogComplex::one();
  for (int k = X.min_degree; k <= X.max_degree(); ++k) {
    if (coh.h_at(k) == 0) continue;
    Matrix m = induced_on_H(X, X, f, coh, coh, k);
    double cond = condition_of(m);
    if (cond > 1e8) {
      std::ostringstream os;
      os << "induced map on cohomology degree " << k << " has condition number " << cond;
      diag_warn(diag, "lefschetz", os.str());
    }
    LogComplex d;
    try {
      d = det_log(m);
    } catch (const NumericalError&) {
      throw NumericalError("Lefschetz undefined: induced map on cohomology is singular");
    }
    if (k % 2 == 0)
      num = num * d;
    else
      den = den * d;
  }
  return num / den;
}

LogComplex joint_torsion_nonsingular(const std::vector<Matrix>& A,
                                     const std::vector<MultiPolynomial>& h,
                                     const MultiPolynomial& f, const MultiPolynomial& g,
                                     const RankPolicy& policy, Diagnostics* diag) {
  const int n = static_cast<int>(A.size());
  if (static_cast<int>(h.size()) != n - 1)
    throw ValidationError("joint_torsion_nonsingular: need n-1 base polynomials for an n-tuple");
  for (const auto& p : h)
    if (p.nvars != n) throw ValidationError("joint_torsion_nonsingular: base polynomial arity");
  if (f.nvars != n || g.nvars != n)
    throw ValidationError("joint_torsion_nonsingular: polynomial arity mismatch");

  std::vector<Matrix> hm;
  hm.reserve(h.size());
  for (const auto& p : h) hm.push_back(eval_matrix(p, A));
  Matrix fm = eval_matrix(f, A);
  Matrix gm = eval_matrix(g, A);

  std::vector<Matrix> all = hm;
  all.push_back(fm);
  all.push_back(gm);
  CochainComplex Kall = build_koszul(all);
  if (!cohomology(Kall, policy, diag, "joint_torsion_nonsingular: K(h,f,g)").acyclic())
    throw ValidationError(
        "joint_torsion_nonsingular: K(h,f,g) is not acyclic (the triple has a common zero on the "
        "spectrum); use the perturbation-limit procedure of the tame-symbol module instead");

  std::vector<Matrix> hg = hm;
  hg.push_back(gm);
  CochainComplex Kg = build_koszul(hg);
  DegreeMap act_f = koszul_module_action(hg, fm, Kg);
  LogComplex Mf = lefschetz(Kg, act_f, policy, diag);

  std::vector<Matrix> hf = hm;
  hf.push_back(fm);
  CochainComplex Kf = build_koszul(hf);
  DegreeMap act_g = koszul_module_action(hf, gm, Kf);
  LogComplex Mg = lefschetz(Kf, act_g, policy, diag);

  return Mf / Mg;
}

LogComplex transition_number(const std::vector<Matrix>& A, const std::vector<MultiPolynomial>& g,
                             int i, int j, const RankPolicy& policy, Diagnostics* diag) {
  const int m = static_cast<int>(g.size());
  if (i < 0 || i >= m || j < 0 || j >= m)
    throw ValidationError("transition_number: index out of range");
  const int n = static_cast<int>(A.size());
  for (const auto& p : g)
    if (p.nvars != n) throw ValidationError("transition_number: polynomial arity mismatch");

  std::vector<Matrix> rest;
  for (int t = 0; t < m; ++t)
    if (t != i && t != j) rest.push_back(eval_matrix(g[static_cast<std::size_t>(t)], A));

  Matrix gi = eval_matrix(g[static_cast<std::size_t>(i)], A);
  Matrix gj = eval_matrix(g[static_cast<std::size_t>(j)], A);

  CochainComplex X;
  DegreeMap fmap, gmap;
  if (rest.empty()) {
    X.min_degree = 0;
    X.dims = {static_cast<int>(A[0].rows())};
    fmap.min_degree = 0;
    fmap.comp = {gi};
    gmap.min_degree = 0;
    gmap.comp = {gj};
  } else {
    X = build_koszul(rest);
    fmap = koszul_module_action(rest, gi, X);
    gmap = koszul_module_action(rest, gj, X);
  }
  return joint_torsion(X, fmap, gmap, policy, diag);
}

}  // namespace torsion_lab
