#include "torsion_lab/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <sstream>

namespace torsion_lab {

MultiPolynomial mp_zero(int nvars) {
  MultiPolynomial p;
  p.nvars = nvars;
  return p;
}

MultiPolynomial mp_const(int nvars, cd c) {
  MultiPolynomial p;
  p.nvars = nvars;
  if (c != cd(0.0, 0.0)) p.terms[std::vector<int>(static_cast<std::size_t>(nvars), 0)] = c;
  return p;
}

MultiPolynomial mp_var(int nvars, int var) {
  if (var < 0 || var >= nvars) throw ValidationError("mp_var: variable index out of range");
  MultiPolynomial p;
  p.nvars = nvars;
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(var)] = 1;
  p.terms[e] = cd(1.0, 0.0);
  return p;
}

static void check_same_vars(const MultiPolynomial& a, const MultiPolynomial& b) {
  if (a.nvars != b.nvars) throw ValidationError("polynomial variable-count mismatch");
}

MultiPolynomial operator+(const MultiPolynomial& a, const MultiPolynomial& b) {
  check_same_vars(a, b);
  MultiPolynomial r = a;
  for (const auto& [e, c] : b.terms) r.terms[e] += c;
  r.normalize();
  return r;
}

MultiPolynomial operator-(const MultiPolynomial& a, const MultiPolynomial& b) {
  check_same_vars(a, b);
  MultiPolynomial r = a;
  for (const auto& [e, c] : b.terms) r.terms[e] -= c;
  r.normalize();
  return r;
}

MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b) {
  check_same_vars(a, b);
  MultiPolynomial r;
  r.nvars = a.nvars;
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.terms[e] += ca * cb;
    }
  }
  r.normalize();
  return r;
}

MultiPolynomial operator*(cd s, const MultiPolynomial& a) {
  MultiPolynomial r;
  r.nvars = a.nvars;
  if (s == cd(0.0, 0.0)) return r;
  for (const auto& [e, c] : a.terms) r.terms[e] = s * c;
  return r;
}

cd eval(const MultiPolynomial& p, const std::vector<cd>& point) {
  if (static_cast<int>(point.size()) != p.nvars)
    throw ValidationError("eval: point dimension does not match variable count");
  if (p.terms.empty()) return cd(0.0, 0.0);
  if (p.nvars == 1) {
    // Horner on dense ascending coefficients.
    auto c = uni_coeffs(p);
    cd acc(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * point[0] + c[i];
    return acc;
  }
  // Group by the exponent of the last variable, Horner over that variable.
  int last = p.nvars - 1;
  int dmax = p.degree_in(last);
  std::vector<MultiPolynomial> layers(static_cast<std::size_t>(dmax + 1), mp_zero(p.nvars - 1));
  for (const auto& [e, c] : p.terms) {
    std::vector<int> sub(e.begin(), e.end() - 1);
    layers[static_cast<std::size_t>(e.back())].terms[sub] += c;
  }
  std::vector<cd> subpoint(point.begin(), point.end() - 1);
  cd acc(0.0, 0.0);
  for (std::size_t i = layers.size(); i-- > 0;) acc = acc * point.back() + eval(layers[i], subpoint);
  return acc;
}

MultiPolynomial differentiate(const MultiPolynomial& p, int var) {
  if (var < 0 || var >= p.nvars) throw ValidationError("differentiate: variable out of range");
  MultiPolynomial r;
  r.nvars = p.nvars;
  for (const auto& [e, c] : p.terms) {
    int a = e[static_cast<std::size_t>(var)];
    if (a == 0) continue;
    std::vector<int> e2 = e;
    e2[static_cast<std::size_t>(var)] = a - 1;
    r.terms[e2] += static_cast<double>(a) * c;
  }
  r.normalize();
  return r;
}

MultiPolynomial shift_poly(const MultiPolynomial& p, const std::vector<cd>& lambda) {
  if (static_cast<int>(lambda.size()) != p.nvars)
    throw ValidationError("shift_poly: shift dimension does not match variable count");
  MultiPolynomial r;
  r.nvars = p.nvars;
  for (const auto& [e, c] : p.terms) {
    // Expand c * prod_i (x_i + lambda_i)^{e_i}.
    std::vector<std::pair<std::vector<int>, cd>> acc = {{std::vector<int>(e.size(), 0), c}};
    for (std::size_t i = 0; i < e.size(); ++i) {
      int a = e[i];
      if (a == 0) continue;
      // binomial row for (x + lambda_i)^a, ascending in the power of x
      std::vector<cd> row(static_cast<std::size_t>(a + 1));
      for (int j = 0; j <= a; ++j) {
        double bc = 1.0;
        for (int t = 0; t < j; ++t) bc = bc * static_cast<double>(a - t) / static_cast<double>(t + 1);
        row[static_cast<std::size_t>(j)] = bc * std::pow(lambda[i], a - j);
      }
      std::vector<std::pair<std::vector<int>, cd>> next;
      next.reserve(acc.size() * row.size());
      for (const auto& [base, coeff] : acc) {
        for (int j = 0; j <= a; ++j) {
          if (row[static_cast<std::size_t>(j)] == cd(0.0, 0.0)) continue;
          std::vector<int> e2 = base;
          e2[i] += j;
          next.emplace_back(std::move(e2), coeff * row[static_cast<std::size_t>(j)]);
        }
      }
      acc = std::move(next);
    }
    for (auto& [e2, coeff] : acc) r.terms[e2] += coeff;
  }
  r.normalize();
  return r;
}

std::vector<cd> uni_coeffs(const MultiPolynomial& p) {
  if (p.nvars != 1) throw ValidationError("uni_coeffs: polynomial is not univariate");
  int d = p.degree_in(0);
  std::vector<cd> c(static_cast<std::size_t>(std::max(d + 1, 1)), cd(0.0, 0.0));
  for (const auto& [e, coeff] : p.terms) c[static_cast<std::size_t>(e[0])] = coeff;
  return c;
}

MultiPolynomial from_uni_coeffs(const std::vector<cd>& coeffs) {
  MultiPolynomial p;
  p.nvars = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != cd(0.0, 0.0)) p.terms[{static_cast<int>(i)}] = coeffs[i];
  p.normalize();
  return p;
}

SyntheticDivision synth_divide(const std::vector<cd>& coeffs, cd x0) {
  SyntheticDivision out;
  if (coeffs.empty()) throw ValidationError("synth_divide: empty coefficient vector");
  if (coeffs.size() == 1) {
    out.remainder = coeffs[0];
    return out;
  }
  out.quotient.assign(coeffs.size() - 1, cd(0.0, 0.0));
  cd carry = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    out.quotient[i] = carry;
    carry = coeffs[i] + carry * x0;
  }
  out.remainder = carry;
  return out;
}

std::vector<cd> poly_roots(const std::vector<cd>& coeffs_in) {
  std::vector<cd> coeffs = coeffs_in;
  double m = 0.0;
  for (cd c : coeffs) m = std::max(m, std::abs(c));
  if (m == 0.0) throw ValidationError("poly_roots: zero polynomial");
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= 1e-12 * m) coeffs.pop_back();
  int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg == 0) return {};
  cd lead = coeffs.back();
  Matrix C = Matrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) C(i, i - 1) = cd(1.0, 0.0);
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Matrix> es(C, false);
  if (es.info() != Eigen::Success) throw NumericalError("poly_roots: eigenvalue iteration failed");
  std::vector<cd> roots(static_cast<std::size_t>(deg));
  for (int i = 0; i < deg; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return roots;
}

Matrix eval_matrix(const MultiPolynomial& p, const std::vector<Matrix>& A) {
  if (static_cast<int>(A.size()) != p.nvars)
    throw ValidationError("eval_matrix: tuple size does not match variable count");
  if (A.empty()) throw ValidationError("eval_matrix: empty tuple");
  Eigen::Index dim = A[0].rows();
  // Power tables per variable.
  std::vector<std::vector<Matrix>> pow(A.size());
  for (std::size_t j = 0; j < A.size(); ++j) {
    int dmax = p.degree_in(static_cast<int>(j));
    pow[j].push_back(Matrix::Identity(dim, dim));
    for (int t = 1; t <= dmax; ++t) pow[j].push_back(pow[j].back() * A[j]);
  }
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& [e, c] : p.terms) {
    Matrix term = Matrix::Identity(dim, dim);
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] > 0) term = term * pow[j][static_cast<std::size_t>(e[j])];
    out += c * term;
  }
  return out;
}

// ---- resultant ----

namespace {

using UniPoly = std::vector<cd>;  // dense ascending

double upoly_norm(const UniPoly& a) {
  double m = 0.0;
  for (cd c : a) m = std::max(m, std::abs(c));
  return m;
}

bool upoly_is_zero(const UniPoly& a, double scale) {
  for (cd c : a)
    if (std::abs(c) > 1e-12 * scale) return false;
  return true;
}

UniPoly upoly_trim(UniPoly a) {
  while (a.size() > 1 && a.back() == cd(0.0, 0.0)) a.pop_back();
  return a;
}

UniPoly upoly_mul(const UniPoly& a, const UniPoly& b) {
  UniPoly r(a.size() + b.size() - 1, cd(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return upoly_trim(r);
}

UniPoly upoly_sub(const UniPoly& a, const UniPoly& b) {
  UniPoly r(std::max(a.size(), b.size()), cd(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return upoly_trim(r);
}

/// Exact polynomial division a / b; throws when the remainder is not
/// negligible (which would indicate float contamination in the fraction-free
/// elimination).
UniPoly upoly_div_exact(const UniPoly& a_in, const UniPoly& b_in) {
  UniPoly a = upoly_trim(a_in), b = upoly_trim(b_in);
  if (upoly_is_zero(b, 1.0)) throw NumericalError("resultant: division by zero polynomial");
  if (b.size() == 1) {
    UniPoly q = a;
    for (auto& c : q) c /= b[0];
    return q;
  }
  double anorm = upoly_norm(a);
  if (a.size() < b.size()) {
    if (upoly_is_zero(a, anorm + 1.0)) return {cd(0.0, 0.0)};
    throw NumericalError("resultant: non-exact polynomial division");
  }
  UniPoly q(a.size() - b.size() + 1, cd(0.0, 0.0));
  UniPoly r = a;
  for (std::size_t i = q.size(); i-- > 0;) {
    cd f = r[i + b.size() - 1] / b.back();
    q[i] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= f * b[j];
  }
  double rnorm = upoly_norm(r);
  if (rnorm > 1e-7 * (anorm + 1.0))
    throw NumericalError("resultant: non-exact polynomial division");
  return upoly_trim(q);
}

/// Coefficient rows of p in the eliminated variable: entry k is the univariate
/// polynomial (in the kept variable) multiplying elim^k.
std::vector<UniPoly> elim_rows(const MultiPolynomial& p, int elim, int keep) {
  int de = p.degree_in(elim);
  int dk = p.degree_in(keep);
  std::vector<UniPoly> rows(static_cast<std::size_t>(de + 1),
                            UniPoly(static_cast<std::size_t>(std::max(dk + 1, 1)), cd(0.0, 0.0)));
  for (const auto& [e, c] : p.terms)
    rows[static_cast<std::size_t>(e[static_cast<std::size_t>(elim)])]
        [static_cast<std::size_t>(e[static_cast<std::size_t>(keep)])] += c;
  for (auto& r : rows) r = upoly_trim(r);
  return rows;
}

UniPoly sylvester_det_bareiss(std::vector<std::vector<UniPoly>> M) {
  const std::size_t n = M.size();
  int sign = 1;
  UniPoly prev_pivot = {cd(1.0, 0.0)};
  double scale = 0.0;
  for (const auto& row : M)
    for (const auto& e : row) scale = std::max(scale, upoly_norm(e));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // pivot: largest coefficient norm in column k at or below row k
    std::size_t best = k;
    double bestn = upoly_norm(M[k][k]);
    for (std::size_t r = k + 1; r < n; ++r) {
      double nn = upoly_norm(M[r][k]);
      if (nn > bestn) {
        bestn = nn;
        best = r;
      }
    }
    if (bestn <= 1e-13 * (scale + 1.0)) return {cd(0.0, 0.0)};
    if (best != k) {
      std::swap(M[best], M[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        UniPoly num = upoly_sub(upoly_mul(M[k][k], M[i][j]), upoly_mul(M[i][k], M[k][j]));
        M[i][j] = upoly_div_exact(num, prev_pivot);
      }
      M[i][k] = {cd(0.0, 0.0)};
    }
    prev_pivot = M[k][k];
  }
  UniPoly det = M[n - 1][n - 1];
  if (sign < 0)
    for (auto& c : det) c = -c;
  return det;
}

UniPoly sylvester_det_interpolate(const std::vector<UniPoly>& pa, const std::vector<UniPoly>& qa,
                                  int degree_bound) {
  const int dp = static_cast<int>(pa.size()) - 1;
  const int dq = static_cast<int>(qa.size()) - 1;
  const int n = dp + dq;
  const int M = degree_bound + 1;
  constexpr double pi = 3.14159265358979323846;
  std::vector<cd> values(static_cast<std::size_t>(M));
  for (int t = 0; t < M; ++t) {
    cd x = std::polar(1.0, 2.0 * pi * t / M);
    Matrix S = Matrix::Zero(n, n);
    auto eval_row = [&](const UniPoly& r) {
      cd acc(0.0, 0.0);
      for (std::size_t i = r.size(); i-- > 0;) acc = acc * x + r[i];
      return acc;
    };
    for (int r = 0; r < dq; ++r)
      for (int k = 0; k <= dp; ++k) S(r, r + k) = eval_row(pa[static_cast<std::size_t>(k)]);
    for (int r = 0; r < dp; ++r)
      for (int k = 0; k <= dq; ++k) S(dq + r, r + k) = eval_row(qa[static_cast<std::size_t>(k)]);
    values[static_cast<std::size_t>(t)] = S.determinant();
  }
  UniPoly out(static_cast<std::size_t>(M), cd(0.0, 0.0));
  for (int j = 0; j < M; ++j) {
    cd acc(0.0, 0.0);
    for (int t = 0; t < M; ++t)
      acc += values[static_cast<std::size_t>(t)] * std::polar(1.0, -2.0 * pi * j * t / M);
    out[static_cast<std::size_t>(j)] = acc / static_cast<double>(M);
  }
  double m = upoly_norm(out);
  for (auto& c : out)
    if (std::abs(c) <= 1e-10 * m) c = cd(0.0, 0.0);
  return upoly_trim(out);
}

}  // namespace

MultiPolynomial resultant(const MultiPolynomial& p, const MultiPolynomial& q, int eliminate_var) {
  if (p.nvars != 2 || q.nvars != 2)
    throw ValidationError("resultant: expects bivariate polynomials");
  if (eliminate_var < 0 || eliminate_var > 1)
    throw ValidationError("resultant: variable index out of range");
  int keep = 1 - eliminate_var;
  int dp = p.degree_in(eliminate_var);
  int dq = q.degree_in(eliminate_var);
  if (dp <= 0 || dq <= 0)
    throw ValidationError("resultant: input has degree 0 in the eliminated variable");

  auto pa = elim_rows(p, eliminate_var, keep);
  auto qa = elim_rows(q, eliminate_var, keep);
  const int n = dp + dq;

  UniPoly det;
  if (n <= 12) {
    // Sylvester grid with ascending coefficient rows, p-block then q-block.
    std::vector<std::vector<UniPoly>> S(
        static_cast<std::size_t>(n),
        std::vector<UniPoly>(static_cast<std::size_t>(n), UniPoly{cd(0.0, 0.0)}));
    for (int r = 0; r < dq; ++r)
      for (int k = 0; k <= dp; ++k) S[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] =
          pa[static_cast<std::size_t>(k)];
    for (int r = 0; r < dp; ++r)
      for (int k = 0; k <= dq; ++k)
        S[static_cast<std::size_t>(dq + r)][static_cast<std::size_t>(r + k)] =
            qa[static_cast<std::size_t>(k)];
    det = sylvester_det_bareiss(std::move(S));
  } else {
    int bound = dq * std::max(p.degree_in(keep), 0) + dp * std::max(q.degree_in(keep), 0);
    det = sylvester_det_interpolate(pa, qa, std::max(bound, 0));
  }

  MultiPolynomial out = from_uni_coeffs(det);
  out.normalize();
  return out;
}

}  // namespace torsion_lab
