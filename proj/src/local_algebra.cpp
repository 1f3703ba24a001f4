#include "torsion_lab/local_algebra.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace torsion_lab {

namespace {

std::vector<std::vector<int>> monomials_below(int nvars, int bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
  std::function<void(int, int)> rec = [&](int var, int used) {
    if (var == nvars) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e + used < bound; ++e) {
      cur[static_cast<std::size_t>(var)] = e;
      rec(var + 1, used + e);
    }
    cur[static_cast<std::size_t>(var)] = 0;
  };
  rec(0, 0);
  return out;
}

/// Codimension of the span of the truncated rows x^alpha * g_i (|alpha| < N)
/// inside the span of monomials of total degree < N.
int truncated_codim(const std::vector<MultiPolynomial>& g, int N, const RankPolicy& policy,
                    Diagnostics* diag) {
  const int n = g[0].nvars;
  auto monos = monomials_below(n, N);
  std::map<std::vector<int>, int> col;
  for (std::size_t i = 0; i < monos.size(); ++i) col[monos[i]] = static_cast<int>(i);
  const int cols = static_cast<int>(monos.size());

  Matrix M = Matrix::Zero(static_cast<int>(g.size()) * cols, cols);
  int r = 0;
  for (const auto& p : g) {
    for (const auto& alpha : monos) {
      for (const auto& [e, c] : p.terms) {
        std::vector<int> t(e);
        int deg = 0;
        for (int v = 0; v < n; ++v) {
          t[static_cast<std::size_t>(v)] += alpha[static_cast<std::size_t>(v)];
          deg += t[static_cast<std::size_t>(v)];
        }
        if (deg < N) M(r, col.at(t)) += c;
      }
      double mx = M.row(r).cwiseAbs().maxCoeff();
      if (mx > 0.0) M.row(r) /= mx;
      ++r;
    }
  }
  int rank = rank_of(M, policy, diag, "multiplicity: truncated ideal");
  return cols - rank;
}

double eval_scale(const MultiPolynomial& p, const std::vector<cd>& z) {
  double s = 0.0;
  for (const auto& [e, c] : p.terms) {
    double t = std::abs(c);
    for (int v = 0; v < p.nvars; ++v)
      t *= std::pow(std::abs(z[static_cast<std::size_t>(v)]), e[static_cast<std::size_t>(v)]);
    s += t;
  }
  return s;
}

/// Dense coefficients in the free variable of a bivariate polynomial after
/// fixing the other variable; scale_out receives the largest term magnitude
/// before cancellation.
std::vector<cd> restrict_fiber(const MultiPolynomial& p, int fixed_var, cd value,
                               double* scale_out) {
  const int other = 1 - fixed_var;
  int d = std::max(p.degree_in(other), 0);
  std::vector<cd> coeffs(static_cast<std::size_t>(d + 1), cd(0.0, 0.0));
  double scale = 0.0;
  for (const auto& [e, c] : p.terms) {
    cd term = c * std::pow(value, e[static_cast<std::size_t>(fixed_var)]);
    coeffs[static_cast<std::size_t>(e[static_cast<std::size_t>(other)])] += term;
    scale = std::max(scale, std::abs(term));
  }
  if (scale_out) *scale_out = scale;
  return coeffs;
}

struct Polished {
  std::vector<cd> z;
  double residual = 0.0;
  double scale = 1.0;
};

Polished polish(const std::vector<MultiPolynomial>& g,
                const std::vector<std::vector<MultiPolynomial>>& jac, std::vector<cd> z) {
  const int n = static_cast<int>(g.size());
  for (int it = 0; it < 60; ++it) {
    Vector val(n);
    for (int i = 0; i < n; ++i) val(i) = eval(g[static_cast<std::size_t>(i)], z);
    Matrix J(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        J(i, j) = eval(jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], z);
    Eigen::FullPivLU<Matrix> lu(J);
    if (lu.rank() < n) break;
    Vector step = lu.solve((-val).eval());
    double zn = 0.0;
    for (const cd& c : z) zn += std::norm(c);
    zn = std::sqrt(zn);
    double sn = step.norm();
    if (sn > 0.5 * (1.0 + zn)) break;  // diverging step: keep the current point
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] += step(i);
    if (sn <= 1e-14 * (1.0 + zn)) break;
  }
  Polished out;
  out.z = z;
  for (int i = 0; i < n; ++i) {
    out.residual = std::max(out.residual, std::abs(eval(g[static_cast<std::size_t>(i)], z)));
    out.scale = std::max(out.scale, eval_scale(g[static_cast<std::size_t>(i)], z));
  }
  return out;
}

double point_dist(const std::vector<cd>& a, const std::vector<cd>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

/// Single-linkage clusters; each output is the member list of one cluster.
std::vector<std::vector<std::vector<cd>>> cluster_points(
    const std::vector<std::vector<cd>>& pts, double tol) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (point_dist(pts[i], pts[j]) <= tol) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<std::vector<cd>>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(pts[i]);
  std::vector<std::vector<std::vector<cd>>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

std::vector<cd> cluster_mean(const std::vector<std::vector<cd>>& members) {
  std::vector<cd> m(members[0].size(), cd(0.0, 0.0));
  for (const auto& p : members)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += p[i];
  for (auto& c : m) c /= static_cast<double>(members.size());
  return m;
}

bool lex_less(const ZeroPoint& a, const ZeroPoint& b) {
  for (std::size_t i = 0; i < a.point.size(); ++i) {
    if (a.point[i].real() != b.point[i].real()) return a.point[i].real() < b.point[i].real();
    if (a.point[i].imag() != b.point[i].imag()) return a.point[i].imag() < b.point[i].imag();
  }
  return false;
}

std::vector<cd> pure_var_coeffs(const MultiPolynomial& p, int var) {
  std::vector<cd> cf(static_cast<std::size_t>(std::max(p.degree_in(var), 0) + 1), cd(0.0, 0.0));
  for (const auto& [e, c] : p.terms) cf[static_cast<std::size_t>(e[static_cast<std::size_t>(var)])] += c;
  return cf;
}

}  // namespace

int multiplicity(const std::vector<MultiPolynomial>& g, const std::vector<cd>& lambda,
                 const RankPolicy& policy, Diagnostics* diag) {
  const int n = static_cast<int>(g.size());
  if (n == 0) throw ValidationError("multiplicity: empty system");
  for (const auto& p : g)
    if (p.nvars != n)
      throw ValidationError("multiplicity: system must be square (#variables == #equations)");
  if (static_cast<int>(lambda.size()) != n)
    throw ValidationError("multiplicity: point arity does not match the system");

  std::vector<MultiPolynomial> s;
  s.reserve(g.size());
  for (const auto& p : g) {
    MultiPolynomial q = shift_poly(p, lambda);
    double m = q.max_coeff_mag();
    if (m == 0.0)
      throw NumericalError("multiplicity: zero not isolated (an equation vanishes identically)");
    q = cd(1.0 / m, 0.0) * q;
    s.push_back(q);
  }
  // Coefficients are normalized to max magnitude 1; a decidedly nonzero value
  // at the point means multiplicity 0.
  for (const auto& q : s) {
    auto it = q.terms.find(std::vector<int>(static_cast<std::size_t>(n), 0));
    double c0 = it == q.terms.end() ? 0.0 : std::abs(it->second);
    if (c0 > 1e-8) return 0;
  }

  constexpr int kMaxOrder = 30;
  int prev2 = -1, prev1 = -2;
  for (int N = 1; N <= kMaxOrder; ++N) {
    int d = truncated_codim(s, N, policy, diag);
    if (d == prev1 && d == prev2) return d;
    prev2 = prev1;
    prev1 = d;
  }
  throw NumericalError(
      "multiplicity: no stabilization by truncation order 30 (zero not isolated or multiplicity "
      "too large)");
}

ZeroSet solve_system(const std::vector<MultiPolynomial>& g, const std::vector<cd>& center,
                     double radius, const RankPolicy& policy, Diagnostics* diag) {
  const int n = static_cast<int>(g.size());
  if (n < 1 || n > 2)
    throw ValidationError("solve_system: only systems in one or two variables are supported");
  for (const auto& p : g)
    if (p.nvars != n)
      throw ValidationError("solve_system: system must be square (#variables == #equations)");
  if (static_cast<int>(center.size()) != n)
    throw ValidationError("solve_system: region center arity does not match the system");
  if (!(radius > 0.0)) throw ValidationError("solve_system: region radius must be positive");

  const double band = 1e-6 * (1.0 + radius);
  const double cluster_tol = 1e-6 * (1.0 + radius);

  std::vector<std::vector<MultiPolynomial>> jac(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      jac[static_cast<std::size_t>(i)].push_back(differentiate(g[static_cast<std::size_t>(i)], j));

  std::vector<std::vector<cd>> candidates;

  if (n == 1) {
    const MultiPolynomial& p = g[0];
    if (p.max_coeff_mag() == 0.0)
      throw ValidationError(
          "solve_system: system not zero-dimensional in region (equation vanishes identically)");
    if (p.total_degree() <= 0) return {};
    for (cd r : poly_roots(uni_coeffs(p))) candidates.push_back({r});
  } else {
    const bool z0 = g[0].max_coeff_mag() == 0.0;
    const bool z1 = g[1].max_coeff_mag() == 0.0;
    if (z0 || z1) {
      const MultiPolynomial& other = z0 ? g[1] : g[0];
      if (!z0 || !z1) {
        if (other.total_degree() <= 0 && other.max_coeff_mag() > 0.0) return {};
      }
      throw ValidationError("solve_system: system not zero-dimensional in region");
    }

    const int d0 = g[0].degree_in(1);
    const int d1 = g[1].degree_in(1);
    std::vector<cd> xs;
    if (d0 >= 1 && d1 >= 1) {
      MultiPolynomial R = resultant(g[0], g[1], 1);
      if (R.max_coeff_mag() == 0.0)
        throw ValidationError(
            "solve_system: system not zero-dimensional in region (resultant vanishes "
            "identically)");
      if (R.total_degree() >= 1) xs = poly_roots(uni_coeffs(R));
    } else {
      const MultiPolynomial& px = d0 <= 0 ? g[0] : g[1];
      if (px.total_degree() <= 0) return {};
      xs = poly_roots(pure_var_coeffs(px, 0));
      if (d0 <= 0 && d1 <= 0) {
        // Both equations involve only x: any common root gives a vertical line.
        const MultiPolynomial& qx = (&px == &g[0]) ? g[1] : g[0];
        for (cd a : xs) {
          std::vector<cd> at = {a, center[1]};
          if (std::abs(eval(qx, at)) <= 1e-8 * (1.0 + eval_scale(qx, at)) &&
              std::abs(a - center[0]) < radius + band)
            throw ValidationError("solve_system: system not zero-dimensional in region");
        }
        return {};
      }
    }

    const int first = d0 >= d1 ? 0 : 1;
    for (cd a : xs) {
      // 0: usable polynomial fiber; 1: fiber vanishes identically; 2: nonzero
      // with no roots in y
      auto classify = [&](int idx, std::vector<cd>& coeffs) -> int {
        if (g[static_cast<std::size_t>(idx)].degree_in(1) <= 0) {
          std::vector<cd> at = {a, cd(0.0, 0.0)};
          double s = eval_scale(g[static_cast<std::size_t>(idx)], at);
          return std::abs(eval(g[static_cast<std::size_t>(idx)], at)) <= 1e-10 * (s + 1e-300) ? 1
                                                                                             : 2;
        }
        double scale = 0.0;
        coeffs = restrict_fiber(g[static_cast<std::size_t>(idx)], 0, a, &scale);
        double mx = 0.0;
        for (const cd& c : coeffs) mx = std::max(mx, std::abs(c));
        if (mx <= 1e-10 * (scale + 1e-300)) return 1;
        return coeffs.size() > 1 ? 0 : 2;
      };
      std::vector<cd> fc1, fc2;
      int s1 = classify(first, fc1);
      int s2 = classify(1 - first, fc2);
      if (s1 == 0)
        for (cd b : poly_roots(fc1)) candidates.push_back({a, b});
      else if (s2 == 0)
        for (cd b : poly_roots(fc2)) candidates.push_back({a, b});
      else if (s1 == 1 && s2 == 1) {
        if (std::abs(a - center[0]) < radius + band)
          throw ValidationError("solve_system: system not zero-dimensional in region");
      }
      // one fiber a nonzero constant: no common zeros over this x
    }
  }

  std::vector<std::vector<cd>> accepted;
  for (auto& cand : candidates) {
    Polished r = polish(g, jac, cand);
    if (r.residual > 1e-7 * r.scale) continue;
    accepted.push_back(r.z);
  }

  ZeroSet out;
  for (const auto& members : cluster_points(accepted, cluster_tol)) {
    std::vector<cd> rep = cluster_mean(members);
    double dist = point_dist(rep, center);
    if (std::abs(dist - radius) < band)
      throw ValidationError(
          "solve_system: zero too close to the region boundary; shrink or move the region");
    if (dist >= radius) continue;
    ZeroPoint zp;
    zp.point = rep;
    if (n == 1) {
      zp.multiplicity = static_cast<int>(members.size());
    } else {
      zp.multiplicity = multiplicity(g, rep, policy, diag);
      if (zp.multiplicity == 0) {
        diag_warn(diag, "solve_system",
                  "candidate zero passed the residual filter but has local multiplicity 0; "
                  "dropping it");
        continue;
      }
    }
    out.push_back(std::move(zp));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace torsion_lab
