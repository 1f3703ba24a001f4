#include "torsion_lab/tame_symbol.hpp"

#include "torsion_lab/complexes.hpp"
#include "torsion_lab/koszul.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace torsion_lab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kGoldenAngle = 2.0 * kPi * 0.3819660112501051;

cd cpow_int(cd base, long long e) {
  if (e < 0) return 1.0 / cpow_int(base, -e);
  cd r(1.0, 0.0);
  cd b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
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

bool decidedly_zero_at(const MultiPolynomial& p, const std::vector<cd>& z, double rel) {
  return std::abs(eval(p, z)) <= rel * (1.0 + eval_scale(p, z));
}

double dist2(const std::vector<cd>& a, const std::vector<cd>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

/// Trimmed ascending coefficients (drops leading coefficients below rel 1e-12).
std::vector<cd> trimmed_coeffs(const MultiPolynomial& p) {
  std::vector<cd> c = uni_coeffs(p);
  double mx = 0.0;
  for (const cd& v : c) mx = std::max(mx, std::abs(v));
  while (!c.empty() && std::abs(c.back()) <= 1e-12 * mx) c.pop_back();
  return c;
}

struct RootCluster {
  cd rep;
  int count = 0;
};

std::vector<RootCluster> cluster_roots(const std::vector<cd>& roots, double tol) {
  std::vector<RootCluster> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    // single linkage: grow the cluster until no unused root is within tol
    std::vector<std::size_t> members = {i};
    used[i] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (used[j]) continue;
        for (std::size_t m : members)
          if (std::abs(roots[j] - roots[m]) <= tol) {
            members.push_back(j);
            used[j] = true;
            grew = true;
            break;
          }
      }
    }
    cd sum(0.0, 0.0);
    for (std::size_t m : members) sum += roots[m];
    out.push_back({sum / static_cast<double>(members.size()), static_cast<int>(members.size())});
  }
  return out;
}

}  // namespace

LimitSchedule make_limit_schedule(unsigned seed) {
  LimitSchedule s;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
  s.theta = dist(rng);
  return s;
}

cd tame_symbol_local(const SymbolProblem& P, const LimitSchedule& S, const RankPolicy& policy,
                     Diagnostics* diag, SymbolTrace* trace) {
  if (P.h.nvars != 2 || P.f.nvars != 2 || P.g.nvars != 2)
    throw ValidationError("tame_symbol_local: curve and functions must be bivariate");
  if (P.lambda.size() != 2) throw ValidationError("tame_symbol_local: point must lie in C^2");
  if (!(P.eps > 0.0)) throw ValidationError("tame_symbol_local: eps must be positive");
  if (!decidedly_zero_at(P.h, P.lambda, 1e-8))
    throw ValidationError("tame_symbol_local: the point does not lie on the curve");

  // Admissibility: Z(h,f) and Z(h,g) meet the eps-ball only at lambda. The
  // surviving zero values of f also feed the clamp of the starting
  // perturbation magnitude.
  double clamp = S.w0;
  for (const MultiPolynomial* q : {&P.f, &P.g}) {
    ZeroSet zs = solve_system({P.h, *q}, P.lambda, P.eps, policy, diag);
    for (const auto& zp : zs) {
      if (dist2(zp.point, P.lambda) > 1e-6 * (1.0 + P.eps))
        throw ValidationError(
            "tame_symbol_local: another zero of (h,f) or (h,g) lies inside the eps-ball; shrink "
            "eps");
      double fv = std::abs(eval(P.f, zp.point));
      if (fv > 1e-10 * (1.0 + eval_scale(P.f, zp.point))) clamp = std::min(clamp, 0.5 * fv);
    }
  }

  const int m_g = multiplicity({P.h, P.g}, P.lambda, policy, diag);
  const int m_f = multiplicity({P.h, P.f}, P.lambda, policy, diag);
  const cd f_lambda = eval(P.f, P.lambda);

  int conservation_misses = 0;
  std::vector<cd> q_values;

  for (int attempt = 0; attempt <= 8; ++attempt) {
    const double theta = S.theta + attempt * kGoldenAngle;
    q_values.clear();
    bool collision = false;

    for (int k = 0; k < S.max_steps; ++k) {
      const cd w = clamp * std::pow(S.ratio, k) * cd(std::cos(theta), std::sin(theta));
      MultiPolynomial f_w = P.f - mp_const(2, w);

      ZeroSet zs;
      try {
        zs = solve_system({P.h, f_w}, P.lambda, P.eps / 2.0, policy, diag);
      } catch (const ValidationError&) {
        collision = true;  // boundary zero (or degenerate fiber): rotate the direction
        break;
      }

      bool bad = false;
      int total_mult = 0;
      for (const auto& zp : zs) {
        total_mult += zp.multiplicity;
        // Admissibility keeps every other zero of (h,g) outside the eps-ball, so a
        // small g value here can only mean the perturbed zero is sliding into
        // lambda, where g may legitimately vanish; that decay reaches any fixed
        // tolerance once w is small.  Only an exact hit on Z(g) breaks the
        // quotient, so the guard fires at catastrophic magnitude alone.
        if (std::abs(eval(P.g, zp.point)) < 1e-300) bad = true;  // landed on Z(g)
      }
      if (m_g != 0 && m_f == 0 &&
          std::abs(f_lambda - w) <= 1e-12 * (1.0 + std::abs(f_lambda)))
        bad = true;  // w landed on the nonzero value f(lambda)
      if (bad) {
        collision = true;
        break;
      }
      if (total_mult != m_f) ++conservation_misses;

      LogComplex q = m_g != 0 ? LogComplex::from(f_lambda - w).pow_int(m_g) : LogComplex::one();
      for (const auto& zp : zs)
        q = q / LogComplex::from(eval(P.g, zp.point)).pow_int(zp.multiplicity);
      q_values.push_back(q.value());

      const std::size_t s = q_values.size();
      if (s >= 3) {
        cd q0 = q_values[s - 3], q1 = q_values[s - 2], q2 = q_values[s - 1];
        if (std::abs(q2 - q1) <= S.stab_tol * std::abs(q2) &&
            std::abs(q1 - q0) <= S.stab_tol * std::abs(q1)) {
          if (conservation_misses > 0) {
            std::ostringstream os;
            os << "perturbed zero multiplicities missed m(h,f) = " << m_f << " at "
               << conservation_misses << " step(s)";
            diag_warn(diag, "tame_symbol_local", os.str());
          }
          if (trace) {
            trace->q = q_values;
            trace->retries = attempt;
          }
          return q2;
        }
      }
    }

    if (!collision) {
      if (trace) {
        trace->q = q_values;
        trace->retries = attempt;
      }
      std::vector<cd> tail(q_values.end() - std::min<std::size_t>(q_values.size(), 8),
                           q_values.end());
      throw StabilizationError(
          "tame_symbol_local: no stabilization within max_steps; trailing values attached",
          tail);
    }
  }

  if (trace) {
    trace->q = q_values;
    trace->retries = 8;
  }
  throw ValidationError(
      "tame_symbol_local: boundary-zero collision for all tried directions; shrink eps");
}

cd tame_symbol_regular(const MultiPolynomial& f, const MultiPolynomial& g, cd x0) {
  if (f.nvars != 1 || g.nvars != 1)
    throw ValidationError("tame_symbol_regular: expects univariate polynomials");

  auto strip = [&](const MultiPolynomial& p, int& order) -> cd {
    std::vector<cd> c = trimmed_coeffs(p);
    if (c.empty()) throw ValidationError("tame_symbol_regular: polynomial vanishes identically");
    double x0m = std::max(1.0, std::abs(x0));
    order = 0;
    for (;;) {
      double scale = 0.0, pw = 1.0;
      for (const cd& v : c) {
        scale += std::abs(v) * pw;
        pw *= x0m;
      }
      SyntheticDivision sd = synth_divide(c, x0);
      if (std::abs(sd.remainder) > 1e-10 * (scale + 1e-300) || sd.quotient.empty()) {
        return sd.remainder;  // the remainder is the value at x0
      }
      c = sd.quotient;
      ++order;
    }
  };

  int m = 0, k = 0;
  cd phi = strip(f, m);
  cd psi = strip(g, k);
  double sign = (static_cast<long long>(m) * k) % 2 == 0 ? 1.0 : -1.0;
  return sign * cpow_int(phi, k) / cpow_int(psi, m);
}

namespace {

void check_circle(const std::vector<cd>& roots, const char* which) {
  for (cd r : roots)
    if (std::abs(std::abs(r) - 1.0) < 1e-9) {
      std::ostringstream os;
      os << which << " has a zero within 1e-9 of the unit circle";
      throw ValidationError(os.str());
    }
}

}  // namespace

cd joint_torsion_global(const DiscModelProblem& P, Diagnostics* diag) {
  if (P.f.nvars != 1 || P.g.nvars != 1)
    throw ValidationError("joint_torsion_global: disc model expects univariate polynomials");
  std::vector<cd> fc = trimmed_coeffs(P.f), gc = trimmed_coeffs(P.g);
  if (fc.empty() || gc.empty())
    throw ValidationError("joint_torsion_global: polynomial vanishes identically");

  std::vector<cd> rf = poly_roots(fc), rg = poly_roots(gc);
  check_circle(rf, "f");
  check_circle(rg, "g");

  std::vector<cd> all = rf;
  all.insert(all.end(), rg.begin(), rg.end());
  double spread = 1.0;
  for (cd r : all) spread = std::max(spread, std::abs(r));
  LogComplex acc = LogComplex::one();
  for (const RootCluster& c : cluster_roots(all, 1e-5 * spread)) {
    if (std::abs(c.rep) >= 1.0) continue;
    cd local = tame_symbol_regular(P.f, P.g, c.rep);
    acc = acc * LogComplex::from(local);  // Ind = 1 inside the disc (model constant)
  }
  (void)diag;
  return acc.value();
}

cd joint_torsion_global(const std::vector<Matrix>& A, const std::vector<MultiPolynomial>& h,
                        const MultiPolynomial& f, const MultiPolynomial& g,
                        const RankPolicy& policy, Diagnostics* diag) {
  const int n = static_cast<int>(A.size());
  if (static_cast<int>(h.size()) != n - 1)
    throw ValidationError("joint_torsion_global: need n-1 curve equations for an n-tuple");
  for (const auto& p : h)
    if (p.nvars != n) throw ValidationError("joint_torsion_global: curve equation arity");
  if (f.nvars != n || g.nvars != n)
    throw ValidationError("joint_torsion_global: function arity mismatch");

  LogComplex acc = LogComplex::one();
  for (const JointEigenvalue& ev : joint_eigenvalues(A, policy, diag)) {
    bool on_curve = true;
    for (const auto& p : h)
      if (!decidedly_zero_at(p, ev.lambda, 1e-8)) on_curve = false;
    if (!on_curve) continue;
    if (!decidedly_zero_at(f, ev.lambda, 1e-8) && !decidedly_zero_at(g, ev.lambda, 1e-8))
      continue;
    int ind = koszul_index_at(A, ev.lambda, policy, diag);
    if (ind == 0) continue;  // exponent-0 factor is exactly 1
    throw NumericalError(
        "joint_torsion_global: nonzero index at a joint eigenvalue is outside the "
        "finite-dimensional model");
  }
  return acc.value();
}

cd carey_pincus(const DiscModelProblem& P, Diagnostics* diag) {
  if (P.f.nvars != 1 || P.g.nvars != 1)
    throw ValidationError("carey_pincus: expects univariate polynomials");
  std::vector<cd> fc = trimmed_coeffs(P.f), gc = trimmed_coeffs(P.g);
  if (fc.empty() || gc.empty())
    throw ValidationError("carey_pincus: polynomial vanishes identically");

  std::vector<cd> rf = poly_roots(fc), rg = poly_roots(gc);
  check_circle(rf, "f");
  check_circle(rg, "g");

  double spread = 1.0;
  for (cd r : rf) spread = std::max(spread, std::abs(r));
  for (cd r : rg) spread = std::max(spread, std::abs(r));
  const double tol = 1e-5 * spread;

  std::vector<cd> all = rf;
  all.insert(all.end(), rg.begin(), rg.end());

  LogComplex acc = LogComplex::one();
  for (const RootCluster& c : cluster_roots(all, tol)) {
    if (std::abs(c.rep) >= 1.0) continue;
    int m_f = 0, m_g = 0;
    // phi, psi drop the root factors at this cluster; evaluated via the
    // root-product form f = lc * prod (z - r)
    cd phi = fc.back(), psi = gc.back();
    for (cd r : rf) {
      if (std::abs(r - c.rep) <= tol)
        ++m_f;
      else
        phi *= c.rep - r;
    }
    for (cd r : rg) {
      if (std::abs(r - c.rep) <= tol)
        ++m_g;
      else
        psi *= c.rep - r;
    }
    LogComplex factor = LogComplex::one();
    if (m_g != 0) factor = factor * LogComplex::from(phi).pow_int(m_g);
    if (m_f != 0) factor = factor / LogComplex::from(psi).pow_int(m_f);
    if ((static_cast<long long>(m_f) * m_g) % 2 != 0)
      factor = factor * LogComplex::from(cd(-1.0, 0.0));
    acc = acc * factor;
  }
  (void)diag;
  return acc.value();
}

int noether_index(const MultiPolynomial& f, Diagnostics* diag) {
  if (f.nvars != 1) throw ValidationError("noether_index: expects a univariate polynomial");
  std::vector<cd> fc = trimmed_coeffs(f);
  if (fc.empty()) throw ValidationError("noether_index: polynomial vanishes identically");

  MultiPolynomial fd = differentiate(f, 0);
  constexpr int N = 4096;
  cd sum(0.0, 0.0);
  double scale = 0.0;
  for (const cd& c : fc) scale += std::abs(c);
  for (int t = 0; t < N; ++t) {
    cd z = std::polar(1.0, 2.0 * kPi * t / N);
    cd fv = eval(f, {z});
    if (std::abs(fv) <= 1e-12 * (scale + 1e-300))
      throw NumericalError("noether_index: near-circle zero (f vanishes on a quadrature node)");
    sum += eval(fd, {z}) * z / fv;
  }
  double w = (sum / static_cast<double>(N)).real();
  double rounded = std::round(w);
  if (std::abs(w - rounded) > 0.1)
    throw NumericalError("noether_index: quadrature farther than 0.1 from an integer "
                         "(near-circle zero)");

  int inside = 0;
  for (cd r : poly_roots(fc))
    if (std::abs(r) < 1.0) ++inside;
  if (static_cast<int>(rounded) != inside)
    throw NumericalError("noether_index: winding quadrature disagrees with the root count");
  (void)diag;
  return -static_cast<int>(rounded);
}

AxiomsReport symbol_axioms_check(const MultiPolynomial& h, const MultiPolynomial& f1,
                                 const MultiPolynomial& f2, const MultiPolynomial& f3,
                                 const MultiPolynomial& t, const std::vector<cd>& lambda,
                                 double eps, const LimitSchedule& S, const RankPolicy& policy,
                                 Diagnostics* diag) {
  auto sym = [&](const MultiPolynomial& a, const MultiPolynomial& b) {
    SymbolProblem P{h, a, b, lambda, eps};
    return tame_symbol_local(P, S, policy, diag);
  };

  AxiomsReport r;
  cd c12 = sym(f1, f2);
  cd c21 = sym(f2, f1);
  cd c13 = sym(f1, f3);
  cd c123 = sym(f1, f2 * f3);
  MultiPolynomial one_minus_t = mp_const(2, cd(1.0, 0.0)) - t;
  r.antisymmetry = c12 * c21;
  r.multiplicativity = c123 / (c12 * c13);
  r.steinberg = sym(t, one_minus_t);
  r.max_deviation = std::max({std::abs(r.antisymmetry - 1.0), std::abs(r.multiplicativity - 1.0),
                              std::abs(r.steinberg - 1.0)});
  return r;
}

}  // namespace torsion_lab
