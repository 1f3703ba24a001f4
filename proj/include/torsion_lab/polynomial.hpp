#pragma once

#include "torsion_lab/types.hpp"

#include <map>
#include <vector>

namespace torsion_lab {

/// Multivariate polynomial with complex coefficients, stored sparsely as
/// exponent-vector -> coefficient. Canonical form: exponent vectors of length
/// nvars, no duplicate keys, and coefficients below kPruneRel times the largest
/// magnitude removed by normalize().
struct MultiPolynomial {
  static constexpr double kPruneRel = 1e-14;

  int nvars = 1;
  std::map<std::vector<int>, cd> terms;

  double max_coeff_mag() const {
    double m = 0.0;
    for (const auto& [e, c] : terms) m = std::max(m, std::abs(c));
    return m;
  }

  void normalize() {
    double cutoff = kPruneRel * max_coeff_mag();
    for (auto it = terms.begin(); it != terms.end();) {
      if (std::abs(it->second) <= cutoff)
        it = terms.erase(it);
      else
        ++it;
    }
  }

  bool is_zero() const { return terms.empty(); }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  int degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms) d = std::max(d, e[static_cast<std::size_t>(var)]);
    return d;
  }
};

MultiPolynomial mp_zero(int nvars);
MultiPolynomial mp_const(int nvars, cd c);
MultiPolynomial mp_var(int nvars, int var);

MultiPolynomial operator+(const MultiPolynomial& a, const MultiPolynomial& b);
MultiPolynomial operator-(const MultiPolynomial& a, const MultiPolynomial& b);
MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b);
MultiPolynomial operator*(cd s, const MultiPolynomial& a);

/// Horner-scheme evaluation (recursing over the last variable).
cd eval(const MultiPolynomial& p, const std::vector<cd>& point);

/// Partial derivative.
MultiPolynomial differentiate(const MultiPolynomial& p, int var);

/// Composition with the translation z -> z + lambda (binomial expansion).
MultiPolynomial shift_poly(const MultiPolynomial& p, const std::vector<cd>& lambda);

/// Dense ascending coefficients of a univariate polynomial (index = exponent).
std::vector<cd> uni_coeffs(const MultiPolynomial& p);
MultiPolynomial from_uni_coeffs(const std::vector<cd>& coeffs);

/// Quotient and remainder of division by (z - x0) via synthetic division.
struct SyntheticDivision {
  std::vector<cd> quotient;
  cd remainder;
};
SyntheticDivision synth_divide(const std::vector<cd>& coeffs, cd x0);

/// Roots (with multiplicity, unclustered) of a univariate polynomial via the
/// companion matrix of its monic normalization. Leading coefficients below
/// rel. 1e-12 of the largest are treated as zero first.
std::vector<cd> poly_roots(const std::vector<cd>& coeffs);

/// p(A_1, ..., A_n) for a commuting tuple of square matrices.
Matrix eval_matrix(const MultiPolynomial& p, const std::vector<Matrix>& A);

/// Resultant of two bivariate polynomials with respect to the eliminated
/// variable, as a univariate polynomial in the kept variable.
///
/// Convention: the Sylvester matrix is assembled from ascending coefficient
/// rows, the p-block (deg_elim q rows) above the q-block (deg_elim p rows);
/// the resultant is its determinant. The determinant is expanded fraction-free
/// (Bareiss) for Sylvester sizes <= 12 and by interpolation on unit-circle
/// nodes above that.
MultiPolynomial resultant(const MultiPolynomial& p, const MultiPolynomial& q, int eliminate_var);

}  // namespace torsion_lab
