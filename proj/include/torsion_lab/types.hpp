#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace torsion_lab {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical rank decisions: a singular value counts toward the rank when it
/// exceeds max(rel * sigma_max, abs_floor).
struct RankPolicy {
  double rel = 1e-8;
  double abs_floor = 1e-12;
};

enum class Severity { info, warning, error };

struct Diagnostic {
  Severity severity;
  std::string where;
  std::string message;
  std::vector<cd> data;  // optional numeric payload (limit tails, traces)
};

/// Sink for structured messages; passing nullptr anywhere a Diagnostics* is
/// accepted silently drops the messages.
struct Diagnostics {
  std::vector<Diagnostic> items;

  void add(Severity s, std::string where, std::string message) {
    items.push_back({s, std::move(where), std::move(message), {}});
  }
  bool has(Severity s) const {
    for (const auto& it : items)
      if (it.severity == s) return true;
    return false;
  }
  bool has_warning() const { return has(Severity::warning); }
  bool has_error() const { return has(Severity::error); }
};

inline void diag_info(Diagnostics* d, const std::string& where, const std::string& msg) {
  if (d) d->add(Severity::info, where, msg);
}
inline void diag_warn(Diagnostics* d, const std::string& where, const std::string& msg) {
  if (d) d->add(Severity::warning, where, msg);
}

/// Input or precondition failure (CLI exit code 2).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Computation failed numerically (CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A limit procedure did not stabilize (CLI exit code 4). Carries the trailing
/// value sequence for reporting.
struct StabilizationError : std::runtime_error {
  std::vector<cd> tail;
  StabilizationError(const std::string& msg, std::vector<cd> tail_values)
      : std::runtime_error(msg), tail(std::move(tail_values)) {}
};

/// Nonzero complex scalar stored as log-magnitude plus phase so that long
/// products of extreme factors neither overflow nor underflow.
struct LogComplex {
  double log_mag = 0.0;  // natural log of |z|
  double phase = 0.0;    // arg(z), kept in (-pi, pi]

  static LogComplex one() { return {0.0, 0.0}; }

  static LogComplex from(cd z) {
    double m = std::abs(z);
    if (m == 0.0 || !std::isfinite(m))
      throw NumericalError("LogComplex: zero or non-finite scalar");
    return {std::log(m), std::arg(z)};
  }

  cd value() const { return std::exp(log_mag) * cd(std::cos(phase), std::sin(phase)); }

  static double wrap(double a) {
    constexpr double pi = 3.14159265358979323846;
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi) a += 2.0 * pi;
    if (a > pi) a -= 2.0 * pi;
    return a;
  }

  LogComplex operator*(const LogComplex& o) const {
    return {log_mag + o.log_mag, wrap(phase + o.phase)};
  }
  LogComplex operator/(const LogComplex& o) const {
    return {log_mag - o.log_mag, wrap(phase - o.phase)};
  }
  LogComplex inverse() const { return {-log_mag, wrap(-phase)}; }
  LogComplex pow_int(long long k) const {
    return {log_mag * static_cast<double>(k), wrap(phase * static_cast<double>(k))};
  }
};

/// Relative distance |a - b| / max(|a|, |b|), evaluated after factoring out the
/// larger magnitude so it stays meaningful when both values are extreme.
inline double rel_gap(const LogComplex& a, const LogComplex& b) {
  double s = std::max(a.log_mag, b.log_mag);
  cd va = std::exp(a.log_mag - s) * cd(std::cos(a.phase), std::sin(a.phase));
  cd vb = std::exp(b.log_mag - s) * cd(std::cos(b.phase), std::sin(b.phase));
  double denom = std::max(std::abs(va), std::abs(vb));
  if (denom == 0.0) return 0.0;
  return std::abs(va - vb) / denom;
}

inline double rel_gap(cd a, cd b) {
  double denom = std::max(std::abs(a), std::abs(b));
  if (denom == 0.0) return 0.0;
  return std::abs(a - b) / denom;
}

// ---- dense linear algebra helpers (SVD-based, policy-driven) ----

/// Numerical rank of M under the policy; warns when some singular value sits
/// within a factor 10 of the decision threshold.
int rank_of(const Matrix& M, const RankPolicy& policy, Diagnostics* diag, const std::string& where);

/// Orthonormal basis (columns) of ker M.
Matrix kernel_of(const Matrix& M, const RankPolicy& policy, Diagnostics* diag, const std::string& where);

/// Orthonormal basis (columns) of (ker M)^perp inside the domain of M.
Matrix kernel_complement_of(const Matrix& M, const RankPolicy& policy, Diagnostics* diag,
                            const std::string& where);

/// Orthonormal basis (columns) of im M.
Matrix image_of(const Matrix& M, const RankPolicy& policy, Diagnostics* diag, const std::string& where);

/// Determinant of a square matrix in log form via pivoted LU.
/// Throws NumericalError on a singular input. det of a 0x0 matrix is 1.
LogComplex det_log(const Matrix& M);

/// 2-norm condition number estimate (sigma_max / sigma_min); +inf if singular.
double condition_of(const Matrix& M);

}  // namespace torsion_lab
