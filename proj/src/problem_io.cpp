#include "torsion_lab/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace torsion_lab {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

void expect_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, v] : j.items())
    if (allowed.find(key) == allowed.end()) fail(path + "." + key, "unknown key");
}

const json& require_key(const json& j, const std::string& path, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) fail(path + "." + key, "missing required key");
  return j.at(key);
}

double parse_finite(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "number must be finite");
  return v;
}

int parse_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

cd parse_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected a complex scalar as [re, im]");
  return {parse_finite(j[0], path + "[0]"), parse_finite(j[1], path + "[1]")};
}

Matrix parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a matrix as nested row-major arrays");
  const int rows = static_cast<int>(j.size());
  if (rows == 0) return Matrix(0, 0);
  if (!j[0].is_array()) fail(path + "[0]", "expected a matrix row");
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[static_cast<std::size_t>(r)].is_array()) fail(rp, "expected a matrix row");
    if (static_cast<int>(j[static_cast<std::size_t>(r)].size()) != cols)
      fail(rp, "ragged matrix: row lengths differ");
    for (int c = 0; c < cols; ++c)
      m(r, c) = parse_complex(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                              rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

/// Matrix with a shape expected from surrounding dimension data; [] is
/// accepted for any empty shape.
Matrix parse_matrix_shaped(const json& j, const std::string& path, int rows, int cols) {
  Matrix m = parse_matrix(j, path);
  if (rows == 0 || cols == 0) {
    if (m.size() != 0 && !(m.rows() == rows && m.cols() == cols))
      fail(path, "expected an empty matrix of shape " + std::to_string(rows) + "x" +
                     std::to_string(cols));
    return Matrix::Zero(rows, cols);
  }
  if (m.rows() != rows || m.cols() != cols)
    fail(path, "expected shape " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  return m;
}

/// nvars < 0 infers the arity from the first term (at least one term needed).
MultiPolynomial parse_poly(const json& j, const std::string& path, int nvars) {
  if (!j.is_array()) fail(path, "expected a polynomial as an array of {\"e\", \"c\"} terms");
  MultiPolynomial p;
  p.nvars = nvars;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string tp = path + "[" + std::to_string(i) + "]";
    const json& term = j[i];
    expect_keys(term, tp, {"e", "c"});
    const json& ej = require_key(term, tp, "e");
    if (!ej.is_array()) fail(tp + ".e", "expected an exponent array");
    std::vector<int> e;
    for (std::size_t k = 0; k < ej.size(); ++k) {
      int v = parse_int(ej[k], tp + ".e[" + std::to_string(k) + "]");
      if (v < 0) fail(tp + ".e[" + std::to_string(k) + "]", "exponent must be nonnegative");
      e.push_back(v);
    }
    if (p.nvars < 0) {
      if (e.empty()) fail(tp + ".e", "cannot infer the number of variables from an empty term");
      p.nvars = static_cast<int>(e.size());
    }
    if (static_cast<int>(e.size()) != p.nvars)
      fail(tp + ".e", "expected " + std::to_string(p.nvars) + " exponents");
    p.terms[e] += parse_complex(require_key(term, tp, "c"), tp + ".c");
  }
  if (p.nvars < 0) fail(path, "empty polynomial with no declared arity");
  p.normalize();
  return p;
}

std::vector<cd> parse_point(const json& j, const std::string& path, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(path, "expected a point as an array of " + std::to_string(n) + " complex scalars");
  std::vector<cd> out;
  for (int i = 0; i < n; ++i)
    out.push_back(parse_complex(j[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Matrix> parse_tuple(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    Matrix m = parse_matrix(j[i], path + "[" + std::to_string(i) + "]");
    if (m.rows() != m.cols())
      fail(path + "[" + std::to_string(i) + "]", "matrix must be square");
    if (!out.empty() && m.rows() != out[0].rows())
      fail(path + "[" + std::to_string(i) + "]", "matrices must share one dimension");
    out.push_back(std::move(m));
  }
  return out;
}

RankPolicy parse_policy(const json& j, const std::string& path) {
  expect_keys(j, path, {"rel", "abs_floor"});
  RankPolicy p;
  if (j.contains("rel")) {
    p.rel = parse_finite(j.at("rel"), path + ".rel");
    if (!(p.rel > 0.0)) fail(path + ".rel", "must be positive");
  }
  if (j.contains("abs_floor")) {
    p.abs_floor = parse_finite(j.at("abs_floor"), path + ".abs_floor");
    if (p.abs_floor < 0.0) fail(path + ".abs_floor", "must be nonnegative");
  }
  return p;
}

LimitSchedule parse_schedule(const json& j, const std::string& path) {
  expect_keys(j, path, {"w0", "ratio", "theta", "max_steps", "stab_tol"});
  LimitSchedule s;
  if (j.contains("w0")) {
    s.w0 = parse_finite(j.at("w0"), path + ".w0");
    if (!(s.w0 > 0.0)) fail(path + ".w0", "must be positive");
  }
  if (j.contains("ratio")) {
    s.ratio = parse_finite(j.at("ratio"), path + ".ratio");
    if (!(s.ratio > 0.0 && s.ratio < 1.0)) fail(path + ".ratio", "must lie in (0, 1)");
  }
  if (j.contains("theta")) s.theta = parse_finite(j.at("theta"), path + ".theta");
  if (j.contains("max_steps")) {
    s.max_steps = parse_int(j.at("max_steps"), path + ".max_steps");
    if (s.max_steps < 3) fail(path + ".max_steps", "must be at least 3");
  }
  if (j.contains("stab_tol")) {
    s.stab_tol = parse_finite(j.at("stab_tol"), path + ".stab_tol");
    if (!(s.stab_tol > 0.0)) fail(path + ".stab_tol", "must be positive");
  }
  return s;
}

KoszulPayload parse_koszul(const json& j, const std::string& path) {
  expect_keys(j, path, {"matrices"});
  KoszulPayload p;
  p.matrices = parse_tuple(require_key(j, path, "matrices"), path + ".matrices");
  return p;
}

JointTorsionPayload parse_joint_torsion(const json& j, const std::string& path) {
  JointTorsionPayload p;
  if (j.is_object() && j.contains("complex")) {
    expect_keys(j, path, {"complex", "f", "g"});
    const json& cj = require_key(j, path, "complex");
    expect_keys(cj, path + ".complex", {"min_degree", "dims", "d"});
    CochainComplex X;
    X.min_degree = parse_int(require_key(cj, path + ".complex", "min_degree"),
                             path + ".complex.min_degree");
    const json& dims = require_key(cj, path + ".complex", "dims");
    if (!dims.is_array() || dims.empty())
      fail(path + ".complex.dims", "expected a nonempty array of dimensions");
    for (std::size_t i = 0; i < dims.size(); ++i) {
      int v = parse_int(dims[i], path + ".complex.dims[" + std::to_string(i) + "]");
      if (v < 0) fail(path + ".complex.dims[" + std::to_string(i) + "]", "must be nonnegative");
      X.dims.push_back(v);
    }
    const json& dj = require_key(cj, path + ".complex", "d");
    const int nd = static_cast<int>(X.dims.size()) - 1;
    if (!dj.is_array() || static_cast<int>(dj.size()) != nd)
      fail(path + ".complex.d", "expected " + std::to_string(nd) + " differentials");
    for (int i = 0; i < nd; ++i)
      X.d.push_back(parse_matrix_shaped(dj[static_cast<std::size_t>(i)],
                                        path + ".complex.d[" + std::to_string(i) + "]",
                                        X.dims[static_cast<std::size_t>(i) + 1],
                                        X.dims[static_cast<std::size_t>(i)]));
    auto parse_endo = [&](const char* name) {
      const json& mj = require_key(j, path, name);
      std::string mp = path + "." + name;
      if (!mj.is_array() || mj.size() != X.dims.size())
        fail(mp, "expected " + std::to_string(X.dims.size()) + " degree components");
      DegreeMap m;
      m.min_degree = X.min_degree;
      for (std::size_t i = 0; i < mj.size(); ++i)
        m.comp.push_back(parse_matrix_shaped(mj[i], mp + "[" + std::to_string(i) + "]",
                                             X.dims[i], X.dims[i]));
      return m;
    };
    p.f = parse_endo("f");
    p.g = parse_endo("g");
    p.X = std::move(X);
    return p;
  }
  if (j.is_object() && j.contains("matrices")) {
    expect_keys(j, path, {"matrices", "h", "f", "g"});
    p.tuple_form = true;
    p.matrices = parse_tuple(require_key(j, path, "matrices"), path + ".matrices");
    const int n = static_cast<int>(p.matrices.size());
    const json& hj = require_key(j, path, "h");
    if (!hj.is_array() || static_cast<int>(hj.size()) != n - 1)
      fail(path + ".h", "expected " + std::to_string(n - 1) + " curve equations for a tuple of " +
                            std::to_string(n));
    for (std::size_t i = 0; i < hj.size(); ++i)
      p.h.push_back(parse_poly(hj[i], path + ".h[" + std::to_string(i) + "]", n));
    p.fp = parse_poly(require_key(j, path, "f"), path + ".f", n);
    p.gp = parse_poly(require_key(j, path, "g"), path + ".g", n);
    return p;
  }
  fail(path, "payload must carry either \"complex\" or \"matrices\"");
}

TameSymbolPayload parse_tame_symbol(const json& j, const std::string& path) {
  expect_keys(j, path, {"h", "f", "g", "lambda", "eps"});
  TameSymbolPayload p;
  p.problem.h = parse_poly(require_key(j, path, "h"), path + ".h", 2);
  p.problem.f = parse_poly(require_key(j, path, "f"), path + ".f", 2);
  p.problem.g = parse_poly(require_key(j, path, "g"), path + ".g", 2);
  p.problem.lambda = parse_point(require_key(j, path, "lambda"), path + ".lambda", 2);
  p.problem.eps = parse_finite(require_key(j, path, "eps"), path + ".eps");
  if (!(p.problem.eps > 0.0)) fail(path + ".eps", "must be positive");
  return p;
}

CareyPincusPayload parse_carey_pincus(const json& j, const std::string& path) {
  expect_keys(j, path, {"f", "g"});
  CareyPincusPayload p;
  p.problem.f = parse_poly(require_key(j, path, "f"), path + ".f", 1);
  p.problem.g = parse_poly(require_key(j, path, "g"), path + ".g", 1);
  return p;
}

NoetherPayload parse_noether(const json& j, const std::string& path) {
  expect_keys(j, path, {"f"});
  NoetherPayload p;
  p.f = parse_poly(require_key(j, path, "f"), path + ".f", 1);
  return p;
}

AxiomsPayload parse_axioms(const json& j, const std::string& path) {
  expect_keys(j, path, {"h", "f1", "f2", "f3", "t", "lambda", "eps"});
  AxiomsPayload p;
  p.h = parse_poly(require_key(j, path, "h"), path + ".h", 2);
  p.f1 = parse_poly(require_key(j, path, "f1"), path + ".f1", 2);
  p.f2 = parse_poly(require_key(j, path, "f2"), path + ".f2", 2);
  p.f3 = parse_poly(require_key(j, path, "f3"), path + ".f3", 2);
  p.t = parse_poly(require_key(j, path, "t"), path + ".t", 2);
  p.lambda = parse_point(require_key(j, path, "lambda"), path + ".lambda", 2);
  p.eps = parse_finite(require_key(j, path, "eps"), path + ".eps");
  if (!(p.eps > 0.0)) fail(path + ".eps", "must be positive");
  return p;
}

}  // namespace

ParsedProblem parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("input is not valid JSON: ") + e.what());
  }

  expect_keys(j, "$", {"version", "kind", "payload", "policy", "schedule"});
  const json& version = require_key(j, "$", "version");
  if (!version.is_string() || version.get<std::string>() != "1")
    fail("$.version", "expected the string \"1\"");
  const json& kind = require_key(j, "$", "kind");
  if (!kind.is_string()) fail("$.kind", "expected a string");

  ParsedProblem out;
  out.kind = kind.get<std::string>();
  if (j.contains("policy")) out.policy = parse_policy(j.at("policy"), "$.policy");
  if (j.contains("schedule")) {
    out.schedule = parse_schedule(j.at("schedule"), "$.schedule");
    out.schedule_theta_given = j.at("schedule").contains("theta");
  }

  const json& payload = require_key(j, "$", "payload");
  const std::string pp = "$.payload";
  if (out.kind == "koszul")
    out.koszul = parse_koszul(payload, pp);
  else if (out.kind == "joint-torsion")
    out.joint_torsion = parse_joint_torsion(payload, pp);
  else if (out.kind == "tame-symbol")
    out.tame_symbol = parse_tame_symbol(payload, pp);
  else if (out.kind == "carey-pincus")
    out.carey_pincus = parse_carey_pincus(payload, pp);
  else if (out.kind == "noether")
    out.noether = parse_noether(payload, pp);
  else if (out.kind == "axioms")
    out.axioms = parse_axioms(payload, pp);
  else
    fail("$.kind", "unknown kind \"" + out.kind + "\"");
  return out;
}

json json_complex(cd z) { return json::array({z.real(), z.imag()}); }

json json_diagnostics(const Diagnostics& diag) {
  json out = json::array();
  for (const auto& d : diag.items) {
    json e;
    e["severity"] =
        d.severity == Severity::error ? "error" : (d.severity == Severity::warning ? "warning" : "info");
    e["where"] = d.where;
    e["message"] = d.message;
    if (!d.data.empty()) {
      json arr = json::array();
      for (cd z : d.data) arr.push_back(json_complex(z));
      e["data"] = arr;
    }
    out.push_back(std::move(e));
  }
  return out;
}

json make_envelope(const std::string& status, json value, const Diagnostics& diag,
                   double timing_ms) {
  json env;
  env["status"] = status;
  env["value"] = std::move(value);
  env["diagnostics"] = json_diagnostics(diag);
  env["timing_ms"] = timing_ms;
  return env;
}

namespace {

bool is_complex_pair(const json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

void render_value(const json& v, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_complex_pair(v)) {
    double re = v[0].get<double>(), im = v[1].get<double>();
    cd z(re, im);
    os << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i"
       << "  (magnitude " << std::abs(z) << ", phase " << std::arg(z) << ")";
    return;
  }
  if (v.is_object()) {
    for (const auto& [k, sub] : v.items()) {
      os << "\n" << pad << k << ": ";
      render_value(sub, os, indent + 2);
    }
    return;
  }
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      os << "\n" << pad << "- ";
      render_value(v[i], os, indent + 2);
    }
    return;
  }
  os << v.dump();
}

}  // namespace

std::string render_human(const json& envelope) {
  std::ostringstream os;
  os << "status: " << envelope.at("status").get<std::string>() << "\n";
  const json& val = envelope.at("value");
  os << "value:";
  if (is_complex_pair(val) || !(val.is_object() || val.is_array())) os << " ";
  render_value(val, os, 2);
  os << "\n";
  const json& diags = envelope.at("diagnostics");
  if (!diags.empty()) {
    os << "diagnostics:\n";
    for (const auto& d : diags) {
      os << "  [" << d.at("severity").get<std::string>() << "] "
         << d.at("where").get<std::string>() << ": " << d.at("message").get<std::string>();
      if (d.contains("data")) {
        os << "  data:";
        for (const auto& z : d.at("data")) {
          os << " ";
          render_value(z, os, 0);
        }
      }
      os << "\n";
    }
  }
  os << "timing_ms: " << envelope.at("timing_ms").get<double>() << "\n";
  return os.str();
}

}  // namespace torsion_lab
