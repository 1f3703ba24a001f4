#pragma once

#include "torsion_lab/complexes.hpp"
#include "torsion_lab/tame_symbol.hpp"
#include "torsion_lab/types.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torsion_lab {

using json = nlohmann::ordered_json;

struct KoszulPayload {
  std::vector<Matrix> matrices;
};

/// Either an explicit complex with two endomorphisms, or a commuting tuple
/// with curve equations whose Koszul complex carries the module actions of f
/// and g (the form the cross-check path needs).
struct JointTorsionPayload {
  bool tuple_form = false;
  CochainComplex X;
  DegreeMap f, g;
  std::vector<Matrix> matrices;
  std::vector<MultiPolynomial> h;
  MultiPolynomial fp, gp;
};

struct TameSymbolPayload {
  SymbolProblem problem;
};

struct CareyPincusPayload {
  DiscModelProblem problem;
};

struct NoetherPayload {
  MultiPolynomial f;
};

struct AxiomsPayload {
  MultiPolynomial h, f1, f2, f3, t;
  std::vector<cd> lambda;
  double eps = 0.5;
};

struct ParsedProblem {
  std::string kind;
  std::optional<RankPolicy> policy;
  std::optional<LimitSchedule> schedule;
  bool schedule_theta_given = false;  // theta absent: callers seed the direction
  std::optional<KoszulPayload> koszul;
  std::optional<JointTorsionPayload> joint_torsion;
  std::optional<TameSymbolPayload> tame_symbol;
  std::optional<CareyPincusPayload> carey_pincus;
  std::optional<NoetherPayload> noether;
  std::optional<AxiomsPayload> axioms;
};

/// Parse and validate a problem file. Strict: unknown keys anywhere are
/// rejected. Throws ValidationError carrying the JSON field path.
ParsedProblem parse_problem_file(const std::string& path);

json json_complex(cd z);
json json_diagnostics(const Diagnostics& diag);

/// {"status", "value", "diagnostics", "timing_ms"} in that key order.
json make_envelope(const std::string& status, json value, const Diagnostics& diag,
                   double timing_ms);

/// Text rendering of an envelope; complex pairs gain magnitude and phase.
std::string render_human(const json& envelope);

}  // namespace torsion_lab
