#include "torsion_lab/complexes.hpp"
#include "torsion_lab/koszul.hpp"
#include "torsion_lab/polynomial.hpp"
#include "torsion_lab/problem_io.hpp"
#include "torsion_lab/tame_symbol.hpp"
#include "torsion_lab/torsion.hpp"
#include "torsion_lab/types.hpp"
#include "torsion_lab/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

namespace torsion_lab {
namespace {

struct Options {
  std::string input;
  double policy_rel = 0.0;  // 0: keep file/default value
  unsigned seed = 42;
  std::string format = "json";
  bool cross_check = false;
  bool trace = false;
  std::string suite = "all";
};

int emit(const json& envelope, const std::string& format, int code) {
  if (format == "human")
    std::cout << render_human(envelope);
  else
    std::cout << envelope.dump(2) << "\n";
  return code;
}

json value_of(cd z) { return json_complex(z); }

json run_koszul(const KoszulPayload& P, const RankPolicy& policy, Diagnostics& diag) {
  CochainComplex K = build_koszul(P.matrices);
  CohomologyData coh = cohomology(K, policy, &diag, "koszul");
  json dims = json::array();
  for (int k = K.min_degree; k <= K.max_degree(); ++k) dims.push_back(coh.h_at(k));
  return json{{"min_degree", K.min_degree}, {"dims", dims}, {"index", coh.index()}};
}

json run_joint_torsion(const JointTorsionPayload& P, const RankPolicy& policy, bool cross_check,
                       Diagnostics& diag) {
  CochainComplex X;
  DegreeMap fmap, gmap;
  if (P.tuple_form) {
    std::vector<Matrix> hA;
    for (const auto& p : P.h) hA.push_back(eval_matrix(p, P.matrices));
    if (hA.empty()) {
      X = CochainComplex{0, {static_cast<int>(P.matrices[0].rows())}, {}};
      fmap = DegreeMap{0, {eval_matrix(P.fp, P.matrices)}};
      gmap = DegreeMap{0, {eval_matrix(P.gp, P.matrices)}};
    } else {
      X = build_koszul(hA);
      fmap = koszul_module_action(hA, eval_matrix(P.fp, P.matrices), X);
      gmap = koszul_module_action(hA, eval_matrix(P.gp, P.matrices), X);
    }
  } else {
    X = P.X;
    fmap = P.f;
    gmap = P.g;
  }
  LogComplex jt = joint_torsion(X, fmap, gmap, policy, &diag);
  if (!cross_check) return value_of(jt.value());
  if (!P.tuple_form)
    throw ValidationError("--cross-check needs the tuple payload form (matrices and curve data)");
  LogComplex alt = joint_torsion_nonsingular(P.matrices, P.h, P.fp, P.gp, policy, &diag);
  double gap = rel_gap(jt, alt);
  diag_info(&diag, "joint_torsion", "cross-check relative gap " + std::to_string(gap));
  return json{{"joint_torsion", value_of(jt.value())},
              {"cross_check", value_of(alt.value())},
              {"relative_gap", gap}};
}

json run_tame_symbol(const TameSymbolPayload& P, const LimitSchedule& S, const RankPolicy& policy,
                     bool trace, Diagnostics& diag) {
  SymbolTrace tr;
  cd v = tame_symbol_local(P.problem, S, policy, &diag, &tr);
  if (trace) {
    Diagnostic d;
    d.severity = Severity::info;
    d.where = "tame_symbol";
    d.message = "limit values q(w_k), oldest first (" + std::to_string(tr.retries) +
                " direction retries)";
    d.data = tr.q;
    diag.items.push_back(std::move(d));
  }
  return value_of(v);
}

json run_axioms(const AxiomsPayload& P, const LimitSchedule& S, const RankPolicy& policy,
                Diagnostics& diag) {
  AxiomsReport r =
      symbol_axioms_check(P.h, P.f1, P.f2, P.f3, P.t, P.lambda, P.eps, S, policy, &diag);
  return json{{"antisymmetry", value_of(r.antisymmetry)},
              {"multiplicativity", value_of(r.multiplicativity)},
              {"steinberg", value_of(r.steinberg)},
              {"max_deviation", r.max_deviation}};
}

int run_command(const std::string& kind, const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Diagnostics diag;
  auto ms = [&t0] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  try {
    ParsedProblem P = parse_problem_file(opt.input);
    if (P.kind != kind)
      throw ValidationError("input file has kind \"" + P.kind + "\" but the subcommand is \"" +
                            kind + "\"");
    RankPolicy policy = P.policy.value_or(RankPolicy{});
    if (opt.policy_rel > 0.0) policy.rel = opt.policy_rel;
    LimitSchedule sched = P.schedule.value_or(make_limit_schedule(opt.seed));
    if (P.schedule && !P.schedule_theta_given) sched.theta = make_limit_schedule(opt.seed).theta;

    json value;
    if (kind == "koszul")
      value = run_koszul(*P.koszul, policy, diag);
    else if (kind == "joint-torsion")
      value = run_joint_torsion(*P.joint_torsion, policy, opt.cross_check, diag);
    else if (kind == "tame-symbol")
      value = run_tame_symbol(*P.tame_symbol, sched, policy, opt.trace, diag);
    else if (kind == "carey-pincus")
      value = value_of(carey_pincus(P.carey_pincus->problem, &diag));
    else if (kind == "noether")
      value = noether_index(P.noether->f, &diag);
    else  // axioms
      value = run_axioms(*P.axioms, sched, policy, diag);

    std::string status = diag.has_warning() ? "warning" : "ok";
    return emit(make_envelope(status, value, diag, ms()), opt.format, 0);
  } catch (const StabilizationError& e) {
    Diagnostic d;
    d.severity = Severity::error;
    d.where = "cli";
    d.message = e.what();
    d.data = e.tail;
    diag.items.push_back(std::move(d));
    return emit(make_envelope("error", nullptr, diag, ms()), opt.format, 4);
  } catch (const ValidationError& e) {
    diag.add(Severity::error, "cli", e.what());
    return emit(make_envelope("error", nullptr, diag, ms()), opt.format, 2);
  } catch (const NumericalError& e) {
    diag.add(Severity::error, "cli", e.what());
    return emit(make_envelope("error", nullptr, diag, ms()), opt.format, 3);
  } catch (const std::exception& e) {
    diag.add(Severity::error, "cli", e.what());
    return emit(make_envelope("error", nullptr, diag, ms()), opt.format, 3);
  }
}

int run_verify(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Diagnostics diag;
  auto ms = [&t0] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  try {
    VerifyReport rep = run_verify_suite(opt.suite, opt.seed);
    json tests = json::array();
    for (const auto& t : rep.tests)
      tests.push_back(json{{"name", t.name}, {"ok", t.ok}, {"detail", t.detail}});
    json value{{"suite", rep.suite},
               {"seed", opt.seed},
               {"passed", rep.passed()},
               {"failed", rep.failed()},
               {"tests", tests}};
    for (const auto& t : rep.tests)
      if (!t.ok) diag.add(Severity::error, "verify", t.name + " failed: " + t.detail);
    bool ok = rep.failed() == 0;
    std::string status = ok ? (diag.has_warning() ? "warning" : "ok") : "error";
    return emit(make_envelope(status, value, diag, ms()), opt.format, ok ? 0 : 1);
  } catch (const ValidationError& e) {
    diag.add(Severity::error, "cli", e.what());
    return emit(make_envelope("error", nullptr, diag, ms()), opt.format, 2);
  } catch (const std::exception& e) {
    diag.add(Severity::error, "cli", e.what());
    return emit(make_envelope("error", nullptr, diag, ms()), opt.format, 3);
  }
}

}  // namespace
}  // namespace torsion_lab

int main(int argc, char** argv) {
  using namespace torsion_lab;

  CLI::App app{"torsion-lab: joint torsion, local symbols, and index bookkeeping for "
               "commuting matrix tuples"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  if (const char* env = std::getenv("TORSION_LAB_SEED")) {
    try {
      opt.seed = static_cast<unsigned>(std::stoul(env));
    } catch (...) {
      std::cerr << "warning: ignoring unparsable TORSION_LAB_SEED\n";
    }
  }

  app.add_option("--seed", opt.seed, "Seed for pseudo-random choices (wins over TORSION_LAB_SEED)");
  app.add_option("--policy-rel", opt.policy_rel, "Override the relative rank threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "human"}));

  const char* kinds[6] = {"koszul", "joint-torsion", "tame-symbol",
                          "carey-pincus", "noether", "axioms"};
  const char* descs[6] = {"Cohomology dimensions and index of a Koszul complex",
                          "Joint torsion of a commuting pair on a complex or matrix tuple",
                          "Local tame symbol on a plane curve by the perturbation limit",
                          "Classical disc-model product over interior zeros",
                          "Winding-number index of a symbol curve",
                          "Antisymmetry, multiplicativity, and Steinberg identities"};
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(kinds[i], descs[i]);
    sub->add_option("--input", opt.input, "Problem file (JSON)")->required();
    if (std::string(kinds[i]) == "joint-torsion")
      sub->add_flag("--cross-check", opt.cross_check,
                    "Also evaluate the Lefschetz-quotient form and report the gap");
    if (std::string(kinds[i]) == "tame-symbol")
      sub->add_flag("--trace", opt.trace, "Attach the limit value sequence as a diagnostic");
  }
  CLI::App* ver = app.add_subcommand("verify", "Run the built-in property batteries");
  ver->add_option("--suite", opt.suite, "Battery to run")
      ->check(CLI::IsMember({"signs", "axioms", "agreement", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (ver->parsed()) return run_verify(opt);
  for (int i = 0; i < 6; ++i)
    if (app.get_subcommand(kinds[i])->parsed()) return run_command(kinds[i], opt);
  return 2;
}
