// End-to-end checks of the torsion-lab binary: envelopes, exit codes, seeds.
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <regex>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

int g_failures = 0;

#define REQUIRE(cond)                                                        \
  do {                                                                       \
    if (!(cond)) {                                                           \
      std::cout << "[FAIL] " << __FILE__ << ":" << __LINE__ << "  " << #cond \
                << "\n";                                                     \
      ++g_failures;                                                          \
    }                                                                        \
  } while (0)

std::string g_binary;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + g_binary + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  RunResult r;
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  if (WIFEXITED(st)) r.exit_code = WEXITSTATUS(st);
  return r;
}

std::string data(const std::string& name) { return std::string(TESTS_DATA_DIR) + "/" + name; }

json parse(const RunResult& r) {
  try {
    return json::parse(r.out);
  } catch (...) {
    std::cout << "[FAIL] output is not JSON: " << r.out.substr(0, 200) << "\n";
    ++g_failures;
    return json();
  }
}

bool near(double got, double want, double tol) { return std::abs(got - want) <= tol; }

// envelope text with the timing stripped, for byte comparisons
std::string strip_timing(const std::string& s) {
  return std::regex_replace(s, std::regex("\"timing_ms\": [0-9.e+-]+"), "\"timing_ms\": X");
}

bool has_message(const json& env, const std::string& needle) {
  if (!env.contains("diagnostics")) return false;
  for (const auto& d : env["diagnostics"])
    if (d["message"].get<std::string>().find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cout << "[FAIL] usage: test_cli <torsion-lab binary>\n";
    return 1;
  }
  g_binary = argv[1];

  {  // koszul on a trivial tuple: cohomology survives everywhere
    RunResult r = run("koszul --input " + data("koszul_trivial.json"));
    REQUIRE(r.exit_code == 0);
    json e = parse(r);
    REQUIRE(e["status"] == "ok");
    REQUIRE(e["value"]["min_degree"] == -2);
    REQUIRE(e["value"]["dims"] == json::array({1, 2, 1}));
    REQUIRE(e["value"]["index"] == 0);
    REQUIRE(e.contains("timing_ms"));
  }

  {  // koszul on an acyclic pair
    RunResult r = run("koszul --input " + data("koszul_diag.json"));
    REQUIRE(r.exit_code == 0);
    json e = parse(r);
    REQUIRE(e["value"]["dims"] == json::array({0, 0, 0}));
    REQUIRE(e["value"]["index"] == 0);
  }

  {  // ragged matrix row: validation failure with a JSON path
    RunResult r = run("koszul --input " + data("koszul_bad_shape.json"));
    REQUIRE(r.exit_code == 2);
    json e = parse(r);
    REQUIRE(e["status"] == "error");
    REQUIRE(e["value"].is_null());
    REQUIRE(has_message(e, "$.payload.matrices[0]"));
  }

  {  // joint torsion, complex payload form
    RunResult r = run("joint-torsion --input " + data("joint_torsion_complex.json"));
    REQUIRE(r.exit_code == 0);
    json e = parse(r);
    REQUIRE(near(e["value"][0].get<double>(), 1.0, 1e-9));
    REQUIRE(near(e["value"][1].get<double>(), 0.0, 1e-9));
  }

  {  // joint torsion, tuple form with the cross evaluation
    RunResult r = run("joint-torsion --cross-check --input " + data("joint_torsion_tuple.json"));
    REQUIRE(r.exit_code == 0);
    json e = parse(r);
    REQUIRE(near(e["value"]["joint_torsion"][0].get<double>(), 1.0, 1e-8));
    REQUIRE(e["value"]["relative_gap"].get<double>() < 1e-8);
  }

  {  // cross-check demands the tuple form
    RunResult r = run("joint-torsion --cross-check --input " + data("joint_torsion_complex.json"));
    REQUIRE(r.exit_code == 2);
  }

  {  // tame symbol on the cusp, with and without the trace
    RunResult r = run("tame-symbol --input " + data("tame_symbol_cusp.json"));
    REQUIRE(r.exit_code == 0);
    json e = parse(r);
    REQUIRE(near(e["value"][0].get<double>(), 1.0, 1e-6));
    REQUIRE(near(e["value"][1].get<double>(), 0.0, 1e-6));

    RunResult rt = run("tame-symbol --trace --input " + data("tame_symbol_cusp.json"));
    REQUIRE(rt.exit_code == 0);
    json et = parse(rt);
    bool have_trace = false;
    for (const auto& d : et["diagnostics"])
      if (d["severity"] == "info" && d.contains("data") && !d["data"].empty()) have_trace = true;
    REQUIRE(have_trace);
  }

  {  // a schedule too short to stabilize: exit 4, tail attached
    RunResult r = run("tame-symbol --input " + data("tame_symbol_no_stab.json"));
    REQUIRE(r.exit_code == 4);
    json e = parse(r);
    REQUIRE(e["status"] == "error");
    bool have_tail = false;
    for (const auto& d : e["diagnostics"])
      if (d["severity"] == "error" && d.contains("data") && d["data"].size() >= 1 &&
          d["data"].size() <= 8)
        have_tail = true;
    REQUIRE(have_tail);
  }

  {  // disc-model product
    RunResult r = run("carey-pincus --input " + data("carey_pincus_self.json"));
    REQUIRE(r.exit_code == 0);
    json e = parse(r);
    REQUIRE(near(e["value"][0].get<double>(), -1.0, 1e-9));
    REQUIRE(near(e["value"][1].get<double>(), 0.0, 1e-9));
  }

  {  // winding index
    RunResult r = run("noether --input " + data("noether_cubic.json"));
    REQUIRE(r.exit_code == 0);
    json e = parse(r);
    REQUIRE(e["value"] == -3);
  }

  {  // symbol identities
    RunResult r = run("axioms --input " + data("axioms_basic.json"));
    REQUIRE(r.exit_code == 0);
    json e = parse(r);
    REQUIRE(e["value"]["max_deviation"].get<double>() <= 1e-6);
  }

  {  // unknown top-level key
    RunResult r = run("koszul --input " + data("bad_unknown_key.json"));
    REQUIRE(r.exit_code == 2);
    REQUIRE(has_message(parse(r), "$.extra"));
  }

  {  // missing input file
    RunResult r = run("koszul --input /nonexistent/x.json");
    REQUIRE(r.exit_code == 2);
    REQUIRE(has_message(parse(r), "cannot open input file"));
  }

  {  // kind/subcommand mismatch
    RunResult r = run("noether --input " + data("koszul_trivial.json"));
    REQUIRE(r.exit_code == 2);
  }

  {  // repeated runs are identical up to timing
    std::string args = "joint-torsion --input " + data("joint_torsion_complex.json");
    RunResult a = run(args), b = run(args);
    REQUIRE(strip_timing(a.out) == strip_timing(b.out));
  }

  {  // the seed steers the limit direction: flag wins over the environment
    std::string args = "tame-symbol --trace --input " + data("tame_symbol_seeded.json");
    RunResult env5 = run(args, "TORSION_LAB_SEED=5");
    RunResult flag5 = run(args + " --seed 5");
    RunResult flag7_env5 = run(args + " --seed 7", "TORSION_LAB_SEED=5");
    RunResult flag7 = run(args + " --seed 7");
    REQUIRE(env5.exit_code == 0);
    REQUIRE(flag5.exit_code == 0);
    REQUIRE(strip_timing(env5.out) == strip_timing(flag5.out));
    REQUIRE(strip_timing(flag7_env5.out) == strip_timing(flag7.out));
    REQUIRE(strip_timing(flag5.out) != strip_timing(flag7.out));
    // the final value is direction-independent even though the traces differ
    json e5 = parse(flag5), e7 = parse(flag7);
    REQUIRE(near(e5["value"][0].get<double>(), e7["value"][0].get<double>(), 1e-6));
    REQUIRE(near(e5["value"][1].get<double>(), e7["value"][1].get<double>(), 1e-6));
  }

  {  // human rendering spells out magnitude and phase
    RunResult r = run("carey-pincus --format human --input " + data("carey_pincus_self.json"));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("magnitude") != std::string::npos);
    REQUIRE(r.out.find("status: ok") != std::string::npos);
  }

  {  // built-in battery
    RunResult r = run("verify --suite signs");
    REQUIRE(r.exit_code == 0);
    json e = parse(r);
    REQUIRE(e["value"]["failed"] == 0);
    REQUIRE(e["value"]["passed"].get<int>() >= 15);
  }

  if (g_failures == 0) std::cout << "test_cli: all checks passed\n";
  return g_failures == 0 ? 0 : 1;
}
