#pragma once

#include <string>
#include <vector>

namespace torsion_lab {

struct VerifyTest {
  std::string name;
  bool ok = false;
  std::string detail;  // numeric deviation or failure reason
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyTest> tests;
  int passed() const;
  int failed() const;
};

/// Runs one of the named property batteries ("signs", "axioms", "agreement")
/// or all of them. Throws ValidationError on an unknown suite name.
VerifyReport run_verify_suite(const std::string& suite, unsigned seed);

}  // namespace torsion_lab
