#pragma once

#include <optional>
#include <string>
#include <vector>

namespace absolve {

struct CheckResult {
  std::string name;
  std::string group;  // specfun, model, spectrum, secular, wavefunction, oracle
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

struct VerifyOptions {
  std::optional<std::string> only;  // restrict to one group
  // Added to every Gamma value seen by the Gamma checks; nonzero values are
  // used to confirm the suite actually fails.
  double gamma_fault = 0.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool pass = true;
};

const std::vector<std::string>& verify_groups();

// Runs the invariant suite in atomic units. Throws Error(invalid_argument)
// for an unknown group name.
VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace absolve
