#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sbpp {

struct Check {
  std::string suite;
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::vector<std::string> only;  // empty: every suite
  // Negative control: relative change applied to one interior H weight before the SBP checks.
  double perturb_h = 0.0;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool all_pass() const;
  std::size_t failures() const;
};

const std::vector<std::string>& verify_suites();
VerifyReport run_verify(const VerifyOptions& opt);

}  // namespace sbpp
