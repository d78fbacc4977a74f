#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace twistlab {

struct CheckResult {
  enum class Status { Pass, Fail, Skip };
  std::string name;
  Status status = Status::Pass;
  double residual = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool ok() const;
  nlohmann::json to_json() const;
  std::string markdown() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::vector<std::string> groups;  // empty: the suite's default list
  int random_tuples = 1000;
  int coboundary_shifts = 10;
};

// identities, cohomology, admissibility, main-theorem, super-modular,
// type-a, sl2_3-golden, q8-golden, axioms, lemma-suite, toric-code
const std::vector<std::string>& suite_names();

// Throws InvalidParameter for an unknown suite name.
VerificationReport run_suite(const std::string& name, const VerifyOptions& opt = {});

}  // namespace twistlab
