#pragma once
// Seeded property suites over the library's invariants.
//
// Each property reports pass, fail, or finding. A finding is a published
// claim that the measurement contradicts; it is reported with its data and
// never counted as an implementation failure.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hahnkit/estimator.hpp"
#include "hahnkit/io.hpp"

namespace hahnkit {

enum class Outcome { Pass, Fail, Finding };
const char* to_string(Outcome o);

struct PropertyResult {
  std::string suite;
  std::string name;
  Outcome outcome = Outcome::Pass;
  std::string detail;
  io::Json data = io::Json::object();
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  EstimatorConfig config;
  /// Findings count as failures.
  bool strict_paper = false;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 42;
  Horizon horizon;
  EstimatorConfig config;
  bool strict_paper = false;
  std::vector<PropertyResult> results;
  double wall_seconds = 0.0;

  int count(Outcome o) const;
  /// 0 when nothing failed (and, in strict mode, nothing was a finding), else 1.
  int exit_code() const;
};

/// operators, spaces, basis, duals, matclass, all
const std::vector<std::string>& suite_names();

/// Throws InputError for an unknown suite.
VerifyReport run_suite(std::string_view suite, const VerifyOptions& options = {});

io::Json to_json(const VerifyReport& r, bool with_time = true);

}  // namespace hahnkit
