#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mgw/generating_set.hpp"
#include "mgw/io.hpp"

namespace mgw {

/// Parameters shared by the verification suites. Defaults are the
/// acceptance-level workloads.
struct VerifyConfig {
  int d = 5;
  GeneratingSet s0 = GeneratingSet::standard(5);
  std::uint64_t seed = 1;
  int levels = 5;               // level transitivity: n = 1..levels
  int pieces = 1000;            // marginals: number of central pieces
  int corpus = 60;              // n0: basepoints
  int radius_r = 8;             // n0: vertices at S-distance < R
  int n0_bound = 20;
  int n0_override = 0;          // > 0 skips the n0 search in the commutator suite
  int triplets = 100;           // commutator trick, split over radii n0 and n0 + 1
  int gadgets = 50;             // 3-cycles built from swaps
  int depth = 12;               // bounded type: levels audited
  int regularity_pairs = 500;
  int encode_depth = 8;
  int encode_samples = 10000;
  int subshift_pairs = 200;
  int subshift_shared = 4;      // longest common prefix in sampled pairs
  int separation_length = 12;
  int stabilizer_pairs = 100;
  int stabilizer_shared = 3;
  int stabilizer_radius = 6;
  int brieussel_length = 10;

  /// Stable digest of every field, embedded in reports.
  std::string hash() const;
  Json to_json() const;
};

struct SuiteReport {
  std::string suite;
  std::string property;  // the statement being checked
  bool passed = false;
  std::string summary;   // one line for humans
  Json details;
};

using Suite = std::function<SuiteReport(const VerifyConfig&)>;

SuiteReport verify_transitivity(const VerifyConfig& c);
SuiteReport verify_marginals(const VerifyConfig& c);
SuiteReport verify_n0(const VerifyConfig& c);
SuiteReport verify_commutator(const VerifyConfig& c);
SuiteReport verify_torsion(const VerifyConfig& c);
SuiteReport verify_bounded_type(const VerifyConfig& c);
SuiteReport verify_regularity(const VerifyConfig& c);
SuiteReport verify_encoding(const VerifyConfig& c);
SuiteReport verify_subshift(const VerifyConfig& c);
SuiteReport verify_brieussel(const VerifyConfig& c);
SuiteReport verify_stabilizer(const VerifyConfig& c);

/// Suites by CLI name, in acceptance order.
const std::vector<std::pair<std::string, Suite>>& suites();

/// Versioned report document for a list of suite results.
Json report_json(const VerifyConfig& c, const std::vector<SuiteReport>& results);

inline constexpr const char* kReportSchema = "mgw-report/1";

}  // namespace mgw
