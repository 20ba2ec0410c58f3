#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qappell/recursions.hpp"

namespace qappell {

// Where parameter points are drawn from. The margins keep every sampled point
// away from the poles and excluded values of all catalogued identities.
struct SampleDomain {
  double q_modulus_min = 0.1;
  double q_modulus_max = 0.8;
  bool q_complex = true;
  double param_modulus_max = 0.9;
  double arg_modulus_max = 0.4;
  double pole_margin = 0.05;
  std::uint64_t seed = 42;
};

// Deterministic function of (dom.seed, kind, index): draws a valid PhiSpec by
// rejection sampling from a SplitMix64 stream keyed on seed, kind and index.
PhiSpec sample_point(PhiKind kind, const SampleDomain& dom, int index);

struct SampleFailure {
  int sample_index;
  PhiSpec parameters;
  double residual;
};

struct Adjudication {
  Variant winner;
  double loser_max_residual;
};

struct ResidualReport {
  std::string identity;
  int samples = 0;
  double max_residual = 0;
  double mean_residual = 0;
  std::vector<SampleFailure> failures;  // every sample above the threshold
  std::optional<Adjudication> adjudication;
};

struct SuiteOptions {
  SampleDomain domain;
  int samples_per_identity = 50;
  std::vector<int> n_values = {1, 2, 3, 4};
  double threshold = 1e-8;
  EvalConfig eval;
  bool parallel = true;  // OpenMP sweep; the serial path is the reference
};

// Runs every identity in `ids` over seeded samples. Contiguous relations give
// one report; recursions give one report per n. Flagged identities named
// without an explicit variant run both variants and carry an adjudication.
// Results are independent of `parallel` and thread count.
std::vector<ResidualReport> run_suite(const std::vector<std::string>& ids,
                                      const SuiteOptions& opt);

// Pass criterion: plain reports stay within the threshold; adjudicated
// reports have exactly one passing variant.
bool suite_passed(const std::vector<ResidualReport>& reports, double threshold);

std::string reports_to_json(const std::vector<ResidualReport>& reports);

struct CatalogRow {
  std::string id;
  std::string kind;
  std::string anchor;
  bool flagged;
  std::string note;
};

// All 52 identities: 20 contiguous relations, then 32 recursion formulas.
std::vector<CatalogRow> full_catalog();
std::vector<std::string> all_identity_ids();

}  // namespace qappell
