#pragma once

// Reproducible experiment runs: each returns a report whose verdicts can be
// re-derived from its CSV rows, and emit_report writes it to disk.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "symcap/distance_bounds.hpp"
#include "symcap/domain_io.hpp"

namespace symcap {

struct ExperimentConfig {
  std::string command;
  std::vector<std::string> domain_files;
  Integer kmax{2000};
  unsigned per_decade = 16;
  long precision_bits = kDefaultPrecisionBits;
  /// Empty: nothing is written.
  std::filesystem::path out_dir;
  Rational threshold = kDefaultThreshold;
  Integer oracle_limit{400000};
  std::uint64_t seed = 0;
  unsigned threads = 0;

  /// Scaling sweep: parameter vector and the active index M (1-based).
  ParameterVector params{{64, 4096}};
  std::size_t M = 1;
  Rational ratio_low{1, 4};
  Rational ratio_high{4};
  /// Checked exactly when present: c_k must equal this value.
  std::optional<std::pair<Integer, Rational>> anchor;

  /// Warm-up domain and notsame family.
  Rational eps{1, 1024};
  Rational volume{1000};
  Integer k0_min{0};
  Integer k0_max{100};
  Rational weyl_constant{4};
  double sup_slack = 0.01;

  /// Chart and certificate grids (n = 1 points).
  std::vector<Rational> grid{-4, -2, 0, 2, 4};
  SnapMode mode = SnapMode::Exact;
  double max_A = 8;
  double max_B = 3;

  CapacityLimits limits() const;
  void validate() const;
};

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunReport {
  std::string command;
  Json inputs;
  Json results;
  std::vector<Verdict> verdicts;
  CsvTable csv;
  /// Printed, never written, so emitted files stay byte-stable.
  double wall_seconds = 0;

  bool passed() const;
};

/// c_k / sqrt(k B_M) over log-spaced k in [B_M^{M+1}, B_{M+1}^{M+1}].
RunReport run_lemma_cap_sweep(const ExperimentConfig& config);

/// Weights {1 x 1, eps x m} with the smallest m giving area >= V; checks
/// c_k0 <= c_k0(B(1)) + 1 for k0 in [k0_min, k0_max].
RunReport run_ched_warmup(const ExperimentConfig& config);

/// B(1) against the realization of B(1) joined with E(eps, 1/eps):
/// inclusion distance versus the capacity lower bound up to kmax.
RunReport run_notsame(const ExperimentConfig& config);

/// Chart embedding of the grid points, with the fitted sandwich constants.
RunReport run_chart(const ExperimentConfig& config);

/// All ordered pairs of charted grid points through the distance certificate.
RunReport run_certificate(const ExperimentConfig& config);

/// Writes <dir>/<command>.json and <dir>/<command>.csv.
void emit_report(const RunReport& report, const std::filesystem::path& dir);

/// The JSON document emit_report writes.
std::string report_document(const RunReport& report);

}  // namespace symcap
