#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tonic/engine.hpp"
#include "tonic/predictor.hpp"
#include "tonic/snapshots.hpp"

namespace tonic {

struct ExperimentConfig {
  std::string dataset = "stream";
  EngineMode mode = EngineMode::insertion_only;
  std::optional<std::uint64_t> budget;  // absolute k; otherwise mem_fraction applies
  double mem_fraction = 0.1;            // of m (insertion-only) or of the peak edge count (FD)
  double alpha = 0.05;
  double beta = 0.2;
  const Predictor* predictor = nullptr;  // null behaves as an all-zero predictor
  std::string predictor_label = "none";
  std::uint32_t trials = 50;
  std::uint64_t seed = 1;
  std::uint64_t trace_stride = 0;  // 0 disables the per-step trace
  bool strict_fd = false;
  bool measure_runtime = true;  // off: runtime_ms column is 0 for reproducible bytes
  unsigned max_threads = 0;     // 0: TONIC_THREADS env, then hardware concurrency
  bool collect_locals = false;
};

struct TraceRow {
  std::uint64_t t = 0;
  double estimate = 0.0;
  std::uint64_t exact = 0;
};

struct TrialReport {
  std::uint32_t trial = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double runtime_ms = 0.0;
  std::vector<std::pair<NodeId, double>> locals;  // when collect_locals
  std::vector<TraceRow> trace;
};

struct CampaignReport {
  std::uint64_t k = 0;
  std::uint64_t exact = 0;  // triangle count of the final graph
  std::vector<TrialReport> trials;
  double mean_estimate = 0.0;
  double std_estimate = 0.0;
  double mean_rel_error = 0.0;
  double std_rel_error = 0.0;
  double min_rel_error = 0.0;
  double max_rel_error = 0.0;
  double mean_runtime_ms = 0.0;
  bool exact_is_zero = false;  // error columns hold absolute errors
};

// Runs cfg.trials independent estimators with derived seeds over the stream.
// Trials may execute on several threads; per-trial results are identical to
// serial execution and are reported in trial order. For fully dynamic mode
// the budget fraction applies to the maximum concurrent edge count, found by
// an exact pre-pass.
CampaignReport run_campaign(std::span<const StreamEvent> events, const ExperimentConfig& cfg);

CampaignReport run_fd_campaign(std::span<const StreamEvent> events, const ExperimentConfig& cfg);

struct SnapshotResult {
  std::string label;
  CampaignReport report;
};

// Trains the predictor on the first snapshot only, then runs one campaign
// per subsequent snapshot (budget fraction relative to that snapshot's own
// edge count).
std::vector<SnapshotResult> run_snapshot_campaign(const SnapshotSequence& seq,
                                                  const ExperimentConfig& cfg,
                                                  const PredictorSpec& spec);

// CSV schema: dataset,mode,k,alpha,beta,predictor,trial,seed,estimate,exact,
// rel_error,runtime_ms. One row per trial.
void write_campaign_csv(std::ostream& out, const ExperimentConfig& cfg,
                        const CampaignReport& report, bool header = true);
void write_campaign_csv(const std::string& path, const ExperimentConfig& cfg,
                        const CampaignReport& report);
void write_snapshot_csv(const std::string& path, const ExperimentConfig& cfg,
                        std::span<const SnapshotResult> results);

// Trace schema: dataset,trial,t,estimate,exact,rel_error.
void write_trace_csv(const std::string& path, const ExperimentConfig& cfg,
                     const CampaignReport& report);

unsigned resolve_thread_cap(unsigned requested);

}  // namespace tonic
