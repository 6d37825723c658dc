// Command-line harness for streaming triangle estimation experiments.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "tonic/campaign.hpp"
#include "tonic/exact.hpp"
#include "tonic/metrics.hpp"
#include "tonic/predictor.hpp"
#include "tonic/snapshots.hpp"
#include "tonic/stream_io.hpp"

namespace {

using namespace tonic;

struct LoadedPredictor {
  std::unique_ptr<Predictor> predictor;
  std::string label;
};

// --predictor syntax: none | random:<salt> | exact:<path> | nowr:<path> |
// adv-exact:<path> (edge tables); mindeg:<path> | adv-mindeg:<path> (node
// tables). The kind picks the file format; scoring only depends on the table.
LoadedPredictor load_predictor_arg(const std::string& arg) {
  LoadedPredictor out;
  out.label = arg.empty() ? "none" : arg;
  if (arg.empty() || arg == "none") {
    out.predictor = std::make_unique<ZeroPredictor>();
    return out;
  }
  auto colon = arg.find(':');
  std::string kind = arg.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : arg.substr(colon + 1);
  if (kind == "random") {
    out.predictor = std::make_unique<RandomPredictor>(rest.empty() ? 0 : std::stoull(rest));
    return out;
  }
  if (rest.empty()) throw CLI::ValidationError("--predictor", "expected '" + kind + ":<path>'");
  if (kind == "exact" || kind == "nowr" || kind == "adv-exact" || kind == "edge")
    out.predictor = std::make_unique<EdgePredictor>(load_edge_predictor(rest));
  else if (kind == "mindeg" || kind == "adv-mindeg" || kind == "node")
    out.predictor = std::make_unique<NodePredictor>(load_node_predictor(rest));
  else
    throw CLI::ValidationError("--predictor", "unknown predictor kind '" + kind + "'");
  return out;
}

PredictorKind parse_trainable_kind(const std::string& name) {
  if (name == "none") return PredictorKind::none;
  if (name == "exact") return PredictorKind::exact;
  if (name == "nowr") return PredictorKind::nowr;
  if (name == "mindeg") return PredictorKind::min_degree_node;
  if (name == "mindeg-edge") return PredictorKind::min_degree_edge;
  if (name == "adv-exact") return PredictorKind::adversarial_exact;
  if (name == "adv-mindeg") return PredictorKind::adversarial_min_degree;
  if (name == "random") return PredictorKind::random;
  throw CLI::ValidationError("--predictor", "unknown trainable kind '" + name + "'");
}

void print_summary(const ExperimentConfig& cfg, const CampaignReport& report) {
  std::printf("dataset=%s k=%llu trials=%zu exact=%llu\n", cfg.dataset.c_str(),
              static_cast<unsigned long long>(report.k), report.trials.size(),
              static_cast<unsigned long long>(report.exact));
  std::printf("estimate mean=%.6f std=%.6f\n", report.mean_estimate, report.std_estimate);
  std::printf("%s mean=%.6f std=%.6f min=%.6f max=%.6f\n",
              report.exact_is_zero ? "abs_error" : "rel_error", report.mean_rel_error,
              report.std_rel_error, report.min_rel_error, report.max_rel_error);
  std::printf("runtime_ms mean=%.3f\n", report.mean_runtime_ms);
}

void emit_outputs(const std::string& out, const ExperimentConfig& cfg,
                  const CampaignReport& report) {
  if (!out.empty()) {
    write_campaign_csv(out, cfg, report);
    if (cfg.trace_stride > 0) write_trace_csv(out + ".trace.csv", cfg, report);
  }
  print_summary(cfg, report);
}

struct RunFlags {
  std::string stream;
  std::string mode = "insertion-only";
  std::uint64_t k = 0;
  double mem_frac = 0.1;
  double alpha = 0.05;
  double beta = 0.2;
  std::string predictor = "none";
  std::uint32_t trials = 50;
  std::uint64_t seed = 1;
  std::uint64_t trace_stride = 0;
  bool trace_auto = false;
  std::string out;
  bool strict_fd = false;
  bool no_timing = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags, bool fd) {
  cmd->add_option("--stream", flags.stream, fd ? "fully dynamic stream file" : "edge list file")
      ->required();
  if (!fd)
    cmd->add_option("--mode", flags.mode, "insertion-only or fully-dynamic")
        ->check(CLI::IsMember({"insertion-only", "fully-dynamic"}));
  auto* k_opt = cmd->add_option("--k", flags.k, "absolute edge budget");
  cmd->add_option("--mem-frac", flags.mem_frac,
                  "budget as a fraction of the stream size (peak size for FD)")
      ->excludes(k_opt);
  cmd->add_option("--alpha", flags.alpha, "waiting room fraction of the budget");
  cmd->add_option("--beta", flags.beta, "heavy set fraction of the remainder");
  cmd->add_option("--predictor", flags.predictor, "kind:path (see docs), random:<salt>, or none");
  cmd->add_option("--trials", flags.trials, "independent trials");
  cmd->add_option("--seed", flags.seed, "master seed");
  auto* stride = cmd->add_option("--trace-stride", flags.trace_stride,
                                 "emit (t, estimate) rows every N events");
  cmd->add_flag("--trace", flags.trace_auto, "trace with stride ~ m/1000")->excludes(stride);
  cmd->add_option("--out", flags.out, "CSV output path");
  cmd->add_flag("--strict-fd", flags.strict_fd, "validate FD deletions against prior inserts");
  cmd->add_flag("--no-timing", flags.no_timing, "zero the runtime column (reproducible bytes)");
}

ExperimentConfig config_from(const RunFlags& flags, EngineMode mode, std::size_t stream_len) {
  ExperimentConfig cfg;
  cfg.dataset = std::filesystem::path(flags.stream).filename().string();
  cfg.mode = mode;
  if (flags.k > 0) cfg.budget = flags.k;
  cfg.mem_fraction = flags.mem_frac;
  cfg.alpha = flags.alpha;
  cfg.beta = flags.beta;
  cfg.trials = flags.trials;
  cfg.seed = flags.seed;
  cfg.trace_stride = flags.trace_stride;
  if (flags.trace_auto) cfg.trace_stride = std::max<std::uint64_t>(1, stream_len / 1000);
  cfg.strict_fd = flags.strict_fd;
  cfg.measure_runtime = !flags.no_timing;
  return cfg;
}

int cmd_run(const RunFlags& flags, bool fd_command) {
  bool fd = fd_command || flags.mode == "fully-dynamic";
  std::vector<StreamEvent> events =
      fd ? ingest_fd_stream(flags.stream)
         : ingest_edge_list(flags.stream, {.dedupe = true, .drop_self_loops = true});
  ExperimentConfig cfg = config_from(
      flags, fd ? EngineMode::fully_dynamic : EngineMode::insertion_only, events.size());
  LoadedPredictor pred = load_predictor_arg(flags.predictor);
  cfg.predictor = pred.predictor.get();
  cfg.predictor_label = pred.label;
  emit_outputs(flags.out, cfg, run_campaign(events, cfg));
  return 0;
}

int cmd_run_snapshots(const RunFlags& flags, const std::string& manifest,
                      const std::vector<std::string>& paths, const std::string& kind,
                      double retain, std::uint64_t wr_size) {
  SnapshotSequence seq =
      manifest.empty() ? load_snapshot_sequence(paths) : load_snapshot_manifest(manifest);
  ExperimentConfig cfg = config_from(flags, EngineMode::insertion_only, 0);
  cfg.dataset = manifest.empty() ? "snapshots" : manifest;
  PredictorSpec spec;
  spec.kind = parse_trainable_kind(kind);
  spec.retain_fraction = retain;
  spec.wr_size = wr_size;
  spec.salt = flags.seed;
  cfg.predictor_label = kind;
  auto results = run_snapshot_campaign(seq, cfg, spec);
  if (!flags.out.empty()) write_snapshot_csv(flags.out, cfg, results);
  for (const auto& res : results) {
    ExperimentConfig sub = cfg;
    sub.dataset = res.label;
    print_summary(sub, res.report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TONIC-style streaming triangle counting toolkit"};
  app.require_subcommand(1);

  RunFlags run_flags, fd_flags, snap_flags;

  auto* run = app.add_subcommand("run", "estimate triangles on an edge stream");
  add_run_flags(run, run_flags, false);

  auto* run_fd = app.add_subcommand("run-fd", "estimate triangles on a fully dynamic stream");
  add_run_flags(run_fd, fd_flags, true);

  auto* snaps = app.add_subcommand("run-snapshots",
                                   "train a predictor on the first snapshot, evaluate the rest");
  std::string snap_manifest, snap_kind = "exact";
  std::vector<std::string> snap_paths;
  double snap_retain = 0.10;
  std::uint64_t snap_wr = 0;
  snaps->add_option("--manifest", snap_manifest, "file listing one edge-list path per line");
  snaps->add_option("--snapshots", snap_paths, "edge-list files, in order");
  snaps->add_option("--predictor", snap_kind,
                    "none|exact|nowr|mindeg|mindeg-edge|adv-exact|adv-mindeg|random");
  snaps->add_option("--retain-fraction", snap_retain, "fraction of edges the predictor keeps");
  snaps->add_option("--wr-size", snap_wr, "window size for the nowr predictor");
  auto* k_opt = snaps->add_option("--k", snap_flags.k, "absolute edge budget");
  snaps->add_option("--mem-frac", snap_flags.mem_frac, "budget fraction per snapshot")
      ->excludes(k_opt);
  snaps->add_option("--alpha", snap_flags.alpha, "waiting room fraction");
  snaps->add_option("--beta", snap_flags.beta, "heavy set fraction");
  snaps->add_option("--trials", snap_flags.trials, "independent trials per snapshot");
  snaps->add_option("--seed", snap_flags.seed, "master seed");
  snaps->add_option("--out", snap_flags.out, "CSV output path");
  snaps->add_flag("--no-timing", snap_flags.no_timing, "zero the runtime column");

  auto* exact_cmd = app.add_subcommand("exact", "exact triangle counts of an edge list");
  std::string exact_stream, exact_out;
  bool exact_per_edge = false;
  exact_cmd->add_option("--stream", exact_stream, "edge list file")->required();
  exact_cmd->add_option("--out", exact_out, "dump counts to this file");
  exact_cmd->add_flag("--per-edge", exact_per_edge, "materialize per-edge counts in the dump");

  std::string build_stream, build_out;
  double build_retain = 0.10;
  std::uint64_t build_wr = 0;
  bool mindeg_edge_based = false;
  auto add_build_flags = [&](CLI::App* cmd) {
    cmd->add_option("--stream", build_stream, "training edge list")->required();
    cmd->add_option("--retain-fraction", build_retain, "fraction of edges to keep");
    cmd->add_option("--out", build_out, "predictor file to write")->required();
  };
  auto* build_oracle = app.add_subcommand("build-oracle", "exact heaviness predictor");
  add_build_flags(build_oracle);
  auto* build_nowr = app.add_subcommand("build-nowr", "window-discounted heaviness predictor");
  add_build_flags(build_nowr);
  build_nowr->add_option("--wr-size", build_wr, "recency window size")->required();
  auto* build_mindeg = app.add_subcommand("build-mindeg", "min-degree predictor");
  add_build_flags(build_mindeg);
  build_mindeg->add_flag("--edge-based", mindeg_edge_based,
                         "store top edges instead of top-degree nodes");

  auto* invert = app.add_subcommand("invert", "adversarial inversion of a predictor build");
  std::string invert_kind = "exact";
  add_build_flags(invert);
  invert->add_option("--kind", invert_kind, "exact or mindeg");

  auto* bound = app.add_subcommand("bound", "variance-comparison threshold calculator");
  VarianceBoundInputs bound_in{0.1, 0.09, 1.5, 10.0};
  bound->add_option("--p", bound_in.p, "baseline sampling probability")->required();
  bound->add_option("--p-prime", bound_in.p_prime, "reduced sampling probability")->required();
  bound->add_option("--c", bound_in.c, "predictor noise constant (>= 1)");
  bound->add_option("--rho", bound_in.rho, "heaviness threshold (>= 3)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_flags, false);
    if (run_fd->parsed()) return cmd_run(fd_flags, true);
    if (snaps->parsed())
      return cmd_run_snapshots(snap_flags, snap_manifest, snap_paths, snap_kind, snap_retain,
                               snap_wr);
    if (exact_cmd->parsed()) {
      IngestStats stats;
      auto events = ingest_edge_list(exact_stream, {.dedupe = true, .drop_self_loops = true}, &stats);
      auto counts = count_exact(edges_of(events), exact_per_edge || !exact_out.empty());
      std::printf("n=%llu m=%llu global=%llu\n", static_cast<unsigned long long>(stats.nodes),
                  static_cast<unsigned long long>(stats.edges),
                  static_cast<unsigned long long>(counts.global));
      if (!exact_out.empty()) {
        if (!exact_per_edge) counts.per_edge_materialized = false;
        dump_exact_counts(counts, exact_out);
      }
      return 0;
    }
    if (build_oracle->parsed() || build_nowr->parsed() || build_mindeg->parsed() ||
        invert->parsed()) {
      auto events = ingest_edge_list(build_stream, {.dedupe = true, .drop_self_loops = true});
      auto edges = edges_of(events);
      if (build_oracle->parsed()) {
        save_predictor(build_exact_predictor(count_exact(edges, true), build_retain), build_out);
      } else if (build_nowr->parsed()) {
        auto counts = count_exact(edges, true);
        auto covered = count_wr_covered(events, build_wr);
        save_predictor(build_nowr_predictor(counts, covered, build_retain), build_out);
      } else if (build_mindeg->parsed()) {
        if (mindeg_edge_based)
          save_predictor(build_min_degree_edge_predictor(edges, build_retain), build_out);
        else
          save_predictor(build_min_degree_predictor(edges, build_retain), build_out);
      } else {
        if (invert_kind == "exact")
          save_predictor(adversarial_exact_predictor(count_exact(edges, true), build_retain),
                         build_out);
        else if (invert_kind == "mindeg")
          save_predictor(adversarial_min_degree_predictor(edges, build_retain), build_out);
        else
          throw CLI::ValidationError("--kind", "expected exact or mindeg");
      }
      std::printf("wrote %s\n", build_out.c_str());
      return 0;
    }
    if (bound->parsed()) {
      std::printf("%.6f\n", prop1_bound(bound_in));
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
