#include "tonic/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "tonic/exact.hpp"
#include "tonic/metrics.hpp"
#include "tonic/stream_io.hpp"

namespace tonic {

namespace {

std::string fmt_double(double v, const char* spec = "%.17g") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

const char* mode_name(EngineMode mode) {
  return mode == EngineMode::fully_dynamic ? "fully_dynamic" : "insertion_only";
}

// Exact triangle counts at each trace point, plus the final count.
struct ExactBaseline {
  std::vector<TraceRow> points;  // estimate field unused
  std::uint64_t final_count = 0;
};

ExactBaseline exact_baseline(std::span<const StreamEvent> events, std::uint64_t stride) {
  ExactBaseline base;
  IncrementalTriangleCounter counter;
  std::uint64_t t = 0;
  for (const StreamEvent& ev : events) {
    ++t;
    if (ev.sign == Sign::insert)
      counter.insert(ev.edge);
    else
      counter.erase(ev.edge);
    if (stride > 0 && (t % stride == 0 || t == events.size()))
      base.points.push_back({t, 0.0, counter.triangles()});
  }
  base.final_count = counter.triangles();
  return base;
}

std::uint64_t budget_for(std::span<const StreamEvent> events, const ExperimentConfig& cfg) {
  if (cfg.budget) return *cfg.budget;
  std::uint64_t basis = cfg.mode == EngineMode::fully_dynamic
                            ? max_concurrent_edges(events)
                            : static_cast<std::uint64_t>(events.size());
  auto k = static_cast<std::uint64_t>(
      std::floor(cfg.mem_fraction * static_cast<double>(basis) + 1e-9));
  return std::max<std::uint64_t>(k, 2);
}

}  // namespace

unsigned resolve_thread_cap(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TONIC_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

CampaignReport run_campaign(std::span<const StreamEvent> events, const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  ZeroPredictor zero;
  const Predictor& predictor = cfg.predictor ? *cfg.predictor : zero;

  CampaignReport report;
  report.k = budget_for(events, cfg);
  SamplerConfig sampler_cfg = SamplerConfig::create(report.k, cfg.alpha, cfg.beta);

  ExactBaseline baseline = exact_baseline(events, cfg.trace_stride);
  report.exact = baseline.final_count;
  report.exact_is_zero = report.exact == 0;

  report.trials.resize(cfg.trials);
  std::atomic<std::uint32_t> next{0};
  auto run_trial = [&](std::uint32_t trial) {
    TrialReport& out = report.trials[trial];
    out.trial = trial;
    out.seed = derive_seed(cfg.seed, trial);
    TriangleEstimator engine(sampler_cfg, cfg.mode, predictor, out.seed, cfg.strict_fd);

    std::size_t trace_idx = 0;
    auto started = std::chrono::steady_clock::now();
    for (const StreamEvent& ev : events) {
      engine.process(ev);
      if (trace_idx < baseline.points.size() && ev.t == baseline.points[trace_idx].t) {
        out.trace.push_back({ev.t, engine.global(), baseline.points[trace_idx].exact});
        ++trace_idx;
      }
    }
    if (cfg.measure_runtime) {
      auto elapsed = std::chrono::steady_clock::now() - started;
      out.runtime_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    out.estimate = engine.global();
    if (cfg.collect_locals) {
      auto locals = engine.report().locals;
      out.locals.assign(locals.begin(), locals.end());
      std::sort(out.locals.begin(), out.locals.end());
    }
  };

  unsigned threads = std::min<unsigned>(resolve_thread_cap(cfg.max_threads), cfg.trials);
  if (threads <= 1) {
    for (std::uint32_t i = 0; i < cfg.trials; ++i) run_trial(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (std::uint32_t i = next.fetch_add(1); i < cfg.trials; i = next.fetch_add(1))
          run_trial(i);
      });
    for (std::thread& th : pool) th.join();
  }

  std::vector<double> estimates, errors, runtimes;
  estimates.reserve(cfg.trials);
  for (const TrialReport& tr : report.trials) {
    estimates.push_back(tr.estimate);
    errors.push_back(global_relative_error(tr.estimate, report.exact).value);
    runtimes.push_back(tr.runtime_ms);
  }
  report.mean_estimate = mean_of(estimates);
  report.std_estimate = sample_std(estimates);
  report.mean_rel_error = mean_of(errors);
  report.std_rel_error = sample_std(errors);
  report.min_rel_error = *std::min_element(errors.begin(), errors.end());
  report.max_rel_error = *std::max_element(errors.begin(), errors.end());
  report.mean_runtime_ms = mean_of(runtimes);
  return report;
}

CampaignReport run_fd_campaign(std::span<const StreamEvent> events, const ExperimentConfig& cfg) {
  ExperimentConfig fd_cfg = cfg;
  fd_cfg.mode = EngineMode::fully_dynamic;
  return run_campaign(events, fd_cfg);
}

std::vector<SnapshotResult> run_snapshot_campaign(const SnapshotSequence& seq,
                                                  const ExperimentConfig& cfg,
                                                  const PredictorSpec& spec) {
  if (seq.size() < 2) throw std::invalid_argument("need at least 2 snapshots");

  auto as_stream = [](const std::vector<Edge>& snapshot) {
    std::vector<Edge> sorted(snapshot.begin(), snapshot.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<StreamEvent> events;
    events.reserve(sorted.size());
    for (const Edge& e : sorted) events.push_back({e, Sign::insert, events.size() + 1});
    return events;
  };

  std::vector<StreamEvent> training = as_stream(seq.snapshots.front());
  std::unique_ptr<Predictor> predictor = build_predictor(spec, training);

  std::vector<SnapshotResult> results;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    ExperimentConfig sub = cfg;
    sub.dataset = seq.labels.size() > i ? seq.labels[i] : cfg.dataset + "#" + std::to_string(i);
    sub.predictor = predictor.get();
    sub.seed = derive_seed(cfg.seed, i);
    auto events = as_stream(seq.snapshots[i]);
    results.push_back({sub.dataset, run_campaign(events, sub)});
  }
  return results;
}

namespace {

void write_rows(std::ostream& out, const ExperimentConfig& cfg, const CampaignReport& report) {
  for (const TrialReport& tr : report.trials) {
    double err = global_relative_error(tr.estimate, report.exact).value;
    out << cfg.dataset << ',' << mode_name(cfg.mode) << ',' << report.k << ','
        << fmt_double(cfg.alpha, "%g") << ',' << fmt_double(cfg.beta, "%g") << ','
        << cfg.predictor_label << ',' << tr.trial << ',' << tr.seed << ','
        << fmt_double(tr.estimate) << ',' << report.exact << ',' << fmt_double(err) << ','
        << fmt_double(tr.runtime_ms, "%.3f") << '\n';
  }
}

constexpr const char* kCsvHeader =
    "dataset,mode,k,alpha,beta,predictor,trial,seed,estimate,exact,rel_error,runtime_ms";

}  // namespace

void write_campaign_csv(std::ostream& out, const ExperimentConfig& cfg,
                        const CampaignReport& report, bool header) {
  if (header) out << kCsvHeader << '\n';
  write_rows(out, cfg, report);
}

void write_campaign_csv(const std::string& path, const ExperimentConfig& cfg,
                        const CampaignReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_campaign_csv(out, cfg, report, true);
}

void write_snapshot_csv(const std::string& path, const ExperimentConfig& cfg,
                        std::span<const SnapshotResult> results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << kCsvHeader << '\n';
  for (const SnapshotResult& res : results) {
    ExperimentConfig sub = cfg;
    sub.dataset = res.label;
    write_rows(out, sub, res.report);
  }
}

void write_trace_csv(const std::string& path, const ExperimentConfig& cfg,
                     const CampaignReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "dataset,trial,t,estimate,exact,rel_error\n";
  for (const TrialReport& tr : report.trials)
    for (const TraceRow& row : tr.trace) {
      double err = global_relative_error(row.estimate, row.exact).value;
      out << cfg.dataset << ',' << tr.trial << ',' << row.t << ',' << fmt_double(row.estimate)
          << ',' << row.exact << ',' << fmt_double(err) << '\n';
    }
}

}  // namespace tonic
