#include "tonic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tonic {

RelativeError global_relative_error(double estimate, std::uint64_t exact) {
  double diff = std::abs(estimate - static_cast<double>(exact));
  if (exact == 0) return {diff, true};
  return {diff / static_cast<double>(exact), false};
}

namespace {

// Midranks: equal values share the average of the ranks they span.
std::vector<double> midranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    double rank = static_cast<double>(i + j) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  double ma = mean_of(a), mb = mean_of(b);
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ma) * (b[i] - mb);
    da += (a[i] - ma) * (a[i] - ma);
    db += (b[i] - mb) * (b[i] - mb);
  }
  if (da == 0.0 || db == 0.0) return 0.0;  // a constant ranking carries no order
  return num / std::sqrt(da * db);
}

}  // namespace

double spearman_rank(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  if (a.empty()) throw std::invalid_argument("empty input");
  auto ra = midranks(a);
  auto rb = midranks(b);
  return pearson(ra, rb);
}

LocalMetrics local_metrics(const std::unordered_map<NodeId, double>& locals_hat,
                           const ExactCounts& exact, double top_fraction) {
  if (!(top_fraction > 0.0 && top_fraction <= 1.0))
    throw std::invalid_argument("top_fraction must be in (0, 1]");
  std::vector<std::pair<NodeId, std::uint64_t>> positive;
  for (const auto& [u, t] : exact.local)
    if (t > 0) positive.emplace_back(u, t);
  if (positive.empty()) throw std::invalid_argument("no node has a positive triangle count");

  std::sort(positive.begin(), positive.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  auto top_size = static_cast<std::size_t>(
      std::ceil(top_fraction * static_cast<double>(positive.size()) - 1e-9));
  top_size = std::clamp<std::size_t>(top_size, 1, positive.size());

  std::vector<double> truth(top_size), estimate(top_size);
  double err_sum = 0.0;
  for (std::size_t i = 0; i < top_size; ++i) {
    auto [u, t] = positive[i];
    auto it = locals_hat.find(u);
    double hat = it == locals_hat.end() ? 0.0 : it->second;
    truth[i] = static_cast<double>(t);
    estimate[i] = hat;
    err_sum += std::abs(hat - truth[i]) / truth[i];
  }
  LocalMetrics out;
  out.top_size = top_size;
  out.relative_error = err_sum / static_cast<double>(top_size);
  out.spearman = top_size == 1 ? 1.0 : spearman_rank(truth, estimate);
  return out;
}

double prop1_bound(const VarianceBoundInputs& in) {
  if (!(in.p_prime > 0.0 && in.p_prime < in.p && in.p <= 1.0))
    throw std::invalid_argument("require 0 < p' < p <= 1");
  if (in.c < 1.0) throw std::invalid_argument("require c >= 1");
  if (in.rho < 3.0) throw std::invalid_argument("require rho >= 3");
  if (in.p == 1.0) throw std::invalid_argument("p = 1 leaves no sampling slack");
  double inv_p = 1.0 / in.p, inv_pp = 1.0 / in.p_prime;
  double numerator = (inv_pp * inv_pp - inv_p * inv_p) + in.c * in.rho * (inv_pp - inv_p);
  double denominator = (inv_p - 1.0) * (3.0 + 4.0 * in.rho / in.c);
  return 3.0 * numerator / denominator;
}

double mean_of(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("empty input");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / static_cast<double>(xs.size() - 1);
}

double sample_std(std::span<const double> xs) { return std::sqrt(sample_variance(xs)); }

}  // namespace tonic
