#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "tonic/edge.hpp"
#include "tonic/exact.hpp"

namespace tonic {

// |estimate - exact| / exact; falls back to the absolute error (flagged)
// when the exact count is zero.
struct RelativeError {
  double value = 0.0;
  bool absolute = false;
};

RelativeError global_relative_error(double estimate, std::uint64_t exact);

// Spearman rank correlation with averaged tie ranks.
double spearman_rank(std::span<const double> a, std::span<const double> b);

struct LocalMetrics {
  double relative_error = 0.0;
  double spearman = 0.0;
  std::size_t top_size = 0;
};

// Metrics over the nodes in the top `top_fraction` by exact local count
// (ties by node id). Only nodes with a positive exact count are ranked;
// an estimate missing a top node counts as 0. Errors if no node has a
// positive exact count.
LocalMetrics local_metrics(const std::unordered_map<NodeId, double>& locals_hat,
                           const ExactCounts& exact, double top_fraction = 0.2);

// Threshold on the heavy/light triangle-count ratio above which the
// predictor-assisted estimator has lower variance than sampling light edges
// at the higher rate p with no heavy set.
struct VarianceBoundInputs {
  double p = 0.0;        // baseline sampling probability
  double p_prime = 0.0;  // reduced light sampling probability, < p
  double c = 1.0;        // predictor noise constant, >= 1
  double rho = 3.0;      // heaviness threshold, >= 3
};

double prop1_bound(const VarianceBoundInputs& in);

double mean_of(std::span<const double> xs);
double sample_std(std::span<const double> xs);  // n-1 denominator
double sample_variance(std::span<const double> xs);

}  // namespace tonic
