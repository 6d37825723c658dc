#include <algorithm>
#include <random>

#include "doctest.h"
#include "support/testgen.hpp"
#include "tonic/metrics.hpp"

using namespace tonic;

TEST_CASE("global relative error basics") {
  CHECK(global_relative_error(90.0, 100).value == doctest::Approx(0.1));
  CHECK_FALSE(global_relative_error(90.0, 100).absolute);
  CHECK(global_relative_error(100.0, 100).value == 0.0);
  auto zero = global_relative_error(4.5, 0);
  CHECK(zero.absolute);
  CHECK(zero.value == doctest::Approx(4.5));
}

TEST_CASE("variance bound reproduces the published operating points") {
  // p = 0.1, p' = 0.09, c = 1.5: threshold 0.45 at rho = 10, 0.24 at rho = 100.
  CHECK(prop1_bound({0.1, 0.09, 1.5, 10.0}) == doctest::Approx(0.45).epsilon(0.012));
  CHECK(prop1_bound({0.1, 0.09, 1.5, 100.0}) == doctest::Approx(0.24).epsilon(0.021));
}

TEST_CASE("variance bound input validation") {
  CHECK_THROWS_AS(prop1_bound({1.0, 0.9, 1.5, 10.0}), std::invalid_argument);  // p == 1
  CHECK_THROWS_AS(prop1_bound({0.1, 0.2, 1.5, 10.0}), std::invalid_argument);  // p' >= p
  CHECK_THROWS_AS(prop1_bound({0.1, 0.09, 0.5, 10.0}), std::invalid_argument);
  CHECK_THROWS_AS(prop1_bound({0.1, 0.09, 1.5, 2.0}), std::invalid_argument);
}

TEST_CASE("variance bound vanishes as the sampling gap closes") {
  double prev = prop1_bound({0.1, 0.0999, 1.5, 10.0});
  for (double pp : {0.09999, 0.099999}) {
    double b = prop1_bound({0.1, pp, 1.5, 10.0});
    CHECK(b < prev);
    prev = b;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("variance bound decreases in rho when c is one") {
  for (auto [p, pp] : std::vector<std::pair<double, double>>{{0.1, 0.09}, {0.5, 0.3}, {0.2, 0.19}}) {
    double prev = prop1_bound({p, pp, 1.0, 3.0});
    for (double rho = 4.0; rho <= 200.0; rho += 7.0) {
      double b = prop1_bound({p, pp, 1.0, rho});
      CHECK(b < prev);
      prev = b;
    }
  }
}

TEST_CASE("spearman basics") {
  std::vector<double> a = {1, 2, 3, 4, 5};
  std::vector<double> b = {10, 20, 30, 40, 50};
  CHECK(spearman_rank(a, b) == doctest::Approx(1.0));
  std::vector<double> rev = {50, 40, 30, 20, 10};
  CHECK(spearman_rank(a, rev) == doctest::Approx(-1.0));
}

TEST_CASE("spearman matches an independent rank computation under ties and noise") {
  std::mt19937_64 rng(404);
  std::vector<double> a(40), b(40);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<double>(rng() % 12);  // deliberate ties
    b[i] = a[i] + static_cast<double>(rng() % 7) - 3.0;
  }
  // Oracle: midranks via per-element counting (rank = #smaller + (#equal+1)/2).
  auto midrank = [](const std::vector<double>& xs) {
    std::vector<double> r(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double smaller = 0, equal = 0;
      for (double x : xs) {
        if (x < xs[i]) ++smaller;
        if (x == xs[i]) ++equal;
      }
      r[i] = smaller + (equal + 1.0) / 2.0;
    }
    return r;
  };
  auto ra = midrank(a);
  auto rb = midrank(b);
  double mean_a = mean_of(ra), mean_b = mean_of(rb);
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    num += (ra[i] - mean_a) * (rb[i] - mean_b);
    da += (ra[i] - mean_a) * (ra[i] - mean_a);
    db += (rb[i] - mean_b) * (rb[i] - mean_b);
  }
  double expect = num / std::sqrt(da * db);
  CHECK(spearman_rank(a, b) == doctest::Approx(expect).epsilon(1e-12));
}

namespace {

ExactCounts fake_exact(std::initializer_list<std::pair<NodeId, std::uint64_t>> locals) {
  ExactCounts counts;
  for (auto [u, t] : locals) counts.local[u] = t;
  return counts;
}

}  // namespace

TEST_CASE("local metrics: perfect estimates give zero error and full correlation") {
  auto exact = fake_exact({{1, 50}, {2, 40}, {3, 30}, {4, 20}, {5, 10}});
  std::unordered_map<NodeId, double> hat;
  for (const auto& [u, t] : exact.local) hat[u] = static_cast<double>(t);
  auto m = local_metrics(hat, exact, 1.0);
  CHECK(m.top_size == 5);
  CHECK(m.relative_error == 0.0);
  CHECK(m.spearman == doctest::Approx(1.0));
}

TEST_CASE("local metrics: reversed distinct ranking gives spearman -1") {
  auto exact = fake_exact({{1, 50}, {2, 40}, {3, 30}, {4, 20}, {5, 10}});
  std::unordered_map<NodeId, double> hat = {{1, 10}, {2, 20}, {3, 30}, {4, 40}, {5, 50}};
  auto m = local_metrics(hat, exact, 1.0);
  CHECK(m.spearman == doctest::Approx(-1.0));
}

TEST_CASE("local metrics: top fraction selects by exact count with id ties") {
  auto exact = fake_exact({{1, 9}, {2, 9}, {3, 5}, {4, 5}, {5, 1}});
  std::unordered_map<NodeId, double> hat = {{1, 9}, {2, 0}, {3, 5}, {4, 5}, {5, 1}};
  auto m = local_metrics(hat, exact, 0.4);  // top 2 of 5 -> nodes 1 and 2
  CHECK(m.top_size == 2);
  CHECK(m.relative_error == doctest::Approx(0.5));  // node 2 missed entirely
}

TEST_CASE("local metrics: missing estimates count as zero") {
  auto exact = fake_exact({{1, 10}, {2, 8}, {3, 2}});
  std::unordered_map<NodeId, double> hat = {{1, 10}};
  auto m = local_metrics(hat, exact, 1.0);
  CHECK(m.top_size == 3);
  CHECK(m.relative_error == doctest::Approx((0.0 + 1.0 + 1.0) / 3.0));
}

TEST_CASE("local metrics reject an all-zero ground truth") {
  ExactCounts counts;
  std::unordered_map<NodeId, double> hat;
  CHECK_THROWS_AS(local_metrics(hat, counts, 0.2), std::invalid_argument);
}

TEST_CASE("mean and sample deviation helpers") {
  std::vector<double> xs = {2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean_of(xs) == doctest::Approx(5.0));
  CHECK(sample_variance(xs) == doctest::Approx(32.0 / 7.0));
  CHECK(sample_std(std::vector<double>{3.0}) == 0.0);
}
