#include <doctest.h>

#include <cmath>
#include <vector>

#include "cyclewalk/replicate.h"
#include "cyclewalk/rng.h"
#include "cyclewalk/stats.h"

using namespace cyclewalk;
using doctest::Approx;

TEST_SUITE("stats") {

TEST_CASE("moments") {
  const std::vector<double> xs{1, 2, 3, 4};
  CHECK(stats::mean(xs) == Approx(2.5));
  CHECK(stats::variance(xs) == Approx(5.0 / 3.0));
  CHECK(stats::standard_error(xs) == Approx(std::sqrt(5.0 / 12.0)));
  const std::vector<double> ys{2, 4, 6, 8}, zs{8, 6, 4, 2};
  CHECK(stats::correlation(xs, ys) == Approx(1.0));
  CHECK(stats::correlation(xs, zs) == Approx(-1.0));
}

TEST_CASE("poisson pmf and tv distance") {
  CHECK(stats::poisson_pmf(2.0, 0) == Approx(std::exp(-2.0)));
  CHECK(stats::poisson_pmf(2.0, 3) == Approx(8.0 / 6.0 * std::exp(-2.0)));
  CHECK(stats::poisson_pmf(0.0, 0) == 1.0);
  const std::vector<std::uint64_t> hist{1, 1};
  // Uniform on {0, 1} against point mass at 0.
  CHECK(stats::tv_distance(hist, [](std::uint64_t k) { return k == 0 ? 1.0 : 0.0; }) == Approx(0.5));
  // Mass outside the observed support counts.
  const std::vector<std::uint64_t> point{5};
  CHECK(stats::tv_distance(point, [](std::uint64_t k) { return k <= 1 ? 0.5 : 0.0; }) == Approx(0.5));
}

TEST_CASE("ks statistic") {
  Rng rng = make_stream(5, 0);
  std::normal_distribution<double> normal(1.0, 2.0);
  std::vector<double> xs(20000);
  for (double& x : xs) x = normal(rng);
  CHECK(stats::ks_normal(xs, 1.0, 2.0) < 0.02);
  CHECK(stats::ks_normal(xs, 0.0, 2.0) > 0.15);
  CHECK(stats::ks_normal({0.0}, 0.0, 1.0) == Approx(0.5));
}

TEST_CASE("replication is deterministic for any worker count") {
  auto draw = [](std::size_t rep, Rng& rng) { return rep * 1000003ULL + rng(); };
  const auto one = replicate(257, 42, 1, draw);
  const auto four = replicate(257, 42, 4, draw);
  CHECK(one == four);
  CHECK(replicate(3, 43, 2, draw) != replicate(3, 42, 2, draw));
  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
  CHECK_THROWS(replicate(8, 1, 3, [](std::size_t rep, Rng&) -> int {
    if (rep == 5) throw std::runtime_error("boom");
    return 0;
  }));
}

}  // TEST_SUITE
