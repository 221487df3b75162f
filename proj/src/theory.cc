#include "cyclewalk/theory.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace cyclewalk::theory {
namespace {

constexpr double kSeriesEpsilon = 1e-15;
constexpr std::int64_t kMaxSeriesTerms = 5'000'000;
constexpr double kCriticalSlack = 1e-12;

void require(bool ok, const char* fn, const std::string& what) {
  if (!ok) throw std::domain_error(std::string(fn) + ": " + what);
}

// log of (1/c) k^(k-power) / k! (c e^-c)^k.
double log_lagrange_term(double c, std::int64_t k, int power) {
  const double kd = static_cast<double>(k);
  return -std::log(c) + (kd - power) * std::log(kd) - std::lgamma(kd + 1.0) +
         kd * (std::log(c) - c);
}

// Upper bound on sum_{k>K} (1/c) k^(k-power)/k! (c e^-c)^k using Stirling,
// k^(k-power)/k! <= e^k k^(1/2-power) / sqrt(2 pi); the summand envelope is
// k^-p e^(-alpha k) with p = power - 1/2.
double lagrange_tail_bound(double c, std::int64_t last, int power) {
  const double p = power - 0.5;
  const double a = std::max(0.0, alpha(c));
  const double next = static_cast<double>(last + 1);
  // The integral envelope only converges for p > 1.
  double bound = p > 1.0 ? std::pow(static_cast<double>(last), 1.0 - p) / (p - 1.0)
                         : std::numeric_limits<double>::infinity();
  if (a > 0) {
    bound = std::min(bound, std::pow(next, -p) * std::exp(-a * next) /
                                -std::expm1(-a));
  }
  return bound / (c * std::sqrt(2.0 * std::numbers::pi));
}

double lagrange_series(double c, int power) {
  double sum = 0.0;
  double compensation = 0.0;
  for (std::int64_t k = 1; k <= kMaxSeriesTerms; ++k) {
    // Kahan summation; the series can run to millions of terms near c = 1.
    const double term = std::exp(log_lagrange_term(c, k, power));
    const double y = term - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
    if (k >= 8 && lagrange_tail_bound(c, k, power) < kSeriesEpsilon * sum) break;
  }
  return sum;
}

}  // namespace

double kappa(double c) {
  require(c >= 0.0 && c < 1.0, "kappa", "requires 0 <= c < 1");
  return (-std::log1p(-c) - c) / 2.0;
}

double log_borel_pmf(double c, std::int64_t k) {
  require(c > 0.0, "borel_pmf", "requires c > 0");
  require(k >= 1, "borel_pmf", "requires k >= 1");
  return log_lagrange_term(c, k, 1);
}

double borel_pmf(double c, std::int64_t k) { return std::exp(log_borel_pmf(c, k)); }

double borel_inf(double c) {
  require(c > 0.0, "borel_inf", "requires c > 0");
  if (c <= 1.0) return 0.0;
  return std::max(0.0, 1.0 - lagrange_series(c, 1));
}

double theta(double c) {
  require(c > 0.0, "theta", "requires c > 0");
  if (c <= 1.0 + kCriticalSlack) return 0.0;
  // (1 - e^{-ct})/t - 1 is decreasing in t, positive below the root.
  auto excess = [c](double t) { return -std::expm1(-c * t) / t - 1.0; };
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 2000 && hi - lo > 0.0; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double rho(double c) {
  require(c > 0.0, "rho", "requires c > 0");
  return 1.0 - theta(c);
}

double g_components(double c) {
  require(c > 0.0, "g_components", "requires c > 0");
  if (c <= 1.0) return 1.0 - c / 2.0;
  const double r = rho(c);
  return r * (1.0 - c * r / 2.0);
}

double g_components_series(double c) {
  require(c > 0.0, "g_components_series", "requires c > 0");
  return lagrange_series(c, 2);
}

double u_distance(double c) { return 1.0 - g_components(c); }

double alpha(double c) {
  require(c > 0.0, "alpha", "requires c > 0");
  return c - 1.0 - std::log(c);
}

double sigma_clt(double c) {
  require(c > 1.0, "sigma_clt", "requires c > 1");
  const double r = rho(c);
  return r * (1.0 + r * (c / 2.0 - 1.0));
}

double expected_tree_count(std::int64_t n, std::int64_t k, double p) {
  require(n >= 1, "expected_tree_count", "requires n >= 1");
  require(k >= 1 && k <= n, "expected_tree_count", "requires 1 <= k <= n");
  require(p >= 0.0 && p <= 1.0, "expected_tree_count", "requires 0 <= p <= 1");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double tree_edges = kd - 1.0;
  const double absent = kd * (nd - kd) + kd * (kd - 1.0) / 2.0 - kd + 1.0;
  double log_value = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) -
                     std::lgamma(nd - kd + 1.0) + (kd - 2.0) * std::log(kd);
  // 0 * log(0) terms are taken as zero.
  if (tree_edges > 0.0) {
    if (p == 0.0) return 0.0;
    log_value += tree_edges * std::log(p);
  }
  if (absent > 0.0) {
    if (p == 1.0) return 0.0;
    log_value += absent * std::log1p(-p);
  }
  return std::exp(log_value);
}

double lambda_asymptotic(std::int64_t n, std::int64_t k, double c) {
  require(n >= 1, "lambda_asymptotic", "requires n >= 1");
  require(k >= 1 && static_cast<double>(k) <= std::pow(static_cast<double>(n), 0.7),
          "lambda_asymptotic", "requires 1 <= k <= n^0.7");
  require(c > 0.0 && c <= 1.0, "lambda_asymptotic", "requires 0 < c <= 1");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double prefactor =
      nd * std::pow(kd, -2.5) / (c * std::sqrt(2.0 * std::numbers::pi));
  return prefactor * std::exp(-alpha(c) * kd + (c - 1.0) * kd * kd / (2.0 * nd) -
                              kd * kd * kd / (3.0 * nd * nd));
}

double cluster_tail_bound(double c, double y) {
  require(c > 0.0, "cluster_tail_bound", "requires c > 0");
  require(y > 0.0, "cluster_tail_bound", "requires y > 0");
  return std::min(1.0, std::exp(-alpha(c) * y) / c);
}

PgwSample pgw_progeny_sample(double c, Rng& rng, std::uint64_t cap) {
  require(c > 0.0, "pgw_progeny_sample", "requires c > 0");
  // The sum of m independent Poisson(c) litters is Poisson(c m).
  std::uint64_t total = 1;
  std::uint64_t generation = 1;
  while (generation > 0) {
    if (total >= cap) return PgwSample{};
    std::poisson_distribution<std::uint64_t> litter(c * static_cast<double>(generation));
    generation = litter(rng);
    total += generation;
  }
  if (total >= cap) return PgwSample{};
  return PgwSample{total};
}

boost::multiprecision::cpp_int phi_factorial(unsigned x) {
  boost::multiprecision::cpp_int sum = 0;
  boost::multiprecision::cpp_int factorial = 1;  // (k-1)!
  for (unsigned k = 1; k <= x; ++k) {
    if (k > 1) factorial *= (k - 1);
    sum += factorial;
  }
  return sum;
}

}  // namespace cyclewalk::theory
