#ifndef CYCLEWALK_STATS_H_
#define CYCLEWALK_STATS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cyclewalk::stats {

double mean(std::span<const double> xs);
// Unbiased sample variance; 0 for fewer than two samples.
double variance(std::span<const double> xs);
double standard_error(std::span<const double> xs);
double correlation(std::span<const double> xs, std::span<const double> ys);

double poisson_pmf(double mean, std::uint64_t k);

// Normalizes counts to probabilities.
std::vector<double> normalize(std::span<const std::uint64_t> counts);

// Total variation distance between an empirical histogram and a pmf on the
// nonnegative integers: (1/2) sum_k |p_k - q_k|, including the mass of q
// outside the histogram's support.
double tv_distance(std::span<const std::uint64_t> histogram,
                   const std::function<double(std::uint64_t)>& pmf);

// Kolmogorov-Smirnov statistic of the samples against N(mu, sigma^2).
double ks_normal(std::vector<double> xs, double mu, double sigma);

}  // namespace cyclewalk::stats

#endif  // CYCLEWALK_STATS_H_
