#ifndef CYCLEWALK_THEORY_H_
#define CYCLEWALK_THEORY_H_

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "cyclewalk/rng.h"

// Closed-form limit quantities of the random transposition walk and the
// Erdos-Renyi graph it drives. All functions are pure; out-of-range arguments
// throw std::domain_error.
namespace cyclewalk::theory {

// Limiting mean of the subcritical fragmentation count, (-log(1-c) - c)/2.
double kappa(double c);

// beta_k(c) = (1/c) k^(k-1)/k! (c e^-c)^k, evaluated in log space. For c < 1
// this is the Borel law of the total progeny of a Poisson(c) branching process.
double borel_pmf(double c, std::int64_t k);
double log_borel_pmf(double c, std::int64_t k);

// 1 - sum_k beta_k(c). Zero for c <= 1; for c > 1 the series is summed
// directly, which makes it an independent route to theta(c).
double borel_inf(double c);

// Survival probability of a Poisson(c) Galton-Watson tree: the root of
// theta = 1 - exp(-c theta) in (0,1) for c > 1, else 0.
double theta(double c);

// Extinction probability 1 - theta(c); satisfies rho = exp(-c (1 - rho)).
double rho(double c);

// Limiting number of cycles per element, E[Upsilon(c)]. Closed forms:
// 1 - c/2 for c <= 1 and rho (1 - c rho / 2) above.
double g_components(double c);

// The defining series sum_k (1/c) k^(k-2)/k! (c e^-c)^k, truncated with an
// explicit tail bound. Converges only polynomially at c = 1.
double g_components_series(double c);

// Limiting distance per element, 1 - g(c).
double u_distance(double c);

// c - 1 - log c.
double alpha(double c);

// Standard deviation of the supercritical distance CLT,
// rho [1 + rho (c/2 - 1)]. Requires c > 1.
double sigma_clt(double c);

// Expected number of tree components with k vertices in G(n, p):
// C(n,k) k^(k-2) p^(k-1) (1-p)^(k(n-k) + C(k,2) - k + 1).
double expected_tree_count(std::int64_t n, std::int64_t k, double p);

// Large-k asymptotic of the tree count at p ~ c/n, valid for k <= n^0.7,
// 0 < c <= 1.
double lambda_asymptotic(std::int64_t n, std::int64_t k, double c);

// min(1, exp(-alpha(c) y) / c): tail bound on the size of the cluster of a
// fixed vertex in G(n, c/n).
double cluster_tail_bound(double c, double y);

struct PgwSample {
  // Empty when the tree reached the individual cap (treated as infinite).
  std::optional<std::uint64_t> total_progeny;

  bool infinite() const { return !total_progeny.has_value(); }
};

inline constexpr std::uint64_t kDefaultProgenyCap = 1'000'000;

// Total progeny of a Poisson(c) Galton-Watson tree, simulated generation by
// generation. Trees that reach `cap` individuals are reported as infinite.
PgwSample pgw_progeny_sample(double c, Rng& rng,
                             std::uint64_t cap = kDefaultProgenyCap);

// phi(x) = sum_{k=1}^x (k-1)!, exact.
boost::multiprecision::cpp_int phi_factorial(unsigned x);

}  // namespace cyclewalk::theory

#endif  // CYCLEWALK_THEORY_H_
