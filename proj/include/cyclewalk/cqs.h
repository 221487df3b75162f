#ifndef CYCLEWALK_CQS_H_
#define CYCLEWALK_CQS_H_

#include <cstdint>
#include <vector>

#include "cyclewalk/rng.h"

namespace cyclewalk {

// Occupancies xi^k for levels k = 1..floor(n^a): independent birth-death
// chains with birth rate 1 and death rate k xi^k, all starting empty.
class CqsState {
 public:
  CqsState(std::uint32_t n, double a);

  std::uint32_t levels() const { return static_cast<std::uint32_t>(occupancy_.size()) - 1; }
  std::uint32_t occupancy(std::uint32_t k) const { return occupancy_.at(k); }
  std::uint64_t total() const { return total_; }        // sum_k xi^k
  std::uint64_t weighted() const { return weighted_; }  // sum_k k xi^k
  double clock() const { return clock_; }

  // Advances by one event, or stops at `horizon` if the next event would come
  // later. Returns false once the horizon is reached.
  bool advance(double horizon, Rng& rng);

  // Integral of xi^k over [0, clock].
  double occupancy_integral(std::uint32_t k) const { return integral_.at(k); }

 private:
  void accumulate(double dt);

  std::vector<std::uint32_t> occupancy_;  // index 0 unused
  std::vector<double> integral_;
  std::vector<std::uint32_t> occupied_;   // levels with xi^k > 0
  std::uint64_t total_ = 0;
  std::uint64_t weighted_ = 0;
  double clock_ = 0.0;
};

struct CqsRun {
  std::uint32_t levels = 0;
  std::uint64_t sup_total = 0;     // sup_t sum_k xi^k
  std::uint64_t sup_weighted = 0;  // sup_t sum_k k xi^k
  std::uint64_t events = 0;
  std::vector<double> mean_occupancy;  // time average of xi^k, index k
};

// Exact event-driven simulation over [0, horizon_c].
CqsRun simulate_cqs(std::uint32_t n, double a, double horizon_c, Rng& rng);

struct ExcursionRecord {
  std::uint32_t max_level = 0;  // M
  std::uint64_t duration = 0;   // embedded steps until the return to 0
};

// One excursion of the embedded chain from 1 back to 0: from m it moves to
// m - 1 with probability m/(m+1) and to m + 1 with probability 1/(m+1).
ExcursionRecord sample_excursion(Rng& rng);

// Empirical P(M > x) for x = 0..x_max over `count` excursions.
std::vector<double> excursion_max_distribution(std::uint32_t x_max, std::uint64_t count,
                                               Rng& rng);

// 1 / phi(x + 1).
double excursion_tail_exact(std::uint32_t x);

}  // namespace cyclewalk

#endif  // CYCLEWALK_CQS_H_
