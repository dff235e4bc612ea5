#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace smc {

/// Confidence level 1 - alpha, interval half-width epsilon.
struct ConfidenceSpec {
  double alpha = 0.01;
  double epsilon = 0.025;

  /// Throws std::invalid_argument unless 0 < alpha < 1 and 0 < epsilon < 0.5.
  void validate() const;
};

struct Interval01 {
  double lower;
  double upper;
};

/// Inverse standard normal CDF, |error| <= 1e-8 (rational approximation
/// refined by one Newton step). Throws std::domain_error outside (0, 1).
double normal_quantile(double q);

/// Wilson score interval for `p_hat` observed over `n` trials, clamped to [0, 1].
Interval01 wilson_interval(double p_hat, std::int64_t n, double alpha);

/// Smallest N whose Wilson interval around p_hat has half-width at most epsilon:
///   N >= z^2 [p(1-p) - 2e^2 + sqrt(p^2 (1-p)^2 + 4 e^2 (p - 1/2)^2)] / (2 e^2)
/// with z the 1 - alpha/2 normal quantile. Always >= 1.
std::int64_t wilson_sample_size(double p_hat, double epsilon, double alpha);

/// Sample size of the conservative approach (p_hat = 0.5).
std::int64_t conservative_sample_size(const ConfidenceSpec& spec);

struct BatchOutcome {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
};

struct BatchRecord {
  std::int64_t requested = 0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;

  friend bool operator==(const BatchRecord&, const BatchRecord&) = default;
};

struct Estimate {
  double p_hat = 0.0;
  std::int64_t successes = 0;
  std::int64_t n_total = 0;
  double lower = 0.0;
  double upper = 1.0;
  std::vector<BatchRecord> iterations;
};

/// Runs `count` fresh Bernoulli replicas and reports how many succeeded and
/// how many completed (failed replicas are not trials).
using BatchRunner = std::function<BatchOutcome(std::int64_t count)>;

/// Iterative sample-size determination:
///   N = wilson_sample_size(1, e, a); run N
///   loop: p = successes / N_tot
///         p' = p + e if p <= 0.5 else p - e        (clamped to [0, 1])
///         N' = wilson_sample_size(p', e, a)
///         stop when N_tot >= N', else run N' - N_tot more
/// The returned interval is wilson_interval(p, N_tot, a) on the unrounded p.
Estimate iterative_estimate(const BatchRunner& run_batch, const ConfidenceSpec& spec);

/// One batch of `n` replicas, interval from wilson_interval.
Estimate fixed_estimate(const BatchRunner& run_batch, std::int64_t n, const ConfidenceSpec& spec);

}  // namespace smc
