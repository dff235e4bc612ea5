#include "smc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smc {

void ConfidenceSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("epsilon must lie in (0, 0.5)");
}

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("normal_quantile: q must lie in (0, 1)");

  // Acklam's rational approximation, relative error ~1.2e-9.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;

  double x;
  if (q < low) {
    const double r = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  } else if (q > 1.0 - low) {
    const double r = std::sqrt(-2.0 * std::log1p(-q));
    x = -(((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
  } else {
    const double s = q - 0.5;
    const double r = s * s;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * s /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  // Newton step on Phi(x) - q.
  const double cdf = 0.5 * std::erfc(-x / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return x - (cdf - q) / pdf;
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

double z_for(double alpha) { return normal_quantile(1.0 - alpha / 2.0); }

}  // namespace

Interval01 wilson_interval(double p_hat, std::int64_t n, double alpha) {
  if (!(p_hat >= 0.0 && p_hat <= 1.0)) throw std::invalid_argument("p_hat must lie in [0, 1]");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  check_alpha(alpha);
  const double z = z_for(alpha);
  const double z2 = z * z;
  const double nd = static_cast<double>(n);
  const double denom = 1.0 + z2 / nd;
  // Upper bound at p is one minus the lower bound at 1 - p; computing it that
  // way keeps U(1) = 1 exact, like L(0) = 0.
  const auto lower_bound = [&](double p) {
    const double center = p + z2 / (2.0 * nd);
    const double spread = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd));
    return std::clamp((center - spread) / denom, 0.0, 1.0);
  };
  return {lower_bound(p_hat), 1.0 - lower_bound(1.0 - p_hat)};
}

std::int64_t wilson_sample_size(double p_hat, double epsilon, double alpha) {
  if (!(p_hat >= 0.0 && p_hat <= 1.0)) throw std::invalid_argument("p_hat must lie in [0, 1]");
  ConfidenceSpec{alpha, epsilon}.validate();
  const double z = z_for(alpha);
  const double e2 = epsilon * epsilon;
  const double v = p_hat * (1.0 - p_hat);
  const double d = p_hat - 0.5;
  const double bound = z * z * (v - 2.0 * e2 + std::sqrt(v * v + 4.0 * e2 * d * d)) / (2.0 * e2);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(bound)));
}

std::int64_t conservative_sample_size(const ConfidenceSpec& spec) {
  return wilson_sample_size(0.5, spec.epsilon, spec.alpha);
}

namespace {

BatchOutcome run_checked(const BatchRunner& run_batch, std::int64_t count) {
  BatchOutcome out = run_batch(count);
  if (out.trials < 0 || out.trials > count || out.successes < 0 || out.successes > out.trials) {
    throw std::logic_error("batch runner returned an inconsistent outcome");
  }
  if (out.trials == 0) throw std::runtime_error("batch of " + std::to_string(count) + " produced no trials");
  return out;
}

void finish(Estimate& est, double alpha) {
  est.p_hat = static_cast<double>(est.successes) / static_cast<double>(est.n_total);
  const auto ci = wilson_interval(est.p_hat, est.n_total, alpha);
  est.lower = ci.lower;
  est.upper = ci.upper;
}

}  // namespace

Estimate iterative_estimate(const BatchRunner& run_batch, const ConfidenceSpec& spec) {
  spec.validate();
  Estimate est;
  std::int64_t request = wilson_sample_size(1.0, spec.epsilon, spec.alpha);
  for (;;) {
    const BatchOutcome out = run_checked(run_batch, request);
    est.iterations.push_back({request, out.trials, out.successes});
    est.successes += out.successes;
    est.n_total += out.trials;

    const double p_hat = static_cast<double>(est.successes) / static_cast<double>(est.n_total);
    const double rounded = std::clamp(p_hat <= 0.5 ? p_hat + spec.epsilon : p_hat - spec.epsilon, 0.0, 1.0);
    const std::int64_t needed = wilson_sample_size(rounded, spec.epsilon, spec.alpha);
    if (needed <= est.n_total) break;
    request = needed - est.n_total;
  }
  finish(est, spec.alpha);
  return est;
}

Estimate fixed_estimate(const BatchRunner& run_batch, std::int64_t n, const ConfidenceSpec& spec) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("sample size must be at least 1");
  const BatchOutcome out = run_checked(run_batch, n);
  Estimate est;
  est.iterations.push_back({n, out.trials, out.successes});
  est.successes = out.successes;
  est.n_total = out.trials;
  finish(est, spec.alpha);
  return est;
}

}  // namespace smc
