#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

namespace qds {

inline constexpr double kZ95 = 1.959963984540054;     // two-sided 95%
inline constexpr double kZ95OneSided = 1.6448536269514722;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for k successes out of n.
Interval wilson(std::size_t k, std::size_t n, double z = kZ95);

/// sqrt(p(1-p)/n).
double binomial_sigma(double p, std::size_t n);

/// Upper tail of the chi-square distribution with one degree of freedom.
double chi2_sf_df1(double x);

/// Upper tail of the standard normal.
double normal_sf(double z);

/// One-sided two-proportion z statistic for "second rate exceeds first".
double two_proportion_z(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2);

struct DecayPoint {
  double n = 0.0;
  std::size_t events = 0;
  std::size_t trials = 0;
};

struct DecayFitPoint {
  double n = 0.0;
  std::size_t events = 0;
  std::size_t trials = 0;
  double freq = 0.0;
  Interval wilson95;
  /// Zero events: the Wilson upper bound stands in for the frequency.
  bool censored = false;
  double p_used = 0.0;
  double weight = 0.0;
};

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  double chi2 = 0.0;
  /// slope + z_{0.95} * slope_se < 0.
  bool decaying = false;
  /// No consecutive pair shows a significant increase (one-sided z at 5%).
  bool non_increasing = true;
  /// The threshold gap used for the fitted constant (0 if none was given).
  double gap = 0.0;
  /// -slope / gap^2.
  double constant = 0.0;
  std::vector<DecayFitPoint> points;

  nlohmann::ordered_json to_json() const;
};

/// Weighted least squares of ln p on n. Each point is weighted by the
/// inverse delta-method variance (1-p)/(N p). Throws InsufficientData for
/// fewer than three points or a point without trials.
DecayFit fit_decay(std::span<const DecayPoint> points, double gap = 0.0);

struct Thresholds {
  double s_a = 0.0;
  double s_v = 0.0;
};

/// Places s_a and s_v between p_e and p_f with gaps in the ratio
/// w_a : w_v : w_f (p_e->s_a, s_a->s_v, s_v->p_f). Equal weights give the
/// equal-spacing solution. Throws InvalidGap unless 0 <= p_e < p_f.
Thresholds optimize_thresholds(double p_e, double p_f, double w_a = 1.0, double w_v = 1.0,
                               double w_f = 1.0);

}  // namespace qds
