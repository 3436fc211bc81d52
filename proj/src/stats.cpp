#include "qds/stats.hpp"

#include <algorithm>
#include <cmath>

#include "qds/errors.hpp"

namespace qds {

Interval wilson(std::size_t k, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

double binomial_sigma(double p, std::size_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double chi2_sf_df1(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double two_proportion_z(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2) {
  if (n1 == 0 || n2 == 0) return 0.0;
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  const double p1 = static_cast<double>(k1) / a;
  const double p2 = static_cast<double>(k2) / b;
  const double pool = static_cast<double>(k1 + k2) / (a + b);
  const double var = pool * (1.0 - pool) * (1.0 / a + 1.0 / b);
  if (var <= 0.0) return 0.0;
  return (p2 - p1) / std::sqrt(var);
}

nlohmann::ordered_json DecayFit::to_json() const {
  nlohmann::ordered_json j;
  j["slope"] = slope;
  j["slope_se"] = slope_se;
  j["intercept"] = intercept;
  j["intercept_se"] = intercept_se;
  j["chi2"] = chi2;
  j["decaying"] = decaying;
  j["non_increasing"] = non_increasing;
  j["gap"] = gap;
  j["constant"] = constant;
  auto pts = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    pts.push_back({{"n", p.n},
                   {"events", p.events},
                   {"trials", p.trials},
                   {"freq", p.freq},
                   {"wilson_lo", p.wilson95.lo},
                   {"wilson_hi", p.wilson95.hi},
                   {"censored", p.censored},
                   {"p_used", p.p_used}});
  }
  j["points"] = pts;
  return j;
}

DecayFit fit_decay(std::span<const DecayPoint> points, double gap) {
  if (points.size() < 3) throw InsufficientData("decay fit needs at least three grid points");
  DecayFit fit;
  fit.gap = gap;
  double sw = 0, swx = 0, swy = 0;
  for (const auto& pt : points) {
    if (pt.trials == 0) throw InsufficientData("grid point without trials");
    DecayFitPoint fp;
    fp.n = pt.n;
    fp.events = pt.events;
    fp.trials = pt.trials;
    const double N = static_cast<double>(pt.trials);
    fp.freq = static_cast<double>(pt.events) / N;
    fp.wilson95 = wilson(pt.events, pt.trials);
    fp.censored = pt.events == 0;
    fp.p_used = fp.censored ? fp.wilson95.hi : fp.freq;
    const double var = std::max((1.0 - fp.p_used) / (N * fp.p_used), 1.0 / (N * N));
    fp.weight = 1.0 / var;
    sw += fp.weight;
    swx += fp.weight * fp.n;
    swy += fp.weight * std::log(fp.p_used);
    fit.points.push_back(fp);
  }
  const double xbar = swx / sw;
  const double ybar = swy / sw;
  double sxx = 0, sxy = 0;
  for (const auto& fp : fit.points) {
    sxx += fp.weight * (fp.n - xbar) * (fp.n - xbar);
    sxy += fp.weight * (fp.n - xbar) * (std::log(fp.p_used) - ybar);
  }
  if (sxx <= 0.0) throw InsufficientData("decay fit needs distinct n values");
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  for (const auto& fp : fit.points) {
    const double r = std::log(fp.p_used) - (fit.intercept + fit.slope * fp.n);
    fit.chi2 += fp.weight * r * r;
  }
  // Inflate by the reduced chi-square when the points scatter more than
  // their binomial errors allow.
  const double dof = static_cast<double>(fit.points.size() - 2);
  const double scale = std::max(1.0, fit.chi2 / dof);
  fit.slope_se = std::sqrt(scale / sxx);
  fit.intercept_se = std::sqrt(scale * (1.0 / sw + xbar * xbar / sxx));
  fit.decaying = fit.slope + kZ95OneSided * fit.slope_se < 0.0;

  for (std::size_t i = 1; i < fit.points.size(); ++i) {
    const auto& a = fit.points[i - 1];
    const auto& b = fit.points[i];
    if (two_proportion_z(a.events, a.trials, b.events, b.trials) > kZ95OneSided)
      fit.non_increasing = false;
  }
  if (gap > 0.0) fit.constant = -fit.slope / (gap * gap);
  return fit;
}

Thresholds optimize_thresholds(double p_e, double p_f, double w_a, double w_v, double w_f) {
  if (!(p_e >= 0.0 && p_e < p_f))
    throw InvalidGap("threshold optimisation requires 0 <= p_e < p_f");
  if (!(w_a > 0.0 && w_v > 0.0 && w_f > 0.0))
    throw InvalidParameter("threshold weights must be positive");
  const double span = p_f - p_e;
  const double total = w_a + w_v + w_f;
  if (w_a == w_v && w_v == w_f) return {p_e + span / 3.0, p_e + 2.0 * span / 3.0};
  return {p_e + span * w_a / total, p_e + span * (w_a + w_v) / total};
}

}  // namespace qds
