#include "nanowave/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nanowave/constants.hpp"
#include "nanowave/errors.hpp"
#include "nanowave/rng.hpp"
#include "nanowave/wavepacket.hpp"

namespace nanowave {

void ExperimentPlan::validate() const {
  if (n_samples < 1) throw std::domain_error("plan needs at least one sample");
  if (sigma_detect < 0.0) throw std::domain_error("detector noise must be non-negative");
  if (lambda_true < 0.0) throw std::domain_error("decoherence strength must be non-negative");
  if (window_periods < 6.0 - 1e-12)
    throw std::domain_error("sampling window must cover at least 6 pattern periods");
  if (grid_points < 1024) throw std::domain_error("inverse-CDF grid needs at least 1024 points");
  if (n_max < 1) throw std::domain_error("series cutoff must be at least 1");
}

std::vector<double> sample_positions(const ExperimentPlan& plan) {
  plan.validate();
  TalbotParams tp = talbot_params(plan.mass_kg, plan.grating, plan.timing);
  double period = 2.0 * constants::pi / tp.pattern_wavenumber;
  double half = 0.5 * plan.window_periods * period;

  PatternOptions opt;
  opt.window_lo = -half;
  opt.window_hi = half;
  opt.n_points = plan.grid_points;
  opt.n_max = plan.n_max;
  opt.tail_rel_tol = plan.tail_rel_tol;
  Pattern pat = pattern(plan.mass_kg, plan.grating, plan.timing, plan.state, plan.lambda_true,
                        plan.mode, opt);

  const std::vector<double>& x = pat.x;
  const std::vector<double>& pdf = pat.density;
  std::vector<double> cdf(x.size(), 0.0);
  for (size_t i = 1; i < x.size(); ++i)
    cdf[i] = cdf[i - 1] + 0.5 * (pdf[i - 1] + pdf[i]) * (x[i] - x[i - 1]);
  double total = cdf.back();
  if (!(total > 0.0)) throw sampling_error("pattern has no probability mass in the window");
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;

  Rng rng(plan.seed);
  std::vector<double> out;
  out.reserve(plan.n_samples);
  for (std::size_t j = 0; j < plan.n_samples; ++j) {
    double u = rng.uniform01();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    size_t i = static_cast<size_t>(it - cdf.begin());
    if (i == 0) i = 1;
    if (i >= cdf.size()) i = cdf.size() - 1;
    double span = cdf[i] - cdf[i - 1];
    double t = span > 0.0 ? (u - cdf[i - 1]) / span : 0.5;
    double pos = x[i - 1] + t * (x[i] - x[i - 1]);
    if (plan.sigma_detect > 0.0) pos += plan.sigma_detect * rng.gaussian();
    out.push_back(pos);
  }
  return out;
}

VisibilityEstimate estimate_visibility(const std::vector<double>& positions, double period,
                                       int n_bootstrap, std::uint64_t bootstrap_seed) {
  if (!(period > 0.0)) throw std::domain_error("pattern period must be positive");
  if (positions.empty()) throw sampling_error("visibility estimate needs samples");
  if (n_bootstrap < 0) throw std::domain_error("bootstrap count must be non-negative");

  const size_t n = positions.size();
  std::vector<double> c(n), s(n);
  double sum_c = 0.0, sum_s = 0.0;
  for (size_t j = 0; j < n; ++j) {
    double theta = 2.0 * constants::pi * positions[j] / period;
    c[j] = std::cos(theta);
    s[j] = std::sin(theta);
    sum_c += c[j];
    sum_s += s[j];
  }
  auto contrast = [n](double cc, double ss) {
    double v = 2.0 * std::hypot(cc, ss) / static_cast<double>(n);
    return std::clamp(v, 0.0, 1.0);
  };

  VisibilityEstimate est;
  est.value = contrast(sum_c, sum_s);
  est.n_bootstrap = n_bootstrap;
  est.std_error = 0.0;
  if (n_bootstrap >= 2) {
    Rng rng(bootstrap_seed);
    std::vector<double> reps(static_cast<size_t>(n_bootstrap));
    for (int b = 0; b < n_bootstrap; ++b) {
      double bc = 0.0, bs = 0.0;
      for (size_t j = 0; j < n; ++j) {
        size_t k = rng.index(n);
        bc += c[k];
        bs += s[k];
      }
      reps[static_cast<size_t>(b)] = contrast(bc, bs);
    }
    double mean = 0.0;
    for (double v : reps) mean += v;
    mean /= n_bootstrap;
    double var = 0.0;
    for (double v : reps) var += (v - mean) * (v - mean);
    est.std_error = std::sqrt(var / (n_bootstrap - 1));
  }
  return est;
}

Histogram make_histogram(const std::vector<double>& positions, double window_lo,
                         double window_hi, double bin_width) {
  if (!(bin_width > 0.0)) throw std::domain_error("bin width must be positive");
  if (!(window_hi > window_lo)) throw std::domain_error("histogram window is empty");

  double min_x = window_lo, max_x = window_hi;
  for (double x : positions) {
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
  }
  size_t extra_left =
      min_x < window_lo ? static_cast<size_t>(std::ceil((window_lo - min_x) / bin_width)) : 0;
  double start = window_lo - static_cast<double>(extra_left) * bin_width;
  size_t n_bins = static_cast<size_t>(std::ceil((max_x - start) / bin_width));
  if (n_bins == 0) n_bins = 1;
  while (start + static_cast<double>(n_bins) * bin_width <= max_x) ++n_bins;

  Histogram h;
  h.bin_width = bin_width;
  h.edges.resize(n_bins + 1);
  for (size_t i = 0; i <= n_bins; ++i) h.edges[i] = start + static_cast<double>(i) * bin_width;
  h.counts.assign(n_bins, 0);
  for (double x : positions) {
    auto idx = static_cast<long long>(std::floor((x - start) / bin_width));
    if (idx < 0) idx = 0;
    if (idx >= static_cast<long long>(n_bins)) idx = static_cast<long long>(n_bins) - 1;
    ++h.counts[static_cast<size_t>(idx)];
  }
  return h;
}

double detector_attenuation(double sigma_detect, double period) {
  if (sigma_detect < 0.0) throw std::domain_error("detector noise must be non-negative");
  if (!(period > 0.0)) throw std::domain_error("pattern period must be positive");
  double k_sigma = 2.0 * constants::pi * sigma_detect / period;
  return std::exp(-0.5 * k_sigma * k_sigma);
}

double LambdaCurve::interpolate(double lambda_query) const {
  if (lambda.size() < 2) throw std::domain_error("visibility curve needs at least two points");
  if (lambda_query < lambda.front() || lambda_query > lambda.back())
    throw std::domain_error("lambda outside the visibility curve range");
  auto it = std::upper_bound(lambda.begin(), lambda.end(), lambda_query);
  size_t i = static_cast<size_t>(it - lambda.begin());
  if (i == 0) i = 1;
  if (i >= lambda.size()) i = lambda.size() - 1;
  double t = (lambda_query - lambda[i - 1]) / (lambda[i] - lambda[i - 1]);
  double lv = std::log(visibility[i - 1]) + t * (std::log(visibility[i]) - std::log(visibility[i - 1]));
  return std::exp(lv);
}

LambdaCurve build_lambda_curve(double mass_kg, const GratingConfig& grating,
                               const TimingConfig& timing, const InitialState& state,
                               PatternMode mode, double sigma_detect, double lambda_max,
                               int n_points) {
  if (!(lambda_max > 0.0)) throw std::domain_error("curve needs a positive maximum lambda");
  if (n_points < 2) throw std::domain_error("curve needs at least two points");
  TalbotParams tp = talbot_params(mass_kg, grating, timing);
  double period = 2.0 * constants::pi / tp.pattern_wavenumber;
  double att = detector_attenuation(sigma_detect, period);

  // V(Lambda) = V(0) exp(-c Lambda) in this model, so linear spacing in
  // Lambda with log-V interpolation represents the curve exactly.
  LambdaCurve curve;
  curve.lambda.resize(static_cast<size_t>(n_points));
  curve.visibility.resize(static_cast<size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    double l = lambda_max * static_cast<double>(i) / (n_points - 1);
    double v = visibility(mass_kg, grating, timing, state, l, mode) * att;
    curve.lambda[static_cast<size_t>(i)] = l;
    curve.visibility[static_cast<size_t>(i)] = v;
  }
  if (!(curve.visibility.front() > 0.0))
    throw std::domain_error("visibility curve is degenerate at these parameters");
  if (!(curve.visibility.back() > 0.0))
    throw std::domain_error("curve maximum lambda drives visibility below double precision");
  for (size_t i = 1; i < curve.visibility.size(); ++i)
    if (!(curve.visibility[i] < curve.visibility[i - 1]))
      throw std::domain_error("visibility curve is not strictly decreasing");
  return curve;
}

namespace {

// Inverse of the forward curve for one visibility level; clamps out-of-range
// targets to the curve ends and reports which end was hit.
double invert_visibility(const LambdaCurve& curve, double v_target, bool* clamped_low,
                         bool* clamped_high) {
  if (v_target >= curve.v_zero()) {
    *clamped_low = true;
    return curve.lambda.front();
  }
  if (v_target <= curve.visibility.back()) {
    *clamped_high = true;
    return curve.lambda.back();
  }
  // visibility is strictly decreasing: find the segment containing v_target.
  size_t lo = 0, hi = curve.visibility.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (curve.visibility[mid] > v_target)
      lo = mid;
    else
      hi = mid;
  }
  double lv0 = std::log(curve.visibility[lo]);
  double lv1 = std::log(curve.visibility[hi]);
  double t = (std::log(v_target) - lv0) / (lv1 - lv0);
  return curve.lambda[lo] + t * (curve.lambda[hi] - curve.lambda[lo]);
}

}  // namespace

LambdaInterval lambda_from_visibility(const LambdaCurve& curve, double v_measured,
                                      double v_error) {
  if (curve.lambda.size() < 2) throw std::domain_error("visibility curve needs points");
  if (v_error < 0.0) throw std::domain_error("visibility error must be non-negative");

  LambdaInterval out;
  out.super_quantum = v_measured > curve.v_zero();
  bool dummy = false;
  // Higher visibility maps to lower Lambda.
  out.lower = invert_visibility(curve, v_measured + v_error, &out.below_range, &dummy);
  out.upper = invert_visibility(curve, v_measured - v_error, &dummy, &out.above_range);
  return out;
}

ReconstructionResult run_experiment(const ExperimentPlan& plan, const LambdaCurve* curve,
                                    double z, double bin_width) {
  if (!(z > 0.0)) throw std::domain_error("interval width factor must be positive");
  TalbotParams tp = talbot_params(plan.mass_kg, plan.grating, plan.timing);
  double period = 2.0 * constants::pi / tp.pattern_wavenumber;

  ReconstructionResult result;
  result.period = period;
  result.positions = sample_positions(plan);
  double width = bin_width > 0.0 ? bin_width : period / 16.0;
  double half = 0.5 * plan.window_periods * period;
  result.histogram = make_histogram(result.positions, -half, half, width);
  result.visibility = estimate_visibility(result.positions, period);
  result.analytic_visibility =
      visibility(plan.mass_kg, plan.grating, plan.timing, plan.state, plan.lambda_true,
                 plan.mode) *
      detector_attenuation(plan.sigma_detect, period);
  if (curve) {
    LambdaInterval interval = lambda_from_visibility(*curve, result.visibility.value,
                                                     z * result.visibility.std_error);
    interval.confidence = std::erf(z / std::sqrt(2.0));
    result.lambda = interval;
  }
  return result;
}

ExpansionResult run_expansion_experiment(const ExpansionPlan& plan) {
  if (plan.n_points < 2) throw sampling_error("expansion campaign needs at least two shots");
  if (!(plan.sigma_detect > 0.0))
    throw std::domain_error("expansion campaign needs a positive detector accuracy");
  if (plan.lambda_true < 0.0) throw std::domain_error("diffusion strength must be non-negative");

  double w_off = std::sqrt(ws_squared(plan.state, plan.mass_kg, plan.t));
  double w_on = std::sqrt(w_squared(plan.state, plan.mass_kg, plan.t, plan.lambda_true));

  // Common random numbers: the diffusion arm and the baseline arm share the
  // same packet draw z and detector draw eta shot by shot, so the dominant
  // shot-noise term cancels in the squared-width difference.
  Rng rng(plan.seed);
  double sum_on = 0.0, sum_off = 0.0;
  for (std::size_t j = 0; j < plan.n_points; ++j) {
    double z = rng.gaussian();
    double eta = rng.gaussian();
    double x_on = w_on * z + plan.sigma_detect * eta;
    double x_off = w_off * z + plan.sigma_detect * eta;
    sum_on += x_on * x_on;
    sum_off += x_off * x_off;
  }
  double denom = static_cast<double>(plan.n_points - 1);
  double noise2 = plan.sigma_detect * plan.sigma_detect;
  auto corrected = [&](double sum) { return std::sqrt(std::max(sum / denom - noise2, 0.0)); };

  WidthMeasurementPlan wp;
  wp.n_points = plan.n_points;
  wp.position_accuracy = plan.sigma_detect;
  double error_bar = width_error(wp);

  ExpansionResult result;
  result.w_schrodinger = w_off;
  result.w_expected = w_on;
  result.w_hat = corrected(sum_on);
  result.w_hat_baseline = corrected(sum_off);
  result.significance = (sum_on - sum_off) / denom / (2.0 * w_off * error_bar);
  result.lambda_min = lambda_min_from_expansion(plan.state, plan.mass_kg, plan.t, wp);
  return result;
}

}  // namespace nanowave
