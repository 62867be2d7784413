#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nanowave/interferometry.hpp"
#include "nanowave/thermal.hpp"

namespace nanowave {

// Synthetic interference experiments: draw position measurements from a
// forward-model pattern (plus detector noise), reconstruct the histogram,
// and estimate visibility and the decoherence strength Lambda.

struct ExperimentPlan {
  double mass_kg;
  GratingConfig grating;
  TimingConfig timing;
  InitialState state;
  double lambda_true = 0.0;  // decoherence strength, 1/(m^2 s)
  PatternMode mode = PatternMode::quantum;
  std::size_t n_samples = 24000;
  double sigma_detect = 0.0;  // additive Gaussian detector noise, m
  std::uint64_t seed = 0;
  double window_periods = 6.0;      // sampling window width in pattern periods
  std::size_t grid_points = 16384;  // inverse-CDF grid resolution
  int n_max = 64;                   // pattern series cutoff
  double tail_rel_tol = 1e-12;      // pattern series tail tolerance

  void validate() const;  // throws std::domain_error
};

struct Histogram {
  std::vector<double> edges;        // bin edges, size counts.size() + 1
  std::vector<std::size_t> counts;  // counts sum to the sample count
  double bin_width;
};

struct VisibilityEstimate {
  double value;      // first-harmonic contrast, clamped to [0, 1]
  double std_error;  // bootstrap standard error
  int n_bootstrap;
};

struct LambdaInterval {
  double lower = 0.0;
  double upper = 0.0;
  double confidence = 0.0;    // CI level the visibility band corresponds to
  bool super_quantum = false;  // measured V above the zero-decoherence curve value
  bool below_range = false;    // lower end clamped at Lambda = 0
  bool above_range = false;    // upper end clamped at the curve maximum
};

// Forward visibility curve V(Lambda) at fixed interferometer parameters,
// including the detector-blur attenuation of the first harmonic. The first
// entry is always Lambda = 0; visibility is strictly decreasing.
struct LambdaCurve {
  std::vector<double> lambda;
  std::vector<double> visibility;

  double v_zero() const { return visibility.front(); }
  double max_lambda() const { return lambda.back(); }
  // Linear interpolation in (Lambda, log V); exact for the model family,
  // where V(Lambda) decays exponentially in Lambda.
  double interpolate(double lambda_query) const;
};

LambdaCurve build_lambda_curve(double mass_kg, const GratingConfig& grating,
                               const TimingConfig& timing, const InitialState& state,
                               PatternMode mode, double sigma_detect, double lambda_max,
                               int n_points = 121);

// First-harmonic attenuation factor exp(-(k sigma)^2 / 2) that Gaussian
// detector noise of width sigma applies to a pattern of the given period.
double detector_attenuation(double sigma_detect, double period);

// N seeded draws from the plan's pattern via inverse-CDF sampling, plus
// additive Gaussian detector noise. Bit-reproducible for a given seed.
std::vector<double> sample_positions(const ExperimentPlan& plan);

// V-hat = 2|sum_j exp(2 pi i x_j / period)| / N with bootstrap stderr.
VisibilityEstimate estimate_visibility(const std::vector<double>& positions, double period,
                                       int n_bootstrap = 200,
                                       std::uint64_t bootstrap_seed = 0xB0075EEDULL);

// Bins positions at the given width; edges extend beyond [window_lo,
// window_hi] by whole bins when noise pushes samples outside, so counts
// always sum to the sample count.
Histogram make_histogram(const std::vector<double>& positions, double window_lo,
                         double window_hi, double bin_width);

struct ReconstructionResult {
  std::vector<double> positions;
  Histogram histogram;
  VisibilityEstimate visibility;
  double analytic_visibility;  // forward-model V at the plan's Lambda, incl. detector blur
  double period;
  std::optional<LambdaInterval> lambda;
};

// Full pipeline: sample, histogram (bin width = period/16 by default),
// visibility estimate, and - when a curve is supplied - the Lambda interval
// for the band [V - z*stderr, V + z*stderr].
ReconstructionResult run_experiment(const ExperimentPlan& plan,
                                    const LambdaCurve* curve = nullptr, double z = 2.576,
                                    double bin_width = 0.0);

// Maps the visibility band [v - v_error, v + v_error] through the inverse of
// the forward curve. Out-of-range ends are clamped and flagged.
LambdaInterval lambda_from_visibility(const LambdaCurve& curve, double v_measured,
                                      double v_error);

// Wave-packet expansion arm: synthetic release-and-detect campaign measuring
// the width excess caused by momentum diffusion of strength lambda_true.
struct ExpansionPlan {
  InitialState state;
  double mass_kg;
  double t;            // free-expansion time, s
  double lambda_true;  // injected diffusion strength, 1/(m^2 s)
  std::size_t n_points = 24000;
  double sigma_detect = 1e-7;  // per-shot detector accuracy, m
  std::uint64_t seed = 0;
};

struct ExpansionResult {
  double w_schrodinger;   // diffusion-free width at t, m
  double w_expected;      // width with lambda_true, m
  double w_hat;           // noise-corrected width estimate, m
  double w_hat_baseline;  // same draw stream with lambda = 0, m
  double significance;    // width-excess detection significance, in error bars
  double lambda_min;      // smallest detectable diffusion for this plan
};

// Runs the diffusion arm and a lambda = 0 baseline arm on a common random
// stream, so the shared shot noise cancels in the width-excess significance
// and the detector error bar of the plan is what limits detection.
ExpansionResult run_expansion_experiment(const ExpansionPlan& plan);

}  // namespace nanowave
