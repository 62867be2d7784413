#pragma once

#include <cstddef>
#include <vector>

#include "nanowave/thermal.hpp"

namespace nanowave {

// Free expansion of a Gaussian wave packet released from a harmonic trap, and
// the statistics of detecting extra momentum diffusion from the spread of
// single-shot position records.

// Squared width after free flight with no extra diffusion:
// w_s^2(t) = sigma_x^2 + (t sigma_p / m)^2.
double ws_squared(const InitialState& state, double mass_kg, double t);

// Squared width including position diffusion of strength Lambda [1/(m^2 s)]:
// w^2(t) = w_s^2(t) + (2 Lambda hbar^2 / (3 m^2)) t^3.
double w_squared(const InitialState& state, double mass_kg, double t, double Lambda);

// Root-mean-square width estimator sqrt(sum x_j^2 / (N-1)) over recorded
// final positions (mean assumed zero by symmetry). Throws sampling_error for
// fewer than two samples.
double estimate_width(const std::vector<double>& positions);

struct WidthMeasurementPlan {
  std::size_t n_points = 24000;     // released particles per campaign
  double position_accuracy = 1e-7;  // per-shot detector accuracy, m
};

// Statistical error of the width estimator dominated by detector accuracy:
// delta_w = accuracy / sqrt(N - 1).
double width_error(const WidthMeasurementPlan& plan);

// Smallest diffusion rate that shifts the expected width by one error bar:
// Lambda_min = 3 m^2 w_s delta_w / (hbar^2 t^3).
double lambda_min_from_expansion(const InitialState& state, double mass_kg, double t,
                                 const WidthMeasurementPlan& plan);

}  // namespace nanowave
