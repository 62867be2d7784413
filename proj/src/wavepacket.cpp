#include "nanowave/wavepacket.hpp"

#include <cmath>
#include <stdexcept>

#include "nanowave/constants.hpp"
#include "nanowave/errors.hpp"

namespace nanowave {

double ws_squared(const InitialState& state, double mass_kg, double t) {
  if (!(mass_kg > 0.0)) throw std::domain_error("mass must be positive");
  if (t < 0.0) throw std::domain_error("time must be non-negative");
  double spread = t * state.sigma_p / mass_kg;
  return state.sigma_x * state.sigma_x + spread * spread;
}

double w_squared(const InitialState& state, double mass_kg, double t, double Lambda) {
  if (Lambda < 0.0) throw std::domain_error("Lambda must be non-negative");
  double diffusion =
      2.0 * Lambda * constants::hbar * constants::hbar * t * t * t / (3.0 * mass_kg * mass_kg);
  return ws_squared(state, mass_kg, t) + diffusion;
}

double estimate_width(const std::vector<double>& positions) {
  if (positions.size() < 2) throw sampling_error("width estimate needs at least two positions");
  double sum = 0.0;
  for (double x : positions) sum += x * x;
  return std::sqrt(sum / static_cast<double>(positions.size() - 1));
}

double width_error(const WidthMeasurementPlan& plan) {
  if (plan.n_points < 2) throw sampling_error("width error needs at least two positions");
  if (!(plan.position_accuracy > 0.0))
    throw std::domain_error("position accuracy must be positive");
  return plan.position_accuracy / std::sqrt(static_cast<double>(plan.n_points - 1));
}

double lambda_min_from_expansion(const InitialState& state, double mass_kg, double t,
                                 const WidthMeasurementPlan& plan) {
  if (!(t > 0.0)) throw std::domain_error("expansion time must be positive");
  double w_s = std::sqrt(ws_squared(state, mass_kg, t));
  double hbar2 = constants::hbar * constants::hbar;
  return 3.0 * mass_kg * mass_kg * w_s * width_error(plan) / (hbar2 * t * t * t);
}

}  // namespace nanowave
