#include "nanowave/thermal.hpp"

#include <cmath>
#include <stdexcept>

#include "nanowave/constants.hpp"

namespace nanowave {

InitialState::InitialState(double sx, double sp) : sigma_x(sx), sigma_p(sp) {
  if (!(sigma_x > 0.0) || !(sigma_p > 0.0))
    throw std::domain_error("state widths must be positive");
  // Minimum-uncertainty floor, with slack for rounding in caller arithmetic.
  if (sigma_x * sigma_p < 0.5 * constants::hbar * (1.0 - 1e-9))
    throw std::domain_error("state violates sigma_x sigma_p >= hbar/2");
}

InitialState thermal_state_widths(double mass_kg, double omega, double nbar) {
  if (!(mass_kg > 0.0)) throw std::domain_error("mass must be positive");
  if (!(omega > 0.0)) throw std::domain_error("trap frequency must be positive");
  if (nbar < 0.0) throw std::domain_error("occupation must be non-negative");
  double n2p1 = 2.0 * nbar + 1.0;
  double sx = std::sqrt(constants::hbar * n2p1 / (2.0 * mass_kg * omega));
  double sp = std::sqrt(constants::hbar * mass_kg * omega * n2p1 / 2.0);
  return InitialState(sx, sp);
}

double occupation_for_mass(double mass_kg) {
  if (!(mass_kg > 0.0)) throw std::domain_error("mass must be positive");
  return 0.3 * (amu_to_kg(1.0e9) / mass_kg);
}

}  // namespace nanowave
