#pragma once

namespace nanowave {

// Gaussian wave-packet widths of the released centre-of-mass state.
struct InitialState {
  double sigma_x;  // m
  double sigma_p;  // kg m/s

  InitialState(double sx, double sp);
};

// Widths of a harmonic-oscillator thermal state with mean occupation nbar:
//   sigma_x = sqrt(hbar (2 nbar + 1) / (2 m omega)),
//   sigma_p = sqrt(hbar m omega (2 nbar + 1) / 2).
InitialState thermal_state_widths(double mass_kg, double omega, double nbar);

// Cooling-performance anchor: occupation 0.3 at 1e9 amu, scaling as 1/m.
double occupation_for_mass(double mass_kg);

inline constexpr double reference_trap_omega = 1.0e5;  // rad/s

}  // namespace nanowave
