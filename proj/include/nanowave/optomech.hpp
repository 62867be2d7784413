#pragma once

#include <string>
#include <vector>

namespace nanowave {

// Cavity-optomechanical density noise spectrum of the oscillator position,
// with an optional collapse-process contribution that enters as an extra
// thermal-like broadening rate Y.

struct OptomechParams {
  double alpha_s;  // steady-state cavity field amplitude, dimensionless
  double kappa_c;  // cavity damping rate, rad/s
  double chi;      // optomechanical coupling rate, rad/(s m)
  double Delta;    // cavity-pump detuning, rad/s
  double mass;     // oscillator mass, kg
  double gamma_m;  // mechanical damping rate, rad/s
  double omega_m;  // mechanical resonance frequency, rad/s
  double T_bath;   // bath temperature, K

  void validate() const;  // throws std::domain_error on invalid fields
};

// Collapse-induced broadening rate Y = lambda * sqrt(hbar / (m omega_m)).
double csl_Y(double lambda_rate, double mass_kg, double omega_m);

// One-sided density noise spectrum S(omega) [m^2 s] of the oscillator
// position for omega > 0. The thermal factor is coth(hbar omega / 2 k_B T).
double density_noise_spectrum(double omega, const OptomechParams& p, double Y);

// Log-spaced frequency grid centered on the mechanical resonance, spanning
// +/- span_gammas mechanical linewidths (clamped to positive frequencies).
std::vector<double> default_spectrum_grid(const OptomechParams& p, int n_points = 2001,
                                          double span_gammas = 50.0);

struct LineStats {
  double lambda_rate;       // collapse rate used for this row, Hz
  double Y;                 // broadening rate, rad/s
  double peak;              // max S on the grid, m^2 s
  double peak_omega;        // location of the peak, rad/s
  double fwhm;              // full width at half maximum, rad/s
  double area;              // trapezoid integral of S over the grid, m^2 rad
  double equivalent_width;  // area / peak, rad/s
};

// Peak, FWHM, area, and equivalent width of S(omega) for each collapse rate.
// Throws resolution_error when fewer than 20 grid points fall inside the
// half-maximum region or the peak sits on the grid edge.
std::vector<LineStats> line_broadening_report(const OptomechParams& p,
                                              const std::vector<double>& lambda_rates,
                                              std::vector<double> grid = {});

// Reads an [optomech] section: alpha_s, kappa_c, chi, Delta (rad/s), mass
// (kg), gamma_m, omega_m (rad/s), T_bath (K). Units are validated when given.
OptomechParams load_optomech_params(const std::string& path,
                                    const std::string& section = "optomech");

}  // namespace nanowave
