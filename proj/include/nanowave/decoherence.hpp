#pragma once

#include <string>
#include <vector>

namespace nanowave {

// Continuous-spontaneous-localization parameters: microscopic collapse rate
// and localization length scale.
struct CslParams {
  double lambda_rate;                 // Hz
  double localization_length = 1e-7;  // m

  CslParams(double lambda_hz, double length_m = 1e-7);
};

// Size correction for a homogeneous sphere of radius x (in units of the
// localization length): f(0) = 1, f ~ 6/x^4 for large x. Series branch below
// x = 0.1 avoids the catastrophic cancellation of the closed form.
double csl_f(double x);

// Position-space decoherence strength of a sphere:
//   Lambda = lambda (m/m_p)^2 f(r/a) / (4 a^2),  in 1/(m^2 s).
double csl_Lambda(double mass_kg, double radius, const CslParams& params);

// Inverse map: the collapse rate that produces a given Lambda.
double csl_lambda_min(double mass_kg, double radius, double Lambda_min,
                      double localization_length = 1e-7);

// Decoherence rate at a representative length scale, Gamma = r_c^2 Lambda.
double lambda_to_gamma(double Lambda, double r_c = 1e-7);  // Hz

// Spacecraft thruster force noise blurs the co-moving frame like decoherence:
//   Lambda_th = 2 FN0^2 m^2 / (hbar^2 M^2), FN0 in N/sqrt(Hz).
double thruster_Lambda(double force_noise_asd, double spacecraft_mass, double particle_mass);

// Geometric gas-collision rate nu_c = pi r^2 v rho_n (every hit decoheres).
double gas_collision_rate(double radius, double gas_velocity, double number_density);

// Density at which nu_c * exposure_time = 1.
double max_density_for_one_collision(double radius, double gas_velocity, double exposure_time);

// Ideal-gas pressure at a given number density, p = n k_B T.
double pressure_from_density(double number_density, double temperature);

// Tabulated decoherence prediction of an external model, for overlay plots.
// CSV columns: mass_amu, value, unit. Interpolation is linear in log-log.
struct ModelCurve {
  std::string name;
  std::string unit;
  std::vector<double> mass_amu;  // strictly increasing, positive
  std::vector<double> value;     // positive

  static ModelCurve load(const std::string& path);
  double interpolate(double mass_amu_query) const;  // throws outside the range
  double mass_lo() const { return mass_amu.front(); }
  double mass_hi() const { return mass_amu.back(); }
};

}  // namespace nanowave
