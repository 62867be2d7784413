#include "nanowave/decoherence.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "nanowave/constants.hpp"
#include "nanowave/csv.hpp"
#include "nanowave/errors.hpp"

namespace nanowave {

CslParams::CslParams(double lambda_hz, double length_m)
    : lambda_rate(lambda_hz), localization_length(length_m) {
  if (!(lambda_rate > 0.0)) throw std::domain_error("collapse rate must be positive");
  if (!(localization_length > 0.0))
    throw std::domain_error("localization length must be positive");
}

double csl_f(double x) {
  if (x < 0.0) throw std::domain_error("csl_f argument must be non-negative");
  if (x < 1.0) {
    // 6/x^4 * [bracket] with bracket = sum_{j>=2} (-1)^j (j-1)/(j+1)! x^(2j),
    // so f = sum_{j>=2} 6 (-1)^j (j-1)/(j+1)! x^(2(j-2)). The closed form
    // below cancels to O(x^4), so the series is the accurate branch for
    // small x; by x = 1 the factorial decay has it at machine precision.
    double x2 = x * x;
    double sum = 0.0;
    double factorial = 6.0;  // (j+1)! at j = 2
    double power = 1.0;      // x^(2(j-2))
    double sign = 1.0;
    for (int j = 2; j <= 24; ++j) {
      sum += sign * 6.0 * (j - 1) / factorial * power;
      power *= x2;
      sign = -sign;
      factorial *= (j + 2);
    }
    return sum;
  }
  double x2 = x * x;
  double bracket = 1.0 - 2.0 / x2 + (1.0 + 2.0 / x2) * std::exp(-x2);
  return 6.0 / (x2 * x2) * bracket;
}

double csl_Lambda(double mass_kg, double radius, const CslParams& params) {
  if (!(mass_kg > 0.0)) throw std::domain_error("mass must be positive");
  if (!(radius > 0.0)) throw std::domain_error("radius must be positive");
  double a = params.localization_length;
  double mass_ratio = mass_kg / constants::m_proton;
  return params.lambda_rate * mass_ratio * mass_ratio * csl_f(radius / a) / (4.0 * a * a);
}

double csl_lambda_min(double mass_kg, double radius, double Lambda_min,
                      double localization_length) {
  if (!(mass_kg > 0.0)) throw std::domain_error("mass must be positive");
  if (!(radius > 0.0)) throw std::domain_error("radius must be positive");
  if (!(Lambda_min > 0.0)) throw std::domain_error("Lambda must be positive");
  double a = localization_length;
  double mass_ratio = constants::m_proton / mass_kg;
  return 4.0 * a * a * mass_ratio * mass_ratio / csl_f(radius / a) * Lambda_min;
}

double lambda_to_gamma(double Lambda, double r_c) {
  if (Lambda < 0.0) throw std::domain_error("Lambda must be non-negative");
  if (!(r_c > 0.0)) throw std::domain_error("length scale must be positive");
  return r_c * r_c * Lambda;
}

double thruster_Lambda(double force_noise_asd, double spacecraft_mass, double particle_mass) {
  if (force_noise_asd < 0.0) throw std::domain_error("force noise must be non-negative");
  if (!(spacecraft_mass > 0.0)) throw std::domain_error("spacecraft mass must be positive");
  if (!(particle_mass > 0.0)) throw std::domain_error("particle mass must be positive");
  double fm = force_noise_asd * particle_mass / (constants::hbar * spacecraft_mass);
  return 2.0 * fm * fm;
}

double gas_collision_rate(double radius, double gas_velocity, double number_density) {
  if (!(radius > 0.0)) throw std::domain_error("radius must be positive");
  if (gas_velocity < 0.0) throw std::domain_error("velocity must be non-negative");
  if (number_density < 0.0) throw std::domain_error("density must be non-negative");
  return constants::pi * radius * radius * gas_velocity * number_density;
}

double max_density_for_one_collision(double radius, double gas_velocity, double exposure_time) {
  if (!(radius > 0.0)) throw std::domain_error("radius must be positive");
  if (!(gas_velocity > 0.0)) throw std::domain_error("velocity must be positive");
  if (!(exposure_time > 0.0)) throw std::domain_error("exposure time must be positive");
  return 1.0 / (constants::pi * radius * radius * gas_velocity * exposure_time);
}

double pressure_from_density(double number_density, double temperature) {
  if (number_density < 0.0) throw std::domain_error("density must be non-negative");
  if (!(temperature > 0.0)) throw std::domain_error("temperature must be positive");
  return number_density * constants::k_B * temperature;
}

ModelCurve ModelCurve::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path, 0, "cannot open file");
  auto rows = read_csv(in);
  if (rows.empty()) throw parse_error(path, 0, "empty model curve file");

  size_t start = 0;
  // Header row is optional; detect it by a non-numeric first cell.
  try {
    (void)std::stod(rows[0].at(0));
  } catch (...) {
    start = 1;
  }

  ModelCurve curve;
  curve.name = std::filesystem::path(path).stem().string();
  for (size_t i = start; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() < 3) throw parse_error(path, static_cast<int>(i + 1), "need mass,value,unit");
    double mass, value;
    try {
      mass = std::stod(row[0]);
      value = std::stod(row[1]);
    } catch (...) {
      throw parse_error(path, static_cast<int>(i + 1), "non-numeric mass or value");
    }
    if (!(mass > 0.0) || !(value > 0.0))
      throw parse_error(path, static_cast<int>(i + 1),
                        "mass and value must be positive (log-log interpolation)");
    if (!curve.mass_amu.empty() && mass <= curve.mass_amu.back())
      throw parse_error(path, static_cast<int>(i + 1), "mass column must be strictly increasing");
    if (curve.unit.empty())
      curve.unit = row[2];
    else if (curve.unit != row[2])
      throw parse_error(path, static_cast<int>(i + 1), "unit changes mid-file");
    curve.mass_amu.push_back(mass);
    curve.value.push_back(value);
  }
  if (curve.mass_amu.size() < 2) throw parse_error(path, 0, "need at least two points");
  return curve;
}

double ModelCurve::interpolate(double mass_amu_query) const {
  if (mass_amu_query < mass_lo() || mass_amu_query > mass_hi())
    throw std::domain_error("mass outside the tabulated range of curve '" + name + "'");
  double lx = std::log(mass_amu_query);
  size_t hi = 1;
  while (hi + 1 < mass_amu.size() && mass_amu[hi] < mass_amu_query) ++hi;
  double x0 = std::log(mass_amu[hi - 1]), x1 = std::log(mass_amu[hi]);
  double y0 = std::log(value[hi - 1]), y1 = std::log(value[hi]);
  double t = (lx - x0) / (x1 - x0);
  return std::exp(y0 + t * (y1 - y0));
}

}  // namespace nanowave
