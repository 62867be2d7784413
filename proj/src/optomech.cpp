#include "nanowave/optomech.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "nanowave/config.hpp"
#include "nanowave/constants.hpp"
#include "nanowave/errors.hpp"

namespace nanowave {

void OptomechParams::validate() const {
  if (!(kappa_c > 0.0)) throw std::domain_error("cavity damping must be positive");
  if (!(gamma_m > 0.0)) throw std::domain_error("mechanical damping must be positive");
  if (!(omega_m > 0.0)) throw std::domain_error("mechanical frequency must be positive");
  if (!(mass > 0.0)) throw std::domain_error("oscillator mass must be positive");
  if (!(T_bath > 0.0)) throw std::domain_error("bath temperature must be positive");
  if (alpha_s < 0.0) throw std::domain_error("cavity amplitude must be non-negative");
  if (chi < 0.0) throw std::domain_error("coupling rate must be non-negative");
  if (!std::isfinite(Delta)) throw std::domain_error("detuning must be finite");
}

double csl_Y(double lambda_rate, double mass_kg, double omega_m) {
  if (lambda_rate < 0.0) throw std::domain_error("collapse rate must be non-negative");
  if (!(mass_kg > 0.0)) throw std::domain_error("mass must be positive");
  if (!(omega_m > 0.0)) throw std::domain_error("mechanical frequency must be positive");
  return lambda_rate * std::sqrt(constants::hbar / (mass_kg * omega_m));
}

double density_noise_spectrum(double omega, const OptomechParams& p, double Y) {
  p.validate();
  if (!(omega > 0.0)) throw std::domain_error("spectrum frequency must be positive");
  if (Y < 0.0) throw std::domain_error("broadening rate must be non-negative");

  const double hbar = constants::hbar;
  double a2 = p.alpha_s * p.alpha_s;
  double chi2 = p.chi * p.chi;
  double d2k2 = p.Delta * p.Delta + p.kappa_c * p.kappa_c;
  double w2 = omega * omega;

  // coth(hbar omega / 2 k_B T); argument is tiny for lab parameters, where
  // 1/tanh reduces smoothly to the classical 2 k_B T / (hbar omega).
  double x = constants::hbar * omega / (2.0 * constants::k_B * p.T_bath);
  double thermal = x > 20.0 ? 1.0 : 1.0 / std::tanh(x);

  double cavity_bracket = (d2k2 - w2) * (d2k2 - w2) + 4.0 * p.kappa_c * p.kappa_c * w2;
  double numerator = 2.0 * a2 * hbar * hbar * p.kappa_c * chi2 * (d2k2 + w2) +
                     hbar * p.mass * omega * cavity_bracket * (p.gamma_m * thermal + Y);

  std::complex<double> mech(w2 - p.omega_m * p.omega_m, -p.gamma_m * omega);
  std::complex<double> cavity(d2k2 - w2, 2.0 * p.kappa_c * omega);
  std::complex<double> den = 2.0 * a2 * p.Delta * hbar * chi2 + p.mass * mech * cavity;
  double den2 = std::norm(den);
  if (!(den2 > 0.0)) throw std::domain_error("spectrum denominator vanished");
  return numerator / den2;
}

std::vector<double> default_spectrum_grid(const OptomechParams& p, int n_points,
                                          double span_gammas) {
  p.validate();
  if (n_points < 2) throw std::domain_error("grid needs at least two points");
  if (!(span_gammas > 0.0)) throw std::domain_error("grid span must be positive");
  double lo = p.omega_m - span_gammas * p.gamma_m;
  double hi = p.omega_m + span_gammas * p.gamma_m;
  lo = std::max(lo, 1e-3 * p.omega_m);
  double llo = std::log(lo), lhi = std::log(hi);
  std::vector<double> grid(static_cast<size_t>(n_points));
  for (int i = 0; i < n_points; ++i)
    grid[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * i / (n_points - 1));
  return grid;
}

namespace {

// Linear interpolation of the omega where S crosses the half-maximum level
// between neighboring grid points i and i+1.
double crossing(const std::vector<double>& w, const std::vector<double>& s, size_t i,
                double level) {
  double t = (level - s[i]) / (s[i + 1] - s[i]);
  return w[i] + t * (w[i + 1] - w[i]);
}

}  // namespace

std::vector<LineStats> line_broadening_report(const OptomechParams& p,
                                              const std::vector<double>& lambda_rates,
                                              std::vector<double> grid) {
  p.validate();
  if (lambda_rates.empty()) throw std::domain_error("need at least one collapse rate");
  if (grid.empty()) grid = default_spectrum_grid(p);
  if (grid.size() < 2) throw std::domain_error("grid needs at least two points");

  std::vector<LineStats> report;
  report.reserve(lambda_rates.size());
  for (double lambda : lambda_rates) {
    double Y = csl_Y(lambda, p.mass, p.omega_m);
    std::vector<double> s(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) s[i] = density_noise_spectrum(grid[i], p, Y);

    size_t ipk = 0;
    for (size_t i = 1; i < s.size(); ++i)
      if (s[i] > s[ipk]) ipk = i;
    if (ipk == 0 || ipk + 1 == s.size())
      throw resolution_error("spectrum peak sits on the grid edge; widen the grid");
    double peak = s[ipk];
    double half = 0.5 * peak;

    size_t in_band = 0;
    for (double v : s)
      if (v >= half) ++in_band;
    if (in_band < 20)
      throw resolution_error("fewer than 20 grid points across the half-maximum band");

    size_t left = ipk;
    while (left > 0 && s[left] >= half) --left;
    if (s[left] >= half) throw resolution_error("left half-maximum crossing outside the grid");
    size_t right = ipk;
    while (right + 1 < s.size() && s[right] >= half) ++right;
    if (s[right] >= half) throw resolution_error("right half-maximum crossing outside the grid");

    double w_left = crossing(grid, s, left, half);
    double w_right = crossing(grid, s, right - 1, half);

    double area = 0.0;
    for (size_t i = 0; i + 1 < grid.size(); ++i)
      area += 0.5 * (s[i] + s[i + 1]) * (grid[i + 1] - grid[i]);

    LineStats row;
    row.lambda_rate = lambda;
    row.Y = Y;
    row.peak = peak;
    row.peak_omega = grid[ipk];
    row.fwhm = w_right - w_left;
    row.area = area;
    row.equivalent_width = area / peak;
    report.push_back(row);
  }
  return report;
}

OptomechParams load_optomech_params(const std::string& path, const std::string& section) {
  KeyValueFile file = KeyValueFile::parse_file(path);
  const ConfigSection* sec = file.find(section);
  if (!sec) throw parse_error(path, 0, "missing [" + section + "] section");

  OptomechParams p{};
  p.alpha_s = sec->number("alpha_s");
  p.kappa_c = sec->number_in("kappa_c", "rad/s");
  p.chi = sec->number_in("chi", "rad/(s*m)");
  p.Delta = sec->number_in("Delta", "rad/s");
  p.mass = sec->number_in("mass", "kg");
  p.gamma_m = sec->number_in("gamma_m", "rad/s");
  p.omega_m = sec->number_in("omega_m", "rad/s");
  p.T_bath = sec->number_in("T_bath", "K");
  p.validate();
  return p;
}

}  // namespace nanowave
