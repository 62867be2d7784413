#include "nanowave/interferometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nanowave/bessel.hpp"
#include "nanowave/constants.hpp"
#include "nanowave/errors.hpp"

namespace nanowave {

GratingConfig::GratingConfig(double wavelength_m, double waist_m, double phi0_peak)
    : wavelength(wavelength_m), waist(waist_m), phi0(phi0_peak) {
  if (!(wavelength > 0.0)) throw std::domain_error("grating wavelength must be positive");
  if (!(waist > 0.0)) throw std::domain_error("grating waist must be positive");
  if (phi0 < 0.0) throw std::domain_error("grating phase must be non-negative");
}

TimingConfig::TimingConfig(double t1_s, double t2_s, double cap_s)
    : t1(t1_s), t2(t2_s), cap(cap_s) {
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw std::domain_error("flight times must be positive");
  if (!(cap > 0.0)) throw std::domain_error("time cap must be positive");
  if (t1 + t2 > cap * (1.0 + 1e-12))
    throw std::domain_error("total time " + std::to_string(t1 + t2) + " s exceeds cap " +
                            std::to_string(cap) + " s");
}

TalbotParams talbot_params(double mass_kg, const GratingConfig& grating,
                           const TimingConfig& timing) {
  if (!(mass_kg > 0.0)) throw std::domain_error("mass must be positive");
  double d = grating.period();
  TalbotParams p;
  p.talbot_time = mass_kg * d * d / constants::h;
  p.alpha = timing.t1 / p.talbot_time;
  p.beta = timing.t2 / p.talbot_time;
  p.kappa = p.alpha * p.beta / (p.alpha + p.beta);
  p.magnification = timing.total() / timing.t1;
  p.pattern_wavenumber = 2.0 * constants::pi / (p.magnification * d);
  return p;
}

TimingConfig talbot_split_timing(double mass_kg, const GratingConfig& grating,
                                 double t1_talbots, double t2_talbots, double cap_s) {
  if (!(mass_kg > 0.0)) throw std::domain_error("mass must be positive");
  double d = grating.period();
  double t_T = mass_kg * d * d / constants::h;
  return TimingConfig(t1_talbots * t_T, t2_talbots * t_T, cap_s);
}

double critical_mass(double total_time, double grating_period) {
  if (!(total_time > 0.0)) throw std::domain_error("total time must be positive");
  if (!(grating_period > 0.0)) throw std::domain_error("grating period must be positive");
  return constants::h * total_time / (4.0 * grating_period * grating_period);
}

KappaBound kappa_bound(double kappa, double talbot_time, double total_time) {
  if (!(talbot_time > 0.0) || !(total_time > 0.0))
    throw std::domain_error("times must be positive");
  KappaBound b;
  b.limit = total_time / (4.0 * talbot_time);
  b.margin = b.limit - kappa;
  b.satisfied = kappa <= b.limit * (1.0 + 1e-12);
  return b;
}

KappaBound kappa_bound(const TalbotParams& params, const TimingConfig& timing) {
  return kappa_bound(params.kappa, params.talbot_time, timing.total());
}

namespace {

// Harmonic amplitude c_n of the detection-plane density:
//   c_n = J_2n(phi0 g(pi n kappa)) * exp(-(n k_g sigma_x beta/alpha)^2 / 2)
//         * exp(-Lambda T (n kappa d)^2 / 3)
// with g = sin in quantum mode and g = identity for the classical moire case.
// Even in n, so one side of the two-sided sum suffices; c_0 = 1 exactly.
double harmonic_amplitude(const TalbotParams& p, const GratingConfig& grating, double T,
                          const InitialState& state, double Lambda, PatternMode mode, int n) {
  if (n == 0) return 1.0;
  double phase_arg = constants::pi * n * p.kappa;
  double grating_arg =
      grating.phi0 * (mode == PatternMode::quantum ? std::sin(phase_arg) : phase_arg);
  double blur = state.sigma_x * p.beta / p.alpha;  // source-size blur at the detector
  double blur_exp = n * p.pattern_wavenumber * blur;
  double coherence_scale = n * p.kappa * grating.period();
  double damping = std::exp(-0.5 * blur_exp * blur_exp) *
                   std::exp(-Lambda * T * coherence_scale * coherence_scale / 3.0);
  return bessel_j(2 * n, grating_arg) * damping;
}

}  // namespace

std::vector<double> pattern_coefficients(double mass_kg, const GratingConfig& grating,
                                         const TimingConfig& timing, const InitialState& state,
                                         double Lambda, PatternMode mode, int n_max,
                                         double tail_rel_tol, bool fixed_order) {
  if (Lambda < 0.0) throw std::domain_error("decoherence strength must be non-negative");
  if (n_max < 1) throw std::domain_error("n_max must be at least 1");
  if (!fixed_order && !(tail_rel_tol > 0.0))
    throw std::domain_error("tail tolerance must be positive");

  TalbotParams p = talbot_params(mass_kg, grating, timing);
  std::vector<double> c;
  c.push_back(1.0);

  if (fixed_order) {
    for (int n = 1; n <= n_max; ++n)
      c.push_back(harmonic_amplitude(p, grating, timing.total(), state, Lambda, mode, n));
    return c;
  }

  const int quiet_needed = std::min(4, n_max);  // consecutive sub-tolerance terms to stop
  int quiet = 0;
  double tail = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    double cn = harmonic_amplitude(p, grating, timing.total(), state, Lambda, mode, n);
    c.push_back(cn);

    if (std::abs(cn) <= tail_rel_tol) {
      tail = std::max(tail, std::abs(cn));
      if (++quiet >= quiet_needed) break;
    } else {
      quiet = 0;
      tail = 0.0;
    }
  }

  if (quiet < quiet_needed) {
    double last = std::abs(c.back());
    throw truncation_error("pattern series tail " + std::to_string(last) + " above tolerance " +
                               std::to_string(tail_rel_tol) + " at n_max=" + std::to_string(n_max),
                           last, n_max);
  }
  return c;
}

Pattern pattern(double mass_kg, const GratingConfig& grating, const TimingConfig& timing,
                const InitialState& state, double Lambda, PatternMode mode,
                const PatternOptions& opts) {
  TalbotParams p = talbot_params(mass_kg, grating, timing);
  double period = p.magnification * grating.period();

  double lo = opts.window_lo, hi = opts.window_hi;
  if (lo == hi) {
    lo = -3.0 * period;
    hi = 3.0 * period;
  }
  if (!(hi > lo)) throw std::domain_error("pattern window is empty");
  if (hi - lo < 2.0 * period * (1.0 - 1e-12))
    throw std::domain_error("pattern window must span at least two pattern periods");
  if (opts.n_points < 16) throw std::domain_error("pattern grid needs at least 16 points");

  std::vector<double> c = pattern_coefficients(mass_kg, grating, timing, state, Lambda, mode,
                                               opts.n_max, opts.tail_rel_tol, opts.fixed_order);

  Pattern out;
  out.period = period;
  out.n_used = static_cast<int>(c.size()) - 1;
  // Reported tail: largest trailing coefficient magnitude (they end sub-tolerance).
  double tail = 0.0;
  for (size_t i = c.size() > 4 ? c.size() - 4 : 1; i < c.size(); ++i)
    tail = std::max(tail, std::abs(c[i]));
  out.tail_bound = tail;

  out.x.resize(opts.n_points);
  out.density.resize(opts.n_points);
  double dx = (hi - lo) / (opts.n_points - 1);
  double clamped = 0.0, total = 0.0;
  for (int i = 0; i < opts.n_points; ++i) {
    double x = lo + i * dx;
    double s = c[0];
    for (size_t n = 1; n < c.size(); ++n) s += 2.0 * c[n] * std::cos(n * p.pattern_wavenumber * x);
    out.x[i] = x;
    if (s < 0.0) {
      // Truncated classical series can ring below zero near caustics; clamp
      // and account for it so the diagnostic exposes how much was removed.
      clamped -= s;
      s = 0.0;
    }
    total += s;
    out.density[i] = s;
  }

  // Trapezoid normalization over the window.
  double integral = 0.0;
  for (int i = 0; i + 1 < opts.n_points; ++i)
    integral += 0.5 * (out.density[i] + out.density[i + 1]) * dx;
  if (!(integral > 0.0)) throw std::domain_error("pattern integrates to zero over the window");
  for (double& v : out.density) v /= integral;
  out.clamped_fraction = total > 0.0 ? clamped / total : 0.0;
  return out;
}

double visibility(double mass_kg, const GratingConfig& grating, const TimingConfig& timing,
                  const InitialState& state, double Lambda, PatternMode mode) {
  if (Lambda < 0.0) throw std::domain_error("decoherence strength must be non-negative");
  TalbotParams p = talbot_params(mass_kg, grating, timing);
  double c1 = harmonic_amplitude(p, grating, timing.total(), state, Lambda, mode, 1);
  return 2.0 * std::abs(c1);  // c_0 = 1
}

double grating_phase(double polarizability, double pulse_energy, double waist) {
  if (!(polarizability > 0.0)) throw std::domain_error("polarizability must be positive");
  if (pulse_energy < 0.0) throw std::domain_error("pulse energy must be non-negative");
  if (!(waist > 0.0)) throw std::domain_error("waist must be positive");
  return 2.0 * polarizability * pulse_energy /
         (constants::hbar * constants::c * constants::eps0 * waist * waist);
}

double grating_pulse_energy(double polarizability, double phi0, double waist) {
  if (!(polarizability > 0.0)) throw std::domain_error("polarizability must be positive");
  if (phi0 < 0.0) throw std::domain_error("phase must be non-negative");
  if (!(waist > 0.0)) throw std::domain_error("waist must be positive");
  return phi0 * constants::hbar * constants::c * constants::eps0 * waist * waist /
         (2.0 * polarizability);
}

double required_grating_power(double polarizability, double phi0, double waist,
                              double pulse_duration) {
  if (!(pulse_duration > 0.0)) throw std::domain_error("pulse duration must be positive");
  return grating_pulse_energy(polarizability, phi0, waist) / pulse_duration;
}

}  // namespace nanowave
