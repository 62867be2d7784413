#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nanowave/constants.hpp"
#include "nanowave/errors.hpp"
#include "nanowave/optomech.hpp"
#include "test_util.hpp"

using namespace nanowave;
using testutil::rel_err;

namespace {

OptomechParams demo_params() {
  return load_optomech_params(testutil::data_file("presets/optomech_fig1.cfg"), "optomech");
}

}  // namespace

TEST_SUITE("optomech") {

TEST_CASE("preset file loads the demonstration oscillator") {
  OptomechParams p = demo_params();
  CHECK(p.alpha_s == 3400.0);
  CHECK(rel_err(p.kappa_c, 2.0 * constants::pi * 1e4) < 1e-12);
  CHECK(p.chi == 4e16);
  CHECK(rel_err(p.Delta, -2.0 * constants::pi * 5e4) < 1e-12);
  CHECK(p.mass == 1.5e-11);
  CHECK(rel_err(p.gamma_m, 2.0 * constants::pi * 2e4) < 1e-12);
  CHECK(rel_err(p.omega_m, 2.0 * constants::pi * 1e5) < 1e-12);
  CHECK(p.T_bath == 1e-3);

  OptomechParams heavy =
      load_optomech_params(testutil::data_file("presets/optomech_fig1.cfg"), "optomech_heavy");
  CHECK(heavy.mass == 1.5e-10);
}

TEST_CASE("preset loader validates sections and units") {
  testutil::TempDir tmp("optomech");
  CHECK_THROWS_AS(load_optomech_params(testutil::data_file("presets/optomech_fig1.cfg"), "nope"),
                  parse_error);
  std::string bad_unit = tmp.write("bad.cfg",
                                   "[optomech]\n"
                                   "alpha_s = 10\n"
                                   "kappa_c = 1e4 Hz\n"  // must be rad/s
                                   "chi = 1e16 rad/(s*m)\n"
                                   "Delta = 0 rad/s\n"
                                   "mass = 1e-11 kg\n"
                                   "gamma_m = 1e4 rad/s\n"
                                   "omega_m = 1e5 rad/s\n"
                                   "T_bath = 1e-3 K\n");
  CHECK_THROWS_AS(load_optomech_params(bad_unit), parse_error);

  OptomechParams p = demo_params();
  p.mass = -1.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = demo_params();
  p.T_bath = 0.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = demo_params();
  p.gamma_m = 0.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}

TEST_CASE("collapse broadening rate") {
  OptomechParams p = demo_params();
  double Y = csl_Y(5e22, p.mass, p.omega_m);
  CHECK(rel_err(Y, 1.672524626743e8) < 1e-9);
  CHECK(csl_Y(0.0, p.mass, p.omega_m) == 0.0);
  // Linear in the collapse rate.
  CHECK(rel_err(csl_Y(1e23, p.mass, p.omega_m), 2.0 * Y) < 1e-12);
  CHECK_THROWS_AS(csl_Y(-1.0, p.mass, p.omega_m), std::domain_error);
}

TEST_CASE("spectrum regression values") {
  OptomechParams p = demo_params();
  double Y = csl_Y(5e22, p.mass, p.omega_m);
  CHECK(rel_err(density_noise_spectrum(0.9 * p.omega_m, p, 0.0), 3.236057316402e-33) < 1e-9);
  CHECK(rel_err(density_noise_spectrum(p.omega_m, p, 0.0), 3.410937609648e-33) < 1e-9);
  CHECK(rel_err(density_noise_spectrum(1.1 * p.omega_m, p, 0.0), 2.713237877417e-33) < 1e-9);
  CHECK(rel_err(density_noise_spectrum(0.9 * p.omega_m, p, Y), 1.250054595086e-32) < 1e-9);
  CHECK(rel_err(density_noise_spectrum(p.omega_m, p, Y), 1.427540495259e-32) < 1e-9);
  CHECK(rel_err(density_noise_spectrum(1.1 * p.omega_m, p, Y), 1.222675740495e-32) < 1e-9);
  CHECK_THROWS_AS(density_noise_spectrum(0.0, p, 0.0), std::domain_error);
  CHECK_THROWS_AS(density_noise_spectrum(p.omega_m, p, -1.0), std::domain_error);
}

TEST_CASE("spectrum is affine in the broadening rate") {
  OptomechParams p = demo_params();
  std::vector<double> grid = default_spectrum_grid(p, 301);
  double y = csl_Y(2.5e22, p.mass, p.omega_m);
  for (double w : grid) {
    double s0 = density_noise_spectrum(w, p, 0.0);
    double s1 = density_noise_spectrum(w, p, y);
    double s2 = density_noise_spectrum(w, p, 2.0 * y);
    CHECK(std::fabs((s2 - s1) - (s1 - s0)) <= 1e-10 * std::max(std::fabs(s2 - s1), s0));
  }
}

TEST_CASE("spectrum converges to baseline as the collapse rate vanishes") {
  OptomechParams p = demo_params();
  std::vector<double> grid = default_spectrum_grid(p, 101);
  double y_small = csl_Y(1e10, p.mass, p.omega_m);
  for (double w : grid) {
    double s0 = density_noise_spectrum(w, p, 0.0);
    CHECK(rel_err(density_noise_spectrum(w, p, y_small), s0) < 1e-8);
  }
}

TEST_CASE("default grid brackets the resonance") {
  OptomechParams p = demo_params();
  std::vector<double> grid = default_spectrum_grid(p);
  REQUIRE(grid.size() == 2001);
  CHECK(rel_err(grid.front(), 1e-3 * p.omega_m) < 1e-12);  // clamped low edge
  CHECK(rel_err(grid.back(), p.omega_m + 50.0 * p.gamma_m) < 1e-12);
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  // Log spacing: constant ratio between neighbors.
  double r0 = grid[1] / grid[0];
  double rn = grid.back() / grid[grid.size() - 2];
  CHECK(rel_err(r0, rn) < 1e-9);
}

TEST_CASE("collapse noise broadens the demonstration line") {
  OptomechParams p = demo_params();
  auto rows = line_broadening_report(p, {0.0, 5e22});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].lambda_rate == 0.0);
  CHECK(rel_err(rows[0].equivalent_width, 3.54525663e5) < 1e-6);
  CHECK(rel_err(rows[1].equivalent_width, 3.99728206e5) < 1e-6);
  double rel_change = rows[1].equivalent_width / rows[0].equivalent_width - 1.0;
  CHECK(rel_change > 1e-3);
  CHECK(rows[1].fwhm > rows[0].fwhm);
  CHECK(rows[1].peak_omega > 0.9 * p.omega_m);
  CHECK(rows[1].peak_omega < 1.1 * p.omega_m);

  // FWHM grows monotonically with the collapse rate.
  auto sweep = line_broadening_report(p, {0.0, 1.25e22, 2.5e22, 5e22, 1e23});
  for (size_t i = 1; i < sweep.size(); ++i) {
    CHECK(sweep[i].fwhm > sweep[i - 1].fwhm);
    CHECK(sweep[i].equivalent_width > sweep[i - 1].equivalent_width);
  }
}

TEST_CASE("heavier oscillator shows weaker fractional broadening") {
  OptomechParams light = demo_params();
  OptomechParams heavy =
      load_optomech_params(testutil::data_file("presets/optomech_fig1.cfg"), "optomech_heavy");
  auto l = line_broadening_report(light, {0.0, 5e22});
  auto h = line_broadening_report(heavy, {0.0, 5e22});
  double rel_light = l[1].equivalent_width / l[0].equivalent_width - 1.0;
  double rel_heavy = h[1].equivalent_width / h[0].equivalent_width - 1.0;
  CHECK(rel_light > 0.0);
  CHECK(std::fabs(rel_light - rel_heavy) > 0.05);
}

TEST_CASE("line statistics require adequate resolution") {
  OptomechParams p = demo_params();
  // Coarse linear grid: too few points inside the half-maximum band.
  std::vector<double> coarse;
  for (int i = 0; i <= 30; ++i) coarse.push_back(0.3 * p.omega_m + i * 0.09 * p.omega_m);
  CHECK_THROWS_AS(line_broadening_report(p, {0.0}, coarse), resolution_error);

  // Grid that starts above the resonance puts the peak on the edge.
  std::vector<double> offset;
  for (int i = 0; i <= 100; ++i) offset.push_back(1.2 * p.omega_m + i * 0.02 * p.omega_m);
  CHECK_THROWS_AS(line_broadening_report(p, {0.0}, offset), resolution_error);

  CHECK_THROWS_AS(line_broadening_report(p, {}), std::domain_error);
}

}  // TEST_SUITE
