// Command-line front end: figure reproduction, parameter sweeps, synthetic
// experiments, and requirement/budget checks. Every run writes a metadata
// file with the fully resolved parameters, the code version, and the seed, so
// an output directory is self-describing and reruns are byte-identical apart
// from the timestamp inside the metadata.

#include <algorithm>
#include <clocale>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nanowave/constants.hpp"
#include "nanowave/constraints.hpp"
#include "nanowave/csv.hpp"
#include "nanowave/decoherence.hpp"
#include "nanowave/errors.hpp"
#include "nanowave/interferometry.hpp"
#include "nanowave/material.hpp"
#include "nanowave/montecarlo.hpp"
#include "nanowave/optomech.hpp"
#include "nanowave/particle.hpp"
#include "nanowave/rng.hpp"
#include "nanowave/svg.hpp"
#include "nanowave/thermal.hpp"
#include "nanowave/wavepacket.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace nanowave;

namespace {

constexpr const char* kVersion = NANOWAVE_VERSION;
constexpr const char* kDataDir = NANOWAVE_DATA_DIR;

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string iso_utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string data_path(const std::string& name) {
  return (fs::path(kDataDir) / name).string();
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Output formats requested via --format (comma-separated).
struct Formats {
  bool csv = true;
  bool svg = false;
};

Formats parse_formats(const std::string& text) {
  Formats f;
  f.csv = false;
  std::stringstream ss(text);
  std::string token;
  bool any = false;
  while (std::getline(ss, token, ',')) {
    if (token == "csv")
      f.csv = true;
    else if (token == "svg")
      f.svg = true;
    else if (!token.empty())
      throw std::domain_error("unknown output format '" + token + "' (use csv, svg)");
    any = true;
  }
  if (!any) throw std::domain_error("--format needs at least one of csv, svg");
  return f;
}

std::vector<double> make_grid(double from, double to, int points, bool log_scale) {
  if (points < 0) throw std::domain_error("grid point count must be non-negative");
  std::vector<double> grid;
  if (points == 0) return grid;
  if (points == 1) {
    grid.push_back(from);
    return grid;
  }
  if (!(to >= from)) throw std::domain_error("grid end must not be below its start");
  if (log_scale && !(from > 0.0))
    throw std::domain_error("log-spaced grid needs a positive start");
  for (int i = 0; i < points; ++i) {
    double t = static_cast<double>(i) / (points - 1);
    grid.push_back(log_scale ? from * std::pow(to / from, t) : from + (to - from) * t);
  }
  return grid;
}

std::string csv_content(const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += fmt_num(row[i]);
    }
    out += '\n';
  }
  return out;
}

json base_metadata(const std::string& command, const json& params) {
  json meta;
  meta["command"] = command;
  meta["version"] = kVersion;
  meta["params"] = params;
  meta["params_hash"] = fnv1a_hex(params.dump());
  meta["timestamp"] = iso_utc_now();
  return meta;
}

void write_json(const fs::path& path, const json& value) {
  write_text(path, value.dump(2) + "\n");
}

void announce(const fs::path& path) { std::cout << "wrote " << path.string() << "\n"; }

// ---------------------------------------------------------------------------
// Shared physics helpers

InitialState state_for_mass(double mass_kg, double omega, double nbar) {
  return thermal_state_widths(mass_kg, omega, nbar);
}

// Smallest diffusion strength the wave-packet expansion test resolves for a
// particle of the given mass, using the reference campaign settings.
double expansion_lambda_floor(double mass_kg, double t, const WidthMeasurementPlan& plan) {
  InitialState state = state_for_mass(mass_kg, reference_trap_omega,
                                      occupation_for_mass(mass_kg));
  return lambda_min_from_expansion(state, mass_kg, t, plan);
}

struct FigureData {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  SvgChart chart;
  json params;
};

constexpr double kGrwRate = 2.2e-17;  // Hz, reference collapse rate
constexpr double kGammaScale = 1e-7;  // m, length scale for Gamma = r_c^2 Lambda

// ---------------------------------------------------------------------------
// Figure definitions

FigureData figure_detection_floor(int points) {
  if (points <= 0) points = 61;
  WidthMeasurementPlan wplan;  // 24000 shots at 100 nm accuracy
  const double t = 100.0;
  ModelCurve qg = ModelCurve::load(data_path("model_curves/quantum_gravity.csv"));
  ModelCurve dp = ModelCurve::load(data_path("model_curves/diosi_penrose.csv"));
  ModelCurve k = ModelCurve::load(data_path("model_curves/karolyhazy.csv"));

  FigureData fig;
  fig.header = {"mass_amu", "gamma_min_hz", "gamma_csl_grw_hz",
                "gamma_qg_hz", "gamma_dp_hz", "gamma_k_hz"};
  std::vector<double> grid = make_grid(1e8, 1e10, points, true);
  for (double m_amu : grid) {
    double m = amu_to_kg(m_amu);
    double floor_l = expansion_lambda_floor(m, t, wplan);
    Particle silica = particle_from_mass_amu(m_amu, fused_silica());
    double grw = csl_Lambda(m, silica.radius, CslParams(kGrwRate));
    fig.rows.push_back({m_amu, lambda_to_gamma(floor_l, kGammaScale),
                        lambda_to_gamma(grw, kGammaScale),
                        lambda_to_gamma(qg.interpolate(m_amu), kGammaScale),
                        lambda_to_gamma(dp.interpolate(m_amu), kGammaScale),
                        lambda_to_gamma(k.interpolate(m_amu), kGammaScale)});
  }

  fig.chart.title = "Detectable decoherence rate over mass";
  fig.chart.x_label = "mass [amu]";
  fig.chart.y_label = "Gamma [Hz]";
  fig.chart.log_x = true;
  fig.chart.log_y = true;
  const char* labels[] = {"expansion floor", "CSL (GRW rate)", "quantum gravity",
                          "gravitational collapse", "conformal fluctuations"};
  for (int s = 0; s < 5; ++s) {
    SvgSeries series;
    series.label = labels[s];
    for (const auto& row : fig.rows) {
      series.x.push_back(row[0]);
      series.y.push_back(row[static_cast<std::size_t>(s) + 1]);
    }
    series.dashed = s >= 2;
    fig.chart.series.push_back(std::move(series));
  }

  fig.params = {{"mass_amu_min", 1e8},
                {"mass_amu_max", 1e10},
                {"points", points},
                {"expansion_time_s", t},
                {"expansion_shots", wplan.n_points},
                {"position_accuracy_m", wplan.position_accuracy},
                {"grw_rate_hz", kGrwRate},
                {"gamma_length_m", kGammaScale},
                {"trap_omega_rad_s", reference_trap_omega}};
  return fig;
}

FigureData figure_min_collapse_rate(int points) {
  if (points <= 0) points = 61;
  WidthMeasurementPlan wplan;
  const double t = 100.0;

  FigureData fig;
  fig.header = {"mass_amu", "lambda_min_silica_hz", "lambda_min_hafnia_hz"};
  std::vector<double> grid = make_grid(1e8, 1e10, points, true);
  for (double m_amu : grid) {
    double m = amu_to_kg(m_amu);
    double floor_l = expansion_lambda_floor(m, t, wplan);
    double r_silica = particle_from_mass_amu(m_amu, fused_silica()).radius;
    double r_hafnia = particle_from_mass_amu(m_amu, hafnia()).radius;
    fig.rows.push_back({m_amu, csl_lambda_min(m, r_silica, floor_l),
                        csl_lambda_min(m, r_hafnia, floor_l)});
  }

  fig.chart.title = "Smallest testable collapse rate over mass";
  fig.chart.x_label = "mass [amu]";
  fig.chart.y_label = "lambda_min [Hz]";
  fig.chart.log_x = true;
  fig.chart.log_y = true;
  const char* labels[] = {"fused silica", "hafnia"};
  for (int s = 0; s < 2; ++s) {
    SvgSeries series;
    series.label = labels[s];
    for (const auto& row : fig.rows) {
      series.x.push_back(row[0]);
      series.y.push_back(row[static_cast<std::size_t>(s) + 1]);
    }
    fig.chart.series.push_back(std::move(series));
  }

  fig.params = {{"mass_amu_min", 1e8},      {"mass_amu_max", 1e10},
                {"points", points},         {"expansion_time_s", t},
                {"expansion_shots", wplan.n_points},
                {"position_accuracy_m", wplan.position_accuracy},
                {"materials", json::array({"fused_silica", "hafnia"})}};
  return fig;
}

FigureData figure_visibility_vs_phase(int points, double mass_amu, double cap_s,
                                      const char* title) {
  if (points <= 0) points = 101;
  double m = amu_to_kg(mass_amu);
  GratingConfig ref_grating(200e-9, 1e-3, 0.0);
  TimingConfig timing = talbot_split_timing(m, ref_grating, 1.0, 3.0, cap_s);
  InitialState state = state_for_mass(m, reference_trap_omega, occupation_for_mass(m));

  FigureData fig;
  fig.header = {"phi0", "visibility_quantum", "visibility_classical"};
  for (double phi0 : make_grid(0.0, 10.0, points, false)) {
    GratingConfig grating(200e-9, 1e-3, phi0);
    fig.rows.push_back({phi0,
                        visibility(m, grating, timing, state, 0.0, PatternMode::quantum),
                        visibility(m, grating, timing, state, 0.0, PatternMode::classical)});
  }

  fig.chart.title = title;
  fig.chart.x_label = "grating phase phi0";
  fig.chart.y_label = "visibility";
  const char* labels[] = {"quantum", "classical"};
  for (int s = 0; s < 2; ++s) {
    SvgSeries series;
    series.label = labels[s];
    series.dashed = s == 1;
    for (const auto& row : fig.rows) {
      series.x.push_back(row[0]);
      series.y.push_back(row[static_cast<std::size_t>(s) + 1]);
    }
    fig.chart.series.push_back(std::move(series));
  }

  fig.params = {{"mass_amu", mass_amu},
                {"phi0_min", 0.0},
                {"phi0_max", 10.0},
                {"points", points},
                {"grating_wavelength_m", 200e-9},
                {"t1_talbots", 1.0},
                {"t2_talbots", 3.0},
                {"total_time_s", timing.total()},
                {"cap_s", cap_s},
                {"nbar", occupation_for_mass(m)},
                {"trap_omega_rad_s", reference_trap_omega},
                {"lambda_per_m2_s", 0.0}};
  return fig;
}

FigureData figure_visibility_vs_lambda(int points, double mass_amu, double phi0) {
  if (points <= 0) points = 81;
  double m = amu_to_kg(mass_amu);
  GratingConfig grating(200e-9, 1e-3, phi0);
  TimingConfig timing = talbot_split_timing(m, grating);
  InitialState state = state_for_mass(m, reference_trap_omega, occupation_for_mass(m));

  FigureData fig;
  fig.header = {"lambda_per_m2_s", "visibility"};
  SvgSeries series;
  series.label = "quantum";
  for (double lambda : make_grid(1e10, 1e14, points, true)) {
    double v = visibility(m, grating, timing, state, lambda, PatternMode::quantum);
    fig.rows.push_back({lambda, v});
    series.x.push_back(lambda);
    series.y.push_back(v);
  }

  fig.chart.title = "Visibility loss from decoherence";
  fig.chart.x_label = "Lambda [1/(m^2 s)]";
  fig.chart.y_label = "visibility";
  fig.chart.log_x = true;
  fig.chart.series.push_back(std::move(series));

  fig.params = {{"mass_amu", mass_amu},
                {"phi0", phi0},
                {"lambda_min_per_m2_s", 1e10},
                {"lambda_max_per_m2_s", 1e14},
                {"points", points},
                {"grating_wavelength_m", 200e-9},
                {"total_time_s", timing.total()},
                {"nbar", occupation_for_mass(m)},
                {"trap_omega_rad_s", reference_trap_omega}};
  return fig;
}

FigureData figure_pattern(int points, double mass_amu, double phi0, double cap_s,
                          const char* title) {
  if (points <= 0) points = 601;
  double m = amu_to_kg(mass_amu);
  GratingConfig grating(200e-9, 1e-3, phi0);
  TimingConfig timing = talbot_split_timing(m, grating, 1.0, 3.0, cap_s);
  InitialState state = state_for_mass(m, reference_trap_omega, occupation_for_mass(m));

  PatternOptions opts;
  opts.n_points = points;
  Pattern quantum = pattern(m, grating, timing, state, 0.0, PatternMode::quantum, opts);
  // Both curves are rendered at the quantum series' bandwidth: the classical
  // moire series decays as n^(-1/2) toward caustic spikes of sub-detector
  // width, so a matched harmonic order is the like-for-like comparison.
  PatternOptions classical_opts = opts;
  classical_opts.fixed_order = true;
  classical_opts.n_max = quantum.n_used;
  Pattern classical =
      pattern(m, grating, timing, state, 0.0, PatternMode::classical, classical_opts);

  FigureData fig;
  fig.header = {"x_nm", "density_quantum_per_m", "density_classical_per_m"};
  for (std::size_t i = 0; i < quantum.x.size(); ++i)
    fig.rows.push_back({quantum.x[i] * 1e9, quantum.density[i], classical.density[i]});

  fig.chart.title = title;
  fig.chart.x_label = "position [nm]";
  fig.chart.y_label = "density [1/m]";
  const char* labels[] = {"quantum", "classical"};
  for (int s = 0; s < 2; ++s) {
    SvgSeries series;
    series.label = labels[s];
    series.dashed = s == 1;
    for (const auto& row : fig.rows) {
      series.x.push_back(row[0]);
      series.y.push_back(row[static_cast<std::size_t>(s) + 1]);
    }
    fig.chart.series.push_back(std::move(series));
  }

  fig.params = {{"mass_amu", mass_amu},
                {"phi0", phi0},
                {"points", points},
                {"grating_wavelength_m", 200e-9},
                {"pattern_period_m", quantum.period},
                {"window_periods", 6.0},
                {"total_time_s", timing.total()},
                {"cap_s", cap_s},
                {"rendering", "matched harmonic order across modes"},
                {"quantum_harmonics", quantum.n_used},
                {"classical_harmonics", classical.n_used},
                {"nbar", occupation_for_mass(m)}};
  return fig;
}

FigureData figure_critical_mass(int points) {
  if (points <= 0) points = 46;
  const double total_time = 100.0;

  FigureData fig;
  fig.header = {"period_nm", "critical_mass_amu"};
  SvgSeries series;
  series.label = "critical mass";
  for (double d_nm : make_grid(50.0, 500.0, points, false)) {
    double mc = kg_to_amu(critical_mass(total_time, d_nm * 1e-9));
    fig.rows.push_back({d_nm, mc});
    series.x.push_back(d_nm);
    series.y.push_back(mc);
  }

  fig.chart.title = "Critical mass over grating period";
  fig.chart.x_label = "grating period [nm]";
  fig.chart.y_label = "critical mass [amu]";
  fig.chart.log_y = true;
  fig.chart.series.push_back(std::move(series));

  fig.params = {{"period_nm_min", 50.0},
                {"period_nm_max", 500.0},
                {"points", points},
                {"total_time_s", total_time}};
  return fig;
}

FigureData figure_model_overlays(int points) {
  if (points <= 0) points = 61;
  ModelCurve qg = ModelCurve::load(data_path("model_curves/quantum_gravity.csv"));
  ModelCurve dp = ModelCurve::load(data_path("model_curves/diosi_penrose.csv"));
  ModelCurve k = ModelCurve::load(data_path("model_curves/karolyhazy.csv"));

  FigureData fig;
  fig.header = {"mass_amu", "lambda_csl_grw_per_m2_s", "lambda_qg_per_m2_s",
                "lambda_dp_per_m2_s", "lambda_k_per_m2_s"};
  for (double m_amu : make_grid(1e8, 1e10, points, true)) {
    double m = amu_to_kg(m_amu);
    double r = particle_from_mass_amu(m_amu, fused_silica()).radius;
    fig.rows.push_back({m_amu, csl_Lambda(m, r, CslParams(kGrwRate)), qg.interpolate(m_amu),
                        dp.interpolate(m_amu), k.interpolate(m_amu)});
  }

  fig.chart.title = "Model decoherence strengths over mass";
  fig.chart.x_label = "mass [amu]";
  fig.chart.y_label = "Lambda [1/(m^2 s)]";
  fig.chart.log_x = true;
  fig.chart.log_y = true;
  const char* labels[] = {"CSL (GRW rate)", "quantum gravity", "gravitational collapse",
                          "conformal fluctuations"};
  for (int s = 0; s < 4; ++s) {
    SvgSeries series;
    series.label = labels[s];
    series.dashed = s >= 1;
    for (const auto& row : fig.rows) {
      series.x.push_back(row[0]);
      series.y.push_back(row[static_cast<std::size_t>(s) + 1]);
    }
    fig.chart.series.push_back(std::move(series));
  }

  fig.params = {{"mass_amu_min", 1e8},
                {"mass_amu_max", 1e10},
                {"points", points},
                {"grw_rate_hz", kGrwRate},
                {"material", "fused_silica"}};
  return fig;
}

FigureData figure_max_density(int points) {
  if (points <= 0) points = 61;
  const double radius = 120e-9;
  const double exposure = 100.0;

  FigureData fig;
  fig.header = {"velocity_km_s", "max_density_per_m3", "max_density_per_cm3"};
  SvgSeries series;
  series.label = "one collision per run";
  for (double v_km_s : make_grid(1.0, 1000.0, points, true)) {
    double rho = max_density_for_one_collision(radius, v_km_s * 1e3, exposure);
    fig.rows.push_back({v_km_s, rho, rho * 1e-6});
    series.x.push_back(v_km_s);
    series.y.push_back(rho * 1e-6);
  }

  fig.chart.title = "Tolerable gas density over impact velocity";
  fig.chart.x_label = "velocity [km/s]";
  fig.chart.y_label = "density [1/cm^3]";
  fig.chart.log_x = true;
  fig.chart.log_y = true;
  fig.chart.series.push_back(std::move(series));

  fig.params = {{"velocity_km_s_min", 1.0},
                {"velocity_km_s_max", 1000.0},
                {"points", points},
                {"particle_radius_m", radius},
                {"exposure_time_s", exposure}};
  return fig;
}

FigureData build_figure(int id, int points, double mass_amu, double phi0, double cap_s) {
  switch (id) {
    case 2:
      return figure_detection_floor(points);
    case 3:
      return figure_min_collapse_rate(points);
    case 5:
      return figure_visibility_vs_phase(points, mass_amu > 0 ? mass_amu : 1e9,
                                        cap_s > 0 ? cap_s : 101.0,
                                        "Visibility vs grating phase");
    case 6:
      return figure_visibility_vs_lambda(points, mass_amu > 0 ? mass_amu : 1e9,
                                         std::isnan(phi0) ? 4.2 : phi0);
    case 7:
      return figure_pattern(points, mass_amu > 0 ? mass_amu : 1e9,
                            std::isnan(phi0) ? 4.2 : phi0, cap_s > 0 ? cap_s : 101.0,
                            "Detection-plane pattern");
    case 8:
      return figure_critical_mass(points);
    case 9:
      return figure_visibility_vs_phase(points, mass_amu > 0 ? mass_amu : 1e10,
                                        cap_s > 0 ? cap_s : 1010.0,
                                        "Visibility vs grating phase, heavy particle");
    case 10:
      return figure_pattern(points, mass_amu > 0 ? mass_amu : 1e10,
                            std::isnan(phi0) ? 4.2 : phi0, cap_s > 0 ? cap_s : 1010.0,
                            "Detection-plane pattern, heavy particle");
    case 12:
      return figure_model_overlays(points);
    case 13:
      return figure_max_density(points);
    default:
      throw std::domain_error(
          "unknown figure id " + std::to_string(id) +
          "; supported ids: 2, 3, 5, 6, 7, 8, 9, 10, 12, 13");
  }
}

int cmd_figure(int id, int points, double mass_amu, double phi0, double cap_s,
               const fs::path& out_dir, const Formats& formats) {
  FigureData fig = build_figure(id, points, mass_amu, phi0, cap_s);
  fig.params["figure_id"] = id;

  char stem_buf[32];
  std::snprintf(stem_buf, sizeof stem_buf, "figure_%02d", id);
  std::string stem = stem_buf;

  json meta = base_metadata("figure", fig.params);
  json outputs = json::array();
  if (formats.csv) outputs.push_back(stem + ".csv");
  if (formats.svg) outputs.push_back(stem + ".svg");
  meta["outputs"] = outputs;

  fs::create_directories(out_dir);
  write_json(out_dir / "metadata.json", meta);
  announce(out_dir / "metadata.json");
  if (formats.csv) {
    write_text(out_dir / (stem + ".csv"), csv_content(fig.header, fig.rows));
    announce(out_dir / (stem + ".csv"));
  }
  if (formats.svg) {
    write_text(out_dir / (stem + ".svg"), render_svg(fig.chart));
    announce(out_dir / (stem + ".svg"));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepSettings {
  std::string quantity;
  std::string variable;
  double from = 0.0, to = 0.0;
  int points = 41;
  bool log_scale = false;
  std::string mode = "quantum";
  double mass_amu = 1e9;
  double phi0 = 4.2;
  double lambda = 0.0;
  std::string material = "fused_silica";
  double total_time = 100.0;
  double radius_nm = 120.0;
  double exposure = 100.0;
  double cap_s = 101.0;
  unsigned jobs = 0;
};

PatternMode parse_mode(const std::string& text) {
  if (text == "quantum") return PatternMode::quantum;
  if (text == "classical") return PatternMode::classical;
  throw std::domain_error("mode must be quantum or classical, got '" + text + "'");
}

struct SweepPlan {
  std::string variable_column;
  std::string quantity_column;
  std::function<double(double)> eval;  // value of the quantity at one grid point
  bool log_y = false;
};

SweepPlan make_sweep_plan(const SweepSettings& s) {
  const std::string pair = s.quantity + "/" + s.variable;
  SweepPlan plan;

  if (pair == "visibility/phi0") {
    double m = amu_to_kg(s.mass_amu);
    GratingConfig ref(200e-9, 1e-3, 0.0);
    TimingConfig timing = talbot_split_timing(m, ref, 1.0, 3.0, s.cap_s);
    InitialState state = state_for_mass(m, reference_trap_omega, occupation_for_mass(m));
    PatternMode mode = parse_mode(s.mode);
    double lambda = s.lambda;
    plan.variable_column = "phi0";
    plan.quantity_column = "visibility";
    plan.eval = [=](double phi0) {
      return visibility(m, GratingConfig(200e-9, 1e-3, phi0), timing, state, lambda, mode);
    };
    return plan;
  }
  if (pair == "visibility/lambda") {
    double m = amu_to_kg(s.mass_amu);
    GratingConfig grating(200e-9, 1e-3, s.phi0);
    TimingConfig timing = talbot_split_timing(m, grating, 1.0, 3.0, s.cap_s);
    InitialState state = state_for_mass(m, reference_trap_omega, occupation_for_mass(m));
    PatternMode mode = parse_mode(s.mode);
    plan.variable_column = "lambda_per_m2_s";
    plan.quantity_column = "visibility";
    plan.eval = [=](double lambda) {
      return visibility(m, grating, timing, state, lambda, mode);
    };
    return plan;
  }
  if (pair == "lambda_min/mass_amu") {
    Material mat = resolve_material(load_materials(data_path("materials.cfg")), s.material);
    double t = s.total_time;
    plan.variable_column = "mass_amu";
    plan.quantity_column = "lambda_min_hz";
    plan.log_y = true;
    plan.eval = [=](double mass_amu) {
      double m = amu_to_kg(mass_amu);
      WidthMeasurementPlan wplan;
      double floor_l = expansion_lambda_floor(m, t, wplan);
      return csl_lambda_min(m, particle_from_mass_amu(mass_amu, mat).radius, floor_l);
    };
    return plan;
  }
  if (pair == "critical_mass/period_nm") {
    double t = s.total_time;
    plan.variable_column = "period_nm";
    plan.quantity_column = "critical_mass_amu";
    plan.log_y = true;
    plan.eval = [=](double d_nm) { return kg_to_amu(critical_mass(t, d_nm * 1e-9)); };
    return plan;
  }
  if (pair == "max_density/velocity_km_s") {
    double r = s.radius_nm * 1e-9;
    double t = s.exposure;
    plan.variable_column = "velocity_km_s";
    plan.quantity_column = "max_density_per_cm3";
    plan.log_y = true;
    plan.eval = [=](double v_km_s) {
      return max_density_for_one_collision(r, v_km_s * 1e3, t) * 1e-6;
    };
    return plan;
  }
  throw std::domain_error(
      "unknown sweep '" + pair +
      "'; registered: visibility/phi0, visibility/lambda, lambda_min/mass_amu, "
      "critical_mass/period_nm, max_density/velocity_km_s");
}

int cmd_sweep(const SweepSettings& s, const fs::path& out_dir, const Formats& formats) {
  SweepPlan plan = make_sweep_plan(s);
  std::vector<double> grid = make_grid(s.from, s.to, s.points, s.log_scale);

  json params = {{"quantity", s.quantity},
                 {"variable", s.variable},
                 {"from", s.from},
                 {"to", s.to},
                 {"points", s.points},
                 {"log", s.log_scale},
                 {"mode", s.mode},
                 {"mass_amu", s.mass_amu},
                 {"phi0", s.phi0},
                 {"lambda_per_m2_s", s.lambda},
                 {"material", s.material},
                 {"total_time_s", s.total_time},
                 {"radius_nm", s.radius_nm},
                 {"exposure_time_s", s.exposure},
                 {"cap_s", s.cap_s}};
  std::string params_hash = fnv1a_hex(params.dump());

  // Resume: when the directory already holds a sweep with the same resolved
  // parameters, rows present in its CSV are reused verbatim.
  std::map<std::string, std::string> cached;
  fs::path meta_path = out_dir / "metadata.json";
  fs::path csv_path = out_dir / "sweep.csv";
  if (fs::exists(meta_path) && fs::exists(csv_path)) {
    try {
      json old = json::parse(read_text(meta_path));
      if (old.value("params_hash", "") == params_hash) {
        std::istringstream in(read_text(csv_path));
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
          if (first) {
            first = false;
            continue;
          }
          auto comma = line.find(',');
          if (comma != std::string::npos) cached.emplace(line.substr(0, comma), line);
        }
      }
    } catch (const std::exception&) {
      cached.clear();  // unreadable previous run; recompute everything
    }
  }

  std::vector<std::string> lines(grid.size());
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto it = cached.find(fmt_num(grid[i]));
    if (it != cached.end())
      lines[i] = it->second;
    else
      missing.push_back(i);
  }

  // Parallel evaluation of the missing grid points in contiguous chunks.
  unsigned jobs = s.jobs > 0 ? s.jobs : std::thread::hardware_concurrency();
  if (jobs == 0) jobs = 1;
  jobs = std::min<unsigned>(jobs, 8);
  jobs = std::max<unsigned>(1, std::min<std::size_t>(jobs, missing.size() ? missing.size() : 1));
  std::vector<double> values(grid.size(), 0.0);
  std::vector<std::future<void>> tasks;
  std::size_t chunk = (missing.size() + jobs - 1) / std::max<unsigned>(jobs, 1);
  for (unsigned j = 0; j < jobs && chunk > 0; ++j) {
    std::size_t lo = static_cast<std::size_t>(j) * chunk;
    std::size_t hi = std::min(lo + chunk, missing.size());
    if (lo >= hi) break;
    tasks.push_back(std::async(std::launch::async, [&, lo, hi]() {
      for (std::size_t k = lo; k < hi; ++k) values[missing[k]] = plan.eval(grid[missing[k]]);
    }));
  }
  for (auto& task : tasks) task.get();
  for (std::size_t i : missing) lines[i] = fmt_num(grid[i]) + "," + fmt_num(values[i]);

  std::string content = plan.variable_column + "," + plan.quantity_column + "\n";
  for (const std::string& line : lines) content += line + "\n";

  json meta = base_metadata("sweep", params);
  meta["outputs"] = json::array({"sweep.csv"});
  if (formats.svg) meta["outputs"].push_back("sweep.svg");
  meta["rows_total"] = grid.size();
  meta["rows_reused"] = grid.size() - missing.size();

  fs::create_directories(out_dir);
  write_json(meta_path, meta);
  announce(meta_path);
  write_text(csv_path, content);
  announce(csv_path);
  if (!missing.empty() && missing.size() < grid.size())
    std::cout << "resumed " << (grid.size() - missing.size()) << " of " << grid.size()
              << " rows from the previous run\n";

  if (formats.svg) {
    SvgChart chart;
    chart.title = s.quantity + " vs " + s.variable;
    chart.x_label = plan.variable_column;
    chart.y_label = plan.quantity_column;
    chart.log_x = s.log_scale;
    chart.log_y = plan.log_y;
    SvgSeries series;
    series.label = s.quantity;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      series.x.push_back(grid[i]);
      auto comma = lines[i].find(',');
      series.y.push_back(std::stod(lines[i].substr(comma + 1)));
    }
    if (series.x.empty()) {
      std::cout << "empty range; skipping sweep.svg\n";
    } else {
      chart.series.push_back(std::move(series));
      write_text(out_dir / "sweep.svg", render_svg(chart));
      announce(out_dir / "sweep.svg");
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// experiment

std::uint64_t read_seed(const ConfigSection& sec, const std::string& path) {
  const ConfigEntry* entry = sec.find("seed");
  if (!entry)
    throw parse_error(path, sec.line,
                      "experiment.seed is required; seeds are never auto-generated");
  if (!entry->has_number || !entry->unit.empty())
    throw parse_error(path, entry->line, "experiment.seed must be a plain integer");
  double value = entry->number;
  double intpart = 0.0;
  if (value < 0.0 || std::modf(value, &intpart) != 0.0)
    throw parse_error(path, entry->line, "experiment.seed must be a non-negative integer");
  return static_cast<std::uint64_t>(value);
}

int cmd_experiment(const std::string& plan_path, const fs::path& out_dir,
                   const Formats& formats, std::optional<std::uint64_t> seed_override) {
  KeyValueFile file = KeyValueFile::parse_file(plan_path);
  const ConfigSection* secp = file.find("experiment");
  if (!secp) throw parse_error(plan_path, 0, "missing [experiment] section");
  const ConfigSection& sec = *secp;

  std::string kind = sec.text_or("kind", "interference");
  if (kind != "interference" && kind != "expansion")
    throw parse_error(plan_path, sec.line,
                      "experiment.kind must be interference or expansion, got '" + kind + "'");

  std::uint64_t seed = seed_override ? *seed_override : read_seed(sec, plan_path);
  double mass_amu = sec.number_in("mass", "amu");
  double mass_kg = amu_to_kg(mass_amu);
  double nbar = sec.number_or("nbar", occupation_for_mass(mass_kg));
  double omega = sec.find("omega") ? sec.number_in("omega", "rad/s") : reference_trap_omega;
  InitialState state = state_for_mass(mass_kg, omega, nbar);

  fs::create_directories(out_dir);

  if (kind == "expansion") {
    ExpansionPlan plan{state, mass_kg,
                       sec.find("time") ? sec.number_in("time", "s") : 100.0,
                       sec.find("lambda_true") ? sec.number_in("lambda_true", "1/(m^2*s)")
                                               : 0.0};
    plan.n_points = static_cast<std::size_t>(sec.number_or("n_points", 24000.0));
    plan.sigma_detect =
        sec.find("sigma_detect") ? sec.number_in("sigma_detect", "m") : 1e-7;
    plan.seed = seed;

    ExpansionResult result = run_expansion_experiment(plan);

    json params = {{"plan_file", plan_path},
                   {"kind", kind},
                   {"seed", seed},
                   {"generator", Rng::generator_id()},
                   {"mass_amu", mass_amu},
                   {"nbar", nbar},
                   {"trap_omega_rad_s", omega},
                   {"time_s", plan.t},
                   {"lambda_true_per_m2_s", plan.lambda_true},
                   {"n_points", plan.n_points},
                   {"sigma_detect_m", plan.sigma_detect}};
    json meta = base_metadata("experiment", params);
    meta["outputs"] = json::array({"report.json"});
    write_json(out_dir / "metadata.json", meta);
    announce(out_dir / "metadata.json");

    json report = {{"kind", kind},
                   {"seed", seed},
                   {"w_schrodinger_m", result.w_schrodinger},
                   {"w_expected_m", result.w_expected},
                   {"w_hat_m", result.w_hat},
                   {"w_hat_baseline_m", result.w_hat_baseline},
                   {"significance", result.significance},
                   {"lambda_min_per_m2_s", result.lambda_min}};
    write_json(out_dir / "report.json", report);
    announce(out_dir / "report.json");
    std::cout << "expansion significance: " << fmt_num(result.significance)
              << " error bars\n";
    return 0;
  }

  GratingConfig grating(
      sec.find("wavelength") ? sec.number_in("wavelength", "nm") * 1e-9 : 200e-9,
      sec.find("waist") ? sec.number_in("waist", "mm") * 1e-3 : 1e-3,
      sec.number_or("phi0", 4.2));
  double cap_s = sec.find("cap") ? sec.number_in("cap", "s") : 101.0;
  TimingConfig timing = talbot_split_timing(mass_kg, grating, sec.number_or("t1_talbots", 1.0),
                                            sec.number_or("t2_talbots", 3.0), cap_s);

  ExperimentPlan plan{mass_kg, grating, timing, state};
  plan.lambda_true =
      sec.find("lambda_true") ? sec.number_in("lambda_true", "1/(m^2*s)") : 0.0;
  plan.mode = parse_mode(sec.text_or("mode", "quantum"));
  plan.n_samples = static_cast<std::size_t>(sec.number_or("n_samples", 24000.0));
  plan.sigma_detect = sec.find("sigma_detect") ? sec.number_in("sigma_detect", "m") : 0.0;
  plan.seed = seed;
  plan.window_periods = sec.number_or("window_periods", 6.0);
  plan.grid_points = static_cast<std::size_t>(sec.number_or("grid_points", 16384.0));
  plan.n_max = static_cast<int>(sec.number_or("n_max", 64.0));
  plan.tail_rel_tol = sec.number_or("tail_rel_tol", 1e-12);
  plan.validate();

  double curve_max =
      sec.find("curve_max_lambda") ? sec.number_in("curve_max_lambda", "1/(m^2*s)") : 1e14;
  int curve_points = static_cast<int>(sec.number_or("curve_points", 121.0));
  double z = sec.number_or("z", 2.576);

  std::optional<LambdaCurve> curve;
  if (curve_max > 0.0)
    curve = build_lambda_curve(mass_kg, grating, timing, state, plan.mode, plan.sigma_detect,
                               curve_max, curve_points);
  ReconstructionResult result = run_experiment(plan, curve ? &*curve : nullptr, z);

  json params = {{"plan_file", plan_path},
                 {"kind", kind},
                 {"seed", seed},
                 {"generator", Rng::generator_id()},
                 {"mass_amu", mass_amu},
                 {"nbar", nbar},
                 {"trap_omega_rad_s", omega},
                 {"phi0", grating.phi0},
                 {"wavelength_nm", grating.wavelength * 1e9},
                 {"waist_mm", grating.waist * 1e3},
                 {"t1_s", timing.t1},
                 {"t2_s", timing.t2},
                 {"cap_s", cap_s},
                 {"mode", sec.text_or("mode", "quantum")},
                 {"lambda_true_per_m2_s", plan.lambda_true},
                 {"n_samples", plan.n_samples},
                 {"sigma_detect_m", plan.sigma_detect},
                 {"window_periods", plan.window_periods},
                 {"grid_points", plan.grid_points},
                 {"n_max", plan.n_max},
                 {"tail_rel_tol", plan.tail_rel_tol},
                 {"curve_max_lambda_per_m2_s", curve_max},
                 {"curve_points", curve_points},
                 {"z", z}};
  json meta = base_metadata("experiment", params);
  meta["outputs"] = json::array({"report.json", "histogram.csv"});
  if (formats.svg) meta["outputs"].push_back("histogram.svg");
  write_json(out_dir / "metadata.json", meta);
  announce(out_dir / "metadata.json");

  std::vector<std::vector<double>> bins;
  for (std::size_t i = 0; i < result.histogram.counts.size(); ++i)
    bins.push_back({result.histogram.edges[i], result.histogram.edges[i + 1],
                    static_cast<double>(result.histogram.counts[i])});
  write_text(out_dir / "histogram.csv",
             csv_content({"bin_lo_m", "bin_hi_m", "count"}, bins));
  announce(out_dir / "histogram.csv");

  json report = {{"kind", kind},
                 {"seed", seed},
                 {"period_m", result.period},
                 {"n_samples", plan.n_samples},
                 {"visibility",
                  {{"value", result.visibility.value},
                   {"std_error", result.visibility.std_error},
                   {"n_bootstrap", result.visibility.n_bootstrap}}},
                 {"analytic_visibility", result.analytic_visibility},
                 {"histogram",
                  {{"bins", result.histogram.counts.size()},
                   {"bin_width_m", result.histogram.bin_width}}}};
  if (result.lambda) {
    report["lambda_interval"] = {{"lower_per_m2_s", result.lambda->lower},
                                 {"upper_per_m2_s", result.lambda->upper},
                                 {"confidence", result.lambda->confidence},
                                 {"super_quantum", result.lambda->super_quantum},
                                 {"below_range", result.lambda->below_range},
                                 {"above_range", result.lambda->above_range}};
  } else {
    report["lambda_interval"] = nullptr;
  }
  write_json(out_dir / "report.json", report);
  announce(out_dir / "report.json");

  if (formats.svg) {
    SvgChart chart;
    chart.title = "Sampled detection-plane histogram";
    chart.x_label = "position [nm]";
    chart.y_label = "counts";
    SvgSeries series;
    series.label = "counts";
    for (const auto& bin : bins) {
      series.x.push_back(0.5 * (bin[0] + bin[1]) * 1e9);
      series.y.push_back(bin[2]);
    }
    chart.series.push_back(std::move(series));
    write_text(out_dir / "histogram.svg", render_svg(chart));
    announce(out_dir / "histogram.svg");
  }

  std::cout << "estimated visibility " << fmt_num(result.visibility.value) << " +- "
            << fmt_num(result.visibility.std_error) << " (analytic "
            << fmt_num(result.analytic_visibility) << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// check-requirements

const char* status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "PASS";
    case CheckStatus::fail:
      return "FAIL";
    default:
      return "UNKNOWN";
  }
}

const char* comparison_name(Comparison op) {
  switch (op) {
    case Comparison::le:
      return "le";
    case Comparison::ge:
      return "ge";
    default:
      return "eq";
  }
}

int cmd_check_requirements(const std::string& mission_path, const std::string& req_path,
                           const std::string& tier_flag, const fs::path& out_dir) {
  RequirementSet reqs = RequirementSet::load(req_path);
  ConfigSection mission = load_mission_config(mission_path);

  std::vector<std::string> tiers;
  if (tier_flag == "all")
    tiers = reqs.tiers();
  else
    tiers.push_back(tier_flag);

  json tier_reports = json::array();
  bool ok = true;
  for (const std::string& tier : tiers) {
    RequirementReport report = check_requirements(mission, reqs, tier);
    ok = ok && report.all_pass;

    std::cout << "tier " << tier << ": " << report.n_pass << " pass, " << report.n_fail
              << " fail, " << report.n_unknown << " unknown\n";
    json checks = json::array();
    for (const RequirementCheck& check : report.checks) {
      const Requirement& req = *check.requirement;
      std::cout << "  " << status_name(check.status) << " " << req.name;
      if (check.has_actual)
        std::cout << ": " << fmt_num(check.actual) << " " << req.unit << " "
                  << comparison_name(req.op) << " " << fmt_num(req.value) << " " << req.unit
                  << " (margin " << fmt_num(check.margin) << ")";
      else
        std::cout << ": no mission value (requirement: " << comparison_name(req.op) << " "
                  << fmt_num(req.value) << " " << req.unit << ")";
      if (req.soft) std::cout << " [soft]";
      std::cout << "\n";

      json jc = {{"name", req.name},
                 {"op", comparison_name(req.op)},
                 {"value", req.value},
                 {"unit", req.unit},
                 {"soft", req.soft},
                 {"status", status_name(check.status)}};
      if (check.has_actual) {
        jc["actual"] = check.actual;
        jc["margin"] = check.margin;
      }
      if (!req.note.empty()) jc["note"] = req.note;
      checks.push_back(std::move(jc));
    }
    tier_reports.push_back(json{{"tier", tier},
                                {"all_pass", report.all_pass},
                                {"n_pass", report.n_pass},
                                {"n_fail", report.n_fail},
                                {"n_unknown", report.n_unknown},
                                {"checks", checks}});
  }

  json params = {{"mission_config", mission_path},
                 {"requirements", req_path},
                 {"tier", tier_flag}};
  json meta = base_metadata("check-requirements", params);
  meta["outputs"] = json::array({"report.json"});
  fs::create_directories(out_dir);
  write_json(out_dir / "metadata.json", meta);
  announce(out_dir / "metadata.json");
  write_json(out_dir / "report.json",
             json{{"all_pass", ok}, {"tiers", tier_reports}});
  announce(out_dir / "report.json");

  std::cout << (ok ? "all requirements satisfied\n" : "requirement check FAILED\n");
  return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// check-budget

int cmd_check_budget(std::vector<std::string> tables, double tolerance, bool strict_totals,
                     const fs::path& out_dir) {
  if (tables.empty())
    tables = {data_path("budget_mass_total.csv"), data_path("budget_mass_payload.csv"),
              data_path("budget_power_payload.csv"), data_path("budget_power_modes.csv")};

  bool rows_ok = true;
  bool totals_ok = true;
  json table_reports = json::array();
  for (const std::string& path : tables) {
    BudgetTable table = BudgetTable::load(path);
    BudgetReport report = check_budget(table, tolerance);
    rows_ok = rows_ok && report.rows_ok;
    totals_ok = totals_ok && report.totals_ok;

    int margin_rows = 0, sum_rows = 0;
    json checks = json::array();
    for (const BudgetRowCheck& check : report.checks) {
      if (!check.margin_checked && !check.sum_checked) continue;
      const BudgetRow& row = *check.row;
      json jc = {{"name", row.name}, {"kind", row.kind}, {"cbe", row.cbe},
                 {"stated", row.stated}};
      if (check.margin_checked) {
        ++margin_rows;
        jc["margin_percent"] = row.margin * 100.0;
        jc["recomputed"] = check.recomputed;
        jc["margin_ok"] = check.margin_ok;
        if (!check.margin_ok)
          std::cout << path << ": row " << row.name << ": cbe " << fmt_num(row.cbe) << " at "
                    << fmt_num(row.margin * 100.0) << "% gives " << fmt_num(check.recomputed)
                    << ", stated " << fmt_num(row.stated) << "\n";
      }
      if (check.sum_checked) {
        ++sum_rows;
        jc["cbe_sum"] = check.cbe_sum;
        jc["stated_sum"] = check.stated_sum;
        jc["sum_cbe_ok"] = check.sum_cbe_ok;
        jc["sum_stated_ok"] = check.sum_stated_ok;
        if (!check.sum_cbe_ok || !check.sum_stated_ok)
          std::cout << path << ": declared sum " << row.name << ": parts add to "
                    << fmt_num(check.cbe_sum) << " CBE / " << fmt_num(check.stated_sum)
                    << " stated vs printed " << fmt_num(row.cbe) << " / "
                    << fmt_num(row.stated) << (strict_totals ? "" : " (warning)") << "\n";
      }
      checks.push_back(std::move(jc));
    }
    std::cout << path << ": " << margin_rows << " margin rows "
              << (report.rows_ok ? "ok" : "FAILED") << ", " << sum_rows << " declared sums "
              << (report.totals_ok ? "ok" : "with mismatches") << "\n";
    table_reports.push_back(json{{"table", path},
                                 {"rows_ok", report.rows_ok},
                                 {"totals_ok", report.totals_ok},
                                 {"checks", checks}});
  }

  bool ok = rows_ok && (!strict_totals || totals_ok);
  json params = {{"tables", tables},
                 {"tolerance", tolerance},
                 {"strict_totals", strict_totals}};
  json meta = base_metadata("check-budget", params);
  meta["outputs"] = json::array({"report.json"});
  fs::create_directories(out_dir);
  write_json(out_dir / "metadata.json", meta);
  announce(out_dir / "metadata.json");
  write_json(out_dir / "report.json", json{{"rows_ok", rows_ok},
                                           {"totals_ok", totals_ok},
                                           {"strict_totals", strict_totals},
                                           {"ok", ok},
                                           {"tables", table_reports}});
  announce(out_dir / "report.json");

  std::cout << (ok ? "budget arithmetic reproduced\n" : "budget check FAILED\n");
  return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// noise-spectrum

int cmd_noise_spectrum(const std::string& preset_path, const std::string& section,
                       std::vector<double> rates, int points, double span_gammas,
                       const fs::path& out_dir, const Formats& formats) {
  OptomechParams p = load_optomech_params(preset_path, section);

  if (rates.empty()) {
    KeyValueFile file = KeyValueFile::parse_file(preset_path);
    const ConfigSection* sec = file.find(section);
    if (sec && sec->find("csl_lambda")) rates.push_back(sec->number_in("csl_lambda", "Hz"));
  }
  std::vector<double> all_rates = {0.0};
  for (double rate : rates) {
    if (rate < 0.0) throw std::domain_error("collapse rate must be non-negative");
    if (rate > 0.0) all_rates.push_back(rate);
  }

  std::vector<double> grid = default_spectrum_grid(p, points, span_gammas);
  std::vector<std::string> header = {"omega_rad_s", "s_baseline_m2_s"};
  for (std::size_t i = 1; i < all_rates.size(); ++i) {
    header.push_back(all_rates.size() == 2 ? "s_csl_m2_s"
                                           : "s_csl" + std::to_string(i) + "_m2_s");
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (double omega : grid) {
    std::vector<double> row = {omega};
    for (double rate : all_rates)
      row.push_back(density_noise_spectrum(omega, p, csl_Y(rate, p.mass, p.omega_m)));
    rows.push_back(std::move(row));
  }

  std::vector<LineStats> stats = line_broadening_report(p, all_rates, grid);

  json params = {{"preset", preset_path},
                 {"section", section},
                 {"lambda_rates_hz", all_rates},
                 {"points", points},
                 {"span_gammas", span_gammas},
                 {"alpha_s", p.alpha_s},
                 {"kappa_c_rad_s", p.kappa_c},
                 {"chi_rad_s_m", p.chi},
                 {"delta_rad_s", p.Delta},
                 {"mass_kg", p.mass},
                 {"gamma_m_rad_s", p.gamma_m},
                 {"omega_m_rad_s", p.omega_m},
                 {"t_bath_k", p.T_bath}};
  json meta = base_metadata("noise-spectrum", params);
  meta["outputs"] = json::array({"spectrum.csv", "report.json"});
  if (formats.svg) meta["outputs"].push_back("spectrum.svg");
  fs::create_directories(out_dir);
  write_json(out_dir / "metadata.json", meta);
  announce(out_dir / "metadata.json");
  write_text(out_dir / "spectrum.csv", csv_content(header, rows));
  announce(out_dir / "spectrum.csv");

  json lines = json::array();
  for (const LineStats& line : stats) {
    lines.push_back(json{{"lambda_rate_hz", line.lambda_rate},
                         {"y_rad_s", line.Y},
                         {"peak_m2_s", line.peak},
                         {"peak_omega_rad_s", line.peak_omega},
                         {"fwhm_rad_s", line.fwhm},
                         {"area_m2_rad", line.area},
                         {"equivalent_width_rad_s", line.equivalent_width}});
  }
  write_json(out_dir / "report.json", json{{"lines", lines}});
  announce(out_dir / "report.json");

  if (formats.svg) {
    SvgChart chart;
    chart.title = "Position noise spectrum";
    chart.x_label = "omega [rad/s]";
    chart.y_label = "S [m^2 s]";
    chart.log_x = true;
    chart.log_y = true;
    for (std::size_t c = 1; c < header.size(); ++c) {
      SvgSeries series;
      series.label = header[c];
      series.dashed = c > 1;
      for (const auto& row : rows) {
        series.x.push_back(row[0]);
        series.y.push_back(row[c]);
      }
      chart.series.push_back(std::move(series));
    }
    write_text(out_dir / "spectrum.svg", render_svg(chart));
    announce(out_dir / "spectrum.svg");
  }

  for (std::size_t i = 1; i < stats.size(); ++i)
    std::cout << "lambda " << fmt_num(stats[i].lambda_rate) << " Hz: equivalent width "
              << fmt_num(stats[i].equivalent_width) << " rad/s vs baseline "
              << fmt_num(stats[0].equivalent_width) << " rad/s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");

  CLI::App app{"nanowave: near-field interference and decoherence toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string out_flag;
  std::string format_flag = "csv";
  std::uint64_t seed_flag = 0;
  bool seed_given = false;
  std::string config_flag;
  app.add_option("--out", out_flag, "output directory (default nanowave_out/<command>)");
  app.add_option("--format", format_flag, "comma-separated output formats: csv,svg");
  app.add_option("--seed", seed_flag, "seed override where applicable")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--config", config_flag, "mission config file (check-requirements)");

  auto* fig = app.add_subcommand("figure", "reproduce one of the reference figures");
  fig->fallthrough();
  int fig_id = 0;
  int fig_points = 0;
  double fig_mass_amu = 0.0;
  double fig_phi0 = std::numeric_limits<double>::quiet_NaN();
  double fig_cap = 0.0;
  fig->add_option("id", fig_id, "figure id (2, 3, 5, 6, 7, 8, 9, 10, 12, 13)")->required();
  fig->add_option("--points", fig_points, "grid points (0 = figure default)");
  fig->add_option("--mass-amu", fig_mass_amu, "particle mass override, amu");
  fig->add_option("--phi0", fig_phi0, "grating phase override");
  fig->add_option("--cap", fig_cap, "measurement time cap override, s");

  auto* sweep = app.add_subcommand("sweep", "sweep a registered quantity over a variable");
  sweep->fallthrough();
  SweepSettings sw;
  sweep->add_option("quantity", sw.quantity, "quantity to compute")->required();
  sweep->add_option("variable", sw.variable, "variable to sweep")->required();
  sweep->add_option("--from", sw.from, "range start")->required();
  sweep->add_option("--to", sw.to, "range end")->required();
  sweep->add_option("--points", sw.points, "grid points (0 = empty sweep)");
  sweep->add_flag("--log", sw.log_scale, "log-spaced grid");
  sweep->add_option("--mode", sw.mode, "pattern mode: quantum or classical");
  sweep->add_option("--mass-amu", sw.mass_amu, "particle mass, amu");
  sweep->add_option("--phi0", sw.phi0, "grating phase");
  sweep->add_option("--lambda", sw.lambda, "decoherence strength, 1/(m^2 s)");
  sweep->add_option("--material", sw.material, "particle material name");
  sweep->add_option("--total-time", sw.total_time, "total measurement time, s");
  sweep->add_option("--radius-nm", sw.radius_nm, "particle radius, nm");
  sweep->add_option("--exposure", sw.exposure, "gas exposure time, s");
  sweep->add_option("--cap", sw.cap_s, "measurement time cap, s");
  sweep->add_option("--jobs", sw.jobs, "parallel evaluation threads");

  auto* experiment = app.add_subcommand("experiment", "run a synthetic experiment plan");
  experiment->fallthrough();
  std::string plan_path;
  experiment->add_option("plan", plan_path, "plan file with an [experiment] section")
      ->required();

  auto* reqs = app.add_subcommand("check-requirements", "evaluate mission requirement tiers");
  reqs->fallthrough();
  std::string req_file = data_path("requirements.cfg");
  std::string tier = "science";
  reqs->add_option("--requirements", req_file, "requirement threshold file");
  reqs->add_option("--tier", tier, "tier name, or 'all'");

  auto* budget = app.add_subcommand("check-budget", "recompute budget table arithmetic");
  budget->fallthrough();
  std::vector<std::string> budget_tables;
  double budget_tolerance = 0.5;
  bool strict_totals = false;
  budget->add_option("tables", budget_tables, "budget CSV files (default: shipped tables)");
  budget->add_option("--tolerance", budget_tolerance, "allowed mismatch per cell");
  budget->add_flag("--strict-totals", strict_totals, "treat sum mismatches as failures");

  auto* noise = app.add_subcommand("noise-spectrum", "optomechanical density noise spectrum");
  noise->fallthrough();
  std::string preset = data_path("presets/optomech_fig1.cfg");
  std::string section = "optomech";
  std::vector<double> noise_rates;
  int noise_points = 2001;
  double span_gammas = 50.0;
  noise->add_option("--preset", preset, "optomech parameter file");
  noise->add_option("--section", section, "section name inside the preset");
  noise->add_option("--lambda", noise_rates, "collapse rates in Hz (default: preset value)");
  noise->add_option("--points", noise_points, "frequency grid points");
  noise->add_option("--span", span_gammas, "grid half-span in mechanical linewidths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto out_dir = [&](const std::string& command) {
    if (!out_flag.empty()) return fs::path(out_flag);
    std::string name = command;
    std::replace(name.begin(), name.end(), '-', '_');
    return fs::path("nanowave_out") / name;
  };

  try {
    Formats formats = parse_formats(format_flag);
    if (*fig) return cmd_figure(fig_id, fig_points, fig_mass_amu, fig_phi0, fig_cap,
                                out_dir("figure_" + std::to_string(fig_id)), formats);
    if (*sweep) return cmd_sweep(sw, out_dir("sweep"), formats);
    if (*experiment)
      return cmd_experiment(plan_path, out_dir("experiment"), formats,
                            seed_given ? std::optional<std::uint64_t>(seed_flag)
                                       : std::nullopt);
    if (*reqs) {
      std::string mission = config_flag.empty() ? data_path("mission_default.cfg") : config_flag;
      return cmd_check_requirements(mission, req_file, tier, out_dir("check_requirements"));
    }
    if (*budget)
      return cmd_check_budget(budget_tables, budget_tolerance, strict_totals,
                              out_dir("check_budget"));
    if (*noise)
      return cmd_noise_spectrum(preset, section, noise_rates, noise_points, span_gammas,
                                out_dir("noise_spectrum"), formats);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const truncation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const resolution_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sampling_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
