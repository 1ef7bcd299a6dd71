// Copyright 2026 The cvgrav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "cvgrav/error.hpp"
#include "cvgrav/fock_space.hpp"
#include "cvgrav/gaussian_states.hpp"
#include "cvgrav/io.hpp"
#include "cvgrav/parallel.hpp"
#include "cvgrav/phase_space.hpp"
#include "cvgrav/scenario.hpp"
#include "cvgrav/sensing_protocols.hpp"
#include "selfcheck.hpp"

namespace cvgrav::cli {
namespace {

namespace fs = std::filesystem;
using Complex = std::complex<double>;

KeySpec number_key(std::string key, double value, std::string help) {
  return {std::move(key), ValueType::Number, Value{value}, std::move(help)};
}
KeySpec integer_key(std::string key, int value, std::string help) {
  return {std::move(key), ValueType::Integer, Value{static_cast<double>(value)}, std::move(help)};
}
KeySpec string_key(std::string key, std::string value, std::string help) {
  return {std::move(key), ValueType::String, Value{std::move(value)}, std::move(help)};
}
KeySpec bool_key(std::string key, bool value, std::string help) {
  return {std::move(key), ValueType::Bool, Value{value}, std::move(help)};
}
KeySpec list_key(std::string key, std::vector<double> value, std::string help) {
  return {std::move(key), ValueType::NumberList, Value{std::move(value)}, std::move(help)};
}

SectionSchema output_section(const std::string& prefix) {
  return {"output",
          {string_key("out_dir", ".", "directory for output files"),
           string_key("prefix", prefix, "file name prefix")}};
}

SectionSchema scenario_section() {
  const ScenarioConfig d;
  return {"scenario",
          {number_key("M_A", d.M_A, "mass of particle A (kg)"),
           number_key("M_B", d.M_B, "mass of particle B (kg)"),
           number_key("D", d.D, "centre-of-mass separation (m)"),
           number_key("d", d.d, "superposition separation (m)"),
           number_key("x0", d.x0, "quadrature length scale (m)"),
           number_key("G", d.G, "gravitational constant (m^3 kg^-1 s^-2)"),
           number_key("hbar", d.hbar, "reduced Planck constant (J s)"),
           list_key("t_grid", {}, "evaluation times (s); empty picks a grid from eta_max")}};
}

ScenarioConfig scenario_from(const Config& c) {
  ScenarioConfig s;
  s.M_A = c.number("scenario", "M_A");
  s.M_B = c.number("scenario", "M_B");
  s.D = c.number("scenario", "D");
  s.d = c.number("scenario", "d");
  s.x0 = c.number("scenario", "x0");
  s.G = c.number("scenario", "G");
  s.hbar = c.number("scenario", "hbar");
  s.t_grid = c.list("scenario", "t_grid");
  s.validate();
  return s;
}

Complex complex_key(const Config& c, const std::string& section, const std::string& key) {
  const std::string& text = c.string(section, key);
  const auto value = parse_complex(text);
  if (!value) throw ConfigError(key + ": cannot parse '" + text + "' as a complex number");
  return *value;
}

class OutputWriter {
 public:
  OutputWriter(const Config& config, std::string command, std::ostream& log)
      : dir_(config.string("output", "out_dir")),
        prefix_(config.string("output", "prefix")),
        log_(log),
        start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
    manifest_.config_digest = config.digest();
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw ConfigError("output: cannot create directory '" + dir_.string() + "'");
    }
  }

  std::string name(const std::string& suffix) const { return prefix_ + suffix; }

  void wigner(const std::string& file, const phase_space::WignerGrid& grid,
              const io::Metadata& metadata) {
    io::write_wigner_csv(dir_ / file, grid, metadata);
    record(file, "wigner_csv");
  }

  void table(const std::string& file, const io::Table& table) {
    io::write_table_csv(dir_ / file, table);
    record(file, "table_csv");
  }

  void json(const std::string& file, const nlohmann::json& j) {
    io::write_json(dir_ / file, j);
    record(file, "json");
  }

  /// Writes the sidecar (results plus manifest) and returns the manifest.
  RunManifest finish(nlohmann::json sidecar) {
    manifest_.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    verify_outputs(manifest_, dir_);
    sidecar["manifest"] = manifest_.to_json();
    const std::string file = name(".json");
    io::write_json(dir_ / file, sidecar);
    log_ << "wrote " << (dir_ / file).string() << "\n";
    return manifest_;
  }

 private:
  void record(const std::string& file, const char* parser) {
    manifest_.outputs.push_back({file, parser, io::file_digest(dir_ / file)});
    log_ << "wrote " << (dir_ / file).string() << "\n";
  }

  fs::path dir_;
  std::string prefix_;
  std::ostream& log_;
  std::chrono::steady_clock::time_point start_;
  RunManifest manifest_;
};

io::Metadata metadata_of(const nlohmann::json& params) {
  io::Metadata out;
  for (const auto& [key, value] : params.items()) {
    out.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
  }
  return out;
}

// ---- wigner -------------------------------------------------------------

phase_space::GridSpec choose_grid(phase_space::GridSpec spec, const Config& c) {
  const double x_half = c.number("wigner", "x_half");
  const double p_half = c.number("wigner", "p_half");
  const int nx = c.integer("wigner", "nx");
  const int np = c.integer("wigner", "np");
  if (x_half < 0.0 || p_half < 0.0 || nx < 0 || np < 0) {
    throw ConfigError("wigner: grid overrides must be nonnegative (0 selects the automatic value)");
  }
  const auto odd_count = [](double length, double step) {
    int n = static_cast<int>(std::ceil(length / step - 1e-9));
    if (n % 2 == 1) ++n;
    return std::max(n, 2) + 1;
  };
  if (x_half > 0.0) {
    const double step = spec.dx();
    spec.x_min = -x_half;
    spec.x_max = x_half;
    spec.nx = odd_count(2.0 * x_half, step);
  }
  if (p_half > 0.0) {
    const double step = spec.dp();
    spec.p_min = -p_half;
    spec.p_max = p_half;
    spec.np = odd_count(2.0 * p_half, step);
  }
  if (nx > 0) spec.nx = nx;
  if (np > 0) spec.np = np;
  spec.validate();
  return spec;
}

void require_shifted_cover(const phase_space::GridSpec& spec, const phase_space::GridSpec& box,
                           Complex beta) {
  const double sx = std::sqrt(2.0) * beta.real();
  const double sp = std::sqrt(2.0) * beta.imag();
  if (!spec.covers(box.x_min + sx, box.x_max + sx, box.p_min + sp, box.p_max + sp)) {
    throw GuardViolation("wigner: grid does not cover the displaced state's coverage box");
  }
}

// Automatic grid that covers both the state and its displaced copy at the
// state's own resolution.
phase_space::GridSpec widen_for_shift(const phase_space::GridSpec& box, Complex beta) {
  const double sx = std::sqrt(2.0) * beta.real();
  const double sp = std::sqrt(2.0) * beta.imag();
  const double hx = std::max(std::abs(box.x_min), std::abs(box.x_max)) + std::abs(sx);
  const double hp = std::max(std::abs(box.p_min), std::abs(box.p_max)) + std::abs(sp);
  return phase_space::GridSpec::fitted(-hx, hx, -hp, hp, 8.0 * box.dx(), 8.0 * box.dp());
}

fock::FockVector read_fock_file(const std::string& path) {
  if (path.empty()) throw ConfigError("wigner: family fock-file needs fock_file");
  io::Table table;
  try {
    table = io::read_table_csv(path);
  } catch (const Error& e) {
    throw ConfigError(std::string("fock_file: ") + e.what());
  }
  const std::size_t cn = table.column("n");
  const std::size_t cre = table.column("re");
  const std::size_t cim = table.column("im");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(table.rows.size()));
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    if (table.rows[k][cn] != static_cast<double>(k)) {
      throw ConfigError("fock_file: rows must list n = 0, 1, 2, ... in order");
    }
    amps(static_cast<Eigen::Index>(k)) = Complex(table.rows[k][cre], table.rows[k][cim]);
  }
  if (amps.size() == 0 || amps.norm() == 0.0) throw ConfigError("fock_file: empty state");
  return fock::FockVector(amps);
}

phase_space::GridSpec moment_grid(const fock::FockVector& psi) {
  const fock::QuadratureMoments m = fock::quadrature_moments(psi);
  const double x2 = 0.5 * m.sigma(0, 0) + m.mean(0) * m.mean(0);
  const double p2 = 0.5 * m.sigma(1, 1) + m.mean(1) * m.mean(1);
  const double hx = std::abs(m.mean(0)) + 6.0 * std::sqrt(0.5 * m.sigma(0, 0)) + 6.0;
  const double hp = std::abs(m.mean(1)) + 6.0 * std::sqrt(0.5 * m.sigma(1, 1)) + 6.0;
  const double fx = std::min(M_SQRT1_2, 0.5 / std::sqrt(p2));
  const double fp = std::min(M_SQRT1_2, 0.5 / std::sqrt(x2));
  return phase_space::GridSpec::fitted(-hx, hx, -hp, hp, fx, fp);
}

}  // namespace

const char* toolkit_version() { return CVGRAV_VERSION; }

nlohmann::json RunManifest::to_json() const {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& o : outputs) {
    files.push_back({{"path", o.path}, {"parser", o.parser}, {"digest", o.digest}});
  }
  return {{"command", command},
          {"config_digest", config_digest},
          {"toolkit_version", version},
          {"outputs", files},
          {"wall_clock_seconds", wall_clock_seconds}};
}

void verify_outputs(const RunManifest& manifest, const fs::path& out_dir) {
  for (const auto& o : manifest.outputs) {
    const fs::path path = out_dir / o.path;
    if (!fs::exists(path)) throw Error("manifest lists missing file " + path.string());
    if (o.parser == "wigner_csv") {
      io::read_wigner_csv(path);
    } else if (o.parser == "table_csv") {
      io::read_table_csv(path);
    } else if (o.parser == "json") {
      io::read_json(path);
    } else {
      throw Error("manifest lists unknown parser " + o.parser);
    }
  }
}

Schema wigner_schema() {
  return {{"wigner",
           {string_key("family", "cat", "cat, squeezed, squeezed-cat or fock-file"),
            number_key("alpha", 2.5, "coherent amplitude (real part)"),
            number_key("alpha_im", 0.0, "imaginary part of alpha (cat only)"),
            number_key("phi", 0.0, "relative phase of the cat branches"),
            number_key("r", 1.0, "squeezing magnitude"),
            number_key("theta", M_PI, "squeezing angle"),
            integer_key("cutoff", 0, "Fock cutoff for squeezed-cat (0: automatic)"),
            string_key("fock_file", "", "CSV with columns n,re,im (family fock-file)"),
            string_key("displace_beta", "", "complex beta, e.g. 0+0.31416i; empty for none"),
            bool_key("emit_product", false, "also write W * W_displaced"),
            number_key("x_half", 0.0, "half-width of the X range (0: automatic)"),
            number_key("p_half", 0.0, "half-width of the P range (0: automatic)"),
            integer_key("nx", 0, "odd X sample count (0: automatic)"),
            integer_key("np", 0, "odd P sample count (0: automatic)")}},
          output_section("wigner")};
}

Schema overlap_scan_schema() {
  return {{"overlap_scan",
           {number_key("alpha", 2.5, "cat amplitude"),
            list_key("r", {2.0}, "squeezing magnitudes"),
            list_key("theta", {0.0, M_PI / 4, M_PI / 2, 3 * M_PI / 4, M_PI}, "squeezing angles"),
            number_key("beta_max", 0.3, "largest |beta|"),
            integer_key("samples", 31, "number of |beta| samples including 0"),
            bool_key("fock_oracle", false, "add the truncated-basis overlap column"),
            integer_key("cutoff", 0, "Fock cutoff (0: automatic)")}},
          output_section("overlap")};
}

Schema entanglement_schema() {
  return {scenario_section(),
          {"entanglement",
           {number_key("dx_gaussian", 0.0, "Gaussian position spread in m (0: d/2)"),
            number_key("delta_X", 0.0, "dimensionless Delta X (0: dx_gaussian / x0)"),
            number_key("delta_P", 0.0, "dimensionless Delta P (0: pure state, 1/(2 Delta X))"),
            number_key("eta_max", 1e-2, "largest eta of the automatic time grid"),
            integer_key("t_points", 21, "size of the automatic time grid"),
            number_key("eta_probe", 1e-4, "eta at which rate slopes are taken"),
            bool_key("fock_oracle", false, "add the truncated-basis E_N column"),
            integer_key("fock_cutoff", 24, "Fock cutoff per mode for the oracle")}},
          output_section("entanglement")};
}

RunManifest cmd_wigner(const Config& c, std::ostream& log) {
  const std::string family = c.string("wigner", "family");
  const double alpha = c.number("wigner", "alpha");
  const double alpha_im = c.number("wigner", "alpha_im");
  const double phi = c.number("wigner", "phi");
  const double r = c.number("wigner", "r");
  const double theta = c.number("wigner", "theta");
  const int cutoff = c.integer("wigner", "cutoff");
  const std::string beta_text = c.string("wigner", "displace_beta");
  const bool emit_product = c.boolean("wigner", "emit_product");
  const bool has_beta = !beta_text.empty();
  const Complex beta = has_beta ? complex_key(c, "wigner", "displace_beta") : Complex{};
  if (emit_product && !has_beta) {
    throw ConfigError("wigner: emit_product needs displace_beta");
  }

  nlohmann::json params = {{"family", family}};
  phase_space::WignerGrid grid;
  std::optional<phase_space::WignerGrid> shifted;
  nlohmann::json checks;

  if (family == "cat") {
    const phase_space::CatWignerParams p{Complex(alpha, alpha_im), phi};
    params.update({{"alpha", alpha}, {"alpha_im", alpha_im}, {"phi", phi}});
    const phase_space::GridSpec box = phase_space::cat_grid(p);
    const phase_space::GridSpec spec = choose_grid(has_beta ? widen_for_shift(box, beta) : box, c);
    grid = phase_space::wigner_cat(p, spec);
    checks["W_origin"] = phase_space::wigner_cat_at(p, 0.0, 0.0);
    if (has_beta) {
      require_shifted_cover(spec, box, beta);
      shifted = phase_space::displaced(
          [&](double x, double q) { return phase_space::wigner_cat_at(p, x, q); }, beta, spec);
    }
  } else if (family == "squeezed") {
    const phase_space::SqueezedWignerParams p{r, theta};
    params.update({{"r", r}, {"theta", theta}});
    const phase_space::GridSpec box = phase_space::squeezed_grid(p);
    const phase_space::GridSpec spec = choose_grid(has_beta ? widen_for_shift(box, beta) : box, c);
    grid = phase_space::wigner_squeezed(p, spec);
    checks["W_origin"] = phase_space::wigner_squeezed_at(p, 0.0, 0.0);
    if (has_beta) {
      require_shifted_cover(spec, box, beta);
      shifted = phase_space::displaced(
          [&](double x, double q) { return phase_space::wigner_squeezed_at(p, x, q); }, beta,
          spec);
    }
  } else if (family == "squeezed-cat" || family == "fock-file") {
    std::optional<fock::FockVector> psi;
    phase_space::GridSpec box;
    if (family == "squeezed-cat") {
      if (!(alpha > 0.0)) throw ConfigError("wigner: squeezed-cat needs alpha > 0");
      const Complex xi = std::polar(r, theta);
      psi = cutoff > 0 ? fock::squeezed_cat(alpha, xi, cutoff) : fock::squeezed_cat_auto(alpha, xi);
      params.update({{"alpha", alpha}, {"r", r}, {"theta", theta}});
      box = phase_space::squeezed_cat_grid(alpha, {r, theta});
    } else {
      const std::string path = c.string("wigner", "fock_file");
      psi = read_fock_file(path);
      params["fock_file"] = path;
      box = moment_grid(*psi);
    }
    params["cutoff"] = psi->cutoff();
    checks["guard_weight"] = psi->guard_weight();
    const phase_space::GridSpec spec = choose_grid(has_beta ? widen_for_shift(box, beta) : box, c);
    grid = phase_space::wigner_from_fock(*psi, spec);
    if (has_beta) {
      const fock::FockMatrix d = fock::displacement_matrix(beta, psi->cutoff());
      shifted = phase_space::wigner_from_fock(fock::FockVector(d * *psi), spec);
    }
  } else {
    throw ConfigError("wigner: unknown family '" + family +
                      "' (expected cat, squeezed, squeezed-cat or fock-file)");
  }

  checks["integral"] = grid.integral();
  checks["purity"] = grid.purity();
  OutputWriter out(c, "wigner", log);
  out.wigner(out.name(".csv"), grid, metadata_of(params));
  nlohmann::json sidecar = {{"parameters", params},
                            {"grid", io::grid_spec_to_json(grid.spec)},
                            {"checks", checks}};
  if (shifted) {
    nlohmann::json p = params;
    p["beta"] = beta_text;
    out.wigner(out.name("_displaced.csv"), *shifted, metadata_of(p));
    sidecar["displaced"] = {{"beta_re", beta.real()},
                            {"beta_im", beta.imag()},
                            {"integral", shifted->integral()}};
    if (emit_product) {
      const phase_space::WignerGrid prod = phase_space::product(grid, *shifted);
      out.wigner(out.name("_product.csv"), prod, metadata_of(p));
      sidecar["product"] = {{"integral", prod.integral()},
                            {"overlap", phase_space::overlap_grid(grid, *shifted)}};
    }
  }
  return out.finish(sidecar);
}

RunManifest cmd_overlap_scan(const Config& c, std::ostream& log) {
  const double alpha = c.number("overlap_scan", "alpha");
  const std::vector<double>& rs = c.list("overlap_scan", "r");
  const std::vector<double>& thetas = c.list("overlap_scan", "theta");
  const double beta_max = c.number("overlap_scan", "beta_max");
  const int samples = c.integer("overlap_scan", "samples");
  const bool with_fock = c.boolean("overlap_scan", "fock_oracle");
  const int cutoff = c.integer("overlap_scan", "cutoff");
  if (samples < 1) throw ConfigError("overlap_scan: samples must be at least 1");
  if (rs.empty() || thetas.empty()) throw ConfigError("overlap_scan: r and theta need values");
  if (!(alpha > 0.0)) throw ConfigError("overlap_scan: alpha must be positive");
  if (!(beta_max >= 0.0)) throw ConfigError("overlap_scan: beta_max must be nonnegative");
  for (double r : rs) {
    if (!(r >= 0.0)) throw ConfigError("overlap_scan: r values must be nonnegative");
  }

  std::vector<double> betas(samples);
  for (int k = 0; k < samples; ++k) {
    betas[k] = samples == 1 ? 0.0 : beta_max * k / (samples - 1);
  }

  struct Pair {
    double r;
    double theta;
    io::Table table;
    nlohmann::json summary;
  };
  std::vector<Pair> pairs;
  for (double r : rs) {
    for (double t : thetas) pairs.push_back({r, t, {}, {}});
  }

  parallel_for(pairs.size(), [&](std::size_t idx) {
    Pair& pair = pairs[idx];
    std::optional<sensing::FockOverlapOracle> oracle;
    if (with_fock) {
      const Complex xi = std::polar(pair.r, pair.theta);
      oracle.emplace(cutoff > 0 ? fock::squeezed_cat(alpha, xi, cutoff)
                                : fock::squeezed_cat_auto(alpha, xi));
    }
    pair.table.columns = {"beta_im", "overlap_full_exact", "overlap_full_simplified",
                          "overlap_phase_approach"};
    if (with_fock) pair.table.columns.push_back("overlap_fock_oracle");
    double bound_excess = -1.0;
    double max_gap = 0.0;
    double fock_dev = 0.0;
    for (double b : betas) {
      const auto beta = sensing::DisplacementParam::imaginary(b);
      const auto full = sensing::squeezed_cat_overlap_full(beta, alpha, pair.r, pair.theta);
      const double phase = sensing::squeezed_cat_overlap_phase(beta, alpha);
      std::vector<double> row{b, full.exact, full.simplified, phase};
      bound_excess = std::max(bound_excess, full.exact - phase);
      max_gap = std::max(max_gap, std::abs(phase - full.exact));
      if (oracle) {
        const double f = (*oracle)(beta);
        fock_dev = std::max(fock_dev, std::abs(f - full.exact));
        row.push_back(f);
      }
      pair.table.rows.push_back(std::move(row));
    }
    const auto flag = sensing::squeezed_cat_overlap_full({}, alpha, pair.r, pair.theta).valid;
    pair.table.metadata = {{"alpha", io::format_double(alpha)},
                           {"r", io::format_double(pair.r)},
                           {"theta", io::format_double(pair.theta)},
                           {"valid", flag ? "true" : "false"}};
    pair.summary = {{"r", pair.r},
                    {"theta", pair.theta},
                    {"valid", flag},
                    {"max_full_minus_phase", bound_excess},
                    {"max_abs_gap", max_gap}};
    if (oracle) {
      pair.summary["cutoff"] = oracle->state().cutoff();
      pair.summary["max_fock_deviation"] = fock_dev;
    }
  });

  OutputWriter out(c, "overlap-scan", log);
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      Pair& pair = pairs[i * thetas.size() + j];
      const std::string file = out.name("_r" + std::to_string(i) + "_theta" + std::to_string(j) + ".csv");
      out.table(file, pair.table);
      pair.summary["file"] = file;
      files.push_back(pair.summary);
    }
  }
  return out.finish({{"alpha", alpha}, {"beta_max", beta_max}, {"samples", samples}, {"curves", files}});
}

RunManifest cmd_entanglement(const Config& c, std::ostream& log) {
  const ScenarioConfig scenario = scenario_from(c);
  const DimensionlessScenario dim = to_dimensionless(scenario);
  const double dx_config = c.number("entanglement", "dx_gaussian");
  const double dX_config = c.number("entanglement", "delta_X");
  const double dP_config = c.number("entanglement", "delta_P");
  const double eta_max = c.number("entanglement", "eta_max");
  const int t_points = c.integer("entanglement", "t_points");
  const bool with_fock = c.boolean("entanglement", "fock_oracle");
  if (dx_config < 0.0 || dX_config < 0.0 || dP_config < 0.0) {
    throw ConfigError("entanglement: spreads must be nonnegative (0 selects the default)");
  }

  const double dX = dX_config > 0.0   ? dX_config
                    : dx_config > 0.0 ? dim.delta_X(dx_config)
                                      : dim.delta_X(0.5 * scenario.d);
  if (!(dX > 0.0)) throw ConfigError("entanglement: Delta X is zero; set d, dx_gaussian or delta_X");
  const double dP = dP_config > 0.0 ? dP_config : 0.5 / dX;
  const auto initial = gaussian::GaussianTwoModeState::product(dX, dP);
  initial.require_physical();
  const bool pure = std::abs(dX * dP - 0.5) < 1e-12;
  if (with_fock && !pure) {
    throw ConfigError("entanglement: the Fock oracle column needs a pure input (delta_X delta_P = 1/2)");
  }

  std::vector<double> times = scenario.t_grid;
  if (times.empty()) {
    if (t_points < 1 || !(eta_max >= 0.0)) {
      throw ConfigError("entanglement: t_points must be positive and eta_max nonnegative");
    }
    const double t_max =
        dim.lambda_over_hbar > 0.0 ? eta_max / (dX * dX * dim.lambda_over_hbar) : 0.0;
    for (int k = 0; k < t_points; ++k) {
      times.push_back(t_points == 1 ? 0.0 : t_max * k / (t_points - 1));
    }
  }

  std::optional<fock::FockVector> mode;
  if (with_fock) {
    const double r = -0.5 * std::log(2.0 * dX * dX);
    const int n = std::max(c.integer("entanglement", "fock_cutoff"), fock::squeeze_cutoff(std::abs(r)));
    mode = fock::squeezed_vacuum(Complex(r, 0.0), n);
  }

  io::Table table;
  table.columns = {"t", "eta", "E_N_gaussian_exact", "E_N_gaussian_smalleta", "E_N_cat_phase"};
  if (with_fock) table.columns.push_back("E_N_fock_oracle");
  table.rows.resize(times.size());
  const gaussian::CouplingGenerator generator{dim.lambda_over_hbar};
  parallel_for(times.size(), [&](std::size_t k) {
    const double t = times[k];
    const double eta = dX * dX * dim.theta(t);
    const double exact = gaussian::log_negativity_gaussian(gaussian::evolve(initial, generator, t));
    // First order in eta of -log2 nu_min about nu_min(0) = 2 dX dP.
    const double linear =
        std::max(0.0, -std::log2(2.0 * dX * dP) + eta / (dX * dP * std::log(2.0)));
    const double cat = sensing::logneg_cat_phase(sensing::phase_set(scenario, t).delta_phi);
    std::vector<double> row{t, eta, exact, linear, cat};
    if (mode) {
      row.push_back(fock::log_negativity_fock(fock::evolve_bilinear(*mode, *mode, dim.theta(t))));
    }
    table.rows[k] = std::move(row);
  });
  table.metadata = {{"delta_X", io::format_double(dX)}, {"delta_P", io::format_double(dP)}};

  sensing::RateReportOptions options;
  options.dx_gaussian = dX * scenario.x0;
  options.eta_probe = c.number("entanglement", "eta_probe");
  options.fock_track = with_fock;
  options.fock_cutoff = c.integer("entanglement", "fock_cutoff");
  const sensing::RateEqualityReport report = sensing::rate_equality_report(scenario, options);

  OutputWriter out(c, "entanglement", log);
  out.table(out.name(".csv"), table);
  out.json(out.name("_rates.json"), sensing::to_json(report));
  return out.finish({{"delta_X", dX},
                     {"delta_P", dP},
                     {"pure", pure},
                     {"lambda_over_hbar", dim.lambda_over_hbar},
                     {"max_relative_rate_deviation", report.max_relative_deviation}});
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous-variable simulations of gravitationally coupled particles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", toolkit_version());

  struct Command {
    CLI::App* app;
    Schema schema;
    std::function<RunManifest(const Config&, std::ostream&)> body;
    std::string config_path;
  };
  std::deque<Command> commands;
  // Flag storage; deque keeps addresses stable while CLI11 holds pointers.
  struct Binding {
    CLI::Option* option;
    std::string section;
    std::string key;
    ValueType type;
    std::string text;
    bool flag = false;
  };
  std::deque<Binding> bindings;
  std::deque<std::pair<CLI::App*, Binding*>> owners;

  const auto add_command = [&](const char* name, const char* help, Schema schema,
                               std::function<RunManifest(const Config&, std::ostream&)> body) {
    Command& cmd = commands.emplace_back(Command{app.add_subcommand(name, help), std::move(schema),
                                                 std::move(body), {}});
    cmd.app->add_option("--config", cmd.config_path, "scenario file");
    for (const auto& section : cmd.schema) {
      for (const auto& key : section.keys) {
        std::string flag = key.key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        Binding& b = bindings.emplace_back(Binding{nullptr, section.name, key.key, key.type, {}, false});
        const std::string help_text = key.help + " [" + section.name + "." + key.key + "]";
        if (key.type == ValueType::Bool) {
          b.option = cmd.app->add_flag("--" + flag + ",!--no-" + flag, b.flag, help_text);
        } else {
          b.option = cmd.app->add_option("--" + flag, b.text, help_text);
        }
        owners.emplace_back(cmd.app, &b);
      }
    }
  };

  add_command("wigner", "Wigner-function grids (closed form or from Fock data)", wigner_schema(),
              cmd_wigner);
  add_command("overlap-scan", "Displaced squeezed-cat overlaps against |beta|",
              overlap_scan_schema(), cmd_overlap_scan);
  add_command("entanglement", "Logarithmic negativity against time and the rate report",
              entanglement_schema(), cmd_entanglement);

  CLI::App* selfcheck = app.add_subcommand("selfcheck", "Run the invariant suite");
  double gravity_factor = 1.0;
  selfcheck->add_option("--inject-gravity-factor", gravity_factor,
                        "multiply G in the Gaussian rate track (fault injection)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (selfcheck->parsed()) {
      const auto checks = run_selfcheck({gravity_factor});
      print_checks(out, checks);
      const bool ok = std::all_of(checks.begin(), checks.end(),
                                  [](const CheckResult& r) { return r.passed; });
      return ok ? kExitOk : kExitFailure;
    }
    for (Command& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      Config config = cmd.config_path.empty() ? Config() : Config::load(cmd.config_path);
      for (const auto& [owner, b] : owners) {
        if (owner != cmd.app || b->option->count() == 0) continue;
        std::string flag = b->key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        Value v = b->type == ValueType::Bool ? Value{b->flag}
                                             : parse_flag_value(b->text, b->type, flag);
        config.set(b->section, b->key, std::move(v));
      }
      config.apply_schema(cmd.schema);
      const RunManifest manifest = cmd.body(config, out);
      out << "config digest " << manifest.config_digest << ", " << manifest.outputs.size()
          << " data files\n";
      return kExitOk;
    }
  } catch (const GuardViolation& e) {
    err << "guard violation: " << e.what() << "\n";
    return kExitGuard;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PhysicalityError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace cvgrav::cli
