// dyonlab command line: closed-form dyon/theta phases, charge and flux
// construction, loop integrals, theta-vacua, the wave-packet and diffraction
// oracles, the scattering oracle, and the one-shot invariant runner.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dyonlab/charges.hpp"
#include "dyonlab/checks.hpp"
#include "dyonlab/evolve.hpp"
#include "dyonlab/fringe.hpp"
#include "dyonlab/gauge.hpp"
#include "dyonlab/phase.hpp"
#include "dyonlab/report.hpp"
#include "dyonlab/scattering.hpp"
#include "dyonlab/two_path.hpp"
#include "dyonlab/vacua.hpp"
#include "dyonlab/version.hpp"

namespace dl = dyonlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
  double alpha = dl::kDefaultAlpha;
  std::string out_path;  // empty -> stdout
  bool timing = false;
  std::uint64_t seed = 20240915ull;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
};

void emit_report(const Common& common, dl::Json& report) {
  report.set("version", dl::kVersion);
  if (common.timing) {
    const auto dt = std::chrono::steady_clock::now() - common.t0;
    report.set(
        "wall_time_ms",
        static_cast<double>(
            std::chrono::duration_cast<std::chrono::microseconds>(dt).count()) /
            1000.0);
  }
  const std::string text = report.dump();
  if (common.out_path.empty()) {
    std::cout << text;
  } else {
    dl::write_text_file(common.out_path, text);
  }
}

dl::Json phase_entry(const dl::PhaseResult& p) {
  dl::Json j = dl::Json::object();
  j.set("value", p.value);
  j.set("reduced", p.reduced);
  j.set("winding_n", p.winding_n);
  return j;
}

// Charge selection shared by several subcommands: either Witten integers or
// raw (q, g).
struct ChargeArgs {
  std::optional<int> nq, ng;
  double theta = 0.0;
  std::optional<double> q_raw, g_raw;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--nq", nq, "electric charge integer n_q");
    cmd->add_option("--ng", ng, "magnetic charge integer n_g");
    cmd->add_option("--theta", theta, "vacuum angle theta (radians)");
    cmd->add_option("--q", q_raw, "raw electric charge (overrides --nq/--ng)");
    cmd->add_option("--g", g_raw, "raw magnetic charge");
  }

  dl::DyonCharge resolve(const dl::PhysicalConstants& c) const {
    if (q_raw || g_raw) {
      return dl::DyonCharge{q_raw.value_or(0.0), g_raw.value_or(0.0), {}};
    }
    if (nq || ng) {
      return dl::witten_charges(nq.value_or(0), ng.value_or(0), theta, c);
    }
    throw CLI::ValidationError("charges", "give --nq/--ng or --q/--g");
  }
};

struct FluxArgs {
  bool quanta = false;
  std::optional<int> n_phi_e, n_phi_m;
  std::optional<double> flux_theta;
  std::optional<double> phim_raw, phie_raw;
  double radius = 1e-6;

  void add_to(CLI::App* cmd) {
    cmd->add_flag("--flux-quanta", quanta,
                  "one magnetic and one electric flux quantum");
    cmd->add_option("--n-phi-e", n_phi_e, "electric flux integer");
    cmd->add_option("--n-phi-m", n_phi_m, "magnetic flux integer");
    cmd->add_option("--flux-theta", flux_theta,
                    "theta used in the hypothetical flux rule");
    cmd->add_option("--phim", phim_raw, "raw magnetic flux (overrides integers)");
    cmd->add_option("--phie", phie_raw, "raw electric flux");
    cmd->add_option("--tube-radius", radius, "tube exclusion radius");
  }

  dl::FluxTube resolve(const dl::PhysicalConstants& c) const {
    if (phim_raw || phie_raw) {
      return dl::make_flux_tube(phim_raw.value_or(0.0), phie_raw.value_or(0.0),
                                radius);
    }
    if (quanta) return dl::flux_quanta(c, radius);
    if (n_phi_e || n_phi_m) {
      return dl::flux_from_integers(n_phi_e.value_or(0), n_phi_m.value_or(0),
                                    flux_theta.value_or(0.0), radius, c);
    }
    throw CLI::ValidationError("fluxes",
                               "give --flux-quanta, flux integers, or raw fluxes");
  }
};

void apply_thread_cap() {
  const char* env = std::getenv("DYONLAB_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v <= 0) {
    throw CLI::ValidationError("DYONLAB_THREADS",
                               "must be a positive integer, got '" +
                                   std::string(env) + "'");
  }
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(
      std::min<long>(v, omp_get_max_threads())));
#endif
}

void validate_config_keys(const nlohmann::json& j,
                          const std::set<std::string>& allowed,
                          const std::string& where) {
  if (!j.is_object()) {
    throw CLI::ValidationError(where, "config must be a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (allowed.find(key) == allowed.end()) {
      throw CLI::ValidationError(where, "unknown config key '" + key + "'");
    }
  }
}

// ---------------------------------------------------------------------------

int cmd_charges(const Common& common, const ChargeArgs& a,
                const std::optional<ChargeArgs>& b) {
  const auto c = dl::make_constants(common.alpha);
  const dl::DyonCharge d1 = a.resolve(c);
  dl::Json report = dl::Json::object();
  report.set("command", "charges");
  dl::Json inputs = dl::Json::object();
  inputs.set("alpha", common.alpha);
  report.set("inputs", inputs);

  dl::Json res = dl::Json::object();
  dl::Json j1 = dl::Json::object();
  j1.set("q", d1.q);
  j1.set("g", d1.g);
  res.set("dyon_1", j1);
  if (b) {
    const dl::DyonCharge d2 = b->resolve(c);
    dl::Json j2 = dl::Json::object();
    j2.set("q", d2.q);
    j2.set("g", d2.g);
    res.set("dyon_2", j2);
    res.set("sz_pairing", dl::result_entry(dl::sz_pairing(d1, d2), 1e-9,
                                           "analytic"));
    const auto n = dl::sz_check(d1, d2);
    res.set("sz_integer_n", n ? dl::Json(*n) : dl::Json());
    res.set("sz_violation", !n.has_value());
    const auto sp = dl::heuristic_string_phase(d1, d2);
    dl::Json heur = dl::Json::object();
    heur.set("phase", phase_entry(sp.phase));
    heur.set("integer_n", sp.big_n ? dl::Json(*sp.big_n) : dl::Json());
    heur.set("provenance", "heuristic (semi-infinite string argument)");
    res.set("string_phase", heur);
  }
  report.set("results", res);
  emit_report(common, report);
  return kExitOk;
}

int cmd_flux(const Common& common, const FluxArgs& fa) {
  const auto c = dl::make_constants(common.alpha);
  const dl::FluxTube f = fa.resolve(c);
  dl::Json report = dl::Json::object();
  report.set("command", "flux");
  dl::Json res = dl::Json::object();
  res.set("phi_m", f.phi_m);
  res.set("phi_e", f.phi_e);
  res.set("phi_m_in_quanta", f.phi_m / c.phi_m0);
  res.set("phi_e_in_quanta", f.phi_e / c.phi_e0);
  res.set("radius_eps", f.radius_eps);
  report.set("results", res);
  emit_report(common, report);
  return kExitOk;
}

int cmd_phase(const Common& common, const ChargeArgs& ca, const FluxArgs& fa,
              long n) {
  const auto c = dl::make_constants(common.alpha);
  const dl::DyonCharge d = ca.resolve(c);
  const dl::FluxTube f = fa.resolve(c);

  dl::Json report = dl::Json::object();
  report.set("command", "phase");
  dl::Json inputs = dl::Json::object();
  inputs.set("alpha", common.alpha);
  inputs.set("q", d.q);
  inputs.set("g", d.g);
  inputs.set("phi_m", f.phi_m);
  inputs.set("phi_e", f.phi_e);
  inputs.set("winding_n", n);
  report.set("inputs", inputs);

  dl::Json res = dl::Json::object();
  const auto delta = dl::dyon_phase(d, f, n);
  res.set("delta_d", phase_entry(delta));
  res.set("alpha_eff", dl::effective_alpha(d, f));
  if (ca.nq && ca.ng && !ca.q_raw && !ca.g_raw) {
    const auto split = dl::dyon_phase_split(*ca.nq, *ca.ng, ca.theta, f, n, c);
    dl::Json js = dl::Json::object();
    js.set("standard", phase_entry(split.standard));
    js.set("theta_part", phase_entry(split.theta_part));
    js.set("recombination_error",
           std::abs(split.standard.value + split.theta_part.value - delta.value));
    res.set("witten_split", js);
    if (fa.n_phi_e || fa.n_phi_m) {
      const auto rule =
          dl::flux_rule_phase(*ca.nq, *ca.ng, fa.n_phi_e.value_or(0),
                              fa.n_phi_m.value_or(0),
                              fa.flux_theta.value_or(ca.theta), n, c);
      dl::Json jr = dl::Json::object();
      jr.set("phase", phase_entry(rule.phase));
      jr.set("integer_n", rule.big_n);
      res.set("flux_rule", jr);
    }
  }
  report.set("results", res);
  emit_report(common, report);
  return kExitOk;
}

int cmd_loop_integral(const Common& common, const std::string& path_file,
                      bool closed, double step, const ChargeArgs& ca,
                      const FluxArgs& fa) {
  const auto c = dl::make_constants(common.alpha);
  const dl::DyonCharge d = ca.resolve(c);
  const dl::FluxTube f = fa.resolve(c);

  std::ifstream in(path_file);
  if (!in) {
    throw CLI::ValidationError("--path", "cannot open " + path_file);
  }
  std::vector<dl::Vec2> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string xs, ys;
    if (!std::getline(ls, xs, ',') || !std::getline(ls, ys, ',')) continue;
    try {
      pts.push_back({std::stod(xs), std::stod(ys)});
    } catch (const std::exception&) {
      continue;  // header or stray text row
    }
  }
  const dl::PlanePath path(std::move(pts), closed);
  const auto field = [&](const dl::Vec2& p) {
    return dl::conjugate_momentum_field(d, f, p);
  };
  const double integral = dl::line_integral(field, path, step, f.radius_eps);

  dl::Json report = dl::Json::object();
  report.set("command", "loop-integral");
  dl::Json res = dl::Json::object();
  res.set("line_integral", dl::result_entry(integral, 1e-8, "quadrature"));
  res.set("path_points", static_cast<long>(path.points().size()));
  res.set("path_length", path.length());
  if (closed) {
    const long w = dl::winding_number(path);
    const double predicted = w * (d.q * f.phi_m - d.g * f.phi_e);
    res.set("winding_number", w);
    res.set("predicted", dl::result_entry(predicted, 1e-12, "analytic"));
    res.set("deviation", std::abs(integral - predicted));
  }
  report.set("results", res);
  emit_report(common, report);
  return kExitOk;
}

int cmd_vacuum(const Common& common, double theta, int m, bool normalized,
               std::optional<double> theta2, const std::string& state_path) {
  const auto v = dl::build_theta_vacuum(theta, m, normalized);
  dl::Json report = dl::Json::object();
  report.set("command", "vacuum");
  dl::Json inputs = dl::Json::object();
  inputs.set("theta", theta);
  inputs.set("truncation_m", static_cast<long>(m));
  inputs.set("normalized", normalized);
  report.set("inputs", inputs);

  dl::Json res = dl::Json::object();
  res.set("norm_squared", v.state.norm_squared());
  res.set("eigenvalue_residual",
          dl::result_entry(dl::eigenvalue_residual(v), 1e-12, "analytic"));
  double loss = 0.0;
  dl::winding_shift(v.state, &loss);
  res.set("shift_boundary_loss", loss);
  if (theta2) {
    const auto v2 = dl::build_theta_vacuum(*theta2, m, normalized);
    const auto z = dl::overlap(v.state, v2.state);
    dl::Json jo = dl::Json::object();
    jo.set("re", z.real());
    jo.set("im", z.imag());
    jo.set("abs", std::abs(z));
    res.set("overlap_with_theta2", jo);
  }
  report.set("results", res);

  if (!state_path.empty()) {
    dl::Json arr = dl::Json::array();
    for (int n = -m; n <= m; ++n) {
      const auto a = v.state.amplitude(n);
      dl::Json e = dl::Json::array();
      e.push(static_cast<long>(n));
      e.push(a.real());
      e.push(a.imag());
      arr.push(std::move(e));
    }
    dl::write_text_file(state_path, arr.dump());
    report.set("state_file", state_path);
  }
  emit_report(common, report);
  return kExitOk;
}

struct EvolveArgs {
  int nx = 256, ny = 256;
  double dx = 1.0;
  double dt = 0.5;
  int steps = 100;
  double mass = 1.0;
  int absorb_margin = 0;
  double x0 = 64.0, y0 = 64.0, sigma = 8.0, kx = 0.0, ky = 0.0;
  std::optional<double> tube_x, tube_y;
  double tube_radius = 1.0;
  bool serial = false;
  std::string config_file;
  std::string field_csv;

  void load_config() {
    if (config_file.empty()) return;
    std::ifstream in(config_file);
    if (!in) {
      throw CLI::ValidationError("--config", "cannot open " + config_file);
    }
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw CLI::ValidationError("--config", std::string("parse error: ") +
                                                 e.what());
    }
    validate_config_keys(
        j,
        {"nx", "ny", "dx", "dt", "steps", "mass", "absorb_margin", "x0", "y0",
         "sigma", "kx", "ky", "tube_x", "tube_y", "tube_radius", "serial"},
        "--config");
    nx = j.value("nx", nx);
    ny = j.value("ny", ny);
    dx = j.value("dx", dx);
    dt = j.value("dt", dt);
    steps = j.value("steps", steps);
    mass = j.value("mass", mass);
    absorb_margin = j.value("absorb_margin", absorb_margin);
    x0 = j.value("x0", x0);
    y0 = j.value("y0", y0);
    sigma = j.value("sigma", sigma);
    kx = j.value("kx", kx);
    ky = j.value("ky", ky);
    if (j.contains("tube_x")) tube_x = j["tube_x"].get<double>();
    if (j.contains("tube_y")) tube_y = j["tube_y"].get<double>();
    tube_radius = j.value("tube_radius", tube_radius);
    serial = j.value("serial", serial);
  }
};

int cmd_evolve(const Common& common, EvolveArgs a, const ChargeArgs& ca,
               const FluxArgs& fa, bool coupled) {
  a.load_config();
  const auto c = dl::make_constants(common.alpha);

  std::shared_ptr<const dl::Grid2D> grid;
  dl::EvolveConfig cfg;
  if (a.tube_x && a.tube_y) {
    grid = std::make_shared<const dl::Grid2D>(dl::Grid2D::with_tube(
        a.nx, a.ny, a.dx, {*a.tube_x, *a.tube_y}, a.tube_radius));
    if (coupled) {
      cfg.links =
          dl::build_link_phases(*grid, ca.resolve(c), fa.resolve(c));
    }
  } else {
    grid = std::make_shared<const dl::Grid2D>(
        dl::Grid2D::plain(a.nx, a.ny, a.dx));
  }
  cfg.dt = a.dt;
  cfg.steps = a.steps;
  cfg.mass = a.mass;
  cfg.absorb_margin = a.absorb_margin;
  cfg.policy = a.serial ? dl::ExecPolicy::serial : dl::ExecPolicy::parallel;

  const auto psi0 =
      dl::WaveField::gaussian_packet(grid, {a.x0, a.y0}, a.sigma, {a.kx, a.ky});
  dl::EvolveStats stats{};
  const auto psi = dl::evolve(psi0, cfg, &stats);

  if (!a.field_csv.empty()) {
    std::vector<std::vector<double>> rows;
    rows.reserve(grid->size());
    for (int j = 0; j < grid->ny(); ++j) {
      for (int i = 0; i < grid->nx(); ++i) {
        const auto z = psi.at(i, j);
        rows.push_back({i * a.dx, j * a.dx, z.real(), z.imag()});
      }
    }
    dl::write_csv(a.field_csv, {"x", "y", "re", "im"}, rows);
  }

  dl::Json report = dl::Json::object();
  report.set("command", "evolve");
  dl::Json inputs = dl::Json::object();
  inputs.set("nx", static_cast<long>(a.nx));
  inputs.set("ny", static_cast<long>(a.ny));
  inputs.set("dt", a.dt);
  inputs.set("steps", static_cast<long>(a.steps));
  inputs.set("mass", a.mass);
  report.set("inputs", inputs);
  dl::Json res = dl::Json::object();
  res.set("final_norm_squared", psi.norm_squared());
  res.set("max_norm_drift_per_step",
          dl::result_entry(stats.max_norm_drift_per_step, 1e-10, "oracle"));
  res.set("max_tube_ring_prob", stats.max_tube_ring_prob);
  res.set("alpha_eff", cfg.links.alpha_eff);
  if (!a.field_csv.empty()) res.set("field_file", a.field_csv);
  report.set("results", res);
  emit_report(common, report);
  return kExitOk;
}

int cmd_two_path(const Common& common, const std::string& preset,
                 std::optional<double> alpha_eff, const ChargeArgs& ca,
                 const FluxArgs& fa, bool serial, double tol) {
  const auto c = dl::make_constants(common.alpha);
  dl::TwoPathSetup setup = preset == "compact" ? dl::two_path_compact_setup()
                                               : dl::two_path_reference_setup();
  setup.cfg.policy = serial ? dl::ExecPolicy::serial : dl::ExecPolicy::parallel;

  dl::DyonCharge d{};
  dl::FluxTube f{};
  if (alpha_eff) {
    d = dl::DyonCharge{1.0, 0.0, {}};
    f = dl::make_flux_tube(dl::kTwoPi * (*alpha_eff), 0.0,
                           setup.grid.tube_radius());
  } else {
    d = ca.resolve(c);
    f = fa.resolve(c);
  }

  const auto res = dl::two_path_phase(setup.grid, d, f, setup.cfg, setup.geom);
  const double dev = dl::circular_distance(res.overlap_phase, res.predicted);

  dl::Json report = dl::Json::object();
  report.set("command", "two-path");
  dl::Json inputs = dl::Json::object();
  inputs.set("preset", preset);
  inputs.set("alpha_eff", res.alpha_eff);
  report.set("inputs", inputs);
  dl::Json jr = dl::Json::object();
  jr.set("measured_phase", dl::result_entry(res.overlap_phase, tol, "oracle"));
  jr.set("fringe_phase", dl::result_entry(res.fringe_phase, tol, "oracle"));
  jr.set("predicted", dl::result_entry(res.predicted, 1e-12, "analytic"));
  jr.set("circular_deviation", dev);
  jr.set("overlap_magnitude", res.overlap_magnitude);
  jr.set("max_tube_ring_prob", res.max_tube_ring_prob);
  jr.set("steps", static_cast<long>(res.steps));
  jr.set("pass", dev <= tol);
  report.set("results", jr);
  emit_report(common, report);
  return dev <= tol ? kExitOk : kExitCheckFailed;
}

int cmd_fringe(const Common& common, const dl::SlitGeometry& geom, double theta,
               int samples, const std::string& csv) {
  const auto pattern = dl::fringe_shift(geom, theta, samples);
  const double predicted =
      pattern.period * (geom.delta0_bar + theta / dl::kTwoPi);
  const double dev =
      dl::fringe_distance(pattern.delta_x, predicted, pattern.period);
  const double tol = 0.02 * pattern.period;

  if (!csv.empty()) {
    std::vector<std::vector<double>> rows;
    rows.reserve(pattern.x.size());
    for (std::size_t i = 0; i < pattern.x.size(); ++i) {
      rows.push_back({pattern.x[i], pattern.intensity[i]});
    }
    dl::write_csv(csv, {"x", "intensity"}, rows);
  }

  dl::Json report = dl::Json::object();
  report.set("command", "fringe");
  dl::Json inputs = dl::Json::object();
  inputs.set("L", geom.screen_distance);
  inputs.set("d", geom.slit_separation);
  inputs.set("w", geom.slit_width);
  inputs.set("lambda", geom.wavelength);
  inputs.set("delta0_bar", geom.delta0_bar);
  inputs.set("theta", theta);
  report.set("inputs", inputs);
  dl::Json res = dl::Json::object();
  res.set("delta_x", dl::result_entry(pattern.delta_x, tol, "oracle"));
  res.set("predicted",
          dl::result_entry(predicted, 1e-12, "analytic, modulo one period"));
  res.set("period", pattern.period);
  res.set("deviation_mod_period", dev);
  res.set("pass", dev <= tol);
  if (!csv.empty()) res.set("pattern_file", csv);
  report.set("results", res);
  emit_report(common, report);
  return dev <= tol ? kExitOk : kExitCheckFailed;
}

int cmd_scatter(const Common& common, std::optional<double> theta,
                std::optional<double> alpha_opt, double k, double phi_min,
                double phi_max, int phi_count, int m_max,
                const std::string& reg_name, bool serial,
                const std::string& csv) {
  if (theta.has_value() == alpha_opt.has_value()) {
    throw CLI::ValidationError("scatter", "give exactly one of --theta/--alpha-eff");
  }
  const double alpha = alpha_opt ? *alpha_opt : *theta / dl::kTwoPi;
  const auto reg = reg_name == "cesaro" ? dl::Regularization::cesaro
                                        : dl::Regularization::abel;
  std::vector<double> phis;
  for (int i = 0; i < phi_count; ++i) {
    phis.push_back(phi_count == 1 ? phi_min
                                  : phi_min + (phi_max - phi_min) * i /
                                                  (phi_count - 1));
  }
  const auto oracle = dl::partial_wave_profile(
      alpha, k, phis, m_max, reg,
      serial ? dl::AnglePolicy::serial : dl::AnglePolicy::parallel);

  double worst_rel = 0.0;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const double closed = dl::ab_cross_section(alpha, k, phis[i]);
    const double rel = closed > 0.0
                           ? std::abs(oracle[i].value - closed) / closed
                           : std::abs(oracle[i].value);
    worst_rel = std::max(worst_rel, rel);
    rows.push_back({phis[i], closed, oracle[i].value, rel});
  }
  if (!csv.empty()) {
    dl::write_csv(csv, {"phi", "closed_form", "partial_wave", "rel_error"},
                  rows);
  }

  dl::Json report = dl::Json::object();
  report.set("command", "scatter");
  dl::Json inputs = dl::Json::object();
  inputs.set("alpha_eff", alpha);
  inputs.set("k", k);
  inputs.set("m_max", static_cast<long>(m_max));
  inputs.set("regularization", reg_name);
  report.set("inputs", inputs);
  dl::Json res = dl::Json::object();
  res.set("angles", static_cast<long>(phis.size()));
  res.set("closed_form_first",
          dl::result_entry(rows.front()[1], 1e-6, "analytic"));
  res.set("partial_wave_first",
          dl::result_entry(rows.front()[2], 1e-3, "oracle"));
  res.set("max_rel_error", worst_rel);
  res.set("alpha_integer_part", oracle.front().alpha_integer);
  res.set("pass", worst_rel <= 1e-3);
  if (!csv.empty()) res.set("profile_file", csv);
  report.set("results", res);
  emit_report(common, report);
  return worst_rel <= 1e-3 ? kExitOk : kExitCheckFailed;
}

int cmd_check(const Common& common, const std::string& suite) {
  const auto results = dl::run_checks(suite, common.seed);
  bool all_pass = true;
  dl::Json arr = dl::Json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "[ ok ] " : "[FAIL] ") << r.group << ": " << r.name
              << " — " << r.detail << "\n";
    dl::Json e = dl::Json::object();
    e.set("group", r.group);
    e.set("name", r.name);
    e.set("pass", r.pass);
    e.set("detail", r.detail);
    arr.push(std::move(e));
  }
  std::cout << (all_pass ? "all checks passed" : "CHECK FAILURES PRESENT")
            << " (" << results.size() << " checks, suite " << suite
            << ", seed " << common.seed << ")\n";
  if (!common.out_path.empty()) {
    dl::Json report = dl::Json::object();
    report.set("command", "check");
    report.set("suite", suite);
    report.set("seed", static_cast<long>(common.seed));
    report.set("checks", arr);
    report.set("pass", all_pass);
    emit_report(common, report);
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyon topological phase laboratory"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  Common common;
  app.add_option("--alpha", common.alpha, "fine-structure constant")
      ->capture_default_str();
  app.add_option("--out", common.out_path, "write the JSON report here");
  app.add_option("--seed", common.seed, "seed for randomized property checks")
      ->capture_default_str();
  app.add_flag("--timing", common.timing,
               "include wall time in the report (breaks byte determinism)");

  // charges
  auto* charges_cmd = app.add_subcommand("charges", "Witten charge rules and SZ pairing");
  ChargeArgs charges_a;
  charges_a.add_to(charges_cmd);
  ChargeArgs charges_b;
  bool have_second = false;
  charges_cmd->add_option("--nq2", charges_b.nq, "second dyon n_q");
  charges_cmd->add_option("--ng2", charges_b.ng, "second dyon n_g");
  charges_cmd->add_option("--theta2", charges_b.theta, "second dyon theta");
  charges_cmd->add_option("--q2", charges_b.q_raw, "second dyon raw q");
  charges_cmd->add_option("--g2", charges_b.g_raw, "second dyon raw g");
  charges_cmd->add_flag("--pair", have_second, "report the SZ pairing of both dyons");

  // flux
  auto* flux_cmd = app.add_subcommand("flux", "flux tube construction");
  FluxArgs flux_a;
  flux_a.add_to(flux_cmd);

  // phase
  auto* phase_cmd =
      app.add_subcommand("phase", "dyon phase, Witten split, flux rule");
  ChargeArgs phase_ca;
  FluxArgs phase_fa;
  long phase_n = 1;
  phase_ca.add_to(phase_cmd);
  phase_fa.add_to(phase_cmd);
  phase_cmd->add_option("--n", phase_n, "winding number")->capture_default_str();

  // loop-integral
  auto* loop_cmd =
      app.add_subcommand("loop-integral", "line integral along a CSV path");
  std::string loop_file;
  bool loop_closed = false;
  double loop_step = 0.0;
  ChargeArgs loop_ca;
  FluxArgs loop_fa;
  loop_cmd->add_option("--path", loop_file, "CSV file with x,y columns")
      ->required();
  loop_cmd->add_flag("--closed", loop_closed, "path is a closed loop");
  loop_cmd->add_option("--step", loop_step,
                       "quadrature step (default: path length / 1024)");
  loop_ca.add_to(loop_cmd);
  loop_fa.add_to(loop_cmd);

  // vacuum
  auto* vac_cmd = app.add_subcommand("vacuum", "theta-vacuum in the winding basis");
  double vac_theta = 0.0;
  int vac_m = 100;
  bool vac_norm = false;
  std::optional<double> vac_theta2;
  std::string vac_state;
  vac_cmd->add_option("--theta", vac_theta, "vacuum angle")->required();
  vac_cmd->add_option("--m-trunc", vac_m, "winding truncation M")
      ->capture_default_str();
  vac_cmd->add_flag("--normalized", vac_norm, "scale amplitudes by 1/sqrt(2M+1)");
  vac_cmd->add_option("--theta2", vac_theta2, "overlap against this vacuum");
  vac_cmd->add_option("--json-state", vac_state,
                      "write the state as a JSON array of (n, re, im)");

  // evolve
  auto* ev_cmd = app.add_subcommand("evolve", "gauge-coupled packet evolution");
  EvolveArgs ev_a;
  ChargeArgs ev_ca;
  FluxArgs ev_fa;
  bool ev_coupled = false;
  ev_cmd->add_option("--config", ev_a.config_file, "JSON run config");
  ev_cmd->add_option("--nx", ev_a.nx)->capture_default_str();
  ev_cmd->add_option("--ny", ev_a.ny)->capture_default_str();
  ev_cmd->add_option("--dx", ev_a.dx)->capture_default_str();
  ev_cmd->add_option("--dt", ev_a.dt)->capture_default_str();
  ev_cmd->add_option("--steps", ev_a.steps)->capture_default_str();
  ev_cmd->add_option("--mass", ev_a.mass)->capture_default_str();
  ev_cmd->add_option("--absorb-margin", ev_a.absorb_margin)
      ->capture_default_str();
  ev_cmd->add_option("--x0", ev_a.x0)->capture_default_str();
  ev_cmd->add_option("--y0", ev_a.y0)->capture_default_str();
  ev_cmd->add_option("--sigma", ev_a.sigma)->capture_default_str();
  ev_cmd->add_option("--kx", ev_a.kx)->capture_default_str();
  ev_cmd->add_option("--ky", ev_a.ky)->capture_default_str();
  ev_cmd->add_option("--tube-x", ev_a.tube_x, "tube centre x");
  ev_cmd->add_option("--tube-y", ev_a.tube_y, "tube centre y");
  ev_cmd->add_option("--tube-radius-cells", ev_a.tube_radius)
      ->capture_default_str();
  ev_cmd->add_flag("--serial", ev_a.serial, "use the serial reference kernels");
  ev_cmd->add_flag("--coupled", ev_coupled,
                   "couple to charge/flux options (otherwise free)");
  ev_cmd->add_option("--field-csv", ev_a.field_csv,
                     "write the final field as x,y,re,im");
  ev_ca.add_to(ev_cmd);
  ev_fa.add_to(ev_cmd);

  // two-path
  auto* tp_cmd =
      app.add_subcommand("two-path", "two-path interference around the tube");
  std::string tp_preset = "reference";
  std::optional<double> tp_alpha;
  ChargeArgs tp_ca;
  FluxArgs tp_fa;
  bool tp_serial = false;
  double tp_tol = 1e-2;
  tp_cmd->add_option("--preset", tp_preset, "reference (512^2) or compact (256^2)")
      ->check(CLI::IsMember({"reference", "compact"}))
      ->capture_default_str();
  tp_cmd->add_option("--alpha-eff", tp_alpha, "effective flux parameter");
  tp_cmd->add_flag("--serial", tp_serial, "use the serial reference kernels");
  tp_cmd->add_option("--tol", tp_tol, "pass tolerance in radians")
      ->capture_default_str();
  tp_ca.add_to(tp_cmd);
  tp_fa.add_to(tp_cmd);

  // fringe
  auto* fr_cmd = app.add_subcommand("fringe", "two-slit fringe shift");
  dl::SlitGeometry fr_geom{1000.0, 10.0, 2.0, 1.0, 0.0};
  double fr_theta = 0.0;
  int fr_samples = 2048;
  std::string fr_csv;
  fr_cmd->add_option("--screen-distance,--L", fr_geom.screen_distance)
      ->capture_default_str();
  fr_cmd->add_option("--slit-separation,--d", fr_geom.slit_separation)
      ->capture_default_str();
  fr_cmd->add_option("--slit-width,--w", fr_geom.slit_width)
      ->capture_default_str();
  fr_cmd->add_option("--wavelength", fr_geom.wavelength)->capture_default_str();
  fr_cmd->add_option("--delta0-bar", fr_geom.delta0_bar)->capture_default_str();
  fr_cmd->add_option("--theta", fr_theta, "vacuum angle")->required();
  fr_cmd->add_option("--samples", fr_samples)->capture_default_str();
  fr_cmd->add_option("--csv", fr_csv, "write the pattern as x,intensity");

  // scatter
  auto* sc_cmd =
      app.add_subcommand("scatter", "closed form vs partial-wave oracle");
  std::optional<double> sc_theta, sc_alpha;
  double sc_k = 1.0, sc_phi_min = std::numbers::pi, sc_phi_max = std::numbers::pi;
  int sc_phi_count = 1, sc_mmax = 2000;
  std::string sc_reg = "abel", sc_csv;
  bool sc_serial = false;
  sc_cmd->add_option("--theta", sc_theta, "vacuum angle");
  sc_cmd->add_option("--alpha-eff", sc_alpha, "effective flux parameter");
  sc_cmd->add_option("--k", sc_k, "wave number")->capture_default_str();
  sc_cmd->add_option("--phi", sc_phi_min, "scattering angle (single)");
  sc_cmd->add_option("--phi-max", sc_phi_max, "grid upper angle");
  sc_cmd->add_option("--phi-count", sc_phi_count, "grid size")
      ->capture_default_str();
  sc_cmd->add_option("--m-max", sc_mmax, "partial-wave truncation")
      ->capture_default_str();
  sc_cmd->add_option("--reg", sc_reg, "abel or cesaro")
      ->check(CLI::IsMember({"abel", "cesaro"}))
      ->capture_default_str();
  sc_cmd->add_flag("--serial", sc_serial, "serial angle loop");
  sc_cmd->add_option("--csv", sc_csv, "write phi,closed_form,partial_wave,rel_error");

  // check
  auto* ch_cmd = app.add_subcommand("check", "run the invariant suite");
  std::string ch_suite = "all";
  ch_cmd->add_option("--suite", ch_suite,
                     "units|phase|gauge|vacua|dynamics|scattering|fast|all")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    apply_thread_cap();
    if (charges_cmd->parsed()) {
      const bool second = have_second || charges_b.nq || charges_b.ng ||
                          charges_b.q_raw || charges_b.g_raw;
      return cmd_charges(common, charges_a,
                         second ? std::optional<ChargeArgs>(charges_b)
                                : std::nullopt);
    }
    if (flux_cmd->parsed()) return cmd_flux(common, flux_a);
    if (phase_cmd->parsed())
      return cmd_phase(common, phase_ca, phase_fa, phase_n);
    if (loop_cmd->parsed())
      return cmd_loop_integral(common, loop_file, loop_closed, loop_step,
                               loop_ca, loop_fa);
    if (vac_cmd->parsed())
      return cmd_vacuum(common, vac_theta, vac_m, vac_norm, vac_theta2,
                        vac_state);
    if (ev_cmd->parsed())
      return cmd_evolve(common, ev_a, ev_ca, ev_fa, ev_coupled);
    if (tp_cmd->parsed())
      return cmd_two_path(common, tp_preset, tp_alpha, tp_ca, tp_fa, tp_serial,
                          tp_tol);
    if (fr_cmd->parsed())
      return cmd_fringe(common, fr_geom, fr_theta, fr_samples, fr_csv);
    if (sc_cmd->parsed())
      return cmd_scatter(common, sc_theta, sc_alpha, sc_k, sc_phi_min,
                         sc_phi_max, sc_phi_count, sc_mmax, sc_reg, sc_serial,
                         sc_csv);
    if (ch_cmd->parsed()) return cmd_check(common, ch_suite);
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
