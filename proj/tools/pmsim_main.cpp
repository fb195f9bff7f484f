// pmsim command-line front end: steady-state sweeps, threshold search,
// truncation convergence, driving protocols, splitting scans, material
// estimates and comb design, emitted as deterministic CSV/JSON.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <pmsim/comb.hpp>
#include <pmsim/dynamics.hpp>
#include <pmsim/materials.hpp>
#include <pmsim/sweeps.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "run_config.hpp"
#include "self_check.hpp"

using namespace pmsim;
using pmsim::cli::RunConfig;

namespace {

constexpr const char* kVersion = "pmsim 0.1.0";

// exit codes: 0 ok, 2 config, 3 solver failure, 4 non-convergence
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitNonConvergence = 4;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SystemParams params_from(const RunConfig& cfg) {
  SystemParams p;
  p.delta = 0.0;
  p.f_s = cfg.fs;
  p.gamma = cfg.gamma_ratio;
  p.gamma_s = 1.0;
  p.gamma_i = cfg.gamma_i_ratio;
  p.g_eff = cfg.gnl;
  p.gauge_phase = cfg.gauge_phase;
  p.validate();
  return p;
}

NmaxPolicy policy_from(const RunConfig& cfg) {
  NmaxPolicy policy;
  if (cfg.auto_nmax) {
    policy.fixed = std::nullopt;
    policy.start = cfg.nmax_start;
    policy.limit = cfg.nmax_limit;
    policy.rel_tol = cfg.rel_tol;
  } else {
    policy.fixed = cfg.nmax;
  }
  return policy;
}

std::vector<double> delta_grid_from(const RunConfig& cfg) {
  if (cfg.delta_n == 1) return {cfg.delta_lo};
  if (!(cfg.delta_hi > cfg.delta_lo) || cfg.delta_n < 1) {
    throw std::invalid_argument("delta grid: need hi > lo and n >= 1");
  }
  std::vector<double> grid(cfg.delta_n);
  for (int k = 0; k < cfg.delta_n; ++k) {
    grid[k] = cfg.delta_lo + (cfg.delta_hi - cfg.delta_lo) * k / (cfg.delta_n - 1);
  }
  return grid;
}

// --out wins; otherwise PMSIM_OUT_DIR/<subcommand>.<format>; otherwise stdout.
std::string resolve_out_path(const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  const char* dir = std::getenv("PMSIM_OUT_DIR");
  if (dir != nullptr && *dir != '\0') {
    return std::string(dir) + "/" + cfg.subcommand + "." + cfg.format;
  }
  return "";
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::invalid_argument("cannot open output path '" + tmp.string() + "'");
    os << content;
    os.flush();
    if (!os.good()) throw std::invalid_argument("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

// Writes to the resolved path (atomic) or stdout; returns the destination label.
std::string emit(const RunConfig& cfg, const std::string& content) {
  const std::string path = resolve_out_path(cfg);
  if (path.empty()) {
    std::cout << content;
    return "stdout";
  }
  write_atomic(path, content);
  return path;
}

std::vector<std::string> echo_lines(const RunConfig& cfg) {
  std::vector<std::string> lines;
  lines.push_back(kVersion);
  for (const auto& [key, value] : cfg.echo_pairs()) lines.push_back(key + " = " + value);
  return lines;
}

int run_sweep(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult res =
      detuning_sweep(params_from(cfg), delta_grid_from(cfg), policy_from(cfg), {cfg.tol},
                     cfg.threads);
  std::string content;
  if (cfg.format == "json") {
    content = sweep_to_json(res, cfg.echo_pairs()) + "\n";
  } else {
    std::ostringstream os;
    write_sweep_csv(os, res, echo_lines(cfg));
    content = os.str();
  }
  const std::string dest = emit(cfg, content);

  double min_g2 = std::numeric_limits<double>::infinity();
  int failed = 0;
  for (const auto& pt : res.points) {
    if (pt.ok) min_g2 = std::min(min_g2, pt.g2);
    else ++failed;
  }
  std::fprintf(stderr, "sweep: %zu points, n_max=%d, min g2(0)=%.6g, %d failed, %.2f s -> %s\n",
               res.points.size(), res.n_max, min_g2, failed, elapsed_since(t0), dest.c_str());
  return failed == 0 ? 0 : kExitSolver;
}

int run_threshold(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ThresholdOptions opts;
  opts.g_tol = 1e-3;
  opts.nmax = policy_from(cfg);
  opts.steady.tol = cfg.tol;
  const ThresholdResult res =
      blockade_threshold(params_from(cfg), cfg.target_g2, {cfg.bracket_lo, cfg.bracket_hi}, opts);
  if (!cfg.out.empty() || std::getenv("PMSIM_OUT_DIR")) {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::parse(cfg.to_json());
    j["threshold_g_over_gamma_s"] = res.g_ratio;
    j["degenerate"] = res.degenerate;
    j["min_g2_at_threshold"] = res.min_g2_at_threshold;
    RunConfig jcfg = cfg;
    jcfg.format = "json";
    emit(jcfg, j.dump(2) + "\n");
  }
  std::printf("threshold: g_nl/Gamma_s = %.4f for min g2(0) = %s%.4g, n_max=%d, %.1f s\n",
              res.g_ratio, res.degenerate ? "(degenerate) " : "", cfg.target_g2,
              cfg.auto_nmax ? -1 : cfg.nmax, elapsed_since(t0));
  return 0;
}

int run_converge(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const ConvergenceReport rep =
      converge_max_occupation(params_from(cfg), delta_grid_from(cfg), cfg.rel_tol,
                              cfg.nmax_start, cfg.nmax_limit, {cfg.tol}, cfg.threads);
  std::string content;
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::parse(cfg.to_json());
    j["converged"] = rep.converged;
    j["final_n_max"] = rep.final_n_max;
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& s : rep.steps) {
      steps.push_back({{"n_max", s.n_max},
                       {"max_n_s", s.values[0]},
                       {"rel_change", s.rel_change.empty() ? nullptr
                                                           : nlohmann::ordered_json(s.rel_change[0])}});
    }
    j["steps"] = steps;
    content = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (const auto& line : echo_lines(cfg)) os << "# " << line << "\n";
    os << "# converged = " << (rep.converged ? "true" : "false") << "\n";
    os << "n_max,max_n_s,rel_change\n";
    for (const auto& s : rep.steps) {
      os << s.n_max << ',' << fmt17(s.values[0]) << ','
         << (s.rel_change.empty() ? "nan" : fmt17(s.rel_change[0])) << "\n";
    }
    content = os.str();
  }
  const std::string dest = emit(cfg, content);
  std::fprintf(stderr, "converge: %s at n_max=%d (Max<n_s> = %.6g), %.1f s -> %s\n",
               rep.converged ? "converged" : "NOT converged", rep.final_n_max,
               rep.steps.back().values[0], elapsed_since(t0), dest.c_str());
  return rep.converged ? 0 : kExitNonConvergence;
}

int run_protocol_cmd(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  DrivingProtocol protocol;
  if (cfg.protocol == "A" || cfg.protocol == "a") {
    protocol = DrivingProtocol::protocol_a(cfg.t_switch_1, cfg.t_switch_2);
  } else if (cfg.protocol == "B" || cfg.protocol == "b") {
    protocol = DrivingProtocol::protocol_b(cfg.t_switch_1, cfg.t_switch_2);
  } else {
    throw std::invalid_argument("protocol must be A or B");
  }
  const SystemParams params = params_from(cfg);
  const FockBasis basis = build_basis(cfg.nmax);
  EvolveOptions opts;
  opts.tol = cfg.evolve_tol;
  opts.samples = cfg.samples;
  const ProtocolResult res = run_protocol(basis, params, protocol, cfg.t_final, opts);

  std::ostringstream os;
  for (const auto& line : echo_lines(cfg)) os << "# " << line << "\n";
  os << "time,n_s,n_i,g2,trace_drift\n";
  const Trajectory& tr = res.trajectory;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    os << fmt17(tr.times[k]) << ',' << fmt17(tr.n_s[k]) << ',' << fmt17(tr.n_i[k]) << ','
       << fmt17(tr.g2[k]) << ',' << fmt17(tr.trace_drift[k]) << "\n";
  }
  const std::string dest = emit(cfg, os.str());

  const SteadySolution direct = steady_state(seed_idler_model(basis, params), {cfg.tol});
  const double dist = trace_distance(res.final_state, direct.rho);
  std::fprintf(stderr,
               "protocol %s: %ld steps (%ld rejected), final distance to steady state %.2e, "
               "n_max=%d, %.1f s -> %s\n",
               protocol.label.c_str(), tr.steps, tr.rejected, dist, cfg.nmax, elapsed_since(t0),
               dest.c_str());
  return 0;
}

int run_splitting(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> fs_grid = pmsim::cli::parse_list_spec(cfg.fs_list);
  const auto curves = splitting_scan(params_from(cfg), fs_grid, delta_grid_from(cfg),
                                     policy_from(cfg), {cfg.tol}, cfg.threads);
  std::string content;
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::parse(cfg.to_json());
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : curves) {
      nlohmann::ordered_json jc;
      jc["f_s"] = c.f_s;
      jc["n_peaks"] = c.n_peaks;
      jc["n_max"] = c.sweep.n_max;
      nlohmann::ordered_json pts = nlohmann::ordered_json::array();
      for (std::size_t k = 0; k < c.sweep.points.size(); ++k) {
        const auto& pt = c.sweep.points[k];
        pts.push_back({{"axis", pt.axis},
                       {"n_s", pt.n_s},
                       {"normalized", c.normalized[k]},
                       {"g2", pt.g2},
                       {"residual", pt.residual},
                       {"ok", pt.ok}});
      }
      jc["points"] = pts;
      arr.push_back(std::move(jc));
    }
    j["curves"] = arr;
    content = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (const auto& line : echo_lines(cfg)) os << "# " << line << "\n";
    for (const auto& c : curves) {
      os << "# f_s = " << fmt17(c.f_s) << ", n_peaks = " << c.n_peaks << "\n";
      os << "axis,n_s,n_i,g2,residual,n_max,normalized\n";
      for (std::size_t k = 0; k < c.sweep.points.size(); ++k) {
        const auto& pt = c.sweep.points[k];
        os << fmt17(pt.axis) << ',' << fmt17(pt.n_s) << ',' << fmt17(pt.n_i) << ','
           << fmt17(pt.g2) << ',' << fmt17(pt.residual) << ',' << pt.n_max << ','
           << fmt17(c.normalized[k]) << "\n";
      }
    }
    content = os.str();
  }
  const std::string dest = emit(cfg, content);
  std::ostringstream summary;
  bool ok = true;
  for (const auto& c : curves) {
    summary << " F=" << c.f_s << "->" << c.n_peaks << " peak(s)";
    ok = ok && c.n_peaks >= 0;
  }
  std::fprintf(stderr, "splitting: n_max=%d,%s, %.1f s -> %s\n", curves.front().sweep.n_max,
               summary.str().c_str(), elapsed_since(t0), dest.c_str());
  return ok ? 0 : kExitSolver;
}

int run_materials(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const PlatformFile file =
      cfg.platforms_path.empty() ? bundled_platforms() : load_platforms(cfg.platforms_path);
  for (const auto& w : file.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

  std::string content;
  if (cfg.curve) {
    // Pump-power curves, 1 uW to 10 W log-spaced.
    std::vector<double> powers;
    const int per_decade = 8;
    for (int k = 0; k <= 7 * per_decade; ++k) powers.push_back(1e-6 * std::pow(10.0, k / double(per_decade)));
    std::ostringstream os;
    for (const auto& line : echo_lines(cfg)) os << "# " << line << "\n";
    os << "platform,P_p,ratio\n";
    for (const auto& p : file.platforms) {
      for (double power : powers) {
        os << p.name << ',' << fmt17(power) << ',' << fmt17(effective_coupling(p, power).ratio)
           << "\n";
      }
    }
    content = os.str();
  } else {
    std::ostringstream os;
    for (const auto& line : echo_lines(cfg)) os << "# " << line << "\n";
    os << "platform,gamma_nl,Gamma_s,g_nl_over_Gamma_s,ratio_at_P,threshold_power_W\n";
    for (const auto& p : file.platforms) {
      const CouplingEstimate est = effective_coupling(p, cfg.power);
      os << p.name << ',' << fmt17(p.gamma_nl) << ',' << fmt17(p.linewidth()) << ','
         << fmt17(est.g_over_gamma) << ',' << fmt17(est.ratio) << ','
         << fmt17(power_threshold(p, 0.325)) << "\n";
    }
    for (const auto& t : file.tabulated) {
      os << "# " << t.name << " (" << t.geometry << ", tabulated):";
      for (const auto& [power, ratio] : t.ratio_by_power) {
        os << " ratio@" << fmt17(power) << "W=" << fmt17(ratio);
      }
      os << "\n";
    }
    content = os.str();
  }
  const std::string dest = emit(cfg, content);
  std::fprintf(stderr, "materials: %zu ring platforms, %zu tabulated, P=%g W, %.2f s -> %s\n",
               file.platforms.size(), file.tabulated.size(), cfg.power, elapsed_since(t0),
               dest.c_str());
  return 0;
}

int run_comb(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  MoleculeSpec spec;
  spec.n_eff = cfg.n_eff;
  spec.radius = cfg.radius;
  spec.coupling_j = cfg.coupling_j;
  spec.m_min = cfg.m_min;
  spec.m_max = cfg.m_max;
  const auto lines = molecule_lines(spec);
  const auto triplets = find_triplets(spec);

  nlohmann::ordered_json j;
  j["config"] = nlohmann::ordered_json::parse(cfg.to_json());
  const double fsr = kSpeedOfLight / (spec.n_eff * spec.radius);
  j["fsr"] = {{"rad_per_s", fsr}, {"hz", fsr / (2.0 * kPi)}};
  nlohmann::ordered_json jlines = nlohmann::ordered_json::array();
  for (const auto& line : lines) {
    jlines.push_back({{"m", line.m},
                      {"branch", std::string(1, line.branch)},
                      {"omega_rad_per_s", line.omega},
                      {"freq_hz", line.omega / (2.0 * kPi)}});
  }
  j["resonances"] = jlines;
  nlohmann::ordered_json jtrip = nlohmann::ordered_json::array();
  for (const auto& t : triplets) {
    jtrip.push_back({{"m_s", t.m_s},
                     {"p_branch", std::string(1, t.p_branch)},
                     {"i_branch", std::string(1, t.i_branch)},
                     {"omega_p_rad_per_s", t.omega_p},
                     {"omega_s_rad_per_s", t.omega_s},
                     {"omega_i_rad_per_s", t.omega_i},
                     {"freq_p_hz", t.omega_p / (2.0 * kPi)},
                     {"freq_s_hz", t.omega_s / (2.0 * kPi)},
                     {"freq_i_hz", t.omega_i / (2.0 * kPi)},
                     {"mismatch_rad_per_s", t.mismatch()},
                     {"isolation_rad_per_s", t.isolation},
                     {"isolated", t.isolated}});
  }
  j["triplets"] = jtrip;

  RunConfig jcfg = cfg;
  jcfg.format = "json";
  const std::string dest = emit(jcfg, j.dump(2) + "\n");
  std::fprintf(stderr, "comb: %zu resonances, %zu triplets%s, %.2f s -> %s\n", lines.size(),
               triplets.size(), triplets.empty() ? " (no alignment in range)" : "",
               elapsed_since(t0), dest.c_str());
  return 0;
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--tol", cfg.tol, "steady-state residual tolerance")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "worker pool size for grid points")
      ->capture_default_str();
  sub->add_option("--out", cfg.out, "output file (default: $PMSIM_OUT_DIR or stdout)");
  sub->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
}

void add_physics_options(CLI::App* sub, RunConfig& cfg, std::string& grid_spec) {
  sub->add_option("--delta-grid", grid_spec, "detuning grid lo:hi:n, units of Gamma_s")
      ->capture_default_str();
  sub->add_option("--gnl", cfg.gnl, "effective coupling g_nl/Gamma_s")->capture_default_str();
  sub->add_option("--fs", cfg.fs, "seed drive F_s/sqrt(Gamma_s)")->capture_default_str();
  sub->add_option("--gamma-ratio", cfg.gamma_ratio, "waveguide coupling gamma/Gamma_s")
      ->capture_default_str();
  sub->add_option("--gamma-i-ratio", cfg.gamma_i_ratio, "idler linewidth Gamma_i/Gamma_s")
      ->capture_default_str();
  sub->add_option("--gauge-phase", cfg.gauge_phase, "phase of the complex coupling, radians")
      ->capture_default_str();
  sub->add_option("--nmax", cfg.nmax, "idler Fock cutoff (seed cutoff is twice this)")
      ->capture_default_str();
  sub->add_flag("--auto-nmax", cfg.auto_nmax, "grow n_max until observables converge");
  sub->add_option("--rel-tol", cfg.rel_tol, "relative change target for --auto-nmax/converge")
      ->capture_default_str();
  sub->add_option("--nmax-start", cfg.nmax_start, "first n_max for convergence loops")
      ->capture_default_str();
  sub->add_option("--nmax-limit", cfg.nmax_limit, "largest n_max for convergence loops")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady states, photon statistics and design estimates for a strongly driven "
               "two-ring photonic molecule"};
  app.set_version_flag("--version", kVersion);
  RunConfig cfg;
  bool check = false;
  app.add_flag("--check", check, "run the analytic-limit self-test suite and exit");
  app.add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker pool size")->capture_default_str();
  app.require_subcommand(0, 1);

  std::string grid_spec = "-3:3:121";

  CLI::App* sweep = app.add_subcommand("sweep", "steady-state detuning sweep (occupation, g2)");
  add_physics_options(sweep, cfg, grid_spec);
  add_output_options(sweep, cfg);

  CLI::App* threshold =
      app.add_subcommand("threshold", "coupling at which min-over-detuning g2 hits the target");
  add_physics_options(threshold, cfg, grid_spec);
  add_output_options(threshold, cfg);
  threshold->add_option("--target", cfg.target_g2, "target g2(0)")->capture_default_str();
  threshold->add_option("--bracket-lo", cfg.bracket_lo, "lower coupling bracket")
      ->capture_default_str();
  threshold->add_option("--bracket-hi", cfg.bracket_hi, "upper coupling bracket")
      ->capture_default_str();

  CLI::App* converge =
      app.add_subcommand("converge", "truncation scaling of Max(<n_s>) over the detuning grid");
  add_physics_options(converge, cfg, grid_spec);
  add_output_options(converge, cfg);

  CLI::App* protocol = app.add_subcommand("protocol", "time-integrate a driving protocol");
  add_physics_options(protocol, cfg, grid_spec);
  add_output_options(protocol, cfg);
  protocol->add_option("--protocol", cfg.protocol, "A (pump first) or B (seed first)")
      ->capture_default_str();
  protocol->add_option("--t1", cfg.t_switch_1, "first switch time, units 1/Gamma_s")
      ->capture_default_str();
  protocol->add_option("--tc", cfg.t_switch_2, "second switch time (CW regime starts)")
      ->capture_default_str();
  protocol->add_option("--t-final", cfg.t_final, "integration end time")->capture_default_str();
  protocol->add_option("--evolve-tol", cfg.evolve_tol, "local error tolerance")
      ->capture_default_str();
  protocol->add_option("--samples", cfg.samples, "trajectory samples")->capture_default_str();

  CLI::App* splitting =
      app.add_subcommand("splitting", "normalized seed response across drive amplitudes");
  add_physics_options(splitting, cfg, grid_spec);
  add_output_options(splitting, cfg);
  splitting->add_option("--fs-list", cfg.fs_list, "comma-separated drive amplitudes")
      ->capture_default_str();

  CLI::App* materials =
      app.add_subcommand("materials", "platform coupling estimates (SI units)");
  add_output_options(materials, cfg);
  materials->add_option("--power", cfg.power, "pump power in W")->capture_default_str();
  materials->add_flag("--curve", cfg.curve, "emit ratio vs power curves (1 uW - 10 W)");
  materials->add_option("--platforms", cfg.platforms_path,
                        "platform records file (default: bundled)");

  CLI::App* comb = app.add_subcommand("comb", "molecule resonances and FWM triplets (JSON)");
  add_output_options(comb, cfg);
  comb->add_option("--neff", cfg.n_eff, "effective index")->capture_default_str();
  comb->add_option("--radius", cfg.radius, "large-ring radius in m")->capture_default_str();
  comb->add_option("--coupling-j", cfg.coupling_j, "inter-ring coupling in rad/s")
      ->capture_default_str();
  comb->add_option("--m-min", cfg.m_min, "lowest azimuthal number")->capture_default_str();
  comb->add_option("--m-max", cfg.m_max, "highest azimuthal number")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (check) {
      return pmsim::cli::run_self_check(cfg.seed, cfg.threads) == 0 ? 0 : 1;
    }
    if (sweep->parsed()) {
      cfg.subcommand = "sweep";
    } else if (threshold->parsed()) {
      cfg.subcommand = "threshold";
    } else if (converge->parsed()) {
      cfg.subcommand = "converge";
    } else if (protocol->parsed()) {
      cfg.subcommand = "protocol";
    } else if (splitting->parsed()) {
      cfg.subcommand = "splitting";
    } else if (materials->parsed()) {
      cfg.subcommand = "materials";
    } else if (comb->parsed()) {
      cfg.subcommand = "comb";
    } else {
      std::cerr << app.help();
      return kExitConfig;
    }

    if (!grid_spec.empty()) {
      const auto grid = pmsim::cli::parse_grid_spec(grid_spec);
      cfg.delta_lo = grid.front();
      cfg.delta_hi = grid.back();
      cfg.delta_n = static_cast<int>(grid.size());
    }
    if (cfg.threads < 1 || cfg.threads > 64) {
      throw std::invalid_argument("--threads must be in [1, 64]");
    }

    if (cfg.subcommand == "sweep") return run_sweep(cfg);
    if (cfg.subcommand == "threshold") return run_threshold(cfg);
    if (cfg.subcommand == "converge") return run_converge(cfg);
    if (cfg.subcommand == "protocol") return run_protocol_cmd(cfg);
    if (cfg.subcommand == "splitting") return run_splitting(cfg);
    if (cfg.subcommand == "materials") return run_materials(cfg);
    if (cfg.subcommand == "comb") return run_comb(cfg);
    return kExitConfig;
  } catch (const NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
