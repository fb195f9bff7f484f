#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pmsim::cli {

// Resolved invocation state for every subcommand. Serializes losslessly to
// JSON so outputs can embed the exact configuration that produced them.
struct RunConfig {
  std::string subcommand;

  // rates in units of gamma_s, matching the plot axes
  double delta_lo = -3.0, delta_hi = 3.0;
  int delta_n = 121;
  double gnl = 0.0;
  double fs = 0.1;
  double gamma_ratio = 0.5;
  double gamma_i_ratio = 1.0;
  double gauge_phase = 0.0;

  int nmax = 4;
  bool auto_nmax = false;
  int nmax_start = 1;
  int nmax_limit = 14;
  double rel_tol = 1e-2;

  double tol = 1e-10;
  int threads = 2;
  unsigned seed = 7;
  std::string out;
  std::string format = "csv";

  // threshold
  double target_g2 = 0.5;
  double bracket_lo = 0.05, bracket_hi = 1.0;

  // protocol
  std::string protocol = "A";
  double t_switch_1 = 5.0, t_switch_2 = 15.0, t_final = 100.0;
  double evolve_tol = 1e-8;
  int samples = 200;

  // splitting
  std::string fs_list = "0.1,2.5";

  // materials
  double power = 0.1;
  bool curve = false;
  std::string platforms_path;

  // comb
  double n_eff = 2.1;
  double radius = 100e-6;
  double coupling_j = 5e9;
  int m_min = 800, m_max = 820;

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
  std::vector<std::pair<std::string, std::string>> echo_pairs() const;
};

// "lo:hi:n" -> n equally spaced values.
std::vector<double> parse_grid_spec(const std::string& spec);
// "a,b,c" -> values.
std::vector<double> parse_list_spec(const std::string& spec);

}  // namespace pmsim::cli
