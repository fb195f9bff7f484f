#include "run_config.hpp"

#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pmsim::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["delta_lo"] = delta_lo;
  j["delta_hi"] = delta_hi;
  j["delta_n"] = delta_n;
  j["gnl"] = gnl;
  j["fs"] = fs;
  j["gamma_ratio"] = gamma_ratio;
  j["gamma_i_ratio"] = gamma_i_ratio;
  j["gauge_phase"] = gauge_phase;
  j["nmax"] = nmax;
  j["auto_nmax"] = auto_nmax;
  j["nmax_start"] = nmax_start;
  j["nmax_limit"] = nmax_limit;
  j["rel_tol"] = rel_tol;
  j["tol"] = tol;
  j["threads"] = threads;
  j["seed"] = seed;
  j["out"] = out;
  j["format"] = format;
  j["target_g2"] = target_g2;
  j["bracket_lo"] = bracket_lo;
  j["bracket_hi"] = bracket_hi;
  j["protocol"] = protocol;
  j["t_switch_1"] = t_switch_1;
  j["t_switch_2"] = t_switch_2;
  j["t_final"] = t_final;
  j["evolve_tol"] = evolve_tol;
  j["samples"] = samples;
  j["fs_list"] = fs_list;
  j["power"] = power;
  j["curve"] = curve;
  j["platforms_path"] = platforms_path;
  j["n_eff"] = n_eff;
  j["radius"] = radius;
  j["coupling_j"] = coupling_j;
  j["m_min"] = m_min;
  j["m_max"] = m_max;
  return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RunConfig c;
  c.subcommand = j.at("subcommand").get<std::string>();
  c.delta_lo = j.at("delta_lo").get<double>();
  c.delta_hi = j.at("delta_hi").get<double>();
  c.delta_n = j.at("delta_n").get<int>();
  c.gnl = j.at("gnl").get<double>();
  c.fs = j.at("fs").get<double>();
  c.gamma_ratio = j.at("gamma_ratio").get<double>();
  c.gamma_i_ratio = j.at("gamma_i_ratio").get<double>();
  c.gauge_phase = j.at("gauge_phase").get<double>();
  c.nmax = j.at("nmax").get<int>();
  c.auto_nmax = j.at("auto_nmax").get<bool>();
  c.nmax_start = j.at("nmax_start").get<int>();
  c.nmax_limit = j.at("nmax_limit").get<int>();
  c.rel_tol = j.at("rel_tol").get<double>();
  c.tol = j.at("tol").get<double>();
  c.threads = j.at("threads").get<int>();
  c.seed = j.at("seed").get<unsigned>();
  c.out = j.at("out").get<std::string>();
  c.format = j.at("format").get<std::string>();
  c.target_g2 = j.at("target_g2").get<double>();
  c.bracket_lo = j.at("bracket_lo").get<double>();
  c.bracket_hi = j.at("bracket_hi").get<double>();
  c.protocol = j.at("protocol").get<std::string>();
  c.t_switch_1 = j.at("t_switch_1").get<double>();
  c.t_switch_2 = j.at("t_switch_2").get<double>();
  c.t_final = j.at("t_final").get<double>();
  c.evolve_tol = j.at("evolve_tol").get<double>();
  c.samples = j.at("samples").get<int>();
  c.fs_list = j.at("fs_list").get<std::string>();
  c.power = j.at("power").get<double>();
  c.curve = j.at("curve").get<bool>();
  c.platforms_path = j.at("platforms_path").get<std::string>();
  c.n_eff = j.at("n_eff").get<double>();
  c.radius = j.at("radius").get<double>();
  c.coupling_j = j.at("coupling_j").get<double>();
  c.m_min = j.at("m_min").get<int>();
  c.m_max = j.at("m_max").get<int>();
  return c;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo_pairs() const {
  std::vector<std::pair<std::string, std::string>> out_pairs;
  const nlohmann::ordered_json j = nlohmann::ordered_json::parse(to_json());
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      out_pairs.emplace_back(key, value.get<std::string>());
    } else if (value.is_number_float()) {
      out_pairs.emplace_back(key, fmt17(value.get<double>()));
    } else {
      out_pairs.emplace_back(key, value.dump());
    }
  }
  return out_pairs;
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  double lo = 0.0, hi = 0.0;
  int n = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n, &tail) != 3 || n < 1) {
    throw std::invalid_argument("grid spec must be lo:hi:n with n >= 1, got '" + spec + "'");
  }
  if (n == 1) {
    if (lo != hi) throw std::invalid_argument("grid spec with n=1 needs lo == hi");
    return {lo};
  }
  if (!(hi > lo)) throw std::invalid_argument("grid spec needs hi > lo, got '" + spec + "'");
  std::vector<double> grid(n);
  for (int k = 0; k < n; ++k) grid[k] = lo + (hi - lo) * k / (n - 1);
  return grid;
}

std::vector<double> parse_list_spec(const std::string& spec) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string item = spec.substr(pos, comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) {
      throw std::invalid_argument("list spec: cannot parse '" + item + "' in '" + spec + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("list spec is empty");
  return out;
}

}  // namespace pmsim::cli
