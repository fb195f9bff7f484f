#include "pmsim/materials.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pmsim {

namespace {

struct RawRecord {
  std::string name;
  std::map<std::string, std::string> fields;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const RawRecord& rec, const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || pos == 0) {
    throw std::invalid_argument("platforms: record [" + rec.name + "] field '" + key +
                                "': cannot parse number from '" + value + "'");
  }
  return out;
}

}  // namespace

void MaterialPlatform::validate() const {
  auto positive = [&](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("platforms: record [" + name + "] field '" + field +
                                  "' must be a positive finite number");
    }
  };
  positive(n, "n");
  positive(n2, "n2");
  positive(q0, "q0");
  positive(radius, "radius");
  positive(omega_s, "omega_s");
  if (v_g) positive(*v_g, "v_g");
  if (a_eff) positive(*a_eff, "a_eff");
  if (gamma_nl == 0.0 && !a_eff) {
    throw std::invalid_argument("platforms: record [" + name +
                                "] needs gamma_nl or a_eff to fix the nonlinearity");
  }
  if (gamma_nl != 0.0) positive(gamma_nl, "gamma_nl");
}

double nonlinear_parameter(double n2, double a_eff, double omega_s) {
  if (!(n2 > 0.0) || !(a_eff > 0.0) || !(omega_s > 0.0)) {
    throw std::invalid_argument("nonlinear_parameter: inputs must be > 0");
  }
  return omega_s * n2 / (a_eff * kSpeedOfLight);
}

CouplingEstimate effective_coupling(const MaterialPlatform& platform, double pump_power_w) {
  platform.validate();
  if (!(pump_power_w >= 0.0)) throw std::invalid_argument("effective_coupling: power must be >= 0");
  const double gnl = platform.gamma_nl != 0.0
                         ? platform.gamma_nl
                         : nonlinear_parameter(platform.n2, *platform.a_eff, platform.omega_s);
  const double vg = platform.group_velocity();
  const double linewidth = platform.linewidth();

  CouplingEstimate est;
  est.g_over_gamma = kHBar * platform.omega_s * vg * vg * gnl /
                     (2.0 * kPi * platform.radius * linewidth);
  est.alpha_p = std::sqrt(pump_power_w / (kHBar * platform.omega_s * linewidth));
  est.ratio = est.g_over_gamma * est.alpha_p;
  return est;
}

double power_threshold(const MaterialPlatform& platform, double target_ratio) {
  platform.validate();
  if (!(target_ratio > 0.0)) throw std::invalid_argument("power_threshold: target must be > 0");
  const double per_sqrt_watt = effective_coupling(platform, 1.0).ratio;
  const double root = target_ratio / per_sqrt_watt;
  return root * root;
}

PlatformFile parse_platforms(const std::string& text, std::vector<std::string>* warnings_out) {
  PlatformFile out;
  std::vector<RawRecord> records;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw std::invalid_argument("platforms: line " + std::to_string(lineno) +
                                    ": malformed record header '" + line + "'");
      }
      records.push_back({trim(line.substr(1, line.size() - 2)), {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || records.empty()) {
      throw std::invalid_argument("platforms: line " + std::to_string(lineno) +
                                  ": expected 'key = value' inside a [record]");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("platforms: line " + std::to_string(lineno) +
                                  ": empty key or value");
    }
    records.back().fields[key] = value;
  }

  if (records.empty()) out.warnings.push_back("platforms: file contains no records");

  for (const auto& rec : records) {
    const auto geometry_it = rec.fields.find("geometry");
    const std::string geometry = geometry_it == rec.fields.end() ? "ring" : geometry_it->second;
    if (geometry != "ring") {
      TabulatedPlatform t;
      t.name = rec.name;
      t.geometry = geometry;
      for (const auto& [key, value] : rec.fields) {
        if (key.rfind("ratio@", 0) == 0) {
          std::string power = key.substr(6);
          if (power.size() < 2 || power.back() != 'W') {
            throw std::invalid_argument("platforms: record [" + rec.name + "] field '" + key +
                                        "': expected ratio@<power>W");
          }
          power.pop_back();
          t.ratio_by_power[parse_number(rec, key, power)] = parse_number(rec, key, value);
        } else if (key == "source") {
          t.source = value;
        } else if (key != "geometry") {
          out.warnings.push_back("platforms: record [" + rec.name + "]: field '" + key +
                                 "' ignored for non-ring geometry");
        }
      }
      out.tabulated.push_back(std::move(t));
      continue;
    }

    MaterialPlatform p;
    p.name = rec.name;
    for (const auto& [key, value] : rec.fields) {
      if (key == "n") p.n = parse_number(rec, key, value);
      else if (key == "n2") p.n2 = parse_number(rec, key, value);
      else if (key == "q0") p.q0 = parse_number(rec, key, value);
      else if (key == "radius") p.radius = parse_number(rec, key, value);
      else if (key == "gamma_nl") p.gamma_nl = parse_number(rec, key, value);
      else if (key == "a_eff") p.a_eff = parse_number(rec, key, value);
      else if (key == "v_g") p.v_g = parse_number(rec, key, value);
      else if (key == "omega_s") p.omega_s = parse_number(rec, key, value);
      else if (key == "source") p.source = value;
      else {
        throw std::invalid_argument("platforms: record [" + rec.name + "]: unknown field '" +
                                    key + "'");
      }
    }
    p.validate();
    if (p.gamma_nl != 0.0 && p.a_eff) {
      const double computed = nonlinear_parameter(p.n2, *p.a_eff, p.omega_s);
      if (std::abs(computed - p.gamma_nl) > 0.05 * p.gamma_nl) {
        std::ostringstream msg;
        msg << "platforms: record [" << p.name << "]: gamma_nl " << p.gamma_nl
            << " disagrees with omega_s*n2/(A_eff*c) = " << computed << " by more than 5%";
        out.warnings.push_back(msg.str());
      }
    }
    out.platforms.push_back(std::move(p));
  }

  if (warnings_out) *warnings_out = out.warnings;
  return out;
}

PlatformFile load_platforms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_platforms: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_platforms(buf.str());
}

PlatformFile bundled_platforms() { return parse_platforms(bundled_platforms_text()); }

}  // namespace pmsim
