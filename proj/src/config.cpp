#include "turretsim/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace turretsim {

RunConfig default_config() {
  RunConfig cfg;
  // Design targets recover the published controller parameter rows exactly
  // (the published gains invert to these round-number crossovers).
  cfg.lead_azimuth = {PidBlock::Mode::kDesign, 11.2, 70.0, 0, 0, 0, 0};
  cfg.pilead_elevation = {PidBlock::Mode::kDesign, 12.9, 70.0, 0, 0, 0, 0};
  cfg.pilead_azimuth = {PidBlock::Mode::kExplicit, 0, 0,
                        6507863.0, 0.32, 0.45, 0.020};
  cfg.firing_times = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  return cfg;
}

LeadController resolve_lead(const PidBlock& block,
                            const TransferFunction& plant) {
  if (block.mode == PidBlock::Mode::kExplicit)
    return {block.k_p, block.t_d, block.gamma};
  return design_lead(plant, {block.omega_gc, block.pm_deg});
}

PiLeadController resolve_pilead(const PidBlock& block,
                                const TransferFunction& plant) {
  if (block.mode == PidBlock::Mode::kExplicit)
    return {block.k_p, block.t_d, block.t_i, block.gamma};
  return design_pilead(plant, {block.omega_gc, block.pm_deg});
}

namespace {

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

SectionMap parse_ini(std::istream& in, std::vector<std::string>& diags) {
  SectionMap sections;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        diags.push_back("line " + std::to_string(lineno) +
                        ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      diags.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return sections;
}

class Applier {
 public:
  Applier(SectionMap sections, std::vector<std::string>& diags)
      : sections_(std::move(sections)), diags_(diags) {}

  bool get(const std::string& section, const std::string& key,
           std::string& out) {
    auto sit = sections_.find(section);
    if (sit == sections_.end()) return false;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return false;
    consumed_[section].insert(key);
    out = kit->second;
    return true;
  }

  void number(const std::string& section, const std::string& key, double& out) {
    std::string raw;
    if (!get(section, key, raw)) return;
    try {
      std::size_t pos = 0;
      const double v = std::stod(raw, &pos);
      if (pos != raw.size()) throw std::invalid_argument("trailing characters");
      out = v;
    } catch (const std::exception&) {
      diags_.push_back("[" + section + "] " + key + ": not a number: " + raw);
    }
  }

  void integer(const std::string& section, const std::string& key, int& out) {
    double v = out;
    number(section, key, v);
    out = static_cast<int>(v);
  }

  void uinteger(const std::string& section, const std::string& key,
                std::uint64_t& out) {
    std::string raw;
    if (!get(section, key, raw)) return;
    try {
      out = std::stoull(raw);
    } catch (const std::exception&) {
      diags_.push_back("[" + section + "] " + key + ": not an integer: " + raw);
    }
  }

  void text(const std::string& section, const std::string& key,
            std::string& out) {
    std::string raw;
    if (get(section, key, raw)) out = raw;
  }

  void numbers(const std::string& section, const std::string& key,
               std::vector<double>& out) {
    std::string raw;
    if (!get(section, key, raw)) return;
    std::vector<double> values;
    std::istringstream ss(raw);
    std::string tok;
    while (ss >> tok) {
      try {
        values.push_back(std::stod(tok));
      } catch (const std::exception&) {
        diags_.push_back("[" + section + "] " + key + ": not a number: " + tok);
        return;
      }
    }
    out = std::move(values);
  }

  void pair2(const std::string& section, const std::string& key,
             Eigen::Vector2d& out) {
    std::vector<double> values{out(0), out(1)};
    numbers(section, key, values);
    if (values.size() != 2) {
      diags_.push_back("[" + section + "] " + key + ": expected two values");
      return;
    }
    out << values[0], values[1];
  }

  void pid(const std::string& section, PidBlock& block) {
    std::string mode;
    if (get(section, "mode", mode)) {
      if (mode == "design")
        block.mode = PidBlock::Mode::kDesign;
      else if (mode == "explicit")
        block.mode = PidBlock::Mode::kExplicit;
      else
        diags_.push_back("[" + section + "] mode: expected design or explicit");
    }
    number(section, "omega_gc", block.omega_gc);
    number(section, "pm", block.pm_deg);
    number(section, "K_P", block.k_p);
    number(section, "T_D", block.t_d);
    number(section, "T_I", block.t_i);
    number(section, "gamma", block.gamma);
  }

  void report_unknown() {
    for (const auto& [section, keys] : sections_) {
      for (const auto& [key, value] : keys) {
        if (!consumed_[section].contains(key))
          diags_.push_back("[" + section + "] unknown key: " + key);
      }
    }
  }

 private:
  SectionMap sections_;
  std::map<std::string, std::set<std::string>> consumed_;
  std::vector<std::string>& diags_;
};

RunConfig apply(SectionMap sections, std::vector<std::string>& diags) {
  RunConfig cfg = default_config();
  Applier a(std::move(sections), diags);

  a.number("turret", "m1", cfg.turret.platform_mass_kg);
  a.number("turret", "m2", cfg.turret.barrel_mass_kg);
  a.number("turret", "b1", cfg.turret.platform_damping);
  a.number("turret", "b2", cfg.turret.barrel_damping);
  a.number("turret", "R", cfg.turret.platform_radius_m);
  a.number("turret", "L", cfg.turret.barrel_length_m);
  a.number("turret", "g", cfg.turret.gravity);

  a.pid("pid.azimuth", cfg.lead_azimuth);
  a.pid("pid.elevation", cfg.pilead_elevation);
  a.pid("pid.azimuth_tracking", cfg.pilead_azimuth);

  a.integer("mpc", "p", cfg.mpc.prediction_horizon);
  a.integer("mpc", "m", cfg.mpc.control_horizon);
  a.number("mpc", "Ts", cfg.mpc.sample_time);
  a.pair2("mpc", "w_y", cfg.mpc.w_y);
  a.pair2("mpc", "w_u", cfg.mpc.w_u);
  a.pair2("mpc", "w_du", cfg.mpc.w_du);
  a.pair2("mpc", "s_y", cfg.mpc.s_y);
  a.pair2("mpc", "s_u", cfg.mpc.s_u);
  a.pair2("mpc", "y_min", cfg.mpc.y_min);
  a.pair2("mpc", "y_max", cfg.mpc.y_max);
  a.pair2("mpc", "V_y_min", cfg.mpc.v_y_min);
  a.pair2("mpc", "V_y_max", cfg.mpc.v_y_max);
  a.number("mpc", "rho_eps", cfg.mpc.rho_eps);

  a.integer("experiments", "trials", cfg.trials);
  a.numbers("experiments", "firing_times", cfg.firing_times);
  a.number("experiments", "sim_step", cfg.sim_step);
  a.number("experiments", "epsilon", cfg.epsilon);
  a.number("experiments", "noise_sigma_mils", cfg.noise_sigma_mils);
  a.number("experiments", "exp4_sigma_mils", cfg.exp4_sigma_mils);
  a.number("experiments", "exp4_sample_time", cfg.exp4_sample_time);
  a.number("experiments", "exp4_firing_time", cfg.exp4_firing_time);
  a.number("experiments", "exp4_tau", cfg.exp4_tau);
  a.number("experiments", "ramp_speed_deg_s", cfg.ramp_speed_deg_s);
  a.number("experiments", "ramp_duration_s", cfg.ramp_duration_s);
  a.uinteger("experiments", "seed", cfg.seed);
  a.integer("experiments", "workers", cfg.workers);
  a.text("experiments", "out", cfg.out_dir);

  a.report_unknown();
  return cfg;
}

}  // namespace

std::vector<std::string> validate_config_values(const RunConfig& cfg) {
  std::vector<std::string> diags;
  try {
    cfg.turret.validate();
  } catch (const std::exception& e) {
    diags.push_back(std::string("[turret] ") + e.what());
  }
  try {
    cfg.mpc.validate();
  } catch (const std::exception& e) {
    diags.push_back(std::string("[mpc] ") + e.what());
  }
  auto check_pid = [&](const char* name, const PidBlock& b, bool needs_ti) {
    if (b.mode == PidBlock::Mode::kDesign) {
      if (!(b.omega_gc > 0.0))
        diags.push_back(std::string("[") + name + "] omega_gc must be positive");
      if (!(b.pm_deg > 0.0 && b.pm_deg < 90.0))
        diags.push_back(std::string("[") + name + "] pm must lie in (0, 90)");
      return;
    }
    if (!(b.k_p > 0.0))
      diags.push_back(std::string("[") + name + "] K_P must be positive");
    if (!(b.t_d > 0.0))
      diags.push_back(std::string("[") + name + "] T_D must be positive");
    if (needs_ti && !(b.t_i > 0.0))
      diags.push_back(std::string("[") + name + "] T_I must be positive");
    if (!(b.gamma > 0.0 && b.gamma < 1.0))
      diags.push_back(std::string("[") + name + "] gamma must lie in (0, 1)");
  };
  check_pid("pid.azimuth", cfg.lead_azimuth, false);
  check_pid("pid.elevation", cfg.pilead_elevation, true);
  check_pid("pid.azimuth_tracking", cfg.pilead_azimuth, true);

  if (cfg.trials < 1) diags.push_back("[experiments] trials must be >= 1");
  if (cfg.firing_times.empty())
    diags.push_back("[experiments] firing_times must be nonempty");
  for (double t : cfg.firing_times)
    if (!(t > 0.0))
      diags.push_back("[experiments] firing times must be positive");
  if (!(cfg.sim_step > 0.0))
    diags.push_back("[experiments] sim_step must be positive");
  if (cfg.epsilon <= -1.0)
    diags.push_back("[experiments] epsilon must exceed -1");
  if (cfg.noise_sigma_mils < 0.0 || cfg.exp4_sigma_mils < 0.0)
    diags.push_back("[experiments] noise sigmas must be nonnegative");
  if (!(cfg.exp4_sample_time > 0.0) || !(cfg.exp4_tau > 0.0))
    diags.push_back("[experiments] exp4 time constants must be positive");
  if (cfg.workers < 0) diags.push_back("[experiments] workers must be >= 0");
  return diags;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::vector<std::string> diags;
  RunConfig cfg = apply(parse_ini(in, diags), diags);
  auto value_diags = validate_config_values(cfg);
  diags.insert(diags.end(), value_diags.begin(), value_diags.end());
  if (!diags.empty()) {
    std::string msg = "config errors in " + path + ":";
    for (const auto& d : diags) msg += "\n  " + d;
    throw std::runtime_error(msg);
  }
  return cfg;
}

std::vector<std::string> validate_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {"cannot open config file: " + path};
  std::vector<std::string> diags;
  RunConfig cfg = apply(parse_ini(in, diags), diags);
  auto value_diags = validate_config_values(cfg);
  diags.insert(diags.end(), value_diags.begin(), value_diags.end());
  return diags;
}

std::string config_to_ini(const RunConfig& cfg) {
  std::ostringstream out;
  out.precision(12);
  out << "[turret]\n"
      << "m1 = " << cfg.turret.platform_mass_kg << "\n"
      << "m2 = " << cfg.turret.barrel_mass_kg << "\n"
      << "b1 = " << cfg.turret.platform_damping << "\n"
      << "b2 = " << cfg.turret.barrel_damping << "\n"
      << "R = " << cfg.turret.platform_radius_m << "\n"
      << "L = " << cfg.turret.barrel_length_m << "\n"
      << "g = " << cfg.turret.gravity << "\n\n";
  auto pid = [&](const char* name, const PidBlock& b, bool ti) {
    out << "[" << name << "]\n";
    if (b.mode == PidBlock::Mode::kDesign) {
      out << "mode = design\n"
          << "omega_gc = " << b.omega_gc << "\n"
          << "pm = " << b.pm_deg << "\n\n";
    } else {
      out << "mode = explicit\n"
          << "K_P = " << b.k_p << "\n"
          << "T_D = " << b.t_d << "\n";
      if (ti) out << "T_I = " << b.t_i << "\n";
      out << "gamma = " << b.gamma << "\n\n";
    }
  };
  pid("pid.azimuth", cfg.lead_azimuth, false);
  pid("pid.elevation", cfg.pilead_elevation, true);
  pid("pid.azimuth_tracking", cfg.pilead_azimuth, true);
  out << "[mpc]\n"
      << "p = " << cfg.mpc.prediction_horizon << "\n"
      << "m = " << cfg.mpc.control_horizon << "\n"
      << "Ts = " << cfg.mpc.sample_time << "\n"
      << "w_y = " << cfg.mpc.w_y(0) << " " << cfg.mpc.w_y(1) << "\n"
      << "w_u = " << cfg.mpc.w_u(0) << " " << cfg.mpc.w_u(1) << "\n"
      << "w_du = " << cfg.mpc.w_du(0) << " " << cfg.mpc.w_du(1) << "\n"
      << "s_y = " << cfg.mpc.s_y(0) << " " << cfg.mpc.s_y(1) << "\n"
      << "s_u = " << cfg.mpc.s_u(0) << " " << cfg.mpc.s_u(1) << "\n"
      << "y_min = " << cfg.mpc.y_min(0) << " " << cfg.mpc.y_min(1) << "\n"
      << "y_max = " << cfg.mpc.y_max(0) << " " << cfg.mpc.y_max(1) << "\n"
      << "V_y_min = " << cfg.mpc.v_y_min(0) << " " << cfg.mpc.v_y_min(1) << "\n"
      << "V_y_max = " << cfg.mpc.v_y_max(0) << " " << cfg.mpc.v_y_max(1) << "\n"
      << "rho_eps = " << cfg.mpc.rho_eps << "\n\n";
  out << "[experiments]\n"
      << "trials = " << cfg.trials << "\n"
      << "firing_times =";
  for (double t : cfg.firing_times) out << " " << t;
  out << "\n"
      << "sim_step = " << cfg.sim_step << "\n"
      << "epsilon = " << cfg.epsilon << "\n"
      << "noise_sigma_mils = " << cfg.noise_sigma_mils << "\n"
      << "exp4_sigma_mils = " << cfg.exp4_sigma_mils << "\n"
      << "exp4_sample_time = " << cfg.exp4_sample_time << "\n"
      << "exp4_firing_time = " << cfg.exp4_firing_time << "\n"
      << "exp4_tau = " << cfg.exp4_tau << "\n"
      << "ramp_speed_deg_s = " << cfg.ramp_speed_deg_s << "\n"
      << "ramp_duration_s = " << cfg.ramp_duration_s << "\n"
      << "seed = " << cfg.seed << "\n"
      << "workers = " << cfg.workers << "\n"
      << "out = " << cfg.out_dir << "\n";
  return out.str();
}

}  // namespace turretsim
