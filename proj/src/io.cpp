#include "turretsim/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace turretsim {

namespace {

std::string cv_field(const ErrorStats& s) {
  return s.cv ? format_double(*s.cv) : std::string("undefined");
}

std::size_t time_index_of(const TrialSet& set, double firing_time) {
  for (std::size_t i = 0; i < set.firing_times.size(); ++i)
    if (std::abs(set.firing_times[i] - firing_time) < 1e-9) return i;
  throw std::invalid_argument("requested firing time was not simulated");
}

}  // namespace

const char* axis_label(int axis) { return axis == 0 ? "azimuth" : "elevation"; }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10e", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " + path + ": " +
                             ec.message());
}

std::string exp1_csv(const Exp1Output& out) {
  std::ostringstream csv;
  csv << "controller,case,axis,firing_time_s,mu_mils,sigma_mils,"
         "cv_dimensionless\n";
  for (const auto& set : out.cases) {
    for (std::size_t ti = 0; ti < set.firing_times.size(); ++ti) {
      for (int axis = 0; axis < 2; ++axis) {
        const ErrorStats s = set.stats(axis, static_cast<int>(ti));
        csv << controller_label(out.controller) << ',' << case_label(set.kase)
            << ',' << axis_label(axis) << ','
            << format_double(set.firing_times[ti]) << ',' << format_double(s.mu)
            << ',' << format_double(s.sigma) << ',' << cv_field(s) << '\n';
      }
    }
  }
  return csv.str();
}

std::string exp1_constants_csv(const Exp1Output& out, double firing_time) {
  std::ostringstream csv;
  csv << "controller,case,axis,firing_time_s,mu_ratio_dimensionless,"
         "sigma_ratio_dimensionless\n";
  for (const auto& set : out.cases) {
    const int ti = static_cast<int>(time_index_of(set, firing_time));
    for (int axis = 0; axis < 2; ++axis) {
      const Proportionality ratios =
          proportionality_constants(set.stats(axis, ti), set.ref_stats(axis));
      csv << controller_label(out.controller) << ',' << case_label(set.kase)
          << ',' << axis_label(axis) << ',' << format_double(firing_time) << ','
          << format_double(ratios.mu_ratio_abs) << ','
          << format_double(ratios.sigma_ratio) << '\n';
    }
  }
  return csv.str();
}

std::string exp2_csv(const Exp2Output& out) {
  std::ostringstream csv;
  csv << "controller,axis,firing_time_s,output_mu_mils,output_sigma_mils,"
         "output_cv_dimensionless,noise_mu_mils,noise_sigma_mils\n";
  const TrialSet& set = out.set;
  for (std::size_t ti = 0; ti < set.firing_times.size(); ++ti) {
    for (int axis = 0; axis < 2; ++axis) {
      const ErrorStats s = set.stats(axis, static_cast<int>(ti));
      const ErrorStats w = error_stats(set.noise_mils[axis]);
      csv << controller_label(out.controller) << ',' << axis_label(axis) << ','
          << format_double(set.firing_times[ti]) << ',' << format_double(s.mu)
          << ',' << format_double(s.sigma) << ',' << cv_field(s) << ','
          << format_double(w.mu) << ',' << format_double(w.sigma) << '\n';
    }
  }
  return csv.str();
}

std::string exp2_hist_tsv(const TrialSet& set, int axis, int time_index,
                          int bins) {
  const std::size_t base =
      static_cast<std::size_t>(time_index) * set.trials;
  const Histogram h = histogram(
      std::span<const double>(set.errors_mils[axis].data() + base, set.trials),
      bins);
  std::ostringstream tsv;
  tsv << "bin_lo_mils\tbin_hi_mils\tcount\tdensity_per_mil\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    tsv << format_double(h.edges[i]) << '\t' << format_double(h.edges[i + 1])
        << '\t' << h.counts[i] << '\t' << format_double(h.density[i]) << '\n';
  return tsv.str();
}

std::string exp3_csv(const Exp3Output& out) {
  std::ostringstream csv;
  csv << "controller,case,axis,firing_time_s,mu_mils,sigma_mils\n";
  for (const auto& curve : out.curves) {
    for (std::size_t i = 0; i < curve.firing_times.size(); ++i) {
      csv << controller_label(curve.controller) << ',' << case_label(curve.kase)
          << ',' << axis_label(curve.axis) << ','
          << format_double(curve.firing_times[i]) << ','
          << format_double(curve.mu_mils[i]) << ','
          << format_double(curve.sigma_mils[i]) << '\n';
    }
  }
  return csv.str();
}

std::string exp4_csv(const Exp4Output& out) {
  std::ostringstream csv;
  csv << "axis,mu_hat_mils,mu_theory_mils,sigma_hat_mils,sigma_theory_mils,"
         "h2_hat_dimensionless,h2_theory_dimensionless,ks_stat_dimensionless,"
         "ks_critical_1pct_dimensionless\n";
  for (const auto& a : out.axes) {
    csv << a.axis_name << ',' << format_double(a.mu_hat_mils) << ','
        << format_double(0.0) << ',' << format_double(a.sigma_hat_mils) << ','
        << format_double(a.sigma_theory_mils) << ',' << format_double(a.h2_hat)
        << ',' << format_double(a.h2_theory) << ',' << format_double(a.ks_stat)
        << ',' << format_double(a.ks_critical_1pct) << '\n';
  }
  return csv.str();
}

std::string exp4_hist_tsv(const Exp4Axis& axis_out, int bins) {
  const Histogram h = histogram(axis_out.errors_mils, bins);
  std::ostringstream tsv;
  tsv << "bin_lo_mils\tbin_hi_mils\tcount\tdensity_per_mil\t"
         "theory_density_per_mil\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double center = 0.5 * (h.edges[i] + h.edges[i + 1]);
    tsv << format_double(h.edges[i]) << '\t' << format_double(h.edges[i + 1])
        << '\t' << h.counts[i] << '\t' << format_double(h.density[i]) << '\t'
        << format_double(
               normal_pdf(center, 0.0, axis_out.sigma_theory_mils))
        << '\n';
  }
  return tsv.str();
}

std::string exp5_csv(const Exp5Output& out) {
  std::ostringstream csv;
  csv << "controller,axis,time_s,reference_mils,output_mils,error_mils\n";
  for (const auto& track : out.tracks) {
    for (std::size_t k = 0; k < track.times.size(); ++k) {
      csv << track.controller_name << ',' << axis_label(track.axis) << ','
          << format_double(track.times[k]) << ','
          << format_double(track.ref_mils[k]) << ','
          << format_double(track.output_mils[k]) << ','
          << format_double(track.error_mils[k]) << '\n';
    }
  }
  return csv.str();
}

std::string exp5_summary_csv(const Exp5Output& out) {
  std::ostringstream csv;
  csv << "controller,axis,e_ss_mils,oracle_mils\n";
  for (const auto& track : out.tracks)
    csv << track.controller_name << ',' << axis_label(track.axis) << ','
        << format_double(track.e_ss_mils) << ','
        << format_double(track.oracle_mils) << '\n';
  return csv.str();
}

std::string exp1_summary_json(const Exp1Output& out, double firing_time) {
  nlohmann::json j;
  j["controller"] = controller_label(out.controller);
  j["trials"] = out.cases.empty() ? 0 : out.cases.front().trials;
  for (const auto& set : out.cases) {
    nlohmann::json c;
    c["case"] = case_label(set.kase);
    c["mpc_fallback_trials"] = set.mpc_fallback_trials;
    const int ti = static_cast<int>(time_index_of(set, firing_time));
    for (int axis = 0; axis < 2; ++axis) {
      const ErrorStats s = set.stats(axis, ti);
      const auto ratios =
          proportionality_constants(s, set.ref_stats(axis));
      nlohmann::json a;
      a["mu_mils"] = s.mu;
      a["sigma_mils"] = s.sigma;
      if (s.cv) a["cv"] = *s.cv;
      a["mu_ratio"] = ratios.mu_ratio_abs;
      a["sigma_ratio"] = ratios.sigma_ratio;
      c[axis_label(axis)] = a;
    }
    j["cases"].push_back(c);
  }
  j["firing_time_s"] = firing_time;
  return j.dump(2) + "\n";
}

std::string exp2_summary_json(const Exp2Output& out) {
  nlohmann::json j;
  j["controller"] = controller_label(out.controller);
  j["trials"] = out.set.trials;
  for (std::size_t ti = 0; ti < out.set.firing_times.size(); ++ti) {
    nlohmann::json row;
    row["firing_time_s"] = out.set.firing_times[ti];
    for (int axis = 0; axis < 2; ++axis) {
      const ErrorStats s = out.set.stats(axis, static_cast<int>(ti));
      const ErrorStats w = error_stats(out.set.noise_mils[axis]);
      row[axis_label(axis)] = {{"output_mu_mils", s.mu},
                               {"output_sigma_mils", s.sigma},
                               {"noise_mu_mils", w.mu},
                               {"noise_sigma_mils", w.sigma}};
    }
    j["rows"].push_back(row);
  }
  return j.dump(2) + "\n";
}

std::string exp4_summary_json(const Exp4Output& out) {
  nlohmann::json j;
  j["sigma_w_mils"] = out.sigma_w_mils;
  j["sample_time_s"] = out.sample_time;
  j["firing_time_s"] = out.firing_time;
  for (const auto& a : out.axes) {
    j[a.axis_name] = {{"h2_theory", a.h2_theory},
                      {"h2_hat", a.h2_hat},
                      {"sigma_theory_mils", a.sigma_theory_mils},
                      {"sigma_hat_mils", a.sigma_hat_mils},
                      {"mu_hat_mils", a.mu_hat_mils},
                      {"mu_theory_mils", 0.0},
                      {"ks_stat", a.ks_stat},
                      {"ks_critical_1pct", a.ks_critical_1pct}};
  }
  return j.dump(2) + "\n";
}

std::string exp5_summary_json(const Exp5Output& out) {
  nlohmann::json j;
  for (const auto& track : out.tracks) {
    j["tracks"].push_back({{"controller", track.controller_name},
                           {"axis", axis_label(track.axis)},
                           {"e_ss_mils", track.e_ss_mils},
                           {"oracle_mils", track.oracle_mils}});
  }
  return j.dump(2) + "\n";
}

}  // namespace turretsim
