#pragma once

#include <string>

#include "turretsim/experiments.hpp"

namespace turretsim {

// Deterministic decimal formatting ("%.10e"); identical doubles always
// produce identical bytes, which the reproducibility checks rely on.
std::string format_double(double v);

void write_file(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);

std::string exp1_csv(const Exp1Output& out);
std::string exp1_constants_csv(const Exp1Output& out, double firing_time);
std::string exp2_csv(const Exp2Output& out);
std::string exp2_hist_tsv(const TrialSet& set, int axis, int time_index,
                          int bins = 41);
std::string exp3_csv(const Exp3Output& out);
std::string exp4_csv(const Exp4Output& out);
std::string exp4_hist_tsv(const Exp4Axis& axis_out, int bins = 41);
std::string exp5_csv(const Exp5Output& out);
std::string exp5_summary_csv(const Exp5Output& out);

std::string exp1_summary_json(const Exp1Output& out, double firing_time);
std::string exp2_summary_json(const Exp2Output& out);
std::string exp4_summary_json(const Exp4Output& out);
std::string exp5_summary_json(const Exp5Output& out);

const char* axis_label(int axis);  // "azimuth" / "elevation"

}  // namespace turretsim
