#pragma once

#include <map>
#include <string>
#include <vector>

#include "frostlab/core.hpp"
#include "frostlab/fit.hpp"

namespace frostlab {

// Flat key=value config, one key per line, '#' comments.
struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string get(const std::string& k, const std::string& dflt = "") const;
    double get_double(const std::string& k, double dflt) const;
    i64 get_int(const std::string& k, i64 dflt) const;
    std::vector<int> get_int_list(const std::string& k) const;  // comma separated
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

// Deterministic CSV writer: header row, comma separated, LF endings, pinned float format.
struct CsvWriter {
    std::string buf;
    explicit CsvWriter(const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void write(const std::string& path) const;
};

std::string fmt_double(double v);  // fixed %.10g formatting used in every CSV

// Log-log scatter with the fitted line and a theory reference slope; pure text SVG.
std::string plot_svg(const std::vector<std::pair<double, double>>& log_points,
                     const ExponentFit* fit, double ref_slope, const std::string& title);

// Honors FROSTLAB_THREADS; call once at process start.
void apply_thread_cap_from_env();

}  // namespace frostlab
