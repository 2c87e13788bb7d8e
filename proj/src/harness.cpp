#include "frostlab/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <omp.h>

namespace frostlab {

std::string ExperimentConfig::get(const std::string& k, const std::string& dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
}

double ExperimentConfig::get_double(const std::string& k, double dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stod(it->second);
}

i64 ExperimentConfig::get_int(const std::string& k, i64 dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : (i64)std::stoll(it->second);
}

std::vector<int> ExperimentConfig::get_int_list(const std::string& k) const {
    std::vector<int> out;
    auto it = kv.find(k);
    if (it == kv.end()) return out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
        val.erase(val.begin(), std::find_if(val.begin(), val.end(), notspace));
        if (key.empty()) throw std::runtime_error("config: empty key");
        cfg.kv[key] = val;
    }
    cfg.experiment = cfg.get("experiment");
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) {
    for (size_t k = 0; k < header.size(); ++k) {
        if (k) buf += ',';
        buf += header[k];
    }
    buf += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t k = 0; k < cells.size(); ++k) {
        if (k) buf += ',';
        buf += cells[k];
    }
    buf += '\n';
}

void CsvWriter::write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << buf;
}

std::string plot_svg(const std::vector<std::pair<double, double>>& log_points,
                     const ExponentFit* fit, double ref_slope, const std::string& title) {
    const int W = 640, H = 480, P = 56;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto& [x, y] : log_points) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (log_points.empty()) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmax == xmin) { xmax += 1; }
    if (ymax == ymin) { ymax += 1; }
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;
    auto sx = [&](double x) { return P + (x - xmin) / (xmax - xmin) * (W - 2 * P); };
    auto sy = [&](double y) { return H - P - (y - ymin) / (ymax - ymin) * (H - 2 * P); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << P << "\" y=\"24\" font-size=\"14\">" << title << "</text>\n";
    os << "<line x1=\"" << P << "\" y1=\"" << H - P << "\" x2=\"" << W - P << "\" y2=\"" << H - P
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << P << "\" y1=\"" << P << "\" x2=\"" << P << "\" y2=\"" << H - P
       << "\" stroke=\"black\"/>\n";
    for (auto& [x, y] : log_points)
        os << "<circle cx=\"" << fmt_double(sx(x)) << "\" cy=\"" << fmt_double(sy(y))
           << "\" r=\"3\" fill=\"black\"/>\n";
    if (fit && log_points.size() >= 2) {
        double y0 = fit->slope * xmin + fit->intercept, y1 = fit->slope * xmax + fit->intercept;
        os << "<line x1=\"" << fmt_double(sx(xmin)) << "\" y1=\"" << fmt_double(sy(y0)) << "\" x2=\""
           << fmt_double(sx(xmax)) << "\" y2=\"" << fmt_double(sy(y1))
           << "\" stroke=\"blue\"/>\n";
        os << "<text x=\"" << P << "\" y=\"40\" font-size=\"12\" fill=\"blue\">fit slope "
           << fmt_double(fit->slope) << "</text>\n";
    }
    if (!log_points.empty()) {
        // reference line through the first point with the theory slope
        double bx = log_points.front().first, by = log_points.front().second;
        double y0 = by + ref_slope * (xmin - bx), y1 = by + ref_slope * (xmax - bx);
        os << "<line x1=\"" << fmt_double(sx(xmin)) << "\" y1=\"" << fmt_double(sy(y0)) << "\" x2=\""
           << fmt_double(sx(xmax)) << "\" y2=\"" << fmt_double(sy(y1))
           << "\" stroke=\"red\" stroke-dasharray=\"4\"/>\n";
        os << "<text x=\"" << P << "\" y=\"54\" font-size=\"12\" fill=\"red\">reference slope "
           << fmt_double(ref_slope) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void apply_thread_cap_from_env() {
    const char* cap = std::getenv("FROSTLAB_THREADS");
    if (!cap) return;
    int n = std::atoi(cap);
    if (n >= 1) omp_set_num_threads(n);
}

}  // namespace frostlab
