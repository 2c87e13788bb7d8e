// Command line front end: experiment runner, set validation, log-log fits.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "frostlab/experiments.hpp"
#include "frostlab/fractal.hpp"
#include "frostlab/validate.hpp"

namespace fs = std::filesystem;
using namespace frostlab;

namespace {

int cmd_run(const std::string& experiment, const std::string& config_path, i64 seed, bool has_seed,
            const std::string& out_dir) {
    ExperimentConfig cfg = parse_config(config_path);
    if (cfg.experiment.empty()) cfg.experiment = experiment;
    if (cfg.experiment != experiment) {
        std::cerr << "config experiment '" << cfg.experiment << "' does not match subcommand '"
                  << experiment << "'\n";
        return 2;
    }
    if (has_seed) cfg.kv["seed"] = std::to_string(seed);
    RunResult res = run_experiment(cfg);
    fs::create_directories(out_dir);
    for (const auto& out : res.outputs) {
        fs::path p = fs::path(out_dir) / out.name;
        std::ofstream f(p, std::ios::binary);
        f << out.text;
        std::cout << "wrote " << p.string() << "\n";
    }
    if (!res.flags.empty()) {
        fs::path p = fs::path(out_dir) / "FLAGS.txt";
        std::ofstream f(p, std::ios::binary);
        for (const auto& fl : res.flags) {
            f << fl << "\n";
            std::cerr << "flag: " << fl << "\n";
        }
    }
    return 0;
}

int cmd_validate(const std::string& set_path, const std::string& kind, double s) {
    std::ifstream f(set_path);
    if (!f) {
        std::cerr << "cannot open " << set_path << "\n";
        return 2;
    }
    RegularityCertificate cert;
    if (kind == "rect") {
        DiscreteSet2D p = read_set2d(f);
        cert = validate_rect_kt(p, s);
        std::cout << "kind=rect-kt u=" << s << " C=" << fmt_double(cert.C) << " witness=(i="
                  << cert.wit_i << ",j=" << cert.wit_j << ",rp=" << cert.wit_rp
                  << ",r=" << cert.wit_r << ",slope=" << cert.wit_slope << ")\n";
        return 0;
    }
    DiscreteSet1D a = read_set1d(f);
    if (kind == "kt") cert = validate_kt(a, s);
    else if (kind == "frostman") cert = validate_frostman(a, s);
    else {
        std::cerr << "unknown kind: " << kind << "\n";
        return 2;
    }
    std::cout << "kind=" << kind << " s=" << s << " C=" << fmt_double(cert.C)
              << " witness=(x=" << cert.wit_i << ",t=" << cert.wit_t << ")\n";
    return 0;
}

int cmd_fit(const std::string& csv_path, const std::string& xcol, const std::string& ycol,
            bool x_pow2, const std::string& svg_path, double ref_slope) {
    std::ifstream f(csv_path);
    if (!f) {
        std::cerr << "cannot open " << csv_path << "\n";
        return 2;
    }
    std::string line;
    if (!std::getline(f, line)) {
        std::cerr << "empty csv\n";
        return 2;
    }
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(tok);
        return out;
    };
    auto header = split(line);
    int xi = -1, yi = -1;
    for (size_t k = 0; k < header.size(); ++k) {
        if (header[k] == xcol) xi = (int)k;
        if (header[k] == ycol) yi = (int)k;
    }
    if (xi < 0 || yi < 0) {
        std::cerr << "columns not found\n";
        return 2;
    }
    std::vector<double> lx, ly;
    while (std::getline(f, line)) {
        auto cells = split(line);
        if ((int)cells.size() <= std::max(xi, yi)) continue;
        double x = std::stod(cells[xi]), y = std::stod(cells[yi]);
        lx.push_back(x_pow2 ? x : std::log2(x));
        ly.push_back(std::log2(y));
    }
    if (lx.size() < 3) {
        std::cerr << "need at least 3 rows\n";
        return 2;
    }
    ExponentFit fit = fit_logpoints(lx, ly);
    std::cout << "slope=" << fmt_double(fit.slope) << " intercept=" << fmt_double(fit.intercept)
              << " max_residual=" << fmt_double(fit.max_residual) << "\n";
    if (!svg_path.empty()) {
        std::ofstream sf(svg_path, std::ios::binary);
        sf << plot_svg(fit.points, &fit, ref_slope, csv_path + ": " + ycol + " vs " + xcol);
        std::cout << "wrote " << svg_path << "\n";
    }
    return 0;
}

}  // namespace

int run_app(int argc, char** argv);

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_app(int argc, char** argv) {
    apply_thread_cap_from_env();
    CLI::App app{"frostlab: delta-discretized incidence geometry experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    i64 seed = 0;
    bool has_seed = false;
    for (const char* name : {"incidence", "heavy", "energy", "fourier", "sumprod", "projection"}) {
        auto* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
        sub->add_option("--config", config_path, "config file")->required();
        auto* sopt = sub->add_option("--seed", seed, "seed override");
        sub->add_option("--out", out_dir, "output directory");
        sub->callback([&, name, sopt] {
            has_seed = sopt->count() > 0;
            std::exit(cmd_run(name, config_path, seed, has_seed, out_dir));
        });
    }

    std::string set_path, kind = "kt";
    double s = 0.5;
    auto* val = app.add_subcommand("validate", "regularity certificate of a serialized set");
    val->add_option("--set", set_path, "set file")->required();
    val->add_option("--kind", kind, "kt | frostman | rect");
    val->add_option("--s", s, "exponent")->required();
    val->callback([&] { std::exit(cmd_validate(set_path, kind, s)); });

    std::string csv_path, xcol = "m", ycol = "count", svg_path;
    bool x_pow2 = false;
    double ref_slope = 0.0;
    auto* fit = app.add_subcommand("fit", "log2-log2 least squares over csv columns");
    fit->add_option("--csv", csv_path, "input csv")->required();
    fit->add_option("--x", xcol, "x column");
    fit->add_option("--y", ycol, "y column");
    fit->add_flag("--x-already-log2", x_pow2, "x column already holds log2 values");
    fit->add_option("--svg", svg_path, "write a log-log plot");
    fit->add_option("--ref-slope", ref_slope, "reference slope drawn in the plot");
    fit->callback([&] { std::exit(cmd_fit(csv_path, xcol, ycol, x_pow2, svg_path, ref_slope)); });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
