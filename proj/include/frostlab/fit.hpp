#pragma once

#include <vector>

#include "frostlab/core.hpp"

namespace frostlab {

// Least-squares line through (log2 x, log2 y) points; closed-form normal equations.
struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    std::vector<std::pair<double, double>> points;  // (log2 x, log2 y)
};

// xs, ys raw positive values; logs are taken inside.
ExponentFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

// points already in log2 coordinates
ExponentFit fit_logpoints(const std::vector<double>& log_xs, const std::vector<double>& log_ys);

}  // namespace frostlab
