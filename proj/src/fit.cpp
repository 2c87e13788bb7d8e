#include "frostlab/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace frostlab {

ExponentFit fit_logpoints(const std::vector<double>& log_xs, const std::vector<double>& log_ys) {
    if (log_xs.size() != log_ys.size() || log_xs.size() < 2)
        throw std::invalid_argument("fit: need at least 2 points");
    const double n = (double)log_xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < log_xs.size(); ++k) {
        sx += log_xs[k];
        sy += log_ys[k];
        sxx += log_xs[k] * log_xs[k];
        sxy += log_xs[k] * log_ys[k];
    }
    double den = n * sxx - sx * sx;
    if (den == 0.0) throw std::invalid_argument("fit: degenerate x-variance");
    ExponentFit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    for (size_t k = 0; k < log_xs.size(); ++k) {
        f.points.push_back({log_xs[k], log_ys[k]});
        f.max_residual =
            std::max(f.max_residual, std::abs(log_ys[k] - (f.slope * log_xs[k] + f.intercept)));
    }
    return f;
}

ExponentFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (size_t k = 0; k < xs.size(); ++k) {
        if (xs[k] <= 0 || ys[k] <= 0) throw std::invalid_argument("fit: nonpositive value");
        lx[k] = std::log2(xs[k]);
        ly[k] = std::log2(ys[k]);
    }
    return fit_logpoints(lx, ly);
}

}  // namespace frostlab
