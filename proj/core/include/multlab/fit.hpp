#pragma once

#include <span>

namespace multlab {

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    // False when r_squared falls below the threshold.
    bool reliable = true;
};

// Least squares line through (log x_i, log y_i). Needs two or more points with
// distinct positive x and positive y.
LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y, double r2_threshold = 0.95);

} // namespace multlab
