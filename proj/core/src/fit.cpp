#include "multlab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "multlab/errors.hpp"

namespace multlab {

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y, double r2_threshold) {
    if (x.size() != y.size()) throw ParameterError("fit_loglog: x and y differ in length");
    if (x.size() < 2) throw ParameterError("fit_loglog: need at least two points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(y[i]))
            throw ParameterError("fit_loglog: values must be positive and finite");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw ParameterError("fit_loglog: x values must be distinct");
    LogLogFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    // A flat exact line has syy = 0 and fits perfectly.
    out.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    out.reliable = out.r_squared >= r2_threshold;
    return out;
}

} // namespace multlab
