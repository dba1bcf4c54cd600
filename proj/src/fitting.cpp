#include "mplex/fitting.hpp"

#include "mplex/error.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace mplex {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("linear_fit: need two or more points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw InvalidArgument("linear_fit: x values are all equal");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

double loglog_slope(std::span<const double> x, std::span<const double> y)
{
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    return linear_fit(lx, ly).slope;
}

double fit_rate(std::span<const double> errors)
{
    std::vector<double> t, le;
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (errors[i] > 0.0) {
            t.push_back(static_cast<double>(i));
            le.push_back(std::log(errors[i]));
        }
    if (t.size() < 5) throw InvalidArgument("fit_rate: need at least 5 strictly positive errors");
    return std::exp(linear_fit(t, le).slope);
}

}  // namespace mplex
