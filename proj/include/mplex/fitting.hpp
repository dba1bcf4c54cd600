#pragma once

#include <cstddef>
#include <span>

namespace mplex {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares y ~ slope * x + intercept; needs two distinct x values.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Slope of log(y) against log(x) over the strictly positive pairs; NaN when
/// fewer than two such pairs exist.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Empirical geometric rate of an error series: exp of the least-squares
/// slope of log(error) against the index (one index per step, or per cycle
/// when the caller passes cycle-sampled errors). Needs at least 5 strictly
/// positive entries; throws InvalidArgument otherwise.
double fit_rate(std::span<const double> errors);

}  // namespace mplex
