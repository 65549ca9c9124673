#pragma once

#include <span>
#include <vector>

#include "shelldecay/model.hpp"

namespace shelldecay::diag {

/// Least-squares slope of ln y against x. All y must be positive.
double log_slope(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of ln y against ln x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Strict interior local maxima (plateaus count once).
int count_local_maxima(std::span<const double> y);

/// Indices of the maxima counted by count_local_maxima.
std::vector<std::size_t> local_maxima(std::span<const double> y);

/// Divides y by the least-squares single exponential exp(c0 + c1 t), removes the mean,
/// and returns the frequency (cycles per unit t) of the largest DFT bin above zero.
/// The grid must be uniform.
double dominant_frequency_detrended(std::span<const double> t, std::span<const double> y);

/// max_i |tail_i| / envelope_i where envelope_i is the largest |total_j| with
/// |t_j - t_i| <= half_width. Interference nodes of |total| do not count as "large tail".
double envelope_ratio(std::span<const double> t, std::span<const cplx> total, std::span<const cplx> tail,
                      double half_width);

/// Same ratio without the envelope, point by point.
double pointwise_ratio(std::span<const cplx> total, std::span<const cplx> tail);

}  // namespace shelldecay::diag
