#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsi/core.hpp"

namespace dsi {

/// Samples of a stationary (or periodically correlated) sequence Y.
struct StationaryGrid {
    std::vector<double> times;
    std::vector<double> values;
};

/// Samples of a self-similar (or DSI) process X on the positive half-line.
struct SelfSimilarGrid {
    std::vector<double> points;
    std::vector<double> values;
};

/// X(t) = t^H Y(log_alpha t), evaluated at t = alpha^time.
SelfSimilarGrid quasi_lamperti(const StationaryGrid& y, double H, double alpha);

/// Y(t) = alpha^{-tH} X(alpha^t), evaluated at t = log_alpha point.
StationaryGrid inverse_quasi_lamperti(const SelfSimilarGrid& x, double H, double alpha);

/// Maps W(kappa) = X(alpha^{nT} s_u), kappa = kappa_min, kappa_min+1, ..., to its
/// stationary counterpart eta at times nT + log_alpha s_u.
StationaryGrid embedded_to_stationary(std::span<const double> path, std::int64_t kappa_min,
                                      const SamplingScheme& scheme);

}  // namespace dsi
