#include "dsi/lamperti.hpp"

#include <cmath>
#include <string>

#include "dsi/error.hpp"

namespace dsi {

namespace {

void check_parameters(double H, double alpha) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
        throw Error(ErrorCode::BadBase, "alpha must be a finite real > 1");
    }
    if (!(H > 0.0) || !std::isfinite(H)) {
        throw Error(ErrorCode::BadIndex, "H must be a finite real > 0");
    }
}

void check_lengths(std::size_t a, std::size_t b) {
    if (a != b) {
        throw Error(ErrorCode::BadIndex, "grid coordinates and values differ in length");
    }
}

}  // namespace

SelfSimilarGrid quasi_lamperti(const StationaryGrid& y, double H, double alpha) {
    check_parameters(H, alpha);
    check_lengths(y.times.size(), y.values.size());
    SelfSimilarGrid x;
    x.points.reserve(y.times.size());
    x.values.reserve(y.times.size());
    for (std::size_t i = 0; i < y.times.size(); ++i) {
        const double point = std::pow(alpha, y.times[i]);
        const double amplitude = std::pow(point, H);
        if (!std::isfinite(amplitude) || !(point > 0.0) || !(amplitude > 0.0)) {
            throw Error(ErrorCode::RangeOverflow,
                        "alpha^t out of double range at t=" + std::to_string(y.times[i]));
        }
        x.points.push_back(point);
        x.values.push_back(amplitude * y.values[i]);
    }
    return x;
}

StationaryGrid inverse_quasi_lamperti(const SelfSimilarGrid& x, double H, double alpha) {
    check_parameters(H, alpha);
    check_lengths(x.points.size(), x.values.size());
    const double log_alpha = std::log(alpha);
    StationaryGrid y;
    y.times.reserve(x.points.size());
    y.values.reserve(x.points.size());
    for (std::size_t i = 0; i < x.points.size(); ++i) {
        const double t = x.points[i];
        if (!(t > 0.0)) {
            throw Error(ErrorCode::NonPositivePoint, "self-similar grid points must be > 0");
        }
        y.times.push_back(std::log(t) / log_alpha);
        y.values.push_back(std::pow(t, -H) * x.values[i]);
    }
    return y;
}

StationaryGrid embedded_to_stationary(std::span<const double> path, std::int64_t kappa_min,
                                      const SamplingScheme& scheme) {
    const double log_alpha = std::log(scheme.alpha());
    StationaryGrid eta;
    eta.times.reserve(path.size());
    eta.values.reserve(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto idx = split_index(kappa_min + static_cast<std::int64_t>(i), scheme.q());
        const double time = scheme.block_factor(idx.n) * scheme.s(idx.u);
        eta.times.push_back(static_cast<double>(idx.n) * scheme.T() +
                            std::log(scheme.s(idx.u)) / log_alpha);
        eta.values.push_back(std::pow(time, -scheme.H()) * path[i]);
    }
    return eta;
}

}  // namespace dsi
