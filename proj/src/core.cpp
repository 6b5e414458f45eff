#include "dsi/core.hpp"

#include <cmath>
#include <string>

#include "dsi/error.hpp"

namespace dsi {

namespace {

// Largest |exponent| (natural log scale) accepted for alpha^{nT}.
constexpr double kMaxLogFactor = 700.0;

}  // namespace

double SamplingScheme::block_factor(std::int64_t n) const {
    const double exponent = static_cast<double>(n) * T_;
    if (std::abs(exponent * std::log(alpha_)) > kMaxLogFactor) {
        throw Error(ErrorCode::RangeOverflow,
                    "alpha^(nT) out of double range for n=" + std::to_string(n));
    }
    return std::pow(alpha_, exponent);
}

SchemeParams SamplingScheme::params() const {
    return SchemeParams{H_, alpha_, T_, q(), s_};
}

SamplingScheme validate_scheme(const SchemeParams& raw) {
    if (!(raw.alpha > 1.0) || !std::isfinite(raw.alpha)) {
        throw Error(ErrorCode::BadBase, "alpha must be a finite real > 1");
    }
    if (!(raw.H > 0.0) || !std::isfinite(raw.H)) {
        throw Error(ErrorCode::BadIndex, "H must be a finite real > 0");
    }
    if (raw.T < 1) {
        throw Error(ErrorCode::BadIndex, "T must be >= 1");
    }
    if (raw.q < 1) {
        throw Error(ErrorCode::BadIndex, "q must be >= 1");
    }
    if (raw.s.size() != static_cast<std::size_t>(raw.q)) {
        throw Error(ErrorCode::BadIndex, "s must have exactly q=" + std::to_string(raw.q) +
                                             " entries, got " + std::to_string(raw.s.size()));
    }
    if (raw.T * std::log(raw.alpha) > kMaxLogFactor) {
        throw Error(ErrorCode::RangeOverflow, "scale alpha^T out of double range");
    }
    const double scale = std::pow(raw.alpha, raw.T);
    for (std::size_t i = 1; i < raw.s.size(); ++i) {
        if (!(raw.s[i] > raw.s[i - 1])) {
            throw Error(ErrorCode::NonIncreasingOffsets,
                        "s must be strictly increasing (s_" + std::to_string(i - 1) +
                            " >= s_" + std::to_string(i) + ")");
        }
    }
    if (!(raw.s.front() >= 1.0) || !(raw.s.back() < scale)) {
        throw Error(ErrorCode::OffsetOutOfRange, "offsets must lie in [1, alpha^T)");
    }

    SamplingScheme scheme;
    scheme.H_ = raw.H;
    scheme.alpha_ = raw.alpha;
    scheme.T_ = raw.T;
    scheme.s_ = raw.s;
    scheme.scale_ = scale;
    return scheme;
}

SchemeParams scheme_from_partitions(double H, double alpha,
                                    const std::vector<std::vector<double>>& partitions) {
    SchemeParams params;
    params.H = H;
    params.alpha = alpha;
    params.T = static_cast<int>(partitions.size());
    for (std::size_t k = 0; k < partitions.size(); ++k) {
        const double base = std::pow(alpha, static_cast<double>(k));
        for (double x : partitions[k]) {
            if (!(x >= 1.0) || !(x < alpha)) {
                throw Error(ErrorCode::OffsetOutOfRange,
                            "partition offsets must lie in [1, alpha)");
            }
            params.s.push_back(base * x);
        }
    }
    params.q = static_cast<int>(params.s.size());
    return params;
}

EmbeddedIndex split_index(std::int64_t kappa, int q) {
    std::int64_t n = kappa / q;
    if (kappa % q < 0) {
        --n;
    }
    return EmbeddedIndex{kappa, n, static_cast<int>(kappa - n * q)};
}

std::int64_t embed_index(std::int64_t n, int u, int q) {
    if (u < 0 || u >= q) {
        throw Error(ErrorCode::OffsetOutOfRange,
                    "u=" + std::to_string(u) + " outside [0, " + std::to_string(q - 1) + "]");
    }
    return n * q + u;
}

double sample_time(const SamplingScheme& scheme, std::int64_t kappa) {
    const auto idx = split_index(kappa, scheme.q());
    return scheme.block_factor(idx.n) * scheme.s(idx.u);
}

std::vector<SamplePoint> sample_points(const SamplingScheme& scheme, std::int64_t kappa_min,
                                       std::int64_t kappa_max) {
    if (kappa_min > kappa_max) {
        throw Error(ErrorCode::BadIndex, "kappa_min must not exceed kappa_max");
    }
    std::vector<SamplePoint> points;
    points.reserve(static_cast<std::size_t>(kappa_max - kappa_min + 1));
    for (std::int64_t kappa = kappa_min; kappa <= kappa_max; ++kappa) {
        const auto idx = split_index(kappa, scheme.q());
        points.push_back({idx, scheme.block_factor(idx.n) * scheme.s(idx.u)});
    }
    return points;
}

}  // namespace dsi
