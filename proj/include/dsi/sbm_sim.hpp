#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsi/core.hpp"

namespace dsi {

/// P simulated Simple Brownian Motion paths over kappa_min..kappa_max.
struct PathEnsemble {
    SamplingScheme scheme;
    std::int64_t kappa_min = 0;
    std::int64_t kappa_max = 0;
    std::size_t paths = 0;
    std::uint64_t seed = 0;
    std::vector<double> values;  // row-major, paths x points

    std::size_t points() const noexcept {
        return static_cast<std::size_t>(kappa_max - kappa_min + 1);
    }
    std::span<const double> path(std::size_t p) const {
        return std::span<const double>(values).subspan(p * points(), points());
    }
    double at(std::size_t p, std::int64_t kappa) const {
        return values[p * points() + static_cast<std::size_t>(kappa - kappa_min)];
    }
    /// Philox stream id of path p.
    static std::uint64_t path_stream(std::size_t p) noexcept { return p; }
};

struct EstimateWithError {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

struct REstimates {
    std::vector<EstimateWithError> R0;
    std::vector<EstimateWithError> R1;
};

/// Sample-mean estimate of Q_{u,v}(0, tau), stored row-major (u, v).
struct QEstimate {
    std::int64_t tau = 0;
    int q = 0;
    std::vector<EstimateWithError> entries;

    const EstimateWithError& at(int u, int v) const {
        return entries[static_cast<std::size_t>(u * q + v)];
    }
};

/// Scale-band index n(kappa) of the Simple Brownian Motion: the sample time
/// lies in [lambda^{n-1}, lambda^n). Equal to floor(kappa/q) + 1.
std::int64_t sbm_band(const SamplingScheme& scheme, std::int64_t kappa);

/// lambda^{n(kappa) (H - 1/2)}
double sbm_amplitude(const SamplingScheme& scheme, std::int64_t kappa);

/// Exact paths of X(t) = lambda^{n(H-1/2)} B(t) on [lambda^{n-1}, lambda^n), sampled
/// on the embedded grid with exact Brownian increments.
PathEnsemble simulate_paths(const SamplingScheme& scheme, std::int64_t kappa_min,
                            std::int64_t kappa_max, std::size_t paths, std::uint64_t seed,
                            unsigned workers = 0);

/// lambda^{(n1+n2)H'} min(t1, t2).
double sbm_covariance_exact(const SamplingScheme& scheme, std::int64_t kappa1,
                            std::int64_t kappa2);

/// Sample mean with standard error sample_std / sqrt(P); P >= 2.
EstimateWithError mean_with_error(std::span<const double> samples);

REstimates estimate_R(const PathEnsemble& ensemble);

std::vector<QEstimate> estimate_Q(const PathEnsemble& ensemble, std::int64_t tau_max);

}  // namespace dsi
