#include "dsi/sbm_sim.hpp"

#include <cmath>
#include <string>

#include "dsi/error.hpp"
#include "dsi/parallel.hpp"
#include "dsi/rng.hpp"

namespace dsi {

namespace {

void require_nonnegative(std::int64_t kappa) {
    if (kappa < 0) {
        throw Error(ErrorCode::NegativeKappa,
                    "the Simple Brownian Motion is sampled on t >= 1 only (kappa >= 0)");
    }
}

void require_covered(const PathEnsemble& ensemble, std::int64_t last) {
    if (ensemble.kappa_min > 0 || ensemble.kappa_max < last) {
        throw Error(ErrorCode::RangeTooSmall,
                    "ensemble must cover kappa = 0.." + std::to_string(last));
    }
    if (ensemble.paths < 2) {
        throw Error(ErrorCode::RangeTooSmall, "standard errors need at least 2 paths");
    }
}

}  // namespace

std::int64_t sbm_band(const SamplingScheme& scheme, std::int64_t kappa) {
    // t = lambda^n s_u with s_u in [1, lambda) lies in [lambda^n, lambda^{n+1}).
    return split_index(kappa, scheme.q()).n + 1;
}

double sbm_amplitude(const SamplingScheme& scheme, std::int64_t kappa) {
    const double Hp = scheme.H() - 0.5;
    return std::pow(scheme.scale(), static_cast<double>(sbm_band(scheme, kappa)) * Hp);
}

PathEnsemble simulate_paths(const SamplingScheme& scheme, std::int64_t kappa_min,
                            std::int64_t kappa_max, std::size_t paths, std::uint64_t seed,
                            unsigned workers) {
    require_nonnegative(kappa_min);
    if (kappa_min > kappa_max) {
        throw Error(ErrorCode::BadIndex, "kappa_min must not exceed kappa_max");
    }
    if (paths < 1) {
        throw Error(ErrorCode::BadIndex, "need at least one path");
    }
    PathEnsemble ensemble{scheme, kappa_min, kappa_max, paths, seed, {}};
    const std::size_t K = ensemble.points();

    std::vector<double> times(K);
    std::vector<double> amplitude(K);
    std::vector<double> step_sd(K);
    for (std::size_t i = 0; i < K; ++i) {
        const auto kappa = kappa_min + static_cast<std::int64_t>(i);
        times[i] = sample_time(scheme, kappa);
        amplitude[i] = sbm_amplitude(scheme, kappa);
        if (!std::isfinite(times[i]) || !std::isfinite(amplitude[i])) {
            throw Error(ErrorCode::RangeOverflow, "sample grid overflows at kappa=" +
                                                      std::to_string(kappa));
        }
        step_sd[i] = std::sqrt(i == 0 ? times[0] : times[i] - times[i - 1]);
    }

    ensemble.values.resize(paths * K);
    parallel_for(
        paths,
        [&](std::size_t p) {
            const PhiloxStream stream(seed, PathEnsemble::path_stream(p));
            double brownian = 0.0;
            double* row = ensemble.values.data() + p * K;
            for (std::size_t i = 0; i < K; ++i) {
                brownian += step_sd[i] * stream.normal(i);
                row[i] = amplitude[i] * brownian;
            }
        },
        workers);
    return ensemble;
}

double sbm_covariance_exact(const SamplingScheme& scheme, std::int64_t kappa1,
                            std::int64_t kappa2) {
    require_nonnegative(kappa1);
    require_nonnegative(kappa2);
    const double t1 = sample_time(scheme, kappa1);
    const double t2 = sample_time(scheme, kappa2);
    return sbm_amplitude(scheme, kappa1) * sbm_amplitude(scheme, kappa2) * std::min(t1, t2);
}

EstimateWithError mean_with_error(std::span<const double> samples) {
    const std::size_t P = samples.size();
    if (P < 2) {
        throw Error(ErrorCode::RangeTooSmall, "standard errors need at least 2 samples");
    }
    double sum = 0.0;
    for (double x : samples) {
        sum += x;
    }
    const double mean = sum / static_cast<double>(P);
    double ss = 0.0;
    for (double x : samples) {
        ss += (x - mean) * (x - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(P - 1));
    return {mean, sd / std::sqrt(static_cast<double>(P)), P};
}

REstimates estimate_R(const PathEnsemble& ensemble) {
    const int q = ensemble.scheme.q();
    require_covered(ensemble, q);
    REstimates out;
    std::vector<double> products(ensemble.paths);
    for (int j = 0; j < q; ++j) {
        for (std::size_t p = 0; p < ensemble.paths; ++p) {
            const double w = ensemble.at(p, j);
            products[p] = w * w;
        }
        out.R0.push_back(mean_with_error(products));
        for (std::size_t p = 0; p < ensemble.paths; ++p) {
            products[p] = ensemble.at(p, j + 1) * ensemble.at(p, j);
        }
        out.R1.push_back(mean_with_error(products));
    }
    return out;
}

std::vector<QEstimate> estimate_Q(const PathEnsemble& ensemble, std::int64_t tau_max) {
    const int q = ensemble.scheme.q();
    if (tau_max < 0) {
        throw Error(ErrorCode::BadIndex, "tau_max must be >= 0");
    }
    require_covered(ensemble, (tau_max + 1) * q - 1);
    std::vector<QEstimate> out;
    std::vector<double> products(ensemble.paths);
    for (std::int64_t tau = 0; tau <= tau_max; ++tau) {
        QEstimate estimate{tau, q, {}};
        for (int u = 0; u < q; ++u) {
            for (int v = 0; v < q; ++v) {
                for (std::size_t p = 0; p < ensemble.paths; ++p) {
                    products[p] = ensemble.at(p, tau * q + u) * ensemble.at(p, v);
                }
                estimate.entries.push_back(mean_with_error(products));
            }
        }
        out.push_back(std::move(estimate));
    }
    return out;
}

}  // namespace dsi
