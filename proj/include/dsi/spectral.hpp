#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dsi/core.hpp"
#include "dsi/markov_cov.hpp"

namespace dsi {

struct SeriesMeta {
    std::int64_t order = 0;  // terms kept on each side: |tau| <= order
    double tail_bound = 0.0;
};

/// Spectral density matrices g(omega) of the q-dimensional sequence V.
struct SpectralEvaluation {
    std::vector<double> omegas;
    std::vector<Eigen::MatrixXcd> matrices;
    std::optional<SeriesMeta> meta;
};

/// Q(tau) for tau >= 0; negative lags are obtained by the spectral code itself
/// through Q_{u,v}(-tau) = alpha^{-2 tau TH} Q_{v,u}(tau).
using CovarianceFunction = std::function<Eigen::MatrixXd(std::int64_t tau)>;

struct SeriesOptions {
    double tol = 1e-10;
    /// Geometric decay of |alpha^{-TH tau} Q(tau)|; must be in (0, 1).
    double decay_ratio = 0.0;
    std::int64_t max_order = 1'000'000;
};

struct InversionResult {
    std::vector<std::int64_t> taus;
    std::vector<Eigen::MatrixXd> covariances;
    double max_imag_residue = 0.0;
};

/// omega_k = 2 pi k / M, k = 0..M-1.
std::vector<double> uniform_omega_grid(std::size_t points);

/// Truncated bilateral sum
///   g_{u,v}(w) = (s_u s_v)^{-H}/(2 pi) sum_tau alpha^{-TH tau} e^{-i w tau} Q_{u,v}(tau).
SpectralEvaluation spectral_series(const CovarianceFunction& covfn, const SamplingScheme& scheme,
                                   std::span<const double> omegas, const SeriesOptions& options);

/// spectral_series driven by covariance_V(model, 0, .) and the model's decay ratio.
SpectralEvaluation spectral_series(const MarkovCovarianceModel& model,
                                   std::span<const double> omegas, double tol,
                                   std::int64_t max_order = 1'000'000);

/// Closed form of the series for a wide-sense Markov model: two geometric
/// half-series with poles at alpha^{-HT} f̃(q-1) and its reciprocal.
SpectralEvaluation spectral_markov(const MarkovCovarianceModel& model,
                                   std::span<const double> omegas);

/// The closed form specialized to the Simple Brownian Motion.
SpectralEvaluation spectral_sbm(const SamplingScheme& scheme, std::span<const double> omegas);

/// Recovers Q(tau) from densities on a uniform M-point grid with the periodic
/// trapezoid rule. Requires M >= 4 max|tau|.
InversionResult invert_spectrum(const SpectralEvaluation& evaluation,
                                const SamplingScheme& scheme, std::span<const std::int64_t> taus);

/// B_{u,v}(tau) = (alpha^{tau T} s_u s_v)^{-H} Q_{u,v}(tau), the covariance of the
/// stationary counterpart, for tau = -N..N (index tau + N).
std::vector<double> stationary_covariances(const MarkovCovarianceModel& model, int u, int v,
                                           std::int64_t N);

/// F(lambda1, lambda2) from covariances B(tau), tau = -N..N (index tau + N):
///   (1/2pi) [B(0)(l2 - l1) + sum_{0<|tau|<=N} B(tau)(e^{-i l2 tau} - e^{-i l1 tau})/(-i tau)].
/// Requires 0 <= lambda1 < lambda2 <= 2 pi.
std::complex<double> spectral_distribution_interval(std::span<const double> B, double lambda1,
                                                    double lambda2);

/// max over omegas of max_{u,v} |g_{u,v} - conj(g_{v,u})|.
double max_hermitian_defect(const SpectralEvaluation& evaluation);

}  // namespace dsi
