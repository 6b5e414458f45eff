#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dsi/core.hpp"

namespace dsi {

/// Wide-sense Markov covariance summary of an embedded DSI sequence W.
///
/// Holds R_j(0) = E[W(j)^2] and R_j(1) = E[W(j+1)W(j)] for j = 0..q-1; every
/// other covariance of W and of the q-dimensional V follows from these 2q
/// numbers and the scale invariance W(kappa+q) ~ l^H W(kappa).
class MarkovCovarianceModel {
public:
    const SamplingScheme& scheme() const noexcept { return scheme_; }
    int q() const noexcept { return scheme_.q(); }
    std::span<const double> R0() const noexcept { return R0_; }
    std::span<const double> R1() const noexcept { return R1_; }

    /// One-step ratios f(j) = R_j(1)/R_j(0).
    std::span<const double> f() const noexcept { return f_; }

    /// f̃(q-1), the product of all q ratios.
    double ftilde_q() const noexcept { return prefix_.back(); }

    /// Decay ratio |f̃(q-1)| alpha^{-TH} of the covariance along whole blocks.
    double decay_ratio() const noexcept { return decay_ratio_; }

    /// prefix(v) = f̃(v-1) for v = 0..q.
    double prefix(int v) const { return prefix_.at(static_cast<std::size_t>(v)); }

private:
    friend MarkovCovarianceModel make_markov_model(const SamplingScheme&, std::vector<double>,
                                                   std::vector<double>);
    explicit MarkovCovarianceModel(SamplingScheme scheme) : scheme_(std::move(scheme)) {}

    SamplingScheme scheme_;
    std::vector<double> R0_;
    std::vector<double> R1_;
    std::vector<double> f_;
    std::vector<double> prefix_;
    double decay_ratio_ = 0.0;
};

/// Validates positivity, nonzero ratios, per-lag Cauchy-Schwarz (including the
/// wrap-around lag through W(q) ~ l^H W(0)) and stability |f̃(q-1)| < alpha^{TH}.
MarkovCovarianceModel make_markov_model(const SamplingScheme& scheme, std::vector<double> R0,
                                        std::vector<double> R1);

struct CovarianceMatrixResult {
    std::int64_t n = 0;
    std::int64_t tau = 0;
    Eigen::MatrixXd matrix;
};

struct DoobFactorization {
    std::int64_t kappa_min = 0;
    std::vector<double> G;
    std::vector<double> H;
};

/// Cumulative ratio product f̃(r), extended to every integer r through
/// periodicity of f: with r+1 = mq+v, f̃(r) = f̃(q-1)^m f̃(v-1).
double f_tilde(const MarkovCovarianceModel& model, std::int64_t r);

/// R_kappa(0) = alpha^{2nTH} R_u(0).
double variance_W(const MarkovCovarianceModel& model, std::int64_t kappa);

/// R_kappa(tau) = E[W(kappa+tau) W(kappa)] for kappa >= 0 and any integer tau.
double covariance_W(const MarkovCovarianceModel& model, std::int64_t kappa, std::int64_t tau);

/// Q(n, tau) with entries E[V^u(n+tau) V^v(n)] = alpha^{2nTH} R_v(tau q + u - v).
CovarianceMatrixResult covariance_V(const MarkovCovarianceModel& model, std::int64_t n,
                                    std::int64_t tau);

/// alpha^{2nTH} f̃(q-1)^tau C R with C_{u,v} = f̃(u-1)/f̃(v-1), R = diag(R_v(0)).
/// Agrees with covariance_V except at tau = 0 above the diagonal, where the
/// lag tau q + u - v is negative and the product form does not apply.
Eigen::MatrixXd covariance_V_product_form(const MarkovCovarianceModel& model, std::int64_t n,
                                          std::int64_t tau);

/// Doob factorization R(k1, k2) = G(min) H(max), normalized so that H(0) = 1.
DoobFactorization doob_factorization(const MarkovCovarianceModel& model, std::int64_t kappa_min,
                                     std::int64_t kappa_max);

/// R_j(0), R_j(1) of the Simple Brownian Motion with lambda = alpha^T.
MarkovCovarianceModel model_from_sbm(const SamplingScheme& scheme);

}  // namespace dsi
