#include "dsi/markov_cov.hpp"

#include <cmath>
#include <string>

#include "dsi/error.hpp"

namespace dsi {

namespace {

// Relative slack on the Cauchy-Schwarz checks, for inputs sitting on the bound.
constexpr double kCauchySchwarzSlack = 1e-12;

double scale_power(const SamplingScheme& scheme, double blocks) {
    // alpha^{2 * blocks * T H}
    return std::pow(scheme.alpha(), 2.0 * blocks * scheme.T() * scheme.H());
}

}  // namespace

MarkovCovarianceModel make_markov_model(const SamplingScheme& scheme, std::vector<double> R0,
                                        std::vector<double> R1) {
    const auto q = static_cast<std::size_t>(scheme.q());
    if (R0.size() != q || R1.size() != q) {
        throw Error(ErrorCode::InvalidModel,
                    "R0 and R1 must each hold q=" + std::to_string(q) + " values");
    }
    for (std::size_t j = 0; j < q; ++j) {
        if (!(R0[j] > 0.0) || !std::isfinite(R0[j])) {
            throw Error(ErrorCode::InvalidModel, "R0[" + std::to_string(j) + "] must be > 0");
        }
        if (R1[j] == 0.0 || !std::isfinite(R1[j])) {
            throw Error(ErrorCode::InvalidModel,
                        "R1[" + std::to_string(j) + "] must be finite and nonzero");
        }
    }
    const double l2H = scale_power(scheme, 1.0);
    for (std::size_t j = 0; j < q; ++j) {
        // W(q) ~ l^H W(0), so the successor variance of j = q-1 is l^{2H} R_0(0).
        const double next_var = (j + 1 < q) ? R0[j + 1] : l2H * R0[0];
        if (R1[j] * R1[j] > R0[j] * next_var * (1.0 + kCauchySchwarzSlack)) {
            throw Error(ErrorCode::InvalidModel,
                        "R1[" + std::to_string(j) + "] violates Cauchy-Schwarz");
        }
    }

    MarkovCovarianceModel model(scheme);
    model.f_.resize(q);
    model.prefix_.assign(q + 1, 1.0);
    for (std::size_t j = 0; j < q; ++j) {
        model.f_[j] = R1[j] / R0[j];
        model.prefix_[j + 1] = model.prefix_[j] * model.f_[j];
    }
    model.R0_ = std::move(R0);
    model.R1_ = std::move(R1);
    model.decay_ratio_ =
        std::abs(model.prefix_.back()) * std::pow(scheme.alpha(), -scheme.T() * scheme.H());
    if (!(model.decay_ratio_ < 1.0)) {
        throw Error(ErrorCode::ModelUnstable, "|f~(q-1)| must be < alpha^{TH}");
    }
    return model;
}

double f_tilde(const MarkovCovarianceModel& model, std::int64_t r) {
    const auto idx = split_index(r + 1, model.q());
    const double base = model.prefix(idx.u);
    if (idx.n == 0) {
        return base;
    }
    return std::pow(model.ftilde_q(), static_cast<double>(idx.n)) * base;
}

double variance_W(const MarkovCovarianceModel& model, std::int64_t kappa) {
    const auto idx = split_index(kappa, model.q());
    return scale_power(model.scheme(), static_cast<double>(idx.n)) *
           model.R0()[static_cast<std::size_t>(idx.u)];
}

double covariance_W(const MarkovCovarianceModel& model, std::int64_t kappa, std::int64_t tau) {
    if (kappa < 0) {
        throw Error(ErrorCode::NegativeKappa, "covariance_W requires kappa >= 0");
    }
    const int q = model.q();
    if (tau < 0) {
        // E[W(kappa+tau) W(kappa)] read from the earlier index.
        const std::int64_t earlier = kappa + tau;
        if (earlier >= 0) {
            return covariance_W(model, earlier, -tau);
        }
        const std::int64_t blocks = (-earlier + q - 1) / q;
        return std::pow(model.scheme().alpha(),
                        -2.0 * static_cast<double>(blocks) * model.scheme().T() *
                            model.scheme().H()) *
               covariance_W(model, earlier + blocks * q, -tau);
    }
    const auto lag = split_index(tau, q);
    const double ratio = f_tilde(model, kappa + lag.u - 1) / f_tilde(model, kappa - 1);
    const double blocks = lag.n == 0 ? 1.0 : std::pow(model.ftilde_q(), static_cast<double>(lag.n));
    return blocks * ratio * variance_W(model, kappa);
}

CovarianceMatrixResult covariance_V(const MarkovCovarianceModel& model, std::int64_t n,
                                    std::int64_t tau) {
    const int q = model.q();
    CovarianceMatrixResult result{n, tau, Eigen::MatrixXd(q, q)};
    const double shift = scale_power(model.scheme(), static_cast<double>(n));
    for (int u = 0; u < q; ++u) {
        for (int v = 0; v < q; ++v) {
            result.matrix(u, v) = shift * covariance_W(model, v, tau * q + u - v);
        }
    }
    return result;
}

Eigen::MatrixXd covariance_V_product_form(const MarkovCovarianceModel& model, std::int64_t n,
                                          std::int64_t tau) {
    const int q = model.q();
    const double factor = scale_power(model.scheme(), static_cast<double>(n)) *
                          std::pow(model.ftilde_q(), static_cast<double>(tau));
    Eigen::MatrixXd Q(q, q);
    for (int u = 0; u < q; ++u) {
        for (int v = 0; v < q; ++v) {
            const double C = model.prefix(u) / model.prefix(v);
            Q(u, v) = factor * C * model.R0()[static_cast<std::size_t>(v)];
        }
    }
    return Q;
}

DoobFactorization doob_factorization(const MarkovCovarianceModel& model, std::int64_t kappa_min,
                                     std::int64_t kappa_max) {
    if (kappa_min < 0) {
        throw Error(ErrorCode::NegativeKappa, "doob_factorization requires kappa_min >= 0");
    }
    if (kappa_min > kappa_max) {
        throw Error(ErrorCode::BadIndex, "kappa_min must not exceed kappa_max");
    }
    DoobFactorization doob;
    doob.kappa_min = kappa_min;
    for (std::int64_t kappa = kappa_min; kappa <= kappa_max; ++kappa) {
        // H(nq + v) = H(0) f̃(q-1)^n f̃(v-1), H(0) = 1
        const double h = f_tilde(model, kappa - 1);
        doob.H.push_back(h);
        doob.G.push_back(variance_W(model, kappa) / h);
    }
    return doob;
}

MarkovCovarianceModel model_from_sbm(const SamplingScheme& scheme) {
    const double Hp = scheme.H() - 0.5;
    const double a = static_cast<double>(scheme.T()) * Hp;
    const double two = std::pow(scheme.alpha(), 2.0 * a);
    const double three = std::pow(scheme.alpha(), 3.0 * a);
    const auto q = static_cast<std::size_t>(scheme.q());
    std::vector<double> R0(q);
    std::vector<double> R1(q);
    for (std::size_t j = 0; j < q; ++j) {
        R0[j] = two * scheme.s()[j];
        R1[j] = (j + 1 < q) ? two * scheme.s()[j] : three * scheme.s()[j];
    }
    return make_markov_model(scheme, std::move(R0), std::move(R1));
}

}  // namespace dsi
