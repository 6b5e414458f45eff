#include "dsi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dsi/error.hpp"
#include "dsi/parallel.hpp"

namespace dsi {

namespace {

using cdouble = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// (s_u s_v)^{-H} / (2 pi)
double density_prefactor(const SamplingScheme& scheme, int u, int v) {
    return std::pow(scheme.s(u) * scheme.s(v), -scheme.H()) / kTwoPi;
}

// Fills the lower triangle (u >= v) with entry(u, v, omega) and mirrors the
// upper triangle as conj(g_{v,u}). The closed forms are only valid for u >= v:
// there the lag-0 term Q_{u,v}(0) = R_v(u - v) has nonnegative lag.
template <class Entry>
SpectralEvaluation evaluate_lower(int q, std::span<const double> omegas, Entry entry) {
    SpectralEvaluation result;
    result.omegas.assign(omegas.begin(), omegas.end());
    result.matrices.assign(omegas.size(), Eigen::MatrixXcd(q, q));
    parallel_for(omegas.size(), [&](std::size_t k) {
        auto& g = result.matrices[k];
        for (int u = 0; u < q; ++u) {
            for (int v = 0; v <= u; ++v) {
                g(u, v) = entry(u, v, omegas[k]);
                if (v != u) {
                    g(v, u) = std::conj(g(u, v));
                }
            }
        }
    });
    return result;
}

}  // namespace

std::vector<double> uniform_omega_grid(std::size_t points) {
    std::vector<double> grid(points);
    for (std::size_t k = 0; k < points; ++k) {
        grid[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(points);
    }
    return grid;
}

SpectralEvaluation spectral_series(const CovarianceFunction& covfn, const SamplingScheme& scheme,
                                   std::span<const double> omegas, const SeriesOptions& options) {
    const double r = options.decay_ratio;
    if (!(r < 1.0)) {
        throw Error(ErrorCode::ModelUnstable, "series decay ratio must be < 1");
    }
    if (!(r > 0.0) || !(options.tol > 0.0)) {
        throw Error(ErrorCode::InvalidModel, "series needs decay ratio > 0 and tol > 0");
    }
    const int q = scheme.q();
    const double damping = std::pow(scheme.alpha(), -scheme.T() * scheme.H());

    // Coefficients c_{u,v}(tau) = K_{u,v} alpha^{-TH tau} Q_{u,v}(tau) for tau >= 0;
    // the negative side is c_{u,v}(-tau) = c_{v,u}(tau).
    Eigen::MatrixXd K(q, q);
    for (int u = 0; u < q; ++u) {
        for (int v = 0; v < q; ++v) {
            K(u, v) = density_prefactor(scheme, u, v);
        }
    }
    std::vector<Eigen::MatrixXd> coeffs;
    coeffs.push_back(K.cwiseProduct(covfn(0)));
    coeffs.push_back(K.cwiseProduct(covfn(1)) * damping);

    // |c(tau)| <= A r^tau on both sides, A from the tau = 1 coefficients.
    const double amplitude = coeffs[1].cwiseAbs().maxCoeff() / r;
    const auto tail = [&](std::int64_t order) {
        return 2.0 * amplitude * std::pow(r, static_cast<double>(order + 1)) / (1.0 - r);
    };
    std::int64_t order = 1;
    if (tail(order) >= options.tol) {
        const double needed =
            std::log(options.tol * (1.0 - r) / (2.0 * amplitude)) / std::log(r) - 1.0;
        order = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(needed)));
        while (tail(order) >= options.tol) {
            ++order;
        }
    }
    if (order > options.max_order) {
        throw Error(ErrorCode::ToleranceUnreachable,
                    "series order " + std::to_string(order) + " exceeds cap " +
                        std::to_string(options.max_order));
    }
    for (std::int64_t tau = 2; tau <= order; ++tau) {
        coeffs.push_back(K.cwiseProduct(covfn(tau)) *
                         std::pow(damping, static_cast<double>(tau)));
    }

    SpectralEvaluation result;
    result.omegas.assign(omegas.begin(), omegas.end());
    result.matrices.assign(omegas.size(), Eigen::MatrixXcd(q, q));
    result.meta = SeriesMeta{order, tail(order)};
    parallel_for(omegas.size(), [&](std::size_t k) {
        const double omega = omegas[k];
        auto& g = result.matrices[k];
        for (int u = 0; u < q; ++u) {
            for (int v = 0; v < q; ++v) {
                // Summed from the smallest terms up.
                cdouble sum = 0.0;
                for (std::int64_t tau = order; tau >= 1; --tau) {
                    const auto& c = coeffs[static_cast<std::size_t>(tau)];
                    const cdouble phase = std::polar(1.0, -omega * static_cast<double>(tau));
                    sum += c(u, v) * phase + c(v, u) * std::conj(phase);
                }
                g(u, v) = sum + coeffs[0](u, v);
            }
        }
    });
    return result;
}

SpectralEvaluation spectral_series(const MarkovCovarianceModel& model,
                                   std::span<const double> omegas, double tol,
                                   std::int64_t max_order) {
    SeriesOptions options;
    options.tol = tol;
    options.decay_ratio = model.decay_ratio();
    options.max_order = max_order;
    const auto covfn = [&model](std::int64_t tau) { return covariance_V(model, 0, tau).matrix; };
    return spectral_series(covfn, model.scheme(), omegas, options);
}

SpectralEvaluation spectral_markov(const MarkovCovarianceModel& model,
                                   std::span<const double> omegas) {
    if (!(model.decay_ratio() < 1.0)) {
        throw Error(ErrorCode::ModelUnstable, "|f~(q-1)| must be < alpha^{TH}");
    }
    const auto& scheme = model.scheme();
    const double pole = std::pow(scheme.alpha(), -scheme.H() * scheme.T()) * model.ftilde_q();
    const double inverse_pole = 1.0 / pole;
    return evaluate_lower(scheme.q(), omegas, [&](int u, int v, double omega) {
        const cdouble w = std::polar(1.0, -omega);
        const double forward = model.prefix(u) * model.R0()[static_cast<std::size_t>(v)] /
                               model.prefix(v);
        const double backward = model.prefix(v) * model.R0()[static_cast<std::size_t>(u)] /
                                model.prefix(u);
        return density_prefactor(scheme, u, v) *
               (forward / (1.0 - w * pole) - backward / (1.0 - w * inverse_pole));
    });
}

SpectralEvaluation spectral_sbm(const SamplingScheme& scheme, std::span<const double> omegas) {
    const double T = scheme.T();
    const double Hp = scheme.H() - 0.5;
    const double gain = std::pow(scheme.alpha(), 2.0 * T * Hp);
    const double pole = std::pow(scheme.alpha(), -T / 2.0);
    const double inverse_pole = std::pow(scheme.alpha(), T / 2.0);
    return evaluate_lower(scheme.q(), omegas, [&](int u, int v, double omega) {
        const cdouble w = std::polar(1.0, -omega);
        return density_prefactor(scheme, u, v) * gain *
               (scheme.s(v) / (1.0 - w * pole) - scheme.s(u) / (1.0 - w * inverse_pole));
    });
}

InversionResult invert_spectrum(const SpectralEvaluation& evaluation,
                                const SamplingScheme& scheme, std::span<const std::int64_t> taus) {
    const std::size_t M = evaluation.omegas.size();
    if (M == 0 || evaluation.matrices.size() != M) {
        throw Error(ErrorCode::GridTooCoarse, "empty or inconsistent spectral evaluation");
    }
    for (std::size_t k = 0; k < M; ++k) {
        const double expected = kTwoPi * static_cast<double>(k) / static_cast<double>(M);
        if (std::abs(evaluation.omegas[k] - expected) > 1e-12 * kTwoPi) {
            throw Error(ErrorCode::GridTooCoarse, "inversion needs the uniform grid 2 pi k / M");
        }
    }
    std::int64_t max_lag = 0;
    for (auto tau : taus) {
        max_lag = std::max<std::int64_t>(max_lag, tau < 0 ? -tau : tau);
    }
    if (static_cast<double>(M) < 4.0 * static_cast<double>(max_lag)) {
        throw Error(ErrorCode::GridTooCoarse,
                    "M=" + std::to_string(M) + " < 4 max|tau|=" + std::to_string(4 * max_lag));
    }

    const int q = scheme.q();
    InversionResult result;
    result.taus.assign(taus.begin(), taus.end());
    result.covariances.assign(taus.size(), Eigen::MatrixXd(q, q));
    std::vector<double> residues(taus.size(), 0.0);
    parallel_for(taus.size(), [&](std::size_t i) {
        const std::int64_t tau = taus[i];
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(q, q);
        for (std::size_t k = 0; k < M; ++k) {
            // e^{i omega_k tau} with the phase reduced mod M for accuracy.
            const auto m = static_cast<std::int64_t>(M);
            const std::int64_t reduced = ((static_cast<std::int64_t>(k) * tau) % m + m) % m;
            const cdouble phase =
                std::polar(1.0, kTwoPi * static_cast<double>(reduced) / static_cast<double>(M));
            acc += phase * evaluation.matrices[k];
        }
        acc *= kTwoPi / static_cast<double>(M);
        const double shift =
            std::pow(scheme.alpha(), static_cast<double>(tau) * scheme.T() * scheme.H());
        for (int u = 0; u < q; ++u) {
            for (int v = 0; v < q; ++v) {
                const cdouble value = shift * std::pow(scheme.s(u) * scheme.s(v), scheme.H()) *
                                      acc(u, v);
                result.covariances[i](u, v) = value.real();
                residues[i] = std::max(residues[i], std::abs(value.imag()));
            }
        }
    });
    for (double r : residues) {
        result.max_imag_residue = std::max(result.max_imag_residue, r);
    }
    return result;
}

std::vector<double> stationary_covariances(const MarkovCovarianceModel& model, int u, int v,
                                           std::int64_t N) {
    const auto& scheme = model.scheme();
    std::vector<double> B;
    B.reserve(static_cast<std::size_t>(2 * N + 1));
    for (std::int64_t tau = -N; tau <= N; ++tau) {
        const double Q = covariance_V(model, 0, tau).matrix(u, v);
        B.push_back(std::pow(scheme.block_factor(tau) * scheme.s(u) * scheme.s(v), -scheme.H()) *
                    Q);
    }
    return B;
}

std::complex<double> spectral_distribution_interval(std::span<const double> B, double lambda1,
                                                    double lambda2) {
    if (B.size() % 2 != 1 || B.size() < 3) {
        throw Error(ErrorCode::BadInterval, "B must hold tau = -N..N with N >= 1");
    }
    if (!(lambda1 >= 0.0) || !(lambda1 < lambda2) || !(lambda2 <= kTwoPi)) {
        throw Error(ErrorCode::BadInterval, "need 0 <= lambda1 < lambda2 <= 2 pi");
    }
    const auto N = static_cast<std::int64_t>(B.size() / 2);
    const auto at = [&](std::int64_t tau) { return B[static_cast<std::size_t>(tau + N)]; };
    cdouble sum = 0.0;
    for (std::int64_t tau = N; tau >= 1; --tau) {
        for (const std::int64_t lag : {tau, -tau}) {
            const double t = static_cast<double>(lag);
            const cdouble kernel =
                (std::polar(1.0, -lambda2 * t) - std::polar(1.0, -lambda1 * t)) / cdouble(0.0, -t);
            sum += at(lag) * kernel;
        }
    }
    return (at(0) * (lambda2 - lambda1) + sum) / kTwoPi;
}

double max_hermitian_defect(const SpectralEvaluation& evaluation) {
    double defect = 0.0;
    for (const auto& g : evaluation.matrices) {
        defect = std::max(defect, (g - g.adjoint()).cwiseAbs().maxCoeff());
    }
    return defect;
}

}  // namespace dsi
