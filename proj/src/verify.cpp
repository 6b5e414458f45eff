#include "dsi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsi/lamperti.hpp"
#include "dsi/rng.hpp"

namespace dsi {

namespace {

double rel_err(double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

class Report {
public:
    void below(std::string name, double observed, double tolerance) {
        add(std::move(name), observed, 0.0, tolerance, observed <= tolerance);
    }
    void near(std::string name, double observed, double expected, double tolerance) {
        add(std::move(name), observed, expected, tolerance,
            std::abs(observed - expected) <= tolerance);
    }
    std::vector<CheckResult> take() { return std::move(checks_); }

private:
    void add(std::string name, double observed, double expected, double tolerance, bool ok) {
        checks_.push_back({std::move(name), ok && std::isfinite(observed), observed, expected,
                           tolerance});
    }
    std::vector<CheckResult> checks_;
};

double max_entry_diff(const SpectralEvaluation& a, const SpectralEvaluation& b) {
    double diff = 0.0;
    for (std::size_t k = 0; k < a.matrices.size(); ++k) {
        diff = std::max(diff, (a.matrices[k] - b.matrices[k]).cwiseAbs().maxCoeff());
    }
    return diff;
}

void covariance_checks(Report& report, const MarkovCovarianceModel& model, std::string_view tag) {
    const int q = model.q();
    const double alpha = model.scheme().alpha();
    const double TH = model.scheme().T() * model.scheme().H();

    double entrywise = 0.0;
    double shift = 0.0;
    for (std::int64_t n = -2; n <= 2; ++n) {
        for (std::int64_t tau = 0; tau <= 6; ++tau) {
            const auto Q = covariance_V(model, n, tau).matrix;
            const auto Q0 = covariance_V(model, 0, tau).matrix;
            const double factor = std::pow(alpha, 2.0 * static_cast<double>(n) * TH);
            for (int u = 0; u < q; ++u) {
                for (int v = 0; v < q; ++v) {
                    const double from_W = factor * covariance_W(model, v, tau * q + u - v);
                    entrywise = std::max(entrywise, rel_err(Q(u, v), from_W));
                    shift = std::max(shift, rel_err(Q(u, v), factor * Q0(u, v)));
                }
            }
        }
    }
    report.below(std::string(tag) + "matrix_form_vs_entrywise", entrywise, 1e-12);
    report.below(std::string(tag) + "matrix_form_scale_shift", shift, 1e-12);

    double product_rule = 0.0;
    for (std::int64_t k = 0; k <= 10; ++k) {
        for (std::int64_t t1 = 0; t1 <= 6; ++t1) {
            for (std::int64_t t2 = 0; t2 <= 6; ++t2) {
                const double lhs = covariance_W(model, k, t1 + t2) * covariance_W(model, k + t1, 0);
                const double rhs = covariance_W(model, k, t1) * covariance_W(model, k + t1, t2);
                product_rule = std::max(product_rule, rel_err(lhs, rhs));
            }
        }
    }
    report.below(std::string(tag) + "markov_product_rule", product_rule, 1e-10);
}

void spectral_checks(Report& report, const MarkovCovarianceModel& model, const RunConfig& config,
                     std::string_view tag, SpectralEvaluation* keep) {
    const auto grid = uniform_omega_grid(config.omega_points);
    auto closed = spectral_markov(model, grid);
    const auto series = spectral_series(model, grid, config.tol);
    report.below(std::string(tag) + "closed_form_vs_series", max_entry_diff(closed, series),
                 std::max(config.tol, 1e-8));
    report.below(std::string(tag) + "hermitian_symmetry",
                 std::max(max_hermitian_defect(closed), max_hermitian_defect(series)), 1e-10);

    const auto fine = spectral_markov(model, uniform_omega_grid(config.inversion_points));
    std::vector<std::int64_t> taus;
    for (std::int64_t tau = 0; tau <= config.tau_max; ++tau) {
        taus.push_back(tau);
    }
    const auto inverted = invert_spectrum(fine, model.scheme(), taus);
    double worst = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const auto Q = covariance_V(model, 0, taus[i]).matrix;
        for (int u = 0; u < model.q(); ++u) {
            for (int v = 0; v < model.q(); ++v) {
                worst = std::max(worst, rel_err(inverted.covariances[i](u, v), Q(u, v)));
            }
        }
    }
    report.below(std::string(tag) + "fourier_inversion_rel_err", worst, 1e-6);
    report.below(std::string(tag) + "fourier_inversion_imag_residue", inverted.max_imag_residue,
                 1e-8);
    if (keep != nullptr) {
        *keep = std::move(closed);
    }
}

}  // namespace

bool VerificationRun::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

VerificationRun run_verification(const RunConfig& config) {
    const auto scheme = validate_scheme(config.scheme);
    const auto sbm = model_from_sbm(scheme);
    const int q = scheme.q();
    Report report;
    VerificationRun run;

    // Index algebra and sampling grid.
    std::int64_t mismatches = 0;
    for (int m = 1; m <= 8; ++m) {
        for (std::int64_t k = -1000; k <= 1000; ++k) {
            const auto idx = split_index(k, m);
            if (embed_index(idx.n, idx.u, m) != k || idx.u < 0 || idx.u >= m) {
                ++mismatches;
            }
        }
    }
    report.below("index_bijection_mismatches", static_cast<double>(mismatches), 0.0);
    double scale_structure = 0.0;
    for (std::int64_t k = 0; k <= 40; ++k) {
        scale_structure = std::max(
            scale_structure, rel_err(sample_time(scheme, k + q), scheme.scale() * sample_time(scheme, k)));
    }
    report.below("sample_time_scale_structure", scale_structure, 1e-12);

    // Covariance reconstruction against the closed-form Brownian oracle.
    double thm = 0.0;
    for (std::int64_t k = 0; k <= 10; ++k) {
        for (std::int64_t tau = 0; tau <= 12; ++tau) {
            thm = std::max(thm, rel_err(covariance_W(sbm, k, tau), sbm_covariance_exact(scheme, k, k + tau)));
        }
    }
    report.below("covariance_W_vs_sbm_exact", thm, 1e-10);
    double chain = 0.0;
    for (int j = 0; j < q; ++j) {
        chain = std::max(chain, rel_err(sbm_covariance_exact(scheme, j, j), sbm.R0()[j]));
        chain = std::max(chain, rel_err(sbm_covariance_exact(scheme, j, j + 1), sbm.R1()[j]));
    }
    report.below("sbm_model_vs_sbm_exact", chain, 1e-12);
    const auto doob = doob_factorization(sbm, 0, 20);
    std::int64_t decreases = 0;
    for (std::size_t i = 1; i < doob.G.size(); ++i) {
        if (doob.G[i] / doob.H[i] < doob.G[i - 1] / doob.H[i - 1]) {
            ++decreases;
        }
    }
    report.below("doob_ratio_decreases", static_cast<double>(decreases), 0.0);
    covariance_checks(report, sbm, "sbm_");

    // Spectra.
    spectral_checks(report, sbm, config, "sbm_", &run.spectrum);
    const auto grid = uniform_omega_grid(config.omega_points);
    const auto special = spectral_sbm(scheme, grid);
    report.below("sbm_specialization_vs_closed_form", max_entry_diff(special, run.spectrum), 1e-12);
    report.below("sbm_specialization_hermitian", max_hermitian_defect(special), 1e-10);
    {
        const double Hp = scheme.H() - 0.5;
        const double a = scheme.alpha();
        const double T = scheme.T();
        const double s0 = scheme.s(0);
        const double by_hand = std::pow(s0, -2.0 * scheme.H()) * std::pow(a, 2.0 * T * Hp) /
                               (2.0 * std::numbers::pi) *
                               (s0 / (1.0 - std::pow(a, -T / 2)) - s0 / (1.0 - std::pow(a, T / 2)));
        const auto zero = spectral_sbm(scheme, std::vector<double>{0.0});
        report.near("sbm_g00_at_zero", zero.matrices[0](0, 0).real(), by_hand, 1e-3);
    }

    if (config.R0) {
        const auto model = make_markov_model(scheme, *config.R0, *config.R1);
        covariance_checks(report, model, "model_");
        spectral_checks(report, model, config, "model_", nullptr);
    }

    // Monte Carlo.
    const std::int64_t kmax = std::max<std::int64_t>((config.tau_max + 1) * q - 1, 2 * q);
    run.ensemble = simulate_paths(scheme, 0, kmax, config.paths, config.seed);
    const auto& ens = *run.ensemble;
    const auto R = estimate_R(ens);
    for (int j = 0; j < q; ++j) {
        const auto& r0 = R.R0[static_cast<std::size_t>(j)];
        const auto& r1 = R.R1[static_cast<std::size_t>(j)];
        report.near("mc_R0_" + std::to_string(j), r0.value, sbm.R0()[j], 3.0 * r0.std_error);
        report.near("mc_R1_" + std::to_string(j), r1.value, sbm.R1()[j], 3.0 * r1.std_error);
    }
    double worst_z = 0.0;
    for (const auto& Q : estimate_Q(ens, config.tau_max)) {
        for (int u = 0; u < q; ++u) {
            for (int v = 0; v < q; ++v) {
                const auto& e = Q.at(u, v);
                const double exact = sbm_covariance_exact(scheme, Q.tau * q + u, v);
                worst_z = std::max(worst_z, std::abs(e.value - exact) / e.std_error);
            }
        }
    }
    report.below("mc_Q_max_abs_z", worst_z, 4.0);
    {
        // Var W(k+q) / Var W(k) against l^{2H}, linearized standard error.
        const double target = std::pow(scheme.scale(), 2.0 * scheme.H());
        double worst = 0.0;
        std::vector<double> a(ens.paths), b(ens.paths), lin(ens.paths);
        for (int k = 0; k < q; ++k) {
            for (std::size_t p = 0; p < ens.paths; ++p) {
                a[p] = ens.at(p, k + q) * ens.at(p, k + q);
                b[p] = ens.at(p, k) * ens.at(p, k);
            }
            const auto ea = mean_with_error(a);
            const auto eb = mean_with_error(b);
            const double ratio = ea.value / eb.value;
            for (std::size_t p = 0; p < ens.paths; ++p) {
                lin[p] = (a[p] - ratio * b[p]) / eb.value;
            }
            const double se = mean_with_error(lin).std_error;
            worst = std::max(worst, std::abs(ratio - target) / se);
        }
        report.below("mc_variance_scale_ratio_max_abs_z", worst, 3.0);
    }

    // Grid transforms.
    {
        const auto path = ens.path(0);
        SelfSimilarGrid x;
        for (std::size_t i = 0; i < path.size(); ++i) {
            x.points.push_back(sample_time(scheme, static_cast<std::int64_t>(i)));
            x.values.push_back(path[i]);
        }
        const auto y = inverse_quasi_lamperti(x, scheme.H(), scheme.alpha());
        const auto back = quasi_lamperti(y, scheme.H(), scheme.alpha());
        const auto again = inverse_quasi_lamperti(back, scheme.H(), scheme.alpha());
        double worst = 0.0;
        for (std::size_t i = 0; i < path.size(); ++i) {
            worst = std::max(worst, rel_err(back.values[i], x.values[i]));
            worst = std::max(worst, rel_err(back.points[i], x.points[i]));
            worst = std::max(worst, rel_err(again.values[i], y.values[i]));
        }
        report.below("quasi_lamperti_roundtrip", worst, 1e-12);
    }

    run.checks = report.take();
    return run;
}

}  // namespace dsi
