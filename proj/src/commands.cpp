#include "dsi/commands.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>

#include "dsi/csv.hpp"
#include "dsi/error.hpp"
#include "dsi/markov_cov.hpp"
#include "dsi/sbm_sim.hpp"
#include "dsi/spectral.hpp"
#include "dsi/verify.hpp"

namespace dsi {

namespace {

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
            }
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }
    void finish() {
        stream_->flush();
        if (!*stream_) {
            throw Error(ErrorCode::IoError, "write failed");
        }
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

MarkovCovarianceModel configured_model(const RunConfig& config, const SamplingScheme& scheme) {
    if (config.R0) {
        return make_markov_model(scheme, *config.R0, *config.R1);
    }
    return model_from_sbm(scheme);
}

void write_ensemble(std::ostream& out, const PathEnsemble& ensemble) {
    CsvWriter csv(out, {"path_id", "kappa", "n", "u", "time", "value"});
    const auto points = sample_points(ensemble.scheme, ensemble.kappa_min, ensemble.kappa_max);
    for (std::size_t p = 0; p < ensemble.paths; ++p) {
        const auto row = ensemble.path(p);
        for (std::size_t i = 0; i < points.size(); ++i) {
            csv.field(p).field(points[i].index.kappa).field(points[i].index.n)
                .field(points[i].index.u).field(points[i].time).field(row[i]);
            csv.end_row();
        }
    }
}

void write_spectrum(std::ostream& out, const SpectralEvaluation& evaluation) {
    CsvWriter csv(out, {"omega", "u", "v", "re", "im"});
    for (std::size_t k = 0; k < evaluation.omegas.size(); ++k) {
        const auto& g = evaluation.matrices[k];
        for (int u = 0; u < g.rows(); ++u) {
            for (int v = 0; v < g.cols(); ++v) {
                csv.field(evaluation.omegas[k]).field(u).field(v).field(g(u, v).real())
                    .field(g(u, v).imag());
                csv.end_row();
            }
        }
    }
}

void write_covariances(std::ostream& out, const MarkovCovarianceModel& model,
                       std::int64_t tau_max) {
    CsvWriter csv(out, {"tau", "u", "v", "value"});
    for (std::int64_t tau = 0; tau <= tau_max; ++tau) {
        const auto Q = covariance_V(model, 0, tau).matrix;
        for (int u = 0; u < model.q(); ++u) {
            for (int v = 0; v < model.q(); ++v) {
                csv.field(tau).field(u).field(v).field(Q(u, v));
                csv.end_row();
            }
        }
    }
}

void write_estimates(std::ostream& out, const PathEnsemble& ensemble, std::int64_t tau_max) {
    const auto& scheme = ensemble.scheme;
    const int q = scheme.q();
    CsvWriter csv(out, {"j_or_uv", "lag", "estimate", "std_error", "analytic", "z_score"});
    const auto row = [&](const std::string& label, std::int64_t lag, const EstimateWithError& e,
                         double analytic) {
        csv.field(label).field(lag).field(e.value).field(e.std_error).field(analytic)
            .field((e.value - analytic) / e.std_error);
        csv.end_row();
    };
    const auto R = estimate_R(ensemble);
    for (int j = 0; j < q; ++j) {
        row(std::to_string(j), 0, R.R0[static_cast<std::size_t>(j)],
            sbm_covariance_exact(scheme, j, j));
        row(std::to_string(j), 1, R.R1[static_cast<std::size_t>(j)],
            sbm_covariance_exact(scheme, j + 1, j));
    }
    for (const auto& Q : estimate_Q(ensemble, tau_max)) {
        for (int u = 0; u < q; ++u) {
            for (int v = 0; v < q; ++v) {
                row(std::to_string(u) + ":" + std::to_string(v), Q.tau, Q.at(u, v),
                    sbm_covariance_exact(scheme, Q.tau * q + u, v));
            }
        }
    }
}

void write_report(std::ostream& out, const VerificationRun& run) {
    CsvWriter csv(out, {"check_name", "status", "observed", "expected", "tolerance"});
    for (const auto& check : run.checks) {
        csv.field(check.name).field(check.passed ? "PASS" : "FAIL").field(check.observed)
            .field(check.expected).field(check.tolerance);
        csv.end_row();
    }
}

SpectralEvaluation configured_spectrum(const RunConfig& config, const SamplingScheme& scheme,
                                       std::size_t points) {
    const auto grid = uniform_omega_grid(points);
    if (config.method == "sbm") {
        return spectral_sbm(scheme, grid);
    }
    const auto model = configured_model(config, scheme);
    if (config.method == "series") {
        return spectral_series(model, grid, config.tol);
    }
    return spectral_markov(model, grid);
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto scheme = validate_scheme(config.scheme);
    switch (config.command) {
        case Command::Simulate: {
            const std::int64_t kmax =
                config.kappa_max.value_or((config.tau_max + 1) * scheme.q() - 1);
            const auto ensemble =
                simulate_paths(scheme, config.kappa_min, kmax, config.paths, config.seed);
            Output o(config.out, out);
            write_ensemble(o.stream(), ensemble);
            o.finish();
            return kExitOk;
        }
        case Command::Covariance: {
            const auto model = configured_model(config, scheme);
            Output o(config.out, out);
            write_covariances(o.stream(), model, config.tau_max);
            o.finish();
            return kExitOk;
        }
        case Command::Spectrum: {
            const auto evaluation = configured_spectrum(config, scheme, config.omega_points);
            Output o(config.out, out);
            write_spectrum(o.stream(), evaluation);
            o.finish();
            return kExitOk;
        }
        case Command::Invert: {
            const auto evaluation = configured_spectrum(config, scheme, config.omega_points);
            std::vector<std::int64_t> taus;
            for (std::int64_t tau = 0; tau <= config.tau_max; ++tau) {
                taus.push_back(tau);
            }
            const auto inverted = invert_spectrum(evaluation, scheme, taus);
            const auto model = configured_model(config, scheme);
            Output o(config.out, out);
            CsvWriter csv(o.stream(), {"tau", "u", "v", "value", "model"});
            for (std::size_t i = 0; i < taus.size(); ++i) {
                const auto Q = covariance_V(model, 0, taus[i]).matrix;
                for (int u = 0; u < scheme.q(); ++u) {
                    for (int v = 0; v < scheme.q(); ++v) {
                        csv.field(taus[i]).field(u).field(v)
                            .field(inverted.covariances[i](u, v)).field(Q(u, v));
                        csv.end_row();
                    }
                }
            }
            o.finish();
            err << "max imaginary residue: " << format_double(inverted.max_imag_residue) << '\n';
            return kExitOk;
        }
        case Command::Verify: {
            const auto verification = run_verification(config);
            if (config.out.empty()) {
                write_report(out, verification);
            } else {
                std::error_code ec;
                std::filesystem::create_directories(config.out, ec);
                if (ec) {
                    throw Error(ErrorCode::IoError, "cannot create '" + config.out + "'");
                }
                const std::filesystem::path dir(config.out);
                {
                    Output o((dir / "verify_report.csv").string(), out);
                    write_report(o.stream(), verification);
                    o.finish();
                }
                {
                    Output o((dir / "estimates.csv").string(), out);
                    write_estimates(o.stream(), *verification.ensemble, config.tau_max);
                    o.finish();
                }
                {
                    Output o((dir / "spectrum.csv").string(), out);
                    write_spectrum(o.stream(), verification.spectrum);
                    o.finish();
                }
                {
                    Output o((dir / "covariance.csv").string(), out);
                    write_covariances(o.stream(), configured_model(config, scheme),
                                      config.tau_max);
                    o.finish();
                }
            }
            std::size_t failed = 0;
            for (const auto& check : verification.checks) {
                if (!check.passed) {
                    ++failed;
                    err << "FAIL " << check.name << '\n';
                }
            }
            err << verification.checks.size() - failed << "/" << verification.checks.size()
                << " checks passed\n";
            return verification.all_passed() ? kExitOk : kExitCheckFailed;
        }
    }
    return kExitConfigError;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(config, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::ModelUnstable:
            case ErrorCode::ToleranceUnreachable:
                return kExitModelUnstable;
            case ErrorCode::IoError:
                return kExitIoError;
            default:
                return kExitConfigError;
        }
    }
}

}  // namespace dsi
