#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsi/config.hpp"
#include "dsi/markov_cov.hpp"
#include "dsi/sbm_sim.hpp"
#include "dsi/spectral.hpp"

namespace dsi {

struct CheckResult {
    std::string name;
    bool passed = false;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
};

/// Everything `verify` computes, kept for artifact export.
struct VerificationRun {
    std::vector<CheckResult> checks;
    std::optional<PathEnsemble> ensemble;
    SpectralEvaluation spectrum;
    bool all_passed() const;
};

/// Cross-checks the covariance reconstruction, matrix form, closed-form and
/// series spectra, Fourier inversion and Monte Carlo estimates against the
/// Simple Brownian Motion oracle for the configured scheme.
VerificationRun run_verification(const RunConfig& config);

}  // namespace dsi
