#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dsi {

/// Unvalidated scheme fields, as read from a config or a caller.
struct SchemeParams {
    double H = 0.0;
    double alpha = 0.0;
    int T = 0;
    int q = 0;
    std::vector<double> s;
};

/// Geometric sampling of a DSI process with scale l = alpha^T.
///
/// Within every scale interval [l^n, l^{n+1}) the process is observed at
/// l^n * s_u for u = 0..q-1, with 1 <= s_0 < ... < s_{q-1} < l. Instances
/// only come out of validate_scheme() and are immutable.
class SamplingScheme {
public:
    double H() const noexcept { return H_; }
    double alpha() const noexcept { return alpha_; }
    int T() const noexcept { return T_; }
    int q() const noexcept { return static_cast<int>(s_.size()); }
    std::span<const double> s() const noexcept { return s_; }
    double s(int u) const { return s_.at(static_cast<std::size_t>(u)); }

    /// l = alpha^T
    double scale() const noexcept { return scale_; }

    /// alpha^(n*T) with range checking.
    double block_factor(std::int64_t n) const;

    SchemeParams params() const;

private:
    friend SamplingScheme validate_scheme(const SchemeParams& raw);

/// Flattens per-partition offsets: partition k of each scale interval is
/// [alpha^k, alpha^{k+1}) and its offsets x in [1, alpha) become s = alpha^k * x.
/// Exactly T partitions are expected; empty partitions are allowed.
SchemeParams scheme_from_partitions(double H, double alpha,
                                    const std::vector<std::vector<double>>& partitions);
    SamplingScheme() = default;

    double H_ = 0.0;
    double alpha_ = 0.0;
    int T_ = 0;
    std::vector<double> s_;
    double scale_ = 0.0;
};

struct EmbeddedIndex {
    std::int64_t kappa = 0;
    std::int64_t n = 0;
    int u = 0;

    friend bool operator==(const EmbeddedIndex&, const EmbeddedIndex&) = default;
};

struct SamplePoint {
    EmbeddedIndex index;
    double time = 0.0;
};

SamplingScheme validate_scheme(const SchemeParams& raw);

/// Flattens per-partition offsets: partition k of each scale interval is
/// [alpha^k, alpha^{k+1}) and its offsets x in [1, alpha) become s = alpha^k * x.
/// Exactly T partitions are expected; empty partitions are allowed.
SchemeParams scheme_from_partitions(double H, double alpha,
                                    const std::vector<std::vector<double>>& partitions);

/// kappa = n*q + u with floor semantics, so 0 <= u < q for negative kappa too.
EmbeddedIndex split_index(std::int64_t kappa, int q);

std::int64_t embed_index(std::int64_t n, int u, int q);

/// Physical time alpha^(nT) * s_u of the flat index kappa.
double sample_time(const SamplingScheme& scheme, std::int64_t kappa);

std::vector<SamplePoint> sample_points(const SamplingScheme& scheme, std::int64_t kappa_min,
                                       std::int64_t kappa_max);

}  // namespace dsi
