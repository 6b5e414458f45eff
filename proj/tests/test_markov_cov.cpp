#include <doctest.h>

#include <cmath>
#include <random>

#include "dsi/error.hpp"
#include "dsi/markov_cov.hpp"
#include "dsi/sbm_sim.hpp"
#include "test_support.hpp"

using namespace dsi;
using testing::reference_scheme;
using testing::rel_err;

namespace {

ErrorCode model_error(const SamplingScheme& scheme, std::vector<double> R0,
                      std::vector<double> R1) {
    try {
        make_markov_model(scheme, std::move(R0), std::move(R1));
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("model_from_sbm reproduces the Simple Brownian Motion one-step covariances") {
    const auto m1 = model_from_sbm(reference_scheme(1.0));
    CHECK(m1.R0()[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m1.R0()[1] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(m1.R1()[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m1.R1()[1] == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(m1.ftilde_q() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const auto m05 = model_from_sbm(reference_scheme(0.5));
    CHECK(m05.R0()[0] == 1.0);
    CHECK(m05.R0()[1] == 1.5);
    CHECK(m05.R1()[0] == 1.0);
    CHECK(m05.R1()[1] == 1.5);

    // f̃(q-1) = alpha^{TH'} < alpha^{TH} for any H.
    for (double H : {0.1, 0.5, 0.9, 2.0}) {
        const auto m = model_from_sbm(reference_scheme(H));
        CHECK(m.decay_ratio() == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-14));
    }
}

TEST_CASE("model construction validates its invariants") {
    const auto scheme = reference_scheme(1.0);
    CHECK(model_error(scheme, {0.0, 3.0}, {1.0, 1.0}) == ErrorCode::InvalidModel);
    CHECK(model_error(scheme, {2.0, 3.0}, {0.0, 1.0}) == ErrorCode::InvalidModel);
    CHECK(model_error(scheme, {2.0}, {1.0}) == ErrorCode::InvalidModel);
    // R_0(1)^2 > R_0(0) R_1(0)
    CHECK(model_error(scheme, {2.0, 3.0}, {2.5, 1.0}) == ErrorCode::InvalidModel);
    // wrap-around lag: R_1(1)^2 <= R_1(0) l^{2H} R_0(0) = 3 * 4 * 2 = 24
    CHECK(model_error(scheme, {2.0, 3.0}, {1.0, 5.0}) == ErrorCode::InvalidModel);
    CHECK_NOTHROW(make_markov_model(scheme, {2.0, 3.0}, {1.0, 4.8}));
}

TEST_CASE("f_tilde: base case, sbm values and periodic extension") {
    const auto sbm = model_from_sbm(reference_scheme(1.0));
    CHECK(f_tilde(sbm, -1) == 1.0);
    CHECK(f_tilde(sbm, 0) == doctest::Approx(1.0));
    CHECK(f_tilde(sbm, 1) == doctest::Approx(std::sqrt(2.0)));

    // f = (1, sqrt 2): r + 1 = 4 = 2*2 + 0 gives f̃(1)^2 f̃(-1) = 2, the
    // direct product f(0) f(1) f(0) f(1).
    const auto model = make_markov_model(reference_scheme(1.0), {2.0, 3.0}, {2.0, 3.0 * std::sqrt(2.0)});
    CHECK(f_tilde(model, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(f_tilde(model, 3) == doctest::Approx(2.0).epsilon(1e-15));

    // Direct product over periodic f against the closed form.
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int q = 1 + static_cast<int>(gen() % 5);
        const auto m = testing::random_model(gen, testing::random_scheme(gen, q));
        double product = 1.0;
        for (std::int64_t r = 0; r <= 4 * q; ++r) {
            product *= m.f()[static_cast<std::size_t>(r % q)];
            REQUIRE(rel_err(f_tilde(m, r), product) <= 1e-12);
        }
        // Negative arguments follow H(-nq + v) = f̃(q-1)^{-n} f̃(v-1).
        for (std::int64_t r = -1; r >= -3 * q; --r) {
            REQUIRE(rel_err(f_tilde(m, r) * m.f()[static_cast<std::size_t>(((r + 1) % q + q) % q)],
                            f_tilde(m, r + 1)) <= 1e-12);
        }
    }
}

TEST_CASE("covariance_W matches the analytic Simple Brownian Motion covariance") {
    const auto s05 = reference_scheme(0.5);
    CHECK(covariance_W(model_from_sbm(s05), 0, 2) == doctest::Approx(1.0).epsilon(1e-15));

    const auto s1 = reference_scheme(1.0);
    const auto m1 = model_from_sbm(s1);
    CHECK(covariance_W(m1, 0, 1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(covariance_W(m1, 0, 2) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(covariance_W(m1, 1, 1) == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-15));

    for (double H : {0.5, 0.75, 1.0, 1.7}) {
        const auto scheme = reference_scheme(H);
        const auto model = model_from_sbm(scheme);
        for (std::int64_t k = 0; k <= 10; ++k) {
            CHECK(covariance_W(model, k, 0) == doctest::Approx(variance_W(model, k)));
            for (std::int64_t tau = 0; tau <= 12; ++tau) {
                REQUIRE(rel_err(covariance_W(model, k, tau),
                                sbm_covariance_exact(scheme, k, k + tau)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("covariance_W negative lags follow covariance symmetry") {
    const auto scheme = reference_scheme(0.8);
    const auto model = model_from_sbm(scheme);
    for (std::int64_t k = 0; k <= 8; ++k) {
        for (std::int64_t tau = -k; tau <= 8; ++tau) {
            REQUIRE(rel_err(covariance_W(model, k, tau), covariance_W(model, k + tau, -tau)) <=
                    1e-12);
        }
    }
    // Reaching before kappa = 0 uses W(kappa + q) ~ l^H W(kappa).
    const double l2H = std::pow(scheme.scale(), 2.0 * scheme.H());
    CHECK(rel_err(covariance_W(model, 1, -4), covariance_W(model, 1 + 2, -4) / l2H) <= 1e-12);
    CHECK_THROWS_AS(covariance_W(model, -1, 0), Error);
}

TEST_CASE("block form of the negative-lag identity needs alpha^{-2tTH}, not alpha^{-2tqH}") {
    // R_kappa(-tq + s) against R_{kappa+s}(tq - s) for q = 2, T = 1 and for q = T = 2.
    const auto check = [](const SamplingScheme& scheme, bool verbatim_holds) {
        const auto model = model_from_sbm(scheme);
        const int q = scheme.q();
        const double a = scheme.alpha();
        const double H = scheme.H();
        for (std::int64_t k = 2 * q; k <= 4 * q; ++k) {
            for (std::int64_t t = 1; t <= 2; ++t) {
                for (std::int64_t s = 0; s < q; ++s) {
                    const double lhs = covariance_W(model, k, -t * q + s);
                    const double tail = covariance_W(model, k + s, t * q - s);
                    const double by_blocks = std::pow(a, -2.0 * t * scheme.T() * H) * tail;
                    const double verbatim = std::pow(a, -2.0 * t * q * H) * tail;
                    REQUIRE(rel_err(by_blocks, lhs) <= 1e-12);
                    REQUIRE((rel_err(verbatim, lhs) <= 1e-12) == verbatim_holds);
                }
            }
        }
    };
    check(reference_scheme(1.0), false);
    check(validate_scheme({1.0, 2.0, 2, 2, {1.0, 2.5}}), true);
}

TEST_CASE("covariance_V: entrywise assembly, scaling and the product form") {
    const auto scheme = reference_scheme(1.0);
    const auto model = model_from_sbm(scheme);

    const auto Q0 = covariance_V(model, 0, 0).matrix;
    CHECK(Q0(0, 0) == doctest::Approx(2.0));
    CHECK(Q0(1, 1) == doctest::Approx(3.0));
    // E[W(0) W(1)] = sqrt2 sqrt2 min(1, 1.5) = 2
    CHECK(Q0(0, 1) == doctest::Approx(2.0));
    CHECK(Q0(1, 0) == doctest::Approx(2.0));

    const auto Q1 = covariance_V(model, 0, 1).matrix;
    CHECK(Q1(0, 0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(Q1(0, 1) == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-15));

    // The product form differs only at tau = 0 strictly above the diagonal.
    const auto P0 = covariance_V_product_form(model, 0, 0);
    CHECK(P0(0, 0) == doctest::Approx(2.0));
    CHECK(P0(0, 1) == doctest::Approx(3.0));
    CHECK(P0(1, 0) == doctest::Approx(2.0));
    CHECK(P0(1, 1) == doctest::Approx(3.0));

    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int q = 1 + static_cast<int>(gen() % 5);
        const auto m = testing::random_model(gen, testing::random_scheme(gen, q));
        const double a2TH = std::pow(m.scheme().alpha(), 2.0 * m.scheme().T() * m.scheme().H());
        for (std::int64_t n = -2; n <= 2; ++n) {
            for (std::int64_t tau = 0; tau <= 6; ++tau) {
                const auto Q = covariance_V(m, n, tau).matrix;
                const auto base = covariance_V(m, 0, tau).matrix;
                const auto product = covariance_V_product_form(m, n, tau);
                for (int u = 0; u < q; ++u) {
                    for (int v = 0; v < q; ++v) {
                        REQUIRE(rel_err(Q(u, v), std::pow(a2TH, n) * base(u, v)) <= 1e-12);
                        if (tau > 0 || u >= v) {
                            REQUIRE(rel_err(Q(u, v), product(u, v)) <= 1e-12);
                        }
                    }
                }
            }
        }
        const auto Q0m = covariance_V(m, 0, 0).matrix;
        for (int u = 0; u < q; ++u) {
            REQUIRE(rel_err(Q0m(u, u), m.R0()[static_cast<std::size_t>(u)]) <= 1e-14);
        }
        REQUIRE((Q0m - Q0m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * Q0m.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("Markov product rule and scale invariance on random stable models") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 60; ++trial) {
        const int q = 1 + static_cast<int>(gen() % 6);
        const auto model = testing::random_model(gen, testing::random_scheme(gen, q));
        const double l2H = std::pow(model.scheme().scale(), 2.0 * model.scheme().H());
        for (std::int64_t k = 0; k <= 10; ++k) {
            for (std::int64_t t1 = 0; t1 <= 6; ++t1) {
                REQUIRE(rel_err(covariance_W(model, k + q, t1), l2H * covariance_W(model, k, t1)) <=
                        1e-12);
                for (std::int64_t t2 = 0; t2 <= 6; ++t2) {
                    const double lhs =
                        covariance_W(model, k, t1 + t2) * covariance_W(model, k + t1, 0);
                    const double rhs =
                        covariance_W(model, k, t1) * covariance_W(model, k + t1, t2);
                    REQUIRE(rel_err(lhs, rhs) <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("doob_factorization") {
    const auto model = model_from_sbm(reference_scheme(1.0));
    const auto doob = doob_factorization(model, 0, 20);
    CHECK(doob.H[0] == 1.0);
    CHECK(doob.H[1] == doctest::Approx(1.0));
    CHECK(doob.H[2] == doctest::Approx(std::sqrt(2.0)));
    for (std::size_t i = 1; i < doob.G.size(); ++i) {
        CHECK(doob.G[i] / doob.H[i] >= doob.G[i - 1] / doob.H[i - 1]);
    }
    const auto wide = doob_factorization(model, 0, 20);
    for (std::int64_t k = 0; k <= 10; ++k) {
        for (std::int64_t tau = 0; tau <= 10; ++tau) {
            const double rebuilt = wide.G[static_cast<std::size_t>(k)] *
                                   wide.H[static_cast<std::size_t>(k + tau)];
            REQUIRE(rel_err(rebuilt, covariance_W(model, k, tau)) <= 1e-12);
        }
    }

    // Cauchy-Schwarz-consistent inputs give a nondecreasing G/H.
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int q = 1 + static_cast<int>(gen() % 5);
        const auto m = testing::random_model(gen, testing::random_scheme(gen, q));
        const auto d = doob_factorization(m, 0, 6 * q);
        for (std::size_t i = 1; i < d.G.size(); ++i) {
            REQUIRE(d.G[i] / d.H[i] >= d.G[i - 1] / d.H[i - 1] * (1.0 - 1e-12));
        }
    }
    CHECK_THROWS_AS(doob_factorization(model, -1, 3), Error);
}
