#include <doctest.h>

#include <cmath>
#include <random>

#include "dsi/error.hpp"
#include "dsi/lamperti.hpp"
#include "dsi/rng.hpp"
#include "test_support.hpp"

using namespace dsi;
using testing::rel_err;

TEST_CASE("quasi_lamperti of constant and alternating sequences") {
    const auto x = quasi_lamperti({{0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}}, 1.0, 2.0);
    const double points[] = {1.0, 2.0, 4.0};
    for (int i = 0; i < 3; ++i) {
        CHECK(x.points[i] == doctest::Approx(points[i]).epsilon(1e-15));
        CHECK(x.values[i] == doctest::Approx(points[i]).epsilon(1e-15));
    }

    const auto alt = quasi_lamperti({{0.0, 1.0}, {1.0, -1.0}}, 0.5, 4.0);
    CHECK(alt.points[1] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(alt.values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(alt.values[1] == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("inverse_quasi_lamperti of power functions is constant") {
    const auto y = inverse_quasi_lamperti({{1.0, 2.0, 4.0}, {1.0, 2.0, 4.0}}, 1.0, 2.0);
    for (int i = 0; i < 3; ++i) {
        CHECK(y.times[i] == doctest::Approx(i).epsilon(1e-15));
        CHECK(y.values[i] == doctest::Approx(1.0).epsilon(1e-15));
    }
    const auto root = inverse_quasi_lamperti({{1.0, 4.0}, {1.0, 2.0}}, 0.5, 4.0);
    CHECK(root.times[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(root.values[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("transform parameter and domain errors") {
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ConfigError;
    };
    CHECK(code([] { quasi_lamperti({{0.0}, {1.0}}, 1.0, 1.0); }) == ErrorCode::BadBase);
    CHECK(code([] { quasi_lamperti({{0.0}, {1.0}}, -1.0, 2.0); }) == ErrorCode::BadIndex);
    CHECK(code([] { quasi_lamperti({{5000.0}, {1.0}}, 1.0, 2.0); }) == ErrorCode::RangeOverflow);
    CHECK(code([] { inverse_quasi_lamperti({{0.0}, {1.0}}, 1.0, 2.0); }) ==
          ErrorCode::NonPositivePoint);
    CHECK(code([] { inverse_quasi_lamperti({{-1.0}, {1.0}}, 1.0, 2.0); }) ==
          ErrorCode::NonPositivePoint);
    CHECK(code([] { inverse_quasi_lamperti({{1.0}, {1.0}}, 1.0, 0.5); }) == ErrorCode::BadBase);
}

TEST_CASE("roundtrip is the identity on random grids") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double H = 0.05 + 2.0 * unit(gen);
        const double alpha = 1.05 + 5.0 * unit(gen);
        StationaryGrid y;
        double t = -10.0 * unit(gen);
        for (int i = 0; i < 30; ++i) {
            t += 0.01 + unit(gen);
            y.times.push_back(t);
            y.values.push_back(unit(gen) * 4.0 - 2.0);
        }
        const auto x = quasi_lamperti(y, H, alpha);
        const auto back = inverse_quasi_lamperti(x, H, alpha);
        const auto x_again = quasi_lamperti(back, H, alpha);
        for (std::size_t i = 0; i < y.times.size(); ++i) {
            REQUIRE(std::abs(back.times[i] - y.times[i]) <= 1e-12 * std::max(1.0, std::abs(y.times[i])));
            REQUIRE(rel_err(back.values[i], y.values[i]) <= 1e-12);
            REQUIRE(rel_err(x_again.values[i], x.values[i]) <= 1e-12);
            REQUIRE(rel_err(x_again.points[i], x.points[i]) <= 1e-12);
        }
    }
}

TEST_CASE("embedded_to_stationary maps the sampling grid") {
    const auto scheme = testing::reference_scheme(1.0);
    // X(t) = t^H sampled on the grid becomes eta == 1.
    std::vector<double> path;
    for (std::int64_t k = 0; k <= 3; ++k) {
        path.push_back(std::pow(sample_time(scheme, k), scheme.H()));
    }
    const auto eta = embedded_to_stationary(path, 0, scheme);
    const double log15 = std::log2(1.5);
    const double times[] = {0.0, log15, 1.0, 1.0 + log15};
    for (int i = 0; i < 4; ++i) {
        CHECK(eta.times[i] == doctest::Approx(times[i]).epsilon(1e-14));
        CHECK(eta.values[i] == doctest::Approx(1.0).epsilon(1e-14));
    }

    // H = 0.5: eta(kappa) = time^{-1/2} W(kappa).
    const auto half = testing::reference_scheme(0.5);
    const std::vector<double> w = {0.3, -1.2, 0.8, 2.5, -0.1};
    const auto eta_half = embedded_to_stationary(w, 2, half);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double time = sample_time(half, static_cast<std::int64_t>(i) + 2);
        CHECK(eta_half.values[i] == doctest::Approx(w[i] / std::sqrt(time)).epsilon(1e-14));
    }
}

TEST_CASE("covariance transport: white-noise input gives self-similar covariance (Monte Carlo)") {
    // Y i.i.d. N(0,1) on times (0, 0.5, 1.7): c(tau) = [tau == 0], so
    // E[X(t1)X(t2)] = (t1 t2)^H [t1 == t2] and Var X(t) = t^{2H}.
    const double H = 0.8;
    const double alpha = 3.0;
    const std::vector<double> times = {0.0, 0.5, 1.7};
    const std::size_t P = 40000;
    const PhiloxStream stream(99, 0);
    std::vector<double> sum_sq(3, 0.0), sum_sq4(3, 0.0);
    double cross = 0.0, cross_sq = 0.0;
    for (std::size_t p = 0; p < P; ++p) {
        StationaryGrid y{times, {}};
        for (std::size_t i = 0; i < 3; ++i) {
            y.values.push_back(stream.normal(3 * p + i));
        }
        const auto x = quasi_lamperti(y, H, alpha);
        for (std::size_t i = 0; i < 3; ++i) {
            sum_sq[i] += x.values[i] * x.values[i];
            sum_sq4[i] += std::pow(x.values[i], 4);
        }
        cross += x.values[0] * x.values[2];
        cross_sq += std::pow(x.values[0] * x.values[2], 2);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        const double t = std::pow(alpha, times[i]);
        const double mean = sum_sq[i] / P;
        const double se = std::sqrt((sum_sq4[i] / P - mean * mean) / P);
        CHECK(std::abs(mean - std::pow(t, 2.0 * H)) < 4.0 * se);
    }
    const double se_cross = std::sqrt(cross_sq / P / P);
    CHECK(std::abs(cross / P) < 4.0 * se_cross);
}

TEST_CASE("covariance transport: random-phase cosine, exact phase average") {
    // Y(t) = cos(theta t + phi), phi uniform on 16 equally spaced phases, has
    // c(tau) = cos(theta tau)/2 exactly; X must carry (t1 t2)^H c(log_a t1 - log_a t2).
    const double H = 0.65;
    const double alpha = 2.5;
    const double theta = 0.9;
    const std::vector<double> times = {-1.0, 0.3, 1.0, 2.2};
    const int phases = 16;
    std::vector<std::vector<double>> acc(4, std::vector<double>(4, 0.0));
    for (int k = 0; k < phases; ++k) {
        const double phi = 2.0 * M_PI * k / phases;
        StationaryGrid y{times, {}};
        for (double t : times) {
            y.values.push_back(std::cos(theta * t + phi));
        }
        const auto x = quasi_lamperti(y, H, alpha);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                acc[i][j] += x.values[i] * x.values[j] / phases;
            }
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double t1 = std::pow(alpha, times[i]);
            const double t2 = std::pow(alpha, times[j]);
            const double lag = std::log(t1) / std::log(alpha) - std::log(t2) / std::log(alpha);
            const double expected = std::pow(t1 * t2, H) * 0.5 * std::cos(theta * lag);
            CHECK(acc[i][j] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}
