#include <doctest.h>

#include <numbers>
#include <random>

#include "conebell/grid.hpp"
#include "conebell/quantum.hpp"
#include "oracles.hpp"

using namespace conebell;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

double max_abs(const Matrix3c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("spin_component_matrix at phi = 0") {
    Matrix3c expected;
    expected << 2, 1, 1,
                1, 2, -1,
                1, -1, 2;
    CHECK(max_abs(spin_component_matrix(0.0).squared - expected / 3.0) < 1e-15);
}

TEST_CASE("Spin1Observable invariants on random angles") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int t = 0; t < 200; ++t) {
        const double phi = angle(rng);
        const auto obs = spin_component_matrix(phi);
        CHECK(max_abs(obs.squared - obs.squared.adjoint()) < 1e-12);

        const Eigen::SelfAdjointEigenSolver<Matrix3c> s2(obs.squared);
        CHECK(std::abs(s2.eigenvalues()(0)) < 1e-12);
        CHECK(std::abs(s2.eigenvalues()(1) - 1.0) < 1e-12);
        CHECK(std::abs(s2.eigenvalues()(2) - 1.0) < 1e-12);

        const Matrix3c o = obs.traceless();
        const Eigen::SelfAdjointEigenSolver<Matrix3c> so(o);
        CHECK(std::abs(so.eigenvalues()(0) + 2.0 / 3.0) < 1e-12);
        CHECK(std::abs(so.eigenvalues()(2) - 1.0 / 3.0) < 1e-12);
        CHECK(std::abs(o.trace()) < 1e-12);

        const Matrix3c trio = obs.squared + spin_component_matrix(phi + 2 * pi / 3).squared +
                              spin_component_matrix(phi + 4 * pi / 3).squared;
        CHECK(max_abs(trio - 2.0 * Matrix3c::Identity()) < 1e-12);
    }
}

TEST_CASE("S^2(phi) is a squared spin component along a cone direction") {
    const auto [sx, sy, sz] = spin1_matrices();
    // spin-1 algebra: [Sx, Sy] = i Sz and S^2 = 2
    const std::complex<double> i(0, 1);
    CHECK(max_abs(sx * sy - sy * sx - i * sz) < 1e-15);
    CHECK(max_abs(sx * sx + sy * sy + sz * sz - 2.0 * Matrix3c::Identity()) < 1e-15);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    for (int t = 0; t < 100; ++t) {
        const double phi = angle(rng);
        const auto n = cone_direction(-phi - pi);
        const Matrix3c s_n = n[0] * sx + n[1] * sy + n[2] * sz;
        CHECK(max_abs(s_n * s_n - spin_component_matrix(phi).squared) < 1e-12);
    }
}

TEST_CASE("null_direction_state and the spin-1 Malus law") {
    auto overlap = [](double a, double b) {
        return std::norm(null_direction_state(a).dot(null_direction_state(b)));
    };
    CHECK(overlap(0.3, 0.3) == Approx(1.0).epsilon(1e-12));
    CHECK(overlap(0.3, 0.3 + 2 * pi / 3) < 1e-12);
    CHECK(overlap(0.0, pi / 2) == Approx(1.0 / 9.0).epsilon(1e-12));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-pi, 3 * pi);
    for (int t = 0; t < 100; ++t) {
        const double a = angle(rng), b = angle(rng);
        const auto na = cone_direction(a), nb = cone_direction(b);
        const double dot = na[0] * nb[0] + na[1] * nb[1] + na[2] * nb[2];
        CHECK(std::abs(overlap(a, b) - dot * dot) < 1e-10);
        const auto v = null_direction_state(a);
        CHECK((spin_component_matrix(a).squared * v).norm() < 1e-10);
    }
}

TEST_CASE("biased_ghz amplitudes") {
    SUBCASE("N = 2") {
        const auto s = biased_ghz(2);
        REQUIRE(s.amplitudes.size() == 9);
        CHECK(s.amplitudes[0] == std::complex<double>(2.0 / 3.0));  // |-1,-1>
        CHECK(s.amplitudes[4] == std::complex<double>(1.0 / 3.0));  // |0,0>
        CHECK(s.amplitudes[8] == std::complex<double>(2.0 / 3.0));  // |1,1>
    }
    SUBCASE("N = 3 carries the odd sign on |1,1,1>") {
        const auto s = biased_ghz(3);
        CHECK(s.amplitudes[26] == std::complex<double>(-2.0 / 3.0));
        CHECK(s.amplitudes[13] == std::complex<double>(1.0 / 3.0));
    }
    for (int N = 2; N <= 8; ++N) {
        const auto s = biased_ghz(N);
        CHECK(s.squared_norm() == Approx(1.0).epsilon(1e-15));
        int nonzero = 0;
        for (auto a : s.amplitudes) {
            nonzero += a != std::complex<double>{};
        }
        CHECK(nonzero == 3);
    }
    CHECK_THROWS_AS(biased_ghz(1), std::invalid_argument);
    CHECK_THROWS_AS(biased_ghz(13), std::invalid_argument);
    CHECK_THROWS_AS(biased_ghz(5, 4), std::invalid_argument);
}

TEST_CASE("correlation_closed_form examples") {
    const double zero[] = {0.0, 0.0};
    CHECK(correlation_closed_form(zero) == Approx(16.0 / 81.0).epsilon(1e-15));
    const double third[] = {pi / 3, 0.0};
    CHECK(std::abs(correlation_closed_form(third)) < 1e-15);
    const double half[] = {pi / 2, pi / 2};
    CHECK(std::abs(correlation_closed_form(half)) < 1e-15);
    const double single[] = {0.0};
    CHECK_THROWS_AS(correlation_closed_form(single), std::invalid_argument);
}

TEST_CASE("correlation_oracle: hand contraction and agreement with the closed form") {
    const double zero[] = {0.0, 0.0};
    CHECK(correlation_oracle(zero) == Approx(16.0 / 81.0).epsilon(1e-14));
    const double half[] = {pi / 2, pi / 2};
    CHECK(std::abs(correlation_oracle(half)) < 1e-14);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    for (int N = 2; N <= 6; ++N) {
        const auto state = biased_ghz(N);
        std::vector<double> phis(static_cast<std::size_t>(N));
        for (int t = 0; t < 300; ++t) {
            for (auto& p : phis) {
                p = angle(rng);
            }
            CHECK(std::abs(correlation_oracle(state, phis) - correlation_closed_form(phis)) < 1e-10);
        }
    }
    const double wrong_size[] = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(correlation_oracle(biased_ghz(2), wrong_size), std::invalid_argument);
}

TEST_CASE("correlation bounded by 16 / 3^(2+N)") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    for (int N = 2; N <= 5; ++N) {
        const double bound = 16.0 / std::pow(3.0, 2 + N);
        for (int t = 0; t < 500; ++t) {
            std::vector<double> phis(static_cast<std::size_t>(N));
            for (auto& p : phis) {
                p = angle(rng);
            }
            CHECK(std::abs(correlation_closed_form(phis)) <= bound + 1e-15);
        }
    }
}

TEST_CASE("marginal nullity: summing any observer over a trio gives zero") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    for (int N = 2; N <= 5; ++N) {
        const auto state = biased_ghz(N);
        for (int t = 0; t < 100; ++t) {
            std::vector<double> phis(static_cast<std::size_t>(N));
            for (auto& p : phis) {
                p = angle(rng);
            }
            for (std::size_t x = 0; x < phis.size(); ++x) {
                double closed = 0.0, exact = 0.0;
                for (int j = 0; j < 3; ++j) {
                    auto shifted = phis;
                    shifted[x] += 2 * pi * j / 3;
                    closed += correlation_closed_form(shifted);
                    exact += correlation_oracle(state, shifted);
                }
                CHECK(std::abs(closed) < 1e-12);
                CHECK(std::abs(exact) < 1e-12);
            }
        }
    }
}

TEST_CASE("qm_norm_discrete") {
    CHECK(qm_norm_discrete(2, 2) == Approx(256.0 / 729.0).epsilon(1e-14));
    CHECK(qm_norm_discrete(3, 2) == Approx(576.0 / 729.0).epsilon(1e-14));
    CHECK(qm_norm_discrete(3, 3) == Approx(1728.0 / 2187.0).epsilon(1e-14));
    for (int n = 1; n <= 4; ++n) {
        for (int N = 2; N <= 3; ++N) {
            CAPTURE(n);
            CAPTURE(N);
            CHECK(std::abs(qm_norm_discrete(n, N) - oracle::brute_force_qm_norm(n, N)) < 1e-12);
        }
    }
    for (int n = 2; n <= 20; ++n) {
        for (int N = 2; N <= 8; ++N) {
            const double closed = 64.0 * std::pow(n, N) / std::pow(3.0, 4 + N);
            CHECK(qm_norm_discrete(n, N) == Approx(closed).epsilon(1e-14));
        }
    }
    // n = 1 departs from the closed form
    CHECK(qm_norm_discrete(1, 3) == Approx(0.0));
    CHECK(qm_norm_discrete(1, 2) != Approx(64.0 / 729.0));
    CHECK_THROWS_AS(qm_norm_discrete(0, 2), std::invalid_argument);
}

TEST_CASE("qm_norm_continuous") {
    CHECK(qm_norm_continuous(2) == Approx(64.0 * 4 * pi * pi / 729.0).epsilon(1e-15));
    CHECK(qm_norm_continuous(3) == Approx(64.0 * 8 * pi * pi * pi / 2187.0).epsilon(1e-15));
    CHECK(qm_norm_continuous(2) == Approx(3.4659).epsilon(1e-4));
    CHECK(qm_norm_continuous(3) == Approx(7.2589).epsilon(1e-4));
    // the grid sum times (2 pi / n)^N reproduces it for every n >= 2
    for (int N = 2; N <= 4; ++N) {
        for (int n : {2, 7, 50}) {
            CHECK(qm_norm_discrete(n, N) * std::pow(2 * pi / n, N) ==
                  Approx(qm_norm_continuous(N)).epsilon(1e-13));
        }
    }
}
