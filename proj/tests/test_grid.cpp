#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>
#include <set>

#include "conebell/grid.hpp"
#include "oracles.hpp"

using namespace conebell;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("build_grid: angles for small n") {
    SUBCASE("n = 1 is a single trio") {
        const auto g = build_grid(1);
        REQUIRE(g.size() == 3);
        CHECK(g.angle(0) == 0.0);
        CHECK(g.angle(1) == Approx(2 * pi / 3).epsilon(1e-15));
        CHECK(g.angle(2) == Approx(4 * pi / 3).epsilon(1e-15));
    }
    SUBCASE("n = 2") {
        const auto g = build_grid(2);
        const double expected[] = {0, pi / 3, 2 * pi / 3, pi, 4 * pi / 3, 5 * pi / 3};
        for (int m = 0; m < 6; ++m) {
            CHECK(g.angle(m) == Approx(expected[m]).epsilon(1e-15));
        }
        CHECK(g.trio(0) == std::array<int, 3>{0, 2, 4});
    }
    SUBCASE("n = 3, trio 1") {
        const auto g = build_grid(3);
        CHECK(g.trio(1) == std::array<int, 3>{1, 4, 7});
        CHECK(g.angle(1) == Approx(2 * pi / 9));
        CHECK(g.angle(4) == Approx(8 * pi / 9));
        CHECK(g.angle(7) == Approx(14 * pi / 9));
    }
    CHECK_THROWS_AS(build_grid(0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(-3), std::invalid_argument);
}

TEST_CASE("TrioGrid invariants for n = 1..12") {
    for (int n = 1; n <= 12; ++n) {
        const auto g = build_grid(n);
        std::set<double> distinct(g.angles().begin(), g.angles().end());
        CHECK(distinct.size() == static_cast<std::size_t>(3 * n));
        for (double a : g.angles()) {
            CHECK(a >= 0.0);
            CHECK(a < 2 * pi);
        }
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < 3; ++j) {
                CHECK(g.angle(g.index(k, j)) == Approx(2 * pi * k / (3 * n) + 2 * pi * j / 3));
            }
            const auto t = g.trio(k);
            for (int a = 0; a < 3; ++a) {
                const double diff = std::remainder(g.angle(t[(a + 1) % 3]) - g.angle(t[a]), 2 * pi);
                CHECK(std::abs(std::abs(diff) - 2 * pi / 3) < 1e-12);
            }
        }
    }
}

TEST_CASE("enumerate_sigmas: counts, order, one per trio") {
    CHECK(enumerate_sigmas(1).size() == 3);
    CHECK(enumerate_sigmas(3).size() == 27);
    const auto n1 = enumerate_sigmas(1);
    CHECK(n1[0].indices() == std::vector<int>{0});
    CHECK(n1[1].indices() == std::vector<int>{1});
    CHECK(n1[2].indices() == std::vector<int>{2});

    const auto n2 = enumerate_sigmas(2);
    REQUIRE(n2.size() == 9);
    CHECK(n2.front().encode() == "00");
    CHECK(n2.front().indices() == std::vector<int>{0, 1});

    for (int n = 1; n <= 6; ++n) {
        const auto all = enumerate_sigmas(n);
        CHECK(all.size() == sigma_count(n));
        CHECK(std::is_sorted(all.begin(), all.end()));
        CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
        for (std::size_t r = 0; r < all.size(); ++r) {
            const auto idx = all[r].indices();
            REQUIRE(idx.size() == static_cast<std::size_t>(n));
            std::set<int> residues;
            for (int m : idx) {
                residues.insert(m % n);
            }
            CHECK(residues.size() == static_cast<std::size_t>(n));
            const auto chi = all[r].characteristic();
            CHECK(std::count(chi.begin(), chi.end(), 1) == n);
            if (r % 37 == 0) {
                CHECK(sigma_at(n, r) == all[r]);
            }
        }
    }
}

TEST_CASE("SigmaAssignment validation") {
    CHECK_THROWS_AS(SigmaAssignment({0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(SigmaAssignment(std::vector<std::uint8_t>{}), std::invalid_argument);
    const int same_trio[] = {0, 3};
    CHECK_THROWS_AS(SigmaAssignment::from_indices(3, same_trio), std::invalid_argument);
    const int too_few[] = {0};
    CHECK_THROWS_AS(SigmaAssignment::from_indices(2, too_few), std::invalid_argument);
    const int out_of_range[] = {0, 7};
    CHECK_THROWS_AS(SigmaAssignment::from_indices(2, out_of_range), std::invalid_argument);
    CHECK_THROWS_AS(SigmaAssignment::decode("013"), std::invalid_argument);
    CHECK(SigmaAssignment::decode("021").encode() == "021");
    const int ok[] = {8, 0, 1};
    CHECK(SigmaAssignment::from_indices(3, ok).encode() == "002");
}

TEST_CASE("circular_run_count") {
    const int one[] = {7, 8, 0, 1};
    std::vector<int> v(std::begin(one), std::end(one));
    std::sort(v.begin(), v.end());
    CHECK(circular_run_count(v, 9) == 1);
    const int two[] = {3, 4, 8};
    CHECK(circular_run_count(two, 9) == 2);
    const int three[] = {0, 2, 4};
    CHECK(circular_run_count(three, 9) == 3);
    CHECK(circular_run_count({}, 9) == 0);
}

TEST_CASE("run_family_sigmas") {
    SUBCASE("n = 1: all three singletons") { CHECK(run_family_sigmas(1) == enumerate_sigmas(1)); }
    SUBCASE("n = 2: every strategy has at most two runs") {
        const auto all = enumerate_sigmas(2);
        for (const auto& s : all) {
            CHECK(circular_run_count(s.indices(), 6) <= 2);
        }
        CHECK(run_family_sigmas(2) == all);
    }
    SUBCASE("n = 3 contains the one-per-trio form of the split example") {
        // complement of {0, 2pi/9, 4pi/9, 10pi/9, 12pi/9, 14pi/9} = indices {3, 4, 8}
        const int idx[] = {3, 4, 8};
        const auto split = SigmaAssignment::from_indices(3, idx);
        const auto fam = run_family_sigmas(3);
        CHECK(std::find(fam.begin(), fam.end(), split) != fam.end());
        auto complement = split.complement_indices();
        CHECK(complement == std::vector<int>{0, 1, 2, 5, 6, 7});
        // and every rotation of the bunched run {0, 1, 2}
        for (int s = 0; s < 9; ++s) {
            std::vector<int> run{s, (s + 1) % 9, (s + 2) % 9};
            const auto sigma = SigmaAssignment::from_indices(3, run);
            CHECK(std::find(fam.begin(), fam.end(), sigma) != fam.end());
        }
    }
    SUBCASE("family is the exact <=2-run subset of all strategies, n <= 7") {
        for (int n = 1; n <= 7; ++n) {
            std::vector<SigmaAssignment> expected;
            for (const auto& s : enumerate_sigmas(n)) {
                if (circular_run_count(s.indices(), 3 * n) <= 2) {
                    expected.push_back(s);
                }
            }
            const auto fam = run_family_sigmas(n);
            CHECK(fam == expected);
            CHECK(std::is_sorted(fam.begin(), fam.end()));
        }
    }
    SUBCASE("size is O(n^2)") {
        // 3n single runs plus 3n(n-1)/2 split ones
        for (int n : {4, 10, 30}) {
            CHECK(run_family_sigmas(n).size() ==
                  static_cast<std::size_t>(3 * n + 3 * n * (n - 1) / 2));
        }
    }
}

TEST_CASE("fourier_witness: worked examples") {
    SUBCASE("n = 3 bunched around zero") {
        const auto g = build_grid(3);
        const int idx[] = {8, 0, 1};
        const auto w = fourier_witness(SigmaAssignment::from_indices(3, idx), g);
        CHECK(w.w1.real() == Approx(1 + 2 * std::cos(2 * pi / 9)).epsilon(1e-14));
        CHECK(std::abs(w.w1.imag()) < 1e-14);
        CHECK(w.w2.real() == Approx(1 + 2 * std::sin(pi / 18)).epsilon(1e-14));
        CHECK(w.w2.real() == Approx(1 + 2 * std::cos(4 * pi / 9)).epsilon(1e-14));
        CHECK(w.w1.real() == Approx(2.532).epsilon(1e-3));
        CHECK(w.w2.real() == Approx(1.347).epsilon(1e-3));
        CHECK(w.magnitude() == Approx(2.86822).epsilon(1e-6));
    }
    SUBCASE("n = 2, {0, pi/3}") {
        const int idx[] = {0, 1};
        const auto w = fourier_witness(SigmaAssignment::from_indices(2, idx), build_grid(2));
        CHECK(std::norm(w.w1) == Approx(3.0).epsilon(1e-14));
        CHECK(std::norm(w.w2) == Approx(1.0).epsilon(1e-14));
        CHECK(w.magnitude() == Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("n = 1, {0}") {
        const auto w = fourier_witness(SigmaAssignment({0}), build_grid(1));
        CHECK(w.w1 == std::complex<double>(1, 0));
        CHECK(w.w2 == std::complex<double>(1, 0));
        CHECK(w.magnitude() == Approx(std::sqrt(2.0)));
    }
    CHECK_THROWS_AS(fourier_witness(SigmaAssignment({0, 1}), build_grid(3)), std::invalid_argument);
}

TEST_CASE("frequency vectors are orthogonal with squared norm 3n/2 for n >= 2") {
    for (int n = 2; n <= 12; ++n) {
        const auto gram = frequency_gram(build_grid(n));
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const double expected = i == j ? 1.5 * n : 0.0;
                CHECK(std::abs(gram[i][j] - expected) < 1e-12);
            }
        }
    }
}

TEST_CASE("witness: projection route and naive exponentials agree") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 9; ++n) {
        const auto g = build_grid(n);
        for (int t = 0; t < 25; ++t) {
            const auto s = oracle::random_sigma(n, rng);
            const auto a = fourier_witness(s, g);
            const auto b = fourier_witness_by_projection(s, g);
            const auto c = oracle::naive_witness(s.indices(), n);
            CHECK(std::abs(a.w1 - b.w1) < 1e-12);
            CHECK(std::abs(a.w2 - b.w2) < 1e-12);
            CHECK(std::abs(a.w1 - c.w1) < 1e-12);
            CHECK(std::abs(a.w2 - c.w2) < 1e-12);
        }
    }
}

TEST_CASE("complement identity: witness of the complement is (-w1, -w2) for n >= 2") {
    for (int n = 2; n <= 5; ++n) {
        const auto g = build_grid(n);
        for (const auto& s : enumerate_sigmas(n)) {
            const auto w = fourier_witness(s, g);
            const auto c = witness_of_indices(s.complement_indices(), g);
            CHECK(std::abs(c.w1 + w.w1) < 1e-12);
            CHECK(std::abs(c.w2 + w.w2) < 1e-12);
        }
    }
}

TEST_CASE("witness magnitude is reflection invariant") {
    for (int n = 1; n <= 6; ++n) {
        const auto g = build_grid(n);
        for (const auto& s : enumerate_sigmas(n)) {
            const auto r = s.reflected();
            CHECK(r.reflected() == s);
            CHECK(std::abs(fourier_witness(r, g).magnitude() - fourier_witness(s, g).magnitude()) <
                  1e-12);
        }
    }
}
