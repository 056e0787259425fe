#pragma once

// Setting grids, deterministic strategies and their Fourier witnesses.
//
// Every observer measures squared spin components along cone directions
// n(phi) = (sqrt(2) cos phi, sqrt(2) sin phi, 1) / sqrt(3). The settings form a
// uniform grid of 3n angles, phi(m) = 2 pi m / (3n), grouped into n trios
// {k, k + n, k + 2n} of mutually orthogonal directions. A deterministic local
// strategy picks, in every trio, the one setting that yields the null outcome.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conebell {

class TrioGrid {
public:
    explicit TrioGrid(int trios);

    int trios() const noexcept { return trios_; }
    int size() const noexcept { return 3 * trios_; }

    double angle(int index) const { return angles_.at(static_cast<std::size_t>(index)); }
    std::span<const double> angles() const noexcept { return angles_; }

    /// Grid index of setting j (0..2) in trio k (0..n-1).
    int index(int trio, int member) const noexcept { return trio + trios_ * member; }
    std::array<int, 3> trio(int k) const noexcept { return {k, k + trios_, k + 2 * trios_}; }

    /// Grid-sampled cos / sin at frequency 1 or 2, as 3n-vectors.
    std::vector<double> cosines(int frequency) const;
    std::vector<double> sines(int frequency) const;

    friend bool operator==(const TrioGrid&, const TrioGrid&) = default;

private:
    int trios_;
    std::vector<double> angles_;
};

TrioGrid build_grid(int trios);

/// One observer's deterministic strategy: choice j_k in {0,1,2} per trio.
class SigmaAssignment {
public:
    SigmaAssignment() = default;
    explicit SigmaAssignment(std::vector<std::uint8_t> choices);

    /// Throws std::invalid_argument unless `indices` holds exactly one grid
    /// index from every trio of an n-trio grid.
    static SigmaAssignment from_indices(int trios, std::span<const int> indices);

    int trios() const noexcept { return static_cast<int>(choices_.size()); }
    std::span<const std::uint8_t> choices() const noexcept { return choices_; }

    /// Sorted grid indices k + n * j_k.
    std::vector<int> indices() const;
    /// 0/1 vector over the 3n grid indices.
    std::vector<std::uint8_t> characteristic() const;
    /// Grid indices not in the strategy (two per trio).
    std::vector<int> complement_indices() const;
    /// The mirror image {-m mod 3n}.
    SigmaAssignment reflected() const;

    /// Choice digits, e.g. "021".
    std::string encode() const;
    static SigmaAssignment decode(std::string_view digits);

    friend auto operator<=>(const SigmaAssignment&, const SigmaAssignment&) = default;

private:
    std::vector<std::uint8_t> choices_;
};

/// 3^n, or throws std::overflow_error when it does not fit in 64 bits.
std::uint64_t sigma_count(int trios);

/// Strategy with lexicographic rank `rank` (j_0 is the most significant digit).
SigmaAssignment sigma_at(int trios, std::uint64_t rank);

/// All 3^n strategies in lexicographic order of (j_0, ..., j_{n-1}).
std::vector<SigmaAssignment> enumerate_sigmas(int trios);

/// Strategies whose index set is at most two circular runs of consecutive grid
/// indices. Covers every rotation of the bunched and split shapes; sorted
/// lexicographically, without duplicates. O(n^2) members.
std::vector<SigmaAssignment> run_family_sigmas(int trios);

/// Number of maximal circular runs of consecutive indices in a subset of Z_m.
int circular_run_count(std::span<const int> sorted_indices, int modulus);

struct FourierWitness {
    std::complex<double> w1;
    std::complex<double> w2;

    double magnitude() const noexcept { return std::sqrt(std::norm(w1) + std::norm(w2)); }
    FourierWitness operator-() const noexcept { return {-w1, -w2}; }
};

FourierWitness fourier_witness(const SigmaAssignment& sigma, const TrioGrid& grid);

/// Same quantity through the characteristic vector: Re w1 = chi . c1 and so on.
FourierWitness fourier_witness_by_projection(const SigmaAssignment& sigma, const TrioGrid& grid);

/// Witness of an arbitrary set of grid indices (e.g. a complement).
FourierWitness witness_of_indices(std::span<const int> indices, const TrioGrid& grid);

/// Gram matrix of (c1, s1, c2, s2) sampled on the grid.
std::array<std::array<double, 4>, 4> frequency_gram(const TrioGrid& grid);

}  // namespace conebell
