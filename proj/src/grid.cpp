#include "conebell/grid.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "conebell/kernels.hpp"

namespace conebell {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

int positive_mod(int value, int modulus) {
    const int r = value % modulus;
    return r < 0 ? r + modulus : r;
}

}  // namespace

TrioGrid::TrioGrid(int trios) : trios_(trios) {
    if (trios < 1) {
        throw std::invalid_argument("trio count must be at least 1");
    }
    const int points = 3 * trios;
    angles_.reserve(static_cast<std::size_t>(points));
    for (int m = 0; m < points; ++m) {
        angles_.push_back(two_pi * m / points);
    }
}

std::vector<double> TrioGrid::cosines(int frequency) const {
    std::vector<double> out;
    out.reserve(angles_.size());
    for (int m = 0; m < size(); ++m) {
        out.push_back(std::cos(angle(positive_mod(frequency * m, size()))));
    }
    return out;
}

std::vector<double> TrioGrid::sines(int frequency) const {
    std::vector<double> out;
    out.reserve(angles_.size());
    for (int m = 0; m < size(); ++m) {
        out.push_back(std::sin(angle(positive_mod(frequency * m, size()))));
    }
    return out;
}

TrioGrid build_grid(int trios) { return TrioGrid(trios); }

SigmaAssignment::SigmaAssignment(std::vector<std::uint8_t> choices) : choices_(std::move(choices)) {
    if (choices_.empty()) {
        throw std::invalid_argument("strategy needs at least one trio");
    }
    for (auto j : choices_) {
        if (j > 2) {
            throw std::invalid_argument("trio choice must be 0, 1 or 2");
        }
    }
}

SigmaAssignment SigmaAssignment::from_indices(int trios, std::span<const int> indices) {
    if (trios < 1 || static_cast<int>(indices.size()) != trios) {
        throw std::invalid_argument("strategy must contain exactly one setting per trio");
    }
    std::vector<std::uint8_t> choices(static_cast<std::size_t>(trios), 3);
    for (int m : indices) {
        if (m < 0 || m >= 3 * trios) {
            throw std::invalid_argument("grid index out of range");
        }
        auto& slot = choices[static_cast<std::size_t>(m % trios)];
        if (slot != 3) {
            throw std::invalid_argument("two settings from the same trio");
        }
        slot = static_cast<std::uint8_t>(m / trios);
    }
    return SigmaAssignment(std::move(choices));
}

std::vector<int> SigmaAssignment::indices() const {
    const int n = trios();
    std::vector<int> out;
    out.reserve(choices_.size());
    for (int k = 0; k < n; ++k) {
        out.push_back(k + n * choices_[static_cast<std::size_t>(k)]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint8_t> SigmaAssignment::characteristic() const {
    std::vector<std::uint8_t> chi(static_cast<std::size_t>(3 * trios()), 0);
    for (int m : indices()) {
        chi[static_cast<std::size_t>(m)] = 1;
    }
    return chi;
}

std::vector<int> SigmaAssignment::complement_indices() const {
    const auto chi = characteristic();
    std::vector<int> out;
    out.reserve(2 * choices_.size());
    for (std::size_t m = 0; m < chi.size(); ++m) {
        if (!chi[m]) {
            out.push_back(static_cast<int>(m));
        }
    }
    return out;
}

SigmaAssignment SigmaAssignment::reflected() const {
    const int modulus = 3 * trios();
    auto mirrored = indices();
    for (int& m : mirrored) {
        m = positive_mod(-m, modulus);
    }
    return from_indices(trios(), mirrored);
}

std::string SigmaAssignment::encode() const {
    std::string out;
    out.reserve(choices_.size());
    for (auto j : choices_) {
        out.push_back(static_cast<char>('0' + j));
    }
    return out;
}

SigmaAssignment SigmaAssignment::decode(std::string_view digits) {
    std::vector<std::uint8_t> choices;
    choices.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '2') {
            throw std::invalid_argument("strategy digits must be 0, 1 or 2");
        }
        choices.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return SigmaAssignment(std::move(choices));
}

std::uint64_t sigma_count(int trios) {
    if (trios < 1) {
        throw std::invalid_argument("trio count must be at least 1");
    }
    std::uint64_t count = 1;
    for (int k = 0; k < trios; ++k) {
        if (count > std::numeric_limits<std::uint64_t>::max() / 3) {
            throw std::overflow_error("3^n does not fit in 64 bits");
        }
        count *= 3;
    }
    return count;
}

SigmaAssignment sigma_at(int trios, std::uint64_t rank) {
    if (rank >= sigma_count(trios)) {
        throw std::out_of_range("strategy rank out of range");
    }
    std::vector<std::uint8_t> choices(static_cast<std::size_t>(trios));
    for (int k = trios - 1; k >= 0; --k) {
        choices[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(rank % 3);
        rank /= 3;
    }
    return SigmaAssignment(std::move(choices));
}

std::vector<SigmaAssignment> enumerate_sigmas(int trios) {
    const auto count = sigma_count(trios);
    std::vector<SigmaAssignment> out;
    out.reserve(count);
    std::vector<std::uint8_t> choices(static_cast<std::size_t>(trios), 0);
    for (std::uint64_t r = 0; r < count; ++r) {
        out.emplace_back(choices);
        // odometer increment, last trio fastest
        for (int k = trios - 1; k >= 0; --k) {
            auto& j = choices[static_cast<std::size_t>(k)];
            if (++j < 3) {
                break;
            }
            j = 0;
        }
    }
    return out;
}

int circular_run_count(std::span<const int> sorted_indices, int modulus) {
    if (sorted_indices.empty()) {
        return 0;
    }
    if (static_cast<int>(sorted_indices.size()) == modulus) {
        return 1;
    }
    int runs = 0;
    for (std::size_t i = 0; i < sorted_indices.size(); ++i) {
        const int prev = positive_mod(sorted_indices[i] - 1, modulus);
        if (!std::binary_search(sorted_indices.begin(), sorted_indices.end(), prev)) {
            ++runs;
        }
    }
    return runs;
}

std::vector<SigmaAssignment> run_family_sigmas(int trios) {
    if (trios < 1) {
        throw std::invalid_argument("trio count must be at least 1");
    }
    const int n = trios;
    const int points = 3 * n;
    std::set<SigmaAssignment> family;
    std::vector<int> members;
    std::vector<char> seen(static_cast<std::size_t>(n));

    auto try_add = [&] {
        std::fill(seen.begin(), seen.end(), 0);
        for (int m : members) {
            char& slot = seen[static_cast<std::size_t>(m % n)];
            if (slot) {
                return;
            }
            slot = 1;
        }
        family.insert(SigmaAssignment::from_indices(n, members));
    };

    for (int start = 0; start < points; ++start) {
        for (int first_len = 1; first_len <= n; ++first_len) {
            if (first_len == n) {
                members.clear();
                for (int i = 0; i < n; ++i) {
                    members.push_back((start + i) % points);
                }
                try_add();
                continue;
            }
            const int second_len = n - first_len;
            // both gaps between the runs must be non-empty
            for (int gap = 1; gap <= points - n - 1; ++gap) {
                members.clear();
                for (int i = 0; i < first_len; ++i) {
                    members.push_back((start + i) % points);
                }
                const int second_start = start + first_len + gap;
                for (int i = 0; i < second_len; ++i) {
                    members.push_back((second_start + i) % points);
                }
                try_add();
            }
        }
    }
    return {family.begin(), family.end()};
}

FourierWitness witness_of_indices(std::span<const int> indices, const TrioGrid& grid) {
    FourierWitness w{};
    for (int m : indices) {
        const double phi = grid.angle(m);
        const double phi2 = grid.angle(positive_mod(2 * m, grid.size()));
        w.w1 += std::complex<double>(std::cos(phi), std::sin(phi));
        w.w2 += std::complex<double>(std::cos(phi2), std::sin(phi2));
    }
    return w;
}

FourierWitness fourier_witness(const SigmaAssignment& sigma, const TrioGrid& grid) {
    if (sigma.trios() != grid.trios()) {
        throw std::invalid_argument("strategy and grid disagree on the trio count");
    }
    const auto idx = sigma.indices();
    return witness_of_indices(idx, grid);
}

FourierWitness fourier_witness_by_projection(const SigmaAssignment& sigma, const TrioGrid& grid) {
    if (sigma.trios() != grid.trios()) {
        throw std::invalid_argument("strategy and grid disagree on the trio count");
    }
    const auto& k = kernels::active_kernels();
    const auto chi8 = sigma.characteristic();
    const std::vector<double> chi(chi8.begin(), chi8.end());
    return {
        {k.dot(chi, grid.cosines(1)), k.dot(chi, grid.sines(1))},
        {k.dot(chi, grid.cosines(2)), k.dot(chi, grid.sines(2))},
    };
}

std::array<std::array<double, 4>, 4> frequency_gram(const TrioGrid& grid) {
    const std::array<std::vector<double>, 4> basis{grid.cosines(1), grid.sines(1), grid.cosines(2),
                                                   grid.sines(2)};
    const auto& k = kernels::active_kernels();
    std::array<std::array<double, 4>, 4> gram{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            gram[i][j] = k.dot(basis[i], basis[j]);
        }
    }
    return gram;
}

}  // namespace conebell
