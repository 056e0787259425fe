#include "conebell/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "conebell/parallel.hpp"
#include "conebell/quantum.hpp"

namespace conebell {

namespace {

// Strategies per parallel work item.
constexpr std::uint64_t chunk_size = 1u << 14;

// Witness magnitude from per-index tables, summed in trio order.
class MagnitudeTable {
public:
    explicit MagnitudeTable(const TrioGrid& grid)
        : n_(grid.trios()), c1_(grid.cosines(1)), s1_(grid.sines(1)), c2_(grid.cosines(2)),
          s2_(grid.sines(2)) {}

    double operator()(std::span<const std::uint8_t> choices) const {
        double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
        for (int k = 0; k < n_; ++k) {
            const auto m = static_cast<std::size_t>(k + n_ * choices[static_cast<std::size_t>(k)]);
            a += c1_[m];
            b += s1_[m];
            c += c2_[m];
            d += s2_[m];
        }
        return std::sqrt(a * a + b * b + c * c + d * d);
    }

private:
    int n_;
    std::vector<double> c1_, s1_, c2_, s2_;
};

void advance(std::vector<std::uint8_t>& choices) {
    for (auto k = choices.size(); k-- > 0;) {
        if (++choices[k] < 3) {
            return;
        }
        choices[k] = 0;
    }
}

struct ChunkBest {
    double value = -std::numeric_limits<double>::infinity();
    std::uint64_t rank = 0;
};

}  // namespace

ProjectionBound max_projection(int trios, const SearchOptions& options) {
    if (trios < 2) {
        throw std::invalid_argument("the projection bound needs n >= 2");
    }
    const auto grid = build_grid(trios);
    const auto total = sigma_count(trios);
    const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;
    const MagnitudeTable magnitude(grid);

    std::vector<ChunkBest> best(chunks);
    parallel_for(chunks, resolve_threads(options.threads), [&](std::size_t c) {
        const std::uint64_t lo = c * chunk_size;
        const std::uint64_t hi = std::min(total, lo + chunk_size);
        const auto first = sigma_at(trios, lo);
        std::vector<std::uint8_t> choices(first.choices().begin(), first.choices().end());
        ChunkBest local;
        for (std::uint64_t r = lo; r < hi; ++r, advance(choices)) {
            const double m = magnitude(choices);
            if (m > local.value) {
                local = {m, r};
            }
        }
        best[c] = local;
    });

    const double top = std::max_element(best.begin(), best.end(), [](const auto& a, const auto& b) {
                           return a.value < b.value;
                       })->value;
    const double threshold = top - 1e-12 * std::max(1.0, top);
    // first chunk reaching the threshold; rescan it for the first rank
    for (std::uint64_t c = 0; c < chunks; ++c) {
        if (best[c].value < threshold) {
            continue;
        }
        const std::uint64_t lo = c * chunk_size;
        const std::uint64_t hi = std::min(total, lo + chunk_size);
        const auto first = sigma_at(trios, lo);
        std::vector<std::uint8_t> choices(first.choices().begin(), first.choices().end());
        for (std::uint64_t r = lo; r < hi; ++r, advance(choices)) {
            if (magnitude(choices) >= threshold) {
                return {trios, top, SigmaAssignment(choices)};
            }
        }
    }
    throw std::logic_error("projection maximum not found on rescan");
}

double analytic_bound(const ProjectionBound& projection, int parties) {
    if (parties < 2) {
        throw std::invalid_argument("the bound needs at least two parties");
    }
    return correlation_prefactor(parties) *
           std::pow(projection.max_witness_magnitude, static_cast<double>(parties));
}

double analytic_bound(int trios, int parties, const SearchOptions& options) {
    return analytic_bound(max_projection(trios, options), parties);
}

double bound_ratio(const ProjectionBound& projection, int parties) {
    return qm_norm_discrete(projection.trios, parties) / analytic_bound(projection, parties);
}

double bound_ratio(int trios, int parties, const SearchOptions& options) {
    return bound_ratio(max_projection(trios, options), parties);
}

}  // namespace conebell
