#include "conebell/lhv_search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "conebell/parallel.hpp"
#include "conebell/quantum.hpp"

namespace conebell {

namespace {

using cd = std::complex<double>;

// Witness components equal after rounding to this grid count as one witness.
constexpr double dedup_scale = 1e11;

double tie_tolerance(double best) { return 1e-12 * std::max(1.0, std::abs(best)); }

double sign_of(int parties) { return parties % 2 == 0 ? 1.0 : -1.0; }

std::uint64_t multiset_count(std::uint64_t kinds, int size) {
    // C(kinds + size - 1, size), exact for the sizes searched here
    long double count = 1.0L;
    for (int i = 1; i <= size; ++i) {
        count = count * static_cast<long double>(kinds + static_cast<std::uint64_t>(i) - 1) / i;
    }
    return static_cast<std::uint64_t>(std::llround(count));
}

void require_parties(int parties) {
    if (parties < 2) {
        throw std::invalid_argument("the local-realistic functional needs at least two parties");
    }
}

/// Lexicographic walk over sorted index tuples sharing a fixed first index.
class TupleWalker {
public:
    TupleWalker(int parties, const WitnessTable& table, const kernels::KernelTable& kernels)
        : parties_(parties),
          table_(table),
          cols_(table.columns()),
          kernels_(kernels),
          scale_(correlation_prefactor(parties)),
          sign_(sign_of(parties)),
          prefix_(static_cast<std::size_t>(parties)) {}

    /// Best score over tuples starting with `first`.
    kernels::BestScore best_from(std::size_t first) {
        prefix_[0] = first;
        const auto w = table_.witness(first);
        return best_rec(1, w.w1, w.w2);
    }

    /// First tuple (lexicographically) starting with `first` whose score is
    /// at least `threshold`; empty if there is none.
    std::vector<std::size_t> first_from(std::size_t first, double threshold) {
        prefix_[0] = first;
        const auto w = table_.witness(first);
        if (first_rec(1, w.w1, w.w2, threshold)) {
            return prefix_;
        }
        return {};
    }

private:
    kernels::LinearForm form(cd p1, cd p2) const {
        const double s1 = sign_ * scale_;
        return {s1 * p1.real(), -s1 * p1.imag(), scale_ * p2.real(), -scale_ * p2.imag()};
    }

    kernels::BestScore best_rec(int level, cd p1, cd p2) {
        const std::size_t lo = prefix_[static_cast<std::size_t>(level - 1)];
        if (level == parties_ - 1) {
            return kernels_.max_score(form(p1, p2), cols_, lo, table_.size());
        }
        kernels::BestScore best{-std::numeric_limits<double>::infinity(), table_.size()};
        for (std::size_t i = lo; i < table_.size(); ++i) {
            prefix_[static_cast<std::size_t>(level)] = i;
            const auto w = table_.witness(i);
            const auto sub = best_rec(level + 1, p1 * w.w1, p2 * w.w2);
            if (sub.value > best.value) {
                best = sub;
            }
        }
        return best;
    }

    bool first_rec(int level, cd p1, cd p2, double threshold) {
        const std::size_t lo = prefix_[static_cast<std::size_t>(level - 1)];
        if (level == parties_ - 1) {
            const auto hit = kernels_.first_at_least(form(p1, p2), cols_, lo, table_.size(), threshold);
            if (hit == table_.size()) {
                return false;
            }
            prefix_[static_cast<std::size_t>(level)] = hit;
            return true;
        }
        for (std::size_t i = lo; i < table_.size(); ++i) {
            prefix_[static_cast<std::size_t>(level)] = i;
            const auto w = table_.witness(i);
            if (first_rec(level + 1, p1 * w.w1, p2 * w.w2, threshold)) {
                return true;
            }
        }
        return false;
    }

    int parties_;
    const WitnessTable& table_;
    kernels::WitnessColumns cols_;
    const kernels::KernelTable& kernels_;
    double scale_;
    double sign_;
    std::vector<std::size_t> prefix_;
};

}  // namespace

std::string_view mode_name(SearchMode mode) {
    return mode == SearchMode::exhaustive ? "exhaustive" : "conjecture";
}

SearchMode parse_mode(std::string_view name) {
    if (name == "exhaustive") {
        return SearchMode::exhaustive;
    }
    if (name == "conjecture") {
        return SearchMode::conjecture;
    }
    throw std::invalid_argument("unknown search mode: " + std::string(name));
}

BudgetExceeded::BudgetExceeded(int parties, int trios, double required, std::uint64_t budget)
    : std::runtime_error("exhaustive search for N=" + std::to_string(parties) +
                         ", n=" + std::to_string(trios) + " needs 3^" +
                         std::to_string(parties * trios) + " = " + std::to_string(required) +
                         " evaluations, budget is " + std::to_string(budget)),
      parties_(parties),
      trios_(trios) {}

double lhv_functional(std::span<const FourierWitness> witnesses) {
    const int parties = static_cast<int>(witnesses.size());
    require_parties(parties);
    cd p1{1.0, 0.0};
    cd p2{1.0, 0.0};
    for (const auto& w : witnesses) {
        p1 *= w.w1;
        p2 *= w.w2;
    }
    const double s = sign_of(parties);
    return s * correlation_prefactor(parties) * (p1.real() + s * p2.real());
}

double lhv_functional(std::span<const SigmaAssignment> sigmas, const TrioGrid& grid) {
    std::vector<FourierWitness> witnesses;
    witnesses.reserve(sigmas.size());
    for (const auto& sigma : sigmas) {
        witnesses.push_back(fourier_witness(sigma, grid));
    }
    return lhv_functional(witnesses);
}

WitnessTable::WitnessTable(std::span<const SigmaAssignment> sigmas, const TrioGrid& grid) {
    std::map<std::array<long long, 4>, std::size_t> seen;
    for (const auto& sigma : sigmas) {
        const auto w = fourier_witness(sigma, grid);
        const std::array<long long, 4> key{
            std::llround(w.w1.real() * dedup_scale), std::llround(w.w1.imag() * dedup_scale),
            std::llround(w.w2.real() * dedup_scale), std::llround(w.w2.imag() * dedup_scale)};
        if (!seen.emplace(key, reps_.size()).second) {
            continue;
        }
        reps_.push_back(sigma);
        re1_.push_back(w.w1.real());
        im1_.push_back(w.w1.imag());
        re2_.push_back(w.w2.real());
        im2_.push_back(w.w2.imag());
    }
}

FourierWitness WitnessTable::witness(std::size_t i) const {
    return {{re1_.at(i), im1_.at(i)}, {re2_.at(i), im2_.at(i)}};
}

SearchResult maximize_over(int parties, std::span<const SigmaAssignment> candidates,
                           const TrioGrid& grid, const SearchOptions& options) {
    require_parties(parties);
    if (candidates.empty()) {
        throw std::invalid_argument("no candidate strategies");
    }
    const auto start = std::chrono::steady_clock::now();

    std::vector<SigmaAssignment> ordered(candidates.begin(), candidates.end());
    std::sort(ordered.begin(), ordered.end());
    const WitnessTable table(ordered, grid);
    const auto& kernels =
        options.isa ? kernels::kernels_for(*options.isa) : kernels::active_kernels();
    const int threads = resolve_threads(options.threads);

    // pass 1: exact maximum per first index
    std::vector<double> best_by_first(table.size());
    parallel_for(table.size(), threads, [&](std::size_t first) {
        TupleWalker walker(parties, table, kernels);
        best_by_first[first] = walker.best_from(first).value;
    });
    const double best = *std::max_element(best_by_first.begin(), best_by_first.end());

    // pass 2: lexicographically first tuple within the tie tolerance
    const double threshold = best - tie_tolerance(best);
    std::vector<std::size_t> winner;
    for (std::size_t first = 0; first < table.size() && winner.empty(); ++first) {
        if (best_by_first[first] >= threshold) {
            TupleWalker walker(parties, table, kernels);
            winner = walker.first_from(first, threshold);
        }
    }
    if (winner.empty()) {
        throw std::logic_error("tie-break pass found no maximizing tuple");
    }

    SearchResult result;
    result.lhv_max = best;
    for (auto i : winner) {
        result.argmax.push_back(table.representative(i));
    }
    result.evaluations = multiset_count(table.size(), parties);
    result.distinct_witnesses = table.size();
    result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start);
    return result;
}

SearchResult exhaustive_max(int parties, const TrioGrid& grid, const SearchOptions& options) {
    require_parties(parties);
    const double required = std::pow(3.0, static_cast<double>(parties) * grid.trios());
    if (required > static_cast<double>(options.budget)) {
        throw BudgetExceeded(parties, grid.trios(), required, options.budget);
    }
    const auto sigmas = enumerate_sigmas(grid.trios());
    auto result = maximize_over(parties, sigmas, grid, options);
    result.mode = SearchMode::exhaustive;
    return result;
}

SearchResult conjecture_max(int parties, const TrioGrid& grid, const SearchOptions& options) {
    const auto family = run_family_sigmas(grid.trios());
    auto result = maximize_over(parties, family, grid, options);
    result.mode = SearchMode::conjecture;
    return result;
}

SearchResult search_max(int parties, const TrioGrid& grid, SearchMode mode,
                        const SearchOptions& options) {
    return mode == SearchMode::exhaustive ? exhaustive_max(parties, grid, options)
                                          : conjecture_max(parties, grid, options);
}

ViolationReport violation_report(int parties, int trios, SearchMode mode,
                                 const SearchOptions& options) {
    const auto grid = build_grid(trios);
    ViolationReport report;
    report.parties = parties;
    report.trios = trios;
    report.mode = mode;
    report.search = search_max(parties, grid, mode, options);
    report.qm_norm = qm_norm_discrete(trios, parties);
    report.lhv_max = report.search.lhv_max;
    report.ratio = report.qm_norm / report.lhv_max;
    report.visibility = report.lhv_max / report.qm_norm;
    return report;
}

}  // namespace conebell
