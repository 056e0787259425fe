#pragma once

// Local-realistic functional and its maximization over deterministic
// strategies.
//
// For strategies sigma_1..sigma_N the overlap with the quantum correlation
// function reduces to
//
//   (-1)^N (8/3^(2+N)) [ Re prod_x w1(sigma_x) + (-1)^N Re prod_x w2(sigma_x) ],
//
// so each observer enters only through its Fourier witness. The search runs
// over multisets of distinct witnesses (the functional is symmetric in the
// observers) with the last observer handled by a vectorized kernel.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "conebell/grid.hpp"
#include "conebell/kernels.hpp"

namespace conebell {

enum class SearchMode { exhaustive, conjecture };

std::string_view mode_name(SearchMode mode);
SearchMode parse_mode(std::string_view name);

inline constexpr std::uint64_t default_budget = 1'000'000'000;

struct SearchOptions {
    int threads = 0;  // 0: resolve_threads()
    std::uint64_t budget = default_budget;
    std::optional<kernels::Isa> isa;  // unset: active_kernels()
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(int parties, int trios, double required, std::uint64_t budget);

    int parties() const noexcept { return parties_; }
    int trios() const noexcept { return trios_; }

private:
    int parties_;
    int trios_;
};

struct SearchResult {
    double lhv_max = 0.0;
    /// Lexicographically smallest maximizing tuple, one strategy per observer.
    std::vector<SigmaAssignment> argmax;
    SearchMode mode = SearchMode::exhaustive;
    /// Witness multisets scored.
    std::uint64_t evaluations = 0;
    std::size_t distinct_witnesses = 0;
    std::chrono::nanoseconds elapsed{0};
};

struct ViolationReport {
    int parties = 0;
    int trios = 0;
    SearchMode mode = SearchMode::exhaustive;
    double qm_norm = 0.0;
    double lhv_max = 0.0;
    double ratio = 0.0;       // qm_norm / lhv_max
    double visibility = 0.0;  // lhv_max / qm_norm, critical white-noise weight
    SearchResult search;

    bool violated() const noexcept { return ratio > 1.0; }
};

double lhv_functional(std::span<const FourierWitness> witnesses);
double lhv_functional(std::span<const SigmaAssignment> sigmas, const TrioGrid& grid);

/// Distinct witnesses of a strategy list, in structure-of-arrays layout. Each
/// entry keeps the first strategy (in input order) that produced it.
class WitnessTable {
public:
    WitnessTable(std::span<const SigmaAssignment> sigmas, const TrioGrid& grid);

    std::size_t size() const noexcept { return reps_.size(); }
    const SigmaAssignment& representative(std::size_t i) const { return reps_.at(i); }
    FourierWitness witness(std::size_t i) const;
    kernels::WitnessColumns columns() const noexcept { return {re1_, im1_, re2_, im2_}; }

private:
    std::vector<SigmaAssignment> reps_;
    std::vector<double> re1_, im1_, re2_, im2_;
};

/// Maximum of the functional over all N-tuples drawn from `candidates`.
SearchResult maximize_over(int parties, std::span<const SigmaAssignment> candidates,
                           const TrioGrid& grid, const SearchOptions& options = {});

/// All 3^(nN) tuples. Throws BudgetExceeded when 3^(nN) > options.budget.
SearchResult exhaustive_max(int parties, const TrioGrid& grid, const SearchOptions& options = {});

/// Tuples drawn from run_family_sigmas (bunched and split strategies, all
/// rotations, independently per observer).
SearchResult conjecture_max(int parties, const TrioGrid& grid, const SearchOptions& options = {});

SearchResult search_max(int parties, const TrioGrid& grid, SearchMode mode,
                        const SearchOptions& options = {});

ViolationReport violation_report(int parties, int trios, SearchMode mode,
                                 const SearchOptions& options = {});

}  // namespace conebell
