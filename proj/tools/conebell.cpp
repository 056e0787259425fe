// conebell: cone Bell inequalities for N spin-1 systems.
//
//   conebell grid --n 3
//   conebell qm-check --N 3 --samples 1000
//   conebell search --N 3 --n 4 --mode exhaustive
//   conebell bound --n 3 [--N 3]
//   conebell continuum --N 3
//   conebell sweep --N 2,3 --n-range 2:6 --mode exhaustive --format csv --out ratios.csv

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "conebell/bounds.hpp"
#include "conebell/continuum.hpp"
#include "conebell/grid.hpp"
#include "conebell/kernels.hpp"
#include "conebell/lhv_search.hpp"
#include "conebell/parallel.hpp"
#include "conebell/quantum.hpp"
#include "conebell/report.hpp"
#include "conebell/version.hpp"

namespace {

using namespace conebell;

constexpr double oracle_tolerance = 1e-10;

struct NRange {
    int first = 2;
    int last = 2;
};

NRange parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        const int n = std::stoi(text);
        return {n, n};
    }
    NRange r{std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    if (r.first > r.last) {
        throw CLI::ValidationError("--n-range", "range start exceeds its end");
    }
    return r;
}

int run_grid(int n) {
    const auto grid = build_grid(n);
    fmt::print("n = {}, {} settings\n", n, grid.size());
    for (int m = 0; m < grid.size(); ++m) {
        fmt::print("  m={:<3} phi={:.12g} rad ({:.6g} deg)\n", m, grid.angle(m),
                   grid.angle(m) * 180.0 / std::numbers::pi);
    }
    for (int k = 0; k < n; ++k) {
        const auto t = grid.trio(k);
        fmt::print("  trio {}: {{{}, {}, {}}}\n", k, t[0], t[1], t[2]);
    }
    return 0;
}

int run_qm_check(int parties, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const auto state = biased_ghz(parties);
    double worst = 0.0;
    std::vector<double> worst_phis;
    std::vector<double> phis(static_cast<std::size_t>(parties));
    for (int s = 0; s < samples; ++s) {
        for (auto& p : phis) {
            p = angle(rng);
        }
        const double dev = std::abs(correlation_closed_form(phis) - correlation_oracle(state, phis));
        if (dev > worst) {
            worst = dev;
            worst_phis = phis;
        }
    }
    fmt::print("N = {}, samples = {}, seed = {}\n", parties, samples, seed);
    fmt::print("max |closed - oracle| = {:.3e}\n", worst);
    if (worst > oracle_tolerance) {
        fmt::print(stderr, "deviation above {:.0e} at N={}, phis=({:.17g})\n", oracle_tolerance,
                   parties, fmt::join(worst_phis, ", "));
        return 1;
    }
    fmt::print("ok (tolerance {:.0e})\n", oracle_tolerance);
    return 0;
}

void print_violation(const ViolationReport& r) {
    fmt::print("N = {}, n = {}, mode = {}\n", r.parties, r.trios, mode_name(r.mode));
    fmt::print("  qm_norm    = {:.12g}\n", r.qm_norm);
    fmt::print("  lhv_max    = {:.12g}\n", r.lhv_max);
    fmt::print("  ratio 1/V  = {:.12g}{}\n", r.ratio, r.violated() ? "  (violation)" : "");
    fmt::print("  visibility = {:.12g}\n", r.visibility);
    fmt::print("  argmax     = {}\n", encode_tuple(r.search.argmax));
    fmt::print("  evaluated  = {} witness multisets over {} distinct witnesses\n",
               r.search.evaluations, r.search.distinct_witnesses);
}

int run_bound(int n, int parties, int threads) {
    SearchOptions options;
    options.threads = threads;
    const auto projection = max_projection(n, options);
    fmt::print("n = {}\n", n);
    fmt::print("  max_witness_magnitude = {:.12g}\n", projection.max_witness_magnitude);
    fmt::print("  argmax_sigma          = {}\n", projection.argmax_sigma.encode());
    if (parties > 0) {
        fmt::print("  N = {}\n", parties);
        fmt::print("  analytic_bound        = {:.12g}\n", analytic_bound(projection, parties));
        fmt::print("  bound_ratio           = {:.12g}\n", bound_ratio(projection, parties));
    }
    return 0;
}

int run_continuum(int parties) {
    const auto r = continuous_ratio(parties);
    fmt::print("N = {}\n", r.parties);
    fmt::print("  qm_norm        = {:.12g}\n", r.qm_norm);
    fmt::print("  interval_max   = {:.12g}\n", r.interval_max);
    fmt::print("  normalized_lhv = {:.12g}\n", r.normalized_lhv);
    fmt::print("  ratio 1/V      = {:.12g}\n", r.ratio);
    fmt::print("  shift_argmax   = {:.12g}\n", r.shift_argmax);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cone Bell inequalities for N spin-1 systems"};
    app.set_version_flag("--version", std::string(conebell::version));
    app.require_subcommand(1);

    int parties = 2;
    std::vector<int> party_list{2};
    int trios = 2;
    std::string n_range;
    std::string mode = "exhaustive";
    int threads = 0;
    std::uint64_t budget = default_budget;
    std::string format = "csv";
    std::string out;
    int samples = 1000;
    std::uint64_t seed = 2012;
    bool timing = false;

    auto* grid_cmd = app.add_subcommand("grid", "Print the setting grid and its trios");
    grid_cmd->add_option("--n", trios, "Trios per observer")->required()->check(CLI::PositiveNumber);

    auto* qm_cmd = app.add_subcommand("qm-check", "Closed-form correlation vs. state contraction");
    qm_cmd->add_option("--N", parties, "Parties")->check(CLI::Range(2, default_max_parties));
    qm_cmd->add_option("--samples", samples, "Random angle tuples")->check(CLI::PositiveNumber);
    qm_cmd->add_option("--seed", seed, "Random seed");

    auto add_search_options = [&](CLI::App* cmd) {
        cmd->add_option("--n", trios, "Trios per observer")->check(CLI::PositiveNumber);
        cmd->add_option("--n-range", n_range, "Inclusive trio range a:b");
        cmd->add_option("--mode", mode, "exhaustive | conjecture (sweep also: bound | continuum)");
        cmd->add_option("--threads", threads, "Worker threads (default: CONEBELL_THREADS or all)");
        cmd->add_option("--budget", budget, "Exhaustive evaluation budget");
        cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out, "Output file");
        cmd->add_flag("--timing", timing, "Record elapsed_ms in reports");
    };

    auto* search_cmd = app.add_subcommand("search", "Maximize the local-realistic overlap");
    search_cmd->add_option("--N", parties, "Parties")->check(CLI::Range(2, 64));
    add_search_options(search_cmd);

    auto* bound_cmd = app.add_subcommand("bound", "Maximal witness magnitude and analytic bound");
    bound_cmd->add_option("--n", trios, "Trios per observer")->required()->check(CLI::Range(2, 30));
    bound_cmd->add_option("--N", parties, "Parties (adds bound and bound ratio)")
        ->check(CLI::Range(2, 64));
    bound_cmd->add_option("--threads", threads, "Worker threads");

    auto* cont_cmd = app.add_subcommand("continuum", "Continuous-setting limit");
    cont_cmd->add_option("--N", parties, "Parties")->check(CLI::Range(2, 64));

    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate ratios over a grid of (N, n)");
    sweep_cmd->add_option("--N", party_list, "Parties, comma separated")
        ->delimiter(',')
        ->check(CLI::Range(2, 64));
    add_search_options(sweep_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*grid_cmd) {
            return run_grid(trios);
        }
        if (*qm_cmd) {
            return run_qm_check(parties, samples, seed);
        }
        if (*bound_cmd) {
            return run_bound(trios, bound_cmd->count("--N") > 0 ? parties : 0, threads);
        }
        if (*cont_cmd) {
            return run_continuum(parties);
        }

        SweepSpec spec;
        spec.parties = *sweep_cmd ? party_list : std::vector<int>{parties};
        const auto range = n_range.empty() ? NRange{trios, trios} : parse_range(n_range);
        spec.n_first = range.first;
        spec.n_last = range.last;
        spec.mode = parse_sweep_mode(mode);
        spec.format = parse_format(format);
        spec.out_path = out;
        spec.threads = threads;
        spec.budget = budget;
        spec.timing = timing;

        const bool single = *search_cmd && n_range.empty() && out.empty();
        if (single) {
            if (spec.mode != SweepMode::exhaustive && spec.mode != SweepMode::conjecture) {
                throw CLI::ValidationError("--mode", "search takes exhaustive or conjecture");
            }
            SearchOptions options;
            options.threads = threads;
            options.budget = budget;
            print_violation(violation_report(parties, trios, parse_mode(mode), options));
            return 0;
        }
        const auto rows = run_sweep(spec);
        emit(spec, rows);
        for (const auto& row : rows) {
            if (row.is_error()) {
                fmt::print(stderr, "N={} n={}: {}\n", row.parties, row.trios,
                           fmt::join(row.flags, "|"));
            }
        }
        return exit_status(rows);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const BudgetExceeded& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
}
