#include "conebell/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "conebell/bounds.hpp"
#include "conebell/continuum.hpp"
#include "conebell/quantum.hpp"
#include "conebell/version.hpp"

namespace conebell {

namespace {

constexpr double consistency_tolerance = 1e-9;

std::string format_number(const std::optional<double>& value) {
    return value ? fmt::format("{:.12g}", *value) : std::string{};
}

std::string join(const std::vector<std::string>& parts, std::string_view separator) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            out += separator;
        }
        out += parts[i];
    }
    return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

ReportRow error_row(int parties, int trios, SweepMode mode, std::string_view kind) {
    ReportRow row;
    row.parties = parties;
    row.trios = trios;
    row.mode = std::string(sweep_mode_name(mode));
    row.flags.push_back("error:" + std::string(kind));
    return row;
}

ReportRow search_row(int parties, int trios, SweepMode mode, const SweepSpec& spec) {
    SearchOptions options;
    options.threads = spec.threads;
    options.budget = spec.budget;
    const auto search_mode =
        mode == SweepMode::exhaustive ? SearchMode::exhaustive : SearchMode::conjecture;
    const auto start = std::chrono::steady_clock::now();
    const auto report = violation_report(parties, trios, search_mode, options);
    auto row = row_from_report(report, false);

    if (mode == SweepMode::exhaustive) {
        const auto conjecture = conjecture_max(parties, build_grid(trios), options);
        const bool same =
            std::abs(conjecture.lhv_max - report.lhv_max) <= consistency_tolerance;
        row.flags.emplace_back(same ? "conjecture=exhaustive" : "conjecture<exhaustive");
        if (trios >= 2) {
            const double bound = analytic_bound(trios, parties, options);
            if (report.lhv_max > bound + consistency_tolerance) {
                row.flags.emplace_back("bound_violated");
            } else if (bound - report.lhv_max <= consistency_tolerance) {
                row.flags.emplace_back("bound_tight");
            }
        }
    }
    if (trios == 1) {
        row.flags.emplace_back("degenerate_n1");
    }
    if (spec.timing) {
        row.elapsed_ms = elapsed_ms(start);
    }
    return row;
}

ReportRow bound_row(int parties, int trios, const SweepSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    SearchOptions options;
    options.threads = spec.threads;
    const auto projection = max_projection(trios, options);
    ReportRow row;
    row.parties = parties;
    row.trios = trios;
    row.mode = "bound";
    row.qm_norm = qm_norm_discrete(trios, parties);
    row.lhv_max = analytic_bound(projection, parties);
    row.ratio = *row.qm_norm / *row.lhv_max;
    row.visibility = *row.lhv_max / *row.qm_norm;
    row.argmax = projection.argmax_sigma.encode();
    row.flags.emplace_back("upper_bound");
    if (*row.ratio > 1.0) {
        row.flags.emplace_back("violation");
    }
    if (spec.timing) {
        row.elapsed_ms = elapsed_ms(start);
    }
    return row;
}

ReportRow continuum_row(int parties, const SweepSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    const auto report = continuous_ratio(parties);
    ReportRow row;
    row.parties = parties;
    row.trios = 0;
    row.mode = "continuum";
    row.qm_norm = report.qm_norm;
    row.lhv_max = report.normalized_lhv;
    row.ratio = *row.qm_norm / *row.lhv_max;
    row.visibility = *row.lhv_max / *row.qm_norm;
    row.flags.emplace_back("continuous");
    if (*row.ratio > 1.0) {
        row.flags.emplace_back("violation");
    }
    if (spec.timing) {
        row.elapsed_ms = elapsed_ms(start);
    }
    return row;
}

}  // namespace

std::string_view sweep_mode_name(SweepMode mode) {
    switch (mode) {
        case SweepMode::exhaustive:
            return "exhaustive";
        case SweepMode::conjecture:
            return "conjecture";
        case SweepMode::bound:
            return "bound";
        case SweepMode::continuum:
            return "continuum";
    }
    return "unknown";
}

SweepMode parse_sweep_mode(std::string_view name) {
    for (auto mode :
         {SweepMode::exhaustive, SweepMode::conjecture, SweepMode::bound, SweepMode::continuum}) {
        if (sweep_mode_name(mode) == name) {
            return mode;
        }
    }
    throw std::invalid_argument("unknown sweep mode: " + std::string(name));
}

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") {
        return OutputFormat::csv;
    }
    if (name == "json") {
        return OutputFormat::json;
    }
    throw std::invalid_argument("unknown output format: " + std::string(name));
}

bool ReportRow::is_error() const {
    return std::any_of(flags.begin(), flags.end(),
                       [](const std::string& f) { return f.starts_with("error:"); });
}

std::string encode_tuple(const std::vector<SigmaAssignment>& tuple) {
    std::vector<std::string> parts;
    parts.reserve(tuple.size());
    for (const auto& sigma : tuple) {
        parts.push_back(sigma.encode());
    }
    return join(parts, ";");
}

ReportRow row_from_report(const ViolationReport& report, bool timing) {
    ReportRow row;
    row.parties = report.parties;
    row.trios = report.trios;
    row.mode = std::string(mode_name(report.mode));
    row.qm_norm = report.qm_norm;
    row.lhv_max = report.lhv_max;
    row.ratio = report.ratio;
    row.visibility = report.visibility;
    row.argmax = encode_tuple(report.search.argmax);
    if (timing) {
        row.elapsed_ms =
            std::chrono::duration<double, std::milli>(report.search.elapsed).count();
    }
    if (report.violated()) {
        row.flags.emplace_back("violation");
    }
    return row;
}

std::vector<ReportRow> run_sweep(const SweepSpec& spec) {
    std::vector<int> parties = spec.parties;
    std::sort(parties.begin(), parties.end());
    parties.erase(std::unique(parties.begin(), parties.end()), parties.end());

    std::vector<ReportRow> rows;
    for (int N : parties) {
        if (spec.mode == SweepMode::continuum) {
            try {
                rows.push_back(continuum_row(N, spec));
            } catch (const std::invalid_argument&) {
                rows.push_back(error_row(N, 0, spec.mode, "invalid_argument"));
            }
            continue;
        }
        for (int n = spec.n_first; n <= spec.n_last; ++n) {
            try {
                rows.push_back(spec.mode == SweepMode::bound ? bound_row(N, n, spec)
                                                             : search_row(N, n, spec.mode, spec));
            } catch (const BudgetExceeded&) {
                rows.push_back(error_row(N, n, spec.mode, "budget_exceeded"));
            } catch (const std::invalid_argument&) {
                rows.push_back(error_row(N, n, spec.mode, "invalid_argument"));
            } catch (const std::exception&) {
                rows.push_back(error_row(N, n, spec.mode, "numeric_failure"));
            }
        }
    }
    return rows;
}

std::string render_csv(const std::vector<ReportRow>& rows) {
    std::string out(csv_header);
    out += '\n';
    for (const auto& row : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", row.parties, row.trios, row.mode,
                           format_number(row.qm_norm), format_number(row.lhv_max),
                           format_number(row.ratio), format_number(row.visibility), row.argmax,
                           format_number(row.elapsed_ms), join(row.flags, "|"));
    }
    return out;
}

std::string render_json(const SweepSpec& spec, const std::vector<ReportRow>& rows) {
    using nlohmann::ordered_json;
    auto number = [](const std::optional<double>& v) -> ordered_json {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    ordered_json doc;
    doc["artifact"] = "conebell";
    doc["version"] = std::string(version);
    doc["spec"] = {
        {"N", spec.parties},
        {"n_range", {spec.n_first, spec.n_last}},
        {"mode", std::string(sweep_mode_name(spec.mode))},
        {"format", spec.format == OutputFormat::csv ? "csv" : "json"},
        {"threads", spec.threads},
        {"budget", spec.budget},
    };
    doc["rows"] = ordered_json::array();
    for (const auto& row : rows) {
        doc["rows"].push_back({
            {"N", row.parties},
            {"n", row.trios},
            {"mode", row.mode},
            {"qm_norm", number(row.qm_norm)},
            {"lhv_max", number(row.lhv_max)},
            {"ratio", number(row.ratio)},
            {"visibility", number(row.visibility)},
            {"argmax", row.argmax},
            {"elapsed_ms", number(row.elapsed_ms)},
            {"flags", row.flags},
        });
    }
    return doc.dump(2) + "\n";
}

std::string render(const SweepSpec& spec, const std::vector<ReportRow>& rows) {
    return spec.format == OutputFormat::csv ? render_csv(rows) : render_json(spec, rows);
}

void emit(const SweepSpec& spec, const std::vector<ReportRow>& rows) {
    const auto text = render(spec, rows);
    if (spec.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(spec.out_path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open " + spec.out_path + " for writing");
    }
    file << text;
}

int exit_status(const std::vector<ReportRow>& rows) {
    return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.is_error(); }) ? 1
                                                                                              : 0;
}

}  // namespace conebell
