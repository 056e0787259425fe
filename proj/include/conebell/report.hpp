#pragma once

// Sweep orchestration and CSV / JSON report emission.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conebell/lhv_search.hpp"

namespace conebell {

enum class SweepMode { exhaustive, conjecture, bound, continuum };
enum class OutputFormat { csv, json };

std::string_view sweep_mode_name(SweepMode mode);
SweepMode parse_sweep_mode(std::string_view name);
OutputFormat parse_format(std::string_view name);

struct SweepSpec {
    std::vector<int> parties{2};
    int n_first = 2;
    int n_last = 2;
    SweepMode mode = SweepMode::exhaustive;
    OutputFormat format = OutputFormat::csv;
    std::string out_path;  // empty: stdout
    int threads = 0;
    std::uint64_t budget = default_budget;
    bool timing = false;  // fill elapsed_ms; off keeps output byte-stable
};

struct ReportRow {
    int parties = 0;
    int trios = 0;  // 0 for the continuous limit
    std::string mode;
    std::optional<double> qm_norm;
    std::optional<double> lhv_max;
    std::optional<double> ratio;
    std::optional<double> visibility;
    std::string argmax;  // per-observer choice digits joined by ';'
    std::optional<double> elapsed_ms;
    std::vector<std::string> flags;

    bool is_error() const;
};

inline constexpr std::string_view csv_header =
    "N,n,mode,qm_norm,lhv_max,ratio,visibility,argmax,elapsed_ms,flags";

/// "012;210" style encoding of a strategy tuple.
std::string encode_tuple(const std::vector<SigmaAssignment>& tuple);

/// One row per (N, n) sorted by (N, n); the continuum mode emits one row per N
/// with n = 0. Failures become rows flagged "error:<kind>".
std::vector<ReportRow> run_sweep(const SweepSpec& spec);

ReportRow row_from_report(const ViolationReport& report, bool timing);

std::string render_csv(const std::vector<ReportRow>& rows);
std::string render_json(const SweepSpec& spec, const std::vector<ReportRow>& rows);
std::string render(const SweepSpec& spec, const std::vector<ReportRow>& rows);

/// Writes the rendered report to spec.out_path (or stdout when empty).
void emit(const SweepSpec& spec, const std::vector<ReportRow>& rows);

/// 0 iff no row is an error row.
int exit_status(const std::vector<ReportRow>& rows);

}  // namespace conebell
