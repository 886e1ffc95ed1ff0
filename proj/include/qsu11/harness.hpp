#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsu11/qcalculus.hpp"

namespace qsu {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Suite { Identities, Spherical, Coamenability, Smoothing, ApproxId };

std::string_view to_string(Suite suite) noexcept;
std::optional<Suite> parse_suite(std::string_view name);

/// All suites in execution order.
std::vector<Suite> all_suites();

enum class ReportFormat { Csv, Json, Both };

std::string_view to_string(ReportFormat format) noexcept;
std::optional<ReportFormat> parse_format(std::string_view name);

struct RunConfig {
    double q = 0.5;
    double tol = 1e-10;
    double tol_quad = 1e-8;
    long max_exponent = 24;
    long max_terms = 200;
    std::vector<Suite> suites = all_suites();
    std::filesystem::path out_dir = "reports";
    ReportFormat format = ReportFormat::Csv;
};

/// Empty when the configuration is usable; otherwise one message per problem.
std::vector<std::string> validate(const RunConfig& config);

/// Header warnings (currently: q outside [0.1, 0.95]).
std::vector<std::string> config_warnings(const RunConfig& config);

enum class Verdict { Pass, Fail, Info };

std::string_view to_string(Verdict verdict) noexcept;

struct ReportRow {
    std::string check_id;
    std::string paper_anchor;
    std::string param_json;  // compact JSON object
    cplx value;
    double deviation = 0.0;
    std::optional<double> threshold;  // absent for informational rows
    Verdict verdict = Verdict::Info;
};

struct SuiteReport {
    Suite suite = Suite::Identities;
    std::vector<ReportRow> rows;

    std::size_t count(Verdict v) const;
    bool pass() const { return count(Verdict::Fail) == 0; }
};

/// Computes the rows of one suite. Never throws on numerical failure: such
/// rows are recorded with verdict fail.
SuiteReport run_checks(Suite suite, const RunConfig& config);

std::string render_csv(const SuiteReport& report);
std::string render_json(const SuiteReport& report, const RunConfig& config);
std::string render_summary_csv(const std::vector<SuiteReport>& reports);
std::string render_summary_json(const std::vector<SuiteReport>& reports, const RunConfig& config);

struct RunOutcome {
    int exit_code = 0;  // 0 all pass, 1 some failure, 2 invalid configuration
    std::vector<SuiteReport> reports;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> messages;
};

/// Runs the selected suites and writes one report per suite plus a summary
/// into out_dir.
RunOutcome run_suite(const RunConfig& config);

}  // namespace qsu
