#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "crloop/decide/decide.hpp"

namespace crl {

/// Per-file result shown to users and written to CSV/JSON.
struct AnalysisReport {
    std::string file;
    std::string verdict;  // constant, nonconstant, unsupported, error
    std::optional<std::size_t> bound;
    std::size_t n0 = 0;
    unsigned long rb = 0;
    bool chained = false;
    long long elapsed_ms = 0;
    std::string message;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUnsupported = 2,
    kExitParseError = 3,
    kExitResourceLimit = 4,
    kExitOracleMismatch = 5,
};

struct AnalysisOutcome {
    AnalysisReport report;
    int exit_code = kExitOk;
    std::optional<Verdict> verdict;
};

/// Reads, parses and decides one loop file; never throws.
AnalysisOutcome analyze_file(const std::filesystem::path& path, const DecideOptions& options);
/// Same for loop text already in memory; `name` fills the file field.
AnalysisOutcome analyze_text(const std::string& name, const std::string& text, const DecideOptions& options);

nlohmann::json to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::json& j);

/// One line, e.g. "CONSTANT bound=17 n0=0 rb=6".
std::string render_text(const AnalysisReport& r);
/// Closed form, instantiated guard, sizes and eventual signs.
std::string render_explanation(const Verdict& v);

std::string csv_header();
std::string csv_row(const AnalysisReport& r);

}  // namespace crl
