#pragma once

// Runs the engines, renders count tables as TSV and compares them with the
// golden fixtures and with each other.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crucial/cruciality.hpp"
#include "crucial/csp.hpp"
#include "crucial/golden.hpp"
#include "crucial/layered.hpp"
#include "crucial/search_dfs.hpp"

namespace crucial::report {

enum class Engine : std::uint8_t { dfs, csp, layered, naive };

Engine parse_engine(std::string_view text);
std::string to_string(Engine e);
SymmetryMode parse_mode(std::string_view text);
std::string to_string(SymmetryMode m);

/// The layered engine handles square-free, {0}, {n} and {0,n}; the naive
/// engine lengths up to naive_max_length.
bool engine_supports(Engine e, const PositionSpec& spec);
inline constexpr int naive_max_length = 10;

struct EngineOptions {
    csp::Heuristic heuristic = csp::Heuristic::static_order;
    csp::Preprocessing preprocessing = csp::Preprocessing::none;
    std::optional<double> timeout_seconds; // per (class, n)
    unsigned workers = 1;
};

struct Count {
    std::uint64_t value = 0;
    bool lower_bound = false; // the run hit its time limit
    bool operator==(const Count&) const = default;
};

struct RowResult {
    int n = 0;
    std::optional<Count> total;
    std::optional<std::uint64_t> nodes;
    std::optional<Count> up_to_symmetry;
    std::optional<std::uint64_t> nodes_sym;
    std::optional<Count> rc_invariant;
    std::optional<std::uint64_t> nodes_rc;
    bool operator==(const RowResult&) const = default;
};

struct Mismatch {
    std::string class_name;
    int n = 0;
    std::string column;   // "total", "csp sym", ...
    std::string expected;
    std::string observed;
};

struct RunReport {
    PositionSpec spec;
    Engine engine = Engine::dfs;
    int n_from = 0;
    int n_to = 0;
    std::vector<RowResult> rows;
    std::vector<Mismatch> mismatches;
    std::vector<std::string> errors;
    double wall_seconds = 0;

    bool ok() const noexcept { return mismatches.empty() && errors.empty(); }
};

/// Levels shared by successive layered runs.
struct LayeredCache {
    layered::LevelStore store;
};

/// One table row from one engine. `sink`, when set, receives the members
/// selected by `sink_mode`. Throws invalid_input when the engine does not
/// support the class or length.
RowResult run_engine(Engine e, int n, const PositionSpec& spec, const EngineOptions& options,
                     SymmetryMode sink_mode = SymmetryMode::all, const PermutationSink& sink = {},
                     LayeredCache* cache = nullptr);

/// Appends a mismatch for every observed cell that contradicts a known golden cell.
void compare_with_golden(RunReport& report, const golden::Fixtures& fixtures);

RunReport cmd_table(const PositionSpec& spec, int n_from, int n_to, Engine engine, const EngineOptions& options,
                    const golden::Fixtures& fixtures = golden::Fixtures::builtin());

RunReport cmd_enumerate(const PositionSpec& spec, int n, Engine engine, SymmetryMode mode,
                        const EngineOptions& options, const PermutationSink& sink = {},
                        const golden::Fixtures& fixtures = golden::Fixtures::builtin());

/// Header "n total nodes up_to_symmetry nodes_sym rc_invariant nodes_rc"
/// (tab-separated), "-" for absent cells, "≥N" for lower bounds.
std::string format_tsv(const std::vector<RowResult>& rows);
/// Accepts what format_tsv writes (">=N" as well as "≥N"). Throws parse_error.
std::vector<RowResult> parse_tsv(std::string_view text);

void write_mismatches(std::ostream& os, const std::vector<Mismatch>& mismatches);

struct CheckOutcome {
    bool crucial = false;
    std::string verdict; // one line, human readable
    std::optional<Certificate> certificate;
};

/// Decides P-cruciality of a permutation given as text; on success the
/// outcome carries a certificate. Throws parse_error for bad text.
CheckOutcome cmd_check(std::string_view permutation_text, const PositionSpec& spec);

struct CrossOptions {
    int naive_max = 8;
    int csp_max = 10;
    int layered_max = 11;
    EngineOptions engine;
};

struct CrossReport {
    std::vector<std::string> lines; // one TSV line per (class, n)
    std::vector<Mismatch> mismatches;
    std::vector<std::string> errors;
    bool ok() const noexcept { return mismatches.empty() && errors.empty(); }
};

/// Runs every engine on every table class for n = 1..n_max within the
/// per-engine ceilings, and checks the dfs counts against the fixtures.
/// Layered square-free levels are compared with the dfs sets member by member.
CrossReport cmd_crossvalidate(int n_max, const CrossOptions& options = {},
                              const golden::Fixtures& fixtures = golden::Fixtures::builtin());

} // namespace crucial::report
