#pragma once

// Reference counts for regression checks. Every stored cell carries a
// provenance string; cells marked lower_bound are only known from below.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crucial/cruciality.hpp"

namespace crucial::golden {

struct Cell {
    enum class Kind : std::uint8_t { unknown, exact, lower_bound };
    Kind kind = Kind::unknown;
    std::uint64_t value = 0;
    std::string provenance;

    bool known() const noexcept { return kind != Kind::unknown; }

    /// Whether an observed count is consistent with this cell. An observed
    /// lower bound only contradicts an exact cell it exceeds.
    bool consistent_with(std::uint64_t observed, bool observed_is_lower_bound) const;

    /// "123", ">=123" or "?".
    std::string to_string() const;
};

struct Row {
    Cell total;
    Cell up_to_symmetry;
    Cell rc_invariant;
};

struct Table {
    std::string name; // as written in the fixture
    std::vector<PositionSpec> classes; // the classes sharing these counts
    std::string note;
    std::map<int, Row> rows;

    const Row* row(int n) const;
};

/// Shortest length with a nonempty class, and how many members it has there.
struct MinimumLength {
    std::vector<PositionSpec> classes;
    int length = 0;
    std::uint64_t count = 0;
    std::string provenance;
};

class Fixtures {
public:
    /// Parses a fixture document. Throws invalid_input for malformed data,
    /// including any present cell without provenance.
    static Fixtures parse(std::string_view json_text);
    static Fixtures load(const std::string& path);
    /// The fixtures compiled into the library.
    static const Fixtures& builtin();

    const std::vector<Table>& tables() const noexcept { return tables_; }
    const std::vector<MinimumLength>& minimum_lengths() const noexcept { return minimum_lengths_; }

    const Table* find(const PositionSpec& spec) const;
    const MinimumLength* minimum_length(const PositionSpec& spec) const;

private:
    std::vector<Table> tables_;
    std::vector<MinimumLength> minimum_lengths_;
};

/// The fixture document compiled into the library.
std::string_view builtin_fixture_text();

} // namespace crucial::golden
