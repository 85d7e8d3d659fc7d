#pragma once

// Level-by-level construction of square-free permutations. A permutation of
// length n is square-free iff its two parents (the patterns of its first and
// last n-1 entries) are square-free and, for even n, its two halves differ in
// pattern. Level n is therefore assembled from levels n-1 and n-2.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "crucial/cruciality.hpp"
#include "crucial/permutation.hpp"

namespace crucial::layered {

/// pattern_of(first n-1 entries). Throws invalid_input for n = 1.
Permutation left_parent(const Permutation& p);
/// pattern_of(last n-1 entries). Throws invalid_input for n = 1.
Permutation right_parent(const Permutation& p);

/// Every pi of length n with left_parent(pi) == sigma and right_parent(pi) == tau.
/// Requires right_parent(sigma) == alpha == left_parent(tau); throws
/// precondition_error otherwise. Returns one or two permutations, ascending.
std::vector<Permutation> merge_candidates(const Permutation& alpha, const Permutation& sigma, const Permutation& tau);

/// Halves of p have the same pattern. Throws invalid_input unless n is even and >= 4.
bool half_repeat_check(const Permutation& p);

/// The square-free permutations of one length, sorted, stored row-major.
class Level {
public:
    Level() = default;
    /// `rows` must be sorted and free of duplicates.
    Level(int n, std::vector<std::uint8_t> rows);
    static Level from_members(int n, std::vector<Permutation> members);

    int length() const noexcept { return n_; }
    std::size_t size() const noexcept { return n_ == 0 ? 0 : rows_.size() / static_cast<std::size_t>(n_); }
    Permutation member(std::size_t i) const;
    std::vector<Permutation> members() const;
    std::optional<std::size_t> index_of(const Permutation& p) const;
    bool contains(const Permutation& p) const { return index_of(p).has_value(); }

    const std::uint8_t* row(std::size_t i) const { return rows_.data() + i * static_cast<std::size_t>(n_); }

    /// Looks up `length()` bytes as a member.
    std::optional<std::size_t> index_of_row(const std::uint8_t* key) const;

    bool operator==(const Level&) const = default;

private:

    int n_ = 0;
    std::vector<std::uint8_t> rows_;
};

/// "level <n> <count>" then one permutation per line (spaced form), in
/// ascending order.
void write_level(std::ostream& os, const Level& level);
/// Throws parse_error on malformed input.
Level read_level(std::istream& is);

/// Levels kept in memory, optionally mirrored to `dir/level-<n>.txt`.
class LevelStore {
public:
    LevelStore() = default;
    explicit LevelStore(std::filesystem::path dir);

    const std::optional<std::filesystem::path>& directory() const noexcept { return dir_; }
    std::filesystem::path file_for(int n) const;

    bool has(int n) const;
    /// Loads from disk when needed. Throws precondition_error when absent.
    const Level& get(int n);
    void put(Level level);
    /// Drops the in-memory copy of a level that is also on disk.
    void release(int n);

private:
    std::optional<std::filesystem::path> dir_;
    std::map<int, Level> cache_;
};

struct BuildStats {
    std::uint64_t candidates = 0;    // merge results examined
    std::uint64_t half_repeats = 0;  // rejected by half_repeat_check
    std::uint64_t duplicates = 0;    // same permutation from two triples
};

/// Builds level n (levels 1 and 2 directly, otherwise from n-1 and n-2, which
/// must be in the store) and stores it. Throws precondition_error when a
/// prerequisite is missing.
const Level& build_level(int n, LevelStore& store, BuildStats* stats = nullptr);

/// Builds every missing level up to n, releasing levels below n-2 when the
/// store is on disk.
const Level& build_up_to(int n, LevelStore& store);

/// Right-crucial ({n}), left-crucial ({0}) or bicrucial ({0,n}) members of
/// level m, read off from which members of level m+1 they are parents of.
/// Throws invalid_input for other specs, precondition_error for missing levels.
std::vector<Permutation> read_off_crucial(LevelStore& store, int m, const PositionSpec& spec);

} // namespace crucial::layered
