#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>

#include "crucial/cruciality.hpp"
#include "crucial/permutation.hpp"

namespace crucial {

enum class SymmetryMode {
    all,            // every member of the class
    up_to_symmetry, // one lex leader per orbit
    rc_invariant,   // members fixed by reverse-complement, one per {p, c(p)}
};

struct CountResult {
    std::uint64_t total = 0;
    std::uint64_t up_to_symmetry = 0;
    // Present only when reversal is a symmetry of the class.
    std::optional<std::uint64_t> rc_invariant;
    // Committed value placements.
    std::uint64_t nodes = 0;
    // The run stopped at its deadline; counts are lower bounds.
    bool timed_out = false;

    CountResult& operator+=(const CountResult& o);
};

/// total = 4*up - 2*rc under the full group, total = 2*up under {id, c}.
/// Vacuous for n = 1, where the single permutation is its own orbit.
bool satisfies_inclusion_exclusion(const CountResult& r, const SymmetryGroup& g, int n);

struct DfsOptions {
    bool phase_pruning = true;       // drop placements that leave no zigzag phase
    bool incremental_squares = true; // forbid placements completing a square
    bool cruciality_pruning = true;  // track slots 0 and 1 on the prefix and cut dead branches
    bool use_effective_positions = true;
    bool orient = true;              // search the mirrored class when it has more left-end slots
    unsigned workers = 1;
    int split_depth = 0;             // 0 picks a depth from the worker count
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

using PermutationSink = std::function<void(const Permutation&)>;

/// Counts the square-free (empty spec) or P-crucial permutations of length n.
/// All three counters are always filled; `mode` selects which permutations
/// reach the sink. With one worker the sink sees a deterministic order:
/// depth-first, next value rank ascending at every position.
CountResult enumerate(int n, const PositionSpec& spec, SymmetryMode mode = SymmetryMode::all,
                      const PermutationSink& sink = {}, const DfsOptions& options = {});

bool is_lex_leader(const Permutation& p, const SymmetryGroup& g);

/// Class members with p == rc(p), one per {p, c(p)}. Throws invalid_input
/// when the class is not closed under reversal.
std::uint64_t count_rc_invariant(int n, const PositionSpec& spec, const DfsOptions& options = {});

} // namespace crucial
