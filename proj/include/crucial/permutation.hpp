#pragma once

/**
 * @file permutation.hpp
 * @brief Permutations in one-line notation, order types, the reverse and
 *        complement symmetries, and single-element extensions.
 *
 * Conventions used throughout the library:
 *   - entries are addressed 1-based through Permutation::at (pi_1 .. pi_n);
 *     values() exposes the same data as an ordinary 0-based span;
 *   - extension slots are 0-based: slot 0 is left of pi_1, slot n is right
 *     of pi_n.
 */

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crucial/errors.hpp"

namespace crucial {

class Permutation {
public:
    /// The length-1 permutation "1".
    Permutation() : values_{1} {}

    /// Throws invalid_input unless `values` holds each of 1..n exactly once (n >= 1).
    explicit Permutation(std::vector<int> values);
    Permutation(std::initializer_list<int> values)
        : Permutation(std::vector<int>(values)) {}

    static Permutation identity(int n);

    /// Skips validation; the caller guarantees the invariant.
    static Permutation from_trusted(std::vector<int> values) {
        Permutation p;
        p.values_ = std::move(values);
        return p;
    }

    int size() const noexcept { return static_cast<int>(values_.size()); }

    /// pi_position, 1-based.
    int at(int position) const { return values_.at(static_cast<std::size_t>(position - 1)); }

    std::span<const int> values() const noexcept { return values_; }

    auto operator<=>(const Permutation&) const = default;
    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> values_;
};

/// Order type of a sequence of distinct integers: every value replaced by its rank.
Permutation pattern_of(std::span<const int> seq);

Permutation reverse(const Permutation& p);
Permutation complement(const Permutation& p);
Permutation reverse_complement(const Permutation& p);

/// Inserts x (1..n+1) at slot pos (0..n); existing values >= x shift up by one.
Permutation extend(const Permutation& p, int pos, int x);

/// Inverse of extend at the same slot: drops the entry at 0-based index `pos`
/// and reduces the rest to its order type.
Permutation delete_at(const Permutation& p, int pos);

enum class TextStyle {
    spaced,  // "2 1 3 6 5 4 7" -- canonical
    compact, // "2136547", multi-digit values parenthesised: "143(10)..."
};

/// Accepts whitespace-separated decimals (tokens may be parenthesised) or a
/// single compact token such as "143289756(14)(11)". Throws parse_error.
Permutation parse_permutation(std::string_view text);
std::string format_permutation(const Permutation& p, TextStyle style = TextStyle::spaced);

std::ostream& operator<<(std::ostream& os, const Permutation& p);

enum class Symmetry : std::uint8_t { identity, complement, reverse, reverse_complement };

Permutation apply(Symmetry s, const Permutation& p);

/// One of the two symmetry groups that preserve square-freeness of a class:
/// {id, c} always, plus {r, rc} when the class is closed under reversal.
class SymmetryGroup {
public:
    static constexpr SymmetryGroup complement_only() { return SymmetryGroup(false); }
    static constexpr SymmetryGroup full() { return SymmetryGroup(true); }

    constexpr bool has_reverse() const noexcept { return with_reverse_; }
    bool contains(Symmetry s) const noexcept;
    std::vector<Symmetry> members() const;

    bool operator==(const SymmetryGroup&) const = default;

private:
    constexpr explicit SymmetryGroup(bool with_reverse) : with_reverse_(with_reverse) {}
    bool with_reverse_;
};

/// Orbit of p under g, sorted and without duplicates (size 1, 2 or 4).
std::vector<Permutation> symmetry_images(const Permutation& p, const SymmetryGroup& g);

} // namespace crucial
