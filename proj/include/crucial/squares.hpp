#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crucial/permutation.hpp"

namespace crucial {

/// Two adjacent order-isomorphic factors pi_start..pi_{start+h-1} and
/// pi_{start+h}..pi_{start+2h-1}. `start` is 1-based.
struct SquareWitness {
    int start = 1;
    int half_len = 2;

    int total_length() const noexcept { return 2 * half_len; }

    /// Shortest first, then leftmost.
    auto operator<=>(const SquareWitness& o) const noexcept {
        if (auto c = half_len <=> o.half_len; c != 0)
            return c;
        return start <=> o.start;
    }
    bool operator==(const SquareWitness&) const = default;
};

/// Subset of the four zigzag phases {0,1,2,3}.
class PhaseSet {
public:
    constexpr PhaseSet() = default;
    static constexpr PhaseSet all() { return PhaseSet(0b1111); }

    constexpr bool contains(int phase) const noexcept { return (bits_ >> phase) & 1u; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr void insert(int phase) noexcept { bits_ |= static_cast<std::uint8_t>(1u << phase); }
    constexpr std::uint8_t bits() const noexcept { return bits_; }

    bool operator==(const PhaseSet&) const = default;

private:
    constexpr explicit PhaseSet(std::uint8_t bits) : bits_(bits) {}
    std::uint8_t bits_ = 0;
};

/// True iff a[i..i+h) and a[j..j+h) are order-isomorphic, deciding every
/// value pair rather than only adjacent ones.
bool factors_order_isomorphic(std::span<const int> seq, int first, int second, int half_len);

/// The shortest (then leftmost) square, or nothing when square-free.
std::optional<SquareWitness> find_square(std::span<const int> seq);
inline std::optional<SquareWitness> find_square(const Permutation& p) { return find_square(p.values()); }

bool is_square_free(std::span<const int> seq);
inline bool is_square_free(const Permutation& p) { return is_square_free(p.values()); }

/// Shortest square whose last element is at 1-based index `end` of `prefix`.
std::optional<SquareWitness> square_ending_at(std::span<const int> prefix, int end);

/// Phases i for which every adjacent comparison matches the period-4 zigzag
/// template: with 1-based positions j, pi_j < pi_{j+1} iff (j - i) mod 4 is 0 or 1
/// (minima at positions = i mod 4, maxima at positions = i+2 mod 4).
PhaseSet zigzag_phases(std::span<const int> seq);
inline PhaseSet zigzag_phases(const Permutation& p) { return zigzag_phases(p.values()); }

/// Element x-1 holds the minimal square of extend(p, pos, x), which always
/// contains the inserted element, or nothing when that extension is square-free.
/// Throws precondition_error unless p is square-free.
std::vector<std::optional<SquareWitness>> squares_created_by_extension(const Permutation& p, int pos);

} // namespace crucial
