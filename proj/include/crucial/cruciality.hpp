#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crucial/permutation.hpp"
#include "crucial/squares.hpp"

namespace crucial {

/// A slot anchored at one end: FromLeft(k) is slot k, FromRight(k) is slot n-k.
struct Anchor {
    enum class Side : std::uint8_t { left, right };
    Side side = Side::left;
    int offset = 0;

    static constexpr Anchor from_left(int k) { return {Side::left, k}; }
    static constexpr Anchor from_right(int k) { return {Side::right, k}; }

    Anchor mirrored() const { return {side == Side::left ? Side::right : Side::left, offset}; }

    /// "0", "1", "n", "n-1", ...
    std::string to_string() const;

    auto operator<=>(const Anchor&) const = default;
};

/// The prohibited-extension slot set P, stated relative to the ends so one
/// spec describes a class across all lengths. Empty means plain square-free.
class PositionSpec {
public:
    PositionSpec() = default;
    explicit PositionSpec(std::vector<Anchor> anchors);
    PositionSpec(std::initializer_list<Anchor> anchors) : PositionSpec(std::vector<Anchor>(anchors)) {}

    /// Accepts "square-free", "left-crucial", "right-crucial", "bicrucial",
    /// "s-crucial", or an anchor list such as "{0,1,n-1,n}" / "0,n".
    static PositionSpec parse(std::string_view text);

    static PositionSpec square_free() { return {}; }
    static PositionSpec left_crucial() { return {Anchor::from_left(0)}; }
    static PositionSpec right_crucial() { return {Anchor::from_right(0)}; }
    static PositionSpec bicrucial() { return {Anchor::from_left(0), Anchor::from_right(0)}; }
    static PositionSpec s_crucial() {
        return {Anchor::from_left(0), Anchor::from_left(1), Anchor::from_right(1), Anchor::from_right(0)};
    }

    bool empty() const noexcept { return anchors_.empty(); }
    std::span<const Anchor> anchors() const noexcept { return anchors_; }

    PositionSpec mirror() const;
    bool mirror_symmetric() const { return mirror() == *this; }

    /// {id, c, r, rc} when the class is closed under reversal, else {id, c}.
    SymmetryGroup symmetry_group() const {
        return mirror_symmetric() ? SymmetryGroup::full() : SymmetryGroup::complement_only();
    }

    /// "square-free" or "{0,1,n-1,n}" (left anchors ascending, then right
    /// anchors from the far end inwards).
    std::string to_string() const;

    bool operator==(const PositionSpec&) const = default;

private:
    std::vector<Anchor> anchors_; // canonical order, no duplicates
};

/// Square-free plus the fifteen nonempty subsets of {0, 1, n-1, n}.
const std::vector<PositionSpec>& table_classes();

/// Concrete slots for length n: anchors outside 0..n are dropped, coincident
/// anchors merged. Sorted ascending.
std::vector<int> resolve_positions(const PositionSpec& spec, int n);

/// Minimum length from which slots 3..n-3 are treated as crucial for every
/// square-free permutation. An insertion there leaves at least two old
/// comparisons on each side, which pins the zigzag phase on both sides to
/// values one apart. Slots 2 and n-2 are not covered: one comparison does not
/// fix the phase, and e.g. every {0,1,n-1,n}-crucial permutation of length 17
/// extends square-free at slot 2.
inline constexpr int reduction_threshold = 7;

/// resolve_positions without slots 3..n-3 once n >= reduction_threshold;
/// unchanged below it. Only meaningful for square-free subjects.
std::vector<int> effective_positions(const PositionSpec& spec, int n);

/// Every extension of p at slot pos contains a square. Throws
/// precondition_error unless p is square-free, invalid_input for a bad slot.
bool is_crucial_at(const Permutation& p, int pos);

/// p is square-free and crucial at every resolved slot of spec.
bool is_p_crucial(const Permutation& p, const PositionSpec& spec);

/// Proof that a permutation is P-crucial: one square per (slot, inserted value).
struct Certificate {
    Permutation subject;
    PositionSpec spec;
    std::map<std::pair<int, int>, SquareWitness> entries; // (pos, x) -> square in extend(subject, pos, x)
};

class certificate_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws certificate_error naming the first square of p, or the first
/// (pos, x) whose extension is square-free.
Certificate make_certificate(const Permutation& p, const PositionSpec& spec);

struct VerificationResult {
    bool ok = true;
    std::vector<std::string> problems;
    explicit operator bool() const noexcept { return ok; }
};

/// Rechecks a certificate from scratch by materialising each extension.
VerificationResult verify_certificate(const Certificate& cert);

/// JSON: {"entries":[{"half_len":..,"pos":..,"start":..,"x":..},...],
///        "spec":["0","n"], "subject":"1 4 3 ..."}; entries sorted by (pos, x).
void write_certificate(std::ostream& os, const Certificate& cert);
std::string certificate_to_string(const Certificate& cert);
Certificate read_certificate(std::istream& is);
Certificate certificate_from_string(std::string_view text);

} // namespace crucial
