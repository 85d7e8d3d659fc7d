#pragma once

// Square windows around an inserted element.
//
// Extending pi (length n) at slot `pos` gives sigma of length n+1 with the new
// element at sigma index `pos` (0-based). A square window of sigma is a pair of
// adjacent halves [start, start+half) and [start+half, start+2*half). When the
// window contains `pos`, whether it is a square for a given inserted value x
// splits into two parts:
//   (A) the two halves agree on every pair of offsets not involving the
//       inserted element -- a property of pi alone;
//   (B) x sits in its half exactly as its counterpart sits in the other half,
//       which pins x to one interval of values.
// window_cover evaluates (A) and returns the interval from (B) as a range of
// "slots": slot s means x exceeds exactly s of the known values. For a
// complete permutation slot s corresponds to x = s + 1.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <utility>

namespace crucial::detail {

struct ExtensionWindow {
    int pos;   // inserted slot, 0-based in sigma
    int start; // first sigma index of the window
    int half;  // half length h >= 2
};

// sigma index (not equal to pos) -> 0-based index into pi.
constexpr int source_index(int sigma_index, int pos) noexcept {
    return sigma_index < pos ? sigma_index : sigma_index - 1;
}

// Last pi index (0-based) the window reads.
constexpr int last_source_index(const ExtensionWindow& w) noexcept {
    return w.start + 2 * w.half - 2;
}

struct SlotRange {
    int lo;
    int hi; // inclusive
};

// `values` are the first k entries of pi, holding each of 1..k once (a prefix
// reduced to ranks, or the whole permutation with k == n). The window must be
// complete: last_source_index(w) < k.
template <class Values>
std::optional<SlotRange> window_cover(const Values& values, int k, const ExtensionWindow& w) {
    const int h = w.half;
    const bool x_in_first = w.pos < w.start + h;
    const int d = x_in_first ? w.pos - w.start : w.pos - w.start - h;
    auto at = [&](int half_index, int offset) {
        return values[source_index(w.start + half_index * h + offset, w.pos)];
    };

    // (A): adjacent pairs first, they reject most windows immediately.
    for (int o2 = 1; o2 < h; ++o2) {
        if (o2 == d)
            continue;
        const int a2 = at(0, o2);
        const int b2 = at(1, o2);
        for (int o1 = o2 - 1; o1 >= 0; --o1) {
            if (o1 == d)
                continue;
            if ((at(0, o1) < a2) != (at(1, o1) < b2))
                return std::nullopt;
        }
    }

    // (B)
    const int x_half = x_in_first ? 0 : 1;
    const int y_half = 1 - x_half;
    const int y = at(y_half, d);
    int m = 0;
    for (int o = 0; o < h; ++o)
        if (o != d && at(y_half, o) < y)
            ++m;

    // x must exceed exactly m of its h-1 half-mates: it lies above the m-th
    // smallest mate and not above the (m+1)-th.
    int lo = 0;
    int hi = k;
    for (int o = 0; o < h; ++o) {
        if (o == d)
            continue;
        const int v = at(x_half, o);
        int below = 0;
        for (int o2 = 0; o2 < h; ++o2)
            if (o2 != d && at(x_half, o2) < v)
                ++below;
        if (below == m - 1)
            lo = v;
        else if (below == m)
            hi = v - 1;
    }
    return SlotRange{lo, hi};
}

// Calls fn(window) for every square window of an extension at `pos` of a
// length-n permutation, ordered by half length, then start.
template <class Fn>
void for_each_window(int n, int pos, Fn&& fn) {
    const int len = n + 1;
    for (int h = 2; 2 * h <= len; ++h) {
        const int first = std::max(0, pos - 2 * h + 1);
        const int last = std::min(pos, len - 2 * h);
        for (int s = first; s <= last; ++s) {
            if constexpr (std::is_same_v<decltype(fn(ExtensionWindow{})), bool>) {
                if (!fn(ExtensionWindow{pos, s, h}))
                    return;
            } else {
                fn(ExtensionWindow{pos, s, h});
            }
        }
    }
}

constexpr std::uint64_t slot_bits(int lo, int hi) noexcept {
    // bits lo..hi inclusive, hi < 64
    const std::uint64_t upto_hi = hi >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (hi + 1)) - 1;
    const std::uint64_t below_lo = (std::uint64_t{1} << lo) - 1;
    return upto_hi & ~below_lo;
}

// Bitmask of covered slots (0..n) for an extension of a complete permutation
// of length n <= 62 at `pos`.
template <class Values>
std::uint64_t extension_cover_mask(const Values& values, int n, int pos) {
    const std::uint64_t full = slot_bits(0, n);
    std::uint64_t cover = 0;
    for_each_window(n, pos, [&](const ExtensionWindow& w) {
        if (auto r = window_cover(values, n, w))
            cover |= slot_bits(r->lo, r->hi);
        return cover != full;
    });
    return cover;
}

} // namespace crucial::detail
