#include "crucial/squares.hpp"

#include <string>

#include "detail/windows.hpp"

namespace crucial {

bool factors_order_isomorphic(std::span<const int> seq, int first, int second, int half_len) {
    for (int j = 1; j < half_len; ++j) {
        const int a = seq[static_cast<std::size_t>(first + j)];
        const int b = seq[static_cast<std::size_t>(second + j)];
        for (int i = j - 1; i >= 0; --i) {
            if ((seq[static_cast<std::size_t>(first + i)] < a) != (seq[static_cast<std::size_t>(second + i)] < b))
                return false;
        }
    }
    return true;
}

std::optional<SquareWitness> find_square(std::span<const int> seq) {
    const int n = static_cast<int>(seq.size());
    for (int h = 2; 2 * h <= n; ++h)
        for (int s = 0; s + 2 * h <= n; ++s)
            if (factors_order_isomorphic(seq, s, s + h, h))
                return SquareWitness{s + 1, h};
    return std::nullopt;
}

bool is_square_free(std::span<const int> seq) {
    return !find_square(seq).has_value();
}

std::optional<SquareWitness> square_ending_at(std::span<const int> prefix, int end) {
    if (end < 1 || end > static_cast<int>(prefix.size()))
        throw invalid_input("square_ending_at: end index outside the prefix");
    for (int h = 2; 2 * h <= end; ++h) {
        const int s = end - 2 * h;
        if (factors_order_isomorphic(prefix, s, s + h, h))
            return SquareWitness{s + 1, h};
    }
    return std::nullopt;
}

PhaseSet zigzag_phases(std::span<const int> seq) {
    PhaseSet phases;
    for (int i = 0; i < 4; ++i) {
        bool fits = true;
        for (std::size_t j = 1; j < seq.size() && fits; ++j) {
            const bool up = seq[j - 1] < seq[j];
            const int r = ((static_cast<int>(j) - i) % 4 + 4) % 4;
            fits = up == (r <= 1);
        }
        if (fits)
            phases.insert(i);
    }
    return phases;
}

std::vector<std::optional<SquareWitness>> squares_created_by_extension(const Permutation& p, int pos) {
    const int n = p.size();
    if (pos < 0 || pos > n)
        throw invalid_input("squares_created_by_extension: slot " + std::to_string(pos) + " outside 0.." +
                            std::to_string(n));
    if (!is_square_free(p))
        throw precondition_error("squares_created_by_extension: permutation is not square-free");

    std::vector<std::optional<SquareWitness>> result(static_cast<std::size_t>(n + 1));
    int unassigned = n + 1;
    const auto vals = p.values();
    detail::for_each_window(n, pos, [&](const detail::ExtensionWindow& w) {
        if (auto r = detail::window_cover(vals, n, w)) {
            for (int slot = r->lo; slot <= r->hi; ++slot) {
                auto& cell = result[static_cast<std::size_t>(slot)];
                if (!cell) {
                    cell = SquareWitness{w.start + 1, w.half};
                    --unassigned;
                }
            }
        }
        return unassigned > 0;
    });
    return result;
}

} // namespace crucial
