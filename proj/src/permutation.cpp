#include "crucial/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

namespace crucial {

namespace {

bool is_permutation_of_1_to_n(const std::vector<int>& v) {
    const auto n = v.size();
    std::vector<char> seen(n + 1, 0);
    for (int x : v) {
        if (x < 1 || static_cast<std::size_t>(x) > n || seen[static_cast<std::size_t>(x)])
            return false;
        seen[static_cast<std::size_t>(x)] = 1;
    }
    return true;
}

} // namespace

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
    if (values_.empty())
        throw invalid_input("permutation must have at least one element");
    if (!is_permutation_of_1_to_n(values_))
        throw invalid_input("values are not a permutation of 1..n");
}

Permutation Permutation::identity(int n) {
    if (n < 1)
        throw invalid_input("permutation length must be >= 1");
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return from_trusted(std::move(v));
}

Permutation pattern_of(std::span<const int> seq) {
    if (seq.empty())
        throw invalid_input("pattern_of: empty sequence");
    std::vector<std::size_t> order(seq.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return seq[a] < seq[b]; });
    std::vector<int> ranks(seq.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (r > 0 && seq[order[r]] == seq[order[r - 1]])
            throw invalid_input("pattern_of: duplicate value " + std::to_string(seq[order[r]]));
        ranks[order[r]] = static_cast<int>(r) + 1;
    }
    return Permutation::from_trusted(std::move(ranks));
}

Permutation reverse(const Permutation& p) {
    auto v = p.values();
    return Permutation::from_trusted(std::vector<int>(v.rbegin(), v.rend()));
}

Permutation complement(const Permutation& p) {
    const int n = p.size();
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int x : p.values())
        out.push_back(n + 1 - x);
    return Permutation::from_trusted(std::move(out));
}

Permutation reverse_complement(const Permutation& p) {
    return reverse(complement(p));
}

Permutation extend(const Permutation& p, int pos, int x) {
    const int n = p.size();
    if (pos < 0 || pos > n)
        throw invalid_input("extend: slot " + std::to_string(pos) + " outside 0.." + std::to_string(n));
    if (x < 1 || x > n + 1)
        throw invalid_input("extend: value " + std::to_string(x) + " outside 1.." + std::to_string(n + 1));
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    auto shifted = [x](int v) { return v < x ? v : v + 1; };
    auto vals = p.values();
    for (int i = 0; i < pos; ++i)
        out.push_back(shifted(vals[static_cast<std::size_t>(i)]));
    out.push_back(x);
    for (int i = pos; i < n; ++i)
        out.push_back(shifted(vals[static_cast<std::size_t>(i)]));
    return Permutation::from_trusted(std::move(out));
}

Permutation delete_at(const Permutation& p, int pos) {
    const int n = p.size();
    if (n < 2)
        throw invalid_input("delete_at: permutation of length 1 has nothing to delete");
    if (pos < 0 || pos >= n)
        throw invalid_input("delete_at: index outside 0..n-1");
    std::vector<int> rest(p.values().begin(), p.values().end());
    rest.erase(rest.begin() + pos);
    return pattern_of(rest);
}

Permutation parse_permutation(std::string_view text) {
    std::vector<int> values;
    std::vector<std::size_t> offsets;

    auto read_number = [&](std::size_t& i, std::size_t limit) {
        const std::size_t begin = i;
        long long v = 0;
        while (i < limit && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i] - '0');
            if (v > 1'000'000)
                throw parse_error("value too large", begin);
            ++i;
        }
        if (i == begin)
            throw parse_error("expected a digit", begin);
        return static_cast<int>(v);
    };
    auto read_paren = [&](std::size_t& i, std::size_t limit) {
        const std::size_t open = i++;
        const int v = read_number(i, limit);
        if (i >= limit || text[i] != ')')
            throw parse_error("unterminated '('", open);
        ++i;
        return v;
    };

    // Split into whitespace-separated tokens first.
    std::vector<std::pair<std::size_t, std::size_t>> tokens;
    for (std::size_t i = 0; i < text.size();) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        tokens.emplace_back(i, j);
        i = j;
    }
    if (tokens.empty())
        throw parse_error("empty permutation text", 0);

    if (tokens.size() == 1) {
        // Compact style: every digit is one value, "(..)" groups a multi-digit value.
        auto [i, end] = tokens.front();
        while (i < end) {
            offsets.push_back(i);
            if (text[i] == '(') {
                values.push_back(read_paren(i, end));
            } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
                values.push_back(text[i] - '0');
                ++i;
            } else {
                throw parse_error(std::string("unexpected character '") + text[i] + "'", i);
            }
        }
    } else {
        for (auto [i, end] : tokens) {
            offsets.push_back(i);
            const int v = text[i] == '(' ? read_paren(i, end) : read_number(i, end);
            if (i != end)
                throw parse_error(std::string("unexpected character '") + text[i] + "'", i);
            values.push_back(v);
        }
    }

    const auto n = values.size();
    std::vector<char> seen(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const int v = values[k];
        if (v < 1 || static_cast<std::size_t>(v) > n)
            throw parse_error("value " + std::to_string(v) + " outside 1.." + std::to_string(n), offsets[k]);
        if (seen[static_cast<std::size_t>(v)])
            throw parse_error("repeated value " + std::to_string(v), offsets[k]);
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return Permutation::from_trusted(std::move(values));
}

std::string format_permutation(const Permutation& p, TextStyle style) {
    std::string out;
    bool first = true;
    for (int v : p.values()) {
        if (style == TextStyle::spaced) {
            if (!first)
                out += ' ';
            out += std::to_string(v);
        } else if (v < 10) {
            out += static_cast<char>('0' + v);
        } else {
            out += '(' + std::to_string(v) + ')';
        }
        first = false;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) {
    return os << format_permutation(p);
}

Permutation apply(Symmetry s, const Permutation& p) {
    switch (s) {
    case Symmetry::identity: return p;
    case Symmetry::complement: return complement(p);
    case Symmetry::reverse: return reverse(p);
    case Symmetry::reverse_complement: return reverse_complement(p);
    }
    return p;
}

bool SymmetryGroup::contains(Symmetry s) const noexcept {
    return with_reverse_ || s == Symmetry::identity || s == Symmetry::complement;
}

std::vector<Symmetry> SymmetryGroup::members() const {
    if (with_reverse_)
        return {Symmetry::identity, Symmetry::complement, Symmetry::reverse, Symmetry::reverse_complement};
    return {Symmetry::identity, Symmetry::complement};
}

std::vector<Permutation> symmetry_images(const Permutation& p, const SymmetryGroup& g) {
    std::vector<Permutation> orbit;
    for (Symmetry s : g.members())
        orbit.push_back(apply(s, p));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

} // namespace crucial
