#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crucial/squares.hpp"
#include "oracle.hpp"

using namespace crucial;

namespace {

std::optional<SquareWitness> oracle_shortest(const oracle::Seq& s) {
    std::optional<SquareWitness> best;
    for (auto [start, h] : oracle::all_squares(s)) {
        const SquareWitness w{start, h};
        if (!best || w < *best)
            best = w;
    }
    return best;
}

} // namespace

TEST_CASE("find_square examples") {
    CHECK(find_square(Permutation{6, 3, 1, 4, 2, 5}) == SquareWitness{2, 2});
    CHECK(!find_square(Permutation{2, 4, 3, 1, 5, 6}));
    // 425638 is a square, but 5638 (start 4) is shorter
    const Permutation p{7, 4, 2, 5, 6, 3, 8, 9, 1};
    CHECK(factors_order_isomorphic(p.values(), 2, 5, 3));
    CHECK(find_square(p) == SquareWitness{4, 2});
    CHECK(oracle_shortest(oracle::values(p)) == SquareWitness{4, 2});
}

TEST_CASE("is_square_free examples") {
    CHECK(is_square_free(Permutation{2, 4, 3, 1, 5, 6}));
    CHECK(!is_square_free(Permutation{6, 3, 1, 4, 2, 5}));
    CHECK(is_square_free(Permutation{1}));
    CHECK(!is_square_free(Permutation{1, 2, 3, 4}));
}

TEST_CASE("find_square agrees with the oracle") {
    for (int n = 1; n <= 8; ++n)
        oracle::for_each_permutation(n, [](const oracle::Seq& v) {
            const auto got = find_square(v);
            CHECK(got == oracle_shortest(v));
            CHECK(is_square_free(v) == !got.has_value());
        });
}

TEST_CASE("square_ending_at") {
    CHECK(!square_ending_at(std::vector<int>{6, 3, 1, 4}, 4));
    CHECK(square_ending_at(std::vector<int>{6, 3, 1, 4, 2}, 5) == SquareWitness{2, 2});
    CHECK(!square_ending_at(std::vector<int>{1, 2}, 2));

    oracle::for_each_permutation(7, [](const oracle::Seq& v) {
        for (int end = 1; end <= 7; ++end) {
            std::optional<SquareWitness> expected;
            for (auto [start, h] : oracle::all_squares(v))
                if (start + 2 * h - 1 == end && (!expected || h < expected->half_len))
                    expected = SquareWitness{start, h};
            CHECK(square_ending_at(v, end) == expected);
        }
    });
}

TEST_CASE("zigzag phases") {
    CHECK(zigzag_phases(Permutation{1}) == PhaseSet::all());
    PhaseSet only0;
    only0.insert(0);
    CHECK(zigzag_phases(Permutation{2, 4, 3, 1, 5, 6}) == only0);
    CHECK(zigzag_phases(Permutation{6, 3, 1, 4, 2, 5}).empty());
}

TEST_CASE("zigzag phases follow the template") {
    for (int n = 2; n <= 6; ++n)
        oracle::for_each_permutation(n, [&](const oracle::Seq& v) {
            const auto phases = zigzag_phases(v);
            for (int i = 0; i < 4; ++i) {
                bool fits = true;
                for (int j = 1; j < n; ++j) {
                    const bool up = ((j - i) % 4 + 4) % 4 <= 1;
                    fits = fits && (v[j - 1] < v[j]) == up;
                }
                CHECK(phases.contains(i) == fits);
            }
        });
}

TEST_CASE("squares created by extension") {
    const Permutation right{2, 1, 3, 6, 5, 4, 7};
    const auto at_end = squares_created_by_extension(right, 7);
    REQUIRE(at_end.size() == 8);
    for (const auto& w : at_end)
        CHECK(w.has_value());

    const auto small = squares_created_by_extension(Permutation{1, 2}, 2);
    CHECK(!small.at(2));

    const auto p32 = parse_permutation(
        "(28)(30)(31)(23)(22)(24)(29)(27)(19)(25)(26)(17)(13)(18)(21)(20)(14)(16)(32)879(15)(12)5(10)(11)31462");
    const auto left = squares_created_by_extension(p32, 0);
    REQUIRE(left.size() == 33);
    for (int x = 1; x <= 33; ++x) {
        const auto& w = left[static_cast<std::size_t>(x - 1)];
        REQUIRE(w.has_value());
        int expected = 16;
        if (x < 29)
            expected = 4;
        else if (x <= 30)
            expected = 8;
        else if (x == 31)
            expected = 32;
        CHECK_MESSAGE(w->total_length() == expected, "x=" << x);
    }

    CHECK_THROWS_AS(squares_created_by_extension(Permutation{1, 2, 3, 4}, 0), precondition_error);
}

TEST_CASE("extension squares agree with the oracle") {
    for (int n = 1; n <= 6; ++n)
        oracle::for_each_permutation(n, [&](const oracle::Seq& v) {
            if (!oracle::square_free(v))
                return;
            const Permutation p(v);
            for (int pos = 0; pos <= n; ++pos) {
                const auto got = squares_created_by_extension(p, pos);
                for (int x = 1; x <= n + 1; ++x) {
                    const auto e = oracle::extend(v, pos, x);
                    // shortest square through the new element
                    std::optional<SquareWitness> expected;
                    for (auto [start, h] : oracle::all_squares(e))
                        if (start <= pos + 1 && pos + 1 <= start + 2 * h - 1) {
                            const SquareWitness w{start, h};
                            if (!expected || w < *expected)
                                expected = w;
                        }
                    CHECK(got[static_cast<std::size_t>(x - 1)] == expected);
                }
            }
        });
}
