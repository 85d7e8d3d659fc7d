#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "crucial/permutation.hpp"
#include "oracle.hpp"

using namespace crucial;

TEST_CASE("pattern_of") {
    CHECK(pattern_of(std::vector<int>{4, 9}) == Permutation{1, 2});
    CHECK(pattern_of(std::vector<int>{5, 1, 7}) == Permutation{2, 1, 3});
    CHECK(pattern_of(std::vector<int>{8}) == Permutation{1});
    CHECK(pattern_of(std::vector<int>{6, 3, 8}) == pattern_of(std::vector<int>{5, 1, 7}));
}

TEST_CASE("construction validates") {
    CHECK_THROWS_AS(Permutation(std::vector<int>{}), invalid_input);
    CHECK_THROWS_AS(Permutation(std::vector<int>{1, 1}), invalid_input);
    CHECK_THROWS_AS(Permutation(std::vector<int>{0, 1}), invalid_input);
    CHECK_THROWS_AS(Permutation(std::vector<int>{1, 3}), invalid_input);
    CHECK(Permutation::identity(4) == Permutation{1, 2, 3, 4});
    CHECK(Permutation{2, 1, 3}.at(1) == 2);
}

TEST_CASE("reverse and complement") {
    const Permutation p{2, 1, 3, 4};
    CHECK(reverse(p) == Permutation{4, 3, 1, 2});
    CHECK(complement(p) == Permutation{3, 4, 2, 1});
    CHECK(reverse(Permutation{1}) == Permutation{1});
    CHECK(reverse(Permutation{1, 2}) == Permutation{2, 1});
    CHECK(complement(Permutation{1}) == Permutation{1});
    CHECK(complement(Permutation{2, 1}) == Permutation{1, 2});

    // r and c commute and are involutions
    oracle::for_each_permutation(4, [](const oracle::Seq& v) {
        const Permutation q(v);
        CHECK(reverse(complement(q)) == complement(reverse(q)));
        CHECK(reverse_complement(q) == reverse(complement(q)));
        CHECK(reverse(reverse(q)) == q);
        CHECK(complement(complement(q)) == q);
    });
}

TEST_CASE("extend") {
    CHECK(extend(Permutation{2, 1}, 0, 2) == Permutation{2, 3, 1});
    CHECK(extend(Permutation{1, 3, 2}, 3, 4) == Permutation{1, 3, 2, 4});
    CHECK(extend(Permutation{2, 1}, 1, 2) == Permutation{3, 2, 1});

    // the only 3-permutation with value 2 at position 2 whose deletion gives 21
    std::vector<Permutation> hits;
    oracle::for_each_permutation(3, [&](const oracle::Seq& v) {
        const Permutation q(v);
        if (q.at(2) == 2 && delete_at(q, 1) == Permutation{2, 1})
            hits.push_back(q);
    });
    REQUIRE(hits.size() == 1);
    CHECK(hits.front() == Permutation{3, 2, 1});

    CHECK_THROWS_AS(extend(Permutation{1, 2}, 3, 1), invalid_input);
    CHECK_THROWS_AS(extend(Permutation{1, 2}, 0, 4), invalid_input);
}

TEST_CASE("extend matches the oracle and inverts delete_at") {
    for (int n = 1; n <= 5; ++n)
        oracle::for_each_permutation(n, [&](const oracle::Seq& v) {
            const Permutation p(v);
            for (int pos = 0; pos <= n; ++pos)
                for (int x = 1; x <= n + 1; ++x) {
                    const auto e = extend(p, pos, x);
                    CHECK(oracle::values(e) == oracle::extend(v, pos, x));
                    CHECK(e.at(pos + 1) == x);
                    CHECK(delete_at(e, pos) == p);
                }
        });
}

TEST_CASE("parse and format") {
    const auto len19 = parse_permutation("143289756(14)(11)(10)(17)(19)(16)(13)(15)(18)(12)");
    REQUIRE(len19.size() == 19);
    CHECK(len19.at(1) == 1);
    CHECK(len19.at(2) == 4);
    CHECK(len19.at(3) == 3);
    CHECK(len19.at(10) == 14);
    CHECK(len19.at(19) == 12);
    CHECK(format_permutation(len19, TextStyle::compact) == "143289756(14)(11)(10)(17)(19)(16)(13)(15)(18)(12)");

    CHECK(parse_permutation("2 1 3 6 5 4 7") == Permutation{2, 1, 3, 6, 5, 4, 7});
    CHECK(parse_permutation("2136547") == Permutation{2, 1, 3, 6, 5, 4, 7});
    CHECK(parse_permutation("1") == Permutation{1});
    CHECK(format_permutation(Permutation{2, 1, 3}) == "2 1 3");

    CHECK_THROWS_AS(parse_permutation(""), parse_error);
    CHECK_THROWS_AS(parse_permutation("12a"), parse_error);
    CHECK_THROWS_AS(parse_permutation("1(2"), parse_error);
    CHECK_THROWS(parse_permutation("113"));
    CHECK_THROWS(parse_permutation("1 3"));
}

TEST_CASE("format round-trips") {
    oracle::for_each_permutation(6, [](const oracle::Seq& v) {
        const Permutation p(v);
        CHECK(parse_permutation(format_permutation(p)) == p);
        CHECK(parse_permutation(format_permutation(p, TextStyle::compact)) == p);
    });
    const auto big = parse_permutation("(28)(30)(31)(23)(22)(24)(29)(27)(19)(25)(26)(17)(13)(18)(21)(20)(14)(16)(32)879(15)(12)5(10)(11)31462");
    CHECK(big.size() == 32);
    CHECK(parse_permutation(format_permutation(big, TextStyle::compact)) == big);
}

TEST_CASE("symmetry images") {
    const auto full = symmetry_images(Permutation{2, 1, 3, 4}, SymmetryGroup::full());
    const std::set<Permutation> expected{Permutation{2, 1, 3, 4}, Permutation{4, 3, 1, 2}, Permutation{3, 4, 2, 1},
                                         Permutation{1, 2, 4, 3}};
    CHECK(std::set<Permutation>(full.begin(), full.end()) == expected);
    CHECK(full.size() == 4);
    CHECK(symmetry_images(Permutation{1}, SymmetryGroup::full()) == std::vector<Permutation>{Permutation{1}});
    CHECK(symmetry_images(Permutation{1, 2}, SymmetryGroup::complement_only()) ==
          std::vector<Permutation>{Permutation{1, 2}, Permutation{2, 1}});

    CHECK(SymmetryGroup::full().contains(Symmetry::reverse));
    CHECK(!SymmetryGroup::complement_only().contains(Symmetry::reverse));
    CHECK(!SymmetryGroup::complement_only().contains(Symmetry::reverse_complement));
    CHECK(SymmetryGroup::complement_only().contains(Symmetry::complement));
    CHECK(SymmetryGroup::full().members().size() == 4);
}
