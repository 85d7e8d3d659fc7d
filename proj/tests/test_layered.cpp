#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "crucial/layered.hpp"
#include "crucial/search_dfs.hpp"
#include "oracle.hpp"

using namespace crucial;
using namespace crucial::layered;

namespace {

std::vector<Permutation> all_of(int n) {
    std::vector<Permutation> out;
    oracle::for_each_permutation(n, [&](const oracle::Seq& v) { out.emplace_back(v); });
    return out;
}

std::vector<Permutation> dfs_members(int n, const PositionSpec& spec) {
    std::vector<Permutation> out;
    enumerate(n, spec, SymmetryMode::all, [&](const Permutation& p) { out.push_back(p); });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("parents") {
    CHECK(right_parent(Permutation{2, 1, 3, 4}) == Permutation{1, 2, 3});
    CHECK(left_parent(Permutation{2, 1, 3, 6, 5, 4, 7}) == Permutation{2, 1, 3, 6, 5, 4});
    CHECK(left_parent(Permutation{1, 2}) == Permutation{1});
    CHECK_THROWS(left_parent(Permutation{1}));
}

TEST_CASE("merge_candidates examples") {
    CHECK(merge_candidates({1}, {1, 2}, {1, 2}) == std::vector<Permutation>{{1, 2, 3}});
    CHECK(merge_candidates({1}, {1, 2}, {2, 1}) == std::vector<Permutation>{{1, 3, 2}, {2, 3, 1}});
    CHECK(merge_candidates({1, 2}, {1, 2, 3}, {1, 2, 3}) == std::vector<Permutation>{{1, 2, 3, 4}});
    CHECK_THROWS_AS(merge_candidates({1, 2}, {1, 3, 2}, {1, 2, 3}), precondition_error);
}

TEST_CASE("merge_candidates equals brute force") {
    for (int n = 3; n <= 6; ++n) {
        const auto longer = all_of(n);
        for (const auto& sigma : all_of(n - 1))
            for (const auto& tau : all_of(n - 1)) {
                if (right_parent(sigma) != left_parent(tau))
                    continue;
                std::vector<Permutation> expected;
                for (const auto& p : longer)
                    if (left_parent(p) == sigma && right_parent(p) == tau)
                        expected.push_back(p);
                auto got = merge_candidates(right_parent(sigma), sigma, tau);
                std::sort(got.begin(), got.end());
                CHECK(got == expected);
            }
    }
}

TEST_CASE("half_repeat_check") {
    CHECK(half_repeat_check({3, 1, 4, 2}));
    CHECK(half_repeat_check({1, 2, 3, 4}));
    CHECK(half_repeat_check({2, 1, 4, 3}));
    CHECK(!half_repeat_check({1, 2, 4, 3}));
    CHECK_THROWS(half_repeat_check({2, 1, 3}));
}

TEST_CASE("build_level counts") {
    LevelStore store;
    CHECK(build_up_to(3, store).size() == 6);
    CHECK(build_up_to(4, store).size() == 12);
    CHECK(build_up_to(8, store).size() == 1112);
    BuildStats stats;
    LevelStore fresh;
    build_up_to(6, fresh);
    build_level(7, fresh, &stats);
    CHECK(stats.duplicates == 0);
    CHECK(stats.candidates >= 406);
    CHECK_THROWS_AS(build_level(9, fresh), precondition_error);
}

TEST_CASE("levels equal the oracle square-free sets") {
    LevelStore store;
    for (int n = 1; n <= 8; ++n) {
        const auto& level = build_up_to(n, store);
        std::vector<oracle::Seq> got;
        for (const auto& p : level.members())
            got.push_back(oracle::values(p));
        CHECK(got == oracle::members(n, {}));
    }
}

TEST_CASE("levels equal dfs sets") {
    LevelStore store;
    for (int n = 1; n <= 11; ++n)
        CHECK(build_up_to(n, store).members() == dfs_members(n, {}));
}

TEST_CASE("level lookup") {
    LevelStore store;
    const auto& level = build_up_to(6, store);
    for (std::size_t i = 0; i < level.size(); ++i)
        CHECK(level.index_of(level.member(i)) == i);
    CHECK(!level.contains(Permutation{1, 2, 3, 4, 5, 6}));
    CHECK(!level.contains(Permutation{1, 2}));
}

TEST_CASE("level text round trip") {
    LevelStore store;
    const auto& level = build_up_to(6, store);
    std::stringstream ss;
    write_level(ss, level);
    CHECK(read_level(ss) == level);

    std::istringstream unsorted("level 3 2\n2 1 3\n1 2 3\n");
    CHECK_THROWS_AS(read_level(unsorted), parse_error);
    std::istringstream short_count("level 3 3\n1 2 3\n2 1 3\n");
    CHECK_THROWS_AS(read_level(short_count), parse_error);
    std::istringstream wrong_length("level 3 1\n1 2\n");
    CHECK_THROWS_AS(read_level(wrong_length), parse_error);
}

TEST_CASE("store on disk") {
    const auto dir = std::filesystem::temp_directory_path() / "crucial_levels_test";
    std::filesystem::remove_all(dir);
    {
        LevelStore store(dir);
        CHECK(build_up_to(9, store).size() == 3980);
        CHECK(std::filesystem::exists(store.file_for(9)));
    }
    {
        LevelStore reopened(dir);
        CHECK(reopened.has(9));
        CHECK(reopened.get(9).size() == 3980);
        CHECK(build_up_to(10, reopened).size() == 15216);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("read_off_crucial") {
    LevelStore store;
    build_up_to(11, store);
    CHECK(read_off_crucial(store, 7, PositionSpec::right_crucial()).size() == 60);
    CHECK(read_off_crucial(store, 9, PositionSpec::bicrucial()).size() == 54);
    CHECK(read_off_crucial(store, 10, PositionSpec::bicrucial()).empty());
    for (int m = 1; m <= 10; ++m)
        for (const auto& spec : {PositionSpec::left_crucial(), PositionSpec::right_crucial(), PositionSpec::bicrucial()}) {
            auto got = read_off_crucial(store, m, spec);
            std::sort(got.begin(), got.end());
            CHECK_MESSAGE(got == dfs_members(m, spec), spec.to_string() << " m=" << m);
        }
    CHECK_THROWS_AS(read_off_crucial(store, 7, PositionSpec::parse("{1}")), invalid_input);
    CHECK_THROWS_AS(read_off_crucial(store, 11, PositionSpec::bicrucial()), precondition_error);
}
