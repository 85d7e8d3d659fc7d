#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "crucial/search_dfs.hpp"
#include "oracle.hpp"
#include "right_crucial_7.hpp"

using namespace crucial;

namespace {

std::vector<oracle::Seq> collect(int n, const PositionSpec& spec, SymmetryMode mode = SymmetryMode::all,
                                 const DfsOptions& options = {}) {
    std::vector<oracle::Seq> out;
    enumerate(n, spec, mode, [&](const Permutation& p) { out.push_back(oracle::values(p)); }, options);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("enumerate examples") {
    CHECK(enumerate(4, {}).total == 12);
    CHECK(enumerate(9, PositionSpec::bicrucial()).total == 54);
    CHECK(enumerate(11, PositionSpec::bicrucial()).total == 0);
    CHECK(enumerate(1, {}).total == 1);

    std::vector<oracle::Seq> listed;
    for (const char* text : right_crucial_7)
        listed.push_back(oracle::values(parse_permutation(text)));
    std::sort(listed.begin(), listed.end());
    CHECK(listed.size() == 60);
    CHECK(collect(7, PositionSpec::right_crucial()) == listed);
}

TEST_CASE("enumerated sets equal the oracle") {
    for (int n = 1; n <= 8; ++n)
        for (const auto& s : table_classes())
            CHECK_MESSAGE(collect(n, s) == oracle::members(n, s), s.to_string() << " n=" << n);
}

TEST_CASE("specs with interior slots equal the oracle") {
    const std::vector<PositionSpec> specs{
        PositionSpec{Anchor::from_left(2)},
        PositionSpec{Anchor::from_right(2)},
        PositionSpec{Anchor::from_left(3)},
        PositionSpec{Anchor::from_left(0), Anchor::from_left(2)},
        PositionSpec{Anchor::from_left(1), Anchor::from_left(3), Anchor::from_right(2)},
    };
    for (int n = 1; n <= 9; ++n)
        for (const auto& s : specs) {
            const auto expected = oracle::members(n, s);
            CHECK_MESSAGE(collect(n, s) == expected, s.to_string() << " n=" << n);
            DfsOptions plain;
            plain.use_effective_positions = false;
            CHECK(enumerate(n, s, SymmetryMode::all, {}, plain).total == expected.size());
        }
}

TEST_CASE("counters equal the oracle") {
    for (int n = 1; n <= 8; ++n)
        for (const auto& s : table_classes()) {
            const auto r = enumerate(n, s);
            const auto o = oracle::count(n, s);
            CHECK(r.total == o.total);
            CHECK(r.up_to_symmetry == o.sym);
            if (s.mirror_symmetric()) {
                REQUIRE(r.rc_invariant);
                CHECK(*r.rc_invariant == o.rc);
            } else {
                CHECK(!r.rc_invariant);
            }
            CHECK(satisfies_inclusion_exclusion(r, s.symmetry_group(), n));
        }
}

TEST_CASE("sink modes") {
    const auto spec = PositionSpec::bicrucial();
    const auto all = collect(9, spec);
    const auto sym = collect(9, spec, SymmetryMode::up_to_symmetry);
    const auto rc = collect(9, spec, SymmetryMode::rc_invariant);
    CHECK(sym.size() == 16);
    CHECK(rc.size() == 5);
    for (const auto& s : sym)
        CHECK(oracle::leader(s, true));
    for (const auto& s : rc) {
        CHECK(oracle::complemented(oracle::reversed(s)) == s);
        CHECK(s <= oracle::complemented(s));
    }
    std::size_t leaders = 0;
    for (const auto& s : all)
        leaders += oracle::leader(s, true);
    CHECK(leaders == sym.size());
    CHECK_THROWS_AS(enumerate(7, PositionSpec::left_crucial(), SymmetryMode::rc_invariant, [](const Permutation&) {}),
                    invalid_input);
}

TEST_CASE("is_lex_leader") {
    CHECK(is_lex_leader(Permutation{2, 1, 3, 4}, SymmetryGroup::complement_only()));
    CHECK(!is_lex_leader(Permutation{3, 4, 2, 1}, SymmetryGroup::complement_only()));

    for (int n = 1; n <= 6; ++n)
        for (const auto& g : {SymmetryGroup::complement_only(), SymmetryGroup::full()}) {
            std::set<std::vector<Permutation>> orbits;
            std::size_t leaders = 0;
            oracle::for_each_permutation(n, [&](const oracle::Seq& v) {
                const Permutation p(v);
                orbits.insert(symmetry_images(p, g));
                leaders += is_lex_leader(p, g);
            });
            CHECK(leaders == orbits.size());
        }
}

TEST_CASE("count_rc_invariant") {
    CHECK(count_rc_invariant(9, PositionSpec::bicrucial()) == 5);
    CHECK(count_rc_invariant(5, {}) == 3);
    CHECK(count_rc_invariant(6, {}) == 0);
    CHECK_THROWS_AS(count_rc_invariant(7, PositionSpec::left_crucial()), invalid_input);
}

TEST_CASE("inclusion-exclusion") {
    CountResult r;
    r.total = 54;
    r.up_to_symmetry = 16;
    r.rc_invariant = 5;
    CHECK(satisfies_inclusion_exclusion(r, SymmetryGroup::full(), 9));
    r.total = 55;
    CHECK(!satisfies_inclusion_exclusion(r, SymmetryGroup::full(), 9));
    CountResult c;
    c.total = 20;
    c.up_to_symmetry = 10;
    CHECK(satisfies_inclusion_exclusion(c, SymmetryGroup::complement_only(), 7));
}

TEST_CASE("pruning toggles do not change counts") {
    for (int n = 1; n <= 9; ++n)
        for (const auto& s : table_classes()) {
            const auto base = enumerate(n, s);
            for (int mask = 0; mask < 32; ++mask) {
                DfsOptions o;
                o.phase_pruning = mask & 1;
                o.incremental_squares = mask & 2;
                o.cruciality_pruning = mask & 4;
                o.use_effective_positions = mask & 8;
                o.orient = mask & 16;
                if (!o.incremental_squares && n > 7)
                    continue; // filtering at the leaves only is slow
                const auto r = enumerate(n, s, SymmetryMode::all, {}, o);
                CHECK_MESSAGE(r.total == base.total, s.to_string() << " n=" << n << " mask=" << mask);
                CHECK(r.up_to_symmetry == base.up_to_symmetry);
                CHECK(r.rc_invariant == base.rc_invariant);
            }
        }
}

TEST_CASE("parallel workers give the same counts and members") {
    for (const auto& s : {PositionSpec::square_free(), PositionSpec::bicrucial(), PositionSpec::parse("{0,n-1}")}) {
        DfsOptions o;
        o.workers = 3;
        o.split_depth = 4;
        for (int n = 5; n <= 11; ++n) {
            const auto a = enumerate(n, s);
            const auto b = enumerate(n, s, SymmetryMode::all, {}, o);
            CHECK(a.total == b.total);
            CHECK(a.up_to_symmetry == b.up_to_symmetry);
            CHECK(a.rc_invariant == b.rc_invariant);
        }
        CHECK(collect(9, s, SymmetryMode::all, o) == collect(9, s));
    }
}

TEST_CASE("deadline yields lower bounds") {
    DfsOptions o;
    o.deadline = std::chrono::steady_clock::now();
    const auto r = enumerate(16, {}, SymmetryMode::all, {}, o);
    CHECK(r.timed_out);
    CHECK(r.total < 16 * 1000 * 1000);
    CHECK(!enumerate(8, {}).timed_out);
}

TEST_CASE("invalid lengths") {
    CHECK_THROWS_AS(enumerate(0, {}), invalid_input);
}
