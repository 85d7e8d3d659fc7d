#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "crucial/cruciality.hpp"
#include "crucial/squares.hpp"
#include "oracle.hpp"

using namespace crucial;

namespace {

const char* const len19_text = "143289756(14)(11)(10)(17)(19)(16)(13)(15)(18)(12)";
const char* const len27_text = "312(27)(26)6(24)(25)54(11)(23)(12)8(10)(16)97(17)(21)(19)(14)(18)(20)(15)(13)(22)";
const char* const p32_text =
    "(28)(30)(31)(23)(22)(24)(29)(27)(19)(25)(26)(17)(13)(18)(21)(20)(14)(16)(32)879(15)(12)5(10)(11)31462";
const char* const s17_text = "2 4 3 1 5 11 10 6 9 12 8 7 13 17 15 14 16";

} // namespace

TEST_CASE("position spec parsing and mirroring") {
    CHECK(PositionSpec::parse("square-free").empty());
    CHECK(PositionSpec::parse("{0,n}") == PositionSpec::bicrucial());
    CHECK(PositionSpec::parse("n, 0") == PositionSpec::bicrucial());
    CHECK(PositionSpec::parse("left") == PositionSpec::left_crucial());
    CHECK(PositionSpec::parse("{0,1,n-1,n}") == PositionSpec::s_crucial());
    CHECK(PositionSpec::parse("{1,n-1}").to_string() == "{1,n-1}");
    CHECK(PositionSpec::s_crucial().to_string() == "{0,1,n-1,n}");
    CHECK_THROWS_AS(PositionSpec::parse("{0,"), invalid_input);
    CHECK_THROWS_AS(PositionSpec::parse("{x}"), invalid_input);

    CHECK(PositionSpec::left_crucial().mirror() == PositionSpec::right_crucial());
    CHECK(PositionSpec::parse("{0,1}").mirror() == PositionSpec::parse("{n-1,n}"));
    CHECK(PositionSpec::bicrucial().mirror_symmetric());
    CHECK(!PositionSpec::left_crucial().mirror_symmetric());
    CHECK(PositionSpec::bicrucial().symmetry_group() == SymmetryGroup::full());
    CHECK(PositionSpec::parse("{0,n-1}").symmetry_group() == SymmetryGroup::complement_only());

    CHECK(table_classes().size() == 16);
    for (const auto& s : table_classes())
        CHECK(PositionSpec::parse(s.to_string()) == s);
}

TEST_CASE("resolve_positions") {
    CHECK(resolve_positions(PositionSpec::bicrucial(), 9) == std::vector<int>{0, 9});
    CHECK(resolve_positions(PositionSpec::s_crucial(), 17) == std::vector<int>{0, 1, 16, 17});
    CHECK(resolve_positions(PositionSpec::parse("{1,n-1}"), 2) == std::vector<int>{1});
    CHECK(resolve_positions(PositionSpec::square_free(), 5).empty());
}

TEST_CASE("effective_positions") {
    CHECK(effective_positions(PositionSpec::s_crucial(), 17) == std::vector<int>{0, 1, 16, 17});
    CHECK(effective_positions(PositionSpec{Anchor::from_left(3)}, 10).empty());
    for (const auto& s : table_classes())
        CHECK(effective_positions(s, 4) == resolve_positions(s, 4));
    CHECK(effective_positions(PositionSpec{Anchor::from_left(2)}, 6) == std::vector<int>{2});
    CHECK(effective_positions(PositionSpec{Anchor::from_left(2)}, 10) == std::vector<int>{2});
    CHECK(effective_positions(PositionSpec{Anchor::from_right(2), Anchor::from_left(4)}, 12) == std::vector<int>{10});
}

TEST_CASE("slots 3..n-3 are always crucial from length 7") {
    // the reduction behind effective_positions, checked exhaustively
    for (int n = 7; n <= 9; ++n) {
        std::size_t free_at_2 = 0;
        oracle::for_each_permutation(n, [&](const oracle::Seq& v) {
            if (!oracle::square_free(v))
                return;
            for (int pos = 3; pos <= n - 3; ++pos)
                CHECK(oracle::crucial_at(v, pos));
            free_at_2 += !oracle::crucial_at(v, 2);
            CHECK(oracle::crucial_at(v, 2) == oracle::crucial_at(oracle::reversed(v), n - 2));
        });
        // slot 2 cannot be dropped
        CHECK(free_at_2 > 0);
    }
    // slot 3 at length 10, the effective_positions example
    oracle::for_each_permutation(10, [](const oracle::Seq& v) {
        if (is_square_free(v))
            CHECK(is_crucial_at(Permutation(v), 3));
    });
}

TEST_CASE("interior slots can fail below length 7") {
    bool found = false;
    for (int n = 4; n <= 6 && !found; ++n)
        oracle::for_each_permutation(n, [&](const oracle::Seq& v) {
            if (!oracle::square_free(v))
                return;
            for (int pos = 2; pos <= n - 2; ++pos)
                found = found || !oracle::crucial_at(v, pos);
        });
    CHECK(found);
}

TEST_CASE("the S-crucial example extends square-free at slot 2") {
    const auto p = parse_permutation(s17_text);
    CHECK(is_p_crucial(p, PositionSpec::s_crucial()));
    CHECK(!is_crucial_at(p, 2));
    CHECK(!oracle::crucial_at(oracle::values(p), 2));
    CHECK(!is_crucial_at(p, 15));
    for (int pos = 3; pos <= 14; ++pos)
        CHECK(is_crucial_at(p, pos));
}

TEST_CASE("is_crucial_at") {
    const Permutation p{2, 1, 3, 6, 5, 4, 7};
    CHECK(is_crucial_at(p, 7));
    CHECK(!is_crucial_at(Permutation{1, 2}, 2));
    CHECK(!is_crucial_at(p, 0));
    CHECK(!oracle::crucial_at(oracle::values(p), 0));
}

TEST_CASE("is_p_crucial examples") {
    CHECK(is_p_crucial(parse_permutation(s17_text), PositionSpec::s_crucial()));
    CHECK(is_p_crucial(parse_permutation(len19_text), PositionSpec::bicrucial()));
    CHECK(is_p_crucial(parse_permutation(len27_text), PositionSpec::bicrucial()));
    CHECK(is_p_crucial(parse_permutation(p32_text), PositionSpec::bicrucial()));
    for (const auto& s : table_classes())
        CHECK(!is_p_crucial(Permutation{6, 3, 1, 4, 2, 5}, s));
}

TEST_CASE("is_p_crucial agrees with the oracle") {
    for (int n = 1; n <= 7; ++n)
        oracle::for_each_permutation(n, [&](const oracle::Seq& v) {
            const Permutation p(v);
            for (const auto& s : table_classes())
                CHECK_MESSAGE(is_p_crucial(p, s) == oracle::p_crucial(v, s), format_permutation(p) << " " << s.to_string());
        });
}

TEST_CASE("certificate for the length-32 permutation") {
    const auto p = parse_permutation(p32_text);
    const auto cert = make_certificate(p, PositionSpec::bicrucial());
    CHECK(cert.entries.size() == 66);
    for (int x = 1; x <= 33; ++x) {
        const auto& w = cert.entries.at({0, x});
        const int expected = x < 29 ? 4 : x <= 30 ? 8 : x == 31 ? 32 : 16;
        CHECK_MESSAGE(w.total_length() == expected, "x=" << x);
    }
    CHECK(verify_certificate(cert));
}

TEST_CASE("certificate witnesses of the named permutations") {
    const auto len19 = make_certificate(parse_permutation(len19_text), PositionSpec::bicrucial());
    CHECK(len19.entries.at({0, 1}).total_length() == 16);
    // the square 12543786 formed with the new leftmost 1
    const auto e = extend(len19.subject, 0, 1);
    const auto& w = len19.entries.at({0, 1});
    CHECK(pattern_of(e.values().subspan(static_cast<std::size_t>(w.start - 1), 8)) ==
          Permutation{1, 2, 5, 4, 3, 7, 8, 6});

    const auto len27 = make_certificate(parse_permutation(len27_text), PositionSpec::bicrucial());
    for (int x = 1; x < 4; ++x)
        CHECK(len27.entries.at({0, x}).total_length() == 4);

    const auto s17 = make_certificate(parse_permutation(s17_text), PositionSpec::s_crucial());
    CHECK(s17.entries.size() == 4 * 18);
    CHECK(verify_certificate(s17));
}

TEST_CASE("tampered certificates are rejected") {
    auto cert = make_certificate(parse_permutation(s17_text), PositionSpec::s_crucial());
    REQUIRE(verify_certificate(cert));

    auto shifted = cert;
    shifted.entries.begin()->second.start += 1;
    CHECK(!verify_certificate(shifted));

    auto missing = cert;
    missing.entries.erase(missing.entries.begin());
    const auto r = verify_certificate(missing);
    CHECK(!r);
    CHECK(!r.problems.empty());

    auto extra = cert;
    extra.entries[{5, 1}] = SquareWitness{1, 2};
    CHECK(!verify_certificate(extra));

    auto not_free = cert;
    not_free.subject = Permutation{6, 3, 1, 4, 2, 5};
    CHECK(!verify_certificate(not_free));
}

TEST_CASE("certificate errors name the failure") {
    CHECK_THROWS_AS(make_certificate(Permutation{6, 3, 1, 4, 2, 5}, PositionSpec::bicrucial()), certificate_error);
    try {
        make_certificate(Permutation{2, 1, 3, 6, 5, 4, 7}, PositionSpec::bicrucial());
        FAIL("expected certificate_error");
    } catch (const certificate_error& ex) {
        CHECK(std::string(ex.what()).find("slot 0") != std::string::npos);
    }
}

TEST_CASE("certificate JSON round trip") {
    const auto cert = make_certificate(Permutation{2, 1, 3, 6, 5, 4, 7}, PositionSpec::right_crucial());
    const auto text = certificate_to_string(cert);
    const auto back = certificate_from_string(text);
    CHECK(back.subject == cert.subject);
    CHECK(back.spec == cert.spec);
    CHECK(back.entries == cert.entries);
    CHECK(verify_certificate(back));
    CHECK_THROWS(certificate_from_string("{\"subject\": 3}"));
    CHECK_THROWS(certificate_from_string("not json"));
}
