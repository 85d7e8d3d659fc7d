#include "crucial/cruciality.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "detail/windows.hpp"

namespace crucial {

namespace {

// left anchors ascending, then right anchors from slot n-k with large k first
bool canonical_less(const Anchor& a, const Anchor& b) {
    if (a.side != b.side)
        return a.side == Anchor::Side::left;
    return a.side == Anchor::Side::left ? a.offset < b.offset : a.offset > b.offset;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    std::string out(s.substr(b, e - b));
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

Anchor parse_anchor(const std::string& token) {
    auto number = [&](std::string_view digits) {
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw invalid_input("bad slot anchor '" + token + "'");
        return std::stoi(std::string(digits));
    };
    if (token == "n")
        return Anchor::from_right(0);
    if (token.rfind("n-", 0) == 0)
        return Anchor::from_right(number(std::string_view(token).substr(2)));
    return Anchor::from_left(number(token));
}

} // namespace

std::string Anchor::to_string() const {
    if (side == Side::left)
        return std::to_string(offset);
    return offset == 0 ? std::string("n") : "n-" + std::to_string(offset);
}

PositionSpec::PositionSpec(std::vector<Anchor> anchors) : anchors_(std::move(anchors)) {
    for (const auto& a : anchors_)
        if (a.offset < 0)
            throw invalid_input("anchor offsets must be non-negative");
    std::sort(anchors_.begin(), anchors_.end(), canonical_less);
    anchors_.erase(std::unique(anchors_.begin(), anchors_.end()), anchors_.end());
}

PositionSpec PositionSpec::parse(std::string_view text) {
    std::string s = trim(text);
    if (s == "square-free" || s == "squarefree" || s == "sf" || s == "{}" || s == "none")
        return {};
    if (s == "left-crucial" || s == "left")
        return left_crucial();
    if (s == "right-crucial" || s == "right")
        return right_crucial();
    if (s == "bicrucial")
        return bicrucial();
    if (s == "s-crucial" || s == "super-crucial")
        return s_crucial();
    if (!s.empty() && s.front() == '{') {
        if (s.back() != '}')
            throw invalid_input("unbalanced braces in position spec '" + std::string(text) + "'");
        s = s.substr(1, s.size() - 2);
    }
    std::vector<Anchor> anchors;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string token;
        for (char c : item)
            if (!std::isspace(static_cast<unsigned char>(c)))
                token += c;
        if (token.empty())
            throw invalid_input("empty anchor in position spec '" + std::string(text) + "'");
        anchors.push_back(parse_anchor(token));
    }
    if (anchors.empty())
        return {};
    return PositionSpec(std::move(anchors));
}

PositionSpec PositionSpec::mirror() const {
    std::vector<Anchor> m;
    m.reserve(anchors_.size());
    for (const auto& a : anchors_)
        m.push_back(a.mirrored());
    return PositionSpec(std::move(m));
}

std::string PositionSpec::to_string() const {
    if (anchors_.empty())
        return "square-free";
    std::string out = "{";
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
        if (i)
            out += ',';
        out += anchors_[i].to_string();
    }
    return out + "}";
}

const std::vector<PositionSpec>& table_classes() {
    static const std::vector<PositionSpec> classes = [] {
        const Anchor l0 = Anchor::from_left(0), l1 = Anchor::from_left(1);
        const Anchor r1 = Anchor::from_right(1), r0 = Anchor::from_right(0);
        return std::vector<PositionSpec>{
            PositionSpec{},
            PositionSpec{l0}, PositionSpec{r0}, PositionSpec{l1}, PositionSpec{r1},
            PositionSpec{l0, l1}, PositionSpec{r1, r0},
            PositionSpec{l0, r1}, PositionSpec{l1, r0},
            PositionSpec{l0, r0}, PositionSpec{l1, r1},
            PositionSpec{l0, l1, r1}, PositionSpec{l1, r1, r0},
            PositionSpec{l0, l1, r0}, PositionSpec{l0, r1, r0},
            PositionSpec{l0, l1, r1, r0},
        };
    }();
    return classes;
}

std::vector<int> resolve_positions(const PositionSpec& spec, int n) {
    if (n < 1)
        throw invalid_input("resolve_positions: n must be >= 1");
    std::set<int> out;
    for (const auto& a : spec.anchors()) {
        const int p = a.side == Anchor::Side::left ? a.offset : n - a.offset;
        if (p >= 0 && p <= n)
            out.insert(p);
    }
    return {out.begin(), out.end()};
}

std::vector<int> effective_positions(const PositionSpec& spec, int n) {
    auto resolved = resolve_positions(spec, n);
    if (n < reduction_threshold)
        return resolved;
    std::erase_if(resolved, [n](int p) { return p >= 3 && p <= n - 3; });
    return resolved;
}

bool is_crucial_at(const Permutation& p, int pos) {
    const int n = p.size();
    if (pos < 0 || pos > n)
        throw invalid_input("is_crucial_at: slot " + std::to_string(pos) + " outside 0.." + std::to_string(n));
    if (!is_square_free(p))
        throw precondition_error("is_crucial_at: permutation is not square-free");
    const auto witnesses = squares_created_by_extension(p, pos);
    return std::all_of(witnesses.begin(), witnesses.end(), [](const auto& w) { return w.has_value(); });
}

bool is_p_crucial(const Permutation& p, const PositionSpec& spec) {
    if (!is_square_free(p))
        return false;
    for (int pos : resolve_positions(spec, p.size()))
        if (!is_crucial_at(p, pos))
            return false;
    return true;
}

Certificate make_certificate(const Permutation& p, const PositionSpec& spec) {
    if (auto sq = find_square(p)) {
        throw certificate_error("subject is not square-free: square at start " + std::to_string(sq->start) +
                                " with half length " + std::to_string(sq->half_len));
    }
    Certificate cert{p, spec, {}};
    for (int pos : resolve_positions(spec, p.size())) {
        const auto witnesses = squares_created_by_extension(p, pos);
        for (std::size_t i = 0; i < witnesses.size(); ++i) {
            const int x = static_cast<int>(i) + 1;
            if (!witnesses[i]) {
                throw certificate_error("extension at slot " + std::to_string(pos) + " by " + std::to_string(x) +
                                        " is square-free");
            }
            cert.entries.emplace(std::pair{pos, x}, *witnesses[i]);
        }
    }
    return cert;
}

VerificationResult verify_certificate(const Certificate& cert) {
    VerificationResult result;
    auto fail = [&](std::string msg) {
        result.ok = false;
        result.problems.push_back(std::move(msg));
    };
    const Permutation& p = cert.subject;
    const int n = p.size();

    if (auto sq = find_square(p))
        fail("subject contains a square at start " + std::to_string(sq->start));

    const auto positions = resolve_positions(cert.spec, n);
    std::set<std::pair<int, int>> expected;
    for (int pos : positions)
        for (int x = 1; x <= n + 1; ++x)
            expected.emplace(pos, x);

    for (const auto& key : expected)
        if (!cert.entries.contains(key))
            fail("missing entry for slot " + std::to_string(key.first) + ", value " + std::to_string(key.second));

    for (const auto& [key, w] : cert.entries) {
        const auto [pos, x] = key;
        const std::string where = "slot " + std::to_string(pos) + ", value " + std::to_string(x);
        if (!expected.contains(key)) {
            fail("unexpected entry for " + where);
            continue;
        }
        const Permutation ext = extend(p, pos, x);
        const auto vals = ext.values();
        const int len = ext.size();
        if (w.half_len < 2 || w.start < 1 || w.start + 2 * w.half_len - 1 > len) {
            fail("witness out of range for " + where);
            continue;
        }
        const auto first = vals.subspan(static_cast<std::size_t>(w.start - 1), static_cast<std::size_t>(w.half_len));
        const auto second = vals.subspan(static_cast<std::size_t>(w.start - 1 + w.half_len),
                                         static_cast<std::size_t>(w.half_len));
        if (pattern_of(first) != pattern_of(second))
            fail("witness for " + where + " is not a square");
        else if (pos + 1 < w.start || pos + 1 > w.start + 2 * w.half_len - 1)
            fail("witness for " + where + " does not contain the inserted element");
    }
    return result;
}

void write_certificate(std::ostream& os, const Certificate& cert) {
    nlohmann::json j;
    j["subject"] = format_permutation(cert.subject);
    auto spec = nlohmann::json::array();
    for (const auto& a : cert.spec.anchors())
        spec.push_back(a.to_string());
    j["spec"] = spec;
    auto entries = nlohmann::json::array();
    for (const auto& [key, w] : cert.entries)
        entries.push_back({{"pos", key.first}, {"x", key.second}, {"start", w.start}, {"half_len", w.half_len}});
    j["entries"] = entries;
    os << j.dump(2) << '\n';
}

std::string certificate_to_string(const Certificate& cert) {
    std::ostringstream os;
    write_certificate(os, cert);
    return os.str();
}

Certificate read_certificate(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
        Certificate cert;
        cert.subject = parse_permutation(j.at("subject").get<std::string>());
        std::vector<Anchor> anchors;
        for (const auto& a : j.at("spec"))
            anchors.push_back(parse_anchor(a.get<std::string>()));
        cert.spec = PositionSpec(std::move(anchors));
        for (const auto& e : j.at("entries")) {
            const std::pair key{e.at("pos").get<int>(), e.at("x").get<int>()};
            const SquareWitness w{e.at("start").get<int>(), e.at("half_len").get<int>()};
            if (!cert.entries.emplace(key, w).second)
                throw invalid_input("duplicate certificate entry");
        }
        return cert;
    } catch (const nlohmann::json::exception& ex) {
        throw invalid_input(std::string("malformed certificate: ") + ex.what());
    }
}

Certificate certificate_from_string(std::string_view text) {
    std::istringstream is{std::string(text)};
    return read_certificate(is);
}

} // namespace crucial
