#include "crucial/report.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <sstream>

namespace crucial::report {

namespace {

using Clock = std::chrono::steady_clock;

std::optional<Clock::time_point> deadline_for(const EngineOptions& o) {
    if (!o.timeout_seconds)
        return std::nullopt;
    return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*o.timeout_seconds));
}

bool rc_representative(const Permutation& p) {
    return reverse_complement(p) == p && p <= complement(p);
}

bool selected(SymmetryMode mode, const Permutation& p, const SymmetryGroup& g) {
    switch (mode) {
    case SymmetryMode::all: return true;
    case SymmetryMode::up_to_symmetry: return is_lex_leader(p, g);
    case SymmetryMode::rc_invariant: return rc_representative(p);
    }
    return false;
}

// Tallies a whole class given member by member.
struct Tally {
    std::uint64_t total = 0;
    std::uint64_t sym = 0;
    std::uint64_t rc = 0;

    void add(const Permutation& p, const SymmetryGroup& g, SymmetryMode mode, const PermutationSink& sink) {
        ++total;
        if (is_lex_leader(p, g))
            ++sym;
        if (g.has_reverse() && rc_representative(p))
            ++rc;
        if (sink && selected(mode, p, g))
            sink(p);
    }

    void fill(RowResult& row, const SymmetryGroup& g) const {
        row.total = Count{total, false};
        row.up_to_symmetry = Count{sym, false};
        if (g.has_reverse())
            row.rc_invariant = Count{rc, false};
    }
};

std::string cell_text(const std::optional<Count>& c) {
    if (!c)
        return "-";
    return (c->lower_bound ? "≥" : "") + std::to_string(c->value);
}

std::string nodes_text(const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : "-";
}

std::optional<Count> parse_count_cell(const std::string& s, std::size_t line) {
    if (s == "-")
        return std::nullopt;
    Count c;
    std::string digits = s;
    if (digits.rfind("≥", 0) == 0) {
        c.lower_bound = true;
        digits = digits.substr(std::string("≥").size());
    } else if (digits.rfind(">=", 0) == 0) {
        c.lower_bound = true;
        digits = digits.substr(2);
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw parse_error("TSV: bad count '" + s + "' on line " + std::to_string(line), line);
    c.value = std::stoull(digits);
    return c;
}

std::optional<std::uint64_t> parse_nodes_cell(const std::string& s, std::size_t line) {
    if (s == "-")
        return std::nullopt;
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw parse_error("TSV: bad node count '" + s + "' on line " + std::to_string(line), line);
    return std::stoull(s);
}

const char* const tsv_header = "n\ttotal\tnodes\tup_to_symmetry\tnodes_sym\trc_invariant\tnodes_rc";

void compare_cell(std::vector<Mismatch>& out, const std::string& cls, int n, const std::string& column,
                  const std::optional<Count>& observed, const golden::Cell& expected) {
    if (!observed || !expected.known())
        return;
    if (!expected.consistent_with(observed->value, observed->lower_bound))
        out.push_back({cls, n, column, expected.to_string(), cell_text(observed)});
}

void compare_rows(std::vector<Mismatch>& out, const std::string& cls, int n, const std::string& engine,
                  const RowResult& reference, const RowResult& other) {
    auto one = [&](const char* column, const std::optional<Count>& a, const std::optional<Count>& b) {
        if (a && b && *a != *b)
            out.push_back({cls, n, engine + " " + column, cell_text(a), cell_text(b)});
    };
    one("total", reference.total, other.total);
    one("sym", reference.up_to_symmetry, other.up_to_symmetry);
    one("rc", reference.rc_invariant, other.rc_invariant);
}

std::string summary(const RowResult& r) {
    return cell_text(r.total) + "/" + cell_text(r.up_to_symmetry) + "/" + cell_text(r.rc_invariant);
}

} // namespace

Engine parse_engine(std::string_view text) {
    if (text == "dfs")
        return Engine::dfs;
    if (text == "csp")
        return Engine::csp;
    if (text == "layered")
        return Engine::layered;
    if (text == "naive")
        return Engine::naive;
    throw invalid_input("unknown engine '" + std::string(text) + "' (dfs, csp, layered, naive)");
}

std::string to_string(Engine e) {
    switch (e) {
    case Engine::dfs: return "dfs";
    case Engine::csp: return "csp";
    case Engine::layered: return "layered";
    case Engine::naive: return "naive";
    }
    return "?";
}

SymmetryMode parse_mode(std::string_view text) {
    if (text == "all")
        return SymmetryMode::all;
    if (text == "sym")
        return SymmetryMode::up_to_symmetry;
    if (text == "rc")
        return SymmetryMode::rc_invariant;
    throw invalid_input("unknown mode '" + std::string(text) + "' (all, sym, rc)");
}

std::string to_string(SymmetryMode m) {
    switch (m) {
    case SymmetryMode::all: return "all";
    case SymmetryMode::up_to_symmetry: return "sym";
    case SymmetryMode::rc_invariant: return "rc";
    }
    return "?";
}

bool engine_supports(Engine e, const PositionSpec& spec) {
    if (e != Engine::layered)
        return true;
    return spec.empty() || spec == PositionSpec::left_crucial() || spec == PositionSpec::right_crucial() ||
           spec == PositionSpec::bicrucial();
}

RowResult run_engine(Engine e, int n, const PositionSpec& spec, const EngineOptions& options, SymmetryMode sink_mode,
                     const PermutationSink& sink, LayeredCache* cache) {
    if (!engine_supports(e, spec))
        throw invalid_input("the " + to_string(e) + " engine does not handle " + spec.to_string());
    const SymmetryGroup group = spec.symmetry_group();
    if (sink && sink_mode == SymmetryMode::rc_invariant && !group.has_reverse())
        throw invalid_input("rc mode needs a class closed under reversal; " + spec.to_string() + " is not");
    RowResult row;
    row.n = n;

    switch (e) {
    case Engine::dfs: {
        DfsOptions o;
        o.workers = std::max(1u, options.workers);
        o.deadline = deadline_for(options);
        const CountResult r = enumerate(n, spec, sink_mode, sink, o);
        row.total = Count{r.total, r.timed_out};
        row.nodes = r.nodes;
        row.up_to_symmetry = Count{r.up_to_symmetry, r.timed_out};
        if (r.rc_invariant)
            row.rc_invariant = Count{*r.rc_invariant, r.timed_out};
        break;
    }
    case Engine::csp: {
        csp::SolveOptions so;
        so.heuristic = options.heuristic;
        so.preprocessing = options.preprocessing;
        so.deadline = deadline_for(options);
        auto run = [&](SymmetryMode mode, std::optional<Count>& count, std::optional<std::uint64_t>& nodes) {
            so.sink = mode == sink_mode ? sink : PermutationSink{};
            const auto stats = csp::count(n, spec, mode, so);
            count = Count{stats.solutions, stats.timed_out};
            nodes = stats.nodes;
        };
        run(SymmetryMode::all, row.total, row.nodes);
        run(SymmetryMode::up_to_symmetry, row.up_to_symmetry, row.nodes_sym);
        if (group.has_reverse())
            run(SymmetryMode::rc_invariant, row.rc_invariant, row.nodes_rc);
        break;
    }
    case Engine::naive: {
        if (n < 1 || n > naive_max_length)
            throw invalid_input("the naive engine handles n = 1.." + std::to_string(naive_max_length));
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        Tally tally;
        do {
            const auto p = Permutation::from_trusted(v);
            if (is_p_crucial(p, spec))
                tally.add(p, group, sink_mode, sink);
        } while (std::next_permutation(v.begin(), v.end()));
        tally.fill(row, group);
        break;
    }
    case Engine::layered: {
        LayeredCache local;
        LayeredCache& c = cache ? *cache : local;
        Tally tally;
        if (spec.empty()) {
            const auto& level = layered::build_up_to(n, c.store);
            for (std::size_t i = 0; i < level.size(); ++i)
                tally.add(level.member(i), group, sink_mode, sink);
        } else {
            layered::build_up_to(n + 1, c.store);
            for (const auto& p : layered::read_off_crucial(c.store, n, spec))
                tally.add(p, group, sink_mode, sink);
        }
        tally.fill(row, group);
        break;
    }
    }
    return row;
}

void compare_with_golden(RunReport& report, const golden::Fixtures& fixtures) {
    const golden::Table* table = fixtures.find(report.spec);
    if (!table)
        return;
    const std::string cls = report.spec.to_string();
    for (const auto& row : report.rows) {
        const golden::Row* g = table->row(row.n);
        if (!g)
            continue;
        compare_cell(report.mismatches, cls, row.n, "total", row.total, g->total);
        compare_cell(report.mismatches, cls, row.n, "sym", row.up_to_symmetry, g->up_to_symmetry);
        compare_cell(report.mismatches, cls, row.n, "rc", row.rc_invariant, g->rc_invariant);
    }
}

RunReport cmd_table(const PositionSpec& spec, int n_from, int n_to, Engine engine, const EngineOptions& options,
                    const golden::Fixtures& fixtures) {
    const auto start = Clock::now();
    RunReport report;
    report.spec = spec;
    report.engine = engine;
    report.n_from = n_from;
    report.n_to = n_to;
    if (n_from < 1 || n_to < n_from)
        throw invalid_input("table: need 1 <= n_from <= n_to");
    if (!engine_supports(engine, spec))
        throw invalid_input("the " + to_string(engine) + " engine does not handle " + spec.to_string());
    LayeredCache cache;
    for (int n = n_from; n <= n_to; ++n) {
        try {
            report.rows.push_back(run_engine(engine, n, spec, options, SymmetryMode::all, {}, &cache));
        } catch (const std::exception& ex) {
            report.errors.push_back("n=" + std::to_string(n) + ": " + ex.what());
        }
    }
    compare_with_golden(report, fixtures);
    report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return report;
}

RunReport cmd_enumerate(const PositionSpec& spec, int n, Engine engine, SymmetryMode mode, const EngineOptions& options,
                        const PermutationSink& sink, const golden::Fixtures& fixtures) {
    const auto start = Clock::now();
    RunReport report;
    report.spec = spec;
    report.engine = engine;
    report.n_from = report.n_to = n;
    report.rows.push_back(run_engine(engine, n, spec, options, mode, sink));
    compare_with_golden(report, fixtures);
    report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return report;
}

std::string format_tsv(const std::vector<RowResult>& rows) {
    std::ostringstream os;
    os << tsv_header << '\n';
    for (const auto& r : rows) {
        os << r.n << '\t' << cell_text(r.total) << '\t' << nodes_text(r.nodes) << '\t' << cell_text(r.up_to_symmetry)
           << '\t' << nodes_text(r.nodes_sym) << '\t' << cell_text(r.rc_invariant) << '\t' << nodes_text(r.nodes_rc)
           << '\n';
    }
    return os.str();
}

std::vector<RowResult> parse_tsv(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    if (!std::getline(is, line) || line != tsv_header)
        throw parse_error("TSV: missing or unexpected header", 0);
    std::vector<RowResult> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, '\t'))
            f.push_back(cell);
        if (f.size() != 7)
            throw parse_error("TSV: expected 7 fields on line " + std::to_string(line_no), line_no);
        RowResult r;
        const auto n = parse_nodes_cell(f[0], line_no);
        if (!n)
            throw parse_error("TSV: missing n on line " + std::to_string(line_no), line_no);
        r.n = static_cast<int>(*n);
        r.total = parse_count_cell(f[1], line_no);
        r.nodes = parse_nodes_cell(f[2], line_no);
        r.up_to_symmetry = parse_count_cell(f[3], line_no);
        r.nodes_sym = parse_nodes_cell(f[4], line_no);
        r.rc_invariant = parse_count_cell(f[5], line_no);
        r.nodes_rc = parse_nodes_cell(f[6], line_no);
        rows.push_back(r);
    }
    return rows;
}

void write_mismatches(std::ostream& os, const std::vector<Mismatch>& mismatches) {
    for (const auto& m : mismatches)
        os << "MISMATCH " << m.class_name << " n=" << m.n << ' ' << m.column << ": expected " << m.expected
           << ", observed " << m.observed << '\n';
}

CheckOutcome cmd_check(std::string_view permutation_text, const PositionSpec& spec) {
    const Permutation p = parse_permutation(permutation_text);
    CheckOutcome out;
    const std::string cls = spec.empty() ? std::string("square-free") : spec.to_string() + "-crucial";
    if (auto sq = find_square(p)) {
        out.verdict = "not " + cls + ": square at start " + std::to_string(sq->start) + " with half length " +
                      std::to_string(sq->half_len);
        return out;
    }
    try {
        out.certificate = make_certificate(p, spec);
        out.crucial = true;
        out.verdict = cls;
    } catch (const certificate_error& ex) {
        out.verdict = "not " + cls + ": " + ex.what();
    }
    return out;
}

CrossReport cmd_crossvalidate(int n_max, const CrossOptions& options, const golden::Fixtures& fixtures) {
    if (n_max < 1)
        throw invalid_input("crossvalidate: n_max must be >= 1");
    CrossReport report;
    report.lines.push_back("class\tn\tdfs\tcsp\tnaive\tlayered");
    LayeredCache cache;
    for (const auto& spec : table_classes()) {
        const std::string cls = spec.to_string();
        for (int n = 1; n <= n_max; ++n) {
            std::string line = cls + '\t' + std::to_string(n);
            try {
                std::vector<Permutation> dfs_members;
                const bool collect = spec.empty() && n <= options.layered_max;
                const RowResult ref = run_engine(Engine::dfs, n, spec, options.engine, SymmetryMode::all,
                                                 collect ? PermutationSink([&](const Permutation& p) { dfs_members.push_back(p); })
                                                         : PermutationSink{},
                                                 nullptr);
                line += '\t' + summary(ref);

                RunReport single;
                single.spec = spec;
                single.rows.push_back(ref);
                compare_with_golden(single, fixtures);
                report.mismatches.insert(report.mismatches.end(), single.mismatches.begin(), single.mismatches.end());

                auto other = [&](Engine e, bool enabled) {
                    if (!enabled) {
                        line += "\t-";
                        return;
                    }
                    const RowResult r = run_engine(e, n, spec, options.engine, SymmetryMode::all, {}, &cache);
                    compare_rows(report.mismatches, cls, n, to_string(e), ref, r);
                    line += '\t' + summary(r);
                };
                other(Engine::csp, n <= options.csp_max);
                other(Engine::naive, n <= std::min(options.naive_max, naive_max_length));
                other(Engine::layered, engine_supports(Engine::layered, spec) && n <= options.layered_max);

                if (collect) {
                    std::sort(dfs_members.begin(), dfs_members.end());
                    const auto& level = layered::build_up_to(n, cache.store);
                    if (level.members() != dfs_members)
                        report.mismatches.push_back({cls, n, "layered set", "dfs members", "different members"});
                }
            } catch (const std::exception& ex) {
                report.errors.push_back(cls + " n=" + std::to_string(n) + ": " + ex.what());
            }
            report.lines.push_back(line);
        }
    }
    return report;
}

} // namespace crucial::report
