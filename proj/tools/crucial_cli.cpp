// crucial: enumerate, count and certify square-free and P-crucial permutations.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "crucial/report.hpp"

using namespace crucial;

namespace {

struct Common {
    std::string engine = "dfs";
    std::string mode = "all";
    std::string heuristic = "static";
    std::string preprocess = "none";
    double timeout = 0;
    unsigned workers = 1;
    std::string out;
    std::string golden;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--engine", c.engine, "dfs, csp, layered or naive")
        ->check(CLI::IsMember({"dfs", "csp", "layered", "naive"}));
    cmd->add_option("--heuristic", c.heuristic, "csp variable order: static or wdeg")
        ->check(CLI::IsMember({"static", "wdeg"}));
    cmd->add_option("--preprocess", c.preprocess, "csp preprocessing: none, singleton or double")
        ->check(CLI::IsMember({"none", "singleton", "double"}));
    cmd->add_option("--timeout", c.timeout, "seconds per (class, n); 0 = none");
    cmd->add_option("--workers", c.workers, "dfs worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", c.out, "write the table here instead of stdout");
    cmd->add_option("--golden", c.golden, "fixture file replacing the built-in counts");
}

report::EngineOptions engine_options(const Common& c) {
    report::EngineOptions o;
    o.heuristic = c.heuristic == "wdeg" ? csp::Heuristic::weighted_degree : csp::Heuristic::static_order;
    if (c.preprocess == "singleton")
        o.preprocessing = csp::Preprocessing::singleton;
    else if (c.preprocess == "double")
        o.preprocessing = csp::Preprocessing::double_singleton;
    if (c.timeout > 0)
        o.timeout_seconds = c.timeout;
    o.workers = c.workers;
    return o;
}

golden::Fixtures fixtures_for(const Common& c) {
    return c.golden.empty() ? golden::Fixtures::builtin() : golden::Fixtures::load(c.golden);
}

// stdout unless a path is given.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-")
            return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_)
            throw invalid_input("cannot write " + path);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

int finish(const report::RunReport& r) {
    report::write_mismatches(std::cerr, r.mismatches);
    for (const auto& e : r.errors)
        std::cerr << "ERROR " << e << '\n';
    std::cerr << r.spec.to_string() << " engine=" << report::to_string(r.engine) << " wall=" << r.wall_seconds
              << "s " << (r.ok() ? "ok" : "FAILED") << '\n';
    return r.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Square-free and P-crucial permutations"};
    app.require_subcommand(1);

    Common common;
    std::string cls = "square-free";
    int n = 0;
    int n_from = 1;
    std::string list_path;

    auto* enumerate_cmd = app.add_subcommand("enumerate", "count one (class, n) and optionally list its members");
    enumerate_cmd->add_option("class", cls, "square-free, left, right, bicrucial, s-crucial or {0,1,n-1}...")->required();
    enumerate_cmd->add_option("n", n, "length")->required()->check(CLI::PositiveNumber);
    enumerate_cmd->add_option("--mode", common.mode, "which members to list: all, sym or rc")
        ->check(CLI::IsMember({"all", "sym", "rc"}));
    enumerate_cmd->add_option("--list", list_path, "write the selected members here, one per line ('-' = stdout)");
    add_common(enumerate_cmd, common);

    auto* table_cmd = app.add_subcommand("table", "count a class for a range of lengths");
    table_cmd->add_option("class", cls, "class")->required();
    table_cmd->add_option("n_max", n, "largest length")->required()->check(CLI::PositiveNumber);
    table_cmd->add_option("--from", n_from, "smallest length")->check(CLI::PositiveNumber);
    add_common(table_cmd, common);

    std::string perm_text;
    auto* check_cmd = app.add_subcommand("check", "decide P-cruciality of one permutation");
    check_cmd->add_option("permutation", perm_text, "e.g. 2136547 or \"2 1 3 6 5 4 7\"")->required();
    check_cmd->add_option("--class", cls, "position spec (default square-free)");
    check_cmd->add_option("--out", common.out, "write the certificate here");

    std::string cert_path;
    auto* verify_cmd = app.add_subcommand("verify-cert", "recheck a certificate file");
    verify_cmd->add_option("file", cert_path, "certificate JSON")->required()->check(CLI::ExistingFile);

    report::CrossOptions cross;
    auto* cross_cmd = app.add_subcommand("crossvalidate", "compare all engines on all classes");
    cross_cmd->add_option("n_max", n, "largest length")->required()->check(CLI::PositiveNumber);
    cross_cmd->add_option("--naive-max", cross.naive_max, "largest length for the naive filter");
    cross_cmd->add_option("--csp-max", cross.csp_max, "largest length for the csp engine");
    cross_cmd->add_option("--layered-max", cross.layered_max, "largest length for the layered engine");
    add_common(cross_cmd, common);

    std::string level_dir;
    auto* layered_cmd = app.add_subcommand("layered-build", "build square-free levels 1..n");
    layered_cmd->add_option("n", n, "top level")->required()->check(CLI::PositiveNumber);
    layered_cmd->add_option("--dir", level_dir, "keep level files in this directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enumerate_cmd) {
            const auto spec = PositionSpec::parse(cls);
            Output list_out(list_path);
            PermutationSink sink;
            if (!list_path.empty())
                sink = [&](const Permutation& p) { list_out.stream() << format_permutation(p, TextStyle::compact) << '\n'; };
            const auto r = report::cmd_enumerate(spec, n, report::parse_engine(common.engine),
                                                 report::parse_mode(common.mode), engine_options(common), sink,
                                                 fixtures_for(common));
            Output out(common.out);
            out.stream() << report::format_tsv(r.rows);
            return finish(r);
        }
        if (*table_cmd) {
            const auto r = report::cmd_table(PositionSpec::parse(cls), n_from, n, report::parse_engine(common.engine),
                                             engine_options(common), fixtures_for(common));
            Output out(common.out);
            out.stream() << report::format_tsv(r.rows);
            return finish(r);
        }
        if (*check_cmd) {
            const auto outcome = report::cmd_check(perm_text, PositionSpec::parse(cls));
            std::cout << (outcome.crucial ? "true" : "false") << '\t' << outcome.verdict << '\n';
            if (outcome.certificate && !common.out.empty()) {
                Output out(common.out);
                write_certificate(out.stream(), *outcome.certificate);
            }
            return outcome.crucial ? 0 : 1;
        }
        if (*verify_cmd) {
            std::ifstream in(cert_path);
            const auto cert = read_certificate(in);
            const auto result = verify_certificate(cert);
            for (const auto& p : result.problems)
                std::cerr << "PROBLEM " << p << '\n';
            std::cout << (result.ok ? "valid" : "invalid") << '\t' << format_permutation(cert.subject, TextStyle::compact)
                      << '\t' << (cert.spec.empty() ? std::string("square-free") : cert.spec.to_string()) << '\t'
                      << cert.entries.size() << " entries\n";
            return result.ok ? 0 : 1;
        }
        if (*cross_cmd) {
            cross.engine = engine_options(common);
            const auto r = report::cmd_crossvalidate(n, cross, fixtures_for(common));
            Output out(common.out);
            for (const auto& line : r.lines)
                out.stream() << line << '\n';
            report::write_mismatches(std::cerr, r.mismatches);
            for (const auto& e : r.errors)
                std::cerr << "ERROR " << e << '\n';
            std::cerr << (r.ok() ? "all engines agree" : "FAILED") << '\n';
            return r.ok() ? 0 : 1;
        }
        if (*layered_cmd) {
            layered::LevelStore store = level_dir.empty() ? layered::LevelStore() : layered::LevelStore(level_dir);
            std::cout << "n\tmembers\tcandidates\thalf_repeats\tduplicates\tseconds\n";
            for (int m = 1; m <= n; ++m) {
                if (store.has(m)) {
                    std::cout << m << '\t' << store.get(m).size() << "\t-\t-\t-\t-\n";
                    continue;
                }
                layered::BuildStats stats;
                const auto t0 = std::chrono::steady_clock::now();
                const auto& level = layered::build_level(m, store, &stats);
                const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                std::cout << m << '\t' << level.size() << '\t' << stats.candidates << '\t' << stats.half_repeats << '\t'
                          << stats.duplicates << '\t' << secs << '\n';
            }
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    return 0;
}
