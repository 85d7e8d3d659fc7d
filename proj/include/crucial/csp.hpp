#pragma once

// A small finite-domain solver specialised to permutation problems.
//
// Integer variables X_1..X_n hold the permutation. Boolean variables hold
// order literals b(p,q) = [X_p < X_q], threshold literals t(q,x) = [X_q >= x]
// and auxiliary selectors used by the cruciality encoding. Boolean variable 0
// is the constant TRUE.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crucial/cruciality.hpp"
#include "crucial/permutation.hpp"
#include "crucial/search_dfs.hpp"

namespace crucial::csp {

struct Lit {
    int var = 0;
    bool negated = false;

    Lit operator!() const noexcept { return {var, !negated}; }
    bool operator==(const Lit&) const = default;
};

inline constexpr Lit lit_true{0, false};
inline constexpr Lit lit_false{0, true};

/// One entry of a lex constraint: X_var, or n+1-X_var when complemented.
struct LexTerm {
    int var = 0; // 0-based integer variable
    bool complemented = false;
    bool operator==(const LexTerm&) const = default;
};

enum class ConstraintKind : std::uint8_t {
    all_different,      // ints
    channel,            // lits[0] <=> X[ints[0]] < X[ints[1]]
    threshold,          // lits[0] <=> X[ints[0]] >= value
    not_equal,          // lits[0] != lits[1]
    not_all_equal,      // not every pair in `pairs` is equal
    half_reified_equal, // head => every pair in `pairs` is equal
    clause,             // at least one of lits
    lex_leq,            // lhs <=lex rhs
    rc_fixed,           // X_i + X_{n+1-i} = n+1
};

std::string to_string(ConstraintKind k);

struct Constraint {
    ConstraintKind kind = ConstraintKind::clause;
    std::vector<int> ints;
    std::vector<Lit> lits;
    std::vector<std::pair<Lit, Lit>> pairs;
    Lit head{};
    int value = 0;
    std::vector<LexTerm> lhs;
    std::vector<LexTerm> rhs;
};

struct ModelOptions {
    // Slots 0 and n only consider squares of length 4 or a multiple of 8.
    bool restrict_end_square_lengths = true;
    bool use_effective_positions = true;
};

class Model {
public:
    int n() const noexcept { return n_; }
    const PositionSpec& spec() const noexcept { return spec_; }
    SymmetryMode mode() const noexcept { return mode_; }

    int bool_var_count() const noexcept { return static_cast<int>(bools_.size()); }
    int order_literal_count() const noexcept { return n_ * (n_ - 1) / 2; }
    std::size_t square_block_count() const noexcept { return square_blocks_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

    /// b(p,q) for 1-based p < q.
    Lit order_lit(int p, int q) const;
    /// [X_i < X_j] for distinct 0-based i, j.
    Lit less(int i, int j) const;
    /// [X_q >= x] for 1-based q, if the model uses it. Constants for x <= 1 and x > n.
    std::optional<Lit> at_least(int q, int x) const;

    /// Integer variables a boolean variable depends on, as a bitmask.
    std::uint64_t footprint(int bool_var) const { return bools_.at(static_cast<std::size_t>(bool_var)).footprint; }

    /// Whether p satisfies every constraint, auxiliaries chosen as freely as
    /// possible. Independent of propagation.
    bool evaluate(const Permutation& p) const;

    /// Debug listing; the format may change.
    void dump(std::ostream& os) const;

    // Construction.
    explicit Model(int n);
    Lit new_aux(std::uint64_t footprint);
    Lit threshold_lit(int q, int x);
    void add(Constraint c);

private:
    friend Model build_model(int, const PositionSpec&, SymmetryMode, const ModelOptions&);
    friend Model add_lex_leader(Model, const SymmetryGroup&);

    enum class BoolKind : std::uint8_t { constant, order, threshold, aux };
    struct BoolVar {
        BoolKind kind;
        int a = 0; // order: p (0-based); threshold: q (0-based)
        int b = 0; // order: q (0-based); threshold: x
        std::uint64_t footprint = 0;
    };

    int n_;
    PositionSpec spec_;
    SymmetryMode mode_ = SymmetryMode::all;
    std::vector<BoolVar> bools_;
    std::vector<int> order_var_;     // i*n + j for i < j
    std::vector<int> threshold_var_; // q*(n+2) + x, -1 when absent
    std::vector<Constraint> constraints_;
    std::size_t square_blocks_ = 0;
};

/// Solutions are exactly the square-free (empty spec) or P-crucial
/// permutations of length n, reduced according to mode: lex leaders for
/// up_to_symmetry, reverse-complement fixed points with p <=lex c(p) for
/// rc_invariant (which requires a class closed under reversal).
Model build_model(int n, const PositionSpec& spec = {}, SymmetryMode mode = SymmetryMode::all,
                  const ModelOptions& options = {});

/// Adds X <=lex g(X) for every non-identity member of g. Throws invalid_input
/// for a reversing member when the class is not closed under reversal.
Model add_lex_leader(Model m, const SymmetryGroup& g);

enum class Heuristic : std::uint8_t { static_order, weighted_degree };
enum class Preprocessing : std::uint8_t { none, singleton, double_singleton };

struct SearchStats {
    std::uint64_t solutions = 0;
    std::uint64_t nodes = 0; // left branches
    std::uint64_t failures = 0;
    bool timed_out = false;
    bool root_failed = false; // preprocessing or root propagation proved infeasibility
};

struct SolveOptions {
    Heuristic heuristic = Heuristic::static_order;
    Preprocessing preprocessing = Preprocessing::none;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::function<void(const Permutation&)> sink;
};

/// Trail-based propagation engine over one model. Usable directly to inspect
/// propagation, or through search().
class Solver {
public:
    explicit Solver(const Model& m);

    std::uint64_t domain(int var) const { return dom_.at(static_cast<std::size_t>(var)); }
    /// -1 unknown, else 0/1.
    int value(Lit l) const;

    /// Narrow a domain to `mask` (bit v-1 for value v). False on wipe-out.
    bool restrict_domain(int var, std::uint64_t mask);
    bool assign(int var, int value) { return restrict_domain(var, std::uint64_t{1} << (value - 1)); }
    bool set(Lit l, bool v);

    /// Runs queued constraints to a fixpoint. False on conflict.
    bool propagate();
    /// Queues every constraint and propagates.
    bool propagate_all();

    SearchStats search(const SolveOptions& options = {});

private:
    struct TrailEntry {
        int index;
        bool is_int;
        std::uint64_t old;
    };

    bool set_bool(int var, bool v);
    bool set_domain(int var, std::uint64_t mask);
    bool run(int c);
    void enqueue_int(int var);
    void enqueue_bool(int var);
    void push_level() { levels_.push_back(trail_.size()); }
    void pop_level();
    void note_conflict();
    int select_var() const;
    bool singleton_pass(int depth, bool* changed);
    bool singleton_consistent(int depth);
    void dfs(const SolveOptions& options, SearchStats& stats);
    bool out_of_time(const SolveOptions& options, SearchStats& stats);

    bool run_all_different(const Constraint& c);
    bool run_channel(const Constraint& c);
    bool run_threshold(const Constraint& c);
    bool run_not_equal(const Constraint& c);
    bool run_not_all_equal(const Constraint& c);
    bool run_half_reified(const Constraint& c);
    bool run_clause(const Constraint& c);
    bool run_lex(const Constraint& c);
    bool run_rc_fixed(const Constraint& c);

    std::uint64_t term_domain(const LexTerm& t) const;
    bool restrict_term(const LexTerm& t, std::uint64_t term_mask);

    const Model& m_;
    int n_;
    std::uint64_t full_;
    std::vector<std::uint64_t> dom_;
    std::vector<std::int8_t> val_;
    std::vector<TrailEntry> trail_;
    std::vector<std::size_t> levels_;
    std::vector<std::vector<int>> int_watch_;
    std::vector<std::vector<int>> bool_watch_;
    std::vector<int> queue_;
    std::vector<char> queued_;
    std::size_t queue_head_ = 0;
    int current_ = -1;
    std::vector<std::uint64_t> footprint_;  // per constraint
    std::vector<std::uint64_t> weight_;     // per constraint
    std::vector<std::uint64_t> var_weight_; // per int var
    Heuristic heuristic_ = Heuristic::static_order;
};

/// Counts solutions of m by complete depth-first search.
SearchStats solve_count(const Model& m, const SolveOptions& options = {});

/// Builds the model for (n, spec, mode) and counts it.
SearchStats count(int n, const PositionSpec& spec, SymmetryMode mode, const SolveOptions& options = {},
                  const ModelOptions& model_options = {});

} // namespace crucial::csp
