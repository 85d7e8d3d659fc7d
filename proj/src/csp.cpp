#include "crucial/csp.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

#include "detail/windows.hpp"

namespace crucial::csp {

namespace {

constexpr int max_length = 62;

int lowest_value(std::uint64_t d) { return std::countr_zero(d) + 1; }
int highest_value(std::uint64_t d) { return 64 - std::countl_zero(d); }

// values 1..v-1
std::uint64_t values_below(int v) { return v <= 1 ? 0 : (v > 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (v - 1)) - 1); }
// values v+1..
std::uint64_t values_above(int v) { return v >= 64 ? 0 : ~((std::uint64_t{1} << v) - 1); }

// value v <-> n+1-v
std::uint64_t mirror_values(std::uint64_t d, int n) {
    std::uint64_t out = 0;
    while (d) {
        const int i = std::countr_zero(d);
        d &= d - 1;
        out |= std::uint64_t{1} << (n - 1 - i);
    }
    return out;
}

std::string lit_name(Lit l) {
    if (l.var == 0)
        return l.negated ? "F" : "T";
    return (l.negated ? "!b" : "b") + std::to_string(l.var);
}

std::string term_name(const LexTerm& t) {
    return (t.complemented ? "c(X" : "X") + std::to_string(t.var + 1) + (t.complemented ? ")" : "");
}

const char* mode_name(SymmetryMode m) {
    switch (m) {
    case SymmetryMode::all: return "all";
    case SymmetryMode::up_to_symmetry: return "sym";
    case SymmetryMode::rc_invariant: return "rc";
    }
    return "?";
}

} // namespace

std::string to_string(ConstraintKind k) {
    switch (k) {
    case ConstraintKind::all_different: return "all_different";
    case ConstraintKind::channel: return "channel";
    case ConstraintKind::threshold: return "threshold";
    case ConstraintKind::not_equal: return "not_equal";
    case ConstraintKind::not_all_equal: return "not_all_equal";
    case ConstraintKind::half_reified_equal: return "half_reified_equal";
    case ConstraintKind::clause: return "clause";
    case ConstraintKind::lex_leq: return "lex_leq";
    case ConstraintKind::rc_fixed: return "rc_fixed";
    }
    return "?";
}

// ---------------------------------------------------------------- Model

Model::Model(int n) : n_(n) {
    if (n < 1 || n > max_length)
        throw invalid_input("csp model: n must be in 1.." + std::to_string(max_length));
    bools_.push_back({BoolKind::constant, 0, 0, 0});
    order_var_.assign(static_cast<std::size_t>(n * n), -1);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            order_var_[static_cast<std::size_t>(i * n + j)] = static_cast<int>(bools_.size());
            bools_.push_back({BoolKind::order, i, j, (std::uint64_t{1} << i) | (std::uint64_t{1} << j)});
        }
    }
    threshold_var_.assign(static_cast<std::size_t>(n * (n + 2)), -1);
}

Lit Model::order_lit(int p, int q) const {
    if (p < 1 || q > n_ || p >= q)
        throw invalid_input("order_lit: need 1 <= p < q <= n");
    return {order_var_[static_cast<std::size_t>((p - 1) * n_ + (q - 1))], false};
}

Lit Model::less(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
        throw invalid_input("less: need distinct indices in 0..n-1");
    if (i < j)
        return {order_var_[static_cast<std::size_t>(i * n_ + j)], false};
    return {order_var_[static_cast<std::size_t>(j * n_ + i)], true};
}

std::optional<Lit> Model::at_least(int q, int x) const {
    if (q < 1 || q > n_)
        throw invalid_input("at_least: position out of range");
    if (x <= 1)
        return lit_true;
    if (x > n_)
        return lit_false;
    const int v = threshold_var_[static_cast<std::size_t>((q - 1) * (n_ + 2) + x)];
    if (v < 0)
        return std::nullopt;
    return Lit{v, false};
}

Lit Model::new_aux(std::uint64_t footprint) {
    bools_.push_back({BoolKind::aux, 0, 0, footprint});
    return {static_cast<int>(bools_.size()) - 1, false};
}

Lit Model::threshold_lit(int q, int x) {
    if (x <= 1)
        return lit_true;
    if (x > n_)
        return lit_false;
    int& slot = threshold_var_[static_cast<std::size_t>(q * (n_ + 2) + x)];
    if (slot < 0) {
        slot = static_cast<int>(bools_.size());
        bools_.push_back({BoolKind::threshold, q, x, std::uint64_t{1} << q});
        Constraint c;
        c.kind = ConstraintKind::threshold;
        c.ints = {q};
        c.lits = {Lit{slot, false}};
        c.value = x;
        add(std::move(c));
    }
    return {slot, false};
}

void Model::add(Constraint c) {
    constraints_.push_back(std::move(c));
}

bool Model::evaluate(const Permutation& p) const {
    if (p.size() != n_)
        return false;
    const auto x = p.values();
    std::vector<std::int8_t> val(bools_.size(), 1);
    for (std::size_t b = 0; b < bools_.size(); ++b) {
        const auto& v = bools_[b];
        if (v.kind == BoolKind::order)
            val[b] = x[static_cast<std::size_t>(v.a)] < x[static_cast<std::size_t>(v.b)];
        else if (v.kind == BoolKind::threshold)
            val[b] = x[static_cast<std::size_t>(v.a)] >= v.b;
    }
    auto lv = [&](Lit l) { return static_cast<bool>(val[static_cast<std::size_t>(l.var)]) != l.negated; };
    auto pairs_equal = [&](const Constraint& c) {
        return std::all_of(c.pairs.begin(), c.pairs.end(), [&](const auto& pr) { return lv(pr.first) == lv(pr.second); });
    };

    // Auxiliaries start true and are switched off while some implication fails.
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& c : constraints_) {
            if (c.kind != ConstraintKind::half_reified_equal || !lv(c.head) || pairs_equal(c))
                continue;
            if (bools_[static_cast<std::size_t>(c.head.var)].kind != BoolKind::aux)
                return false;
            val[static_cast<std::size_t>(c.head.var)] = c.head.negated;
            changed = true;
        }
    }

    auto term = [&](const LexTerm& t) {
        const int v = x[static_cast<std::size_t>(t.var)];
        return t.complemented ? n_ + 1 - v : v;
    };
    for (const auto& c : constraints_) {
        bool ok = true;
        switch (c.kind) {
        case ConstraintKind::all_different: {
            std::vector<int> seen;
            for (int i : c.ints)
                seen.push_back(x[static_cast<std::size_t>(i)]);
            std::sort(seen.begin(), seen.end());
            ok = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
            break;
        }
        case ConstraintKind::channel:
            ok = lv(c.lits[0]) == (x[static_cast<std::size_t>(c.ints[0])] < x[static_cast<std::size_t>(c.ints[1])]);
            break;
        case ConstraintKind::threshold:
            ok = lv(c.lits[0]) == (x[static_cast<std::size_t>(c.ints[0])] >= c.value);
            break;
        case ConstraintKind::not_equal:
            ok = lv(c.lits[0]) != lv(c.lits[1]);
            break;
        case ConstraintKind::not_all_equal:
            ok = !pairs_equal(c);
            break;
        case ConstraintKind::half_reified_equal:
            ok = !lv(c.head) || pairs_equal(c);
            break;
        case ConstraintKind::clause:
            ok = std::any_of(c.lits.begin(), c.lits.end(), lv);
            break;
        case ConstraintKind::lex_leq: {
            int cmp = 0;
            for (std::size_t i = 0; i < c.lhs.size() && cmp == 0; ++i)
                cmp = term(c.lhs[i]) - term(c.rhs[i]);
            ok = cmp <= 0;
            break;
        }
        case ConstraintKind::rc_fixed:
            for (int i = 0; i < n_ && ok; ++i)
                ok = x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(n_ - 1 - i)] == n_ + 1;
            break;
        }
        if (!ok)
            return false;
    }
    return true;
}

void Model::dump(std::ostream& os) const {
    os << "model n=" << n_ << " spec=" << spec_.to_string() << " mode=" << mode_name(mode_) << '\n';
    os << "int X1..X" << n_ << " in 1.." << n_ << '\n';
    for (std::size_t b = 0; b < bools_.size(); ++b) {
        const auto& v = bools_[b];
        os << "bool b" << b << " = ";
        switch (v.kind) {
        case BoolKind::constant: os << "TRUE"; break;
        case BoolKind::order: os << "[X" << v.a + 1 << " < X" << v.b + 1 << ']'; break;
        case BoolKind::threshold: os << "[X" << v.a + 1 << " >= " << v.b << ']'; break;
        case BoolKind::aux: {
            os << "aux over {";
            bool first = true;
            for (int i = 0; i < n_; ++i) {
                if ((v.footprint >> i) & 1u) {
                    os << (first ? "" : ",") << 'X' << i + 1;
                    first = false;
                }
            }
            os << '}';
            break;
        }
        }
        os << '\n';
    }
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        const auto& c = constraints_[i];
        os << 'c' << i << ' ' << to_string(c.kind);
        switch (c.kind) {
        case ConstraintKind::all_different:
        case ConstraintKind::rc_fixed:
            for (int v : c.ints)
                os << " X" << v + 1;
            break;
        case ConstraintKind::channel:
            os << ' ' << lit_name(c.lits[0]) << " <=> X" << c.ints[0] + 1 << " < X" << c.ints[1] + 1;
            break;
        case ConstraintKind::threshold:
            os << ' ' << lit_name(c.lits[0]) << " <=> X" << c.ints[0] + 1 << " >= " << c.value;
            break;
        case ConstraintKind::not_equal:
            os << ' ' << lit_name(c.lits[0]) << " != " << lit_name(c.lits[1]);
            break;
        case ConstraintKind::half_reified_equal:
            os << ' ' << lit_name(c.head) << " =>";
            [[fallthrough]];
        case ConstraintKind::not_all_equal:
            for (const auto& [a, b] : c.pairs)
                os << ' ' << lit_name(a) << '=' << lit_name(b);
            break;
        case ConstraintKind::clause:
            for (const auto& l : c.lits)
                os << ' ' << lit_name(l);
            break;
        case ConstraintKind::lex_leq:
            for (const auto& t : c.lhs)
                os << ' ' << term_name(t);
            os << " <=lex";
            for (const auto& t : c.rhs)
                os << ' ' << term_name(t);
            break;
        }
        os << '\n';
    }
}

// ---------------------------------------------------------------- building

namespace {

void add_square_blocks(Model& m, std::size_t& count) {
    const int n = m.n();
    for (int h = 2; 2 * h <= n; ++h) {
        for (int s = 0; s + 2 * h <= n; ++s) {
            Constraint c;
            if (h == 2) {
                c.kind = ConstraintKind::not_equal;
                c.lits = {m.less(s, s + 1), m.less(s + 2, s + 3)};
            } else {
                c.kind = ConstraintKind::not_all_equal;
                for (int i = 0; i < h; ++i)
                    for (int j = i + 1; j < h; ++j)
                        c.pairs.emplace_back(m.less(s + i, s + j), m.less(s + h + i, s + h + j));
            }
            m.add(std::move(c));
            ++count;
        }
    }
}

// Every extension at slot pos must create a square: for each inserted value x
// one of the candidate windows has to repeat.
void add_cruciality(Model& m, int pos, bool restrict_lengths) {
    const int n = m.n();
    std::vector<detail::ExtensionWindow> windows;
    detail::for_each_window(n, pos, [&](const detail::ExtensionWindow& w) {
        const bool end_slot = pos == 0 || pos == n;
        if (!restrict_lengths || !end_slot || w.half == 2 || w.half % 4 == 0)
            windows.push_back(w);
    });

    struct Shape {
        detail::ExtensionWindow w;
        int d;
        Lit agree; // the halves agree away from the inserted element
        std::uint64_t footprint;
    };
    std::vector<Shape> shapes;
    for (const auto& w : windows) {
        const int h = w.half;
        const int d = pos < w.start + h ? pos - w.start : pos - w.start - h;
        auto src = [&](int half, int o) { return detail::source_index(w.start + half * h + o, pos); };
        std::uint64_t fp = 0;
        for (int o = 0; o < h; ++o)
            for (int half = 0; half < 2; ++half)
                if (!(half == (pos < w.start + h ? 0 : 1) && o == d))
                    fp |= std::uint64_t{1} << src(half, o);
        Constraint c;
        c.kind = ConstraintKind::half_reified_equal;
        for (int o1 = 0; o1 < h; ++o1)
            for (int o2 = o1 + 1; o2 < h; ++o2)
                if (o1 != d && o2 != d)
                    c.pairs.emplace_back(m.less(src(0, o1), src(0, o2)), m.less(src(1, o1), src(1, o2)));
        Lit agree = lit_true;
        if (!c.pairs.empty()) {
            agree = m.new_aux(fp);
            c.head = agree;
            m.add(std::move(c));
        }
        shapes.push_back({w, d, agree, fp});
    }

    for (int x = 1; x <= n + 1; ++x) {
        Constraint clause;
        clause.kind = ConstraintKind::clause;
        for (const auto& sh : shapes) {
            const int h = sh.w.half;
            const int x_half = pos < sh.w.start + h ? 0 : 1;
            const int y_half = 1 - x_half;
            auto src = [&](int half, int o) { return detail::source_index(sh.w.start + half * h + o, pos); };
            const int y = src(y_half, sh.d);
            Constraint c;
            c.kind = ConstraintKind::half_reified_equal;
            if (sh.agree != lit_true)
                c.pairs.emplace_back(sh.agree, lit_true);
            for (int o = 0; o < h; ++o) {
                if (o == sh.d)
                    continue;
                // x below its mate  <=>  the counterpart below its mate
                const Lit ge = m.threshold_lit(src(x_half, o), x);
                const Lit lt = m.less(y, src(y_half, o));
                c.pairs.emplace_back(ge, lt);
            }
            const Lit z = m.new_aux(sh.footprint);
            c.head = z;
            m.add(std::move(c));
            clause.lits.push_back(z);
        }
        m.add(std::move(clause));
    }
}

} // namespace

Model build_model(int n, const PositionSpec& spec, SymmetryMode mode, const ModelOptions& options) {
    if (mode == SymmetryMode::rc_invariant && !spec.mirror_symmetric())
        throw invalid_input("rc-invariant mode needs a class closed under reversal; " + spec.to_string() + " is not");
    Model m(n);
    m.spec_ = spec;
    m.mode_ = mode;

    Constraint all_diff;
    all_diff.kind = ConstraintKind::all_different;
    for (int i = 0; i < n; ++i)
        all_diff.ints.push_back(i);
    m.add(std::move(all_diff));

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Constraint c;
            c.kind = ConstraintKind::channel;
            c.ints = {i, j};
            c.lits = {m.less(i, j)};
            m.add(std::move(c));
        }
    }

    add_square_blocks(m, m.square_blocks_);

    const auto positions = options.use_effective_positions ? effective_positions(spec, n) : resolve_positions(spec, n);
    for (int pos : positions)
        add_cruciality(m, pos, options.restrict_end_square_lengths);

    if (mode == SymmetryMode::up_to_symmetry) {
        m = add_lex_leader(std::move(m), spec.symmetry_group());
    } else if (mode == SymmetryMode::rc_invariant) {
        Constraint rc;
        rc.kind = ConstraintKind::rc_fixed;
        for (int i = 0; i < n; ++i)
            rc.ints.push_back(i);
        m.add(std::move(rc));
        Constraint lex;
        lex.kind = ConstraintKind::lex_leq;
        for (int i = 0; i < n; ++i) {
            lex.lhs.push_back({i, false});
            lex.rhs.push_back({i, true});
        }
        m.add(std::move(lex));
    }
    return m;
}

Model add_lex_leader(Model m, const SymmetryGroup& g) {
    const int n = m.n();
    for (Symmetry s : g.members()) {
        if (s == Symmetry::identity)
            continue;
        const bool reverses = s == Symmetry::reverse || s == Symmetry::reverse_complement;
        if (reverses && !m.spec_.mirror_symmetric())
            throw invalid_input("reversal is not a symmetry of " + m.spec_.to_string());
        Constraint c;
        c.kind = ConstraintKind::lex_leq;
        for (int i = 0; i < n; ++i) {
            c.lhs.push_back({i, false});
            c.rhs.push_back({reverses ? n - 1 - i : i, s == Symmetry::complement || s == Symmetry::reverse_complement});
        }
        m.add(std::move(c));
    }
    if (m.mode_ == SymmetryMode::all)
        m.mode_ = SymmetryMode::up_to_symmetry;
    return m;
}

// ---------------------------------------------------------------- Solver

Solver::Solver(const Model& m)
    : m_(m), n_(m.n()), full_(detail::slot_bits(0, m.n() - 1)),
      dom_(static_cast<std::size_t>(m.n()), full_),
      val_(static_cast<std::size_t>(m.bool_var_count()), -1),
      int_watch_(static_cast<std::size_t>(m.n())),
      bool_watch_(static_cast<std::size_t>(m.bool_var_count())),
      queued_(m.constraints().size(), 0),
      footprint_(m.constraints().size(), 0),
      weight_(m.constraints().size(), 1),
      var_weight_(static_cast<std::size_t>(m.n()), 0) {
    val_[0] = 1;
    const auto& cs = m.constraints();
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
        const auto& c = cs[ci];
        const int id = static_cast<int>(ci);
        std::vector<int> ints = c.ints;
        std::vector<int> bools;
        for (const auto& l : c.lits)
            bools.push_back(l.var);
        for (const auto& [a, b] : c.pairs) {
            bools.push_back(a.var);
            bools.push_back(b.var);
        }
        if (c.kind == ConstraintKind::half_reified_equal)
            bools.push_back(c.head.var);
        for (const auto& t : c.lhs)
            ints.push_back(t.var);
        for (const auto& t : c.rhs)
            ints.push_back(t.var);
        std::sort(ints.begin(), ints.end());
        ints.erase(std::unique(ints.begin(), ints.end()), ints.end());
        std::sort(bools.begin(), bools.end());
        bools.erase(std::unique(bools.begin(), bools.end()), bools.end());
        std::uint64_t fp = 0;
        for (int v : ints) {
            int_watch_[static_cast<std::size_t>(v)].push_back(id);
            fp |= std::uint64_t{1} << v;
        }
        for (int b : bools) {
            if (b != 0)
                bool_watch_[static_cast<std::size_t>(b)].push_back(id);
            fp |= m.footprint(b);
        }
        footprint_[ci] = fp;
        for (int v = 0; v < n_; ++v)
            if ((fp >> v) & 1u)
                ++var_weight_[static_cast<std::size_t>(v)];
    }
}

int Solver::value(Lit l) const {
    const int v = val_.at(static_cast<std::size_t>(l.var));
    return v < 0 ? -1 : (v ^ static_cast<int>(l.negated));
}

void Solver::enqueue_int(int var) {
    for (int c : int_watch_[static_cast<std::size_t>(var)]) {
        if (!queued_[static_cast<std::size_t>(c)]) {
            queued_[static_cast<std::size_t>(c)] = 1;
            queue_.push_back(c);
        }
    }
}

void Solver::enqueue_bool(int var) {
    for (int c : bool_watch_[static_cast<std::size_t>(var)]) {
        if (!queued_[static_cast<std::size_t>(c)]) {
            queued_[static_cast<std::size_t>(c)] = 1;
            queue_.push_back(c);
        }
    }
}

bool Solver::set_domain(int var, std::uint64_t mask) {
    auto& d = dom_[static_cast<std::size_t>(var)];
    mask &= d;
    if (mask == d)
        return true;
    if (mask == 0)
        return false;
    trail_.push_back({var, true, d});
    d = mask;
    enqueue_int(var);
    return true;
}

bool Solver::set_bool(int var, bool v) {
    auto& cur = val_[static_cast<std::size_t>(var)];
    if (cur >= 0)
        return cur == static_cast<int>(v);
    trail_.push_back({var, false, static_cast<std::uint64_t>(-1)});
    cur = static_cast<std::int8_t>(v);
    enqueue_bool(var);
    return true;
}

bool Solver::restrict_domain(int var, std::uint64_t mask) {
    if (var < 0 || var >= n_)
        throw invalid_input("restrict_domain: variable out of range");
    return set_domain(var, mask);
}

bool Solver::set(Lit l, bool v) {
    return set_bool(l.var, v != l.negated);
}

void Solver::pop_level() {
    const std::size_t mark = levels_.back();
    levels_.pop_back();
    while (trail_.size() > mark) {
        const auto& e = trail_.back();
        if (e.is_int)
            dom_[static_cast<std::size_t>(e.index)] = e.old;
        else
            val_[static_cast<std::size_t>(e.index)] = -1;
        trail_.pop_back();
    }
}

void Solver::note_conflict() {
    if (current_ < 0)
        return;
    ++weight_[static_cast<std::size_t>(current_)];
    const std::uint64_t fp = footprint_[static_cast<std::size_t>(current_)];
    for (int v = 0; v < n_; ++v)
        if ((fp >> v) & 1u)
            ++var_weight_[static_cast<std::size_t>(v)];
}

bool Solver::propagate() {
    while (queue_head_ < queue_.size()) {
        const int c = queue_[queue_head_++];
        queued_[static_cast<std::size_t>(c)] = 0;
        current_ = c;
        if (!run(c)) {
            note_conflict();
            for (std::size_t i = queue_head_; i < queue_.size(); ++i)
                queued_[static_cast<std::size_t>(queue_[i])] = 0;
            queue_.clear();
            queue_head_ = 0;
            current_ = -1;
            return false;
        }
    }
    queue_.clear();
    queue_head_ = 0;
    current_ = -1;
    return true;
}

bool Solver::propagate_all() {
    for (std::size_t c = 0; c < m_.constraints().size(); ++c) {
        if (!queued_[c]) {
            queued_[c] = 1;
            queue_.push_back(static_cast<int>(c));
        }
    }
    return propagate();
}

bool Solver::run(int ci) {
    const auto& c = m_.constraints()[static_cast<std::size_t>(ci)];
    switch (c.kind) {
    case ConstraintKind::all_different: return run_all_different(c);
    case ConstraintKind::channel: return run_channel(c);
    case ConstraintKind::threshold: return run_threshold(c);
    case ConstraintKind::not_equal: return run_not_equal(c);
    case ConstraintKind::not_all_equal: return run_not_all_equal(c);
    case ConstraintKind::half_reified_equal: return run_half_reified(c);
    case ConstraintKind::clause: return run_clause(c);
    case ConstraintKind::lex_leq: return run_lex(c);
    case ConstraintKind::rc_fixed: return run_rc_fixed(c);
    }
    return true;
}

bool Solver::run_all_different(const Constraint& c) {
    // A permutation constraint when it spans all n variables: every value
    // must also be taken by someone.
    const bool permutation = static_cast<int>(c.ints.size()) == n_;
    for (bool changed = true; changed;) {
        changed = false;
        std::uint64_t fixed = 0;
        for (int v : c.ints) {
            const std::uint64_t d = dom_[static_cast<std::size_t>(v)];
            if (std::has_single_bit(d)) {
                if (fixed & d)
                    return false;
                fixed |= d;
            }
        }
        for (int v : c.ints) {
            const std::uint64_t d = dom_[static_cast<std::size_t>(v)];
            if (!std::has_single_bit(d) && (d & fixed)) {
                if (!set_domain(v, d & ~fixed))
                    return false;
                changed = true;
            }
        }
        if (!permutation)
            continue;
        for (std::uint64_t rest = full_ & ~fixed; rest; rest &= rest - 1) {
            const std::uint64_t bit = rest & (~rest + 1);
            int holder = -1;
            int holders = 0;
            for (int v : c.ints) {
                if (dom_[static_cast<std::size_t>(v)] & bit) {
                    holder = v;
                    if (++holders > 1)
                        break;
                }
            }
            if (holders == 0)
                return false;
            if (holders == 1 && dom_[static_cast<std::size_t>(holder)] != bit) {
                if (!set_domain(holder, bit))
                    return false;
                changed = true;
            }
        }
    }
    return true;
}

bool Solver::run_channel(const Constraint& c) {
    const int p = c.ints[0];
    const int q = c.ints[1];
    const Lit b = c.lits[0];
    const std::uint64_t dp = dom_[static_cast<std::size_t>(p)];
    const std::uint64_t dq = dom_[static_cast<std::size_t>(q)];
    int v = value(b);
    if (v < 0) {
        if (highest_value(dp) < lowest_value(dq)) {
            return set(b, true);
        }
        if (lowest_value(dp) > highest_value(dq)) {
            return set(b, false);
        }
        return true;
    }
    // Values are pairwise distinct, so "not less" is "greater".
    if (v == 1)
        return set_domain(p, dp & values_below(highest_value(dq))) &&
               set_domain(q, dom_[static_cast<std::size_t>(q)] & values_above(lowest_value(dom_[static_cast<std::size_t>(p)])));
    return set_domain(p, dp & values_above(lowest_value(dq))) &&
           set_domain(q, dom_[static_cast<std::size_t>(q)] & values_below(highest_value(dom_[static_cast<std::size_t>(p)])));
}

bool Solver::run_threshold(const Constraint& c) {
    const int q = c.ints[0];
    const Lit t = c.lits[0];
    const std::uint64_t d = dom_[static_cast<std::size_t>(q)];
    const std::uint64_t ge = full_ & ~values_below(c.value);
    const int v = value(t);
    if (v < 0) {
        if ((d & ~ge) == 0)
            return set(t, true);
        if ((d & ge) == 0)
            return set(t, false);
        return true;
    }
    return set_domain(q, v == 1 ? d & ge : d & ~ge);
}

bool Solver::run_not_equal(const Constraint& c) {
    const int a = value(c.lits[0]);
    const int b = value(c.lits[1]);
    if (a >= 0 && b >= 0)
        return a != b;
    if (a >= 0)
        return set(c.lits[1], a == 0);
    if (b >= 0)
        return set(c.lits[0], b == 0);
    return true;
}

bool Solver::run_not_all_equal(const Constraint& c) {
    const std::pair<Lit, Lit>* open = nullptr;
    int undecided = 0;
    for (const auto& pr : c.pairs) {
        const int a = value(pr.first);
        const int b = value(pr.second);
        if (a >= 0 && b >= 0) {
            if (a != b)
                return true;
            continue;
        }
        open = &pr;
        if (++undecided > 1)
            return true;
    }
    if (undecided == 0)
        return false;
    const int a = value(open->first);
    const int b = value(open->second);
    if (a >= 0)
        return set(open->second, a == 0);
    if (b >= 0)
        return set(open->first, b == 0);
    return true;
}

bool Solver::run_half_reified(const Constraint& c) {
    const int h = value(c.head);
    if (h == 0)
        return true;
    if (h < 0) {
        for (const auto& [l1, l2] : c.pairs) {
            const int a = value(l1);
            const int b = value(l2);
            if (a >= 0 && b >= 0 && a != b)
                return set(c.head, false);
        }
        return true;
    }
    for (const auto& [l1, l2] : c.pairs) {
        const int a = value(l1);
        const int b = value(l2);
        if (a >= 0 && b >= 0) {
            if (a != b)
                return false;
        } else if (a >= 0) {
            if (!set(l2, a == 1))
                return false;
        } else if (b >= 0) {
            if (!set(l1, b == 1))
                return false;
        }
    }
    return true;
}

bool Solver::run_clause(const Constraint& c) {
    const Lit* open = nullptr;
    int undecided = 0;
    for (const auto& l : c.lits) {
        const int v = value(l);
        if (v == 1)
            return true;
        if (v < 0) {
            open = &l;
            ++undecided;
        }
    }
    if (undecided == 0)
        return false;
    if (undecided == 1)
        return set(*open, true);
    return true;
}

std::uint64_t Solver::term_domain(const LexTerm& t) const {
    const std::uint64_t d = dom_[static_cast<std::size_t>(t.var)];
    return t.complemented ? mirror_values(d, n_) : d;
}

bool Solver::restrict_term(const LexTerm& t, std::uint64_t term_mask) {
    return set_domain(t.var, t.complemented ? mirror_values(term_mask, n_) : term_mask);
}

bool Solver::run_lex(const Constraint& c) {
    for (std::size_t i = 0; i < c.lhs.size(); ++i) {
        const LexTerm& a = c.lhs[i];
        const LexTerm& b = c.rhs[i];
        if (a == b)
            continue;
        if (a.var == b.var) {
            // one term is the complement of the other
            std::uint64_t keep = 0;
            bool can_tie = false;
            for (std::uint64_t d = dom_[static_cast<std::size_t>(a.var)]; d; d &= d - 1) {
                const int x = std::countr_zero(d) + 1;
                const int ta = a.complemented ? n_ + 1 - x : x;
                const int tb = b.complemented ? n_ + 1 - x : x;
                if (ta <= tb)
                    keep |= std::uint64_t{1} << (x - 1);
                if (ta == tb)
                    can_tie = true;
            }
            if (!set_domain(a.var, keep))
                return false;
            if (can_tie && std::has_single_bit(dom_[static_cast<std::size_t>(a.var)]))
                continue;
            return true;
        }
        const std::uint64_t db = term_domain(b);
        if (!restrict_term(a, term_domain(a) & ~values_above(highest_value(db))))
            return false;
        if (!restrict_term(b, term_domain(b) & ~values_below(lowest_value(term_domain(a)))))
            return false;
        const std::uint64_t da = term_domain(a);
        const std::uint64_t db2 = term_domain(b);
        if (std::has_single_bit(da) && da == db2)
            continue;
        return true;
    }
    return true;
}

bool Solver::run_rc_fixed(const Constraint&) {
    for (int i = 0; i <= (n_ - 1) / 2; ++i) {
        const int j = n_ - 1 - i;
        const std::uint64_t di = dom_[static_cast<std::size_t>(i)];
        const std::uint64_t dj = dom_[static_cast<std::size_t>(j)];
        const std::uint64_t ni = di & mirror_values(dj, n_);
        if (!set_domain(i, ni) || !set_domain(j, dj & mirror_values(ni, n_)))
            return false;
    }
    return true;
}

int Solver::select_var() const {
    int best = -1;
    for (int v = 0; v < n_; ++v) {
        const std::uint64_t d = dom_[static_cast<std::size_t>(v)];
        if (std::has_single_bit(d))
            continue;
        if (heuristic_ == Heuristic::static_order)
            return v;
        if (best < 0) {
            best = v;
            continue;
        }
        // dom/wdeg: smaller |dom| / weight wins; ties keep the earlier variable
        const auto size_v = static_cast<std::uint64_t>(std::popcount(d));
        const auto size_b = static_cast<std::uint64_t>(std::popcount(dom_[static_cast<std::size_t>(best)]));
        if (size_v * var_weight_[static_cast<std::size_t>(best)] < size_b * var_weight_[static_cast<std::size_t>(v)])
            best = v;
    }
    return best;
}

bool Solver::singleton_pass(int depth, bool* changed) {
    for (int v = 0; v < n_; ++v) {
        const std::uint64_t d = dom_[static_cast<std::size_t>(v)];
        if (std::has_single_bit(d))
            continue;
        for (std::uint64_t rest = d; rest; rest &= rest - 1) {
            const std::uint64_t bit = rest & (~rest + 1);
            if (!(dom_[static_cast<std::size_t>(v)] & bit))
                continue;
            push_level();
            const bool ok = set_domain(v, bit) && propagate() && (depth <= 1 || singleton_consistent(depth - 1));
            pop_level();
            if (!ok) {
                if (!set_domain(v, dom_[static_cast<std::size_t>(v)] & ~bit) || !propagate())
                    return false;
                *changed = true;
            }
        }
    }
    return true;
}

bool Solver::singleton_consistent(int depth) {
    for (bool changed = true; changed;) {
        changed = false;
        if (!singleton_pass(depth, &changed))
            return false;
    }
    return true;
}

bool Solver::out_of_time(const SolveOptions& options, SearchStats& stats) {
    if (stats.timed_out)
        return true;
    if (options.deadline && (stats.nodes & 0x3ff) == 0 && std::chrono::steady_clock::now() >= *options.deadline)
        stats.timed_out = true;
    return stats.timed_out;
}

void Solver::dfs(const SolveOptions& options, SearchStats& stats) {
    if (out_of_time(options, stats))
        return;
    const int v = select_var();
    if (v < 0) {
        ++stats.solutions;
        if (options.sink) {
            std::vector<int> values;
            values.reserve(static_cast<std::size_t>(n_));
            for (auto d : dom_)
                values.push_back(lowest_value(d));
            options.sink(Permutation::from_trusted(std::move(values)));
        }
        return;
    }
    for (;;) {
        const std::uint64_t d = dom_[static_cast<std::size_t>(v)];
        const std::uint64_t bit = d & (~d + 1);
        ++stats.nodes;
        push_level();
        if (set_domain(v, bit) && propagate())
            dfs(options, stats);
        else
            ++stats.failures;
        pop_level();
        if (stats.timed_out)
            return;
        if (!set_domain(v, dom_[static_cast<std::size_t>(v)] & ~bit) || !propagate()) {
            ++stats.failures;
            return;
        }
        if (std::has_single_bit(dom_[static_cast<std::size_t>(v)])) {
            dfs(options, stats);
            return;
        }
    }
}

SearchStats Solver::search(const SolveOptions& options) {
    SearchStats stats;
    heuristic_ = options.heuristic;
    push_level();
    bool ok = propagate_all();
    if (ok && options.preprocessing != Preprocessing::none)
        ok = singleton_consistent(options.preprocessing == Preprocessing::double_singleton ? 2 : 1);
    if (!ok)
        stats.root_failed = true;
    else
        dfs(options, stats);
    pop_level();
    return stats;
}

SearchStats solve_count(const Model& m, const SolveOptions& options) {
    Solver s(m);
    return s.search(options);
}

SearchStats count(int n, const PositionSpec& spec, SymmetryMode mode, const SolveOptions& options,
                  const ModelOptions& model_options) {
    return solve_count(build_model(n, spec, mode, model_options), options);
}

} // namespace crucial::csp
