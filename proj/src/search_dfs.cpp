#include "crucial/search_dfs.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <thread>

#include "detail/windows.hpp"

namespace crucial {

CountResult& CountResult::operator+=(const CountResult& o) {
    total += o.total;
    up_to_symmetry += o.up_to_symmetry;
    if (rc_invariant || o.rc_invariant)
        rc_invariant = rc_invariant.value_or(0) + o.rc_invariant.value_or(0);
    nodes += o.nodes;
    timed_out = timed_out || o.timed_out;
    return *this;
}

bool satisfies_inclusion_exclusion(const CountResult& r, const SymmetryGroup& g, int n) {
    if (n <= 1)
        return true;
    if (g.has_reverse()) {
        if (!r.rc_invariant)
            return false;
        return r.total + 2 * *r.rc_invariant == 4 * r.up_to_symmetry;
    }
    return r.total == 2 * r.up_to_symmetry;
}

namespace {

constexpr int max_length = 62;

using detail::ExtensionWindow;
using detail::slot_bits;

// Lexicographic comparison of p with one of its symmetry images, without
// materialising the image. Returns <0, 0, >0.
template <class Values>
int compare_with_image(const Values& p, int n, Symmetry s) {
    for (int i = 0; i < n; ++i) {
        int img = 0;
        switch (s) {
        case Symmetry::identity: img = p[i]; break;
        case Symmetry::complement: img = n + 1 - p[i]; break;
        case Symmetry::reverse: img = p[n - 1 - i]; break;
        case Symmetry::reverse_complement: img = n + 1 - p[n - 1 - i]; break;
        }
        if (p[i] != img)
            return p[i] < img ? -1 : 1;
    }
    return 0;
}

template <class Values>
bool lex_leader(const Values& p, int n, const SymmetryGroup& g) {
    for (Symmetry s : g.members())
        if (compare_with_image(p, n, s) > 0)
            return false;
    return true;
}

template <class Values>
bool rc_representative(const Values& p, int n) {
    for (int i = 0; i < n; ++i)
        if (p[i] + p[n - 1 - i] != n + 1)
            return false;
    return compare_with_image(p, n, Symmetry::complement) <= 0;
}

struct PairCheck {
    std::uint8_t a1, b1, a2, b2; // (v[a1] < v[b1]) must equal (v[a2] < v[b2])
};

struct WindowChecks {
    int window;
    int first;
    int count;
};

// Square windows around one left-end slot, with the work to do as each pi
// index gets placed.
struct Tracker {
    int pos = 0;
    std::vector<ExtensionWindow> windows;
    std::vector<std::vector<WindowChecks>> checks_at;   // per pi index
    std::vector<std::vector<int>> completions_at;       // per pi index
    std::vector<PairCheck> pairs;
    std::uint64_t all_windows = 0;
};

Tracker make_tracker(int n, int pos) {
    Tracker t;
    t.pos = pos;
    t.checks_at.resize(static_cast<std::size_t>(n));
    t.completions_at.resize(static_cast<std::size_t>(n));
    detail::for_each_window(n, pos, [&](const ExtensionWindow& w) { t.windows.push_back(w); });
    for (std::size_t id = 0; id < t.windows.size(); ++id) {
        const auto& w = t.windows[id];
        const int h = w.half;
        const int d = pos < w.start + h ? pos - w.start : pos - w.start - h;
        auto src = [&](int half, int o) { return detail::source_index(w.start + half * h + o, pos); };
        for (int o = 1; o < h; ++o) {
            if (o == d)
                continue;
            WindowChecks wc{static_cast<int>(id), static_cast<int>(t.pairs.size()), 0};
            for (int o1 = o - 1; o1 >= 0; --o1) {
                if (o1 == d)
                    continue;
                t.pairs.push_back({static_cast<std::uint8_t>(src(0, o1)), static_cast<std::uint8_t>(src(0, o)),
                                   static_cast<std::uint8_t>(src(1, o1)), static_cast<std::uint8_t>(src(1, o))});
                ++wc.count;
            }
            if (wc.count > 0)
                t.checks_at[static_cast<std::size_t>(src(1, o))].push_back(wc);
        }
        t.completions_at[static_cast<std::size_t>(detail::last_source_index(w))].push_back(static_cast<int>(id));
        t.all_windows |= std::uint64_t{1} << id;
    }
    return t;
}

struct Frame {
    std::array<int, max_length + 1> prefix{};
    std::array<std::uint64_t, 2> cover{};
    std::array<std::uint64_t, 2> alive{};
    std::uint8_t phases = 0b1111;
};

struct Config {
    int n = 0;
    bool mirrored = false;
    SymmetryGroup group = SymmetryGroup::complement_only();
    SymmetryMode mode = SymmetryMode::all;
    DfsOptions options;
    std::vector<Tracker> trackers;  // left-end slots, decided on prefixes
    std::vector<int> leaf_positions; // decided on complete permutations
    std::vector<int> all_positions;
    const PermutationSink* sink = nullptr;
    std::mutex* sink_mutex = nullptr;
    std::atomic<bool>* stop = nullptr;
};

class Walker {
public:
    explicit Walker(const Config& cfg) : cfg_(cfg) {}

    void run_from(int depth, const Frame& start) {
        frames_[static_cast<std::size_t>(depth)] = start;
        expand(depth);
    }

    // Collects frames at `depth` instead of descending further.
    void collect_at(int depth, std::vector<std::pair<int, Frame>>* out) {
        collect_depth_ = depth;
        collected_ = out;
    }

    CountResult result;

private:
    bool out_of_time() {
        if ((result.nodes & 0x3fff) != 0 || !cfg_.options.deadline)
            return cfg_.stop->load(std::memory_order_relaxed);
        if (std::chrono::steady_clock::now() >= *cfg_.options.deadline)
            cfg_.stop->store(true);
        return cfg_.stop->load(std::memory_order_relaxed);
    }

    void expand(int k) {
        const int n = cfg_.n;
        const Frame& f = frames_[static_cast<std::size_t>(k)];
        if (k == n) {
            leaf(f);
            return;
        }
        if (collected_ && k == collect_depth_) {
            collected_->emplace_back(k, f);
            return;
        }

        const std::uint64_t forbidden =
            cfg_.options.incremental_squares && k >= 3 ? detail::extension_cover_mask(f.prefix, k, k) : 0;

        for (int slot = 0; slot <= k; ++slot) {
            if ((forbidden >> slot) & 1u)
                continue;
            std::uint8_t phases = f.phases;
            if (k >= 1) {
                // comparison between 1-based positions k and k+1
                const bool up = f.prefix[static_cast<std::size_t>(k - 1)] <= slot;
                std::uint8_t fit = 0;
                for (int i = 0; i < 4; ++i) {
                    const int r = ((k - i) % 4 + 4) % 4;
                    if (up == (r <= 1))
                        fit |= static_cast<std::uint8_t>(1u << i);
                }
                phases &= fit;
                if (cfg_.options.phase_pruning && phases == 0)
                    continue;
            }
            if (out_of_time()) {
                result.timed_out = true;
                return;
            }
            ++result.nodes;

            Frame& c = frames_[static_cast<std::size_t>(k + 1)];
            for (int i = 0; i < k; ++i) {
                const int v = f.prefix[static_cast<std::size_t>(i)];
                c.prefix[static_cast<std::size_t>(i)] = v > slot ? v + 1 : v;
            }
            c.prefix[static_cast<std::size_t>(k)] = slot + 1;
            c.phases = phases;
            if (!advance_trackers(f, c, k, slot))
                continue;
            expand(k + 1);
            if (result.timed_out)
                return;
        }
    }

    // Updates left-end coverage after placing pi index k at `slot`; false if
    // the branch can no longer satisfy some tracked slot.
    bool advance_trackers(const Frame& parent, Frame& c, int k, int slot) {
        const std::uint64_t keep_low = slot_bits(0, slot);
        for (std::size_t t = 0; t < cfg_.trackers.size(); ++t) {
            const Tracker& tr = cfg_.trackers[t];
            const std::uint64_t m = parent.cover[t];
            std::uint64_t cover = (m & keep_low) | ((m >> slot) << (slot + 1));
            std::uint64_t alive = parent.alive[t];
            for (const auto& wc : tr.checks_at[static_cast<std::size_t>(k)]) {
                const std::uint64_t bit = std::uint64_t{1} << wc.window;
                if (!(alive & bit))
                    continue;
                for (int i = wc.first; i < wc.first + wc.count; ++i) {
                    const auto& pc = tr.pairs[static_cast<std::size_t>(i)];
                    if ((c.prefix[pc.a1] < c.prefix[pc.b1]) != (c.prefix[pc.a2] < c.prefix[pc.b2])) {
                        alive &= ~bit;
                        break;
                    }
                }
            }
            for (int id : tr.completions_at[static_cast<std::size_t>(k)]) {
                const std::uint64_t bit = std::uint64_t{1} << id;
                if (alive & bit) {
                    if (auto r = detail::window_cover(c.prefix, k + 1, tr.windows[static_cast<std::size_t>(id)]))
                        cover |= slot_bits(r->lo, r->hi);
                    alive &= ~bit;
                }
            }
            c.cover[t] = cover;
            c.alive[t] = alive;
            if (cfg_.options.cruciality_pruning && alive == 0 && cover != slot_bits(0, k + 1))
                return false;
        }
        return true;
    }

    void leaf(const Frame& f) {
        const int n = cfg_.n;
        const auto& vals = f.prefix;
        if (!cfg_.options.incremental_squares && !is_square_free(std::span<const int>(vals.data(), static_cast<std::size_t>(n))))
            return;

        if (cfg_.options.cruciality_pruning) {
            const std::uint64_t full = slot_bits(0, n);
            for (std::size_t t = 0; t < cfg_.trackers.size(); ++t)
                if (f.cover[t] != full)
                    return;
            for (int pos : cfg_.leaf_positions)
                if (detail::extension_cover_mask(vals, n, pos) != full)
                    return;
        } else if (!cfg_.all_positions.empty()) {
            const auto p = Permutation::from_trusted(std::vector<int>(vals.begin(), vals.begin() + n));
            for (int pos : cfg_.all_positions)
                if (!is_crucial_at(p, pos))
                    return;
        }

        std::array<int, max_length + 1> out{};
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] = cfg_.mirrored ? vals[static_cast<std::size_t>(n - 1 - i)] : vals[static_cast<std::size_t>(i)];

        ++result.total;
        const bool leader = lex_leader(out, n, cfg_.group);
        if (leader)
            ++result.up_to_symmetry;
        bool rc_rep = false;
        if (cfg_.group.has_reverse()) {
            rc_rep = rc_representative(out, n);
            if (rc_rep)
                result.rc_invariant = result.rc_invariant.value_or(0) + 1;
        }

        if (cfg_.sink && *cfg_.sink) {
            const bool emit = cfg_.mode == SymmetryMode::all || (cfg_.mode == SymmetryMode::up_to_symmetry && leader) ||
                              (cfg_.mode == SymmetryMode::rc_invariant && rc_rep);
            if (emit) {
                const auto p = Permutation::from_trusted(std::vector<int>(out.begin(), out.begin() + n));
                if (cfg_.sink_mutex) {
                    std::lock_guard lock(*cfg_.sink_mutex);
                    (*cfg_.sink)(p);
                } else {
                    (*cfg_.sink)(p);
                }
            }
        }
    }

    const Config& cfg_;
    std::array<Frame, max_length + 2> frames_{};
    int collect_depth_ = -1;
    std::vector<std::pair<int, Frame>>* collected_ = nullptr;
};

} // namespace

CountResult enumerate(int n, const PositionSpec& spec, SymmetryMode mode, const PermutationSink& sink,
                      const DfsOptions& options) {
    if (n < 1)
        throw invalid_input("enumerate: n must be >= 1");
    if (n > max_length)
        throw invalid_input("enumerate: n must be <= " + std::to_string(max_length));
    const SymmetryGroup group = spec.symmetry_group();
    if (mode == SymmetryMode::rc_invariant && !group.has_reverse())
        throw invalid_input("rc-invariant counting needs a class closed under reversal; " + spec.to_string() +
                            " is not");

    Config cfg;
    cfg.n = n;
    cfg.group = group;
    cfg.mode = mode;
    cfg.options = options;
    std::atomic<bool> stop{false};
    cfg.stop = &stop;
    cfg.sink = &sink;

    std::vector<int> positions =
        options.use_effective_positions ? effective_positions(spec, n) : resolve_positions(spec, n);
    if (options.orient) {
        const auto left = std::count_if(positions.begin(), positions.end(), [](int p) { return p <= 1; });
        const auto right = std::count_if(positions.begin(), positions.end(), [n](int p) { return p >= n - 1; });
        if (right > left) {
            cfg.mirrored = true;
            for (int& p : positions)
                p = n - p;
            std::sort(positions.begin(), positions.end());
        }
    }
    cfg.all_positions = positions;
    for (int p : positions) {
        if (p <= 1)
            cfg.trackers.push_back(make_tracker(n, p));
        else
            cfg.leaf_positions.push_back(p);
    }

    Frame root;
    for (std::size_t t = 0; t < cfg.trackers.size(); ++t)
        root.alive[t] = cfg.trackers[t].all_windows;

    CountResult total;
    if (options.workers <= 1) {
        Walker w(cfg);
        w.run_from(0, root);
        total = w.result;
    } else {
        int depth = options.split_depth;
        if (depth <= 0)
            depth = std::min(n, 6 + static_cast<int>(std::bit_width(options.workers)));
        depth = std::min(depth, n);
        std::vector<std::pair<int, Frame>> tasks;
        Walker splitter(cfg);
        splitter.collect_at(depth, &tasks);
        splitter.run_from(0, root);
        total = splitter.result;

        std::mutex sink_mutex;
        cfg.sink_mutex = &sink_mutex;
        std::atomic<std::size_t> next{0};
        std::vector<CountResult> partial(options.workers);
        std::vector<std::thread> pool;
        for (unsigned wi = 0; wi < options.workers; ++wi) {
            pool.emplace_back([&, wi] {
                Walker w(cfg);
                for (std::size_t i = next++; i < tasks.size(); i = next++) {
                    w.run_from(tasks[i].first, tasks[i].second);
                    if (w.result.timed_out)
                        break;
                }
                partial[wi] = w.result;
            });
        }
        for (auto& t : pool)
            t.join();
        for (const auto& r : partial)
            total += r;
    }
    if (group.has_reverse() && !total.rc_invariant)
        total.rc_invariant = 0;
    return total;
}

bool is_lex_leader(const Permutation& p, const SymmetryGroup& g) {
    return lex_leader(p.values(), p.size(), g);
}

std::uint64_t count_rc_invariant(int n, const PositionSpec& spec, const DfsOptions& options) {
    if (!spec.mirror_symmetric())
        throw invalid_input("count_rc_invariant: " + spec.to_string() + " is not closed under reversal");
    return enumerate(n, spec, SymmetryMode::rc_invariant, {}, options).rc_invariant.value_or(0);
}

} // namespace crucial
