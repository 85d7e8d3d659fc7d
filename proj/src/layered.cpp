#include "crucial/layered.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace crucial::layered {

namespace {

// pattern of row[from, from+len) written to out
void reduce(const std::uint8_t* row, int from, int len, std::uint8_t* out) {
    for (int i = 0; i < len; ++i) {
        int rank = 1;
        for (int j = 0; j < len; ++j)
            if (row[from + j] < row[from + i])
                ++rank;
        out[i] = static_cast<std::uint8_t>(rank);
    }
}

std::vector<std::uint8_t> to_row(const Permutation& p) {
    std::vector<std::uint8_t> row;
    for (int v : p.values())
        row.push_back(static_cast<std::uint8_t>(v));
    return row;
}

// Merges rows of length n-1 (sigma, tau) sharing a middle; appends the one or
// two results of length n to out.
void merge_rows(const std::uint8_t* sigma, const std::uint8_t* tau, int n, std::vector<std::uint8_t>& out) {
    const int gap_first = sigma[0] - 1; // middle entries below pi_1
    const int gap_last = tau[n - 2] - 1; // middle entries below pi_n
    auto emit = [&](bool first_below_last) {
        const std::size_t at = out.size();
        out.resize(at + static_cast<std::size_t>(n));
        std::uint8_t* pi = out.data() + at;
        pi[0] = static_cast<std::uint8_t>(gap_first + 1 + (first_below_last ? 0 : 1));
        pi[n - 1] = static_cast<std::uint8_t>(gap_last + 1 + (first_below_last ? 1 : 0));
        for (int i = 1; i < n - 1; ++i) {
            const int r = tau[i - 1] - (tau[n - 2] < tau[i - 1] ? 1 : 0); // rank within the middle
            pi[i] = static_cast<std::uint8_t>(r + (r > gap_first ? 1 : 0) + (r > gap_last ? 1 : 0));
        }
    };
    if (gap_first < gap_last) {
        emit(true);
    } else if (gap_first > gap_last) {
        emit(false);
    } else {
        emit(true);
        emit(false);
    }
}

bool halves_repeat(const std::uint8_t* row, int n) {
    const int h = n / 2;
    for (int i = 0; i < h; ++i)
        for (int j = i + 1; j < h; ++j)
            if ((row[i] < row[j]) != (row[h + i] < row[h + j]))
                return false;
    return true;
}

void sort_rows(std::vector<std::uint8_t>& rows, int n, std::uint64_t* duplicates) {
    const std::size_t count = rows.size() / static_cast<std::size_t>(n);
    std::vector<std::uint32_t> order(count);
    for (std::size_t i = 0; i < count; ++i)
        order[i] = static_cast<std::uint32_t>(i);
    const auto len = static_cast<std::size_t>(n);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::memcmp(rows.data() + a * len, rows.data() + b * len, len) < 0;
    });
    std::vector<std::uint8_t> sorted;
    sorted.reserve(rows.size());
    for (std::size_t k = 0; k < count; ++k) {
        const std::uint8_t* r = rows.data() + order[k] * len;
        if (!sorted.empty() && std::memcmp(sorted.data() + sorted.size() - len, r, len) == 0) {
            if (duplicates)
                ++*duplicates;
            continue;
        }
        sorted.insert(sorted.end(), r, r + len);
    }
    rows = std::move(sorted);
}

} // namespace

Permutation left_parent(const Permutation& p) {
    if (p.size() < 2)
        throw invalid_input("left_parent: need length >= 2");
    const auto v = p.values();
    return pattern_of(v.first(v.size() - 1));
}

Permutation right_parent(const Permutation& p) {
    if (p.size() < 2)
        throw invalid_input("right_parent: need length >= 2");
    return pattern_of(p.values().subspan(1));
}

std::vector<Permutation> merge_candidates(const Permutation& alpha, const Permutation& sigma, const Permutation& tau) {
    const int n = sigma.size() + 1;
    if (tau.size() != sigma.size() || alpha.size() + 1 != sigma.size())
        throw precondition_error("merge_candidates: lengths must be n-2, n-1, n-1");
    if (right_parent(sigma) != alpha || left_parent(tau) != alpha)
        throw precondition_error("merge_candidates: sigma and tau do not share alpha as their middle");
    const auto s = to_row(sigma);
    const auto t = to_row(tau);
    std::vector<std::uint8_t> out;
    merge_rows(s.data(), t.data(), n, out);
    std::vector<Permutation> result;
    for (std::size_t at = 0; at < out.size(); at += static_cast<std::size_t>(n))
        result.push_back(Permutation::from_trusted(std::vector<int>(out.begin() + static_cast<std::ptrdiff_t>(at),
                                                                    out.begin() + static_cast<std::ptrdiff_t>(at) + n)));
    std::sort(result.begin(), result.end());
    return result;
}

bool half_repeat_check(const Permutation& p) {
    const int n = p.size();
    if (n < 4 || n % 2 != 0)
        throw invalid_input("half_repeat_check: length must be even and >= 4");
    const auto row = to_row(p);
    return halves_repeat(row.data(), n);
}

// ---------------------------------------------------------------- Level

Level::Level(int n, std::vector<std::uint8_t> rows) : n_(n), rows_(std::move(rows)) {
    if (n < 1 || rows_.size() % static_cast<std::size_t>(n) != 0)
        throw invalid_input("Level: row data does not match length");
}

Level Level::from_members(int n, std::vector<Permutation> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::vector<std::uint8_t> rows;
    rows.reserve(members.size() * static_cast<std::size_t>(n));
    for (const auto& p : members) {
        if (p.size() != n)
            throw invalid_input("Level: member of the wrong length");
        for (int v : p.values())
            rows.push_back(static_cast<std::uint8_t>(v));
    }
    return Level(n, std::move(rows));
}

Permutation Level::member(std::size_t i) const {
    const std::uint8_t* r = row(i);
    return Permutation::from_trusted(std::vector<int>(r, r + n_));
}

std::vector<Permutation> Level::members() const {
    std::vector<Permutation> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i)
        out.push_back(member(i));
    return out;
}

std::optional<std::size_t> Level::index_of_row(const std::uint8_t* key) const {
    std::size_t lo = 0;
    std::size_t hi = size();
    const auto len = static_cast<std::size_t>(n_);
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const int c = std::memcmp(row(mid), key, len);
        if (c == 0)
            return mid;
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return std::nullopt;
}

std::optional<std::size_t> Level::index_of(const Permutation& p) const {
    if (p.size() != n_)
        return std::nullopt;
    const auto key = to_row(p);
    return index_of_row(key.data());
}

void write_level(std::ostream& os, const Level& level) {
    os << "level " << level.length() << ' ' << level.size() << '\n';
    std::string line;
    for (std::size_t i = 0; i < level.size(); ++i) {
        line.clear();
        const std::uint8_t* r = level.row(i);
        for (int k = 0; k < level.length(); ++k) {
            if (k)
                line += ' ';
            line += std::to_string(r[k]);
        }
        line += '\n';
        os << line;
    }
}

Level read_level(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw parse_error("level file: missing header", 0);
    std::istringstream hs(header);
    std::string word;
    long long n = 0;
    long long count = 0;
    if (!(hs >> word >> n >> count) || word != "level" || n < 1 || n > 255 || count < 0)
        throw parse_error("level file: bad header '" + header + "'", 0);
    std::vector<std::uint8_t> rows;
    rows.reserve(static_cast<std::size_t>(count * n));
    std::string line;
    for (long long i = 0; i < count; ++i) {
        if (!std::getline(is, line))
            throw parse_error("level file: expected " + std::to_string(count) + " members, got " + std::to_string(i),
                              static_cast<std::size_t>(i + 1));
        const Permutation p = parse_permutation(line);
        if (p.size() != n)
            throw parse_error("level file: member of the wrong length on line " + std::to_string(i + 2),
                              static_cast<std::size_t>(i + 1));
        const std::size_t at = rows.size();
        for (int v : p.values())
            rows.push_back(static_cast<std::uint8_t>(v));
        if (i > 0 && std::memcmp(rows.data() + at - static_cast<std::size_t>(n), rows.data() + at,
                                 static_cast<std::size_t>(n)) >= 0)
            throw parse_error("level file: members not strictly ascending at line " + std::to_string(i + 2),
                              static_cast<std::size_t>(i + 1));
    }
    return Level(static_cast<int>(n), std::move(rows));
}

// ---------------------------------------------------------------- LevelStore

LevelStore::LevelStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(*dir_);
}

std::filesystem::path LevelStore::file_for(int n) const {
    if (!dir_)
        throw precondition_error("level store has no directory");
    return *dir_ / ("level-" + std::to_string(n) + ".txt");
}

bool LevelStore::has(int n) const {
    return cache_.contains(n) || (dir_ && std::filesystem::exists(file_for(n)));
}

const Level& LevelStore::get(int n) {
    if (auto it = cache_.find(n); it != cache_.end())
        return it->second;
    if (!dir_ || !std::filesystem::exists(file_for(n)))
        throw precondition_error("level " + std::to_string(n) + " is not in the store");
    std::ifstream in(file_for(n));
    Level level = read_level(in);
    if (level.length() != n)
        throw parse_error("level file " + file_for(n).string() + " holds length " + std::to_string(level.length()), 0);
    return cache_.emplace(n, std::move(level)).first->second;
}

void LevelStore::put(Level level) {
    const int n = level.length();
    if (dir_) {
        std::ofstream out(file_for(n));
        write_level(out, level);
        if (!out)
            throw std::runtime_error("failed to write " + file_for(n).string());
    }
    cache_.insert_or_assign(n, std::move(level));
}

void LevelStore::release(int n) {
    if (dir_)
        cache_.erase(n);
}

// ---------------------------------------------------------------- building

const Level& build_level(int n, LevelStore& store, BuildStats* stats) {
    if (n < 1)
        throw invalid_input("build_level: n must be >= 1");
    if (n > 255)
        throw invalid_input("build_level: n must be <= 255");
    if (n == 1) {
        store.put(Level(1, {1}));
        return store.get(1);
    }
    if (n == 2) {
        store.put(Level(2, {1, 2, 2, 1}));
        return store.get(2);
    }
    if (!store.has(n - 1) || !store.has(n - 2))
        throw precondition_error("build_level(" + std::to_string(n) + ") needs levels " + std::to_string(n - 2) +
                                 " and " + std::to_string(n - 1));
    const Level& below = store.get(n - 2);
    const Level& prev = store.get(n - 1);

    // Bucket level n-1 members by their right and left parents (indices into level n-2).
    const int m = n - 1;
    std::vector<std::vector<std::uint32_t>> sigmas(below.size());
    std::vector<std::vector<std::uint32_t>> taus(below.size());
    std::vector<std::uint8_t> key(static_cast<std::size_t>(m - 1));
    for (std::size_t i = 0; i < prev.size(); ++i) {
        reduce(prev.row(i), 1, m - 1, key.data());
        if (auto a = below.index_of_row(key.data()))
            sigmas[*a].push_back(static_cast<std::uint32_t>(i));
        reduce(prev.row(i), 0, m - 1, key.data());
        if (auto a = below.index_of_row(key.data()))
            taus[*a].push_back(static_cast<std::uint32_t>(i));
    }

    BuildStats local;
    std::vector<std::uint8_t> rows;
    std::vector<std::uint8_t> merged;
    for (std::size_t a = 0; a < below.size(); ++a) {
        for (std::uint32_t s : sigmas[a]) {
            for (std::uint32_t t : taus[a]) {
                merged.clear();
                merge_rows(prev.row(s), prev.row(t), n, merged);
                for (std::size_t at = 0; at < merged.size(); at += static_cast<std::size_t>(n)) {
                    ++local.candidates;
                    if (n % 2 == 0 && halves_repeat(merged.data() + at, n)) {
                        ++local.half_repeats;
                        continue;
                    }
                    rows.insert(rows.end(), merged.begin() + static_cast<std::ptrdiff_t>(at),
                                merged.begin() + static_cast<std::ptrdiff_t>(at) + n);
                }
            }
        }
    }
    sort_rows(rows, n, &local.duplicates);
    if (stats)
        *stats = local;
    store.put(Level(n, std::move(rows)));
    return store.get(n);
}

const Level& build_up_to(int n, LevelStore& store) {
    if (n < 1)
        throw invalid_input("build_up_to: n must be >= 1");
    for (int k = 1; k <= n; ++k) {
        if (!store.has(k))
            build_level(k, store);
        if (k - 3 >= 1)
            store.release(k - 3);
    }
    return store.get(n);
}

std::vector<Permutation> read_off_crucial(LevelStore& store, int m, const PositionSpec& spec) {
    const bool right = spec == PositionSpec::right_crucial();
    const bool left = spec == PositionSpec::left_crucial();
    const bool both = spec == PositionSpec::bicrucial();
    if (!right && !left && !both)
        throw invalid_input("read_off_crucial supports {0}, {n} and {0,n}, not " + spec.to_string());
    if (m < 1)
        throw invalid_input("read_off_crucial: length must be >= 1");
    const Level& level = store.get(m);
    const Level& next = store.get(m + 1);

    // A member has a square-free right child iff it is the left parent of some
    // member of level m+1, and a left child iff it is a right parent.
    std::vector<char> has_right_child(level.size(), 0);
    std::vector<char> has_left_child(level.size(), 0);
    std::vector<std::uint8_t> key(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < next.size(); ++i) {
        reduce(next.row(i), 0, m, key.data());
        if (auto a = level.index_of_row(key.data()))
            has_right_child[*a] = 1;
        reduce(next.row(i), 1, m, key.data());
        if (auto a = level.index_of_row(key.data()))
            has_left_child[*a] = 1;
    }
    std::vector<Permutation> out;
    for (std::size_t i = 0; i < level.size(); ++i) {
        const bool ok = (right || both ? !has_right_child[i] : true) && (left || both ? !has_left_child[i] : true);
        if (ok)
            out.push_back(level.member(i));
    }
    return out;
}

} // namespace crucial::layered
