#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "clonelab/clonelab.hpp"

#ifndef CLONELAB_FIXTURE_DIR
#error "CLONELAB_FIXTURE_DIR must be defined by the build"
#endif

namespace testsupport {

using namespace clonelab;

inline Profile fixture(const std::string& name) {
    return load_profile(std::string(CLONELAB_FIXTURE_DIR) + "/" + name + ".txt");
}

inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> v{"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9"};
    return v;
}

inline CandSet S(const Profile& p, std::initializer_list<const char*> xs) {
    CandSet s = 0;
    for (const char* x : xs) s |= bit(p.require(x));
    return s;
}

inline std::set<std::string> N(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

inline std::set<std::string> named(const Profile& p, CandSet s) { return name_set(p, s); }

// Random corpus: m in 1..5, n in 1..6; about half the profiles get a planted clone block.
inline Profile random_profile(std::mt19937_64& rng, int m, int n) {
    std::vector<std::string> names;
    for (int c = 0; c < m; ++c) names.push_back(std::string(1, static_cast<char>('a' + c)));
    std::uniform_int_distribution<int> coin(0, 1);
    int block_lo = 0, block_size = 1;
    if (m >= 3 && coin(rng)) {
        block_size = std::uniform_int_distribution<int>(2, m - 1)(rng);
        block_lo = std::uniform_int_distribution<int>(0, m - block_size)(rng);
    }
    std::vector<Group> groups;
    for (int v = 0; v < n; ++v) {
        // meta items: the block is one item, placed, then expanded in a random internal order
        std::vector<int> meta;
        for (int c = 0; c < m; ++c)
            if (c < block_lo || c >= block_lo + block_size || c == block_lo) meta.push_back(c);
        std::shuffle(meta.begin(), meta.end(), rng);
        std::vector<int> inner(block_size);
        std::iota(inner.begin(), inner.end(), block_lo);
        std::shuffle(inner.begin(), inner.end(), rng);
        Ranking r;
        for (int x : meta) {
            if (x == block_lo)
                r.insert(r.end(), inner.begin(), inner.end());
            else
                r.push_back(x);
        }
        groups.push_back({r, 1});
    }
    return Profile(names, groups);
}

inline const std::vector<Profile>& corpus() {
    static const std::vector<Profile> c = [] {
        std::mt19937_64 rng(20240611);
        std::vector<Profile> out;
        for (int k = 0; k < 520; ++k) {
            const int m = k < 20 ? 1 + k % 2 : std::uniform_int_distribution<int>(3, 5)(rng);
            const int n = std::uniform_int_distribution<int>(1, 6)(rng);
            out.push_back(random_profile(rng, m, n));
        }
        return out;
    }();
    return c;
}

inline std::vector<Profile> corpus_and_fixtures() {
    std::vector<Profile> all = corpus();
    for (const auto& f : fixture_names()) all.push_back(fixture(f));
    return all;
}

inline std::vector<Ranking> all_rankings(int m) {
    Ranking r(m);
    std::iota(r.begin(), r.end(), 0);
    std::vector<Ranking> out;
    do out.push_back(r);
    while (std::next_permutation(r.begin(), r.end()));
    return out;
}

// ---- brute-force oracles ----

inline std::vector<int> positions(const Ranking& r) {
    std::vector<int> pos(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) pos[r[k]] = static_cast<int>(k);
    return pos;
}

inline std::set<CandSet> brute_clone_sets(const Profile& p) {
    std::set<CandSet> out;
    for (CandSet s = 1; s <= p.all(); ++s) {
        bool ok = true;
        for (const auto& g : p.groups()) {
            const auto pos = positions(g.order);
            int lo = p.m(), hi = -1;
            for (int c : members(s)) lo = std::min(lo, pos[c]), hi = std::max(hi, pos[c]);
            if (hi - lo + 1 != count(s)) ok = false;
        }
        if (ok) out.insert(s);
    }
    return out;
}

inline int margin(const Profile& p, int a, int b) {
    int m = 0;
    for (const auto& g : p.groups()) {
        const auto pos = positions(g.order);
        m += static_cast<int>(g.count) * (pos[a] < pos[b] ? 1 : -1);
    }
    return m;
}

// Smallest S such that every member beats every outsider by a positive margin.
inline CandSet brute_smith(const Profile& p) {
    CandSet best = p.all();
    for (CandSet s = 1; s <= p.all(); ++s) {
        bool dom = true;
        for (int x : members(s))
            for (int y : members(p.all() & ~s))
                if (margin(p, x, y) <= 0) dom = false;
        if (dom && count(s) < count(best)) best = s;
    }
    return best;
}

// Union of inclusion-minimal sets no outsider strictly beats any member of.
inline CandSet brute_schwartz(const Profile& p) {
    std::vector<CandSet> und;
    for (CandSet s = 1; s <= p.all(); ++s) {
        bool ok = true;
        for (int x : members(s))
            for (int y : members(p.all() & ~s))
                if (margin(p, y, x) > 0) ok = false;
        if (ok) und.push_back(s);
    }
    CandSet out = 0;
    for (CandSet s : und) {
        bool minimal = true;
        for (CandSet t : und)
            if (t != s && (t & s) == t) minimal = false;
        if (minimal) out |= s;
    }
    return out;
}

// Stack under a strict priority: every x above y is connected by a downward path whose links all outrank (y,x).
inline bool is_strict_stack(const Ranking& r, const std::vector<Edge>& L) {
    const int m = static_cast<int>(r.size());
    std::vector<std::vector<int>> rank(m, std::vector<int>(m, -1));
    for (std::size_t k = 0; k < L.size(); ++k) rank[L[k].first][L[k].second] = static_cast<int>(k);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const int x = r[i], y = r[j];
            const int limit = rank[y][x];
            // reachable from position i going down the ranking through links ranked before (y,x)
            std::vector<bool> reach(m, false);
            reach[i] = true;
            for (int a = i; a < j; ++a) {
                if (!reach[a]) continue;
                for (int b = a + 1; b <= j; ++b)
                    if (rank[r[a]][r[b]] < limit) reach[b] = true;
            }
            if (!reach[j]) return false;
        }
    return true;
}

// Weak stack: links along the ranking with margin at least M[y,x].
inline bool is_weak_stack(const Profile& p, const Ranking& r) {
    const int m = static_cast<int>(r.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const int need = margin(p, r[j], r[i]);
            std::vector<bool> reach(m, false);
            reach[i] = true;
            for (int a = i; a < j; ++a) {
                if (!reach[a]) continue;
                for (int b = a + 1; b <= j; ++b)
                    if (margin(p, r[a], r[b]) >= need) reach[b] = true;
            }
            if (!reach[j]) return false;
        }
    return true;
}

// All partitions of A into clone sets.
inline std::set<Decomposition> brute_decompositions(const Profile& p) {
    const auto cs = brute_clone_sets(p);
    std::set<Decomposition> out;
    std::vector<CandSet> cur;
    auto rec = [&](auto&& self, CandSet left) -> void {
        if (!left) {
            out.insert(normalized(cur));
            return;
        }
        const int lo = lowest(left);
        for (CandSet s : cs)
            if (has(s, lo) && (s & left) == s) {
                cur.push_back(s);
                self(self, left & ~s);
                cur.pop_back();
            }
    };
    rec(rec, p.all());
    return out;
}

// Largest bottleneck over simple paths, by exhaustive DFS.
inline int brute_strength(const Profile& p, int a, int b) {
    int best = 0;
    std::vector<bool> seen(p.m(), false);
    auto dfs = [&](auto&& self, int x, int bottleneck) -> void {
        if (x == b) {
            best = std::max(best, bottleneck);
            return;
        }
        seen[x] = true;
        for (int y = 0; y < p.m(); ++y)
            if (!seen[y] && margin(p, x, y) > 0) self(self, y, std::min(bottleneck, margin(p, x, y)));
        seen[x] = false;
    };
    dfs(dfs, a, 1 << 30);
    return best;
}

}  // namespace testsupport
