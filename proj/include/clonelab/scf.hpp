#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "profile.hpp"

namespace clonelab {

using Edge = std::pair<int, int>;

inline CandSet pv(const Profile& p) {
    auto cnt = first_place_counts(p);
    long best = *std::max_element(cnt.begin(), cnt.end());
    CandSet out = 0;
    for (int c = 0; c < p.m(); ++c)
        if (cnt[c] == best) out |= bit(c);
    return out;
}

// First-place counts among the candidates still in `alive`.
inline std::vector<long> first_place_counts(const Profile& p, CandSet alive) {
    std::vector<long> cnt(p.m(), 0);
    for (const auto& g : p.groups())
        for (int c : g.order)
            if (has(alive, c)) {
                cnt[c] += g.count;
                break;
            }
    return cnt;
}

inline CandSet fewest_first(const Profile& p, CandSet alive) {
    auto cnt = first_place_counts(p, alive);
    long low = -1;
    for (int c : members(alive))
        if (low < 0 || cnt[c] < low) low = cnt[c];
    CandSet out = 0;
    for (int c : members(alive))
        if (cnt[c] == low) out |= bit(c);
    return out;
}

// Parallel-universes STV: every candidate tied for fewest first places is a branch.
inline CandSet stv(const Profile& p) {
    std::set<CandSet> seen;
    CandSet winners = 0;
    auto rec = [&](auto&& self, CandSet alive) -> void {
        if (!seen.insert(alive).second) return;
        if (count(alive) == 1) {
            winners |= alive;
            return;
        }
        for (int c : members(fewest_first(p, alive))) self(self, alive & ~bit(c));
    };
    rec(rec, p.all());
    return winners;
}

// Elimination order under STV where ties go against the candidate voter i ranks lowest.
inline Ranking stv_i_eliminations(const Profile& p, long i) {
    const Ranking& vi = p.voter(i);
    CandSet alive = p.all();
    Ranking order;
    while (count(alive) > 1) {
        CandSet low = fewest_first(p, alive);
        int out = -1;
        for (int c : vi)
            if (has(low, c)) out = c;
        order.push_back(out);
        alive &= ~bit(out);
    }
    order.push_back(lowest(alive));
    return order;
}

inline CandSet stv_i(const Profile& p, long i) { return bit(stv_i_eliminations(p, i).back()); }

// Σ_i: pairs written (x,y) with x above y for voter i, ordered by x's then y's position.
inline std::vector<Edge> sigma_i(const Profile& p, long i) {
    const Ranking& vi = p.voter(i);
    std::vector<Edge> out;
    for (std::size_t x = 0; x < vi.size(); ++x)
        for (std::size_t y = x + 1; y < vi.size(); ++y) out.emplace_back(vi[x], vi[y]);
    return out;
}

// Ordered pairs by decreasing margin; equal margins by Σ_i, opposite zero pairs by voter i.
inline std::vector<Edge> priority_order(const Profile& p, long i) {
    const auto M = majority_matrix(p);
    const Ranking& vi = p.voter(i);
    std::vector<int> pos(p.m());
    for (int x = 0; x < p.m(); ++x) pos[vi[x]] = x;
    auto pair_key = [&](const Edge& e) {
        int a = pos[e.first], b = pos[e.second];
        return std::make_pair(std::min(a, b), std::max(a, b));
    };
    std::vector<Edge> out;
    for (int a = 0; a < p.m(); ++a)
        for (int b = 0; b < p.m(); ++b)
            if (a != b) out.emplace_back(a, b);
    std::sort(out.begin(), out.end(), [&](const Edge& e, const Edge& f) {
        long me = M(e.first, e.second), mf = M(f.first, f.second);
        if (me != mf) return me > mf;
        auto ke = pair_key(e), kf = pair_key(f);
        if (ke != kf) return ke < kf;
        return pos[e.first] < pos[f.first];
    });
    return out;
}

// reach[x] holds x and everything x reaches through locked edges.
using Closure = std::vector<CandSet>;

inline Closure empty_closure(int m) {
    Closure r(m);
    for (int x = 0; x < m; ++x) r[x] = bit(x);
    return r;
}

inline void lock_edge(Closure& reach, int a, int b) {
    const CandSet add = reach[b];
    for (auto& r : reach)
        if (has(r, a)) r |= add;
}

// Total closure to ranking: whoever reaches more sits higher.
inline Ranking closure_ranking(const Closure& reach) {
    Ranking r(reach.size());
    for (std::size_t x = 0; x < reach.size(); ++x) r[x] = static_cast<int>(x);
    std::sort(r.begin(), r.end(), [&](int a, int b) { return count(reach[a]) > count(reach[b]); });
    return r;
}

struct RankedPairsRun {
    std::vector<Edge> locked;
    Ranking ranking;  // total order of the locked digraph
};

inline RankedPairsRun rp_i_run(const Profile& p, long i) {
    RankedPairsRun out;
    Closure reach = empty_closure(p.m());
    for (const auto& [a, b] : priority_order(p, i)) {
        if (has(reach[b], a)) continue;
        out.locked.emplace_back(a, b);
        lock_edge(reach, a, b);
    }
    out.ranking = closure_ranking(reach);
    return out;
}

inline CandSet rp_i(const Profile& p, long i) { return bit(rp_i_run(p, i).ranking.front()); }

inline CandSet rp_n(const Profile& p) {
    CandSet out = 0;
    long i = 1;
    // voters sharing a ranking share Σ_i and the priority order
    std::set<Ranking> done;
    for (const auto& g : p.groups()) {
        if (done.insert(g.order).second) out |= rp_i(p, i);
        i += g.count;
    }
    return out;
}

// All final rankings of RP under every tie-break order over pairs with M >= 0.
// States are (margin group, closure); edges already decided by the closure are no-ops and skipped.
inline std::set<Ranking> rp_put_rankings(const Profile& p) {
    const auto M = majority_matrix(p);
    std::map<long, std::vector<Edge>, std::greater<>> by_margin;
    for (int a = 0; a < p.m(); ++a)
        for (int b = 0; b < p.m(); ++b)
            if (a != b && M(a, b) >= 0) by_margin[M(a, b)].push_back({a, b});
    std::vector<std::vector<Edge>> groups;
    for (auto& [_, es] : by_margin) groups.push_back(std::move(es));

    std::set<Ranking> out;
    std::set<std::pair<std::size_t, Closure>> seen;
    auto rec = [&](auto&& self, std::size_t g, const Closure& reach) -> void {
        while (g < groups.size()) {
            bool open = false;
            for (const auto& [a, b] : groups[g])
                if (!has(reach[a], b) && !has(reach[b], a)) open = true;
            if (open) break;
            ++g;
        }
        if (!seen.insert({g, reach}).second) return;
        if (g == groups.size()) {
            out.insert(closure_ranking(reach));
            return;
        }
        for (const auto& [a, b] : groups[g]) {
            if (has(reach[a], b) || has(reach[b], a)) continue;
            Closure next = reach;
            lock_edge(next, a, b);
            self(self, g, next);
        }
    };
    rec(rec, 0, empty_closure(p.m()));
    return out;
}

inline CandSet rp_put(const Profile& p) {
    CandSet out = 0;
    for (const auto& r : rp_put_rankings(p)) out |= bit(r.front());
    return out;
}

// Widest positive-margin paths; 0 means no path.
inline MajorityMatrix strength_matrix(const Profile& p) {
    const auto M = majority_matrix(p);
    const int m = p.m();
    MajorityMatrix S(m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b && M(a, b) > 0) S.at(a, b) = M(a, b);
    for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (a != b && a != k && b != k) S.at(a, b) = std::max(S(a, b), std::min(S(a, k), S(k, b)));
    return S;
}

inline CandSet beatpath(const Profile& p) {
    const auto S = strength_matrix(p);
    CandSet out = 0;
    for (int a = 0; a < p.m(); ++a) {
        bool ok = true;
        for (int b = 0; b < p.m() && ok; ++b) ok = a == b || S(a, b) >= S(b, a);
        if (ok) out |= bit(a);
    }
    return out;
}

// Simple cycles of the positive-margin digraph, each listed once from its smallest vertex.
inline std::vector<std::vector<int>> positive_cycles(const MajorityMatrix& M) {
    const int m = M.m();
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    auto rec = [&](auto&& self, int start, int v, CandSet used) -> void {
        for (int w = start; w < m; ++w) {
            if (M(v, w) <= 0) continue;
            if (w == start) {
                out.push_back(path);
            } else if (!has(used, w)) {
                path.push_back(w);
                self(self, start, w, used | bit(w));
                path.pop_back();
            }
        }
    };
    for (int s = 0; s < m; ++s) {
        path = {s};
        rec(rec, s, s, bit(s));
    }
    return out;
}

inline CandSet split_cycle(const Profile& p) {
    const auto M = majority_matrix(p);
    const int m = p.m();
    std::set<Edge> marked;
    for (const auto& cyc : positive_cycles(M)) {
        long low = -1;
        for (std::size_t x = 0; x < cyc.size(); ++x) {
            long w = M(cyc[x], cyc[(x + 1) % cyc.size()]);
            if (low < 0 || w < low) low = w;
        }
        for (std::size_t x = 0; x < cyc.size(); ++x) {
            Edge e{cyc[x], cyc[(x + 1) % cyc.size()]};
            if (M(e.first, e.second) == low) marked.insert(e);
        }
    }
    CandSet out = 0;
    for (int b = 0; b < m; ++b) {
        bool beaten = false;
        for (int a = 0; a < m && !beaten; ++a) beaten = M(a, b) > 0 && !marked.count({a, b});
        if (!beaten) out |= bit(b);
    }
    return out;
}

// Transitive closure of a relation restricted to `alive`; includes self.
template <class Rel>
Closure relation_closure(int m, CandSet alive, Rel rel) {
    Closure reach(m, 0);
    for (int a : members(alive)) {
        reach[a] = bit(a);
        for (int b : members(alive))
            if (a != b && rel(a, b)) reach[a] |= bit(b);
    }
    for (int k : members(alive))
        for (int a : members(alive))
            if (has(reach[a], k)) reach[a] |= reach[k];
    return reach;
}

// Top component of the "beats or ties" digraph among `alive`.
inline CandSet smith_within(const MajorityMatrix& M, CandSet alive) {
    auto reach = relation_closure(M.m(), alive, [&](int a, int b) { return M(a, b) >= 0; });
    CandSet out = 0;
    for (int a : members(alive))
        if ((reach[a] & alive) == alive) out |= bit(a);
    return out;
}

inline CandSet smith(const Profile& p) { return smith_within(majority_matrix(p), p.all()); }

// Union of source components of the strict-defeat digraph.
inline CandSet schwartz(const Profile& p) {
    const auto M = majority_matrix(p);
    auto reach = relation_closure(p.m(), p.all(), [&](int a, int b) { return M(a, b) > 0; });
    CandSet out = 0;
    for (int a = 0; a < p.m(); ++a) {
        bool source = true;
        for (int b = 0; b < p.m() && source; ++b) source = !has(reach[b], a) || has(reach[a], b);
        if (source) out |= bit(a);
    }
    return out;
}

// Alternate Smith restriction and fewest-first elimination; ties branch.
inline CandSet alt_smith(const Profile& p) {
    const auto M = majority_matrix(p);
    std::set<CandSet> seen;
    CandSet winners = 0;
    auto rec = [&](auto&& self, CandSet alive) -> void {
        if (!seen.insert(alive).second) return;
        alive = smith_within(M, alive);
        if (count(alive) == 1) {
            winners |= alive;
            return;
        }
        for (int c : members(fewest_first(p, alive))) self(self, alive & ~bit(c));
    };
    rec(rec, p.all());
    return winners;
}

// b left-covers a: everyone who defeats b also defeats a.
inline bool left_covers(const MajorityMatrix& M, int b, int a) {
    for (int c = 0; c < M.m(); ++c)
        if (M(c, b) > 0 && M(c, a) <= 0) return false;
    return true;
}

inline CandSet uc_gillies(const Profile& p) {
    const auto M = majority_matrix(p);
    CandSet out = 0;
    for (int a = 0; a < p.m(); ++a) {
        bool covered = false;
        for (int b = 0; b < p.m() && !covered; ++b) covered = b != a && M(b, a) > 0 && left_covers(M, b, a);
        if (!covered) out |= bit(a);
    }
    return out;
}

inline CandSet uc_fishburn(const Profile& p) {
    const auto M = majority_matrix(p);
    CandSet out = 0;
    for (int a = 0; a < p.m(); ++a) {
        bool covered = false;
        for (int b = 0; b < p.m() && !covered; ++b)
            covered = b != a && left_covers(M, b, a) && !left_covers(M, a, b);
        if (!covered) out |= bit(a);
    }
    return out;
}

}  // namespace clonelab
