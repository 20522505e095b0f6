#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "profile.hpp"

namespace clonelab {

inline bool is_clone_set(const Profile& p, CandSet s) {
    if (s == 0) throw ProfileError("clone set must be non-empty");
    if (s & ~p.all()) throw ProfileError("unknown candidate in clone set");
    const int k = count(s);
    for (const auto& g : p.groups()) {
        int first = -1, last = -1;
        for (int pos = 0; pos < p.m(); ++pos)
            if (has(s, g.order[pos])) {
                if (first < 0) first = pos;
                last = pos;
            }
        if (last - first + 1 != k) return false;
    }
    return true;
}

// Canonical order for families and decompositions: by size, then by sorted member names.
inline bool set_less(const Profile& p, CandSet a, CandSet b) {
    if (count(a) != count(b)) return count(a) < count(b);
    return p.names_of(a) < p.names_of(b);
}

// F(p): intervals of voter 1's ranking that are intervals for everyone.
inline std::vector<CandSet> clone_structure(const Profile& p) {
    const Ranking& r = p.voter(1);
    const int m = p.m();
    std::vector<CandSet> out;
    for (int i = 0; i < m; ++i) {
        CandSet s = 0;
        for (int j = i; j < m; ++j) {
            s |= bit(r[j]);
            if (j == i || (i == 0 && j == m - 1) || is_clone_set(p, s)) out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end(), [&](CandSet a, CandSet b) { return set_less(p, a, b); });
    return out;
}

inline bool is_trivial(const Profile& p, CandSet s) { return count(s) == 1 || s == p.all(); }

// Blocks sorted by least member index.
using Decomposition = std::vector<CandSet>;

inline Decomposition normalized(Decomposition d) {
    std::sort(d.begin(), d.end(), [](CandSet a, CandSet b) { return lowest(a) < lowest(b); });
    return d;
}

inline Decomposition trivial_decomposition(const Profile& p) {
    Decomposition d;
    for (int c = 0; c < p.m(); ++c) d.push_back(bit(c));
    return d;
}

inline bool is_decomposition(const Profile& p, const Decomposition& d) {
    CandSet seen = 0;
    for (CandSet b : d) {
        if (b == 0 || (b & seen) || (b & ~p.all())) return false;
        seen |= b;
    }
    if (seen != p.all()) return false;
    for (CandSet b : d)
        if (!is_clone_set(p, b)) return false;
    return true;
}

struct DecompositionList {
    std::vector<Decomposition> items;
    bool truncated = false;
};

inline constexpr std::size_t kDefaultDecompositionCap = 1000000;

// All partitions of A into members of F(p), lexicographic by block signature.
inline DecompositionList enumerate_decompositions(const Profile& p, std::size_t cap = kDefaultDecompositionCap) {
    auto family = clone_structure(p);
    auto key = [](CandSet s) { return members(s); };
    std::sort(family.begin(), family.end(), [&](CandSet a, CandSet b) { return key(a) < key(b); });
    DecompositionList out;
    Decomposition cur;
    auto rec = [&](auto&& self, CandSet covered) -> void {
        if (out.truncated) return;
        if (covered == p.all()) {
            if (out.items.size() >= cap) {
                out.truncated = true;
                return;
            }
            out.items.push_back(cur);
            return;
        }
        const int next = lowest(~covered & p.all());
        for (CandSet s : family) {
            if (lowest(s) != next || (s & covered)) continue;
            cur.push_back(s);
            self(self, covered | s);
            cur.pop_back();
            if (out.truncated) return;
        }
    };
    rec(rec, 0);
    return out;
}

inline int clone_metric(const Profile& p, int a, int b) {
    if (a < 0 || b < 0 || a >= p.m() || b >= p.m()) throw ProfileError("unknown candidate");
    int best = p.m();
    for (CandSet s : clone_structure(p))
        if (has(s, a) && has(s, b)) best = std::min(best, count(s));
    return best - 1;
}

inline std::string block_name(const Profile& p, CandSet s) {
    std::string out;
    for (const auto& nm : p.names_of(s)) {
        if (!out.empty()) out += '+';
        out += nm;
    }
    return out;
}

// Summary over blocks; meta-candidate j is d[j], named by its sorted members joined with '+'.
inline Profile summarize(const Profile& p, const Decomposition& d) {
    if (!is_decomposition(p, d)) throw ProfileError("not a clone decomposition of the profile");
    std::vector<int> block_of(p.m());
    for (std::size_t j = 0; j < d.size(); ++j)
        for (int c : members(d[j])) block_of[c] = static_cast<int>(j);
    std::vector<std::string> names;
    for (CandSet b : d) names.push_back(block_name(p, b));
    std::vector<Group> groups;
    for (const auto& g : p.groups()) {
        Ranking r;
        CandSet seen = 0;
        for (int c : g.order) {
            int j = block_of[c];
            if (!has(seen, j)) {
                seen |= bit(j);
                r.push_back(j);
            }
        }
        groups.push_back({std::move(r), g.count});
    }
    return Profile(std::move(names), std::move(groups));
}

}  // namespace clonelab
