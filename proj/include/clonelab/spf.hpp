#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "scf.hpp"

namespace clonelab {

using NamedRanking = std::vector<std::string>;
using RankingSet = std::set<NamedRanking>;

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultRankingCap = 10000;

inline RankingSet to_named(const Profile& p, const std::set<Ranking>& rs) {
    RankingSet out;
    for (const auto& r : rs) out.insert(p.ranking_names(r));
    return out;
}

// Highest member of k becomes z; the other members of k disappear.
inline NamedRanking neg(const NamedRanking& r, const std::set<std::string>& k, const std::string& z) {
    if (k.empty()) throw ProfileError("neg needs a non-empty set");
    NamedRanking out;
    bool placed = false;
    for (const auto& c : r) {
        if (c == z) throw ProfileError("replacement name already present");
        if (!k.count(c)) {
            out.push_back(c);
        } else if (!placed) {
            out.push_back(z);
            placed = true;
        }
    }
    if (!placed) throw ProfileError("neg set not in ranking");
    return out;
}

inline NamedRanking substitute(const NamedRanking& r, const std::string& a, const NamedRanking& r2) {
    NamedRanking out;
    bool found = false;
    for (const auto& c : r) {
        if (c == a) {
            found = true;
            out.insert(out.end(), r2.begin(), r2.end());
        } else {
            out.push_back(c);
        }
    }
    if (!found) throw ProfileError("candidate to substitute is absent");
    std::set<std::string> uniq(out.begin(), out.end());
    if (uniq.size() != out.size()) throw ProfileError("substitution collides with existing candidates");
    return out;
}

inline CandSet tops(const Profile& p, const RankingSet& rs) {
    CandSet out = 0;
    for (const auto& r : rs) out |= bit(p.require(r.front()));
    return out;
}

inline std::set<std::string> spf_to_scf(const RankingSet& rs) {
    std::set<std::string> out;
    for (const auto& r : rs) out.insert(r.front());
    return out;
}

// Reverse elimination orders over all PUT universes, run down to one candidate.
inline std::set<Ranking> stv_star_rankings(const Profile& p) {
    std::map<CandSet, std::set<Ranking>> memo;
    auto rec = [&](auto&& self, CandSet alive) -> const std::set<Ranking>& {
        auto it = memo.find(alive);
        if (it != memo.end()) return it->second;
        std::set<Ranking> out;
        if (count(alive) == 1) {
            out.insert(Ranking{lowest(alive)});
        } else {
            for (int c : members(fewest_first(p, alive)))
                for (Ranking r : self(self, alive & ~bit(c))) {
                    r.push_back(c);
                    out.insert(std::move(r));
                }
        }
        return memo.emplace(alive, std::move(out)).first->second;
    };
    return rec(rec, p.all());
}

// Linear extensions of a ≻ b iff S[a,b] > S[b,a].
inline std::set<Ranking> bp_star_rankings(const Profile& p, std::size_t cap = kDefaultRankingCap) {
    const auto S = strength_matrix(p);
    const int m = p.m();
    std::vector<CandSet> above(m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b && S(a, b) > S(b, a)) above[b] |= bit(a);
    std::set<Ranking> out;
    Ranking cur;
    auto rec = [&](auto&& self, CandSet placed) -> void {
        if (placed == p.all()) {
            if (out.size() >= cap) throw CapExceeded("BP ranking enumeration exceeded cap");
            out.insert(cur);
            return;
        }
        for (int c = 0; c < m; ++c) {
            if (has(placed, c) || (above[c] & ~placed)) continue;
            cur.push_back(c);
            self(self, placed | bit(c));
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline std::set<Ranking> rp_n_star_rankings(const Profile& p) {
    std::set<Ranking> out;
    for (long i = 1; i <= p.n(); ++i) out.insert(rp_i_run(p, i).ranking);
    return out;
}

inline Ranking reversed(Ranking r) {
    std::reverse(r.begin(), r.end());
    return r;
}

inline Ranking stv_i_star(const Profile& p, long i) { return reversed(stv_i_eliminations(p, i)); }

// Candidates chosen for elimination by the nested-runoff step, on the restriction to `alive`.
enum class NestedVariant { NR, NR_i, NNR_i };

inline Ranking nr_i_star(const Profile& p, long i);

inline CandSet nested_eliminees(const Profile& p, CandSet alive, NestedVariant v, long i) {
    const Profile sub = reverse_profile(restrict_to(p, alive));
    CandSet pick = 0;
    switch (v) {
        case NestedVariant::NR: pick = stv(sub); break;
        case NestedVariant::NR_i: pick = stv_i(sub, i); break;
        case NestedVariant::NNR_i: pick = bit(nr_i_star(sub, i).front()); break;
    }
    return translate(sub, pick, p);
}

inline std::set<Ranking> nested_runoff_rankings(const Profile& p, NestedVariant v, long i = 0) {
    if (v != NestedVariant::NR && (i < 1 || i > p.n())) throw ProfileError("voter index out of range");
    std::map<CandSet, std::set<Ranking>> memo;
    auto rec = [&](auto&& self, CandSet alive) -> const std::set<Ranking>& {
        auto it = memo.find(alive);
        if (it != memo.end()) return it->second;
        std::set<Ranking> out;
        if (count(alive) == 1) {
            out.insert(Ranking{lowest(alive)});
        } else {
            for (int c : members(nested_eliminees(p, alive, v, i)))
                for (Ranking r : self(self, alive & ~bit(c))) {
                    r.push_back(c);
                    out.insert(std::move(r));
                }
        }
        return memo.emplace(alive, std::move(out)).first->second;
    };
    return rec(rec, p.all());
}

inline Ranking nr_i_star(const Profile& p, long i) {
    return *nested_runoff_rankings(p, NestedVariant::NR_i, i).begin();
}

}  // namespace clonelab
