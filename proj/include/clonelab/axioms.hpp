#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "rules.hpp"

namespace clonelab {

using Json = nlohmann::ordered_json;

enum class Status { Holds, Fails, Inconclusive };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Fails: return "fails";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct Verdict {
    std::string axiom;
    Status status = Status::Holds;
    Json witness;      // present when status == Fails
    std::string note;  // reason for an inconclusive verdict
    bool holds() const { return status == Status::Holds; }
    bool fails() const { return status == Status::Fails; }
};

struct CheckOptions {
    std::size_t decomposition_cap = kDefaultDecompositionCap;
    std::size_t ranking_cap = kDefaultRankingCap;
    int participation_max_m = 6;
};

using NameSet = std::set<std::string>;
using NamedFamily = std::set<std::vector<std::string>>;

inline NameSet name_set(const Profile& p, CandSet s) {
    auto v = p.names_of(s);
    return {v.begin(), v.end()};
}

inline Json to_json(const NameSet& s) { return Json(std::vector<std::string>(s.begin(), s.end())); }

inline Json to_json(const RankingSet& rs) {
    Json out = Json::array();
    for (const auto& r : rs) out.push_back(join_ranking(r));
    return out;
}

inline NamedFamily named_family(const Profile& p) {
    NamedFamily out;
    for (CandSet s : clone_structure(p)) out.insert(p.names_of(s));
    return out;
}

inline Json decomposition_json(const Profile& p, const Decomposition& d) {
    Json out = Json::array();
    for (CandSet b : d) out.push_back(p.names_of(b));
    return out;
}

inline std::string fresh_name(const Profile& p) {
    std::string z = "_z";
    while (p.index_of(z) >= 0) z += '_';
    return z;
}

// Non-trivial clone sets and their members, in F order.
template <class Fn>
void for_each_clone_member(const Profile& p, Fn fn) {
    for (CandSet k : clone_structure(p)) {
        if (is_trivial(p, k)) continue;
        for (int a : members(k))
            if (!fn(k, a)) return;
    }
}

inline Verdict check_ioc(const Rule& f, const Profile& p) {
    Verdict v{"ioc"};
    const NameSet with = name_set(p, f(p));
    for_each_clone_member(p, [&](CandSet k, int a) {
        const Profile q = remove_candidates(p, bit(a));
        const NameSet without = name_set(q, f(q));
        const NameSet kset = name_set(p, k);
        auto meets = [&](const NameSet& w, const std::string& skip) {
            for (const auto& x : w)
                if (kset.count(x) && x != skip) return true;
            return false;
        };
        Json w{{"clone_set", to_json(kset)}, {"removed", p.name(a)}};
        Json conditions = Json::array();
        if (meets(with, "") != meets(without, p.name(a))) conditions.push_back(1);
        for (int b = 0; b < p.m(); ++b) {
            if (has(k, b)) continue;
            if (with.count(p.name(b)) != without.count(p.name(b))) {
                conditions.push_back(2);
                w["candidate"] = p.name(b);
                break;
            }
        }
        if (conditions.empty()) return true;
        w["conditions"] = conditions;
        w["with"] = to_json(with);
        w["without"] = to_json(without);
        v.status = Status::Fails;
        v.witness = std::move(w);
        return false;
    });
    return v;
}

inline Verdict check_cc(const Rule& f, const Profile& p, const CheckOptions& opt = {}) {
    Verdict v{"cc"};
    const auto decs = enumerate_decompositions(p, opt.decomposition_cap);
    const NameSet direct = name_set(p, f(p));
    for (const auto& d : decs.items) {
        const NameSet prod = name_set(p, composition_product(f, p, d));
        if (prod != direct) {
            v.status = Status::Fails;
            v.witness = Json{{"decomposition", decomposition_json(p, d)}, {"direct", to_json(direct)},
                             {"product", to_json(prod)}};
            return v;
        }
    }
    if (decs.truncated) {
        v.status = Status::Inconclusive;
        v.note = "decomposition cap reached";
    }
    return v;
}

inline Verdict check_smith(const Rule& f, const Profile& p, bool condorcet_only = false) {
    Verdict v{condorcet_only ? "condorcet" : "smith"};
    const CandSet sm = smith(p);
    if (condorcet_only && count(sm) != 1) return v;
    const CandSet w = f(p);
    if (w & ~sm) {
        v.status = Status::Fails;
        v.witness = Json{{"smith", to_json(name_set(p, sm))}, {"winners", to_json(name_set(p, w))}};
    }
    return v;
}

inline Verdict check_condorcet(const Rule& f, const Profile& p) { return check_smith(f, p, true); }

inline Verdict check_monotonicity(const Rule& f, const Profile& p, bool clone_aware) {
    Verdict v{clone_aware ? "mono_ca" : "mono"};
    const CandSet w = f(p);
    const NamedFamily fam = clone_aware ? named_family(p) : NamedFamily{};
    // one voter lifts a by any number of places
    for (int a : members(w)) {
        for (long idx = 1; idx <= p.n(); ++idx) {
            const Ranking& base = p.voter(idx);
            const auto at = std::find(base.begin(), base.end(), a) - base.begin();
            for (auto to = at - 1; to >= 0; --to) {
                Ranking r = base;
                std::rotate(r.begin() + to, r.begin() + at, r.begin() + at + 1);
                const Profile q = replace_voter(p, idx, r);
                if (clone_aware && named_family(q) != fam) continue;
                const CandSet after = f(q);
                if (!has(after, a)) {
                    v.status = Status::Fails;
                    v.witness = Json{{"voter", idx},
                                     {"promoted", p.name(a)},
                                     {"ranking", join_ranking(p.ranking_names(r))},
                                     {"before", to_json(name_set(p, w))},
                                     {"after", to_json(name_set(q, after))}};
                    return v;
                }
            }
        }
    }
    return v;
}

// F(p) with a deleted from every member, empty set dropped.
inline NamedFamily family_minus(const Profile& p, int a) {
    NamedFamily out;
    for (CandSet s : clone_structure(p)) {
        CandSet t = s & ~bit(a);
        if (t) out.insert(p.names_of(t));
    }
    return out;
}

inline Verdict check_isda(const Rule& f, const Profile& p, bool clone_aware) {
    Verdict v{clone_aware ? "isda_ca" : "isda"};
    const CandSet sm = smith(p);
    const NameSet with = name_set(p, f(p));
    for (int a = 0; a < p.m(); ++a) {
        if (has(sm, a)) continue;
        const Profile q = remove_candidates(p, bit(a));
        if (clone_aware && named_family(q) != family_minus(p, a)) continue;
        const NameSet without = name_set(q, f(q));
        if (without != with) {
            v.status = Status::Fails;
            v.witness = Json{{"removed", p.name(a)}, {"with", to_json(with)}, {"without", to_json(without)}};
            return v;
        }
    }
    return v;
}

// Position of the voter's favourite among `w` in ranking r (smaller is better).
inline int best_position(const Ranking& r, CandSet w) {
    for (int k = 0; k < static_cast<int>(r.size()); ++k)
        if (has(w, r[k])) return k;
    return static_cast<int>(r.size());
}

// Violated when the new voter strictly prefers their favourite winner from before joining.
inline bool participation_violated(const Rule& f, const Profile& p, const Ranking& r, CandSet* before = nullptr,
                                   CandSet* after = nullptr) {
    const CandSet b = f(p);
    const CandSet a = f(add_voter(p, r));
    if (before) *before = b;
    if (after) *after = a;
    return best_position(r, a) > best_position(r, b);
}

inline Verdict check_participation(const Rule& f, const Profile& p, bool clone_aware, const CheckOptions& opt = {}) {
    Verdict v{clone_aware ? "part_ca" : "part"};
    if (p.m() > opt.participation_max_m) {
        v.status = Status::Inconclusive;
        v.note = "too many candidates to enumerate every new ranking";
        return v;
    }
    const NamedFamily fam = clone_aware ? named_family(p) : NamedFamily{};
    const CandSet before = f(p);
    Ranking r(p.m());
    std::iota(r.begin(), r.end(), 0);
    do {
        const Profile q = add_voter(p, r);
        if (clone_aware && named_family(q) != fam) continue;
        const CandSet after = f(q);
        if (best_position(r, after) > best_position(r, before)) {
            v.status = Status::Fails;
            v.witness = Json{{"ranking", join_ranking(p.ranking_names(r))},
                             {"before", to_json(name_set(p, before))},
                             {"after", to_json(name_set(q, after))}};
            return v;
        }
    } while (std::next_permutation(r.begin(), r.end()));
    return v;
}

inline RankingSet neg_all(const RankingSet& rs, const NameSet& k, const std::string& z) {
    RankingSet out;
    for (const auto& r : rs) out.insert(neg(r, k, z));
    return out;
}

inline Verdict check_ioc_spf(const SpfRule& F, const Profile& p) {
    Verdict v{"ioc_spf"};
    try {
        const RankingSet with = F(p);
        const std::string z = fresh_name(p);
        for_each_clone_member(p, [&](CandSet k, int a) {
            const Profile q = remove_candidates(p, bit(a));
            const RankingSet lhs = neg_all(with, name_set(p, k), z);
            const RankingSet rhs = neg_all(F(q), name_set(p, k & ~bit(a)), z);
            if (lhs == rhs) return true;
            v.status = Status::Fails;
            v.witness = Json{{"clone_set", to_json(name_set(p, k))}, {"removed", p.name(a)}, {"with", to_json(lhs)},
                             {"without", to_json(rhs)}};
            return false;
        });
    } catch (const CapExceeded& e) {
        v.status = Status::Inconclusive;
        v.note = e.what();
    }
    return v;
}

// F(summary) with each block name expanded into every ranking its restriction receives.
inline RankingSet spf_composition(const SpfRule& F, const Profile& p, const Decomposition& d) {
    const Decomposition blocks = normalized(d);
    const Profile summary = summarize(p, blocks);
    std::vector<RankingSet> inner;
    for (CandSet b : blocks) inner.push_back(F(restrict_to(p, b)));
    RankingSet out;
    for (const auto& top : F(summary)) {
        RankingSet partial{top};
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            RankingSet next;
            for (const auto& r : partial)
                for (const auto& sub : inner[j]) next.insert(substitute(r, summary.name(static_cast<int>(j)), sub));
            partial = std::move(next);
        }
        out.insert(partial.begin(), partial.end());
    }
    return out;
}

inline Verdict check_cc_spf(const SpfRule& F, const Profile& p, const CheckOptions& opt = {}) {
    Verdict v{"cc_spf"};
    try {
        const auto decs = enumerate_decompositions(p, opt.decomposition_cap);
        const RankingSet direct = F(p);
        for (const auto& d : decs.items) {
            const RankingSet prod = spf_composition(F, p, d);
            if (prod != direct) {
                v.status = Status::Fails;
                v.witness = Json{{"decomposition", decomposition_json(p, d)}, {"direct", to_json(direct)},
                                 {"product", to_json(prod)}};
                return v;
            }
        }
        if (decs.truncated) {
            v.status = Status::Inconclusive;
            v.note = "decomposition cap reached";
        }
    } catch (const CapExceeded& e) {
        v.status = Status::Inconclusive;
        v.note = e.what();
    }
    return v;
}

inline const std::vector<std::string>& axiom_ids() {
    static const std::vector<std::string> ids{"ioc",  "cc",      "condorcet", "smith", "mono",    "mono_ca",
                                              "isda", "isda_ca", "part",      "part_ca", "ioc_spf", "cc_spf"};
    return ids;
}

inline Verdict check_axiom(const std::string& axiom, const std::string& rule_id, const Profile& p,
                           const CheckOptions& opt = {}) {
    if (axiom == "ioc_spf") return check_ioc_spf(resolve_spf(rule_id, opt.ranking_cap), p);
    if (axiom == "cc_spf") return check_cc_spf(resolve_spf(rule_id, opt.ranking_cap), p, opt);
    const Rule f = resolve_rule(rule_id);
    if (axiom == "ioc") return check_ioc(f, p);
    if (axiom == "cc") return check_cc(f, p, opt);
    if (axiom == "condorcet") return check_condorcet(f, p);
    if (axiom == "smith") return check_smith(f, p);
    if (axiom == "mono") return check_monotonicity(f, p, false);
    if (axiom == "mono_ca") return check_monotonicity(f, p, true);
    if (axiom == "isda") return check_isda(f, p, false);
    if (axiom == "isda_ca") return check_isda(f, p, true);
    if (axiom == "part") return check_participation(f, p, false, opt);
    if (axiom == "part_ca") return check_participation(f, p, true, opt);
    throw RuleError("unknown axiom '" + axiom + "'");
}

namespace detail {
inline CandSet set_from_json(const Profile& p, const Json& j) {
    CandSet s = 0;
    for (const auto& x : j) s |= bit(p.require(x.get<std::string>()));
    return s;
}
inline Ranking ranking_from_text(const Profile& p, const std::string& s) {
    Ranking r;
    for (const auto& t : split(s, '>')) r.push_back(p.require(t));
    return r;
}
}  // namespace detail

// Recompute both sides quoted in a failing witness; true iff they match the witness and still differ.
inline bool reverify(const std::string& rule_id, const Profile& p, const Verdict& v) {
    if (!v.fails()) return false;
    const Json& w = v.witness;
    const std::string& ax = v.axiom;
    if (ax == "ioc_spf" || ax == "cc_spf") {
        const SpfRule F = resolve_spf(rule_id);
        auto as_json = [](const RankingSet& rs) { return to_json(rs); };
        if (ax == "cc_spf") {
            Decomposition d;
            for (const auto& b : w["decomposition"]) d.push_back(detail::set_from_json(p, b));
            const Json direct = as_json(F(p)), prod = as_json(spf_composition(F, p, d));
            return direct == w["direct"] && prod == w["product"] && direct != prod;
        }
        const CandSet k = detail::set_from_json(p, w["clone_set"]);
        const int a = p.require(w["removed"].get<std::string>());
        const std::string z = fresh_name(p);
        const Json lhs = as_json(neg_all(F(p), name_set(p, k), z));
        const Json rhs = as_json(neg_all(F(remove_candidates(p, bit(a))), name_set(p, k & ~bit(a)), z));
        return lhs == w["with"] && rhs == w["without"] && lhs != rhs;
    }
    const Rule f = resolve_rule(rule_id);
    auto named = [&](const Profile& q) { return to_json(name_set(q, f(q))); };
    if (ax == "cc") {
        Decomposition d;
        for (const auto& b : w["decomposition"]) d.push_back(detail::set_from_json(p, b));
        const Json direct = named(p), prod = to_json(name_set(p, composition_product(f, p, d)));
        return direct == w["direct"] && prod == w["product"] && direct != prod;
    }
    if (ax == "ioc" || ax == "isda" || ax == "isda_ca") {
        const Profile q = remove_candidates(p, bit(p.require(w["removed"].get<std::string>())));
        const Json with = named(p), without = named(q);
        if (with != w["with"] || without != w["without"]) return false;
        if (ax != "ioc") return with != without;
        const CandSet k = detail::set_from_json(p, w["clone_set"]);
        bool ok = !w["conditions"].empty();
        for (const auto& c : w["conditions"]) {
            if (c == 1) {
                auto meets = [&](const Json& s) { return (detail::set_from_json(p, s) & k) != 0; };
                ok = ok && meets(with) != meets(without);
            } else {
                const std::string b = w["candidate"];
                auto contains = [&](const Json& s) { return std::find(s.begin(), s.end(), b) != s.end(); };
                ok = ok && contains(with) != contains(without);
            }
        }
        return ok;
    }
    if (ax == "smith" || ax == "condorcet") {
        const Json win = named(p);
        return win == w["winners"] && (detail::set_from_json(p, win) & ~smith(p)) != 0;
    }
    if (ax == "mono" || ax == "mono_ca") {
        const Ranking r = detail::ranking_from_text(p, w["ranking"]);
        const Profile q = replace_voter(p, w["voter"].get<long>(), r);
        const Json before = named(p), after = named(q);
        const std::string a = w["promoted"];
        auto contains = [&](const Json& s) { return std::find(s.begin(), s.end(), a) != s.end(); };
        return before == w["before"] && after == w["after"] && contains(before) && !contains(after);
    }
    if (ax == "part" || ax == "part_ca") {
        const Ranking r = detail::ranking_from_text(p, w["ranking"]);
        CandSet b = 0, a = 0;
        const bool bad = participation_violated(f, p, r, &b, &a);
        return bad && to_json(name_set(p, b)) == w["before"] && to_json(name_set(p, a)) == w["after"];
    }
    return false;
}

}  // namespace clonelab
