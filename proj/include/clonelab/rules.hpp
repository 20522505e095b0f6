#pragma once

#include <string>

#include "cc_transform.hpp"
#include "spf.hpp"

namespace clonelab {

class RuleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using SpfRule = std::function<RankingSet(const Profile&)>;

namespace detail {
// "rp_i:3" -> ("rp_i", 3); "pv" -> ("pv", 0)
inline std::pair<std::string, long> split_index(const std::string& id) {
    auto colon = id.find(':');
    if (colon == std::string::npos) return {id, 0};
    std::string tail = id.substr(colon + 1);
    long i = 0;
    try {
        std::size_t used = 0;
        i = std::stol(tail, &used);
        if (used != tail.size() || i < 1) throw RuleError("bad voter index in rule '" + id + "'");
    } catch (const std::logic_error&) {
        throw RuleError("bad voter index in rule '" + id + "'");
    }
    return {id.substr(0, colon), i};
}

inline void need_voter(const Profile& p, long i) {
    if (i < 1 || i > p.n()) throw ProfileError("voter index out of range");
}

inline std::string strip_stars(std::string s) {
    std::erase(s, '*');
    return s;
}
}  // namespace detail

// Ids: pv stv rp rp_i:<i> rp_n bp sc smith schwartz as ucg ucf stv_i:<i> nr nr_i:<i> nnr_i:<i>,
// each optionally followed by one or more "^cc".
inline Rule resolve_rule(const std::string& id) {
    static const std::string cc = "^cc";
    if (id.size() > cc.size() && id.compare(id.size() - cc.size(), cc.size(), cc) == 0) {
        Rule inner = resolve_rule(id.substr(0, id.size() - cc.size()));
        return [inner](const Profile& p) { return cc_transform(inner, p); };
    }
    auto [base, i] = detail::split_index(id);
    const bool indexed = base == "rp_i" || base == "stv_i" || base == "nr_i" || base == "nnr_i";
    if (indexed != (i > 0)) throw RuleError("rule '" + id + "' " + (indexed ? "needs" : "takes no") + " voter index");
    if (base == "pv") return pv;
    if (base == "stv") return stv;
    if (base == "rp") return rp_put;
    if (base == "rp_n") return rp_n;
    if (base == "bp") return beatpath;
    if (base == "sc") return split_cycle;
    if (base == "smith") return smith;
    if (base == "schwartz") return schwartz;
    if (base == "as") return alt_smith;
    if (base == "ucg") return uc_gillies;
    if (base == "ucf") return uc_fishburn;
    if (base == "rp_i") return [i](const Profile& p) { return rp_i(p, i); };
    if (base == "stv_i") return [i](const Profile& p) { return stv_i(p, i); };
    if (base == "nr")
        return [](const Profile& p) {
            CandSet out = 0;
            for (const auto& r : nested_runoff_rankings(p, NestedVariant::NR)) out |= bit(r.front());
            return out;
        };
    if (base == "nr_i")
        return [i](const Profile& p) { return bit(nested_runoff_rankings(p, NestedVariant::NR_i, i).begin()->front()); };
    if (base == "nnr_i")
        return [i](const Profile& p) { return bit(nested_runoff_rankings(p, NestedVariant::NNR_i, i).begin()->front()); };
    throw RuleError("unknown rule '" + id + "'");
}

// SPF ids: the same names with an optional '*', e.g. "bp*", "rp_i*:1" or "rp_i:1".
inline SpfRule resolve_spf(const std::string& raw, std::size_t cap = kDefaultRankingCap) {
    auto [base, i] = detail::split_index(detail::strip_stars(raw));
    const bool indexed = base == "rp_i" || base == "stv_i" || base == "nr_i" || base == "nnr_i";
    if (indexed != (i > 0)) throw RuleError("rule '" + raw + "' " + (indexed ? "needs" : "takes no") + " voter index");
    if (base == "stv") return [](const Profile& p) { return to_named(p, stv_star_rankings(p)); };
    if (base == "bp") return [cap](const Profile& p) { return to_named(p, bp_star_rankings(p, cap)); };
    if (base == "rp") return [](const Profile& p) { return to_named(p, rp_put_rankings(p)); };
    if (base == "rp_n") return [](const Profile& p) { return to_named(p, rp_n_star_rankings(p)); };
    if (base == "rp_i")
        return [i](const Profile& p) {
            detail::need_voter(p, i);
            return RankingSet{p.ranking_names(rp_i_run(p, i).ranking)};
        };
    if (base == "stv_i")
        return [i](const Profile& p) {
            detail::need_voter(p, i);
            return RankingSet{p.ranking_names(stv_i_star(p, i))};
        };
    if (base == "nr") return [](const Profile& p) { return to_named(p, nested_runoff_rankings(p, NestedVariant::NR)); };
    if (base == "nr_i")
        return [i](const Profile& p) { return to_named(p, nested_runoff_rankings(p, NestedVariant::NR_i, i)); };
    if (base == "nnr_i")
        return [i](const Profile& p) { return to_named(p, nested_runoff_rankings(p, NestedVariant::NNR_i, i)); };
    throw RuleError("unknown preference rule '" + raw + "'");
}

// Named winner set, sorted.
inline std::set<std::string> winners(const Rule& f, const Profile& p) {
    auto v = p.names_of(f(p));
    return {v.begin(), v.end()};
}

}  // namespace clonelab
