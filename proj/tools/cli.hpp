#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clonelab/clonelab.hpp"

namespace clonelab::cli {

enum Exit { kOk = 0, kAxiomFails = 1, kInconclusive = 2, kUsage = 64, kParse = 65 };

inline std::string comma_list(const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
    return out;
}

inline Json tree_json(const PQTree& t, int id) {
    const auto& nd = t.nodes[id];
    std::vector<std::string> mem;
    for (int c : members(nd.members)) mem.push_back(t.names[c]);
    std::sort(mem.begin(), mem.end());
    Json j{{"members", mem}, {"kind", kind_name(nd.kind)}};
    Json ch = Json::array();
    for (int c : nd.children) ch.push_back(tree_json(t, c));
    j["children"] = ch;
    if (nd.kind == NodeKind::Q) {
        j["orientation"] = Json{{"stored", nd.forward_votes}, {"reversed", nd.reverse_votes}};
        j["tie"] = nd.tie;
    } else {
        j["orientation"] = nullptr;
        j["tie"] = false;
    }
    return j;
}

inline Json margins_json(const Profile& p) {
    const auto M = majority_matrix(p);
    Json j = Json::object();
    std::vector<int> order(p.m());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return p.name(a) < p.name(b); });
    for (int a : order) {
        Json row = Json::object();
        for (int b : order)
            if (a != b) row[p.name(b)] = M(a, b);
        j[p.name(a)] = row;
    }
    return j;
}

inline Json strength_json(const Profile& p) {
    const auto S = strength_matrix(p);
    Json j = Json::object();
    std::vector<int> order(p.m());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return p.name(a) < p.name(b); });
    for (int a : order) {
        Json row = Json::object();
        for (int b : order)
            if (a != b) row[p.name(b)] = S(a, b);
        j[p.name(a)] = row;
    }
    return j;
}

inline std::vector<std::string> sorted_lines(const RankingSet& rs) {
    std::vector<std::string> out;
    for (const auto& r : rs) out.push_back(join_ranking(r));
    std::sort(out.begin(), out.end());
    return out;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"clone-aware voting toolkit", "clonelab"};
    app.require_subcommand(1);
    std::string file, rule, axiom, form, candidate;
    bool json = false, trace = false;
    std::size_t cap = 0;

    auto add_common = [&](CLI::App* s) {
        s->add_option("file", file, "profile file")->required();
        s->add_flag("--json", json, "emit one JSON object");
    };
    auto* winners_cmd = app.add_subcommand("winners", "winners of a social choice function");
    add_common(winners_cmd);
    winners_cmd->add_option("--rule", rule, "rule id")->required();

    auto* rank_cmd = app.add_subcommand("rank", "rankings of a social preference function");
    add_common(rank_cmd);
    rank_cmd->add_option("--rule", rule, "preference rule id")->required();
    rank_cmd->add_option("--cap", cap, "ranking enumeration cap");

    auto* clones_cmd = app.add_subcommand("clones", "all clone sets");
    add_common(clones_cmd);

    auto* pq_cmd = app.add_subcommand("pqtree", "PQ-tree of the clone structure");
    add_common(pq_cmd);

    auto* cc_cmd = app.add_subcommand("cc-transform", "winners of the clone-consistent transform");
    add_common(cc_cmd);
    cc_cmd->add_option("--rule", rule, "rule id")->required();
    cc_cmd->add_flag("--trace", trace, "print every visited node");

    auto* check_cmd = app.add_subcommand("check", "check one axiom on this profile");
    add_common(check_cmd);
    check_cmd->add_option("--rule", rule, "rule id")->required();
    check_cmd->add_option("--axiom", axiom, "axiom id")->required()->check(CLI::IsMember(axiom_ids()));
    check_cmd->add_option("--cap", cap, "enumeration cap");

    auto* cand_cmd = app.add_subcommand("candidacy", "strategic candidacy analysis");
    add_common(cand_cmd);
    cand_cmd->add_option("--rule", rule, "decisive rule id")->required();
    cand_cmd->add_option("--form", form, "gamma or lambda")->required()->check(CLI::IsMember({"gamma", "lambda"}));
    cand_cmd->add_option("--candidate", candidate, "analyse one candidate only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    Profile p = [&]() -> Profile {
        try {
            return load_profile(file);
        } catch (const ParseError& e) {
            err << "parse error: " << e.what() << "\n";
        } catch (const ProfileError& e) {
            err << "parse error: " << e.what() << "\n";
        }
        throw Exit{kParse};
    }();

    CheckOptions opt;
    if (cap > 0) opt.decomposition_cap = opt.ranking_cap = cap;

    if (clones_cmd->parsed()) {
        auto fam = clone_structure(p);
        std::vector<std::vector<std::string>> sets;
        for (CandSet s : fam) sets.push_back(p.names_of(s));
        std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        if (json) {
            out << Json{{"clone_sets", sets}}.dump() << "\n";
        } else {
            for (const auto& s : sets) out << "{" << join_ranking(s, ",") << "}\n";
        }
        return kOk;
    }
    if (pq_cmd->parsed()) {
        const PQTree t = build_pqtree(p);
        if (json)
            out << Json{{"expression", serialize_tree(t)},
                        {"degree", decomposition_degree(t)},
                        {"root", tree_json(t, t.root)}}
                       .dump()
                << "\n";
        else
            out << serialize_tree(t) << "\n";
        return kOk;
    }
    if (winners_cmd->parsed()) {
        const Rule f = resolve_rule(rule);
        const auto w = winners(f, p);
        if (!json) {
            out << comma_list(w) << "\n";
            return kOk;
        }
        Json j{{"rule", rule}, {"winners", w}, {"margins", margins_json(p)}};
        auto [base, i] = detail::split_index(rule);
        if (base == "bp") j["strength"] = strength_json(p);
        if (base == "rp_i") {
            Json locked = Json::array();
            for (auto [a, b] : rp_i_run(p, i).locked) locked.push_back({p.name(a), p.name(b)});
            j["locked"] = locked;
        }
        if (base == "stv" || base == "stv_i") {
            Json elim = Json::array();
            auto rs = base == "stv" ? to_named(p, stv_star_rankings(p)) : RankingSet{p.ranking_names(stv_i_star(p, i))};
            for (auto r : rs) {
                std::reverse(r.begin(), r.end());
                elim.push_back(join_ranking(r, ","));
            }
            j["eliminations"] = elim;
        }
        out << j.dump() << "\n";
        return kOk;
    }
    if (rank_cmd->parsed()) {
        const SpfRule F = resolve_spf(rule, opt.ranking_cap);
        RankingSet rs;
        try {
            rs = F(p);
        } catch (const CapExceeded& e) {
            err << "inconclusive: " << e.what() << "\n";
            return kInconclusive;
        }
        const auto lines = sorted_lines(rs);
        if (json)
            out << Json{{"rule", rule}, {"rankings", lines}}.dump() << "\n";
        else
            for (const auto& l : lines) out << l << "\n";
        return kOk;
    }
    if (cc_cmd->parsed()) {
        const Rule f = resolve_rule(rule);
        CcTrace tr;
        const CandSet w = cc_transform(f, p, trace ? &tr : nullptr);
        const auto names = name_set(p, w);
        if (json) {
            Json j{{"rule", rule}, {"winners", names}};
            if (trace)
                j["trace"] = Json{{"steps", tr.lines},
                                  {"rule_calls", tr.rule_calls},
                                  {"internal_nodes", tr.internal_nodes},
                                  {"q_nodes", tr.q_nodes}};
            out << j.dump() << "\n";
            return kOk;
        }
        if (trace) {
            for (const auto& l : tr.lines) out << l << "\n";
            out << "rule_calls=" << tr.rule_calls << " internal_nodes=" << tr.internal_nodes
                << " q_nodes=" << tr.q_nodes << "\n";
        }
        out << comma_list(names) << "\n";
        return kOk;
    }
    if (check_cmd->parsed()) {
        const Verdict v = check_axiom(axiom, rule, p, opt);
        if (json) {
            Json j{{"axiom", axiom}, {"rule", rule}, {"verdict", status_name(v.status)}};
            j["witness"] = v.fails() ? v.witness : Json(nullptr);
            if (!v.note.empty()) j["note"] = v.note;
            out << j.dump() << "\n";
        } else {
            out << axiom << " " << status_name(v.status) << " for " << rule << " on this profile\n";
            if (v.fails()) out << "witness: " << v.witness.dump() << "\n";
            if (!v.note.empty()) out << "note: " << v.note << "\n";
        }
        return v.holds() ? kOk : v.fails() ? kAxiomFails : kInconclusive;
    }
    if (cand_cmd->parsed()) {
        const GameSpec g = make_game(p, resolve_rule(rule), form == "gamma" ? GameForm::Gamma : GameForm::Lambda);
        std::vector<int> who;
        if (!candidate.empty())
            who.push_back(p.require(candidate));
        else
            for (int c = 0; c < p.m(); ++c) who.push_back(c);
        std::sort(who.begin(), who.end(), [&](int a, int b) { return p.name(a) < p.name(b); });
        Json arr = Json::array();
        auto set_text = [&](CandSet s) { return "{" + join_ranking(p.names_of(s), ",") + "}"; };
        for (int a : who) {
            Json j{{"candidate", p.name(a)}};
            std::string line = p.name(a) + ":";
            if (g.form == GameForm::Gamma) {
                const auto d = gamma_dominant_run(g, a);
                j["dominant"] = d.holds;
                line += std::string(" dominant=") + (d.holds ? "yes" : "no");
                if (d.witness) {
                    j["drop_better_against"] = p.names_of(*d.witness);
                    line += " drop_better_against=" + set_text(*d.witness);
                }
            }
            const auto o = g.form == GameForm::Gamma ? gamma_obviously_dominant_run(g, a)
                                                     : lambda_obviously_dominant_run(g, a);
            j["obviously_dominant"] = o.holds;
            j["reached"] = o.reached;
            line += std::string(" obviously_dominant=") + (o.holds ? "yes" : "no");
            if (o.reached) {
                j["worst_run"] = o.worst_run;
                j["worst_run_against"] = p.names_of(o.worst_run_opponents);
                j["best_drop"] = o.best_drop;
                j["best_drop_against"] = p.names_of(o.best_drop_opponents);
                line += " worst_run=" + std::to_string(o.worst_run) + set_text(o.worst_run_opponents) +
                        " best_drop=" + std::to_string(o.best_drop) + set_text(o.best_drop_opponents);
            } else {
                line += " never_asked";
            }
            arr.push_back(j);
            if (!json) out << line << "\n";
        }
        if (json) out << Json{{"rule", rule}, {"form", form}, {"candidates", arr}}.dump() << "\n";
        return kOk;
    }
    return kUsage;
}

// Entry point that maps library exceptions onto exit codes.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return run(argc, argv, out, err);
    } catch (Exit e) {
        return e;
    } catch (const RuleError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const GameError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ProfileError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const CapExceeded& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    }
}

}  // namespace clonelab::cli
