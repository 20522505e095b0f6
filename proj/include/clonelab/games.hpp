#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cc_transform.hpp"

namespace clonelab {

class GameError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class GameForm { Gamma, Lambda };

// Utility of a candidate whose clone distance to the winner is d; must decrease strictly in d and stay positive.
using Schedule = std::function<long(int m, int d)>;

inline long linear_schedule(int m, int d) { return m - d; }

struct GameSpec {
    Profile profile;
    Rule rule;
    GameForm form = GameForm::Gamma;
    Schedule schedule = linear_schedule;
    PQTree tree;
    std::vector<int> winner_of;  // indexed by runner set
    std::vector<int> distance;   // m*m clone metric
};

// Checks decisiveness on every non-empty restriction up front.
inline GameSpec make_game(const Profile& p, Rule f, GameForm form, Schedule s = linear_schedule) {
    if (p.m() > 20) throw GameError("too many candidates for exhaustive game analysis");
    GameSpec g{p, std::move(f), form, std::move(s), build_pqtree(p), {}, {}};
    const CandSet all = p.all();
    g.winner_of.assign(static_cast<std::size_t>(all) + 1, -1);
    for (CandSet S = 1; S <= all; ++S) {
        const Profile q = restrict_to(p, S);
        const CandSet w = g.rule(q);
        if (count(w) != 1) throw GameError("rule is not decisive on the restriction to {" + block_name(p, S) + "}");
        g.winner_of[S] = lowest(translate(q, w, p));
    }
    const auto family = clone_structure(p);
    g.distance.assign(static_cast<std::size_t>(p.m()) * p.m(), p.m() - 1);
    for (int a = 0; a < p.m(); ++a)
        for (int b = 0; b < p.m(); ++b)
            for (CandSet k : family)
                if (has(k, a) && has(k, b))
                    g.distance[a * p.m() + b] = std::min(g.distance[a * p.m() + b], count(k) - 1);
    return g;
}

inline long payoff(const GameSpec& g, int a, int winner) {
    if (winner < 0) return 0;
    return g.schedule(g.profile.m(), g.distance[a * g.profile.m() + winner]);
}

inline long utility(const GameSpec& g, int a, CandSet runners) {
    if (runners == 0) return 0;
    return payoff(g, a, g.winner_of[runners]);
}

struct DominanceResult {
    bool holds = true;
    std::optional<CandSet> witness;  // opponents' runner set where dropping pays more
};

inline DominanceResult gamma_dominant_run(const GameSpec& g, int a) {
    const CandSet others = g.profile.all() & ~bit(a);
    // enumerate subsets of `others` in increasing numeric order
    for (CandSet S = 0;; S = (S - others) & others) {
        if (utility(g, a, S | bit(a)) < utility(g, a, S)) return {false, S};
        if (S == others) break;
    }
    return {};
}

struct ObviousResult {
    bool holds = true;
    bool reached = false;  // some opponent profile reaches a's decision
    long worst_run = 0, best_drop = 0;
    CandSet worst_run_opponents = 0, best_drop_opponents = 0;
};

// Simultaneous game: worst outcome of running against best outcome of dropping, over every opponent profile.
inline ObviousResult gamma_obviously_dominant_run(const GameSpec& g, int a) {
    const CandSet others = g.profile.all() & ~bit(a);
    ObviousResult r;
    for (CandSet S = 0;; S = (S - others) & others) {
        const long run = utility(g, a, S | bit(a)), drop = utility(g, a, S);
        if (!r.reached || run < r.worst_run) r.worst_run = run, r.worst_run_opponents = S;
        if (!r.reached || drop > r.best_drop) r.best_drop = drop, r.best_drop_opponents = S;
        r.reached = true;
        if (S == others) break;
    }
    r.holds = r.worst_run >= r.best_drop;
    return r;
}

struct LambdaOutcome {
    int winner = -1;
    CandSet asked = 0;
};

// Tree walk with drop-outs: P-nodes ask all leaf children at once, Q-nodes ask one child at a time.
inline LambdaOutcome lambda_play(const GameSpec& g, CandSet runners) {
    const PQTree& t = g.tree;
    const Profile& p = g.profile;
    LambdaOutcome out;
    auto decide = [&](const Decomposition& blocks) {
        const CandSet w = g.rule(local_summary(p, blocks));
        if (count(w) != 1) throw GameError("rule is not decisive on an encountered summary");
        return lowest(w);
    };
    auto visit = [&](auto&& self, int id) -> int {
        const auto& nd = t.nodes[id];
        if (nd.kind == NodeKind::P) {
            std::vector<int> active;
            for (int c : nd.children) {
                if (t.nodes[c].kind == NodeKind::Leaf) {
                    out.asked |= t.nodes[c].members;
                    if (!(t.nodes[c].members & runners)) continue;
                }
                active.push_back(c);
            }
            while (!active.empty()) {
                Decomposition blocks;
                for (int c : active) blocks.push_back(t.nodes[c].members);
                const std::size_t j = static_cast<std::size_t>(decide(blocks));
                const int c = active[j];
                if (t.nodes[c].kind == NodeKind::Leaf) return lowest(t.nodes[c].members);
                const int w = self(self, c);
                if (w >= 0) return w;
                active.erase(active.begin() + static_cast<long>(j));
            }
            return -1;
        }
        std::vector<int> order = nd.children;
        const int first = decide({t.nodes[order[0]].members, t.nodes[order[1]].members});
        if (first == 1) std::reverse(order.begin(), order.end());
        for (int c : order) {
            if (t.nodes[c].kind == NodeKind::Leaf) {
                out.asked |= t.nodes[c].members;
                if (t.nodes[c].members & runners) return lowest(t.nodes[c].members);
                continue;
            }
            const int w = self(self, c);
            if (w >= 0) return w;
        }
        return -1;
    };
    if (t.nodes[t.root].kind == NodeKind::Leaf) {
        out.asked = p.all();
        out.winner = (runners & p.all()) ? 0 : -1;
        return out;
    }
    out.winner = visit(visit, t.root);
    return out;
}

// Over opponent profiles where a is asked: worst utility when running vs best when dropping.
inline ObviousResult lambda_obviously_dominant_run(const GameSpec& g, int a) {
    const CandSet others = g.profile.all() & ~bit(a);
    ObviousResult r;
    for (CandSet S = 0;; S = (S - others) & others) {
        const LambdaOutcome run = lambda_play(g, S | bit(a));
        if (has(run.asked, a)) {
            const LambdaOutcome drop = lambda_play(g, S);
            const long ur = payoff(g, a, run.winner), ud = payoff(g, a, drop.winner);
            if (!r.reached || ur < r.worst_run) r.worst_run = ur, r.worst_run_opponents = S;
            if (!r.reached || ud > r.best_drop) r.best_drop = ud, r.best_drop_opponents = S;
            r.reached = true;
        }
        if (S == others) break;
    }
    r.holds = !r.reached || r.worst_run >= r.best_drop;
    return r;
}

}  // namespace clonelab
