#pragma once

#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "pqtree.hpp"

namespace clonelab {

// An SCF evaluated on a profile, returning winners as indices of that profile.
using Rule = std::function<CandSet(const Profile&)>;

inline CandSet composition_product(const Rule& f, const Profile& p, const Decomposition& d) {
    const Decomposition blocks = normalized(d);
    const Profile summary = summarize(p, blocks);
    CandSet out = 0;
    for (int j : members(f(summary))) out |= translate(restrict_to(p, blocks[j]), f(restrict_to(p, blocks[j])), p);
    return out;
}

struct CcTrace {
    std::vector<std::string> lines;
    int rule_calls = 0;
    int internal_nodes = 0;  // in the whole tree
    int q_nodes = 0;         // in the whole tree
    int visited_internal = 0;
};

// Summary of p restricted to the union of `blocks` (blocks given as sets of p).
inline Profile local_summary(const Profile& p, const Decomposition& blocks) {
    CandSet u = 0;
    for (CandSet b : blocks) u |= b;
    const Profile sub = restrict_to(p, u);
    Decomposition local;
    for (CandSet b : blocks) local.push_back(translate(p, b, sub));
    return summarize(sub, local);
}

namespace detail {
inline std::string one_line(const Profile& p) {
    std::string out;
    for (const auto& g : p.groups()) {
        if (!out.empty()) out += " | ";
        out += std::to_string(g.count) + ":" + join_ranking(p.ranking_names(g.order));
    }
    return out;
}
}  // namespace detail

// Breadth-first walk of the PQ-tree: P-nodes run f on their summary, Q-nodes on their first two children.
inline CandSet cc_transform(const Rule& f, const Profile& p, CcTrace* trace = nullptr) {
    const PQTree t = build_pqtree(p);
    if (trace) {
        for (const auto& nd : t.nodes) {
            if (nd.kind != NodeKind::Leaf) ++trace->internal_nodes;
            if (nd.kind == NodeKind::Q) ++trace->q_nodes;
        }
    }
    auto label = [&](int id) { return block_name(p, t.nodes[id].members); };
    CandSet winners = 0;
    std::deque<int> queue{t.root};
    while (!queue.empty()) {
        const int id = queue.front();
        queue.pop_front();
        const auto& nd = t.nodes[id];
        if (nd.kind == NodeKind::Leaf) {
            winners |= nd.members;
            if (trace) trace->lines.push_back("leaf " + label(id) + " -> winner");
            continue;
        }
        std::vector<int> next;
        Profile summary = p;
        if (nd.kind == NodeKind::P) {
            Decomposition d;
            for (int c : nd.children) d.push_back(t.nodes[c].members);
            summary = local_summary(p, d);
            CandSet w = f(summary);
            for (int j : members(w)) next.push_back(nd.children[j]);
        } else {
            const int b1 = nd.children.front(), b2 = nd.children[1];
            summary = local_summary(p, {t.nodes[b1].members, t.nodes[b2].members});
            CandSet w = f(summary);
            if (w == 0b11)
                next = nd.children;
            else if (w == 0b01)
                next.push_back(b1);
            else
                next.push_back(nd.children.back());
        }
        if (trace) {
            ++trace->rule_calls;
            ++trace->visited_internal;
            std::string line = std::string("node ") + label(id) + " kind=" + kind_name(nd.kind) +
                               " summary=[" + detail::one_line(summary) + "] enqueue=";
            for (std::size_t x = 0; x < next.size(); ++x) line += (x ? "," : "") + label(next[x]);
            trace->lines.push_back(line);
        }
        for (int c : next) queue.push_back(c);
    }
    return winners;
}

}  // namespace clonelab
