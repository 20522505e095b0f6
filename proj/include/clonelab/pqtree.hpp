#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "clones.hpp"

namespace clonelab {

enum class NodeKind { Leaf, P, Q };

inline const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Leaf: return "leaf";
        case NodeKind::P: return "P";
        case NodeKind::Q: return "Q";
    }
    return "?";
}

struct PQNode {
    CandSet members = 0;
    NodeKind kind = NodeKind::Leaf;
    std::vector<int> children;  // Q: majority orientation. P: candidate order of least member.
    int parent = -1;
    long forward_votes = 0;  // Q only: voters ranking the children in stored order
    long reverse_votes = 0;
    bool tie = false;
};

struct PQTree {
    std::vector<std::string> names;
    std::vector<PQNode> nodes;
    int root = -1;

    const PQNode& node(int id) const {
        if (id < 0 || id >= static_cast<int>(nodes.size())) throw ProfileError("node not in tree");
        return nodes[id];
    }
    bool is_leaf(int id) const { return node(id).kind == NodeKind::Leaf; }
    int find(CandSet s) const {
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
            if (nodes[i].members == s) return i;
        return -1;
    }
    std::vector<int> internal_nodes() const {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
            if (nodes[i].kind != NodeKind::Leaf) out.push_back(i);
        return out;
    }
};

inline PQTree build_pqtree(const Profile& p) {
    const auto family = clone_structure(p);
    std::vector<CandSet> strong;
    for (CandSet s : family) {
        bool overlaps = false;
        for (CandSet t : family) {
            CandSet x = s & t;
            if (x && x != s && x != t) {
                overlaps = true;
                break;
            }
        }
        if (!overlaps) strong.push_back(s);
    }
    // largest first, so the root is node 0
    std::sort(strong.begin(), strong.end(), [](CandSet a, CandSet b) {
        if (count(a) != count(b)) return count(a) > count(b);
        return a < b;
    });

    PQTree t;
    t.names = p.names();
    for (CandSet s : strong) t.nodes.push_back(PQNode{s});
    t.root = 0;
    const int k = static_cast<int>(t.nodes.size());
    for (int i = 1; i < k; ++i) {
        const CandSet s = t.nodes[i].members;
        int par = -1;
        for (int j = 0; j < i; ++j) {
            const CandSet u = t.nodes[j].members;
            if ((u & s) == s && u != s && (par < 0 || count(u) < count(t.nodes[par].members))) par = j;
        }
        t.nodes[i].parent = par;
        t.nodes[par].children.push_back(i);
    }

    const Ranking& v1 = p.voter(1);
    std::vector<int> pos1(p.m());
    for (int x = 0; x < p.m(); ++x) pos1[v1[x]] = x;
    auto first_pos = [&](CandSet s) {
        int best = p.m();
        for (int c : members(s)) best = std::min(best, pos1[c]);
        return best;
    };

    for (auto& nd : t.nodes) {
        if (nd.children.empty()) continue;
        auto& ch = nd.children;
        std::sort(ch.begin(), ch.end(),
                  [&](int a, int b) { return first_pos(t.nodes[a].members) < first_pos(t.nodes[b].members); });
        bool q = true;
        for (std::size_t x = 0; x + 1 < ch.size() && q; ++x)
            q = is_clone_set(p, t.nodes[ch[x]].members | t.nodes[ch[x + 1]].members);
        if (!q) {
            nd.kind = NodeKind::P;
            std::sort(ch.begin(), ch.end(),
                      [&](int a, int b) { return lowest(t.nodes[a].members) < lowest(t.nodes[b].members); });
            continue;
        }
        nd.kind = NodeKind::Q;
        long fwd = 0, rev = 0;
        const CandSet c0 = t.nodes[ch[0]].members, c1 = t.nodes[ch[1]].members;
        for (const auto& g : p.groups()) {
            for (int c : g.order) {
                if (has(c0, c)) {
                    fwd += g.count;
                    break;
                }
                if (has(c1, c)) {
                    rev += g.count;
                    break;
                }
            }
        }
        if (rev > fwd) {
            std::reverse(ch.begin(), ch.end());
            std::swap(fwd, rev);
        }
        nd.forward_votes = fwd;
        nd.reverse_votes = rev;
        nd.tie = fwd == rev;
    }
    return t;
}

inline Decomposition decomp(const PQTree& t, int b) {
    const auto& nd = t.node(b);
    if (nd.kind == NodeKind::Leaf) throw ProfileError("decomp of a leaf");
    Decomposition d;
    for (int c : nd.children) d.push_back(t.nodes[c].members);
    return normalized(d);
}

// i-th child (1-based) in majority orientation; children are already stored that way.
inline int ordered_child(const PQTree& t, int b, int i) {
    const auto& nd = t.node(b);
    if (nd.kind != NodeKind::Q) throw ProfileError("ordered_child needs a Q-node");
    if (i < 1 || i > static_cast<int>(nd.children.size())) throw ProfileError("child index out of range");
    return nd.children[i - 1];
}

inline int decomposition_degree(const PQTree& t) {
    int best = 2;
    for (const auto& nd : t.nodes)
        if (nd.kind == NodeKind::P) best = std::max(best, static_cast<int>(nd.children.size()));
    return best;
}

inline std::vector<CandSet> clone_sets_from_tree(const PQTree& t) {
    std::set<CandSet> out;
    for (const auto& nd : t.nodes) {
        out.insert(nd.members);
        if (nd.kind != NodeKind::Q) continue;
        for (std::size_t i = 0; i < nd.children.size(); ++i) {
            CandSet run = t.nodes[nd.children[i]].members;
            for (std::size_t j = i + 1; j < nd.children.size(); ++j) {
                run |= t.nodes[nd.children[j]].members;
                out.insert(run);
            }
        }
    }
    return {out.begin(), out.end()};
}

// "(a⊙b)⊕c⊕d": ⊕ joins children of a Q-node with three or more children, in stored order.
// Everything else joins with ⊙ and lists children by candidate order.
inline std::string serialize_tree(const PQTree& t, int id = -1) {
    if (id < 0) id = t.root;
    const auto& nd = t.node(id);
    if (nd.kind == NodeKind::Leaf) return t.names[lowest(nd.members)];
    const bool string_like = nd.kind == NodeKind::Q && nd.children.size() >= 3;
    std::vector<int> ch = nd.children;
    if (!string_like)
        std::sort(ch.begin(), ch.end(),
                  [&](int a, int b) { return lowest(t.nodes[a].members) < lowest(t.nodes[b].members); });
    std::string out;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (i) out += string_like ? "⊕" : "⊙";
        std::string s = serialize_tree(t, ch[i]);
        out += t.nodes[ch[i]].kind == NodeKind::Leaf ? s : "(" + s + ")";
    }
    return out;
}

}  // namespace clonelab
