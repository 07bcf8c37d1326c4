#pragma once

// Temporal computation trees (TCTs).
//
// The TCT of node v at time t unrolls message passing: the root is v, and
// every tree node j has one child per temporal neighbor of j at the same
// query time t, reached through the corresponding event. Two TCTs are
// isomorphic when a bijection between their nodes preserves edges together
// with their timestamps and features, node states, and levels. Since levels
// are preserved, such a bijection is exactly a recursive matching of
// children, so a bottom-up interned code is a complete invariant.
//
// The monotone TCT keeps only children whose event is strictly earlier than
// the event above them (the root keeps everything before t). Paths from the
// root are precisely the walks with strictly decreasing timestamps, which is
// what positional features count.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgx/graph.hpp"
#include "tgx/intern.hpp"

namespace tgx {

// Per-node state attached to TCT nodes: raw feature tuples, interned memory
// ids, or feature tuples extended with positional counts, depending on the
// model under study.
using StateValue = std::vector<std::int64_t>;
using StateMap = std::map<NodeId, StateValue>;

constexpr int unbounded_depth = -1;

struct TctNode {
    NodeId graph_node = 0;
    StateValue state;
    int level = 0;
    FeatureTuple in_feat;   // feature of the event to the parent
    Timestamp in_time = -1; // timestamp of that event, -1 at the root
    std::vector<TctNode> children;
};

struct Tct {
    TctNode root;
    Timestamp query_time = 0;
    int depth = 0; // levels below the root, or unbounded_depth
    bool monotone = false;
};

// States default to the static node features when no map is supplied.
inline StateMap states_from_features(const TemporalGraph& g) {
    StateMap states;
    for (const auto& [node, feat] : g.node_feats) states[node] = feat;
    return states;
}

namespace detail {

inline TctNode build_tct_node(const TemporalGraph& g, NodeId node, Timestamp query_time,
                              Timestamp time_bound, int level, int remaining,
                              const StateMap& states, bool monotone) {
    TctNode n;
    n.graph_node = node;
    auto it = states.find(node);
    if (it == states.end()) throw std::invalid_argument("build_tct: node missing from state map");
    n.state = it->second;
    n.level = level;
    if (remaining == 0) return n;
    for (const NeighborhoodEntry& entry : temporal_neighborhood(g, node, time_bound)) {
        TctNode child = build_tct_node(g, entry.node, query_time,
                                       monotone ? entry.t : query_time, level + 1,
                                       remaining > 0 ? remaining - 1 : remaining, states,
                                       monotone);
        child.in_feat = entry.feat;
        child.in_time = entry.t;
        n.children.push_back(std::move(child));
    }
    return n;
}

} // namespace detail

inline Tct build_tct(const TemporalGraph& g, NodeId v, Timestamp t, int depth,
                     const StateMap& states) {
    if (depth < 0) throw std::invalid_argument("build_tct: depth must be >= 0");
    Tct tct;
    tct.query_time = t;
    tct.depth = depth;
    tct.monotone = false;
    tct.root = detail::build_tct_node(g, v, t, t, 0, depth, states, false);
    return tct;
}

inline Tct build_tct(const TemporalGraph& g, NodeId v, Timestamp t, int depth) {
    return build_tct(g, v, t, depth, states_from_features(g));
}

// Timestamps strictly decrease along every root path, so recursion always
// terminates; depth may be left unbounded.
inline Tct build_monotone_tct(const TemporalGraph& g, NodeId v, Timestamp t,
                              const StateMap& states, int depth = unbounded_depth) {
    Tct tct;
    tct.query_time = t;
    tct.depth = depth;
    tct.monotone = true;
    tct.root = detail::build_tct_node(g, v, t, t, 0, depth, states, true);
    return tct;
}

inline Tct build_monotone_tct(const TemporalGraph& g, NodeId v, Timestamp t,
                              int depth = unbounded_depth) {
    return build_monotone_tct(g, v, t, states_from_features(g), depth);
}

namespace detail {

inline CanonicalId tct_code(const TctNode& n) {
    // Child key: (subtree code, edge feature, timestamp), sorted so sibling
    // order never matters.
    std::vector<std::tuple<CanonicalId, FeatureTuple, Timestamp>> kids;
    kids.reserve(n.children.size());
    for (const TctNode& c : n.children) kids.emplace_back(tct_code(c), c.in_feat, c.in_time);
    std::sort(kids.begin(), kids.end());
    KeyBuilder kb(KeyTag::tct_node);
    kb.add_int(n.level);
    kb.add_ints(n.state);
    kb.open();
    for (const auto& [code, feat, time] : kids) {
        kb.add_id(code);
        kb.add_ints(feat);
        kb.add_int(time);
    }
    kb.close();
    return intern(kb);
}

} // namespace detail

// Complete isomorphism invariant: equal codes iff the trees are isomorphic.
inline CanonicalId tct_canonical(const Tct& tct) { return detail::tct_code(tct.root); }

inline bool tct_isomorphic(const Tct& a, const Tct& b) {
    return tct_canonical(a) == tct_canonical(b);
}

// Length (in events) of the longest walk with strictly increasing
// timestamps, equivalently the deepest monotone TCT over all nodes and query
// times. Zero for graphs without events.
inline std::int64_t temporal_diameter(const TemporalGraph& g) {
    std::map<NodeId, std::int64_t> best; // longest walk ending at node so far
    std::int64_t diameter = 0;
    std::size_t i = 0;
    while (i < g.events.size()) {
        std::size_t j = i;
        while (j < g.events.size() && g.events[j].t == g.events[i].t) ++j;
        // All events in [i, j) share a timestamp; extensions may only use
        // walks that ended strictly earlier, i.e. the pre-group table.
        std::map<NodeId, std::int64_t> cand;
        for (std::size_t e = i; e < j; ++e) {
            const Event& ev = g.events[e];
            auto pre = [&](NodeId n) {
                auto it = best.find(n);
                return it == best.end() ? 0 : it->second;
            };
            cand[ev.u] = std::max(cand[ev.u], 1 + pre(ev.v));
            cand[ev.v] = std::max(cand[ev.v], 1 + pre(ev.u));
        }
        for (const auto& [node, len] : cand) {
            best[node] = std::max(best[node], len);
            diameter = std::max(diameter, len);
        }
        i = j;
    }
    return diameter;
}

namespace detail {

inline std::string render_ints(const std::vector<std::int64_t>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out.push_back(';');
        out += std::to_string(xs[i]);
    }
    return out;
}

inline void render_tct_node(const TctNode& n, std::string& out) {
    out.append(static_cast<std::size_t>(n.level) * 2, ' ');
    out += std::to_string(n.level) + " " + std::to_string(n.graph_node) +
           " state=" + render_ints(n.state);
    if (n.in_time >= 0)
        out += " via=(" + render_ints(n.in_feat) + "," + std::to_string(n.in_time) + ")";
    out.push_back('\n');
    for (const TctNode& c : n.children) render_tct_node(c, out);
}

} // namespace detail

inline std::string render_tct(const Tct& tct) {
    std::string out;
    detail::render_tct_node(tct.root, out);
    return out;
}

} // namespace tgx
