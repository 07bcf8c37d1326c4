#pragma once

// Relative positional features.
//
// For nodes i and u, the vector r_{i->u} counts, per level k < d, how many
// times i occurs at level k of the monotone TCT of u. The counts admit an
// incremental rule: an event batch {(u_1, v), ..., (u_J, v)} at time t grafts
// each partner's pre-batch monotone tree one level down into v's tree, so
//
//     r_{i->v} += P * sum_j r_{i->u_j}        for all i reaching some u_j,
//
// where P shifts vector components one level deeper and drops level d-1.
// All reads use the pre-batch store, every vector is updated at most once
// per batch, and the store clock enforces strictly increasing batch times.
//
// reach[u] tracks which origins i have a nonzero vector towards u (plus u
// itself); origins whose occurrences all sit at truncated levels >= d carry
// the zero vector and are omitted, which leaves every feature unchanged.
//
// brute_force_counts recomputes a feature directly from the monotone TCT and
// serves as the reference the incremental rule is checked against.

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "tgx/exact.hpp"
#include "tgx/graph.hpp"
#include "tgx/tct.hpp"

namespace tgx {

struct PosStore {
    int d = 0;                                                 // feature dimension
    std::map<std::pair<NodeId, NodeId>, std::vector<std::int64_t>> vecs; // (i, u) -> r_{i->u}
    std::map<NodeId, std::set<NodeId>> reach;                  // u -> V_u
    Timestamp clock = 0;                                       // last applied batch time
};

inline PosStore init_store(const TemporalGraph& g, int d) {
    if (d <= 0) throw std::invalid_argument("init_store: dimension must be positive");
    PosStore store;
    store.d = d;
    store.clock = 0;
    for (const auto& [node, feat] : g.node_feats) {
        std::vector<std::int64_t> e1(static_cast<std::size_t>(d), 0);
        e1[0] = 1; // the node is the level-0 root of its own tree
        store.vecs[{node, node}] = std::move(e1);
        store.reach[node] = {node};
    }
    return store;
}

namespace detail {

inline bool is_zero_vec(const std::vector<std::int64_t>& v) {
    for (std::int64_t x : v)
        if (x != 0) return false;
    return true;
}

// P * v: component k moves to k+1, component d-1 falls off the end.
inline std::vector<std::int64_t> shift_down(const std::vector<std::int64_t>& v) {
    std::vector<std::int64_t> out(v.size(), 0);
    for (std::size_t k = 1; k < v.size(); ++k) out[k] = v[k - 1];
    return out;
}

} // namespace detail

// Applies one batch of simultaneous events. All events must share a
// timestamp strictly greater than the store clock.
inline void apply_batch(PosStore& store, const std::vector<Event>& batch) {
    if (batch.empty()) throw std::invalid_argument("apply_batch: empty batch");
    Timestamp t = batch.front().t;
    for (const Event& ev : batch) {
        if (ev.t != t) throw std::invalid_argument("apply_batch: mixed timestamps in batch");
        if (ev.u == ev.v) throw std::invalid_argument("apply_batch: self-loop event");
        if (!store.reach.count(ev.u) || !store.reach.count(ev.v))
            throw std::invalid_argument("apply_batch: event endpoint unknown to the store");
    }
    if (t <= store.clock)
        throw std::invalid_argument("apply_batch: batch time must exceed the store clock");

    // Partner multiset per updated node; an event contributes both ways.
    std::map<NodeId, std::vector<NodeId>> partners;
    for (const Event& ev : batch) {
        partners[ev.u].push_back(ev.v);
        partners[ev.v].push_back(ev.u);
    }

    // Compute every new vector from the pre-batch store, then commit.
    std::map<std::pair<NodeId, NodeId>, std::vector<std::int64_t>> pending;
    for (const auto& [v, us] : partners) {
        std::map<NodeId, std::vector<std::int64_t>> delta;
        for (NodeId u : us) {
            for (NodeId i : store.reach.at(u)) {
                std::vector<std::int64_t> shifted =
                    detail::shift_down(store.vecs.at({i, u}));
                auto it = delta.find(i);
                if (it == delta.end()) {
                    delta.emplace(i, std::move(shifted));
                } else {
                    for (std::size_t k = 0; k < shifted.size(); ++k)
                        it->second[k] += shifted[k];
                }
            }
        }
        for (auto& [i, add] : delta) {
            auto old_it = store.vecs.find({i, v});
            if (old_it != store.vecs.end())
                for (std::size_t k = 0; k < add.size(); ++k) add[k] += old_it->second[k];
            pending[{i, v}] = std::move(add);
        }
    }
    for (auto& [key, vec] : pending) {
        if (detail::is_zero_vec(vec)) continue; // occurrences beyond level d-1 only
        store.reach[key.second].insert(key.first);
        store.vecs[key] = std::move(vec);
    }
    store.clock = t;
}

// r_{i->u}, a zero vector when i does not reach u within d levels.
inline std::vector<std::int64_t> get_feature(const PosStore& store, NodeId i, NodeId u) {
    if (!store.reach.count(u))
        throw std::invalid_argument("get_feature: node unknown to the store");
    auto it = store.vecs.find({i, u});
    if (it != store.vecs.end()) return it->second;
    return std::vector<std::int64_t>(static_cast<std::size_t>(store.d), 0);
}

// Exact L1 normalization; the zero vector stays zero.
inline std::vector<Rational> normalize_l1(const std::vector<std::int64_t>& v) {
    std::int64_t sum = 0;
    for (std::int64_t x : v) {
        if (x < 0) throw std::invalid_argument("normalize_l1: negative count");
        sum += x;
    }
    std::vector<Rational> out;
    out.reserve(v.size());
    for (std::int64_t x : v)
        out.push_back(sum == 0 ? Rational(0) : Rational(x, sum));
    return out;
}

// Reference implementation straight from the definition: counts occurrences
// of i per level of the monotone TCT of u at time t, levels 0..d-1.
inline std::vector<std::int64_t> brute_force_counts(const TemporalGraph& g, NodeId i, NodeId u,
                                                    Timestamp t, int d) {
    if (d <= 0) throw std::invalid_argument("brute_force_counts: dimension must be positive");
    Tct tct = build_monotone_tct(g, u, t, d - 1);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(d), 0);
    std::vector<const TctNode*> stack = {&tct.root};
    while (!stack.empty()) {
        const TctNode* n = stack.back();
        stack.pop_back();
        if (n->graph_node == i) counts[static_cast<std::size_t>(n->level)] += 1;
        for (const TctNode& c : n->children) stack.push_back(&c);
    }
    return counts;
}

// Store state at time t: all batches strictly before t applied in order.
inline PosStore posfeat_store_at(const TemporalGraph& g, int d, Timestamp t) {
    PosStore store = init_store(g, d);
    std::size_t i = 0;
    while (i < g.events.size() && g.events[i].t < t) {
        std::size_t j = i;
        std::vector<Event> batch;
        while (j < g.events.size() && g.events[j].t == g.events[i].t) {
            batch.push_back(g.events[j]);
            ++j;
        }
        apply_batch(store, batch);
        i = j;
    }
    return store;
}

} // namespace tgx
