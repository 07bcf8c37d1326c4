#pragma once

// Core temporal graph model.
//
// A continuous-time temporal graph is a multiset of undirected timestamped
// events (u, v, t, feat) over nodes with static feature tuples. Events are
// normalized to u <= v and kept sorted by (t, u, v, feat) so every traversal
// in the library is deterministic. A discrete-time dynamic graph is a
// sequence of static snapshots; the two representations convert into each
// other losslessly (node dynamics ride along as events against a reserved
// placeholder partner).

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace tgx {

using NodeId = std::uint32_t;
using Timestamp = std::int64_t;
using FeatureTuple = std::vector<std::int64_t>;

// Reserved partner id for node-feature events produced by DTDG conversion.
constexpr NodeId dummy_node = 0xFFFFFFFFu;

struct Event {
    NodeId u = 0;
    NodeId v = 0;
    Timestamp t = 0;
    FeatureTuple feat;

    friend bool operator==(const Event& a, const Event& b) {
        return a.u == b.u && a.v == b.v && a.t == b.t && a.feat == b.feat;
    }
    friend bool operator<(const Event& a, const Event& b) {
        return std::tie(a.t, a.u, a.v, a.feat) < std::tie(b.t, b.u, b.v, b.feat);
    }
};

inline Event make_event(NodeId u, NodeId v, Timestamp t, FeatureTuple feat = {}) {
    if (u == v) throw std::invalid_argument("make_event: self-loop events are not supported");
    if (t < 0) throw std::invalid_argument("make_event: negative timestamp");
    for (std::int64_t f : feat)
        if (f < 0) throw std::invalid_argument("make_event: negative feature value");
    if (u > v) std::swap(u, v);
    return Event{u, v, t, std::move(feat)};
}

struct TemporalGraph {
    // Every node incident to an event has an entry; isolated nodes may too.
    std::map<NodeId, FeatureTuple> node_feats;
    std::vector<Event> events; // sorted by (t, u, v, feat)

    friend bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
        return a.node_feats == b.node_feats && a.events == b.events;
    }
};

// Normalizes, sorts and completes the node table. The single constructor
// used everywhere so graph invariants hold by construction.
inline TemporalGraph build_graph(std::vector<Event> events,
                                 std::map<NodeId, FeatureTuple> node_feats = {}) {
    TemporalGraph g;
    g.node_feats = std::move(node_feats);
    for (auto& [node, feat] : g.node_feats)
        for (std::int64_t f : feat)
            if (f < 0) throw std::invalid_argument("build_graph: negative node feature");
    g.events.reserve(events.size());
    for (Event& ev : events)
        g.events.push_back(make_event(ev.u, ev.v, ev.t, std::move(ev.feat)));
    std::sort(g.events.begin(), g.events.end());
    for (const Event& ev : g.events) {
        g.node_feats.try_emplace(ev.u);
        g.node_feats.try_emplace(ev.v);
    }
    return g;
}

inline std::set<NodeId> node_set(const TemporalGraph& g) {
    std::set<NodeId> nodes;
    for (const auto& [node, feat] : g.node_feats) nodes.insert(node);
    return nodes;
}

// The temporal graph as seen at time t: events strictly before t.
inline TemporalGraph snapshot_at(const TemporalGraph& g, Timestamp t) {
    TemporalGraph out;
    out.node_feats = g.node_feats;
    for (const Event& ev : g.events)
        if (ev.t < t) out.events.push_back(ev);
    return out;
}

struct NeighborhoodEntry {
    NodeId node = 0;     // the other endpoint
    FeatureTuple feat;   // edge feature of the event
    Timestamp t = 0;     // event timestamp, strictly before the query time
};

// Temporal neighborhood N(v, t): one entry per event incident to v with
// timestamp strictly before t. Parallel events yield parallel entries.
inline std::vector<NeighborhoodEntry> temporal_neighborhood(const TemporalGraph& g,
                                                            NodeId v, Timestamp t) {
    std::vector<NeighborhoodEntry> out;
    for (const Event& ev : g.events) {
        if (ev.t >= t) break; // events are sorted by time
        if (ev.u == v)
            out.push_back(NeighborhoodEntry{ev.v, ev.feat, ev.t});
        else if (ev.v == v)
            out.push_back(NeighborhoodEntry{ev.u, ev.feat, ev.t});
    }
    return out;
}

inline Timestamp max_timestamp(const TemporalGraph& g) {
    return g.events.empty() ? 0 : g.events.back().t;
}

// Largest temporal neighborhood size at time t, over all nodes. Used to set
// multiset size bounds for exact aggregation.
inline std::int64_t max_neighborhood_size(const TemporalGraph& g, Timestamp t) {
    std::map<NodeId, std::int64_t> deg;
    for (const Event& ev : g.events) {
        if (ev.t >= t) break;
        deg[ev.u] += 1;
        deg[ev.v] += 1;
    }
    std::int64_t best = 0;
    for (const auto& [node, d] : deg) best = std::max(best, d);
    return best;
}

// ---------------------------------------------------------------------------
// Discrete-time dynamic graphs.

struct Snapshot {
    // The node set is exactly the key set of node_feats.
    std::map<NodeId, FeatureTuple> node_feats;
    std::map<std::pair<NodeId, NodeId>, FeatureTuple> edges; // keys u < v

    friend bool operator==(const Snapshot& a, const Snapshot& b) {
        return a.node_feats == b.node_feats && a.edges == b.edges;
    }
};

struct SnapshotSequence {
    std::vector<Snapshot> snapshots; // snapshots[i] is snapshot i+1

    friend bool operator==(const SnapshotSequence& a, const SnapshotSequence& b) {
        return a.snapshots == b.snapshots;
    }
};

inline void validate_snapshot(const Snapshot& s) {
    for (const auto& [node, feat] : s.node_feats) {
        if (node == dummy_node)
            throw std::invalid_argument("snapshot: node id is reserved");
        for (std::int64_t f : feat)
            if (f < 0) throw std::invalid_argument("snapshot: negative node feature");
    }
    for (const auto& [edge, feat] : s.edges) {
        auto [u, v] = edge;
        if (u >= v) throw std::invalid_argument("snapshot: edge endpoints must satisfy u < v");
        if (!s.node_feats.count(u) || !s.node_feats.count(v))
            throw std::invalid_argument("snapshot: edge endpoint missing from node set");
        for (std::int64_t f : feat)
            if (f < 0) throw std::invalid_argument("snapshot: negative edge feature");
    }
}

// Encodes snapshot i (1-based) at time i * delta: every edge becomes an
// event and every node becomes an event against the placeholder partner,
// carrying the node's feature tuple for that snapshot as the edge feature.
inline TemporalGraph dtdg_to_ctdg(const SnapshotSequence& seq, Timestamp delta) {
    if (delta < 1) throw std::invalid_argument("dtdg_to_ctdg: delta must be >= 1");
    std::vector<Event> events;
    for (std::size_t i = 0; i < seq.snapshots.size(); ++i) {
        const Snapshot& s = seq.snapshots[i];
        validate_snapshot(s);
        Timestamp t = static_cast<Timestamp>(i + 1) * delta;
        for (const auto& [node, feat] : s.node_feats)
            events.push_back(make_event(node, dummy_node, t, feat));
        for (const auto& [edge, feat] : s.edges)
            events.push_back(make_event(edge.first, edge.second, t, feat));
    }
    return build_graph(std::move(events));
}

// Exact inverse of dtdg_to_ctdg on its image; rejects graphs that do not
// decompose into snapshots (off-grid timestamps, duplicate rows).
inline SnapshotSequence ctdg_to_dtdg(const TemporalGraph& g, Timestamp delta) {
    if (delta < 1) throw std::invalid_argument("ctdg_to_dtdg: delta must be >= 1");
    SnapshotSequence seq;
    if (g.events.empty()) return seq;
    Timestamp t_last = max_timestamp(g);
    seq.snapshots.resize(static_cast<std::size_t>(t_last / delta));
    for (const Event& ev : g.events) {
        if (ev.t <= 0 || ev.t % delta != 0)
            throw std::invalid_argument("ctdg_to_dtdg: timestamp " + std::to_string(ev.t) +
                                        " is not a positive multiple of delta");
        Snapshot& s = seq.snapshots[static_cast<std::size_t>(ev.t / delta) - 1];
        if (ev.v == dummy_node) {
            if (!s.node_feats.emplace(ev.u, ev.feat).second)
                throw std::invalid_argument("ctdg_to_dtdg: duplicate node row in one snapshot");
        } else {
            if (!s.edges.emplace(std::make_pair(ev.u, ev.v), ev.feat).second)
                throw std::invalid_argument("ctdg_to_dtdg: duplicate edge in one snapshot");
        }
    }
    // Edge endpoints without an explicit node row exist with empty features.
    for (Snapshot& s : seq.snapshots) {
        for (const auto& [edge, feat] : s.edges) {
            s.node_feats.try_emplace(edge.first);
            s.node_feats.try_emplace(edge.second);
        }
        validate_snapshot(s);
    }
    return seq;
}

} // namespace tgx
