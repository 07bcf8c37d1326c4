#pragma once

// Deterministic simulators for the reference architectures.
//
// TGAT embeds nodes with attention over temporal neighbors: rows combine the
// neighbor embedding, a cosine time encoding of the age, and the edge
// feature; the output is softmax(q K^T) V followed by an MLP update.
// Attention outputs depend only on the proportions of distinct rows, never
// on their multiplicities, which is the expressiveness gap the exact models
// do not have.
//
// TGN-Att adds a recurrent memory: each event deposits a message (own state,
// partner state, time since own update, edge feature); batches aggregate
// messages by elementwise mean and update states through a tanh affine map.
// Embeddings then run the same attention layers on top of memory states.
//
// CAW operates on causal anonymous walks: the set of maximal strictly
// time-decreasing walks from each endpoint, truncated at max_len nodes. A
// node is anonymized as the unordered pair of its position-count vectors
// with respect to the two walk sets, and an event code interns the multiset
// of anonymized walks. A whole-graph code interns the multiset of per-event
// codes, each computed on the strictly-pre-event graph.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "tgx/graph.hpp"
#include "tgx/intern.hpp"
#include "tgx/numeric.hpp"

namespace tgx {

// ---------------------------------------------------------------------------
// TGAT.

namespace detail {
constexpr std::size_t tgat_width = 8;   // node embedding width
constexpr std::size_t tgat_time_dim = 4;
} // namespace detail

struct TgatLayerParams {
    Affine wq, wk, wv;
    Mlp update;
};

struct TgatParams {
    TimeEncoderParams time;
    Affine embed0;            // initial node-feature embedding
    std::vector<TgatLayerParams> layers;
    std::size_t node_width = 0;
    std::size_t edge_width = 0;
};

// Sampling order is fixed: time encoder, feature embedding, then per layer
// q/k/v/update. Memory-based models sample their memory parameters first
// (see make_tgn_att_params) so both share this layout afterwards.
inline TgatParams make_tgat_params(int layers, std::size_t node_width, std::size_t edge_width,
                                   std::mt19937_64& rng) {
    using detail::tgat_time_dim;
    using detail::tgat_width;
    if (layers < 1) throw std::invalid_argument("make_tgat_params: layers must be >= 1");
    TgatParams p;
    p.node_width = node_width;
    p.edge_width = edge_width;
    p.time = make_time_encoder(tgat_time_dim, rng);
    p.embed0 = make_affine(tgat_width, node_width, rng);
    std::size_t row_dim = tgat_width + tgat_time_dim + edge_width;
    for (int l = 0; l < layers; ++l) {
        TgatLayerParams lp;
        lp.wq = make_affine(tgat_width, tgat_width + tgat_time_dim, rng);
        lp.wk = make_affine(tgat_width, row_dim, rng);
        lp.wv = make_affine(tgat_width, row_dim, rng);
        lp.update = make_mlp(tgat_width, 2 * tgat_width, tgat_width, rng);
        p.layers.push_back(std::move(lp));
    }
    return p;
}

// softmax(q K^T) V for one node; an empty neighborhood contributes zeros.
inline Vec tgat_aggregate(const TgatLayerParams& layer, const Vec& query_input,
                          const std::vector<Vec>& rows) {
    if (rows.empty()) return Vec(detail::tgat_width, 0.0);
    Vec q = layer.wq.apply(query_input);
    std::vector<double> scores;
    scores.reserve(rows.size());
    for (const Vec& row : rows) {
        Vec k = layer.wk.apply(row);
        double s = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) s += q[i] * k[i];
        scores.push_back(s);
    }
    double m = *std::max_element(scores.begin(), scores.end());
    double z = 0.0;
    for (double& s : scores) {
        s = std::exp(s - m);
        z += s;
    }
    Vec out(detail::tgat_width, 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        Vec v = layer.wv.apply(rows[r]);
        double w = scores[r] / z;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * v[i];
    }
    return out;
}

namespace detail {

// Shared attention stack: layer-0 embeddings are supplied by the caller
// (feature embeddings for TGAT, memory states for TGN-Att).
inline std::map<NodeId, Vec> attention_layers(const TemporalGraph& g, Timestamp t,
                                              const TgatParams& params,
                                              std::map<NodeId, Vec> h) {
    for (const TgatLayerParams& layer : params.layers) {
        std::map<NodeId, Vec> next;
        for (const auto& [node, hv] : h) {
            std::vector<Vec> rows;
            for (const NeighborhoodEntry& entry : temporal_neighborhood(g, node, t)) {
                Vec row = concat(h.at(entry.node),
                                 time_encode(params.time, static_cast<double>(t - entry.t)));
                row = concat(row, pad_features(entry.feat, params.edge_width));
                rows.push_back(std::move(row));
            }
            Vec agg = tgat_aggregate(layer, concat(hv, time_encode(params.time, 0.0)), rows);
            next[node] = layer.update.apply(concat(hv, agg));
        }
        h = std::move(next);
    }
    return h;
}

} // namespace detail

inline std::map<NodeId, Vec> tgat_all_node_embeddings(const TemporalGraph& g, Timestamp t,
                                                      int layers, unsigned seed) {
    std::mt19937_64 rng(seed);
    TgatParams params = make_tgat_params(layers, std::max<std::size_t>(1, max_node_feature_width(g)),
                                         max_edge_feature_width(g), rng);
    std::map<NodeId, Vec> h;
    for (const auto& [node, feat] : g.node_feats)
        h[node] = params.embed0.apply(pad_features(feat, params.node_width));
    return detail::attention_layers(g, t, params, std::move(h));
}

inline Vec tgat_node_embedding(const TemporalGraph& g, NodeId v, Timestamp t, int layers,
                               unsigned seed) {
    if (!g.node_feats.count(v))
        throw std::invalid_argument("tgat_node_embedding: unknown node");
    return tgat_all_node_embeddings(g, t, layers, seed).at(v);
}

// ---------------------------------------------------------------------------
// TGN-Att.

struct TgnAttParams {
    Affine mem_embed0;  // initial memory from node features
    Affine mem_update;  // tanh affine over [state || mean message]
    TgatParams attention;
    std::size_t node_width = 0;
    std::size_t edge_width = 0;
};

inline TgnAttParams make_tgn_att_params(int layers, std::size_t node_width,
                                        std::size_t edge_width, std::mt19937_64& rng) {
    using detail::tgat_width;
    TgnAttParams p;
    p.node_width = node_width;
    p.edge_width = edge_width;
    p.mem_embed0 = make_affine(tgat_width, node_width, rng);
    // message = [state || partner state || dt || edge], update input adds the
    // node's own state in front
    p.mem_update = make_affine(tgat_width, tgat_width + (2 * tgat_width + 1 + edge_width), rng);
    p.attention = make_tgat_params(layers, node_width, edge_width, rng);
    return p;
}

struct TgnMemory {
    std::map<NodeId, Vec> states;
    std::map<NodeId, Timestamp> last_update;
    Timestamp clock = 0;
};

inline TgnMemory init_tgn_memory(const TemporalGraph& g, const TgnAttParams& params) {
    TgnMemory mem;
    for (const auto& [node, feat] : g.node_feats) {
        mem.states[node] = params.mem_embed0.apply(pad_features(feat, params.node_width));
        mem.last_update[node] = 0;
    }
    return mem;
}

// One synchronous batch: mean-aggregated messages, tanh affine update, all
// reads from the pre-batch states.
inline void tgn_att_memory_step(TgnMemory& mem, const TgnAttParams& params,
                                const std::vector<Event>& batch) {
    if (batch.empty()) throw std::invalid_argument("tgn_att_memory_step: empty batch");
    Timestamp t = batch.front().t;
    for (const Event& ev : batch) {
        if (ev.t != t)
            throw std::invalid_argument("tgn_att_memory_step: mixed timestamps in batch");
        if (!mem.states.count(ev.u) || !mem.states.count(ev.v))
            throw std::invalid_argument("tgn_att_memory_step: unknown event endpoint");
    }
    if (t <= mem.clock)
        throw std::invalid_argument("tgn_att_memory_step: batch time must exceed the clock");
    std::map<NodeId, std::vector<Vec>> inbox;
    auto deliver = [&](NodeId to, NodeId from, const FeatureTuple& feat) {
        Vec msg = concat(mem.states.at(to), mem.states.at(from));
        msg.push_back(static_cast<double>(t - mem.last_update.at(to)));
        msg = concat(msg, pad_features(feat, params.edge_width));
        inbox[to].push_back(std::move(msg));
    };
    for (const Event& ev : batch) {
        deliver(ev.u, ev.v, ev.feat);
        deliver(ev.v, ev.u, ev.feat);
    }
    for (auto& [node, msgs] : inbox) {
        Vec mean(msgs.front().size(), 0.0);
        for (const Vec& m : msgs)
            for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += m[i];
        for (double& x : mean) x /= static_cast<double>(msgs.size());
        Vec next = params.mem_update.apply(concat(mem.states.at(node), mean));
        for (double& x : next) x = std::tanh(x);
        mem.states[node] = std::move(next);
        mem.last_update[node] = t;
    }
    mem.clock = t;
}

inline TgnMemory tgn_memory_at(const TemporalGraph& g, const TgnAttParams& params, Timestamp t) {
    TgnMemory mem = init_tgn_memory(g, params);
    std::size_t i = 0;
    while (i < g.events.size() && g.events[i].t < t) {
        std::size_t j = i;
        std::vector<Event> batch;
        while (j < g.events.size() && g.events[j].t == g.events[i].t) {
            batch.push_back(g.events[j]);
            ++j;
        }
        tgn_att_memory_step(mem, params, batch);
        i = j;
    }
    return mem;
}

inline std::map<NodeId, Vec> tgn_att_all_node_embeddings(const TemporalGraph& g, Timestamp t,
                                                         int layers, unsigned seed) {
    std::mt19937_64 rng(seed);
    TgnAttParams params = make_tgn_att_params(
        layers, std::max<std::size_t>(1, max_node_feature_width(g)), max_edge_feature_width(g),
        rng);
    TgnMemory mem = tgn_memory_at(g, params, t);
    return detail::attention_layers(g, t, params.attention, std::move(mem.states));
}

inline Vec tgn_att_node_embedding(const TemporalGraph& g, NodeId v, Timestamp t, int layers,
                                  unsigned seed) {
    if (!g.node_feats.count(v))
        throw std::invalid_argument("tgn_att_node_embedding: unknown node");
    return tgn_att_all_node_embeddings(g, t, layers, seed).at(v);
}

// ---------------------------------------------------------------------------
// CAW.

// One temporal walk: hops[0] is (origin, query time) and timestamps strictly
// decrease along the walk.
struct Walk {
    std::vector<std::pair<NodeId, Timestamp>> hops;

    friend bool operator<(const Walk& a, const Walk& b) { return a.hops < b.hops; }
    friend bool operator==(const Walk& a, const Walk& b) { return a.hops == b.hops; }
};

struct WalkSet {
    NodeId origin = 0;
    Timestamp t = 0;
    int max_len = 0;          // maximum number of nodes per walk
    std::vector<Walk> walks;  // sorted, duplicate-free
};

using AnonVector = std::vector<std::int64_t>;

// All maximal strictly-decreasing walks from u at time t, truncated at
// max_len nodes. Parallel events yield the same (node, time) sequence, so
// the result is a set.
inline WalkSet caw_walk_set(const TemporalGraph& g, NodeId u, Timestamp t, int max_len) {
    if (max_len < 1) throw std::invalid_argument("caw_walk_set: max_len must be >= 1");
    if (!g.node_feats.count(u)) throw std::invalid_argument("caw_walk_set: unknown node");
    WalkSet set;
    set.origin = u;
    set.t = t;
    set.max_len = max_len;
    std::set<Walk> walks;
    Walk current;
    current.hops.push_back({u, t});
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(current.hops.size()) == max_len) {
            walks.insert(current);
            return;
        }
        auto [node, limit] = current.hops.back();
        std::vector<NeighborhoodEntry> entries = temporal_neighborhood(g, node, limit);
        if (entries.empty()) {
            walks.insert(current); // maximal: nothing strictly earlier
            return;
        }
        for (const NeighborhoodEntry& entry : entries) {
            current.hops.push_back({entry.node, entry.t});
            self(self);
            current.hops.pop_back();
        }
    };
    extend(extend);
    set.walks.assign(walks.begin(), walks.end());
    return set;
}

// g(w; S): how many walks of S hold node w at each position.
inline AnonVector caw_anonymize(NodeId w, const WalkSet& set) {
    AnonVector counts(static_cast<std::size_t>(set.max_len), 0);
    for (const Walk& walk : set.walks)
        for (std::size_t pos = 0; pos < walk.hops.size(); ++pos)
            if (walk.hops[pos].first == w) counts[pos] += 1;
    return counts;
}

namespace detail {

inline CanonicalId caw_walk_code(const Walk& walk, const WalkSet& su, const WalkSet& sv) {
    KeyBuilder kb(KeyTag::caw_walk);
    kb.open();
    Timestamp prev_t = walk.hops.front().second; // t_0 = t_1 = query time
    for (const auto& [node, time] : walk.hops) {
        AnonVector a = caw_anonymize(node, su);
        AnonVector b = caw_anonymize(node, sv);
        if (b < a) std::swap(a, b); // unordered pair of count vectors
        kb.add_ints(a);
        kb.add_ints(b);
        kb.add_int(prev_t - time);
        prev_t = time;
    }
    kb.close();
    return intern(kb);
}

} // namespace detail

// Event code: multiset of anonymized walk codes over both endpoint sets.
inline CanonicalId caw_encode_event(const TemporalGraph& g, NodeId u, NodeId v, Timestamp t,
                                    int max_len) {
    if (u == v) throw std::invalid_argument("caw_encode_event: self-loop query");
    WalkSet su = caw_walk_set(g, u, t, max_len);
    WalkSet sv = caw_walk_set(g, v, t, max_len);
    std::vector<CanonicalId> codes;
    for (const Walk& w : su.walks) codes.push_back(detail::caw_walk_code(w, su, sv));
    for (const Walk& w : sv.walks) codes.push_back(detail::caw_walk_code(w, su, sv));
    std::sort(codes.begin(), codes.end());
    KeyBuilder kb(KeyTag::caw_event);
    kb.open();
    for (CanonicalId c : codes) kb.add_id(c);
    kb.close();
    return intern(kb);
}

// Whole-graph code at time t: the multiset of per-event codes, each event
// encoded against the graph as it stood just before that event.
inline CanonicalId caw_graph_code(const TemporalGraph& g, Timestamp t, int max_len) {
    std::vector<CanonicalId> codes;
    for (const Event& ev : g.events) {
        if (ev.t >= t) break;
        codes.push_back(caw_encode_event(g, ev.u, ev.v, ev.t, max_len));
    }
    std::sort(codes.begin(), codes.end());
    KeyBuilder kb(KeyTag::caw_graph);
    kb.open();
    for (CanonicalId c : codes) kb.add_id(c);
    kb.close();
    return intern(kb);
}

} // namespace tgx
