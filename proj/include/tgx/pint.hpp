#pragma once

// Injective temporal message passing with optional relative positional
// features, plus the interning-based memory module.
//
// Exact mode realizes every learnable component as an interned injective
// stand-in: layer-0 embeddings intern the node state, aggregation encodes
// the multiset {(h_u, e, t - t')} through the injective sum from exact.hpp,
// and updates intern (layer, previous embedding, aggregate). By induction a
// layer-L embedding is a complete invariant of the depth-L TCT, so equality
// of embeddings is exactly TCT isomorphism.
//
// For an event query (u, v, t), every node state is augmented with the pair
// of positional vectors {r_{j->u}, r_{j->v}}, kept order-invariant by
// sorting the two vectors lexicographically (events are undirected, so the
// encoding must not depend on which endpoint is written first). Node queries
// append the single vector r_{j->v}. Augmentation strictly refines states:
// stripping the appended counts recovers the plain encoding, so distinct
// plain embeddings stay distinct.
//
// Numeric mode mirrors the same dataflow with seeded affine stand-ins and a
//  decay factor alpha^(-beta * dt), matching what a trained model computes
// up to the choice of weights.
//
// Queries at time t always observe the strictly-pre-t graph, memory, and
// positional store: events at t itself never influence their own embedding.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "tgx/exact.hpp"
#include "tgx/graph.hpp"
#include "tgx/intern.hpp"
#include "tgx/numeric.hpp"
#include "tgx/posfeat.hpp"
#include "tgx/tct.hpp"

namespace tgx {

// ---------------------------------------------------------------------------
// Injective memory.

struct MemoryState {
    std::map<NodeId, CanonicalId> states;
    std::map<NodeId, Timestamp> last_update;
    Timestamp clock = 0;
};

inline MemoryState init_memory(const TemporalGraph& g) {
    MemoryState mem;
    mem.clock = 0;
    for (const auto& [node, feat] : g.node_feats) {
        mem.states[node] = intern_tuple(KeyTag::mem_init, feat);
        mem.last_update[node] = 0;
    }
    return mem;
}

// One synchronous batch: each node aggregates the multiset of messages
// (own state, partner state, time since own last update, edge feature), all
// read from the pre-batch memory, then applies an injective update.
inline void memory_step(MemoryState& mem, const std::vector<Event>& batch) {
    if (batch.empty()) throw std::invalid_argument("memory_step: empty batch");
    Timestamp t = batch.front().t;
    for (const Event& ev : batch) {
        if (ev.t != t) throw std::invalid_argument("memory_step: mixed timestamps in batch");
        if (!mem.states.count(ev.u) || !mem.states.count(ev.v))
            throw std::invalid_argument("memory_step: event endpoint unknown to the memory");
    }
    if (t <= mem.clock)
        throw std::invalid_argument("memory_step: batch time must exceed the memory clock");

    std::map<NodeId, std::vector<CanonicalId>> inbox;
    auto deliver = [&](NodeId to, NodeId from, const FeatureTuple& feat) {
        KeyBuilder kb(KeyTag::mem_message);
        kb.add_id(mem.states.at(to));
        kb.add_id(mem.states.at(from));
        kb.add_int(t - mem.last_update.at(to));
        kb.add_ints(feat);
        inbox[to].push_back(intern(kb));
    };
    for (const Event& ev : batch) {
        deliver(ev.u, ev.v, ev.feat);
        deliver(ev.v, ev.u, ev.feat);
    }
    for (auto& [node, msgs] : inbox) {
        std::sort(msgs.begin(), msgs.end()); // multiset aggregation
        KeyBuilder agg(KeyTag::mem_aggregate);
        agg.open();
        for (CanonicalId m : msgs) agg.add_id(m);
        agg.close();
        KeyBuilder upd(KeyTag::mem_update);
        upd.add_id(mem.states.at(node));
        upd.add_id(intern(agg));
        mem.states[node] = intern(upd);
        mem.last_update[node] = t;
    }
    mem.clock = t;
}

// Memory after replaying all batches strictly before t.
inline MemoryState memory_at(const TemporalGraph& g, Timestamp t) {
    MemoryState mem = init_memory(g);
    std::size_t i = 0;
    while (i < g.events.size() && g.events[i].t < t) {
        std::size_t j = i;
        std::vector<Event> batch;
        while (j < g.events.size() && g.events[j].t == g.events[i].t) {
            batch.push_back(g.events[j]);
            ++j;
        }
        memory_step(mem, batch);
        i = j;
    }
    return mem;
}

// ---------------------------------------------------------------------------
// Configuration and result types.

enum class PintMode { exact, numeric };
enum class MemoryKind { injective, identity };

struct PintConfig {
    int layers = 1;                       // message passing depth L
    int dim = 4;                          // positional feature dimension d
    PintMode mode = PintMode::exact;
    MemoryKind memory = MemoryKind::injective;
    bool use_positional = true;
    double alpha = 2.0;                   // numeric decay alpha^(-beta * dt)
    double beta = 1.0;
    unsigned seed = 0;                    // numeric stand-in weights
    std::int64_t agg_n = 0;               // exact multiset size bound override
    std::int64_t agg_t_max = 0;           // exact timestamp bound override
};

struct Embedding {
    PintMode mode = PintMode::exact;
    CanonicalId id = 0; // exact mode
    Vec vec;            // numeric mode
};

namespace detail {

// Node states before augmentation. Injective memory states are wrapped with
// a -1 marker so they can never collide with a raw feature tuple (feature
// values are non-negative).
inline StateMap base_states(const TemporalGraph& g, Timestamp t, MemoryKind kind) {
    StateMap states;
    if (kind == MemoryKind::identity) {
        for (const auto& [node, feat] : g.node_feats) states[node] = feat;
    } else {
        MemoryState mem = memory_at(g, t);
        for (const auto& [node, sid] : mem.states) states[node] = StateValue{-1, sid};
    }
    return states;
}

// Appends positional features relative to the anchors: one vector for node
// queries, the lexicographically sorted pair for event queries.
inline StateMap annotated_states(const TemporalGraph& g, Timestamp t, const PintConfig& cfg,
                                 const std::vector<NodeId>& anchors) {
    StateMap states = base_states(g, t, cfg.memory);
    if (!cfg.use_positional) return states;
    PosStore store = posfeat_store_at(g, cfg.dim, t);
    for (auto& [node, state] : states) {
        if (anchors.size() == 1) {
            std::vector<std::int64_t> r = get_feature(store, node, anchors[0]);
            state.insert(state.end(), r.begin(), r.end());
        } else {
            std::vector<std::int64_t> ra = get_feature(store, node, anchors[0]);
            std::vector<std::int64_t> rb = get_feature(store, node, anchors[1]);
            if (rb < ra) std::swap(ra, rb);
            state.insert(state.end(), ra.begin(), ra.end());
            state.insert(state.end(), rb.begin(), rb.end());
        }
    }
    return states;
}

inline AggParams derive_agg_params(const TemporalGraph& g, Timestamp t, const PintConfig& cfg) {
    std::int64_t n = cfg.agg_n > 0 ? cfg.agg_n
                                   : std::max<std::int64_t>(2, 1 + max_neighborhood_size(g, t));
    std::int64_t t_max = cfg.agg_t_max > 0 ? cfg.agg_t_max : std::max<Timestamp>(t, 0);
    return make_agg_params(n, t_max);
}

// Exact message passing for every node at once; layer L embeddings are
// complete depth-L TCT invariants over the supplied states.
inline std::map<NodeId, CanonicalId> exact_layers(const TemporalGraph& g, Timestamp t,
                                                  int layers, const StateMap& states,
                                                  const AggParams& params) {
    std::map<NodeId, std::vector<NeighborhoodEntry>> nbhd;
    std::map<NodeId, CanonicalId> h;
    for (const auto& [node, state] : states) {
        nbhd[node] = temporal_neighborhood(g, node, t);
        h[node] = intern_tuple(KeyTag::pint_layer0, state);
    }
    for (int l = 1; l <= layers; ++l) {
        std::map<NodeId, CanonicalId> next;
        for (const auto& [node, entries] : nbhd) {
            std::vector<MultisetTerm> terms;
            terms.reserve(entries.size());
            for (const NeighborhoodEntry& entry : entries)
                terms.push_back(MultisetTerm{h.at(entry.node),
                                             intern_tuple(KeyTag::feature_tuple, entry.feat),
                                             t - entry.t});
            CanonicalId scalar = injective_multiset_sum(terms, params).canonical_id();
            KeyBuilder kb(KeyTag::pint_update);
            kb.add_int(l);
            kb.add_id(h.at(node));
            kb.add_id(scalar);
            next[node] = intern(kb);
        }
        h = std::move(next);
    }
    return h;
}

// Numeric twin of exact_layers: seeded stand-ins, same dataflow.
inline std::map<NodeId, Vec> numeric_layers(const TemporalGraph& g, Timestamp t, int layers,
                                            const std::map<NodeId, Vec>& states,
                                            const PintConfig& cfg) {
    constexpr std::size_t width = 8;
    std::size_t state_width = states.empty() ? 0 : states.begin()->second.size();
    std::size_t edge_width = max_edge_feature_width(g);
    std::mt19937_64 rng(cfg.seed);
    Affine embed0 = make_affine(width, state_width, rng);
    std::vector<Mlp> agg_mlps, upd_mlps;
    for (int l = 1; l <= layers; ++l) {
        agg_mlps.push_back(make_mlp(width, width + edge_width, width, rng));
        upd_mlps.push_back(make_mlp(width, 2 * width, width, rng));
    }
    std::map<NodeId, Vec> h;
    for (const auto& [node, sv] : states) h[node] = embed0.apply(sv);
    for (int l = 1; l <= layers; ++l) {
        std::map<NodeId, Vec> next;
        for (const auto& [node, sv] : states) {
            Vec agg(width, 0.0);
            for (const NeighborhoodEntry& entry : temporal_neighborhood(g, node, t)) {
                Vec m = agg_mlps[l - 1].apply(concat(h.at(entry.node),
                                                     pad_features(entry.feat, edge_width)));
                double decay = std::pow(cfg.alpha, -cfg.beta * static_cast<double>(t - entry.t));
                for (std::size_t i = 0; i < width; ++i) agg[i] += decay * m[i];
            }
            next[node] = upd_mlps[l - 1].apply(concat(h.at(node), agg));
        }
        h = std::move(next);
    }
    return h;
}

// Numeric states: padded feature tuple or raw memory id, with L1-normalized
// positional vectors appended (sorted pair for event queries).
inline std::map<NodeId, Vec> numeric_states(const TemporalGraph& g, Timestamp t,
                                            const PintConfig& cfg,
                                            const std::vector<NodeId>& anchors) {
    std::map<NodeId, Vec> out;
    if (cfg.memory == MemoryKind::identity) {
        std::size_t w = max_node_feature_width(g);
        for (const auto& [node, feat] : g.node_feats) out[node] = pad_features(feat, w);
    } else {
        MemoryState mem = memory_at(g, t);
        for (const auto& [node, sid] : mem.states) out[node] = Vec{static_cast<double>(sid)};
    }
    if (!cfg.use_positional) return out;
    PosStore store = posfeat_store_at(g, cfg.dim, t);
    auto normalized = [&](NodeId i, NodeId a) {
        std::vector<Rational> r = normalize_l1(get_feature(store, i, a));
        Vec v(r.size());
        for (std::size_t k = 0; k < r.size(); ++k) v[k] = static_cast<double>(r[k]);
        return v;
    };
    for (auto& [node, vec] : out) {
        if (anchors.size() == 1) {
            Vec r = normalized(node, anchors[0]);
            vec.insert(vec.end(), r.begin(), r.end());
        } else {
            Vec ra = normalized(node, anchors[0]);
            Vec rb = normalized(node, anchors[1]);
            if (rb < ra) std::swap(ra, rb);
            vec.insert(vec.end(), ra.begin(), ra.end());
            vec.insert(vec.end(), rb.begin(), rb.end());
        }
    }
    return out;
}

inline void check_query(const TemporalGraph& g, NodeId node, const char* what) {
    if (!g.node_feats.count(node))
        throw std::invalid_argument(std::string(what) + ": unknown node " + std::to_string(node));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Embedding entry points.

inline Embedding pint_node_embedding(const TemporalGraph& g, NodeId v, Timestamp t,
                                     const PintConfig& cfg) {
    detail::check_query(g, v, "pint_node_embedding");
    if (cfg.layers < 1) throw std::invalid_argument("pint_node_embedding: layers must be >= 1");
    Embedding out;
    out.mode = cfg.mode;
    std::vector<NodeId> anchors = {v};
    if (cfg.mode == PintMode::exact) {
        StateMap states = detail::annotated_states(g, t, cfg, anchors);
        out.id = detail::exact_layers(g, t, cfg.layers, states,
                                      detail::derive_agg_params(g, t, cfg)).at(v);
    } else {
        out.vec = detail::numeric_layers(g, t, cfg.layers,
                                         detail::numeric_states(g, t, cfg, anchors), cfg).at(v);
    }
    return out;
}

// Embeddings of all nodes under node-query annotation towards each node
// itself would differ per anchor; this variant computes the plain multiset
// view used for whole-graph comparisons, so no positional annotation and one
// shared parameter set.
inline std::map<NodeId, CanonicalId> pint_all_node_embeddings(const TemporalGraph& g,
                                                              Timestamp t,
                                                              const PintConfig& cfg) {
    if (cfg.layers < 1)
        throw std::invalid_argument("pint_all_node_embeddings: layers must be >= 1");
    if (cfg.mode != PintMode::exact)
        throw std::invalid_argument("pint_all_node_embeddings: exact mode only");
    StateMap states = detail::base_states(g, t, cfg.memory);
    return detail::exact_layers(g, t, cfg.layers, states, detail::derive_agg_params(g, t, cfg));
}

// Event embedding: both endpoint embeddings under the shared two-anchor
// annotation, combined with an unordered readout.
inline Embedding pint_edge_embedding(const TemporalGraph& g, NodeId u, NodeId v, Timestamp t,
                                     const PintConfig& cfg) {
    detail::check_query(g, u, "pint_edge_embedding");
    detail::check_query(g, v, "pint_edge_embedding");
    if (u == v) throw std::invalid_argument("pint_edge_embedding: self-loop query");
    if (cfg.layers < 1) throw std::invalid_argument("pint_edge_embedding: layers must be >= 1");
    Embedding out;
    out.mode = cfg.mode;
    std::vector<NodeId> anchors = {u, v};
    if (cfg.mode == PintMode::exact) {
        StateMap states = detail::annotated_states(g, t, cfg, anchors);
        auto h = detail::exact_layers(g, t, cfg.layers, states,
                                      detail::derive_agg_params(g, t, cfg));
        CanonicalId hu = h.at(u), hv = h.at(v);
        if (hv < hu) std::swap(hu, hv);
        KeyBuilder kb(KeyTag::pint_edge);
        kb.add_id(hu);
        kb.add_id(hv);
        out.id = intern(kb);
    } else {
        auto h = detail::numeric_layers(g, t, cfg.layers,
                                        detail::numeric_states(g, t, cfg, anchors), cfg);
        const Vec& hu = h.at(u);
        const Vec& hv = h.at(v);
        out.vec.resize(hu.size());
        for (std::size_t i = 0; i < hu.size(); ++i) out.vec[i] = hu[i] + hv[i];
    }
    return out;
}

} // namespace tgx
