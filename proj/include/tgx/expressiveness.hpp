#pragma once

// Distinguishability verdicts and static graph properties.
//
// A model distinguishes two nodes (or two synchronous events) when its
// embeddings differ. Exact models compare interned ids. Numeric models run
// several seeds: the verdict stands only if every seed agrees that the
// embeddings are equal within a tight tolerance or distinct beyond a loose
// one; anything in between is reported as ambiguous rather than guessed.
//
// Static properties (diameter, girth, circuit rank) are computed on the
// simple undirected projection of the pre-t event set. They provide ground
// truth that embedding-based models provably cannot always decide.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgx/baselines.hpp"
#include "tgx/graph.hpp"
#include "tgx/pint.hpp"
#include "tgx/twl.hpp"

namespace tgx {

// Numeric verdict thresholds: equal within eq_tol for every seed counts as
// indistinguishable, beyond neq_tol for every seed as distinguished.
constexpr double numeric_eq_tol = 1e-9;
constexpr double numeric_neq_tol = 1e-6;
constexpr int numeric_seeds = 10;

enum class VerdictResult { distinguished, indistinguishable };

struct Verdict {
    VerdictResult result = VerdictResult::indistinguishable;
    std::string model;
    std::string witness;
};

enum class ModelKind { twl, mptgn_injective, pint, tgat, tgn_att, caw };

struct ModelSpec {
    ModelKind kind = ModelKind::mptgn_injective;
    int layers = 2;                            // depth; walk length cap for caw
    MemoryKind memory = MemoryKind::injective; // mptgn and pint
    int pos_dim = 4;                           // pint positional dimension
    unsigned seed = 0;                         // first seed for numeric models
};

inline std::string model_name(const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelKind::twl: return "twl";
        case ModelKind::mptgn_injective:
            return std::string("mptgn_injective(L=") + std::to_string(spec.layers) +
                   (spec.memory == MemoryKind::identity ? ",identity)" : ",injective)");
        case ModelKind::pint:
            return "pint(L=" + std::to_string(spec.layers) + ",d=" + std::to_string(spec.pos_dim) +
                   (spec.memory == MemoryKind::identity ? ",identity)" : ")");
        case ModelKind::tgat: return "tgat(L=" + std::to_string(spec.layers) + ")";
        case ModelKind::tgn_att: return "tgn_att(L=" + std::to_string(spec.layers) + ")";
        case ModelKind::caw: return "caw(len=" + std::to_string(spec.layers) + ")";
    }
    return "?";
}

namespace detail {

inline PintConfig pint_config_for(const ModelSpec& spec, bool positional) {
    PintConfig cfg;
    cfg.layers = spec.layers;
    cfg.dim = spec.pos_dim;
    cfg.mode = PintMode::exact;
    cfg.memory = spec.memory;
    cfg.use_positional = positional;
    return cfg;
}

// Runs one numeric model over the seed battery and demands a unanimous
// verdict with clear margin.
template <typename EmbedFn>
inline Verdict numeric_verdict(const ModelSpec& spec, EmbedFn&& embed) {
    int equal_votes = 0, distinct_votes = 0;
    double min_diff = 0.0, max_diff = 0.0;
    for (int s = 0; s < numeric_seeds; ++s) {
        unsigned seed = spec.seed + static_cast<unsigned>(s);
        auto [a, b] = embed(seed);
        double diff = max_abs_diff(a, b);
        if (s == 0) min_diff = max_diff = diff;
        min_diff = std::min(min_diff, diff);
        max_diff = std::max(max_diff, diff);
        if (diff <= numeric_eq_tol) ++equal_votes;
        if (diff > numeric_neq_tol) ++distinct_votes;
    }
    Verdict v;
    v.model = model_name(spec);
    if (equal_votes == numeric_seeds) {
        v.result = VerdictResult::indistinguishable;
        v.witness = "all " + std::to_string(numeric_seeds) +
                    " seeds agree within " + std::to_string(numeric_eq_tol) +
                    " (max diff " + std::to_string(max_diff) + ")";
    } else if (distinct_votes == numeric_seeds) {
        v.result = VerdictResult::distinguished;
        v.witness = "all " + std::to_string(numeric_seeds) + " seeds differ beyond " +
                    std::to_string(numeric_neq_tol) + " (min diff " + std::to_string(min_diff) +
                    ")";
    } else {
        throw std::runtime_error("ambiguous numeric verdict for " + v.model +
                                 ": seed diffs span [" + std::to_string(min_diff) + ", " +
                                 std::to_string(max_diff) + "]");
    }
    return v;
}

} // namespace detail

// Can the model tell nodes u and v apart at time t?
inline Verdict distinguish_nodes(const TemporalGraph& g, NodeId u, NodeId v, Timestamp t,
                                 const ModelSpec& spec) {
    if (!g.node_feats.count(u) || !g.node_feats.count(v))
        throw std::invalid_argument("distinguish_nodes: unknown node");
    Verdict verdict;
    verdict.model = model_name(spec);
    switch (spec.kind) {
        case ModelKind::twl: {
            ColorHistory h = twl_refine(g, t);
            const ColorPartition& stable = h.rounds[static_cast<std::size_t>(h.stabilized_at)];
            bool differ = stable.colors.at(u) != stable.colors.at(v);
            verdict.result = differ ? VerdictResult::distinguished
                                    : VerdictResult::indistinguishable;
            verdict.witness = differ
                ? "stabilized colors differ (round " + std::to_string(h.stabilized_at) + ")"
                : "same color at stabilization (round " + std::to_string(h.stabilized_at) + ")";
            return verdict;
        }
        case ModelKind::mptgn_injective: {
            auto h = pint_all_node_embeddings(g, t, detail::pint_config_for(spec, false));
            bool differ = h.at(u) != h.at(v);
            verdict.result = differ ? VerdictResult::distinguished
                                    : VerdictResult::indistinguishable;
            verdict.witness = differ ? "injective embeddings differ at depth " +
                                           std::to_string(spec.layers)
                                     : "equal embeddings at depth " + std::to_string(spec.layers);
            return verdict;
        }
        case ModelKind::pint: {
            PintConfig cfg = detail::pint_config_for(spec, true);
            CanonicalId hu = pint_node_embedding(g, u, t, cfg).id;
            CanonicalId hv = pint_node_embedding(g, v, t, cfg).id;
            verdict.result = hu != hv ? VerdictResult::distinguished
                                      : VerdictResult::indistinguishable;
            verdict.witness = hu != hv ? "positional embeddings differ" : "equal embeddings";
            return verdict;
        }
        case ModelKind::tgat:
            return detail::numeric_verdict(spec, [&](unsigned seed) {
                auto h = tgat_all_node_embeddings(g, t, spec.layers, seed);
                return std::make_pair(h.at(u), h.at(v));
            });
        case ModelKind::tgn_att:
            return detail::numeric_verdict(spec, [&](unsigned seed) {
                auto h = tgn_att_all_node_embeddings(g, t, spec.layers, seed);
                return std::make_pair(h.at(u), h.at(v));
            });
        case ModelKind::caw:
            throw std::invalid_argument("distinguish_nodes: caw is event-level only");
    }
    throw std::logic_error("distinguish_nodes: unhandled model");
}

// Can the model tell the synchronous events (u1,v1,t) and (u2,v2,t) apart?
inline Verdict distinguish_events(const TemporalGraph& g, NodeId u1, NodeId v1, NodeId u2,
                                  NodeId v2, Timestamp t, const ModelSpec& spec) {
    for (NodeId n : {u1, v1, u2, v2})
        if (!g.node_feats.count(n))
            throw std::invalid_argument("distinguish_events: unknown node");
    if (u1 == v1 || u2 == v2)
        throw std::invalid_argument("distinguish_events: self-loop query");
    Verdict verdict;
    verdict.model = model_name(spec);
    switch (spec.kind) {
        case ModelKind::mptgn_injective: {
            auto h = pint_all_node_embeddings(g, t, detail::pint_config_for(spec, false));
            auto pair_of = [&](NodeId a, NodeId b) {
                CanonicalId x = h.at(a), y = h.at(b);
                if (y < x) std::swap(x, y);
                return std::make_pair(x, y);
            };
            bool differ = pair_of(u1, v1) != pair_of(u2, v2);
            verdict.result = differ ? VerdictResult::distinguished
                                    : VerdictResult::indistinguishable;
            verdict.witness = differ ? "endpoint embedding pairs differ"
                                     : "equal endpoint embedding pairs";
            return verdict;
        }
        case ModelKind::pint: {
            PintConfig cfg = detail::pint_config_for(spec, true);
            CanonicalId a = pint_edge_embedding(g, u1, v1, t, cfg).id;
            CanonicalId b = pint_edge_embedding(g, u2, v2, t, cfg).id;
            verdict.result = a != b ? VerdictResult::distinguished
                                    : VerdictResult::indistinguishable;
            verdict.witness = a != b ? "event embeddings differ" : "equal event embeddings";
            return verdict;
        }
        case ModelKind::caw: {
            CanonicalId a = caw_encode_event(g, u1, v1, t, spec.layers);
            CanonicalId b = caw_encode_event(g, u2, v2, t, spec.layers);
            verdict.result = a != b ? VerdictResult::distinguished
                                    : VerdictResult::indistinguishable;
            verdict.witness = a != b ? "walk codes differ" : "equal walk codes";
            return verdict;
        }
        default:
            throw std::invalid_argument("distinguish_events: model must be one of "
                                        "mptgn_injective, pint, caw");
    }
}

// ---------------------------------------------------------------------------
// Static properties of the simple projection.

struct StaticProps {
    std::optional<std::int64_t> diameter; // nullopt when disconnected
    std::optional<std::int64_t> girth;    // nullopt when acyclic
    std::int64_t circuit_rank = 0;        // |E| - |V| + components

    friend bool operator==(const StaticProps& a, const StaticProps& b) {
        return a.diameter == b.diameter && a.girth == b.girth &&
               a.circuit_rank == b.circuit_rank;
    }
};

namespace detail {

struct SimpleGraph {
    std::vector<NodeId> nodes;
    std::map<NodeId, std::vector<NodeId>> adj; // deduplicated, sorted
};

inline SimpleGraph simple_projection(const TemporalGraph& g, Timestamp t) {
    SimpleGraph s;
    std::set<std::pair<NodeId, NodeId>> edges;
    for (const auto& [node, feat] : g.node_feats) {
        s.nodes.push_back(node);
        s.adj[node];
    }
    for (const Event& ev : g.events) {
        if (ev.t >= t) break;
        edges.insert({ev.u, ev.v});
    }
    for (const auto& [u, v] : edges) {
        s.adj[u].push_back(v);
        s.adj[v].push_back(u);
    }
    for (auto& [node, ns] : s.adj) std::sort(ns.begin(), ns.end());
    return s;
}

} // namespace detail

inline StaticProps static_properties(const TemporalGraph& g, Timestamp t) {
    detail::SimpleGraph s = detail::simple_projection(g, t);
    StaticProps props;

    std::int64_t edge_count = 0;
    for (const auto& [node, ns] : s.adj) edge_count += static_cast<std::int64_t>(ns.size());
    edge_count /= 2;

    // Components and eccentricities by BFS from every node.
    std::map<NodeId, int> component;
    int components = 0;
    std::int64_t diameter = 0;
    bool connected = !s.nodes.empty();
    for (NodeId root : s.nodes)
        if (!component.count(root)) {
            ++components;
            std::queue<NodeId> q;
            q.push(root);
            component[root] = components;
            while (!q.empty()) {
                NodeId x = q.front();
                q.pop();
                for (NodeId y : s.adj.at(x))
                    if (!component.count(y)) {
                        component[y] = components;
                        q.push(y);
                    }
            }
        }
    if (components > 1) connected = false;
    if (connected) {
        for (NodeId root : s.nodes) {
            std::map<NodeId, std::int64_t> dist;
            dist[root] = 0;
            std::queue<NodeId> q;
            q.push(root);
            while (!q.empty()) {
                NodeId x = q.front();
                q.pop();
                for (NodeId y : s.adj.at(x))
                    if (!dist.count(y)) {
                        dist[y] = dist[x] + 1;
                        q.push(y);
                    }
            }
            for (const auto& [node, d] : dist) diameter = std::max(diameter, d);
        }
        props.diameter = diameter;
    }

    // Girth: BFS from each root; a non-tree edge closes a cycle of length
    // dist[x] + dist[y] + 1, and the minimum over all roots is exact.
    std::int64_t girth = -1;
    for (NodeId root : s.nodes) {
        std::map<NodeId, std::int64_t> dist;
        std::map<NodeId, NodeId> parent;
        dist[root] = 0;
        std::queue<NodeId> q;
        q.push(root);
        while (!q.empty()) {
            NodeId x = q.front();
            q.pop();
            for (NodeId y : s.adj.at(x)) {
                if (!dist.count(y)) {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push(y);
                } else if (!(parent.count(x) && parent.at(x) == y) &&
                           !(parent.count(y) && parent.at(y) == x)) {
                    std::int64_t len = dist[x] + dist[y] + 1;
                    if (girth < 0 || len < girth) girth = len;
                }
            }
        }
    }
    if (girth > 0) props.girth = girth;

    props.circuit_rank = edge_count - static_cast<std::int64_t>(s.nodes.size()) + components;
    return props;
}

inline std::string render_props(const StaticProps& p) {
    auto opt = [](const std::optional<std::int64_t>& x) {
        return x ? std::to_string(*x) : std::string("inf");
    };
    return "diameter=" + opt(p.diameter) + " girth=" + opt(p.girth) +
           " circuit_rank=" + std::to_string(p.circuit_rank);
}

} // namespace tgx
