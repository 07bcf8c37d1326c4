#pragma once

// A catalog of small temporal graphs with machine-checked expectations about
// which models can and cannot tell designated queries apart. Each case is a
// concrete separation witness: it pins down an ordering between model
// families by exhibiting inputs where one side must differ and the other
// side must agree. corpus_verify() re-runs every expectation from scratch.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgx/expressiveness.hpp"
#include "tgx/graph.hpp"

namespace tgx {

struct NodePairCheck {
    ModelSpec model;
    NodeId u = 0, v = 0;
    Timestamp t = 0;
    VerdictResult expect = VerdictResult::indistinguishable;
};

struct EventPairCheck {
    ModelSpec model;
    NodeId u1 = 0, v1 = 0, u2 = 0, v2 = 0;
    Timestamp t = 0;
    VerdictResult expect = VerdictResult::indistinguishable;
};

struct TwlGraphCheck {
    Timestamp t = 0;
    TwlVerdict expect = TwlVerdict::inconclusive;
};

struct CawGraphCheck {
    Timestamp t = 0;
    int max_len = 3;
    bool expect_equal = true;
};

struct PropsCheck {
    Timestamp t = 0;
    StaticProps expect_a;
    StaticProps expect_b;
};

struct CorpusCase {
    std::string name;
    std::string source; // one-line description of the construction
    std::vector<TemporalGraph> graphs;
    std::vector<NodePairCheck> node_checks;   // evaluated on graphs[0]
    std::vector<EventPairCheck> event_checks; // evaluated on graphs[0]
    std::vector<TwlGraphCheck> twl_checks;    // compare graphs[0] vs graphs[1]
    std::vector<CawGraphCheck> caw_checks;    // compare graph codes
    std::vector<PropsCheck> props_checks;     // graphs[0] vs graphs[1]
};

namespace detail {

inline TemporalGraph uniform_graph(const std::vector<NodeId>& nodes,
                                   const std::vector<std::tuple<NodeId, NodeId, Timestamp>>& evs) {
    std::map<NodeId, FeatureTuple> feats;
    for (NodeId n : nodes) feats[n] = {0};
    std::vector<Event> events;
    for (const auto& [u, v, t] : evs) events.push_back(make_event(u, v, t, {}));
    return build_graph(events, feats);
}

} // namespace detail

inline std::vector<std::string> corpus_catalog() {
    return {"fig3_left", "fig3_right", "fig4", "fig5",
            "figS1",     "figS3_left", "figS3_right", "fig7"};
}

inline CorpusCase corpus_build(const std::string& name) {
    CorpusCase c;
    c.name = name;

    if (name == "fig3_left") {
        // One graph, two query nodes u and v with label-identical one-hop
        // views. u sits between two degree-2 hubs while v hangs off one, so
        // their depth-2 trees differ in child count. Attention models blur
        // the difference because their aggregation is proportion-invariant.
        NodeId a = 0, z = 1, u = 2, w = 3, v = 4, b = 5, cnode = 6;
        std::map<NodeId, FeatureTuple> feats;
        feats[a] = {0};
        feats[u] = {0};
        feats[v] = {0};
        feats[z] = {1};
        feats[w] = {1};
        feats[b] = {2};
        feats[cnode] = {2};
        std::vector<Event> evs = {
            make_event(a, z, 1, {}), make_event(z, u, 1, {}), make_event(u, w, 1, {}),
            make_event(w, v, 1, {}), make_event(b, z, 2, {}), make_event(cnode, w, 2, {}),
        };
        c.graphs = {build_graph(evs, feats)};
        c.source = "seven-node gadget where u has two busy neighbors and v one; "
                   "attention averages away the multiplicity";
        ModelSpec tgat{ModelKind::tgat, 2};
        ModelSpec tgn{ModelKind::tgn_att, 2};
        ModelSpec mptgn{ModelKind::mptgn_injective, 2, MemoryKind::injective};
        c.node_checks.push_back({tgat, u, v, 3, VerdictResult::indistinguishable});
        c.node_checks.push_back({tgn, u, v, 3, VerdictResult::indistinguishable});
        c.node_checks.push_back({mptgn, u, v, 3, VerdictResult::distinguished});
        return c;
    }

    if (name == "fig3_right") {
        // A path u-v-w-z built over two timestamps plus a detached edge
        // u2-v2. The swap u<->z, v<->w is a time-respecting symmetry, so no
        // message-passing depth separates event (u,v) from (v,z). Walks
        // cannot separate (u,z) from (u2,z), but trees can.
        NodeId u = 0, v = 1, w = 2, z = 3, u2 = 4, v2 = 5;
        c.graphs = {detail::uniform_graph({u, v, w, z, u2, v2},
                                          {{u, v, 1}, {w, z, 1}, {v, w, 2}, {u2, v2, 1}})};
        c.source = "temporal path with a mirror symmetry plus a detached edge; "
                   "trees see the asymmetry that walks from a quiet endpoint miss";
        ModelSpec mptgn{ModelKind::mptgn_injective, 3, MemoryKind::injective};
        ModelSpec caw{ModelKind::caw, 3};
        c.event_checks.push_back({mptgn, u, v, v, z, 3, VerdictResult::indistinguishable});
        c.event_checks.push_back({caw, u, z, u2, z, 3, VerdictResult::indistinguishable});
        c.event_checks.push_back({mptgn, u, z, u2, z, 3, VerdictResult::distinguished});
        return c;
    }

    if (name == "fig4") {
        // Two labeled triangles versus one labeled hexagon with matching
        // timestamp pattern. Every temporal color refinement round produces
        // the same multiset on both graphs, yet diameter, girth, and circuit
        // rank all differ.
        std::map<NodeId, FeatureTuple> fa, fb;
        NodeId u1 = 0, v1 = 1, w1 = 2, u2 = 3, v2 = 4, w2 = 5;
        for (NodeId n : {u1, u2}) fa[n] = {0};
        for (NodeId n : {v1, v2}) fa[n] = {1};
        for (NodeId n : {w1, w2}) fa[n] = {2};
        fb = fa;
        std::vector<Event> ea = {
            make_event(u1, v1, 1, {}), make_event(v1, w1, 2, {}), make_event(w1, u1, 3, {}),
            make_event(u2, v2, 1, {}), make_event(v2, w2, 2, {}), make_event(w2, u2, 3, {}),
        };
        std::vector<Event> eb = {
            make_event(u1, v1, 1, {}), make_event(v1, w1, 2, {}), make_event(w1, u2, 3, {}),
            make_event(u2, v2, 1, {}), make_event(v2, w2, 2, {}), make_event(w2, u1, 3, {}),
        };
        c.graphs = {build_graph(ea, fa), build_graph(eb, fb)};
        c.source = "two timestamped triangles vs one timestamped hexagon; color "
                   "refinement ties while diameter, girth, and circuit rank differ";
        c.twl_checks.push_back({4, TwlVerdict::inconclusive});
        StaticProps pa, pb;
        pa.diameter = std::nullopt;
        pa.girth = 3;
        pa.circuit_rank = 2;
        pb.diameter = 3;
        pb.girth = 6;
        pb.circuit_rank = 1;
        c.props_checks.push_back({4, pa, pb});
        return c;
    }

    if (name == "fig5") {
        // A diamond u-v, v-z at time 1 and u-w, z-w at time 2. The map that
        // swaps u and z while fixing v and w preserves events and times, so
        // events (u,v) and (v,z) are genuinely equivalent: every model here
        // must say indistinguishable.
        NodeId u = 0, v = 1, z = 2, w = 3;
        c.graphs = {detail::uniform_graph({u, v, z, w},
                                          {{u, v, 1}, {v, z, 1}, {u, w, 2}, {z, w, 2}})};
        c.source = "diamond with a time-respecting automorphism swapping the two "
                   "query events; a sanity case where nothing may separate them";
        ModelSpec pint{ModelKind::pint, 2, MemoryKind::injective, 4};
        ModelSpec mptgn{ModelKind::mptgn_injective, 2, MemoryKind::injective};
        ModelSpec caw{ModelKind::caw, 3};
        c.event_checks.push_back({pint, u, v, v, z, 3, VerdictResult::indistinguishable});
        c.event_checks.push_back({mptgn, u, v, v, z, 3, VerdictResult::indistinguishable});
        c.event_checks.push_back({caw, u, v, v, z, 3, VerdictResult::indistinguishable});
        return c;
    }

    if (name == "figS1") {
        // Nodes u and v each receive one event at time 2, but v's partner c
        // was already active at time 1. A depth-1 reader with injective
        // memory sees the difference through c's state; without memory it
        // needs depth 3 to walk the history down.
        NodeId u = 0, a = 1, v = 2, cn = 3, b = 4;
        c.graphs = {detail::uniform_graph({u, a, v, cn, b}, {{b, cn, 1}, {a, u, 2}, {cn, v, 2}})};
        c.source = "one-hop twins whose partners differ only in earlier activity; "
                   "memory exposes it at depth 1, memoryless needs depth 3";
        ModelSpec mem1{ModelKind::mptgn_injective, 1, MemoryKind::injective};
        ModelSpec plain1{ModelKind::mptgn_injective, 1, MemoryKind::identity};
        ModelSpec plain3{ModelKind::mptgn_injective, 3, MemoryKind::identity};
        c.node_checks.push_back({mem1, u, v, 3, VerdictResult::distinguished});
        c.node_checks.push_back({plain1, u, v, 3, VerdictResult::indistinguishable});
        c.node_checks.push_back({plain3, u, v, 3, VerdictResult::distinguished});
        return c;
    }

    if (name == "figS3_left") {
        // Path u-v at time 1, v-w at time 2, w-z at time 1. Trees rooted at
        // u and z agree at every depth, so tree models cannot separate the
        // events (u,v) and (z,v). Walks from v reach z, and relative
        // positional features break the tie as well.
        NodeId u = 0, v = 1, w = 2, z = 3;
        c.graphs = {detail::uniform_graph({u, v, w, z}, {{u, v, 1}, {v, w, 2}, {w, z, 1}})};
        c.source = "zigzag path whose endpoint trees coincide; walk counts and "
                   "positional counts both see the longer branch";
        ModelSpec caw{ModelKind::caw, 3};
        ModelSpec mptgn{ModelKind::mptgn_injective, 3, MemoryKind::injective};
        ModelSpec pint{ModelKind::pint, 3, MemoryKind::injective, 4};
        c.event_checks.push_back({caw, u, v, z, v, 3, VerdictResult::distinguished});
        c.event_checks.push_back({mptgn, u, v, z, v, 3, VerdictResult::indistinguishable});
        c.event_checks.push_back({pint, u, v, z, v, 3, VerdictResult::distinguished});
        return c;
    }

    if (name == "figS3_right") {
        // Two chains that agree for two steps and differ at the third, plus
        // a shared quiet partner z. Decreasing-timestamp walks from the
        // query endpoints stop before the difference, while trees keep
        // expanding at full depth and reach it.
        NodeId u = 0, v = 1, w1 = 2, u2 = 3, v2 = 4, w12 = 5, x2 = 6, z = 7, w = 8;
        c.graphs = {detail::uniform_graph({u, v, w1, u2, v2, w12, x2, z, w},
                                          {{u, v, 1},
                                           {v, w1, 2},
                                           {u2, v2, 1},
                                           {v2, w12, 2},
                                           {w12, x2, 3},
                                           {z, w, 1}})};
        c.source = "two histories that diverge past the reach of any decreasing "
                   "walk from the query endpoints; trees reach the divergence";
        ModelSpec mptgn{ModelKind::mptgn_injective, 4, MemoryKind::injective};
        ModelSpec caw{ModelKind::caw, 2};
        ModelSpec pint{ModelKind::pint, 4, MemoryKind::injective, 6};
        c.event_checks.push_back({mptgn, u, z, u2, z, 4, VerdictResult::distinguished});
        c.event_checks.push_back({caw, u, z, u2, z, 4, VerdictResult::indistinguishable});
        c.event_checks.push_back({pint, u, z, u2, z, 4, VerdictResult::distinguished});
        return c;
    }

    if (name == "fig7") {
        // Two disjoint timestamped 4-cycles versus one 8-cycle built from the
        // same local pieces. Every event sees identical walk sets, so the
        // whole-graph walk code ties, yet diameter, girth, and circuit rank
        // all differ.
        NodeId u = 0, v = 1, z = 2, w = 3, p = 4, q = 5, r = 6, s = 7;
        std::vector<NodeId> nodes = {u, v, z, w, p, q, r, s};
        c.graphs = {
            detail::uniform_graph(nodes, {{u, v, 1},
                                          {z, w, 1},
                                          {p, q, 1},
                                          {r, s, 1},
                                          {v, w, 2},
                                          {q, s, 2},
                                          {u, z, 3},
                                          {p, r, 3}}),
            detail::uniform_graph(nodes, {{u, v, 1},
                                          {z, w, 1},
                                          {p, q, 1},
                                          {r, s, 1},
                                          {v, w, 2},
                                          {q, s, 2},
                                          {u, r, 3},
                                          {p, z, 3}}),
        };
        c.source = "two 4-cycles vs one 8-cycle assembled from identical timed "
                   "pieces; per-event walk codes match while global shape differs";
        c.caw_checks.push_back({4, 3, true});
        StaticProps pa, pb;
        pa.diameter = std::nullopt;
        pa.girth = 4;
        pa.circuit_rank = 2;
        pb.diameter = 4;
        pb.girth = 8;
        pb.circuit_rank = 1;
        c.props_checks.push_back({4, pa, pb});
        return c;
    }

    throw std::invalid_argument("corpus_build: unknown case '" + name + "'");
}

// ---------------------------------------------------------------------------
// Verification.

struct CorpusEntryReport {
    std::string case_name;
    std::string check;
    bool pass = false;
    std::string detail;
};

struct CorpusReport {
    std::vector<CorpusEntryReport> entries;
    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return !entries.empty();
    }
};

namespace detail {

inline std::string verdict_name(VerdictResult r) {
    return r == VerdictResult::distinguished ? "distinguished" : "indistinguishable";
}

} // namespace detail

inline CorpusReport corpus_verify(const std::string& filter = "") {
    CorpusReport report;
    for (const std::string& name : corpus_catalog()) {
        if (!filter.empty() && name != filter) continue;
        CorpusCase c = corpus_build(name);
        for (const NodePairCheck& chk : c.node_checks) {
            CorpusEntryReport e;
            e.case_name = name;
            e.check = model_name(chk.model) + " nodes (" + std::to_string(chk.u) + "," +
                      std::to_string(chk.v) + ") t=" + std::to_string(chk.t);
            Verdict v = distinguish_nodes(c.graphs[0], chk.u, chk.v, chk.t, chk.model);
            e.pass = v.result == chk.expect;
            e.detail = "expected " + detail::verdict_name(chk.expect) + ", got " +
                       detail::verdict_name(v.result) + " (" + v.witness + ")";
            report.entries.push_back(e);
        }
        for (const EventPairCheck& chk : c.event_checks) {
            CorpusEntryReport e;
            e.case_name = name;
            e.check = model_name(chk.model) + " events (" + std::to_string(chk.u1) + "," +
                      std::to_string(chk.v1) + ")/(" + std::to_string(chk.u2) + "," +
                      std::to_string(chk.v2) + ") t=" + std::to_string(chk.t);
            Verdict v = distinguish_events(c.graphs[0], chk.u1, chk.v1, chk.u2, chk.v2, chk.t,
                                           chk.model);
            e.pass = v.result == chk.expect;
            e.detail = "expected " + detail::verdict_name(chk.expect) + ", got " +
                       detail::verdict_name(v.result) + " (" + v.witness + ")";
            report.entries.push_back(e);
        }
        for (const TwlGraphCheck& chk : c.twl_checks) {
            CorpusEntryReport e;
            e.case_name = name;
            e.check = "twl graphs t=" + std::to_string(chk.t);
            TwlCompareReport r = twl_compare(c.graphs[0], c.graphs[1], chk.t);
            e.pass = r.verdict == chk.expect;
            e.detail = std::string("expected ") +
                       (chk.expect == TwlVerdict::inconclusive ? "inconclusive" : "non_isomorphic") +
                       ", got " +
                       (r.verdict == TwlVerdict::inconclusive ? "inconclusive" : "non_isomorphic");
            report.entries.push_back(e);
        }
        for (const CawGraphCheck& chk : c.caw_checks) {
            CorpusEntryReport e;
            e.case_name = name;
            e.check = "caw graph codes t=" + std::to_string(chk.t) +
                      " len=" + std::to_string(chk.max_len);
            CanonicalId a = caw_graph_code(c.graphs[0], chk.t, chk.max_len);
            CanonicalId b = caw_graph_code(c.graphs[1], chk.t, chk.max_len);
            bool equal = a == b;
            e.pass = equal == chk.expect_equal;
            e.detail = std::string("expected ") + (chk.expect_equal ? "equal" : "distinct") +
                       ", got " + (equal ? "equal" : "distinct");
            report.entries.push_back(e);
        }
        for (const PropsCheck& chk : c.props_checks) {
            CorpusEntryReport e;
            e.case_name = name;
            e.check = "static props t=" + std::to_string(chk.t);
            StaticProps pa = static_properties(c.graphs[0], chk.t);
            StaticProps pb = static_properties(c.graphs[1], chk.t);
            bool props_differ = !(pa == pb);
            e.pass = pa == chk.expect_a && pb == chk.expect_b && props_differ;
            e.detail = "a: " + render_props(pa) + " (want " + render_props(chk.expect_a) +
                       "), b: " + render_props(pb) + " (want " + render_props(chk.expect_b) + ")";
            report.entries.push_back(e);
        }
    }
    if (report.entries.empty())
        throw std::invalid_argument("corpus_verify: no case matches filter '" + filter + "'");
    return report;
}

} // namespace tgx
