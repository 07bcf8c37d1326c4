#pragma once

// Temporal Weisfeiler-Leman color refinement.
//
// Round 0 colors every node by its feature tuple; round r+1 recolors by the
// pair (own color, multiset of (neighbor color, edge feature, timestamp) over
// the temporal neighborhood at the query time). Colors live in the shared
// intern registry, so colors of different graphs are directly comparable.
//
// Counting distinct colors per round detects stabilization: the round r+1
// partition always refines the round r partition (the new color encodes the
// old one), so the first round whose distinct count repeats has reached the
// fixed partition.
//
// Comparing two graphs runs refinement in lockstep on the color multisets.
// A divergence can first appear one round after both partitions stabilize
// (neighborhood views may differ even when color multisets agree), but never
// later: two consecutive equal rounds past stabilization force equality
// forever after, because the per-color refinement maps of the two graphs
// coincide from then on. The comparison therefore stops one round past the
// later stabilization.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "tgx/graph.hpp"
#include "tgx/intern.hpp"

namespace tgx {

struct ColorPartition {
    std::map<NodeId, CanonicalId> colors;
    int round = 0;
};

struct ColorHistory {
    std::vector<ColorPartition> rounds; // rounds[r].round == r
    int stabilized_at = -1;             // first r with count(r) == count(r+1)
};

inline std::int64_t distinct_colors(const ColorPartition& p) {
    std::vector<CanonicalId> ids;
    ids.reserve(p.colors.size());
    for (const auto& [node, c] : p.colors) ids.push_back(c);
    std::sort(ids.begin(), ids.end());
    return static_cast<std::int64_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

namespace detail {

inline ColorPartition twl_round0(const TemporalGraph& g) {
    ColorPartition p;
    p.round = 0;
    for (const auto& [node, feat] : g.node_feats)
        p.colors[node] = intern_tuple(KeyTag::twl_init, feat);
    return p;
}

inline ColorPartition twl_next(const TemporalGraph& g, Timestamp t, const ColorPartition& prev) {
    ColorPartition p;
    p.round = prev.round + 1;
    for (const auto& [node, old_color] : prev.colors) {
        std::vector<std::tuple<CanonicalId, FeatureTuple, Timestamp>> view;
        for (const NeighborhoodEntry& entry : temporal_neighborhood(g, node, t))
            view.emplace_back(prev.colors.at(entry.node), entry.feat, entry.t);
        std::sort(view.begin(), view.end());
        KeyBuilder kb(KeyTag::twl_refine);
        kb.add_id(old_color);
        kb.open();
        for (const auto& [color, feat, time] : view) {
            kb.add_id(color);
            kb.add_ints(feat);
            kb.add_int(time);
        }
        kb.close();
        p.colors[node] = intern(kb);
    }
    return p;
}

} // namespace detail

// Refines until the partition stabilizes (at most |V| rounds) or, if
// max_rounds >= 0, until that many refinement rounds have been computed.
// The history always contains the round that witnessed the plateau.
inline ColorHistory twl_refine(const TemporalGraph& g, Timestamp t, int max_rounds = -1) {
    ColorHistory h;
    h.rounds.push_back(detail::twl_round0(g));
    while (max_rounds < 0 || static_cast<int>(h.rounds.size()) <= max_rounds) {
        const ColorPartition& prev = h.rounds.back();
        ColorPartition next = detail::twl_next(g, t, prev);
        bool plateau = distinct_colors(next) == distinct_colors(prev);
        h.rounds.push_back(std::move(next));
        if (plateau) {
            h.stabilized_at = prev.round;
            break;
        }
    }
    return h;
}

enum class TwlVerdict { non_isomorphic, inconclusive };

struct TwlCompareReport {
    TwlVerdict verdict = TwlVerdict::inconclusive;
    int divergence_round = -1; // first round with differing color multisets
    std::vector<std::int64_t> counts_a; // distinct colors per compared round
    std::vector<std::int64_t> counts_b;
};

namespace detail {

inline std::vector<CanonicalId> color_multiset(const ColorPartition& p) {
    std::vector<CanonicalId> ids;
    ids.reserve(p.colors.size());
    for (const auto& [node, c] : p.colors) ids.push_back(c);
    std::sort(ids.begin(), ids.end());
    return ids;
}

} // namespace detail

inline TwlCompareReport twl_compare(const TemporalGraph& a, const TemporalGraph& b,
                                    Timestamp t) {
    TwlCompareReport report;
    if (a.node_feats.size() != b.node_feats.size()) {
        report.verdict = TwlVerdict::non_isomorphic;
        report.divergence_round = 0;
        return report;
    }
    ColorHistory ha = twl_refine(a, t);
    ColorHistory hb = twl_refine(b, t);
    // One round past the later stabilization decides the comparison.
    std::size_t rounds_needed =
        static_cast<std::size_t>(std::max(ha.stabilized_at, hb.stabilized_at)) + 2;
    while (ha.rounds.size() < rounds_needed)
        ha.rounds.push_back(detail::twl_next(a, t, ha.rounds.back()));
    while (hb.rounds.size() < rounds_needed)
        hb.rounds.push_back(detail::twl_next(b, t, hb.rounds.back()));
    for (std::size_t r = 0; r < rounds_needed; ++r) {
        report.counts_a.push_back(distinct_colors(ha.rounds[r]));
        report.counts_b.push_back(distinct_colors(hb.rounds[r]));
        if (report.divergence_round < 0 &&
            detail::color_multiset(ha.rounds[r]) != detail::color_multiset(hb.rounds[r])) {
            report.verdict = TwlVerdict::non_isomorphic;
            report.divergence_round = static_cast<int>(r);
        }
    }
    return report;
}

} // namespace tgx
