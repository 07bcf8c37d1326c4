#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "tgx/twl.hpp"

using namespace tgx;

TEST_CASE("round zero colors by node features") {
    TemporalGraph g = build_graph({make_event(0, 1, 1)}, {{0, {5}}, {1, {5}}, {2, {6}}});
    ColorHistory h = twl_refine(g, 2);
    const ColorPartition& r0 = h.rounds[0];
    CHECK(r0.colors.at(0) == r0.colors.at(1));
    CHECK(r0.colors.at(0) != r0.colors.at(2));
    CHECK(distinct_colors(r0) == 2);
}

TEST_CASE("refinement matches the string relabeling oracle round by round") {
    std::mt19937_64 rng(611);
    for (int trial = 0; trial < 100; ++trial) {
        TemporalGraph g = oracles::random_graph(rng);
        Timestamp t = max_timestamp(g) + 1;
        ColorHistory h = twl_refine(g, t);
        auto strings = oracles::string_wl_round0(g);
        for (std::size_t r = 0; r < h.rounds.size(); ++r) {
            CAPTURE(trial);
            CAPTURE(r);
            CHECK(oracles::partition_of(h.rounds[r].colors) == oracles::partition_of(strings));
            strings = oracles::string_wl_next(g, t, strings);
        }
    }
}

TEST_CASE("stabilization obeys the counting bound and then sticks") {
    std::mt19937_64 rng(612);
    for (int trial = 0; trial < 60; ++trial) {
        TemporalGraph g = oracles::random_graph(rng);
        Timestamp t = max_timestamp(g) + 1;
        ColorHistory h = twl_refine(g, t);
        auto n = static_cast<std::int64_t>(g.node_feats.size());
        REQUIRE(h.stabilized_at >= 0);
        CHECK(h.stabilized_at <= n); // counts strictly increase until the plateau
        REQUIRE(static_cast<int>(h.rounds.size()) >= h.stabilized_at + 2);
        const ColorPartition& stab = h.rounds[static_cast<std::size_t>(h.stabilized_at)];
        const ColorPartition& next = h.rounds[static_cast<std::size_t>(h.stabilized_at) + 1];
        CHECK(distinct_colors(stab) == distinct_colors(next));
        // equal counts plus guaranteed refinement means the same partition
        CHECK(oracles::partition_of(stab.colors) == oracles::partition_of(next.colors));
        // distinct counts never decrease
        for (std::size_t r = 1; r < h.rounds.size(); ++r)
            CHECK(distinct_colors(h.rounds[r]) >= distinct_colors(h.rounds[r - 1]));
    }
}

TEST_CASE("max_rounds caps the refinement") {
    TemporalGraph g = build_graph({make_event(0, 1, 1), make_event(1, 2, 2)});
    ColorHistory h = twl_refine(g, 3, 1);
    CHECK(h.rounds.size() <= 2);
}

TEST_CASE("node count mismatch short-circuits comparison") {
    TemporalGraph a = build_graph({make_event(0, 1, 1)});
    TemporalGraph b = build_graph({make_event(0, 1, 1)}, {{2, {}}});
    TwlCompareReport r = twl_compare(a, b, 2);
    CHECK(r.verdict == TwlVerdict::non_isomorphic);
    CHECK(r.divergence_round == 0);
    CHECK(r.counts_a.empty());
}

TEST_CASE("divergence can appear one round past both stabilizations") {
    // Both graphs are uniform at every round when viewed alone: two nodes,
    // one color, so refinement stabilizes immediately at round 0. Only the
    // cross-graph multiset comparison at round 1 sees the edge.
    TemporalGraph with_edge = build_graph({make_event(0, 1, 1)});
    TemporalGraph without = build_graph({}, {{0, {}}, {1, {}}});
    CHECK(twl_refine(with_edge, 2).stabilized_at == 0);
    CHECK(twl_refine(without, 2).stabilized_at == 0);
    TwlCompareReport r = twl_compare(with_edge, without, 2);
    CHECK(r.verdict == TwlVerdict::non_isomorphic);
    CHECK(r.divergence_round == 1);
    CHECK(r.counts_a == std::vector<std::int64_t>{1, 1});
    CHECK(r.counts_b == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("identical graphs compare inconclusive") {
    std::mt19937_64 rng(613);
    for (int trial = 0; trial < 20; ++trial) {
        TemporalGraph g = oracles::random_graph(rng);
        TwlCompareReport r = twl_compare(g, g, max_timestamp(g) + 1);
        CHECK(r.verdict == TwlVerdict::inconclusive);
        CHECK(r.divergence_round == -1);
        CHECK(r.counts_a == r.counts_b);
    }
}

TEST_CASE("relabeled graphs compare inconclusive") {
    // isomorphic by construction: node i of a is node i+10 of b
    TemporalGraph a = build_graph({make_event(0, 1, 1, {3}), make_event(1, 2, 2)},
                                  {{0, {1}}, {1, {0}}, {2, {0}}});
    TemporalGraph b = build_graph({make_event(10, 11, 1, {3}), make_event(11, 12, 2)},
                                  {{10, {1}}, {11, {0}}, {12, {0}}});
    TwlCompareReport r = twl_compare(a, b, 3);
    CHECK(r.verdict == TwlVerdict::inconclusive);

    // perturbing one timestamp flips the verdict at round 1
    TemporalGraph c = build_graph({make_event(10, 11, 1, {3}), make_event(11, 12, 1)},
                                  {{10, {1}}, {11, {0}}, {12, {0}}});
    CHECK(twl_compare(a, c, 3).verdict == TwlVerdict::non_isomorphic);
}
