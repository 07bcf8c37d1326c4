#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tgx/graph.hpp"
#include "tgx/io.hpp"

using namespace tgx;

TEST_CASE("make_event normalizes endpoints and validates fields") {
    Event e = make_event(2, 1, 5, {3});
    CHECK(e.u == 1);
    CHECK(e.v == 2);
    CHECK(e.t == 5);
    CHECK(e.feat == FeatureTuple{3});
    CHECK_THROWS_AS(make_event(1, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_event(1, 2, -1), std::invalid_argument);
    CHECK_THROWS_AS(make_event(1, 2, 5, {-1}), std::invalid_argument);
}

TEST_CASE("build_graph sorts events and completes the node table") {
    TemporalGraph g = build_graph({make_event(3, 4, 7), make_event(1, 2, 3), make_event(2, 1, 3)},
                                  {{1, {9}}});
    REQUIRE(g.events.size() == 3);
    CHECK(g.events[0] == make_event(1, 2, 3));
    CHECK(g.events[1] == make_event(1, 2, 3));
    CHECK(g.events[2] == make_event(3, 4, 7));
    CHECK(g.node_feats.at(1) == FeatureTuple{9});
    CHECK(g.node_feats.at(2).empty());
    CHECK(g.node_feats.count(3) == 1);
    CHECK(g.node_feats.count(4) == 1);
    CHECK(node_set(g) == std::set<NodeId>{1, 2, 3, 4});
    CHECK_THROWS_AS(build_graph({}, {{1, {-1}}}), std::invalid_argument);
}

TEST_CASE("temporal views are strict in t") {
    TemporalGraph g = build_graph({make_event(0, 1, 1, {5}), make_event(0, 2, 2),
                                   make_event(0, 1, 3)});
    auto nb = temporal_neighborhood(g, 0, 3);
    REQUIRE(nb.size() == 2); // the t=3 event is excluded
    CHECK(nb[0].node == 1);
    CHECK(nb[0].feat == FeatureTuple{5});
    CHECK(nb[0].t == 1);
    CHECK(nb[1].node == 2);
    CHECK(temporal_neighborhood(g, 0, 4).size() == 3);
    CHECK(temporal_neighborhood(g, 1, 2).size() == 1);
    CHECK(temporal_neighborhood(g, 7, 10).empty()); // unknown node, no events

    CHECK(snapshot_at(g, 3).events.size() == 2);
    CHECK(snapshot_at(g, 1).events.empty());
    CHECK(snapshot_at(g, 1).node_feats == g.node_feats);

    CHECK(max_timestamp(g) == 3);
    CHECK(max_timestamp(TemporalGraph{}) == 0);
    CHECK(max_neighborhood_size(g, 4) == 3); // node 0 sees all three events
    CHECK(max_neighborhood_size(g, 2) == 1);
    CHECK(max_neighborhood_size(g, 1) == 0);
}

TEST_CASE("event files parse and render canonically") {
    std::string text = "# tgx-events v1\n"
                       "N,1,2;3\n"
                       "2,1,5,\n"
                       "0,3,2,7\n";
    TemporalGraph g = parse_events(text);
    REQUIRE(g.events.size() == 2);
    CHECK(g.events[0] == make_event(0, 3, 2, {7}));
    CHECK(g.events[1] == make_event(1, 2, 5)); // endpoints normalized, empty features
    CHECK(g.node_feats.at(1) == FeatureTuple{2, 3});

    // canonical form: node rows sorted, events sorted, normalized endpoints
    std::string canonical = "# tgx-events v1\n"
                            "N,0,\n"
                            "N,1,2;3\n"
                            "N,2,\n"
                            "N,3,\n"
                            "0,3,2,7\n"
                            "1,2,5,\n";
    CHECK(render_events(g) == canonical);
    CHECK(parse_events(canonical) == g);
    CHECK(render_events(parse_events(canonical)) == canonical);

    // comments, blank lines and CRLF are tolerated
    TemporalGraph g2 = parse_events("# tgx-events v1\r\n\r\n# note\n2,1,5,\r\n0,3,2,7\nN,1,2;3\n");
    CHECK(g2 == g);
}

TEST_CASE("event file errors carry line numbers") {
    auto expect_error = [](const std::string& text, int line) {
        try {
            parse_events(text, "f");
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(e.line_number == line);
        }
    };
    expect_error("bogus\n", 1);                                // missing header
    expect_error("", 1);                                       // empty input
    expect_error("# tgx-events v1\nN,1\n", 2);                 // short node row
    expect_error("# tgx-events v1\n1,2,3\n", 2);               // short event row
    expect_error("# tgx-events v1\n\n1,1,3,\n", 3);            // self-loop
    expect_error("# tgx-events v1\n1,2,-3,\n", 2);             // negative timestamp
    expect_error("# tgx-events v1\n1,2,x,\n", 2);              // junk timestamp
    expect_error("# tgx-events v1\nN,1,\nN,1,\n", 3);          // duplicate node row
    expect_error("# tgx-events v1\nN,1,2;-3\n", 2);            // negative feature
    expect_error("# tgx-events v1\nN,4294967296,\n", 2);       // node id overflow
}

TEST_CASE("snapshot files parse, validate and render canonically") {
    std::string text = "# tgx-snapshots v1\n"
                       "\n"
                       "S,1\n"
                       "N,0,1\n"
                       "N,1,\n"
                       "E,1,0,4;4\n"
                       "\n"
                       "S,2\n"
                       "N,2,\n";
    SnapshotSequence seq = parse_snapshots(text);
    REQUIRE(seq.snapshots.size() == 2);
    CHECK(seq.snapshots[0].node_feats.at(0) == FeatureTuple{1});
    CHECK(seq.snapshots[0].edges.at({0, 1}) == FeatureTuple{4, 4}); // endpoints normalized
    CHECK(seq.snapshots[1].edges.empty());

    std::string canonical = render_snapshots(seq);
    CHECK(parse_snapshots(canonical) == seq);
    CHECK(render_snapshots(parse_snapshots(canonical)) == canonical);

    CHECK_THROWS_AS(parse_snapshots("# tgx-snapshots v1\nS,2\n"), ParseError);       // bad index
    CHECK_THROWS_AS(parse_snapshots("# tgx-snapshots v1\nN,0,\n"), ParseError);      // row before S
    CHECK_THROWS_AS(parse_snapshots("# tgx-snapshots v1\nS,1\nE,0,0,\n"), ParseError);
    CHECK_THROWS_AS(parse_snapshots("# tgx-snapshots v1\nS,1\nE,0,1,\nE,1,0,\n"), ParseError);
    CHECK_THROWS_AS(parse_snapshots("# tgx-snapshots v1\nS,1\nE,0,1,\n"), ParseError); // endpoint
    CHECK_THROWS_AS(parse_snapshots("# tgx-snapshots v1\nS,1\nX,0\n"), ParseError);    // row type
    CHECK(parse_snapshots("# tgx-snapshots v1\n").snapshots.empty());
}

TEST_CASE("dtdg and ctdg conversions invert each other") {
    SnapshotSequence seq;
    seq.snapshots.resize(3);
    seq.snapshots[0].node_feats = {{0, {1}}, {1, {}}};
    seq.snapshots[0].edges[{0, 1}] = {7};
    // snapshot 2 intentionally empty
    seq.snapshots[2].node_feats = {{0, {2}}, {2, {}}};

    TemporalGraph g = dtdg_to_ctdg(seq, 2);
    REQUIRE(g.events.size() == 5);
    CHECK(g.events[0] == make_event(0, 1, 2, {7})); // sorts before the dummy partner rows
    CHECK(g.events[1] == make_event(0, dummy_node, 2, {1}));
    CHECK(g.events[3].t == 6); // snapshot 3 lands at 3 * delta
    CHECK(max_timestamp(g) == 6);
    CHECK(ctdg_to_dtdg(g, 2) == seq); // mid-sequence empty snapshot survives

    CHECK_THROWS_AS(dtdg_to_ctdg(seq, 0), std::invalid_argument);
    CHECK_THROWS_AS(ctdg_to_dtdg(g, 4), std::invalid_argument); // t=2 off the 4-grid
    CHECK_THROWS_AS(ctdg_to_dtdg(build_graph({make_event(0, 1, 3)}), 2), std::invalid_argument);

    // duplicate node row in one snapshot: two dummy events for node 0 at t=2
    TemporalGraph dup = build_graph(
        {make_event(0, dummy_node, 2, {1}), make_event(0, dummy_node, 2, {2})});
    CHECK_THROWS_AS(ctdg_to_dtdg(dup, 2), std::invalid_argument);

    SnapshotSequence empty;
    CHECK(ctdg_to_dtdg(dtdg_to_ctdg(empty, 1), 1) == empty);
}

TEST_CASE("random snapshot sequences survive the round trip") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 50; ++trial) {
        SnapshotSequence seq = oracles::random_dtdg(rng);
        for (Timestamp delta : {Timestamp{1}, Timestamp{3}}) {
            TemporalGraph g = dtdg_to_ctdg(seq, delta);
            CHECK(ctdg_to_dtdg(g, delta) == seq);
            std::string rendered = render_snapshots(seq);
            CHECK(render_snapshots(parse_snapshots(rendered)) == rendered);
        }
    }
}

TEST_CASE("random event graphs round trip through text") {
    std::mt19937_64 rng(20240818);
    for (int trial = 0; trial < 50; ++trial) {
        TemporalGraph g = oracles::random_graph(rng);
        std::string rendered = render_events(g);
        CHECK(parse_events(rendered) == g);
        CHECK(render_events(parse_events(rendered)) == rendered);
    }
}
