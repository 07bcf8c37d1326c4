#pragma once

// Text formats for event streams and snapshot sequences.
//
// Event files ("# tgx-events v1"):
//     N,<node>,<f1;f2;...>        node feature row
//     <u>,<v>,<t>,<f1;f2;...>     event row, feature list may be empty
//
// Snapshot files ("# tgx-snapshots v1"): blocks separated by blank lines,
// each starting with S,<index> (consecutive from 1) followed by N and E rows:
//     S,<index>
//     N,<node>,<f1;f2;...>
//     E,<u>,<v>,<f1;f2;...>
//
// Writers emit rows in sorted order so serialization is canonical: loading
// and saving any file reproduces it byte for byte.

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tgx/graph.hpp"

namespace tgx {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& origin, int line, const std::string& msg)
        : std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg),
          line_number(line) {}
    int line_number;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::int64_t parse_i64(std::string_view s, const std::string& origin, int line,
                              const char* what) {
    std::int64_t value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || s.empty())
        throw ParseError(origin, line, std::string("invalid ") + what + " '" + std::string(s) + "'");
    return value;
}

inline NodeId parse_node(std::string_view s, const std::string& origin, int line) {
    std::int64_t value = parse_i64(s, origin, line, "node id");
    if (value < 0 || value > static_cast<std::int64_t>(0xFFFFFFFFll))
        throw ParseError(origin, line, "node id out of range '" + std::string(s) + "'");
    return static_cast<NodeId>(value);
}

inline FeatureTuple parse_features(std::string_view s, const std::string& origin, int line) {
    FeatureTuple feat;
    if (s.empty()) return feat;
    for (std::string_view part : split(s, ';')) {
        std::int64_t value = parse_i64(part, origin, line, "feature value");
        if (value < 0) throw ParseError(origin, line, "negative feature value");
        feat.push_back(value);
    }
    return feat;
}

inline std::string render_features(const FeatureTuple& feat) {
    std::string out;
    for (std::size_t i = 0; i < feat.size(); ++i) {
        if (i) out.push_back(';');
        out += std::to_string(feat[i]);
    }
    return out;
}

inline std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace detail

inline constexpr const char* events_header = "# tgx-events v1";
inline constexpr const char* snapshots_header = "# tgx-snapshots v1";

inline TemporalGraph parse_events(const std::string& content,
                                  const std::string& origin = "<events>") {
    std::istringstream in(content);
    std::string raw;
    int line_no = 0;
    bool saw_header = false;
    std::vector<Event> events;
    std::map<NodeId, FeatureTuple> node_feats;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::strip_cr(raw);
        if (!saw_header) {
            if (line != events_header)
                throw ParseError(origin, line_no, std::string("expected header '") + events_header + "'");
            saw_header = true;
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split(line, ',');
        if (fields[0] == "N") {
            if (fields.size() != 3)
                throw ParseError(origin, line_no, "node row needs 3 fields: N,<node>,<features>");
            NodeId node = detail::parse_node(fields[1], origin, line_no);
            FeatureTuple feat = detail::parse_features(fields[2], origin, line_no);
            if (!node_feats.emplace(node, std::move(feat)).second)
                throw ParseError(origin, line_no, "duplicate node row");
        } else {
            if (fields.size() != 4)
                throw ParseError(origin, line_no, "event row needs 4 fields: <u>,<v>,<t>,<features>");
            NodeId u = detail::parse_node(fields[0], origin, line_no);
            NodeId v = detail::parse_node(fields[1], origin, line_no);
            std::int64_t t = detail::parse_i64(fields[2], origin, line_no, "timestamp");
            if (t < 0) throw ParseError(origin, line_no, "negative timestamp");
            if (u == v) throw ParseError(origin, line_no, "self-loop event");
            events.push_back(make_event(u, v, t, detail::parse_features(fields[3], origin, line_no)));
        }
    }
    if (!saw_header)
        throw ParseError(origin, 1, std::string("expected header '") + events_header + "'");
    return build_graph(std::move(events), std::move(node_feats));
}

inline std::string render_events(const TemporalGraph& g) {
    std::string out = events_header;
    out.push_back('\n');
    for (const auto& [node, feat] : g.node_feats)
        out += "N," + std::to_string(node) + "," + detail::render_features(feat) + "\n";
    for (const Event& ev : g.events)
        out += std::to_string(ev.u) + "," + std::to_string(ev.v) + "," + std::to_string(ev.t) +
               "," + detail::render_features(ev.feat) + "\n";
    return out;
}

inline SnapshotSequence parse_snapshots(const std::string& content,
                                        const std::string& origin = "<snapshots>") {
    std::istringstream in(content);
    std::string raw;
    int line_no = 0;
    bool saw_header = false;
    SnapshotSequence seq;
    Snapshot* current = nullptr;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::strip_cr(raw);
        if (!saw_header) {
            if (line != snapshots_header)
                throw ParseError(origin, line_no, std::string("expected header '") + snapshots_header + "'");
            saw_header = true;
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split(line, ',');
        if (fields[0] == "S") {
            if (fields.size() != 2)
                throw ParseError(origin, line_no, "snapshot row needs 2 fields: S,<index>");
            std::int64_t index = detail::parse_i64(fields[1], origin, line_no, "snapshot index");
            if (index != static_cast<std::int64_t>(seq.snapshots.size()) + 1)
                throw ParseError(origin, line_no,
                                 "snapshot indices must be consecutive from 1, got " +
                                     std::to_string(index));
            seq.snapshots.emplace_back();
            current = &seq.snapshots.back();
        } else if (fields[0] == "N") {
            if (!current) throw ParseError(origin, line_no, "node row before first snapshot");
            if (fields.size() != 3)
                throw ParseError(origin, line_no, "node row needs 3 fields: N,<node>,<features>");
            NodeId node = detail::parse_node(fields[1], origin, line_no);
            if (!current->node_feats.emplace(node, detail::parse_features(fields[2], origin, line_no)).second)
                throw ParseError(origin, line_no, "duplicate node row in snapshot");
        } else if (fields[0] == "E") {
            if (!current) throw ParseError(origin, line_no, "edge row before first snapshot");
            if (fields.size() != 4)
                throw ParseError(origin, line_no, "edge row needs 4 fields: E,<u>,<v>,<features>");
            NodeId u = detail::parse_node(fields[1], origin, line_no);
            NodeId v = detail::parse_node(fields[2], origin, line_no);
            if (u > v) std::swap(u, v);
            if (u == v) throw ParseError(origin, line_no, "self-loop edge");
            if (!current->edges.emplace(std::make_pair(u, v), detail::parse_features(fields[3], origin, line_no)).second)
                throw ParseError(origin, line_no, "duplicate edge in snapshot");
        } else {
            throw ParseError(origin, line_no, "unknown row type '" + std::string(fields[0]) + "'");
        }
    }
    if (!saw_header)
        throw ParseError(origin, 1, std::string("expected header '") + snapshots_header + "'");
    for (std::size_t i = 0; i < seq.snapshots.size(); ++i) {
        try {
            validate_snapshot(seq.snapshots[i]);
        } catch (const std::exception& e) {
            throw ParseError(origin, 0, "snapshot " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return seq;
}

inline std::string render_snapshots(const SnapshotSequence& seq) {
    std::string out = snapshots_header;
    out.push_back('\n');
    for (std::size_t i = 0; i < seq.snapshots.size(); ++i) {
        const Snapshot& s = seq.snapshots[i];
        out.push_back('\n');
        out += "S," + std::to_string(i + 1) + "\n";
        for (const auto& [node, feat] : s.node_feats)
            out += "N," + std::to_string(node) + "," + detail::render_features(feat) + "\n";
        for (const auto& [edge, feat] : s.edges)
            out += "E," + std::to_string(edge.first) + "," + std::to_string(edge.second) + "," +
                   detail::render_features(feat) + "\n";
    }
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

inline TemporalGraph load_events(const std::string& path) {
    return parse_events(read_text_file(path), path);
}

inline void save_events(const std::string& path, const TemporalGraph& g) {
    write_text_file(path, render_events(g));
}

inline SnapshotSequence load_snapshots(const std::string& path) {
    return parse_snapshots(read_text_file(path), path);
}

inline void save_snapshots(const std::string& path, const SnapshotSequence& seq) {
    write_text_file(path, render_snapshots(seq));
}

} // namespace tgx
