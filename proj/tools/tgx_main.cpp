// tgx: temporal graph expressiveness toolbox.
//
// Subcommands cover color refinement (wl), computation trees (tct),
// positional features (posfeat), embeddings (embed), causal walks (caw),
// distinguishability queries (distinguish), static properties (props), the
// counterexample corpus (corpus), the aggregation injectivity suite
// (injectivity-check), and snapshot/event conversion (convert).
//
// Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tgx/baselines.hpp"
#include "tgx/corpus.hpp"
#include "tgx/exact.hpp"
#include "tgx/expressiveness.hpp"
#include "tgx/graph.hpp"
#include "tgx/io.hpp"
#include "tgx/pint.hpp"
#include "tgx/posfeat.hpp"
#include "tgx/tct.hpp"
#include "tgx/twl.hpp"

namespace {

using nlohmann::json;
using namespace tgx;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> parse_int_list(const std::string& s, std::size_t expected,
                                         const std::string& what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stoll(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(what + ": expected integers, got '" + s + "'");
        }
    }
    if (out.size() != expected)
        throw UsageError(what + ": expected " + std::to_string(expected) + " integers, got '" +
                         s + "'");
    return out;
}

NodeId as_node(std::int64_t x, const std::string& what) {
    if (x < 0 || x > 0xFFFFFFFFll) throw UsageError(what + ": node id out of range");
    return static_cast<NodeId>(x);
}

ModelKind parse_model(const std::string& s) {
    if (s == "twl") return ModelKind::twl;
    if (s == "mptgn") return ModelKind::mptgn_injective;
    if (s == "pint") return ModelKind::pint;
    if (s == "tgat") return ModelKind::tgat;
    if (s == "tgn_att") return ModelKind::tgn_att;
    if (s == "caw") return ModelKind::caw;
    throw UsageError("unknown model '" + s + "' (want twl|mptgn|pint|tgat|tgn_att|caw)");
}

MemoryKind parse_memory(const std::string& s) {
    if (s == "identity") return MemoryKind::identity;
    if (s == "injective") return MemoryKind::injective;
    throw UsageError("unknown memory kind '" + s + "' (want identity|injective)");
}

std::string render_anon(const AnonVector& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

// One walk in arrow notation: each hop shows the node's position-count
// vectors relative to both endpoint walk sets, arrows carry time gaps.
std::string render_walk(const Walk& w, const WalkSet& su, const WalkSet& sv) {
    std::string out;
    Timestamp prev = w.hops.empty() ? 0 : w.hops.front().second;
    for (std::size_t i = 0; i < w.hops.size(); ++i) {
        const auto& [node, time] = w.hops[i];
        if (i) out += " ->(" + std::to_string(prev - time) + ") ";
        out += "{" + render_anon(caw_anonymize(node, su)) + "," +
               render_anon(caw_anonymize(node, sv)) + "}";
        prev = time;
    }
    return out;
}

json props_json(const StaticProps& p) {
    json j;
    j["diameter"] = p.diameter ? json(*p.diameter) : json(nullptr);
    j["girth"] = p.girth ? json(*p.girth) : json(nullptr);
    j["circuit_rank"] = p.circuit_rank;
    return j;
}

int cmd_wl(const std::string& path_a, const std::string& path_b, Timestamp t, bool as_json) {
    TemporalGraph a = load_events(path_a);
    if (path_b.empty()) {
        ColorHistory h = twl_refine(a, t);
        json j;
        j["mode"] = "refine";
        j["time"] = t;
        j["stabilized_at"] = h.stabilized_at;
        std::vector<int> counts;
        for (const auto& r : h.rounds) counts.push_back(distinct_colors(r));
        j["distinct_colors"] = counts;
        if (as_json) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "rounds: " << h.rounds.size() << ", stabilized at round "
                      << h.stabilized_at << "\n";
            for (std::size_t r = 0; r < counts.size(); ++r)
                std::cout << "round " << r << ": " << counts[r] << " colors\n";
        }
        return 0;
    }
    TemporalGraph b = load_events(path_b);
    TwlCompareReport rep = twl_compare(a, b, t);
    json j;
    j["mode"] = "compare";
    j["time"] = t;
    j["verdict"] = rep.verdict == TwlVerdict::non_isomorphic ? "non_isomorphic" : "inconclusive";
    j["divergence_round"] = rep.divergence_round;
    j["distinct_colors_a"] = rep.counts_a;
    j["distinct_colors_b"] = rep.counts_b;
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (rep.verdict == TwlVerdict::non_isomorphic ? "NonIsomorphic" : "Inconclusive")
                  << "\n";
        if (rep.divergence_round >= 0)
            std::cout << "color multisets diverge at round " << rep.divergence_round << "\n";
    }
    return 0;
}

int cmd_tct(const std::string& path, std::int64_t node, Timestamp t, int depth, bool monotone,
            bool as_json) {
    TemporalGraph g = load_events(path);
    NodeId v = as_node(node, "--node");
    Tct tree = monotone ? build_monotone_tct(g, v, t, depth) : build_tct(g, v, t, depth);
    std::string rendered = render_tct(tree);
    if (as_json) {
        json j;
        j["node"] = v;
        j["time"] = t;
        j["depth"] = depth;
        j["monotone"] = monotone;
        j["canonical_id"] = tct_canonical(tree);
        j["rendered"] = rendered;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << rendered;
    }
    return 0;
}

int cmd_posfeat(const std::string& path, Timestamp t, int dim, const std::string& normalize,
                bool as_json) {
    if (!normalize.empty() && normalize != "l1")
        throw UsageError("--normalize: only 'l1' is supported");
    TemporalGraph g = load_events(path);
    PosStore store = posfeat_store_at(g, dim, t);
    json rows = json::array();
    for (const auto& [key, vec] : store.vecs) {
        const auto& [i, u] = key;
        json row;
        row["i"] = i;
        row["u"] = u;
        std::string line = std::to_string(i) + " " + std::to_string(u) + " ";
        if (normalize == "l1") {
            auto norm = normalize_l1(vec);
            json vals = json::array();
            for (std::size_t k = 0; k < norm.size(); ++k) {
                std::ostringstream os;
                os << norm[k];
                vals.push_back(os.str());
                if (k) line += ",";
                line += os.str();
            }
            row["vec"] = vals;
        } else {
            row["vec"] = vec;
            for (std::size_t k = 0; k < vec.size(); ++k) {
                if (k) line += ",";
                line += std::to_string(vec[k]);
            }
        }
        rows.push_back(row);
        if (!as_json) std::cout << line << "\n";
    }
    if (as_json) {
        json j;
        j["time"] = t;
        j["dim"] = dim;
        j["rows"] = rows;
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_embed(const std::string& path, const std::string& edge, std::int64_t node, Timestamp t,
              const PintConfig& cfg, bool as_json) {
    TemporalGraph g = load_events(path);
    Embedding emb;
    json j;
    if (!edge.empty()) {
        auto xs = parse_int_list(edge, 3, "--edge");
        NodeId u = as_node(xs[0], "--edge"), v = as_node(xs[1], "--edge");
        emb = pint_edge_embedding(g, u, v, xs[2], cfg);
        j["kind"] = "edge";
        j["edge"] = {u, v};
        j["time"] = xs[2];
    } else {
        if (node < 0) throw UsageError("embed: need --edge u,v,t or --node v with --time");
        NodeId v = as_node(node, "--node");
        emb = pint_node_embedding(g, v, t, cfg);
        j["kind"] = "node";
        j["node"] = v;
        j["time"] = t;
    }
    j["layers"] = cfg.layers;
    j["positional"] = cfg.use_positional;
    j["memory"] = cfg.memory == MemoryKind::identity ? "identity" : "injective";
    if (cfg.mode == PintMode::exact) {
        j["mode"] = "exact";
        j["id"] = emb.id;
        if (as_json)
            std::cout << j.dump(2) << "\n";
        else
            std::cout << "id " << emb.id << "\n";
    } else {
        j["mode"] = "numeric";
        j["vec"] = emb.vec;
        if (as_json) {
            std::cout << j.dump(2) << "\n";
        } else {
            for (std::size_t i = 0; i < emb.vec.size(); ++i)
                std::cout << (i ? " " : "") << emb.vec[i];
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_caw(const std::string& path, const std::string& event, int len, bool as_json) {
    TemporalGraph g = load_events(path);
    auto xs = parse_int_list(event, 3, "--event");
    NodeId u = as_node(xs[0], "--event"), v = as_node(xs[1], "--event");
    Timestamp t = xs[2];
    WalkSet su = caw_walk_set(g, u, t, len);
    WalkSet sv = caw_walk_set(g, v, t, len);
    CanonicalId code = caw_encode_event(g, u, v, t, len);
    json j;
    j["event"] = {u, v};
    j["time"] = t;
    j["len"] = len;
    j["code_id"] = code;
    json ju = json::array(), jv = json::array();
    if (!as_json) std::cout << "S_u (" << su.walks.size() << " walks):\n";
    for (const Walk& w : su.walks) {
        std::string line = render_walk(w, su, sv);
        ju.push_back(line);
        if (!as_json) std::cout << "  " << line << "\n";
    }
    if (!as_json) std::cout << "S_v (" << sv.walks.size() << " walks):\n";
    for (const Walk& w : sv.walks) {
        std::string line = render_walk(w, su, sv);
        jv.push_back(line);
        if (!as_json) std::cout << "  " << line << "\n";
    }
    j["walks_u"] = ju;
    j["walks_v"] = jv;
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << "code id " << code << "\n";
    return 0;
}

int cmd_distinguish(const std::string& path, const std::string& nodes, const std::string& events,
                    Timestamp t, const ModelSpec& spec, bool as_json) {
    TemporalGraph g = load_events(path);
    Verdict v;
    json j;
    if (!nodes.empty() && !events.empty())
        throw UsageError("distinguish: pass --nodes or --events, not both");
    if (!nodes.empty()) {
        auto xs = parse_int_list(nodes, 2, "--nodes");
        v = distinguish_nodes(g, as_node(xs[0], "--nodes"), as_node(xs[1], "--nodes"), t, spec);
        j["query"] = "nodes";
        j["nodes"] = {xs[0], xs[1]};
    } else if (!events.empty()) {
        auto xs = parse_int_list(events, 4, "--events");
        v = distinguish_events(g, as_node(xs[0], "--events"), as_node(xs[1], "--events"),
                               as_node(xs[2], "--events"), as_node(xs[3], "--events"), t, spec);
        j["query"] = "events";
        j["events"] = {xs[0], xs[1], xs[2], xs[3]};
    } else {
        throw UsageError("distinguish: need --nodes u,v or --events u1,v1,u2,v2");
    }
    j["time"] = t;
    j["model"] = v.model;
    j["result"] = v.result == VerdictResult::distinguished ? "distinguished"
                                                           : "indistinguishable";
    j["witness"] = v.witness;
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << (v.result == VerdictResult::distinguished ? "Distinguished"
                                                               : "Indistinguishable")
                  << " by " << v.model << ": " << v.witness << "\n";
    return 0;
}

int cmd_props(const std::string& path, Timestamp t, bool as_json) {
    TemporalGraph g = load_events(path);
    StaticProps p = static_properties(g, t);
    if (as_json) {
        json j = props_json(p);
        j["time"] = t;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << render_props(p) << "\n";
    }
    return 0;
}

int cmd_corpus_list(bool as_json) {
    auto names = corpus_catalog();
    if (as_json) {
        json j = json::array();
        for (const auto& n : names) {
            CorpusCase c = corpus_build(n);
            json e;
            e["name"] = c.name;
            e["source"] = c.source;
            e["graphs"] = c.graphs.size();
            e["checks"] = c.node_checks.size() + c.event_checks.size() + c.twl_checks.size() +
                          c.caw_checks.size() + c.props_checks.size();
            j.push_back(e);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& n : names) {
            CorpusCase c = corpus_build(n);
            std::cout << n << ": " << c.source << "\n";
        }
    }
    return 0;
}

int cmd_corpus_verify(const std::string& filter, bool as_json) {
    CorpusReport rep = corpus_verify(filter);
    int failures = 0;
    json entries = json::array();
    for (const auto& e : rep.entries) {
        if (!e.pass) ++failures;
        json je;
        je["case"] = e.case_name;
        je["check"] = e.check;
        je["pass"] = e.pass;
        je["detail"] = e.detail;
        entries.push_back(je);
        if (!as_json)
            std::cout << (e.pass ? "PASS" : "FAIL") << " " << e.case_name << " " << e.check
                      << (e.pass ? "" : " | " + e.detail) << "\n";
    }
    if (as_json) {
        json j;
        j["entries"] = entries;
        j["total"] = rep.entries.size();
        j["failures"] = failures;
        j["all_pass"] = rep.all_pass();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << rep.entries.size() - failures << "/" << rep.entries.size()
                  << " checks passed\n";
    }
    return failures == 0 ? 0 : 1;
}

int cmd_injectivity(int features, int edge_features, Timestamp tmax, int n, bool as_json) {
    if (features < 1 || edge_features < 1 || tmax < 1 || n < 2)
        throw UsageError("injectivity-check: need --features >=1, --edge-features >=1, "
                         "--tmax >=1, --n >=2");
    struct Term {
        std::int64_t x, e;
        Timestamp t;
    };
    std::vector<Term> alphabet;
    for (std::int64_t x = 0; x < features; ++x)
        for (std::int64_t e = 0; e < edge_features; ++e)
            for (Timestamp t = 1; t <= tmax; ++t) alphabet.push_back({x, e, t});

    double predicted = 1;
    double choose = 1;
    for (int s = 1; s < n; ++s) {
        choose = choose * (static_cast<double>(alphabet.size()) + s - 1) / s;
        predicted += choose;
    }
    if (predicted > 5e6)
        throw UsageError("injectivity-check: domain too large (" + std::to_string(predicted) +
                         " multisets); shrink the bounds");

    AggParams params = make_agg_params(n, tmax);
    std::map<CanonicalId, std::vector<int>> seen; // id -> alphabet indices
    std::uint64_t total = 0;
    std::vector<int> collision_a, collision_b;

    std::vector<int> stack;
    auto record = [&]() {
        std::vector<MultisetTerm> terms;
        for (int idx : stack)
            terms.push_back({alphabet[static_cast<std::size_t>(idx)].x,
                             alphabet[static_cast<std::size_t>(idx)].e,
                             alphabet[static_cast<std::size_t>(idx)].t});
        CanonicalId id = injective_multiset_sum(terms, params).canonical_id();
        ++total;
        auto [it, inserted] = seen.emplace(id, stack);
        if (!inserted && it->second != stack) {
            collision_a = it->second;
            collision_b = stack;
            return false;
        }
        return true;
    };
    // Non-decreasing index stacks enumerate each multiset exactly once.
    std::function<bool(int, int)> walk = [&](int start, int remaining) {
        if (!record()) return false;
        if (remaining == 0) return true;
        for (int i = start; i < static_cast<int>(alphabet.size()); ++i) {
            stack.push_back(i);
            bool ok = walk(i, remaining - 1);
            stack.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    bool ok = walk(0, n - 1);

    json j;
    j["alphabet"] = alphabet.size();
    j["multisets"] = total;
    j["base"] = params.base;
    j["beta"] = params.beta;
    j["k"] = params.k;
    j["collision"] = !ok;
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else if (ok)
        std::cout << "no collisions across " << total << " multisets over " << alphabet.size()
                  << " terms (base=" << params.base << ", beta=" << params.beta
                  << ", k=" << params.k << ")\n";
    else
        std::cout << "collision after " << total << " multisets\n";
    return ok ? 0 : 1;
}

int cmd_convert(const std::string& dtdg, const std::string& ctdg, Timestamp delta,
                const std::string& out, bool as_json) {
    if (delta <= 0) throw UsageError("convert: --delta must be positive");
    if (dtdg.empty() == ctdg.empty())
        throw UsageError("convert: pass exactly one of --dtdg or --ctdg");
    std::string rendered;
    std::string kind;
    if (!dtdg.empty()) {
        SnapshotSequence seq = load_snapshots(dtdg);
        TemporalGraph g = dtdg_to_ctdg(seq, delta);
        rendered = render_events(g);
        kind = "events";
    } else {
        TemporalGraph g = load_events(ctdg);
        SnapshotSequence seq = ctdg_to_dtdg(g, delta);
        rendered = render_snapshots(seq);
        kind = "snapshots";
    }
    if (out.empty()) {
        std::cout << rendered;
    } else {
        write_text_file(out, rendered);
        if (as_json) {
            json j;
            j["wrote"] = out;
            j["kind"] = kind;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "wrote " << kind << " to " << out << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporal graph expressiveness toolbox"};
    app.require_subcommand(1);
    bool as_json = false;
    unsigned seed = 0;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--seed", seed, "base RNG seed for numeric models");

    // wl
    auto* wl = app.add_subcommand("wl", "temporal color refinement");
    std::string wl_a, wl_b;
    Timestamp wl_t = 0;
    wl->add_option("--a", wl_a, "events file")->required();
    wl->add_option("--b", wl_b, "second events file (comparison mode)");
    wl->add_option("--time,-t", wl_t, "query time")->required();

    // tct
    auto* tct = app.add_subcommand("tct", "dump a temporal computation tree");
    std::string tct_g;
    std::int64_t tct_node = -1;
    Timestamp tct_t = 0;
    int tct_depth = 2;
    bool tct_mono = false;
    tct->add_option("--graph", tct_g, "events file")->required();
    tct->add_option("--node", tct_node, "root node")->required();
    tct->add_option("--time,-t", tct_t, "query time")->required();
    tct->add_option("--depth", tct_depth, "tree depth");
    tct->add_flag("--monotone", tct_mono, "strictly decreasing timestamps along paths");

    // posfeat
    auto* pf = app.add_subcommand("posfeat", "dump positional feature vectors");
    std::string pf_g, pf_norm;
    Timestamp pf_t = 0;
    int pf_dim = 4;
    pf->add_option("--graph", pf_g, "events file")->required();
    pf->add_option("--time,-t", pf_t, "query time")->required();
    pf->add_option("--dim", pf_dim, "vector dimension");
    pf->add_option("--normalize", pf_norm, "l1 for row normalization");

    // embed
    auto* em = app.add_subcommand("embed", "node or event embedding");
    std::string em_g, em_edge, em_mode = "exact", em_memory = "injective";
    std::int64_t em_node = -1;
    Timestamp em_t = 0;
    int em_layers = 1, em_dim = 4;
    bool em_nopos = false;
    em->add_option("--graph", em_g, "events file")->required();
    em->add_option("--edge", em_edge, "u,v,t event query");
    em->add_option("--node", em_node, "node query (with --time)");
    em->add_option("--time,-t", em_t, "query time for node queries");
    em->add_option("--layers", em_layers, "message passing depth");
    em->add_option("--dim", em_dim, "positional dimension");
    em->add_option("--mode", em_mode, "exact|numeric");
    em->add_option("--memory", em_memory, "identity|injective");
    em->add_flag("--no-pos", em_nopos, "disable positional features");

    // caw
    auto* cw = app.add_subcommand("caw", "anonymized causal walks for an event");
    std::string cw_g, cw_event;
    int cw_len = 3;
    cw->add_option("--graph", cw_g, "events file")->required();
    cw->add_option("--event", cw_event, "u,v,t event query")->required();
    cw->add_option("--len", cw_len, "walk length cap in nodes");

    // distinguish
    auto* di = app.add_subcommand("distinguish", "can a model tell two queries apart");
    std::string di_g, di_nodes, di_events, di_model = "mptgn", di_memory = "injective";
    Timestamp di_t = 0;
    int di_layers = 2, di_dim = 4;
    di->add_option("--graph", di_g, "events file")->required();
    di->add_option("--nodes", di_nodes, "u,v node pair");
    di->add_option("--events", di_events, "u1,v1,u2,v2 synchronous event pair");
    di->add_option("--time,-t", di_t, "query time")->required();
    di->add_option("--model", di_model, "twl|mptgn|pint|tgat|tgn_att|caw");
    di->add_option("--layers", di_layers, "depth (walk cap for caw)");
    di->add_option("--dim", di_dim, "pint positional dimension");
    di->add_option("--memory", di_memory, "identity|injective");

    // props
    auto* pr = app.add_subcommand("props", "diameter, girth, circuit rank");
    std::string pr_g;
    Timestamp pr_t = 0;
    pr->add_option("--graph", pr_g, "events file")->required();
    pr->add_option("--time,-t", pr_t, "query time")->required();

    // corpus
    auto* co = app.add_subcommand("corpus", "counterexample corpus");
    auto* co_list = co->add_subcommand("list", "list cases");
    auto* co_verify = co->add_subcommand("verify", "re-run every expectation");
    std::string co_case;
    co_verify->add_option("--case", co_case, "restrict to one case");
    co->require_subcommand(1);

    // injectivity-check
    auto* ic = app.add_subcommand("injectivity-check", "exhaustive aggregation injectivity");
    int ic_features = 2, ic_edge = 2, ic_n = 4;
    Timestamp ic_tmax = 2;
    ic->add_option("--features", ic_features, "node state alphabet size");
    ic->add_option("--edge-features", ic_edge, "edge feature alphabet size");
    ic->add_option("--tmax", ic_tmax, "max time delta");
    ic->add_option("--n", ic_n, "multiset size bound (strict)");

    // convert
    auto* cv = app.add_subcommand("convert", "snapshots <-> events");
    std::string cv_dtdg, cv_ctdg, cv_out;
    Timestamp cv_delta = 1;
    cv->add_option("--dtdg", cv_dtdg, "snapshots file to convert to events");
    cv->add_option("--ctdg", cv_ctdg, "events file to convert to snapshots");
    cv->add_option("--delta", cv_delta, "snapshot spacing");
    cv->add_option("--out", cv_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*wl) return cmd_wl(wl_a, wl_b, wl_t, as_json);
        if (*tct) return cmd_tct(tct_g, tct_node, tct_t, tct_depth, tct_mono, as_json);
        if (*pf) return cmd_posfeat(pf_g, pf_t, pf_dim, pf_norm, as_json);
        if (*em) {
            PintConfig cfg;
            cfg.layers = em_layers;
            cfg.dim = em_dim;
            cfg.use_positional = !em_nopos;
            cfg.memory = parse_memory(em_memory);
            cfg.seed = seed;
            if (em_mode == "exact")
                cfg.mode = PintMode::exact;
            else if (em_mode == "numeric")
                cfg.mode = PintMode::numeric;
            else
                throw UsageError("--mode: want exact|numeric");
            return cmd_embed(em_g, em_edge, em_node, em_t, cfg, as_json);
        }
        if (*cw) return cmd_caw(cw_g, cw_event, cw_len, as_json);
        if (*di) {
            ModelSpec spec;
            spec.kind = parse_model(di_model);
            spec.layers = di_layers;
            spec.pos_dim = di_dim;
            spec.memory = parse_memory(di_memory);
            spec.seed = seed;
            return cmd_distinguish(di_g, di_nodes, di_events, di_t, spec, as_json);
        }
        if (*pr) return cmd_props(pr_g, pr_t, as_json);
        if (*co) {
            if (*co_list) return cmd_corpus_list(as_json);
            if (*co_verify) return cmd_corpus_verify(co_case, as_json);
        }
        if (*ic) return cmd_injectivity(ic_features, ic_edge, ic_tmax, ic_n, as_json);
        if (*cv) return cmd_convert(cv_dtdg, cv_ctdg, cv_delta, cv_out, as_json);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
