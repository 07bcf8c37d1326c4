#pragma once

// Deterministic numeric building blocks shared by the simulated baselines
// and the numeric embedding mode: seeded affine maps standing in for learned
// weights, the cosine time encoder, and feature padding.
//
// All parameters derive from a user-visible seed through a fixed sampling
// order, so a given (seed, architecture) pair always produces identical
// floating point results within a build.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "tgx/graph.hpp"

namespace tgx {

using Vec = std::vector<double>;

struct Affine {
    std::vector<Vec> w; // out_dim rows of in_dim weights
    Vec b;

    Vec apply(const Vec& x) const {
        if (!w.empty() && x.size() != w.front().size())
            throw std::invalid_argument("Affine: input dimension mismatch");
        Vec out(b);
        for (std::size_t r = 0; r < w.size(); ++r)
            for (std::size_t c = 0; c < x.size(); ++c) out[r] += w[r][c] * x[c];
        return out;
    }
};

inline Affine make_affine(std::size_t out_dim, std::size_t in_dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double scale = 1.0 / std::sqrt(static_cast<double>(in_dim ? in_dim : 1));
    Affine a;
    a.w.assign(out_dim, Vec(in_dim, 0.0));
    a.b.assign(out_dim, 0.0);
    for (auto& row : a.w)
        for (double& x : row) x = dist(rng) * scale;
    for (double& x : a.b) x = dist(rng) * scale;
    return a;
}

// Two-layer perceptron with tanh hidden activation.
struct Mlp {
    Affine first;
    Affine second;

    Vec apply(const Vec& x) const {
        Vec h = first.apply(x);
        for (double& v : h) v = std::tanh(v);
        return second.apply(h);
    }
};

inline Mlp make_mlp(std::size_t out_dim, std::size_t in_dim, std::size_t hidden,
                    std::mt19937_64& rng) {
    Mlp m;
    m.first = make_affine(hidden, in_dim, rng);
    m.second = make_affine(out_dim, hidden, rng);
    return m;
}

// phi(dt) = [cos(omega_i * dt + b_i)]_i.
struct TimeEncoderParams {
    Vec omega;
    Vec bias;
};

inline TimeEncoderParams make_time_encoder(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> omega_dist(0.1, 2.0);
    std::uniform_real_distribution<double> bias_dist(0.0, 3.141592653589793);
    TimeEncoderParams p;
    p.omega.resize(dim);
    p.bias.resize(dim);
    for (double& x : p.omega) x = omega_dist(rng);
    for (double& x : p.bias) x = bias_dist(rng);
    return p;
}

inline Vec time_encode(const TimeEncoderParams& p, double dt) {
    Vec out(p.omega.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::cos(p.omega[i] * dt + p.bias[i]);
    return out;
}

// Feature tuples vary in length; numeric models consume them padded to a
// fixed width with a -1 sentinel (feature values themselves are >= 0, so
// padding never collides with data).
inline Vec pad_features(const FeatureTuple& feat, std::size_t width) {
    if (feat.size() > width) throw std::invalid_argument("pad_features: tuple wider than pad width");
    Vec out(width, -1.0);
    for (std::size_t i = 0; i < feat.size(); ++i) out[i] = static_cast<double>(feat[i]);
    return out;
}

inline std::size_t max_node_feature_width(const TemporalGraph& g) {
    std::size_t w = 0;
    for (const auto& [node, feat] : g.node_feats) w = std::max(w, feat.size());
    return w;
}

inline std::size_t max_edge_feature_width(const TemporalGraph& g) {
    std::size_t w = 0;
    for (const Event& ev : g.events) w = std::max(w, ev.feat.size());
    return w;
}

inline Vec concat(const Vec& a, const Vec& b) {
    Vec out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace tgx
