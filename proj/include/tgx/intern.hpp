#pragma once

// Process-wide interning of structured keys.
//
// Every exact-mode construction in this library (colors, tree codes, memory
// states, embeddings, walk codes) bottoms out in "give me a small integer id
// for this structure, the same id iff the structure is identical". The
// registry below provides that: keys are flat int64 token streams produced by
// KeyBuilder, ids are handed out in first-come order and never change for the
// lifetime of the process.
//
// Injectivity of the encoding: each atom is written as a tag token followed
// by a fixed number of payload tokens (1 for ints and ids, 0 for list
// brackets), so the token stream is prefix-free decodable and two distinct
// structures can never serialize to the same key.

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace tgx {

using CanonicalId = std::int64_t;

// Domain tags. Each distinct constructor of interned values gets its own tag
// so keys from different modules can never collide.
enum class KeyTag : std::int64_t {
    feature_tuple = 1,
    twl_init,
    twl_refine,
    tct_node,
    mem_init,
    mem_message,
    mem_aggregate,
    mem_update,
    pint_layer0,
    pint_update,
    pint_edge,
    exact_scalar,
    caw_walk,
    caw_event,
    caw_graph,
    node_state,
};

namespace detail {
constexpr std::int64_t token_int = 1;   // followed by one payload token
constexpr std::int64_t token_id = 2;    // followed by one payload token
constexpr std::int64_t token_open = 3;  // list bracket, no payload
constexpr std::int64_t token_close = 4; // list bracket, no payload
constexpr std::int64_t token_tag = 5;   // followed by one payload token

struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const {
        // FNV-1a over the raw tokens. Collisions only cost bucket sharing;
        // equality is always checked on the full token stream.
        std::uint64_t h = 14695981039346656037ull;
        for (std::int64_t tok : key) {
            h ^= static_cast<std::uint64_t>(tok);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};
} // namespace detail

// Builds the flat token stream for one key.
class KeyBuilder {
public:
    explicit KeyBuilder(KeyTag tag) {
        tokens_.push_back(detail::token_tag);
        tokens_.push_back(static_cast<std::int64_t>(tag));
    }

    KeyBuilder& add_int(std::int64_t x) {
        tokens_.push_back(detail::token_int);
        tokens_.push_back(x);
        return *this;
    }

    KeyBuilder& add_id(CanonicalId id) {
        tokens_.push_back(detail::token_id);
        tokens_.push_back(id);
        return *this;
    }

    KeyBuilder& add_ints(const std::vector<std::int64_t>& xs) {
        open();
        for (std::int64_t x : xs) add_int(x);
        close();
        return *this;
    }

    KeyBuilder& open() {
        tokens_.push_back(detail::token_open);
        ++depth_;
        return *this;
    }

    KeyBuilder& close() {
        if (depth_ == 0) throw std::logic_error("KeyBuilder: unbalanced close");
        tokens_.push_back(detail::token_close);
        --depth_;
        return *this;
    }

    const std::vector<std::int64_t>& tokens() const {
        if (depth_ != 0) throw std::logic_error("KeyBuilder: unclosed list");
        return tokens_;
    }

private:
    std::vector<std::int64_t> tokens_;
    int depth_ = 0;
};

// Thread-safe first-writer-wins registry. Ids start at 1 and follow insertion
// order, so they are stable within a run but carry no meaning across runs;
// only equality of ids is ever significant.
class InternRegistry {
public:
    static InternRegistry& instance() {
        static InternRegistry reg;
        return reg;
    }

    CanonicalId id_of(const std::vector<std::int64_t>& key) {
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = table_.try_emplace(key, next_);
        if (inserted) ++next_;
        return it->second;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return table_.size();
    }

private:
    InternRegistry() = default;
    mutable std::mutex mu_;
    std::unordered_map<std::vector<std::int64_t>, CanonicalId, detail::KeyHash> table_;
    CanonicalId next_ = 1;
};

inline CanonicalId intern(const KeyBuilder& kb) {
    return InternRegistry::instance().id_of(kb.tokens());
}

// Common case: a raw feature tuple (or any plain int vector) as a value.
inline CanonicalId intern_tuple(KeyTag tag, const std::vector<std::int64_t>& xs) {
    KeyBuilder kb(tag);
    kb.add_ints(xs);
    return intern(kb);
}

} // namespace tgx
