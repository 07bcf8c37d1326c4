#pragma once

// Exact arithmetic for injective multiset aggregation.
//
// The aggregation encodes a multiset of (x, e, t) triples as the number
//
//     sum_i base^(-k * psi(x_i, e_i)) * base^(-beta * t_i)
//
// where psi is the Cantor pairing function, beta = ceil(log_base N) for a
// strict bound N on multiset sizes, and k = beta * (t_max + 1). Each triple
// owns a private window of base-`base` digit slots, so the digit expansion of
// the sum recovers the multiset exactly and equality of sums is equality of
// multisets.
//
// Values are kept in canonical sparse positional form, a map from exponent to
// digit. Enumeration indices (and hence exponents) can be astronomically
// large, so materializing a plain numerator/denominator is only possible for
// small exponents; ExactScalar::to_rational does that on demand and the tests
// use it to cross-check the sparse arithmetic against boost rationals.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tgx/intern.hpp"

namespace tgx {

using Rational = boost::multiprecision::cpp_rational;

namespace detail {
inline std::int64_t checked_i64(__int128 x, const char* what) {
    if (x > static_cast<__int128>(INT64_MAX) || x < static_cast<__int128>(INT64_MIN))
        throw std::overflow_error(std::string("exact: overflow in ") + what);
    return static_cast<std::int64_t>(x);
}
} // namespace detail

// Cantor pairing (a + b)(a + b + 1)/2 + b, a bijection N x N -> N.
inline std::int64_t enumerate_pair(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) throw std::invalid_argument("enumerate_pair: negative argument");
    __int128 s = static_cast<__int128>(a) + b;
    __int128 z = s * (s + 1) / 2 + b;
    return detail::checked_i64(z, "enumerate_pair");
}

// Parameters fixing one instance of the aggregation scheme. All multisets
// that take part in a single comparison must share the same parameters.
struct AggParams {
    std::int64_t N = 0;     // strict upper bound on multiset size
    std::int64_t t_max = 0; // largest admissible timestamp
    std::int64_t base = 10; // digit radix
    std::int64_t beta = 0;  // ceil(log_base N)
    std::int64_t k = 0;     // beta * (t_max + 1), slot window per (x, e)
};

inline AggParams make_agg_params(std::int64_t n_bound, std::int64_t t_max,
                                 std::int64_t base = 10) {
    if (base < 2) throw std::invalid_argument("make_agg_params: base must be >= 2");
    if (n_bound < 2) throw std::invalid_argument("make_agg_params: N must be >= 2");
    if (t_max < 0) throw std::invalid_argument("make_agg_params: t_max must be >= 0");
    AggParams p;
    p.N = n_bound;
    p.t_max = t_max;
    p.base = base;
    p.beta = 0;
    // Smallest beta with base^beta >= N.
    __int128 pow = 1;
    while (pow < n_bound) {
        pow *= base;
        ++p.beta;
    }
    p.k = detail::checked_i64(static_cast<__int128>(p.beta) * (t_max + 1), "k");
    return p;
}

// A non-negative number of the form sum_E digit_E * base^(-E), held as the
// canonical sparse digit map with 1 <= digit < base. Exponents may be
// negative (values >= 1 arise once carries cross slot zero). Canonical form
// makes equality testing and interning trivial.
class ExactScalar {
public:
    ExactScalar() = default;
    explicit ExactScalar(std::int64_t base) : base_(base) {
        if (base < 2) throw std::invalid_argument("ExactScalar: base must be >= 2");
    }

    // Builds a scalar from raw slot counts (exponent -> count), normalizing
    // carries so every digit lands in [1, base).
    static ExactScalar from_slots(std::int64_t base,
                                  const std::map<std::int64_t, std::int64_t>& counts) {
        ExactScalar s(base);
        std::map<std::int64_t, std::int64_t> work(counts);
        while (!work.empty()) {
            auto it = std::prev(work.end()); // largest exponent first; its
            auto [exp, c] = *it;             // carry target exp-1 is smaller
            work.erase(it);
            if (c < 0) throw std::logic_error("ExactScalar: negative slot count");
            std::int64_t digit = c % base;
            std::int64_t carry = c / base;
            if (carry > 0) work[exp - 1] += carry;
            if (digit > 0) s.digits_[exp] = digit;
        }
        return s;
    }

    std::int64_t base() const { return base_; }
    const std::map<std::int64_t, std::int64_t>& digits() const { return digits_; }
    bool is_zero() const { return digits_.empty(); }

    bool operator==(const ExactScalar& other) const {
        if (base_ != other.base_)
            throw std::invalid_argument("ExactScalar: comparing values with different bases");
        return digits_ == other.digits_;
    }
    bool operator!=(const ExactScalar& other) const { return !(*this == other); }

    CanonicalId canonical_id() const {
        KeyBuilder kb(KeyTag::exact_scalar);
        kb.add_int(base_);
        kb.open();
        for (const auto& [exp, digit] : digits_) kb.add_int(exp).add_int(digit);
        kb.close();
        return intern(kb);
    }

    // Materializes the value as an explicit rational. Only feasible when the
    // largest exponent magnitude is moderate; guarded so runaway enumeration
    // indices fail loudly instead of allocating gigabytes.
    Rational to_rational(std::int64_t max_exp_magnitude = 1 << 20) const {
        using boost::multiprecision::cpp_int;
        Rational r = 0;
        for (const auto& [exp, digit] : digits_) {
            std::int64_t mag = exp >= 0 ? exp : -exp;
            if (mag > max_exp_magnitude)
                throw std::overflow_error("ExactScalar::to_rational: exponent too large");
            cpp_int p = boost::multiprecision::pow(cpp_int(base_), static_cast<unsigned>(mag));
            if (exp >= 0)
                r += Rational(cpp_int(digit), p);
            else
                r += Rational(cpp_int(digit) * p);
        }
        return r;
    }

private:
    std::int64_t base_ = 10;
    std::map<std::int64_t, std::int64_t> digits_;
};

// One multiset element: x and e are enumeration indices of the state and the
// edge feature (any injective mapping into the non-negative integers works;
// interned ids are used in practice), t is the timestamp.
struct MultisetTerm {
    std::int64_t x = 0;
    std::int64_t e = 0;
    std::int64_t t = 0;
};

// Digit slot of one term under the given parameters.
inline std::int64_t term_exponent(const MultisetTerm& term, const AggParams& p) {
    if (term.x < 0 || term.e < 0)
        throw std::invalid_argument("term_exponent: enumeration indices must be non-negative");
    if (term.t < 0 || term.t > p.t_max)
        throw std::invalid_argument("term_exponent: timestamp outside [0, t_max]");
    std::int64_t psi = enumerate_pair(term.x, term.e);
    __int128 exp = static_cast<__int128>(p.k) * psi + static_cast<__int128>(p.beta) * term.t;
    return detail::checked_i64(exp, "term_exponent");
}

// The injective aggregation: equal results iff equal multisets, provided all
// operands respect the size bound and share the parameters.
inline ExactScalar injective_multiset_sum(const std::vector<MultisetTerm>& terms,
                                          const AggParams& p) {
    if (static_cast<std::int64_t>(terms.size()) >= p.N)
        throw std::invalid_argument("injective_multiset_sum: multiset size must stay below N");
    std::map<std::int64_t, std::int64_t> slots;
    for (const MultisetTerm& term : terms) slots[term_exponent(term, p)] += 1;
    return ExactScalar::from_slots(p.base, slots);
}

// alpha^(-beta * dt) as an exact value, with beta given as beta_num/beta_den.
// Representable exactly only when alpha is an integer radix and the overall
// exponent is integral; anything else is rejected rather than approximated.
inline ExactScalar time_decay_term(std::int64_t dt, std::int64_t alpha,
                                   std::int64_t beta_num, std::int64_t beta_den = 1) {
    if (dt < 0) throw std::invalid_argument("time_decay_term: dt must be >= 0");
    if (alpha < 2) throw std::invalid_argument("time_decay_term: alpha must be an integer >= 2");
    if (beta_den <= 0 || beta_num < 0)
        throw std::invalid_argument("time_decay_term: beta must be a non-negative rational");
    __int128 num = static_cast<__int128>(beta_num) * dt;
    if (num % beta_den != 0)
        throw std::invalid_argument("time_decay_term: exponent not representable in exact mode");
    std::int64_t exp = detail::checked_i64(num / beta_den, "time_decay_term");
    std::map<std::int64_t, std::int64_t> slots;
    slots[exp] = 1;
    return ExactScalar::from_slots(alpha, slots);
}

} // namespace tgx
