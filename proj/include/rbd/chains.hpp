#pragma once

// Hirzebruch-Jung continued fractions and the linear chains they describe:
// Wahl configurations C_{p,q} and class-T chains.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbd {

class ChainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Linear plumbing [b_k, ..., b_1] of spheres with self-intersections -b_i.
/// Non-empty, every entry >= 2.
class Chain {
public:
    explicit Chain(std::vector<std::int64_t> bs);
    Chain(std::initializer_list<std::int64_t> bs) : Chain(std::vector<std::int64_t>(bs)) {}

    std::span<const std::int64_t> entries() const { return bs_; }
    const std::vector<std::int64_t>& vec() const { return bs_; }
    std::size_t size() const { return bs_.size(); }
    std::int64_t operator[](std::size_t i) const { return bs_.at(i); }

    Chain reversed() const;
    bool is_palindrome() const;

    friend bool operator==(const Chain&, const Chain&) = default;
    friend auto operator<=>(const Chain& a, const Chain& b) { return a.bs_ <=> b.bs_; }

    /// "[3,2,2,2,2,2,10,2]".
    std::string str() const;

private:
    std::vector<std::int64_t> bs_;
};

/// m/l with m > l >= 1 and gcd(m, l) = 1.
struct HJFraction {
    std::int64_t m = 0;
    std::int64_t l = 0;
    friend bool operator==(const HJFraction&, const HJFraction&) = default;
};

/// p > q > 0, gcd(p, q) = 1.
struct CpqParams {
    std::int64_t p = 0;
    std::int64_t q = 0;
    static CpqParams make(std::int64_t p, std::int64_t q);
    friend bool operator==(const CpqParams&, const CpqParams&) = default;
};

/// Cyclic quotient singularity 1/(dn^2)(1, dna - 1) with gcd(a, n) = 1.
struct TParams {
    std::int64_t d = 0;
    std::int64_t n = 0;
    std::int64_t a = 0;
    friend bool operator==(const TParams&, const TParams&) = default;
    friend auto operator<=>(const TParams&, const TParams&) = default;
};

enum class Orientation { AsGiven, Reversed };

const char* to_string(Orientation o);

/*
 * Result of matching a chain against the Wahl family.
 *
 * Reversing C_{p,q} yields C_{p,p-q}, so a Wahl chain is always Wahl in both
 * orientations. The reported params are the canonical representative with
 * 2q <= p; `orientation` says which reading of the chain produces it, and
 * `alternate` carries the other reading (p, p - q) when it differs.
 */
struct CpqMatch {
    CpqParams params;
    Orientation orientation = Orientation::AsGiven;
    std::optional<CpqParams> alternate;
};

/// Ceiling-and-reciprocal expansion of m/l. Throws ChainError unless
/// m > l >= 1 and gcd(m, l) = 1.
Chain hj_expand(std::int64_t m, std::int64_t l);

/// Inverse of hj_expand.
HJFraction hj_value(const Chain& c);

/// hj_expand(p^2, pq - 1).
Chain cpq_chain(CpqParams params);

std::optional<CpqMatch> recognize_cpq(const Chain& c);

/// Membership in the closure of [4] and [3, 2^j, 3] (j >= 0) under
/// "prepend 2 and increment the last entry" / "append 2 and increment the
/// first entry". All-2 chains are not members.
bool is_class_T(const Chain& c);

/// The base chain a class-T chain reduces to, if any.
std::optional<Chain> class_T_base(const Chain& c);

/// All (d, n, a) with dn^2 = m, dna - 1 = l, gcd(a, n) = 1, n >= 2, where
/// (m, l) runs over both orientations of the chain and a is normalised to
/// a <= n - a. Sorted by ascending d. Throws ChainError for non-class-T input.
std::vector<TParams> t_params(const Chain& c);

/// Class-T chains with length <= max_len and entries <= max_b, by forward
/// closure from the base cases; sorted lexicographically.
std::vector<Chain> enumerate_T(std::size_t max_len, std::int64_t max_b);

/// Every entry equals 2 (an A_k configuration).
bool is_rdp_chain(const Chain& c);

} // namespace rbd
