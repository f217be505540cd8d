#pragma once

// Reference computations for the tests, written against Boost.Multiprecision
// so they share no arithmetic with the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;
using Bs = std::vector<std::int64_t>;

/// b_1 - 1/(b_2 - 1/(... - 1/b_k)).
inline Q continued_fraction(const Bs& bs)
{
    Q x = bs.back();
    for (auto it = bs.rbegin() + 1; it != bs.rend(); ++it)
        x = Q(*it) - 1 / x;
    return x;
}

/// Gauss-Jordan over Q. Solves A x = b for square non-singular A.
inline std::vector<Q> solve(std::vector<std::vector<Q>> a, std::vector<Q> b)
{
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (a[p][c] == 0)
            ++p;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0)
                continue;
            Q f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<Q> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[i] / a[i][i];
    return x;
}

inline Q determinant(std::vector<std::vector<Q>> a)
{
    const std::size_t n = a.size();
    Q det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Q f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

/// Discrepancies of a chain from the plumbing matrix and adjunction
/// (K.G_i = b_i - 2).
inline std::vector<Q> chain_discrepancies(const Bs& bs)
{
    const std::size_t n = bs.size();
    std::vector<std::vector<Q>> m(n, std::vector<Q>(n, 0));
    std::vector<Q> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = -bs[i];
        if (i + 1 < n)
            m[i][i + 1] = m[i + 1][i] = 1;
        rhs[i] = -(bs[i] - 2);
    }
    return solve(m, rhs);
}

/// Numeric test for a non-RDP class-T chain: m/l = dn^2 / (dna - 1) with
/// n >= 2, 0 < a < n, gcd(a, n) = 1.
inline bool numeric_class_T(const Bs& bs)
{
    Q v = continued_fraction(bs);
    Int m = numerator(v), l = denominator(v);
    for (Int n = 2; n * n <= m; ++n) {
        if (m % (n * n) != 0)
            continue;
        Int d = m / (n * n);
        if ((l + 1) % (d * n) != 0)
            continue;
        Int a = (l + 1) / (d * n);
        if (a > 0 && a < n && gcd(a, n) == 1)
            return true;
    }
    return false;
}

/// Every chain with entries in [2, max_b] and length <= max_len that passes
/// numeric_class_T.
inline std::set<Bs> brute_class_T(std::size_t max_len, std::int64_t max_b)
{
    std::set<Bs> out;
    Bs cur;
    std::function<void()> rec = [&] {
        if (!cur.empty() && numeric_class_T(cur))
            out.insert(cur);
        if (cur.size() == max_len)
            return;
        for (std::int64_t b = 2; b <= max_b; ++b) {
            cur.push_back(b);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

/// Forward closure of the two growth steps from [4] and [3, 2^j, 3],
/// without pruning tricks: grow until the length bound, then filter.
inline std::set<Bs> closure_class_T(std::size_t max_len, std::int64_t max_b)
{
    std::set<Bs> seen;
    std::vector<Bs> todo{{4}};
    for (std::size_t len = 2; len <= max_len; ++len) {
        Bs base(len, 2);
        base.front() = base.back() = 3;
        todo.push_back(base);
    }
    while (!todo.empty()) {
        Bs c = todo.back();
        todo.pop_back();
        if (c.size() > max_len || !seen.insert(c).second)
            continue;
        Bs left{2};
        left.insert(left.end(), c.begin(), c.end());
        ++left.back();
        todo.push_back(left);
        Bs right = c;
        ++right.front();
        right.push_back(2);
        todo.push_back(right);
    }
    std::set<Bs> out;
    for (const auto& c : seen)
        if (std::all_of(c.begin(), c.end(), [&](std::int64_t b) { return b <= max_b; }))
            out.insert(c);
    return out;
}

} // namespace oracle
