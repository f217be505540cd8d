#include "rbd/chains.hpp"

#include "rbd/rational.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rbd {

Chain::Chain(std::vector<std::int64_t> bs) : bs_(std::move(bs))
{
    if (bs_.empty())
        throw ChainError("a chain needs at least one curve");
    for (auto b : bs_)
        if (b < 2)
            throw ChainError("chain entries must be >= 2, got " + std::to_string(b));
}

Chain Chain::reversed() const
{
    return Chain(std::vector<std::int64_t>(bs_.rbegin(), bs_.rend()));
}

bool Chain::is_palindrome() const
{
    return std::equal(bs_.begin(), bs_.begin() + static_cast<std::ptrdiff_t>(bs_.size() / 2), bs_.rbegin());
}

std::string Chain::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < bs_.size(); ++i)
        os << (i ? "," : "") << bs_[i];
    os << ']';
    return os.str();
}

CpqParams CpqParams::make(std::int64_t p, std::int64_t q)
{
    if (!(p > q && q > 0))
        throw ChainError("C(p,q) needs p > q > 0");
    if (checked::gcd(p, q) != 1)
        throw ChainError("C(p,q) needs gcd(p,q) = 1");
    return CpqParams{p, q};
}

const char* to_string(Orientation o)
{
    return o == Orientation::AsGiven ? "as-given" : "reversed";
}

Chain hj_expand(std::int64_t m, std::int64_t l)
{
    if (l < 1 || m <= l)
        throw ChainError("hj_expand needs m > l >= 1");
    if (checked::gcd(m, l) != 1)
        throw ChainError("hj_expand needs gcd(m, l) = 1");
    std::vector<std::int64_t> bs;
    // m/l = b - 1/(l/r) with b = ceil(m/l), r = b*l - m.
    while (l > 0) {
        std::int64_t b = (m + l - 1) / l;
        std::int64_t r = checked::sub(checked::mul(b, l), m);
        bs.push_back(b);
        m = l;
        l = r;
    }
    return Chain(std::move(bs));
}

HJFraction hj_value(const Chain& c)
{
    // Right to left: value = b_1, then value = b_i - 1/value.
    std::int64_t num = c.vec().back();
    std::int64_t den = 1;
    for (auto it = c.vec().rbegin() + 1; it != c.vec().rend(); ++it) {
        std::int64_t next = checked::sub(checked::mul(*it, num), den);
        den = num;
        num = next;
    }
    return HJFraction{num, den};
}

Chain cpq_chain(CpqParams params)
{
    auto p = CpqParams::make(params.p, params.q);
    return hj_expand(checked::mul(p.p, p.p), checked::sub(checked::mul(p.p, p.q), 1));
}

namespace {

std::int64_t isqrt(std::int64_t m)
{
    if (m < 0)
        return -1;
    auto r = static_cast<std::int64_t>(__builtin_sqrtl(static_cast<long double>(m)));
    while (r > 0 && static_cast<__int128>(r) * r > m)
        --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= m)
        ++r;
    return r;
}

std::optional<CpqParams> wahl_reading(HJFraction f)
{
    std::int64_t p = isqrt(f.m);
    if (p < 2 || p * p != f.m)
        return std::nullopt;
    if ((f.l + 1) % p != 0)
        return std::nullopt;
    std::int64_t q = (f.l + 1) / p;
    if (q <= 0 || q >= p || checked::gcd(p, q) != 1)
        return std::nullopt;
    return CpqParams{p, q};
}

bool is_base(const std::vector<std::int64_t>& bs)
{
    if (bs.size() == 1)
        return bs[0] == 4;
    if (bs.front() != 3 || bs.back() != 3)
        return false;
    return std::all_of(bs.begin() + 1, bs.end() - 1, [](std::int64_t b) { return b == 2; });
}

std::optional<std::vector<std::int64_t>> reduce_to_base(const std::vector<std::int64_t>& bs)
{
    if (is_base(bs))
        return bs;
    if (bs.size() < 2)
        return std::nullopt;
    // Undo "prepend 2, increment last".
    if (bs.front() == 2 && bs.back() >= 3) {
        std::vector<std::int64_t> next(bs.begin() + 1, bs.end());
        --next.back();
        if (auto r = reduce_to_base(next))
            return r;
    }
    // Undo "append 2, increment first".
    if (bs.back() == 2 && bs.front() >= 3) {
        std::vector<std::int64_t> next(bs.begin(), bs.end() - 1);
        --next.front();
        if (auto r = reduce_to_base(next))
            return r;
    }
    return std::nullopt;
}

} // namespace

std::optional<CpqMatch> recognize_cpq(const Chain& c)
{
    auto as_given = wahl_reading(hj_value(c));
    auto reversed = wahl_reading(hj_value(c.reversed()));
    if (!as_given && !reversed)
        return std::nullopt;

    CpqMatch match;
    if (as_given && 2 * as_given->q <= as_given->p) {
        match.params = *as_given;
        match.orientation = Orientation::AsGiven;
        if (reversed && !(*reversed == *as_given))
            match.alternate = reversed;
    } else if (reversed && 2 * reversed->q <= reversed->p) {
        match.params = *reversed;
        match.orientation = Orientation::Reversed;
        if (as_given && !(*as_given == *reversed))
            match.alternate = as_given;
    } else {
        // Unreachable for genuine Wahl chains; keep whatever matched.
        match.params = as_given ? *as_given : *reversed;
        match.orientation = as_given ? Orientation::AsGiven : Orientation::Reversed;
    }
    return match;
}

bool is_class_T(const Chain& c)
{
    return class_T_base(c).has_value();
}

std::optional<Chain> class_T_base(const Chain& c)
{
    if (auto base = reduce_to_base(c.vec()))
        return Chain(*base);
    return std::nullopt;
}

std::vector<TParams> t_params(const Chain& c)
{
    if (!is_class_T(c))
        throw ChainError("t_params: " + c.str() + " is not a class-T chain");
    std::set<TParams> found;
    for (auto f : {hj_value(c), hj_value(c.reversed())}) {
        for (std::int64_t n = 2; static_cast<__int128>(n) * n <= f.m; ++n) {
            if (f.m % (n * n) != 0)
                continue;
            std::int64_t d = f.m / (n * n);
            std::int64_t dn = d * n;
            if ((f.l + 1) % dn != 0)
                continue;
            std::int64_t a = (f.l + 1) / dn;
            if (a <= 0 || checked::gcd(a, n) != 1)
                continue;
            found.insert(TParams{d, n, std::min(a, n - a)});
        }
    }
    return {found.begin(), found.end()};
}

std::vector<Chain> enumerate_T(std::size_t max_len, std::int64_t max_b)
{
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::vector<std::int64_t>> frontier;
    auto visit = [&](std::vector<std::int64_t> bs) {
        if (bs.size() > max_len)
            return;
        if (std::any_of(bs.begin(), bs.end(), [&](std::int64_t b) { return b > max_b; }))
            return;
        if (seen.insert(bs).second)
            frontier.push_back(std::move(bs));
    };

    visit({4});
    for (std::size_t len = 2; len <= max_len; ++len) {
        std::vector<std::int64_t> base(len, 2);
        base.front() = base.back() = 3;
        visit(base);
    }
    // Each step grows the chain and never lowers an entry, so pruning by the
    // bounds keeps every ancestor of an in-bounds chain.
    while (!frontier.empty()) {
        auto bs = std::move(frontier.back());
        frontier.pop_back();

        std::vector<std::int64_t> left{2};
        left.insert(left.end(), bs.begin(), bs.end());
        ++left.back();
        visit(std::move(left));

        auto right = bs;
        ++right.front();
        right.push_back(2);
        visit(std::move(right));
    }

    std::vector<Chain> out;
    out.reserve(seen.size());
    for (const auto& bs : seen)
        out.emplace_back(bs);
    return out;
}

bool is_rdp_chain(const Chain& c)
{
    return std::all_of(c.vec().begin(), c.vec().end(), [](std::int64_t b) { return b == 2; });
}

} // namespace rbd
