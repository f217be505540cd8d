#include "rbd/lattice.hpp"

#include <sstream>

namespace rbd {

namespace {

void require_same_rank(std::size_t a, std::size_t b)
{
    if (a != b)
        throw LatticeError("lattice rank mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

} // namespace

DivisorClass::DivisorClass(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        throw LatticeError("a divisor class needs at least the h coefficient");
}

DivisorClass DivisorClass::zero(std::size_t rank)
{
    return DivisorClass(std::vector<std::int64_t>(rank, 0));
}

DivisorClass DivisorClass::hyperplane(std::size_t rank)
{
    return basis(rank, 0);
}

DivisorClass DivisorClass::basis(std::size_t rank, std::size_t index)
{
    if (index >= rank)
        throw LatticeError("basis index " + std::to_string(index) + " outside rank " + std::to_string(rank));
    std::vector<std::int64_t> v(rank, 0);
    v[index] = 1;
    return DivisorClass(std::move(v));
}

DivisorClass DivisorClass::extended(std::int64_t last) const
{
    auto v = coeffs_;
    v.push_back(last);
    return DivisorClass(std::move(v));
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o)
{
    require_same_rank(rank(), o.rank());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] = checked::add(coeffs_[i], o.coeffs_[i]);
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o)
{
    require_same_rank(rank(), o.rank());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] = checked::sub(coeffs_[i], o.coeffs_[i]);
    return *this;
}

DivisorClass operator*(std::int64_t k, const DivisorClass& c)
{
    auto v = c.coeffs_;
    for (auto& x : v)
        x = checked::mul(k, x);
    return DivisorClass(std::move(v));
}

std::string DivisorClass::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        os << (i ? ", " : "") << coeffs_[i];
    os << ')';
    return os.str();
}

RationalClass::RationalClass(const DivisorClass& c)
{
    coeffs_.reserve(c.rank());
    for (auto x : c.coeffs())
        coeffs_.emplace_back(x);
}

RationalClass RationalClass::zero(std::size_t rank)
{
    return RationalClass(std::vector<Rational>(rank));
}

RationalClass& RationalClass::operator+=(const RationalClass& o)
{
    require_same_rank(rank(), o.rank());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

RationalClass& RationalClass::operator-=(const RationalClass& o)
{
    require_same_rank(rank(), o.rank());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

RationalClass operator*(const Rational& k, const RationalClass& c)
{
    auto v = c.coeffs_;
    for (auto& x : v)
        x *= k;
    return RationalClass(std::move(v));
}

std::string RationalClass::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        os << (i ? ", " : "") << coeffs_[i];
    os << ')';
    return os.str();
}

std::int64_t pair(const DivisorClass& a, const DivisorClass& b)
{
    require_same_rank(a.rank(), b.rank());
    std::int64_t s = checked::mul(a[0], b[0]);
    for (std::size_t i = 1; i < a.rank(); ++i)
        s = checked::sub(s, checked::mul(a[i], b[i]));
    return s;
}

Rational pair(const RationalClass& a, const RationalClass& b)
{
    require_same_rank(a.rank(), b.rank());
    Rational s = a[0] * b[0];
    for (std::size_t i = 1; i < a.rank(); ++i)
        s -= a[i] * b[i];
    return s;
}

Rational pair(const RationalClass& a, const DivisorClass& b)
{
    return pair(a, RationalClass(b));
}

DivisorClass canonical(std::size_t n)
{
    std::vector<std::int64_t> v(n + 1, 1);
    v[0] = -3;
    return DivisorClass(std::move(v));
}

std::int64_t arithmetic_genus(const DivisorClass& c)
{
    auto k = canonical(c.rank() - 1);
    std::int64_t twice = checked::add(pair(c, c), pair(k, c));
    // C^2 + K.C = a0(a0 - 3) - sum ai(ai + 1), a sum of even numbers.
    if (twice % 2 != 0)
        throw LatticeError("adjunction parity violated for " + c.str());
    return checked::add(1, twice / 2);
}

} // namespace rbd
