#pragma once

// Intersection theory on H^2 of the plane blown up n times:
// the odd unimodular lattice <1> + n<-1> with basis (h; e_1 .. e_n).

#include "rbd/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbd {

class LatticeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Integral class: coefficient of h, then of each exceptional basis vector in
/// creation order.
class DivisorClass {
public:
    DivisorClass() = default;
    explicit DivisorClass(std::vector<std::int64_t> coeffs);
    DivisorClass(std::initializer_list<std::int64_t> coeffs) : DivisorClass(std::vector<std::int64_t>(coeffs)) {}

    static DivisorClass zero(std::size_t rank);
    static DivisorClass hyperplane(std::size_t rank);
    /// Basis vector e_index (1-based, so index 0 is h).
    static DivisorClass basis(std::size_t rank, std::size_t index);

    std::size_t rank() const { return coeffs_.size(); }
    std::span<const std::int64_t> coeffs() const { return coeffs_; }
    std::int64_t operator[](std::size_t i) const { return coeffs_.at(i); }

    /// Same class in the lattice with one more basis vector, with the given
    /// coefficient on it.
    DivisorClass extended(std::int64_t last = 0) const;

    DivisorClass& operator+=(const DivisorClass& o);
    DivisorClass& operator-=(const DivisorClass& o);
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(std::int64_t k, const DivisorClass& c);
    DivisorClass operator-() const { return -1 * *this; }

    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

    /// "(c0, c1, ...)".
    std::string str() const;

private:
    std::vector<std::int64_t> coeffs_;
};

/// Q-divisor class with the same basis as DivisorClass.
class RationalClass {
public:
    RationalClass() = default;
    explicit RationalClass(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}
    explicit RationalClass(const DivisorClass& c);

    static RationalClass zero(std::size_t rank);

    std::size_t rank() const { return coeffs_.size(); }
    std::span<const Rational> coeffs() const { return coeffs_; }
    const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }

    RationalClass& operator+=(const RationalClass& o);
    RationalClass& operator-=(const RationalClass& o);
    friend RationalClass operator+(RationalClass a, const RationalClass& b) { return a += b; }
    friend RationalClass operator-(RationalClass a, const RationalClass& b) { return a -= b; }
    friend RationalClass operator*(const Rational& k, const RationalClass& c);

    friend bool operator==(const RationalClass&, const RationalClass&) = default;

    std::string str() const;

private:
    std::vector<Rational> coeffs_;
};

/// a0*b0 - sum_{i>=1} ai*bi. Throws LatticeError on rank mismatch.
std::int64_t pair(const DivisorClass& a, const DivisorClass& b);
Rational pair(const RationalClass& a, const RationalClass& b);
Rational pair(const RationalClass& a, const DivisorClass& b);

inline std::int64_t self_intersection(const DivisorClass& c) { return pair(c, c); }

/// K = -3h + sum e_i on the plane blown up n times (lattice rank n + 1).
DivisorClass canonical(std::size_t n);

/// Adjunction: 1 + (C.C + K.C) / 2.
std::int64_t arithmetic_genus(const DivisorClass& c);

} // namespace rbd
