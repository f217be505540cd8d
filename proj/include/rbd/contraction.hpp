#pragma once

// Contracting disjoint chains: negative definiteness, discrepancies, the
// pulled-back canonical class and its pairings.

#include "rbd/builder.hpp"
#include "rbd/chains.hpp"
#include "rbd/lattice.hpp"
#include "rbd/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbd {

class ContractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense square integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

    std::size_t size() const { return n_; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    bool is_symmetric() const;
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> data_;
};

/// M[i][j] = G_i . G_j.
IntMatrix chain_matrix(std::span<const DivisorClass> classes);

/// Plumbing matrix of a chain: -b_i on the diagonal, 1 off it.
IntMatrix plumbing_matrix(const Chain& c);

/// Leading principal minors D_1 .. D_n, exact (fraction-free elimination).
std::vector<std::int64_t> leading_minors(const IntMatrix& m);

/// Sylvester: (-1)^k D_k > 0 for every k. Throws ContractionError on a
/// non-symmetric matrix.
bool is_negative_definite(const IntMatrix& m);

/// Solves sum_i d_i M[i][j] = -kdotg[j] by Bareiss elimination with exact
/// back-substitution. Throws ContractionError when M is singular.
std::vector<Rational> discrepancies(const IntMatrix& m, std::span<const std::int64_t> kdotg);

/// The same system built from lattice classes: (K + sum d_i G_i) . G_j = 0.
std::vector<Rational> discrepancies(std::span<const DivisorClass> classes, const DivisorClass& k);

struct ChainContraction {
    std::string name;
    std::vector<std::string> curves;
    Chain chain;
    std::optional<CpqMatch> cpq;
    std::vector<TParams> t_params;
    bool class_t = false;
    bool negative_definite = false;
    std::int64_t lens_order = 0;
    std::vector<Rational> discrepancies;
};

struct NefEntry {
    std::string curve;
    Rational value;
};

struct ContractionReport {
    std::vector<ChainContraction> chains;
    RationalClass pullback;
    Rational ksq_singular;
    std::vector<NefEntry> nef_table;
    bool nef = false;
};

/// Checks and contracts one declared chain. Throws on adjacency violations
/// and when the form is not negative definite.
ChainContraction contract_chain(const SurfaceState& s, const std::string& chain_name);

/// K + sum over chains of sum_i d_i G_i. Also verifies that the chains are
/// pairwise disjoint.
RationalClass pullback_canonical(const SurfaceState& s, std::span<const std::string> chain_names);

/// Pairs the pullback with every registered curve outside the contracted
/// chains. nef is true iff all values are >= 0 and every discrepancy lies
/// in (0, 1). Only registered curves are tested.
ContractionReport nef_report(const SurfaceState& s, std::span<const std::string> chain_names,
                             const RationalClass& pullback);

Rational ksq_singular(const RationalClass& pullback);

} // namespace rbd
