#pragma once

// Topological bookkeeping for the rational blow-down and the smoothing, plus
// the fundamental-group kill certificate.

#include "rbd/chains.hpp"
#include "rbd/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbd {

class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FourManifoldInvariants {
    std::int64_t b2_plus = 0;
    std::int64_t b2_minus = 0;

    std::int64_t b2() const { return b2_plus + b2_minus; }
    std::int64_t euler() const { return 2 + b2(); }
    std::int64_t signature() const { return b2_plus - b2_minus; }
    /// 2e + 3 sigma; equals K^2 for a complex surface.
    std::int64_t ksq_smooth() const { return 2 * euler() + 3 * signature(); }

    friend bool operator==(const FourManifoldInvariants&, const FourManifoldInvariants&) = default;
};

/// CP^2 # k(-CP^2).
FourManifoldInvariants blown_up_plane(std::int64_t blowups);

/// Replacing each chain neighbourhood by a rational ball removes its length
/// from b2^-. Throws TopologyError if more is removed than there is.
FourManifoldInvariants blowdown_invariants(const FourManifoldInvariants& before,
                                           std::span<const std::size_t> lengths);

/// Order of H_1 of the lens space bounding the chain: the numerator m of its
/// continued fraction.
std::int64_t lens_order(const Chain& c);

struct SmoothingInvariants {
    FourManifoldInvariants topology;
    std::int64_t ksq = 0;
    std::int64_t chi = 0;     // holomorphic Euler characteristic, (K^2 + e)/12
    std::int64_t pg = 0;      // with q = 0
    std::int64_t chi_2k = 0;  // chi + K^2
    bool noether = false;     // 2 p_g - 4 <= K^2
    std::vector<std::string> assumptions;
};

/// Numerology of the smoothing X_t, computed from the blow-down of the
/// ambient surface. K^2 of the singular surface must match 2e + 3 sigma of
/// the blow-down; otherwise TopologyError.
SmoothingInvariants smoothing_invariants(const Rational& ksq_x, std::span<const std::size_t> lengths,
                                         const FourManifoldInvariants& ambient);

bool noether_ok(std::int64_t pg, std::int64_t ksq);
std::int64_t chi_2k(std::int64_t chi, std::int64_t ksq);

// Fundamental group certificate.
//
// Each node is a contracted chain whose boundary lens space has cyclic
// pi_1 of the given order, generated by a meridian of a chain curve. An edge
// is a (-1)-curve meeting two chains; it gives a disk relating the two
// meridians: the meridian of side a raised to power k_a equals the meridian
// of side b raised to k_b. A side attached at an end curve has power 1.

enum class Attachment { End, Mid };

struct EdgeSide {
    std::size_t node = 0;
    Attachment attachment = Attachment::End;
    std::optional<std::int64_t> power; // end: 1; mid: as declared, unknown if absent
};

struct Pi1Edge {
    std::string witness;
    EdgeSide a;
    EdgeSide b;
};

struct Pi1Graph {
    std::vector<std::string> nodes;
    std::vector<std::int64_t> orders;
    std::vector<Pi1Edge> edges;

    std::size_t add_node(std::string name, std::int64_t order);
    void add_edge(std::string witness, EdgeSide a, EdgeSide b);
};

enum class KillRule { Gcd, Propagation };
const char* to_string(KillRule r);

struct KillStep {
    KillRule rule = KillRule::Gcd;
    std::string witness;
    std::int64_t gcd = 0; // gcd of the two lens orders, Gcd rule only
    std::vector<std::string> killed;
};

struct Pi1Certificate {
    bool pass = false;
    std::vector<KillStep> trace;
    std::vector<std::string> surviving;
};

/// Runs propagation to a fixpoint, then fires the gcd rule on the applicable
/// edge with the smallest order product, and repeats. PASS when every node
/// is dead. Monotone: adding edges never revives a node.
Pi1Certificate pi1_certificate(const Pi1Graph& g);

} // namespace rbd
