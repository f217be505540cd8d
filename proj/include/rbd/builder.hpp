#pragma once

// Blow-up calculus on the Picard lattice of a blown-up plane.

#include "rbd/chains.hpp"
#include "rbd/lattice.hpp"
#include "rbd/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace rbd {

class BuildError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two curves of a declared chain pair to the wrong value.
class AdjacencyError : public BuildError {
public:
    AdjacencyError(std::string chain, std::string first, std::string second, std::int64_t value, std::int64_t wanted);

    const std::string& chain() const { return chain_; }
    const std::string& first() const { return first_; }
    const std::string& second() const { return second_; }
    std::int64_t value() const { return value_; }

private:
    std::string chain_, first_, second_;
    std::int64_t value_;
};

struct Incidence {
    std::string curve;
    std::int64_t multiplicity = 1;
    friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// One point blow-up. Infinitely near centers are expressed by listing the
/// previous exceptional curve among the incidences.
struct BlowupRecord {
    std::string exceptional_name;
    std::vector<Incidence> incidences;
    friend bool operator==(const BlowupRecord&, const BlowupRecord&) = default;
};

struct CurveRecord {
    std::string name;
    DivisorClass cls;
    friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

using HistoryStep = std::variant<CurveRecord, BlowupRecord>;

/// Building block of class expressions: h, K, a registered curve (its current
/// class), or the exceptional basis vector created by a named blow-up (the
/// total transform of that exceptional curve).
struct ClassAtom {
    enum class Kind { Hyperplane, Canonical, Curve, Exceptional };
    Kind kind = Kind::Hyperplane;
    std::string name;
    friend bool operator==(const ClassAtom&, const ClassAtom&) = default;
};

struct ClassTerm {
    Rational coeff;
    ClassAtom atom;
    friend bool operator==(const ClassTerm&, const ClassTerm&) = default;
};

using ClassExpr = std::vector<ClassTerm>;

class SurfaceState {
public:
    /// P^2: rank-1 lattice, empty registry.
    static SurfaceState begin_plane();

    /// Re-executes a recorded history from begin_plane().
    static SurfaceState replay(std::span<const HistoryStep> steps);

    std::size_t rank() const { return rank_; }
    std::size_t blowups() const { return rank_ - 1; }
    DivisorClass canonical() const { return rbd::canonical(blowups()); }
    std::int64_t ksq() const { return 9 - static_cast<std::int64_t>(blowups()); }

    void add_curve(const std::string& name, DivisorClass cls);
    void blow_up(const std::string& exceptional_name, std::span<const Incidence> incidences);

    bool has_curve(const std::string& name) const { return index_.contains(name); }
    const DivisorClass& curve(const std::string& name) const;
    /// Curve names in registration order.
    const std::vector<std::string>& curve_names() const { return names_; }

    bool is_exceptional(const std::string& name) const { return basis_index_.contains(name); }
    /// Position of the named blow-up's basis vector (1-based; 0 is h).
    std::size_t basis_index(const std::string& exceptional_name) const;
    /// "h" followed by the exceptional names in creation order.
    std::vector<std::string> basis_labels() const;

    RationalClass evaluate(const ClassExpr& expr) const;
    bool assert_equal_class(const ClassExpr& lhs, const ClassExpr& rhs) const;

    void declare_chain(const std::string& chain_name, std::vector<std::string> curve_names);
    bool has_chain(const std::string& chain_name) const { return chains_.contains(chain_name); }
    const std::vector<std::string>& chain_curves(const std::string& chain_name) const;
    const std::vector<std::string>& chain_names() const { return chain_order_; }

    /// Consecutive curves pair to 1, the rest to 0, self-intersections <= -2.
    /// Returns the negated self-intersections. Throws AdjacencyError.
    Chain chain_check(const std::string& chain_name) const;

    const std::vector<HistoryStep>& history() const { return history_; }

private:
    void require_new_name(const std::string& name) const;

    std::size_t rank_ = 1;
    std::vector<std::string> names_;
    std::vector<DivisorClass> classes_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_map<std::string, std::size_t> basis_index_;
    std::vector<std::string> exceptional_order_;
    std::unordered_map<std::string, std::vector<std::string>> chains_;
    std::vector<std::string> chain_order_;
    std::unordered_map<std::string, std::string> chain_of_curve_;
    std::vector<HistoryStep> history_;
};

} // namespace rbd
