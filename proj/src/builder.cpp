#include "rbd/builder.hpp"

#include <unordered_set>

namespace rbd {

AdjacencyError::AdjacencyError(std::string chain, std::string first, std::string second, std::int64_t value,
                               std::int64_t wanted)
    : BuildError("chain " + chain + ": " + first + " . " + second + " = " + std::to_string(value) + ", expected " +
                 std::to_string(wanted)),
      chain_(std::move(chain)), first_(std::move(first)), second_(std::move(second)), value_(value)
{
}

SurfaceState SurfaceState::begin_plane()
{
    return SurfaceState{};
}

SurfaceState SurfaceState::replay(std::span<const HistoryStep> steps)
{
    auto s = begin_plane();
    for (const auto& step : steps) {
        if (const auto* c = std::get_if<CurveRecord>(&step))
            s.add_curve(c->name, c->cls);
        else {
            const auto& b = std::get<BlowupRecord>(step);
            s.blow_up(b.exceptional_name, b.incidences);
        }
    }
    return s;
}

void SurfaceState::require_new_name(const std::string& name) const
{
    if (name.empty())
        throw BuildError("empty curve name");
    if (index_.contains(name))
        throw BuildError("duplicate curve name: " + name);
}

void SurfaceState::add_curve(const std::string& name, DivisorClass cls)
{
    require_new_name(name);
    if (cls.rank() != rank_)
        throw BuildError("curve " + name + " has rank " + std::to_string(cls.rank()) + ", surface has rank " +
                         std::to_string(rank_));
    history_.emplace_back(CurveRecord{name, cls});
    index_.emplace(name, names_.size());
    names_.push_back(name);
    classes_.push_back(std::move(cls));
}

void SurfaceState::blow_up(const std::string& exceptional_name, std::span<const Incidence> incidences)
{
    require_new_name(exceptional_name);
    std::unordered_set<std::string> seen;
    for (const auto& inc : incidences) {
        if (!has_curve(inc.curve))
            throw BuildError("blow-up " + exceptional_name + ": unknown curve " + inc.curve);
        if (inc.multiplicity < 1)
            throw BuildError("blow-up " + exceptional_name + ": multiplicity of " + inc.curve + " must be positive");
        if (!seen.insert(inc.curve).second)
            throw BuildError("blow-up " + exceptional_name + ": curve " + inc.curve + " listed twice");
    }

    for (auto& cls : classes_)
        cls = cls.extended(0);
    const auto e_new = DivisorClass::basis(rank_ + 1, rank_);
    for (const auto& inc : incidences)
        classes_[index_.at(inc.curve)] -= inc.multiplicity * e_new;
    ++rank_;
    basis_index_.emplace(exceptional_name, rank_ - 1);
    exceptional_order_.push_back(exceptional_name);

    history_.emplace_back(BlowupRecord{exceptional_name, {incidences.begin(), incidences.end()}});
    index_.emplace(exceptional_name, names_.size());
    names_.push_back(exceptional_name);
    classes_.push_back(DivisorClass::basis(rank_, rank_ - 1));
}

const DivisorClass& SurfaceState::curve(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        throw BuildError("unknown curve: " + name);
    return classes_[it->second];
}

std::size_t SurfaceState::basis_index(const std::string& exceptional_name) const
{
    auto it = basis_index_.find(exceptional_name);
    if (it == basis_index_.end())
        throw BuildError("not an exceptional curve: " + exceptional_name);
    return it->second;
}

std::vector<std::string> SurfaceState::basis_labels() const
{
    std::vector<std::string> labels{"h"};
    labels.insert(labels.end(), exceptional_order_.begin(), exceptional_order_.end());
    return labels;
}

RationalClass SurfaceState::evaluate(const ClassExpr& expr) const
{
    auto total = RationalClass::zero(rank_);
    for (const auto& term : expr) {
        DivisorClass atom;
        switch (term.atom.kind) {
        case ClassAtom::Kind::Hyperplane:
            atom = DivisorClass::hyperplane(rank_);
            break;
        case ClassAtom::Kind::Canonical:
            atom = canonical();
            break;
        case ClassAtom::Kind::Curve:
            atom = curve(term.atom.name);
            break;
        case ClassAtom::Kind::Exceptional:
            atom = DivisorClass::basis(rank_, basis_index(term.atom.name));
            break;
        }
        total += term.coeff * RationalClass(atom);
    }
    return total;
}

bool SurfaceState::assert_equal_class(const ClassExpr& lhs, const ClassExpr& rhs) const
{
    return evaluate(lhs) == evaluate(rhs);
}

void SurfaceState::declare_chain(const std::string& chain_name, std::vector<std::string> curve_names)
{
    if (chains_.contains(chain_name))
        throw BuildError("duplicate chain name: " + chain_name);
    if (curve_names.empty())
        throw BuildError("chain " + chain_name + " is empty");
    std::unordered_set<std::string> local;
    for (const auto& c : curve_names) {
        if (!has_curve(c))
            throw BuildError("chain " + chain_name + ": unknown curve " + c);
        if (!local.insert(c).second)
            throw BuildError("chain " + chain_name + ": curve " + c + " listed twice");
        if (auto it = chain_of_curve_.find(c); it != chain_of_curve_.end())
            throw BuildError("chain " + chain_name + ": curve " + c + " already belongs to chain " + it->second);
    }
    for (const auto& c : curve_names)
        chain_of_curve_.emplace(c, chain_name);
    chains_.emplace(chain_name, std::move(curve_names));
    chain_order_.push_back(chain_name);
}

const std::vector<std::string>& SurfaceState::chain_curves(const std::string& chain_name) const
{
    auto it = chains_.find(chain_name);
    if (it == chains_.end())
        throw BuildError("unknown chain: " + chain_name);
    return it->second;
}

Chain SurfaceState::chain_check(const std::string& chain_name) const
{
    const auto& names = chain_curves(chain_name);
    std::vector<std::int64_t> bs;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto& ci = curve(names[i]);
        std::int64_t self = pair(ci, ci);
        if (self > -2)
            throw BuildError("chain " + chain_name + ": " + names[i] + " has self-intersection " +
                             std::to_string(self) + ", chains need <= -2");
        bs.push_back(-self);
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            std::int64_t wanted = j == i + 1 ? 1 : 0;
            std::int64_t v = pair(ci, curve(names[j]));
            if (v != wanted)
                throw AdjacencyError(chain_name, names[i], names[j], v, wanted);
        }
    }
    return Chain(std::move(bs));
}

} // namespace rbd
