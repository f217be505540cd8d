#include "rbd/topology.hpp"

#include <numeric>
#include <utility>

namespace rbd {

FourManifoldInvariants blown_up_plane(std::int64_t blowups)
{
    if (blowups < 0)
        throw TopologyError("negative number of blow-ups");
    return FourManifoldInvariants{1, blowups};
}

FourManifoldInvariants blowdown_invariants(const FourManifoldInvariants& before,
                                           std::span<const std::size_t> lengths)
{
    std::int64_t removed = 0;
    for (auto l : lengths)
        removed += static_cast<std::int64_t>(l);
    if (removed > before.b2_minus)
        throw TopologyError("blow-down removes " + std::to_string(removed) + " classes but b2- is only " +
                            std::to_string(before.b2_minus));
    return FourManifoldInvariants{before.b2_plus, before.b2_minus - removed};
}

std::int64_t lens_order(const Chain& c)
{
    return hj_value(c).m;
}

bool noether_ok(std::int64_t pg, std::int64_t ksq)
{
    return 2 * pg - 4 <= ksq;
}

std::int64_t chi_2k(std::int64_t chi, std::int64_t ksq)
{
    return chi + ksq;
}

SmoothingInvariants smoothing_invariants(const Rational& ksq_x, std::span<const std::size_t> lengths,
                                         const FourManifoldInvariants& ambient)
{
    SmoothingInvariants out;
    out.topology = blowdown_invariants(ambient, lengths);
    if (!ksq_x.is_integer())
        throw TopologyError("K^2 of the singular surface is " + ksq_x.str() + ", not an integer");
    out.ksq = ksq_x.num();
    if (out.ksq != out.topology.ksq_smooth())
        throw TopologyError("K^2 = " + std::to_string(out.ksq) + " but the blow-down has 2e + 3sigma = " +
                            std::to_string(out.topology.ksq_smooth()));
    auto twelve_chi = out.ksq + out.topology.euler();
    if (twelve_chi % 12 != 0)
        throw TopologyError("K^2 + e = " + std::to_string(twelve_chi) + " is not divisible by 12");
    out.chi = twelve_chi / 12;
    if (out.topology.b2_plus % 2 == 0)
        throw TopologyError("b2+ = " + std::to_string(out.topology.b2_plus) + " is even");
    out.pg = (out.topology.b2_plus - 1) / 2;
    if (out.chi != 1 + out.pg)
        throw TopologyError("chi = " + std::to_string(out.chi) + " disagrees with 1 + p_g = " +
                            std::to_string(1 + out.pg));
    out.chi_2k = chi_2k(out.chi, out.ksq);
    out.noether = noether_ok(out.pg, out.ksq);
    out.assumptions = {
        "q(X) = 0",
        "the ambient rational surface is simply connected",
        "pi_1 of each lens space boundary surjects onto pi_1 of its rational ball",
        "a Q-Gorenstein smoothing of X exists",
    };
    return out;
}

std::size_t Pi1Graph::add_node(std::string name, std::int64_t order)
{
    if (order < 1)
        throw TopologyError("node " + name + " has order " + std::to_string(order));
    nodes.push_back(std::move(name));
    orders.push_back(order);
    return nodes.size() - 1;
}

void Pi1Graph::add_edge(std::string witness, EdgeSide a, EdgeSide b)
{
    for (auto* s : {&a, &b}) {
        if (s->node >= nodes.size())
            throw TopologyError("edge " + witness + " refers to an unknown node");
        if (s->attachment == Attachment::End)
            s->power = 1;
    }
    edges.push_back(Pi1Edge{std::move(witness), a, b});
}

const char* to_string(KillRule r)
{
    return r == KillRule::Gcd ? "gcd" : "propagation";
}

namespace {

bool coprime_power(const EdgeSide& s, std::int64_t order)
{
    return s.power && std::gcd(*s.power, order) == 1;
}

// Order of mu^k divides m / gcd(m, k); with k unknown, only m.
std::int64_t order_bound(const EdgeSide& s, std::int64_t order)
{
    return s.power ? order / std::gcd(order, *s.power) : order;
}

} // namespace

Pi1Certificate pi1_certificate(const Pi1Graph& g)
{
    // A lens space of order 1 is S^3: nothing to kill.
    std::vector<bool> dead(g.nodes.size(), false);
    for (std::size_t n = 0; n < g.nodes.size(); ++n)
        dead[n] = g.orders[n] == 1;
    Pi1Certificate cert;

    auto kill = [&](std::size_t n, KillStep& step) {
        if (!dead[n]) {
            dead[n] = true;
            step.killed.push_back(g.nodes[n]);
        }
    };

    for (;;) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : g.edges) {
                for (auto [from, to] : {std::pair{&e.a, &e.b}, std::pair{&e.b, &e.a}}) {
                    if (dead[from->node] && !dead[to->node] && coprime_power(*to, g.orders[to->node])) {
                        KillStep step{KillRule::Propagation, e.witness, 0, {}};
                        kill(to->node, step);
                        cert.trace.push_back(std::move(step));
                        changed = true;
                    }
                }
            }
        }

        const Pi1Edge* best = nullptr;
        std::int64_t best_product = 0;
        for (const auto& e : g.edges) {
            auto ma = g.orders[e.a.node];
            auto mb = g.orders[e.b.node];
            bool a_gain = !dead[e.a.node] && coprime_power(e.a, ma);
            bool b_gain = !dead[e.b.node] && coprime_power(e.b, mb);
            if (!a_gain && !b_gain)
                continue;
            if (std::gcd(order_bound(e.a, ma), order_bound(e.b, mb)) != 1)
                continue;
            auto product = checked::mul(ma, mb);
            if (!best || product < best_product) {
                best = &e;
                best_product = product;
            }
        }
        if (!best)
            break;
        auto ma = g.orders[best->a.node];
        auto mb = g.orders[best->b.node];
        KillStep step{KillRule::Gcd, best->witness, std::gcd(ma, mb), {}};
        if (coprime_power(best->a, ma))
            kill(best->a.node, step);
        if (coprime_power(best->b, mb))
            kill(best->b.node, step);
        cert.trace.push_back(std::move(step));
    }

    for (std::size_t n = 0; n < g.nodes.size(); ++n)
        if (!dead[n])
            cert.surviving.push_back(g.nodes[n]);
    cert.pass = !g.nodes.empty() && cert.surviving.empty();
    return cert;
}

} // namespace rbd
