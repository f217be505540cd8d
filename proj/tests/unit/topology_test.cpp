#include "rbd/topology.hpp"

#include "doctest.h"

using namespace rbd;

TEST_CASE("four-manifold bookkeeping")
{
    auto x = blown_up_plane(27);
    CHECK(x == FourManifoldInvariants{1, 27});
    CHECK(x.euler() == 30);
    CHECK(x.signature() == -26);
    CHECK(x.ksq_smooth() == 9 - 27);

    std::vector<std::size_t> lengths{8, 5, 4, 1, 2};
    auto z = blowdown_invariants(x, lengths);
    CHECK(z == FourManifoldInvariants{1, 7});
    CHECK(z.ksq_smooth() == 2);

    std::vector<std::size_t> too_many{30};
    CHECK_THROWS_AS(blowdown_invariants(x, too_many), TopologyError);
}

TEST_CASE("smoothing numerology")
{
    std::vector<std::size_t> lengths{8, 5, 4, 1, 2};
    auto s = smoothing_invariants(Rational(2), lengths, blown_up_plane(27));
    CHECK(s.ksq == 2);
    CHECK(s.chi == 1);
    CHECK(s.pg == 0);
    CHECK(s.chi_2k == 3);
    CHECK(s.noether);
    CHECK_FALSE(s.assumptions.empty());

    CHECK_THROWS_AS(smoothing_invariants(Rational(3), lengths, blown_up_plane(27)), TopologyError);
    CHECK_THROWS_AS(smoothing_invariants(Rational(5, 2), lengths, blown_up_plane(27)), TopologyError);
}

TEST_CASE("noether and chi_2k")
{
    CHECK_FALSE(noether_ok(3, 1));
    CHECK(noether_ok(0, 2));
    CHECK(noether_ok(2, 0));
    CHECK(chi_2k(1, 2) == 3);
}

TEST_CASE("lens order")
{
    CHECK(lens_order(Chain({4})) == 4);
    CHECK(lens_order(Chain({3, 2, 2, 2, 2, 2, 10, 2})) == 225);
    CHECK(lens_order(Chain({2, 2})) == 3);
}

namespace {

EdgeSide end(std::size_t n)
{
    return {n, Attachment::End, std::nullopt};
}

EdgeSide mid(std::size_t n, std::optional<std::int64_t> k)
{
    return {n, Attachment::Mid, k};
}

Pi1Graph main_graph(bool with_e3)
{
    Pi1Graph g;
    auto G = g.add_node("G", 225);
    auto H = g.add_node("H", 81);
    auto I = g.add_node("I", 25);
    auto B = g.add_node("Bt", 4);
    auto J = g.add_node("J", 9);
    if (with_e3)
        g.add_edge("E3'", end(J), end(B));
    g.add_edge("E1'", end(J), end(I));
    g.add_edge("E2'", end(J), end(H));
    g.add_edge("E2''", end(G), end(H));
    return g;
}

} // namespace

TEST_CASE("certificate on the five-chain graph")
{
    auto c = pi1_certificate(main_graph(true));
    CHECK(c.pass);
    CHECK(c.surviving.empty());
    REQUIRE(c.trace.size() == 4);
    CHECK(c.trace[0].rule == KillRule::Gcd);
    CHECK(c.trace[0].witness == "E3'");
    CHECK(c.trace[0].gcd == 1);
    CHECK(c.trace[0].killed == std::vector<std::string>{"J", "Bt"});
    CHECK(c.trace[1].rule == KillRule::Propagation);
    CHECK(c.trace[1].witness == "E1'");
    CHECK(c.trace[1].killed == std::vector<std::string>{"I"});
    CHECK(c.trace[2].witness == "E2'");
    CHECK(c.trace[2].killed == std::vector<std::string>{"H"});
    CHECK(c.trace[3].witness == "E2''");
    CHECK(c.trace[3].killed == std::vector<std::string>{"G"});

    auto without = pi1_certificate(main_graph(false));
    CHECK_FALSE(without.pass);
    CHECK(without.surviving == std::vector<std::string>{"Bt"});
}

TEST_CASE("certificate edge cases")
{
    Pi1Graph two;
    two.add_node("A", 4);
    two.add_node("B", 2);
    two.add_edge("w", end(0), end(1));
    CHECK_FALSE(pi1_certificate(two).pass);

    Pi1Graph one;
    one.add_node("A", 1);
    CHECK(pi1_certificate(one).pass);

    CHECK_FALSE(pi1_certificate(Pi1Graph{}).pass);

    // A mid side with unknown power neither propagates nor lowers the bound.
    Pi1Graph m;
    m.add_node("A", 4);
    m.add_node("B", 9);
    m.add_node("C", 25);
    m.add_edge("x", end(0), end(1));
    m.add_edge("y", end(1), mid(2, std::nullopt));
    auto c = pi1_certificate(m);
    CHECK_FALSE(c.pass);
    CHECK(c.surviving == std::vector<std::string>{"C"});

    // With power 2 (coprime to 25) the death propagates.
    Pi1Graph k;
    k.add_node("A", 4);
    k.add_node("B", 9);
    k.add_node("C", 25);
    k.add_edge("x", end(0), end(1));
    k.add_edge("y", end(1), mid(2, 2));
    CHECK(pi1_certificate(k).pass);

    // Power 5 shares a factor with 25: the gcd rule fires on bounds 9 and 5
    // but only kills the side whose power is coprime to its order.
    Pi1Graph f;
    f.add_node("B", 9);
    f.add_node("C", 25);
    f.add_edge("y", end(0), mid(1, 5));
    auto fc = pi1_certificate(f);
    CHECK_FALSE(fc.pass);
    CHECK(fc.surviving == std::vector<std::string>{"C"});
}

TEST_CASE("end sides get power 1")
{
    Pi1Graph g;
    g.add_node("A", 4);
    g.add_node("B", 9);
    g.add_edge("w", end(0), mid(1, 2));
    CHECK(g.edges[0].a.power == 1);
    CHECK(g.edges[0].b.power == 2);
    CHECK_THROWS(g.add_edge("bad", end(0), end(7)));
}
