// One line per acceptance criterion; exit status is the number of failures.

#include "oracle.hpp"

#include "rbd/chains.hpp"
#include "rbd/contraction.hpp"
#include "rbd/report.hpp"
#include "rbd/runner.hpp"
#include "rbd/topology.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace rbd;

namespace {

struct Check {
    std::ostringstream why;
    bool ok = true;

    template <class A, class B>
    void eq(const A& actual, const B& expected, const std::string& what)
    {
        if (actual == expected)
            return;
        ok = false;
        why << what << " mismatch; ";
    }
    void that(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            why << what << "; ";
        }
    }
};

std::string path(const std::string& name)
{
    return std::string(RBD_CONSTRUCTIONS_DIR) + "/" + name;
}

std::map<std::string, Report> cache;

const Report& report(const std::string& name)
{
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, run(load_script(path(name)))).first;
    return it->second;
}

const ChainContraction& chain(const Report& r, const std::string& name)
{
    for (const auto& c : r.chains)
        if (c.name == name)
            return c;
    throw std::runtime_error("no chain " + name);
}

std::vector<Rational> fracs(std::initializer_list<std::pair<std::int64_t, std::int64_t>> xs)
{
    std::vector<Rational> out;
    for (auto [n, d] : xs)
        out.emplace_back(n, d);
    return out;
}

std::vector<std::size_t> contracted_lengths(const Report& r)
{
    std::vector<std::size_t> out;
    for (const auto& n : r.contracted)
        out.push_back(chain(r, n).chain.size());
    return out;
}

void c1(Check& c)
{
    const auto& r = report("main.rbd");
    struct Want {
        const char* name;
        CpqParams pq;
        Chain bs;
    };
    // Each chain as displayed, read from the end carrying the (p, q) reading.
    const Want want[] = {
        {"G", {15, 7}, Chain({2, 10, 2, 2, 2, 2, 2, 3})},
        {"H", {9, 4}, Chain({2, 7, 2, 2, 3})},
        {"I", {5, 1}, Chain({7, 2, 2, 2})},
        {"J", {3, 1}, Chain({5, 2})},
        {"Bt", {2, 1}, Chain({4})},
    };
    c.eq(r.contracted.size(), std::size_t{5}, "number of chains");
    for (const auto& w : want) {
        const auto& ch = chain(r, w.name);
        c.eq(ch.chain, w.bs, std::string("b-sequence of ") + w.name);
        c.that(ch.cpq && ch.cpq->params == w.pq, std::string("C_{p,q} of ") + w.name);
        c.that(ch.class_t, std::string(w.name) + " class T");
        bool as_is = cpq_chain(w.pq) == w.bs || cpq_chain(w.pq) == w.bs.reversed();
        c.that(as_is, std::string("cpq_chain reproduces ") + w.name);
    }
}

void c2(Check& c)
{
    const auto& r = report("main.rbd");
    c.eq(chain(r, "G").discrepancies,
         fracs({{7, 15}, {14, 15}, {13, 15}, {12, 15}, {11, 15}, {10, 15}, {9, 15}, {8, 15}}), "G");
    c.eq(chain(r, "H").discrepancies, fracs({{4, 9}, {8, 9}, {7, 9}, {6, 9}, {5, 9}}), "H");
    c.eq(chain(r, "I").discrepancies, fracs({{4, 5}, {3, 5}, {2, 5}, {1, 5}}), "I");
    c.eq(chain(r, "Bt").discrepancies, fracs({{1, 2}}), "Bt");
    c.eq(chain(r, "J").discrepancies, fracs({{2, 3}, {1, 3}}), "J");
}

void c3(Check& c)
{
    // Coefficients by chain position: G_1..G_8, H_1..H_5, I_1..I_4, B, J_1, J_2,
    // then the (-1)-curves.
    const auto& r = report("main.rbd");
    std::vector<std::pair<std::string, std::string>> rhs;
    auto put = [&](const std::string& ch, std::initializer_list<const char*> coeffs) {
        const auto& curves = chain(r, ch).curves;
        std::size_t i = 0;
        for (const char* k : coeffs)
            rhs.emplace_back(k, curves.at(i++));
    };
    put("G", {"119/30", "14/15", "13/15", "12/15", "11/15", "10/15", "9/15", "8/15"});
    put("H", {"17/18", "7/18", "23/18", "39/18", "55/18"});
    put("I", {"3/10", "11/10", "19/10", "27/10"});
    put("Bt", {"1/2"});
    put("J", {"2/3", "1/3"});
    for (auto [k, n] : std::initializer_list<std::pair<const char*, const char*>>{
             {"1/2", "E1'"}, {"7/2", "E1''"}, {"1/2", "E1'''"}, {"3/2", "E2'"},
             {"7", "E2''"}, {"1/2", "E2'''"}, {"1", "E3'"}, {"1", "E3''"}})
        rhs.emplace_back(k, n);

    std::string expr;
    for (const auto& [k, n] : rhs)
        expr += (expr.empty() ? "" : " + ") + k + " " + n;

    auto script = load_script(path("main.rbd"));
    std::erase_if(script.statements, [](const Statement& s) { return std::holds_alternative<ExpectStmt>(s.body); });
    auto out = run(parse_script(serialize(script) + "expect pullback = " + expr + "\n", "main.rbd"));
    c.that(out.expectations.size() == 1 && out.expectations[0].ok, "pullback differs from the displayed right-hand side");
}

void c4(Check& c)
{
    const auto& r = report("main.rbd");
    if (!r.contraction) {
        c.that(false, "no contraction");
        return;
    }
    std::map<std::string, Rational> table;
    for (const auto& e : r.contraction->nef_table)
        table.emplace(e.curve, e.value);
    const std::pair<const char*, Rational> want[] = {
        {"E1'", {7, 15}}, {"E1''", {2, 15}}, {"E1'''", {5, 15}}, {"E2'", {1, 9}},
        {"E2''", {1, 45}}, {"E2'''", {19, 45}}, {"E3'", {1, 6}}, {"E3''", {13, 30}},
    };
    for (const auto& [n, v] : want)
        c.that(table.contains(n) && table.at(n) == v, std::string("f*K_X . ") + n);
    c.that(r.contraction->nef, "nef flag");
}

void c5(Check& c)
{
    const auto& r = report("main.rbd");
    c.eq(r.ksq_ambient, std::int64_t{-18}, "K^2 of the resolution");
    c.that(r.contraction && r.contraction->ksq_singular == Rational(2), "(f*K_X)^2");
    auto lengths = contracted_lengths(r);
    auto total = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
    c.eq(total, std::size_t{20}, "contracted curves");
    c.eq(r.ksq_ambient + static_cast<std::int64_t>(total), std::int64_t{2}, "blow-down arithmetic");
    c.that(r.blowdown && *r.blowdown == FourManifoldInvariants{1, 7}, "(b2+, b2-) after surgery");
    c.that(r.blowdown && r.blowdown->ksq_smooth() == 2, "2e + 3 sigma");
}

void c6(Check& c)
{
    const auto& r = report("main.rbd");
    if (!r.pi1) {
        c.that(false, "no certificate");
        return;
    }
    std::multiset<std::int64_t> orders(r.pi1->graph.orders.begin(), r.pi1->graph.orders.end());
    c.eq(orders, std::multiset<std::int64_t>{225, 81, 25, 9, 4}, "lens orders");
    c.eq(r.pi1->graph.edges.size(), std::size_t{4}, "edge count");
    c.that(r.pi1->certificate.pass, "certificate PASS");
    const auto& trace = r.pi1->certificate.trace;
    c.that(!trace.empty() && trace[0].rule == KillRule::Gcd && trace[0].gcd == 1, "first step is a gcd kill");
    if (!trace.empty()) {
        std::multiset<std::int64_t> first;
        for (const auto& n : trace[0].killed)
            for (std::size_t i = 0; i < r.pi1->graph.nodes.size(); ++i)
                if (r.pi1->graph.nodes[i] == n)
                    first.insert(r.pi1->graph.orders[i]);
        c.eq(first, std::multiset<std::int64_t>{9, 4}, "first step uses gcd(9, 4)");
    }
}

void c7(Check& c)
{
    const auto& r = report("e7.rbd");
    c.eq(contracted_lengths(r), std::vector<std::size_t>{10, 8, 4, 1, 1}, "chain lengths");
    std::vector<std::int64_t> ps;
    for (const auto& n : r.contracted) {
        const auto& ch = chain(r, n);
        if (!ch.cpq) {
            c.that(false, n + " is not Wahl");
            continue;
        }
        ps.push_back(ch.cpq->params.p);
        auto [p, q] = ch.cpq->params;
        oracle::Q want(p * p, p * q - 1);
        auto read = ch.cpq->orientation == Orientation::AsGiven ? ch.chain : ch.chain.reversed();
        c.that(oracle::continued_fraction(read.vec()) == want, "HJ roundtrip for " + n);
    }
    c.eq(ps, std::vector<std::int64_t>{25, 19, 5, 2, 2}, "p-values");
    c.eq(r.ksq_ambient, std::int64_t{-22}, "K^2 of the resolution");
    c.that(r.contraction && r.contraction->ksq_singular == Rational(2), "K_X^2");
    c.eq(r.ksq_ambient + 24, std::int64_t{2}, "-22 + 24");
}

void c8(Check& c)
{
    const auto& a1 = report("appendix_a1.rbd");
    c.eq(contracted_lengths(a1), std::vector<std::size_t>{4, 3, 4, 1}, "A1 lengths");
    c.that(a1.contraction && a1.contraction->ksq_singular == Rational(1), "A1 K_X^2");
    const auto& a2 = report("appendix_a2.rbd");
    c.eq(contracted_lengths(a2), std::vector<std::size_t>{5, 3, 3, 1, 1}, "A2 lengths");
    c.that(a2.contraction && a2.contraction->ksq_singular == Rational(1), "A2 K_X^2");
}

void c9(Check& c)
{
    const auto& n = report("nodal.rbd");
    c.eq(n.contracted.size(), std::size_t{1}, "nodal chain count");
    c.that(!n.contracted.empty() && chain(n, n.contracted[0]).chain == Chain({4}), "nodal [4]");
    c.that(n.contraction && n.contraction->ksq_singular == Rational(0), "nodal K_X^2");
    const auto& e = report("enriques.rbd");
    c.eq(e.contracted.size(), std::size_t{2}, "Enriques chain count");
    for (const auto& name : e.contracted)
        c.that(chain(e, name).chain == Chain({4}), "Enriques [4]");
    c.that(e.contraction && e.contraction->ksq_singular == Rational(0), "Enriques K_X^2");
}

void c10(Check& c)
{
    c.eq(chi_2k(1, 2), std::int64_t{3}, "chi_2K(1, 2)");
    c.that(!noether_ok(3, 1), "noether_ok(3, 1) is false");
}

void c11(Check& c)
{
    for (std::int64_t m = 2; m <= 500; ++m)
        for (std::int64_t l = 1; l < m; ++l)
            if (std::gcd(m, l) == 1 && (hj_value(hj_expand(m, l)) != HJFraction{m, l} ||
                                        oracle::continued_fraction(hj_expand(m, l).vec()) != oracle::Q(m, l)))
                c.that(false, "HJ roundtrip " + std::to_string(m) + "/" + std::to_string(l));

    for (std::int64_t p = 2; p <= 30; ++p)
        for (std::int64_t q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1)
                continue;
            auto ch = cpq_chain({p, q});
            auto m = recognize_cpq(ch);
            auto canon = 2 * q <= p ? CpqParams{p, q} : CpqParams{p, p - q};
            bool ok = m && m->params == canon && (m->params == CpqParams{p, q} || m->alternate == CpqParams{p, q});
            c.that(ok && lens_order(ch) == p * p, "recognize/lens_order at " + std::to_string(p) + "," + std::to_string(q));
        }

    std::set<oracle::Bs> mine;
    for (const auto& ch : enumerate_T(6, 9))
        mine.insert(ch.vec());
    c.that(mine == oracle::brute_class_T(6, 9), "enumeration vs brute force");
    c.that(mine == oracle::closure_class_T(6, 9), "enumeration vs closure");

    for (const auto& ch : enumerate_T(10, 12)) {
        std::vector<std::int64_t> kg;
        for (auto b : ch.entries())
            kg.push_back(b - 2);
        for (const auto& d : discrepancies(plumbing_matrix(ch), kg))
            if (!(d > Rational(0) && d < Rational(1)))
                c.that(false, "discrepancy outside (0,1) on " + ch.str());
        if (!is_negative_definite(plumbing_matrix(ch)))
            c.that(false, "not negative definite: " + ch.str());
    }

    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = SurfaceState::begin_plane();
        s.add_curve("C", DivisorClass{3});
        std::vector<std::string> exc;
        for (int i = 0, k = 1 + static_cast<int>(rng() % 15); i < k; ++i) {
            const auto& names = s.curve_names();
            auto before = s.ksq();
            std::vector<Incidence> at{{names[rng() % names.size()], 1}};
            s.blow_up("x" + std::to_string(i), at);
            exc.push_back("x" + std::to_string(i));
            c.that(s.ksq() == before - 1, "K^2 drops by 1");
        }
        std::vector<std::vector<oracle::Q>> gram(s.rank(), std::vector<oracle::Q>(s.rank()));
        std::vector<DivisorClass> basis{DivisorClass::hyperplane(s.rank())};
        for (const auto& e : exc)
            basis.push_back(s.curve(e));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j)
                gram[i][j] = pair(basis[i], basis[j]);
        auto det = oracle::determinant(gram);
        c.that(det == 1 || det == -1, "unimodularity");
    }
}

} // namespace

int main()
{
    const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
        {"chain identification", c1},
        {"discrepancy golden values", c2},
        {"canonical pullback identity", c3},
        {"nefness table", c4},
        {"K^2 bookkeeping", c5},
        {"pi_1 certificate", c6},
        {"second construction", c7},
        {"appendix constructions", c8},
        {"small examples", c9},
        {"numerology", c10},
        {"property suites", c11},
    };
    int failed = 0;
    int i = 0;
    for (const auto& [name, fn] : criteria) {
        Check c;
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.why << "exception: " << e.what();
        }
        std::printf("%s %2d %s%s%s\n", c.ok ? "PASS" : "FAIL", ++i, name, c.ok ? "" : ": ", c.why.str().c_str());
        failed += c.ok ? 0 : 1;
    }
    return failed;
}
