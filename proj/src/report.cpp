#include "rbd/report.hpp"

#include <sstream>

namespace rbd {

namespace {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r)
{
    if (r.is_integer())
        return r.num();
    return r.str();
}

Json invariants_json(const FourManifoldInvariants& t)
{
    return Json{{"b2_plus", t.b2_plus},     {"b2_minus", t.b2_minus},     {"b2", t.b2()},
                {"euler", t.euler()},       {"signature", t.signature()}, {"ksq", t.ksq_smooth()}};
}

std::string invariants_text(const FourManifoldInvariants& t)
{
    std::ostringstream os;
    os << "b2+ = " << t.b2_plus << ", b2- = " << t.b2_minus << ", e = " << t.euler() << ", sigma = " << t.signature()
       << ", 2e + 3sigma = " << t.ksq_smooth();
    return os.str();
}

std::string join(const std::vector<std::string>& xs, const char* sep = ", ")
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? sep : "") + xs[i];
    return out;
}

std::string rationals(const std::vector<Rational>& v)
{
    std::vector<std::string> s;
    for (const auto& r : v)
        s.push_back(r.str());
    return "[" + join(s) + "]";
}

std::string tparams_text(const std::vector<TParams>& ts)
{
    std::vector<std::string> s;
    for (const auto& t : ts)
        s.push_back("(" + std::to_string(t.d) + "," + std::to_string(t.n) + "," + std::to_string(t.a) + ")");
    return join(s, " ");
}

std::string side_text(const Pi1Graph& g, const EdgeSide& s)
{
    std::string out = g.nodes[s.node] + (s.attachment == Attachment::End ? "(end)" : "(mid");
    if (s.attachment == Attachment::Mid)
        out += s.power ? ", power " + std::to_string(*s.power) + ")" : ", power unknown)";
    return out;
}

const char* const kPi1Assumptions[] = {
    "the ambient rational surface is simply connected",
    "pi_1 of each lens space boundary surjects onto pi_1 of its rational ball",
};

struct Style {
    bool color;
    std::string ok(bool pass) const
    {
        if (!color)
            return pass ? "PASS" : "FAIL";
        return pass ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m";
    }
    std::string head(const std::string& s) const { return color ? "\033[1m" + s + "\033[0m" : s; }
};

} // namespace

std::string render_text(const Report& r, bool color)
{
    Style st{color};
    std::ostringstream os;
    os << st.head("== " + r.id) << "\n";
    os << "surface: rank " << r.rank << ", K^2 = " << r.ksq_ambient << "\n";
    for (const auto& a : r.asserts)
        os << "  assert (line " << a.pos.line << ") " << a.text << "  " << st.ok(a.ok) << "\n";

    if (!r.chains.empty()) {
        os << st.head("chains") << "\n";
        for (const auto& c : r.chains) {
            os << "  " << c.name << " " << c.chain.str() << "  lens order " << c.lens_order;
            if (c.cpq)
                os << "  C(" << c.cpq->params.p << "," << c.cpq->params.q << ") " << to_string(c.cpq->orientation);
            if (c.class_t)
                os << "  class T (d,n,a) " << tparams_text(c.t_params);
            os << "  neg. definite " << (c.negative_definite ? "yes" : "no") << "\n";
            os << "    curves " << join(c.curves) << "\n";
            os << "    discrepancies " << rationals(c.discrepancies) << "\n";
        }
    }

    if (r.contraction) {
        const auto& con = *r.contraction;
        os << st.head("contraction of " + join(r.contracted)) << "\n";
        os << "  K_X^2 = (f*K_X)^2 = " << con.ksq_singular << "\n";
        os << "  f*K_X = ";
        bool first = true;
        for (std::size_t i = 0; i < con.pullback.rank(); ++i) {
            const auto& x = con.pullback[i];
            if (x.is_zero())
                continue;
            os << (x.sign() < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            os << (x.sign() < 0 ? -x : x) << " " << (i == 0 ? "h" : "e(" + r.basis[i] + ")");
            first = false;
        }
        os << (first ? "0" : "") << "\n";
        os << "  f*K_X . C for registered curves outside the chains:\n";
        for (const auto& e : con.nef_table)
            os << "    " << e.curve << " " << e.value << (e.value.sign() < 0 ? "  negative" : "") << "\n";
        os << "  nef: " << (con.nef ? "true" : "false") << "\n";
    }

    if (r.ambient)
        os << "ambient: " << invariants_text(*r.ambient) << "\n";
    if (r.blowdown)
        os << "rational blow-down: " << invariants_text(*r.blowdown) << "\n";
    if (r.smoothing) {
        const auto& s = *r.smoothing;
        os << st.head("smoothing (consequences, given the assumptions below)") << "\n";
        os << "  K^2 = " << s.ksq << ", p_g = " << s.pg << ", chi(O) = " << s.chi << ", chi(2K) = " << s.chi_2k
           << ", Noether inequality " << (s.noether ? "holds" : "violated") << "\n";
        for (const auto& a : s.assumptions)
            os << "  assumes: " << a << "\n";
    }

    if (r.pi1) {
        const auto& g = r.pi1->graph;
        const auto& c = r.pi1->certificate;
        os << st.head("pi_1 certificate") << "\n";
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            os << "  node " << g.nodes[i] << " order " << g.orders[i] << "\n";
        for (const auto& e : g.edges)
            os << "  edge " << e.witness << ": " << side_text(g, e.a) << " -- " << side_text(g, e.b) << "\n";
        for (const auto& k : c.trace) {
            os << "  " << to_string(k.rule) << " via " << k.witness;
            if (k.rule == KillRule::Gcd)
                os << " (gcd " << k.gcd << ")";
            os << " kills " << join(k.killed) << "\n";
        }
        os << "  result: " << st.ok(c.pass);
        if (!c.pass)
            os << ", surviving " << join(c.surviving);
        os << "\n";
        if (c.pass)
            for (const auto* a : kPi1Assumptions)
                os << "  assumes: " << a << "\n";
    }

    for (const auto& n : r.notes)
        os << "note: " << n << "\n";
    for (const auto& f : r.failures)
        os << "failure: " << f << "\n";

    if (!r.expectations.empty()) {
        os << st.head("expectations") << "\n";
        for (const auto& e : r.expectations) {
            os << "  " << st.ok(e.ok) << " line " << e.pos.line << " " << e.label << " = " << e.expected;
            if (!e.ok)
                os << " (actual " << e.actual << ")";
            os << "\n";
        }
    }
    os << "result: " << st.ok(r.passed()) << "\n";
    return os.str();
}

nlohmann::ordered_json to_json(const Report& r)
{
    Json j;
    j["schema"] = 1;
    j["id"] = r.id;
    j["passed"] = r.passed();
    j["surface"] = Json{{"rank", r.rank}, {"ksq", r.ksq_ambient}, {"basis", r.basis}};

    Json asserts = Json::array();
    for (const auto& a : r.asserts)
        asserts.push_back(Json{{"line", a.pos.line}, {"text", a.text}, {"ok", a.ok}});
    j["asserts"] = asserts;

    Json chains = Json::array();
    for (const auto& c : r.chains) {
        Json cj;
        cj["name"] = c.name;
        cj["curves"] = c.curves;
        cj["b"] = c.chain.vec();
        cj["lens_order"] = c.lens_order;
        if (c.cpq)
            cj["cpq"] = Json{{"p", c.cpq->params.p},
                             {"q", c.cpq->params.q},
                             {"orientation", to_string(c.cpq->orientation)}};
        else
            cj["cpq"] = nullptr;
        cj["class_t"] = c.class_t;
        Json ts = Json::array();
        for (const auto& t : c.t_params)
            ts.push_back(Json{{"d", t.d}, {"n", t.n}, {"a", t.a}});
        cj["t_params"] = ts;
        cj["negative_definite"] = c.negative_definite;
        Json ds = Json::array();
        for (const auto& d : c.discrepancies)
            ds.push_back(rational_json(d));
        cj["discrepancies"] = ds;
        chains.push_back(cj);
    }
    j["chains"] = chains;

    if (r.contraction) {
        const auto& con = *r.contraction;
        Json cj;
        cj["chains"] = r.contracted;
        Json pb = Json::object();
        for (std::size_t i = 0; i < con.pullback.rank(); ++i)
            pb[i < r.basis.size() ? r.basis[i] : std::to_string(i)] = rational_json(con.pullback[i]);
        cj["pullback"] = pb;
        cj["ksq_x"] = rational_json(con.ksq_singular);
        Json table = Json::array();
        for (const auto& e : con.nef_table)
            table.push_back(Json{{"curve", e.curve}, {"value", rational_json(e.value)}});
        cj["nef_table"] = table;
        cj["nef"] = con.nef;
        j["contraction"] = cj;
    } else {
        j["contraction"] = nullptr;
    }

    j["ambient"] = r.ambient ? invariants_json(*r.ambient) : Json(nullptr);
    j["blowdown"] = r.blowdown ? invariants_json(*r.blowdown) : Json(nullptr);
    if (r.smoothing) {
        const auto& s = *r.smoothing;
        j["smoothing"] = Json{{"ksq", s.ksq},         {"pg", s.pg},
                              {"chi", s.chi},         {"chi_2k", s.chi_2k},
                              {"noether", s.noether}, {"assumptions", s.assumptions}};
    } else {
        j["smoothing"] = nullptr;
    }

    if (r.pi1) {
        const auto& g = r.pi1->graph;
        const auto& c = r.pi1->certificate;
        Json pj;
        Json nodes = Json::array();
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            nodes.push_back(Json{{"name", g.nodes[i]}, {"order", g.orders[i]}});
        pj["nodes"] = nodes;
        auto side = [&](const EdgeSide& s) {
            return Json{{"chain", g.nodes[s.node]},
                        {"attachment", s.attachment == Attachment::End ? "end" : "mid"},
                        {"power", s.power ? Json(*s.power) : Json(nullptr)}};
        };
        Json edges = Json::array();
        for (const auto& e : g.edges)
            edges.push_back(Json{{"witness", e.witness}, {"a", side(e.a)}, {"b", side(e.b)}});
        pj["edges"] = edges;
        Json trace = Json::array();
        for (const auto& k : c.trace) {
            Json kj{{"rule", to_string(k.rule)}, {"witness", k.witness}};
            if (k.rule == KillRule::Gcd)
                kj["gcd"] = k.gcd;
            kj["killed"] = k.killed;
            trace.push_back(kj);
        }
        pj["trace"] = trace;
        pj["pass"] = c.pass;
        pj["surviving"] = c.surviving;
        pj["assumptions"] = c.pass ? Json(std::vector<std::string>(std::begin(kPi1Assumptions),
                                                                   std::end(kPi1Assumptions)))
                                   : Json::array();
        j["pi1"] = pj;
    } else {
        j["pi1"] = nullptr;
    }

    j["notes"] = r.notes;
    j["failures"] = r.failures;
    Json ex = Json::array();
    for (const auto& e : r.expectations)
        ex.push_back(Json{{"line", e.pos.line},
                          {"key", e.label},
                          {"expected", e.expected},
                          {"actual", e.actual},
                          {"ok", e.ok}});
    j["expectations"] = ex;
    return j;
}

} // namespace rbd
