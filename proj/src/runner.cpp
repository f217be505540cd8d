#include "rbd/runner.hpp"

#include <algorithm>
#include <map>

namespace rbd {

RunError::RunError(SourcePos pos, const std::string& message)
    : std::runtime_error("line " + std::to_string(pos.line) + ": " + message), pos_(pos)
{
}

bool Report::passed() const
{
    return failures.empty() &&
           std::all_of(expectations.begin(), expectations.end(), [](const ExpectResult& e) { return e.ok; });
}

namespace {

template <class F>
auto at(SourcePos pos, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const RunError&) {
        throw;
    } catch (const std::exception& e) {
        throw RunError(pos, e.what());
    }
}

DivisorClass integral(const RationalClass& c)
{
    std::vector<std::int64_t> out;
    for (const auto& x : c.coeffs()) {
        if (!x.is_integer())
            throw BuildError("class " + c.str() + " is not integral");
        out.push_back(x.num());
    }
    return DivisorClass(std::move(out));
}

template <class T, class F>
std::string bracket(const std::vector<T>& xs, F f)
{
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? ", " : "") + f(xs[i]);
    return out + "]";
}

std::string rat_list(const std::vector<Rational>& v)
{
    return bracket(v, [](const Rational& r) { return r.str(); });
}

std::string int_list(const std::vector<std::int64_t>& v)
{
    return bracket(v, [](std::int64_t x) { return std::to_string(x); });
}

// Which curve of the chain the witness meets, as a position in the chain.
std::size_t attachment_index(const SurfaceState& s, const std::string& witness, const std::string& chain)
{
    const auto& curves = s.chain_curves(chain);
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        auto v = pair(s.curve(witness), s.curve(curves[i]));
        if (v == 0)
            continue;
        if (v != 1)
            throw BuildError(witness + " . " + curves[i] + " = " + std::to_string(v) + ", expected 0 or 1");
        if (hit)
            throw BuildError(witness + " meets chain " + chain + " in more than one curve");
        hit = i;
    }
    if (!hit)
        throw BuildError(witness + " does not meet chain " + chain);
    return *hit;
}

EdgeSide make_side(const SurfaceState& s, const ConnectsStmt& c, const ConnectSide& side, std::size_t node)
{
    auto idx = attachment_index(s, c.witness, side.chain);
    auto len = s.chain_curves(side.chain).size();
    bool is_end = idx == 0 || idx + 1 == len;
    const auto& met = s.chain_curves(side.chain)[idx];
    if (side.attachment == Attachment::End && !is_end)
        throw BuildError(c.witness + " meets " + side.chain + " at " + met + ", which is not an end curve");
    if (side.attachment == Attachment::Mid && is_end)
        throw BuildError(c.witness + " meets " + side.chain + " at the end curve " + met + ", declared mid");
    EdgeSide out{node, side.attachment, std::nullopt};
    if (side.attachment == Attachment::Mid)
        out.power = c.power;
    return out;
}

struct Pending {
    SourcePos pos;
    const ConnectsStmt* connects = nullptr;
};

class Runner {
public:
    explicit Runner(const Script& script) : script_(script) { report_.id = script.id; }

    Report run()
    {
        for (const auto& st : script_.statements)
            execute(st);
        report_.rank = state_.rank();
        report_.ksq_ambient = state_.ksq();
        report_.basis = state_.basis_labels();
        check_chains();
        contract();
        topology();
        certificate();
        expectations();
        return std::move(report_);
    }

private:
    void execute(const Statement& st)
    {
        std::visit(
            [&](const auto& body) {
                using T = std::decay_t<decltype(body)>;
                if constexpr (std::is_same_v<T, CurveStmt>) {
                    at(st.pos, [&] { state_.add_curve(body.name, integral(state_.evaluate(body.cls))); });
                } else if constexpr (std::is_same_v<T, BlowupStmt>) {
                    at(st.pos, [&] { state_.blow_up(body.name, body.incidences); });
                } else if constexpr (std::is_same_v<T, ChainStmt>) {
                    at(st.pos, [&] { state_.declare_chain(body.name, body.curves); });
                    chain_pos_[body.name] = st.pos;
                } else if constexpr (std::is_same_v<T, AssertStmt>) {
                    bool ok = at(st.pos, [&] { return state_.assert_equal_class(body.lhs, body.rhs); });
                    auto text = format_class(body.lhs) + " == " + format_class(body.rhs);
                    report_.asserts.push_back({st.pos, text, ok});
                    if (!ok)
                        report_.failures.push_back("line " + std::to_string(st.pos.line) + ": assert " + text +
                                                   " is false");
                } else if constexpr (std::is_same_v<T, ConnectsStmt>) {
                    connects_.push_back({st.pos, &body});
                } else if constexpr (std::is_same_v<T, ContractStmt>) {
                    contract_pos_ = st.pos;
                    report_.contracted = body.chains;
                } else if constexpr (std::is_same_v<T, ExpectStmt>) {
                    expects_.push_back(&st);
                }
            },
            st.body);
    }

    void check_chains()
    {
        for (const auto& name : state_.chain_names())
            report_.chains.push_back(at(chain_pos_.at(name), [&] { return contract_chain(state_, name); }));
    }

    const ChainContraction& chain_entry(const std::string& name) const
    {
        return *std::find_if(report_.chains.begin(), report_.chains.end(),
                             [&](const ChainContraction& c) { return c.name == name; });
    }

    void contract()
    {
        if (!contract_pos_)
            return;
        report_.contraction = at(*contract_pos_, [&] {
            auto pullback = pullback_canonical(state_, report_.contracted);
            return nef_report(state_, report_.contracted, pullback);
        });
        report_.notes.push_back("nefness is tested only against the registered curves listed in the table");
    }

    void topology()
    {
        report_.ambient = blown_up_plane(static_cast<std::int64_t>(state_.blowups()));
        if (!report_.contraction)
            return;
        std::vector<std::size_t> lengths;
        bool all_wahl = true;
        for (const auto& name : report_.contracted) {
            const auto& c = chain_entry(name);
            lengths.push_back(c.chain.size());
            all_wahl = all_wahl && c.cpq.has_value();
        }
        try {
            report_.blowdown = blowdown_invariants(*report_.ambient, lengths);
        } catch (const TopologyError& e) {
            report_.failures.push_back(std::string("blow-down: ") + e.what());
            return;
        }
        if (!all_wahl) {
            report_.notes.push_back("some contracted chain is not a Wahl chain; rational blow-down skipped");
            report_.blowdown.reset();
            return;
        }
        try {
            report_.smoothing = smoothing_invariants(report_.contraction->ksq_singular, lengths, *report_.ambient);
        } catch (const TopologyError& e) {
            report_.failures.push_back(std::string("smoothing: ") + e.what());
        }
    }

    void certificate()
    {
        if (connects_.empty())
            return;
        Pi1Report pi1;
        std::map<std::string, std::size_t> node;
        for (const auto& name : report_.contracted)
            node[name] = pi1.graph.add_node(name, chain_entry(name).lens_order);
        for (const auto& [pos, c] : connects_) {
            at(pos, [&] {
                for (const auto& chain : state_.chain_names()) {
                    const auto& curves = state_.chain_curves(chain);
                    if (std::find(curves.begin(), curves.end(), c->witness) != curves.end())
                        throw BuildError(c->witness + " lies on chain " + chain);
                }
                for (const auto* side : {&c->a, &c->b})
                    if (!node.contains(side->chain))
                        throw BuildError("chain " + side->chain + " is not contracted");
                pi1.graph.add_edge(c->witness, make_side(state_, *c, c->a, node.at(c->a.chain)),
                                   make_side(state_, *c, c->b, node.at(c->b.chain)));
            });
        }
        pi1.certificate = pi1_certificate(pi1.graph);
        report_.pi1 = std::move(pi1);
    }

    void expectations()
    {
        for (const auto* st : expects_) {
            const auto& e = std::get<ExpectStmt>(st->body);
            ExpectResult r;
            r.pos = st->pos;
            r.label = std::string(to_string(e.key)) + (e.subject.empty() ? "" : " " + e.subject);
            auto full = format_statement(e);
            r.expected = full.substr(full.find(" = ") + 3);
            r.actual = "n/a";
            try {
                evaluate(e, r);
            } catch (const std::exception& ex) {
                r.actual = std::string("error: ") + ex.what();
                r.ok = false;
            }
            report_.expectations.push_back(std::move(r));
        }
    }

    void evaluate(const ExpectStmt& e, ExpectResult& r) const
    {
        auto scalar = [&](const Rational& actual) {
            r.actual = actual.str();
            r.ok = actual == std::get<Rational>(e.value);
        };
        const auto& con = report_.contraction;
        const auto& sm = report_.smoothing;
        switch (e.key) {
        case ExpectKey::KsqAmbient:
            scalar(Rational(report_.ksq_ambient));
            break;
        case ExpectKey::Rank:
            scalar(Rational(static_cast<std::int64_t>(report_.rank)));
            break;
        case ExpectKey::KsqX:
            if (con)
                scalar(con->ksq_singular);
            break;
        case ExpectKey::Nef:
            if (con) {
                r.actual = con->nef ? "true" : "false";
                r.ok = con->nef == std::get<bool>(e.value);
            }
            break;
        case ExpectKey::Pi1:
            if (report_.pi1) {
                bool pass = report_.pi1->certificate.pass;
                r.actual = pass ? "PASS" : "FAIL";
                r.ok = pass == std::get<bool>(e.value);
            }
            break;
        case ExpectKey::Pg:
            if (sm)
                scalar(Rational(sm->pg));
            break;
        case ExpectKey::Chi2K:
            if (sm)
                scalar(Rational(sm->chi_2k));
            break;
        case ExpectKey::Discrepancy: {
            const auto& d = chain_entry(e.subject).discrepancies;
            r.actual = rat_list(d);
            r.ok = d == std::get<std::vector<Rational>>(e.value);
            break;
        }
        case ExpectKey::Chain: {
            const auto& b = chain_entry(e.subject).chain.vec();
            r.actual = int_list(b);
            r.ok = b == std::get<std::vector<std::int64_t>>(e.value);
            break;
        }
        case ExpectKey::Cpq: {
            const auto& m = chain_entry(e.subject).cpq;
            if (m) {
                r.actual = "(" + std::to_string(m->params.p) + ", " + std::to_string(m->params.q) + ")";
                r.ok = m->params == std::get<CpqParams>(e.value);
            } else {
                r.actual = "not a Wahl chain";
            }
            break;
        }
        case ExpectKey::NefVal:
            if (con)
                scalar(pair(con->pullback, state_.curve(e.subject)));
            break;
        case ExpectKey::Pullback:
            if (con) {
                auto want = state_.evaluate(std::get<ClassExpr>(e.value));
                r.ok = want == con->pullback;
                r.actual = r.ok ? r.expected : con->pullback.str();
            }
            break;
        }
    }

    const Script& script_;
    SurfaceState state_ = SurfaceState::begin_plane();
    Report report_;
    std::map<std::string, SourcePos> chain_pos_;
    std::optional<SourcePos> contract_pos_;
    std::vector<Pending> connects_;
    std::vector<const Statement*> expects_;
};

} // namespace

Report run(const Script& script)
{
    return Runner(script).run();
}

} // namespace rbd
