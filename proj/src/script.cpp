#include "rbd/script.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <filesystem>
#include <sstream>
#include <unordered_set>

namespace rbd {

ParseError::ParseError(SourcePos pos, const std::string& message)
    : std::runtime_error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " +
                         message),
      pos_(pos), detail_(message)
{
}

const char* to_string(ExpectKey k)
{
    switch (k) {
    case ExpectKey::KsqAmbient: return "ksq_ambient";
    case ExpectKey::KsqX: return "ksq_x";
    case ExpectKey::Nef: return "nef";
    case ExpectKey::Pi1: return "pi1";
    case ExpectKey::Rank: return "rank";
    case ExpectKey::Discrepancy: return "discrepancy";
    case ExpectKey::NefVal: return "nefval";
    case ExpectKey::Pg: return "pg";
    case ExpectKey::Chi2K: return "chi2k";
    case ExpectKey::Chain: return "chain";
    case ExpectKey::Cpq: return "cpq";
    case ExpectKey::Pullback: return "pullback";
    }
    return "?";
}

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t column = 0;
};

bool ident_start(char c)
{
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool ident_char(char c)
{
    return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

bool digit(char c)
{
    return c >= '0' && c <= '9';
}

std::vector<Token> tokenize(std::string_view line, std::size_t line_no)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#')
            break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (ident_start(c)) {
            while (i < line.size() && ident_char(line[i]))
                ++i;
            out.push_back({Tok::Ident, std::string(line.substr(start, i - start)), start + 1});
        } else if (digit(c)) {
            while (i < line.size() && digit(line[i]))
                ++i;
            out.push_back({Tok::Int, std::string(line.substr(start, i - start)), start + 1});
        } else if (c == '=' && i + 1 < line.size() && line[i + 1] == '=') {
            out.push_back({Tok::Sym, "==", start + 1});
            i += 2;
        } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '-') {
            out.push_back({Tok::Sym, "--", start + 1});
            i += 2;
        } else if (std::string_view("={}[](),*+-/:").find(c) != std::string_view::npos) {
            out.push_back({Tok::Sym, std::string(1, c), start + 1});
            ++i;
        } else {
            throw ParseError({line_no, start + 1}, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", line.size() + 1});
    return out;
}

bool reserved(const std::string& name)
{
    return name == "h" || name == "K" || name == "exc";
}

struct Names {
    std::unordered_set<std::string> curves;
    std::unordered_set<std::string> exceptional;
    std::unordered_set<std::string> chains;
};

class LineParser {
public:
    LineParser(std::vector<Token> toks, std::size_t line, const Names& names)
        : toks_(std::move(toks)), line_(line), names_(names)
    {
    }

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    SourcePos where(const Token& t) const { return {line_, t.column}; }
    SourcePos where() const { return where(peek()); }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(where(t), msg); }

    bool at_sym(std::string_view s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool at_ident(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

    Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    void expect_sym(std::string_view s)
    {
        if (!at_sym(s))
            fail(peek(), "expected '" + std::string(s) + "'" + found());
        next();
    }

    void expect_word(std::string_view s)
    {
        if (!at_ident(s))
            fail(peek(), "expected '" + std::string(s) + "'" + found());
        next();
    }

    std::string found() const
    {
        return peek().kind == Tok::End ? ", found end of line" : ", found '" + peek().text + "'";
    }

    void expect_end()
    {
        if (peek().kind != Tok::End)
            fail(peek(), "unexpected '" + peek().text + "'");
    }

    std::string ident(const char* what)
    {
        if (peek().kind != Tok::Ident)
            fail(peek(), std::string("expected ") + what + found());
        return next().text;
    }

    std::string new_name(const char* what)
    {
        const Token& t = peek();
        auto name = ident(what);
        if (reserved(name))
            fail(t, "'" + name + "' is reserved");
        return name;
    }

    std::string known_curve()
    {
        const Token& t = peek();
        auto name = ident("a curve name");
        if (!names_.curves.contains(name))
            fail(t, "unknown curve '" + name + "'");
        return name;
    }

    std::string known_chain()
    {
        const Token& t = peek();
        auto name = ident("a chain name");
        if (!names_.chains.contains(name))
            fail(t, "unknown chain '" + name + "'");
        return name;
    }

    std::int64_t integer()
    {
        const Token& t = peek();
        if (t.kind != Tok::Int)
            fail(t, "expected an integer" + found());
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || p != t.text.data() + t.text.size())
            fail(t, "integer out of range: " + t.text);
        next();
        return v;
    }

    std::int64_t signed_integer()
    {
        bool neg = false;
        if (at_sym("-")) {
            next();
            neg = true;
        }
        auto v = integer();
        return neg ? -v : v;
    }

    // INT or INT/INT, no sign.
    Rational unsigned_rational()
    {
        const Token& t = peek();
        auto n = integer();
        std::int64_t d = 1;
        if (at_sym("/")) {
            next();
            d = integer();
            if (d == 0)
                fail(t, "zero denominator");
        }
        return Rational(n, d);
    }

    Rational signed_rational()
    {
        bool neg = false;
        if (at_sym("-")) {
            next();
            neg = true;
        }
        auto r = unsigned_rational();
        return neg ? -r : r;
    }

    ClassExpr class_expr()
    {
        std::vector<ClassTerm> raw;
        sum(Rational(1), raw);
        ClassExpr merged;
        for (const auto& t : raw) {
            auto it = std::find_if(merged.begin(), merged.end(), [&](const ClassTerm& m) { return m.atom == t.atom; });
            if (it == merged.end())
                merged.push_back(t);
            else
                it->coeff += t.coeff;
        }
        std::erase_if(merged, [](const ClassTerm& t) { return t.coeff.is_zero(); });
        return merged;
    }

private:
    void sum(Rational scale, std::vector<ClassTerm>& acc)
    {
        Rational sign(1);
        if (at_sym("+")) {
            next();
        } else if (at_sym("-")) {
            next();
            sign = Rational(-1);
        }
        for (;;) {
            term(scale * sign, acc);
            if (at_sym("+")) {
                next();
                sign = Rational(1);
            } else if (at_sym("-")) {
                next();
                sign = Rational(-1);
            } else {
                break;
            }
        }
    }

    void term(Rational scale, std::vector<ClassTerm>& acc)
    {
        const Token& start = peek();
        Rational coeff(1);
        if (peek().kind == Tok::Int) {
            coeff = unsigned_rational();
            if (at_sym("*"))
                next();
            else if (peek().kind != Tok::Ident && !at_sym("(")) {
                if (!coeff.is_zero())
                    fail(start, "a class term needs h, K, a curve or exc(...)");
                return;
            }
        }
        atom(scale * coeff, acc);
    }

    void atom(Rational coeff, std::vector<ClassTerm>& acc)
    {
        const Token& t = peek();
        if (at_sym("(")) {
            next();
            sum(coeff, acc);
            expect_sym(")");
            return;
        }
        if (t.kind != Tok::Ident)
            fail(t, "expected a class term" + found());
        auto name = next().text;
        if (name == "h") {
            acc.push_back({coeff, {ClassAtom::Kind::Hyperplane, ""}});
        } else if (name == "K") {
            acc.push_back({coeff, {ClassAtom::Kind::Canonical, ""}});
        } else if (name == "exc") {
            expect_sym("(");
            const Token& nt = peek();
            auto e = ident("a blow-up name");
            if (!names_.exceptional.contains(e))
                fail(nt, "'" + e + "' is not a blow-up");
            expect_sym(")");
            acc.push_back({coeff, {ClassAtom::Kind::Exceptional, e}});
        } else {
            if (!names_.curves.contains(name))
                fail(t, "unknown curve '" + name + "'");
            acc.push_back({coeff, {ClassAtom::Kind::Curve, name}});
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_;
    const Names& names_;
};

} // namespace

Script parse_script(std::string_view text, std::string id)
{
    Script script;
    script.id = std::move(id);
    Names names;
    bool have_surface = false;
    bool have_contract = false;
    std::size_t line_no = 0;

    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        LineParser p(tokenize(line, line_no), line_no, names);
        if (p.peek().kind == Tok::End)
            continue;
        const Token kw = p.peek();
        if (kw.kind != Tok::Ident)
            p.fail(kw, "expected a keyword, found '" + kw.text + "'");
        p.next();
        SourcePos pos = p.where(kw);

        if (kw.text != "surface" && !have_surface)
            throw ParseError(pos, "missing surface statement");

        StatementBody body;
        if (kw.text == "surface") {
            if (have_surface)
                p.fail(kw, "duplicate surface statement");
            if (!script.statements.empty())
                p.fail(kw, "surface must be the first statement");
            p.expect_word("p2");
            have_surface = true;
            body = SurfaceStmt{};
        } else if (kw.text == "curve") {
            const Token nt = p.peek();
            auto name = p.new_name("a curve name");
            if (names.curves.contains(name))
                p.fail(nt, "duplicate curve name '" + name + "'");
            p.expect_sym("=");
            const Token ct = p.peek();
            auto cls = p.class_expr();
            for (const auto& t : cls)
                if (!t.coeff.is_integer())
                    p.fail(ct, "a curve class needs integer coefficients");
            names.curves.insert(name);
            body = CurveStmt{name, std::move(cls)};
        } else if (kw.text == "blowup") {
            const Token nt = p.peek();
            auto name = p.new_name("a blow-up name");
            if (names.curves.contains(name))
                p.fail(nt, "duplicate curve name '" + name + "'");
            p.expect_word("at");
            p.expect_sym("{");
            std::vector<Incidence> incs;
            std::unordered_set<std::string> seen;
            if (!p.at_sym("}")) {
                for (;;) {
                    const Token ct = p.peek();
                    Incidence inc{p.known_curve(), 1};
                    if (!seen.insert(inc.curve).second)
                        p.fail(ct, "curve '" + inc.curve + "' listed twice");
                    if (p.at_sym("*")) {
                        p.next();
                        const Token mt = p.peek();
                        inc.multiplicity = p.integer();
                        if (inc.multiplicity < 1)
                            p.fail(mt, "multiplicity must be positive");
                    }
                    incs.push_back(std::move(inc));
                    if (!p.at_sym(","))
                        break;
                    p.next();
                }
            }
            p.expect_sym("}");
            names.curves.insert(name);
            names.exceptional.insert(name);
            body = BlowupStmt{name, std::move(incs)};
        } else if (kw.text == "chain") {
            const Token nt = p.peek();
            auto name = p.new_name("a chain name");
            if (names.chains.contains(name))
                p.fail(nt, "duplicate chain name '" + name + "'");
            p.expect_sym("=");
            p.expect_sym("[");
            std::vector<std::string> curves;
            std::unordered_set<std::string> seen;
            for (;;) {
                const Token ct = p.peek();
                auto c = p.known_curve();
                if (!seen.insert(c).second)
                    p.fail(ct, "curve '" + c + "' listed twice");
                curves.push_back(std::move(c));
                if (!p.at_sym(","))
                    break;
                p.next();
            }
            p.expect_sym("]");
            names.chains.insert(name);
            body = ChainStmt{name, std::move(curves)};
        } else if (kw.text == "assert") {
            auto lhs = p.class_expr();
            p.expect_sym("==");
            auto rhs = p.class_expr();
            body = AssertStmt{std::move(lhs), std::move(rhs)};
        } else if (kw.text == "connects") {
            ConnectsStmt c;
            c.witness = p.known_curve();
            p.expect_sym(":");
            auto side = [&] {
                ConnectSide s;
                s.chain = p.known_chain();
                p.expect_sym("(");
                const Token at = p.peek();
                auto word = p.ident("'end' or 'mid'");
                if (word == "end")
                    s.attachment = Attachment::End;
                else if (word == "mid")
                    s.attachment = Attachment::Mid;
                else
                    p.fail(at, "expected 'end' or 'mid', found '" + word + "'");
                p.expect_sym(")");
                return s;
            };
            const Token at = p.peek();
            c.a = side();
            p.expect_sym("--");
            c.b = side();
            if (c.a.chain == c.b.chain)
                p.fail(at, "a connection needs two different chains");
            if (p.at_ident("power")) {
                const Token pt = p.next();
                int mids = (c.a.attachment == Attachment::Mid) + (c.b.attachment == Attachment::Mid);
                if (mids != 1)
                    p.fail(pt, "power applies only when exactly one side is mid");
                const Token vt = p.peek();
                c.power = p.signed_integer();
                if (*c.power == 0)
                    p.fail(vt, "power must be non-zero");
            }
            body = std::move(c);
        } else if (kw.text == "contract") {
            if (have_contract)
                p.fail(kw, "duplicate contract statement");
            ContractStmt c;
            std::unordered_set<std::string> seen;
            for (;;) {
                const Token ct = p.peek();
                auto name = p.known_chain();
                if (!seen.insert(name).second)
                    p.fail(ct, "chain '" + name + "' listed twice");
                c.chains.push_back(std::move(name));
                if (!p.at_sym(","))
                    break;
                p.next();
            }
            have_contract = true;
            body = std::move(c);
        } else if (kw.text == "expect") {
            ExpectStmt e;
            const Token key = p.peek();
            auto k = p.ident("an expectation key");
            auto list = [&](auto item) {
                p.expect_sym("[");
                std::vector<decltype(item())> out;
                for (;;) {
                    out.push_back(item());
                    if (!p.at_sym(","))
                        break;
                    p.next();
                }
                p.expect_sym("]");
                return out;
            };
            if (k == "ksq_ambient" || k == "ksq_x" || k == "rank" || k == "pg" || k == "chi2k") {
                e.key = k == "ksq_ambient" ? ExpectKey::KsqAmbient
                        : k == "ksq_x"     ? ExpectKey::KsqX
                        : k == "rank"      ? ExpectKey::Rank
                        : k == "pg"        ? ExpectKey::Pg
                                           : ExpectKey::Chi2K;
                p.expect_sym("=");
                e.value = p.signed_rational();
            } else if (k == "nef" || k == "pi1") {
                e.key = k == "nef" ? ExpectKey::Nef : ExpectKey::Pi1;
                p.expect_sym("=");
                const Token vt = p.peek();
                auto word = p.ident(k == "nef" ? "true or false" : "PASS or FAIL");
                const char* yes = k == "nef" ? "true" : "PASS";
                const char* no = k == "nef" ? "false" : "FAIL";
                if (word != yes && word != no)
                    p.fail(vt, std::string("expected ") + yes + " or " + no + ", found '" + word + "'");
                e.value = word == yes;
            } else if (k == "discrepancy") {
                e.key = ExpectKey::Discrepancy;
                e.subject = p.known_chain();
                p.expect_sym("=");
                e.value = list([&] { return p.signed_rational(); });
            } else if (k == "chain") {
                e.key = ExpectKey::Chain;
                e.subject = p.known_chain();
                p.expect_sym("=");
                e.value = list([&] { return p.integer(); });
            } else if (k == "nefval") {
                e.key = ExpectKey::NefVal;
                e.subject = p.known_curve();
                p.expect_sym("=");
                e.value = p.signed_rational();
            } else if (k == "cpq") {
                e.key = ExpectKey::Cpq;
                e.subject = p.known_chain();
                p.expect_sym("=");
                p.expect_sym("(");
                const Token vt = p.peek();
                auto a = p.integer();
                p.expect_sym(",");
                auto b = p.integer();
                p.expect_sym(")");
                try {
                    e.value = CpqParams::make(a, b);
                } catch (const ChainError& err) {
                    p.fail(vt, err.what());
                }
            } else if (k == "pullback") {
                e.key = ExpectKey::Pullback;
                p.expect_sym("=");
                e.value = p.class_expr();
            } else {
                p.fail(key, "unknown expectation key '" + k + "'");
            }
            body = std::move(e);
        } else {
            p.fail(kw, "unknown keyword '" + kw.text + "'");
        }
        p.expect_end();
        script.statements.push_back(Statement{pos, std::move(body)});
    }
    if (!have_surface)
        throw ParseError({std::max<std::size_t>(line_no, 1), 1}, "missing surface statement");
    return script;
}

Script load_script(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_script(ss.str(), std::filesystem::path(path).filename().string());
}

namespace {

std::string format_atom(const ClassAtom& a)
{
    switch (a.kind) {
    case ClassAtom::Kind::Hyperplane: return "h";
    case ClassAtom::Kind::Canonical: return "K";
    case ClassAtom::Kind::Curve: return a.name;
    case ClassAtom::Kind::Exceptional: return "exc(" + a.name + ")";
    }
    return "?";
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F f, const char* sep = ", ")
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            out += sep;
        out += f(xs[i]);
    }
    return out;
}

std::string format_side(const ConnectSide& s)
{
    return s.chain + (s.attachment == Attachment::End ? "(end)" : "(mid)");
}

} // namespace

std::string format_class(const ClassExpr& e)
{
    if (e.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto& t = e[i];
        bool neg = t.coeff.sign() < 0;
        if (i == 0)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        auto mag = neg ? -t.coeff : t.coeff;
        auto atom = format_atom(t.atom);
        bool glue = t.atom.kind == ClassAtom::Kind::Hyperplane || t.atom.kind == ClassAtom::Kind::Canonical;
        if (mag == Rational(1))
            out += atom;
        else if (mag.is_integer() && glue)
            out += mag.str() + atom;
        else
            out += mag.str() + "*" + atom;
    }
    return out;
}

std::string format_statement(const StatementBody& body)
{
    struct V {
        std::string operator()(const SurfaceStmt&) const { return "surface p2"; }
        std::string operator()(const CurveStmt& s) const { return "curve " + s.name + " = " + format_class(s.cls); }
        std::string operator()(const BlowupStmt& s) const
        {
            return "blowup " + s.name + " at {" + join(s.incidences, [](const Incidence& i) {
                       return i.multiplicity == 1 ? i.curve : i.curve + "*" + std::to_string(i.multiplicity);
                   }) + "}";
        }
        std::string operator()(const ChainStmt& s) const
        {
            return "chain " + s.name + " = [" + join(s.curves, [](const std::string& c) { return c; }) + "]";
        }
        std::string operator()(const AssertStmt& s) const
        {
            return "assert " + format_class(s.lhs) + " == " + format_class(s.rhs);
        }
        std::string operator()(const ConnectsStmt& s) const
        {
            std::string out = "connects " + s.witness + " : " + format_side(s.a) + " -- " + format_side(s.b);
            if (s.power)
                out += " power " + std::to_string(*s.power);
            return out;
        }
        std::string operator()(const ContractStmt& s) const
        {
            return "contract " + join(s.chains, [](const std::string& c) { return c; });
        }
        std::string operator()(const ExpectStmt& s) const
        {
            std::string out = std::string("expect ") + to_string(s.key);
            if (!s.subject.empty())
                out += " " + s.subject;
            out += " = ";
            struct Val {
                ExpectKey key;
                std::string operator()(const Rational& r) const { return r.str(); }
                std::string operator()(bool b) const
                {
                    if (key == ExpectKey::Pi1)
                        return b ? "PASS" : "FAIL";
                    return b ? "true" : "false";
                }
                std::string operator()(const std::vector<Rational>& v) const
                {
                    return "[" + join(v, [](const Rational& r) { return r.str(); }) + "]";
                }
                std::string operator()(const std::vector<std::int64_t>& v) const
                {
                    return "[" + join(v, [](std::int64_t x) { return std::to_string(x); }) + "]";
                }
                std::string operator()(const CpqParams& c) const
                {
                    return "(" + std::to_string(c.p) + ", " + std::to_string(c.q) + ")";
                }
                std::string operator()(const ClassExpr& e) const { return format_class(e); }
            };
            return out + std::visit(Val{s.key}, s.value);
        }
    };
    return std::visit(V{}, body);
}

std::string serialize(const Script& s)
{
    std::string out;
    for (const auto& st : s.statements)
        out += format_statement(st.body) + "\n";
    return out;
}

} // namespace rbd
