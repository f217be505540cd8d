#include "rbd/script.hpp"

#include "doctest.h"

#include <filesystem>

using namespace rbd;

namespace {

SourcePos error_pos(std::string_view text)
{
    try {
        parse_script(text);
    } catch (const ParseError& e) {
        return e.pos();
    }
    FAIL("expected a parse error");
    return {};
}

std::string error_detail(std::string_view text)
{
    try {
        parse_script(text);
    } catch (const ParseError& e) {
        return e.detail();
    }
    return "";
}

const char* kSmall = R"(# comment
surface p2
curve B = 2h
curve L = h
blowup e1 at {B, L}
blowup e2 at {B*2}
assert B == 2h - exc(e1) - 2exc(e2)
chain P = [B]
chain Q = [L]
connects e1 : P(end) -- Q(end)
contract P, Q
expect rank = 3
expect discrepancy P = [1/2, 2/3]
expect cpq P = (2, 1)
expect chain P = [4]
expect pi1 = PASS
expect nef = false
expect pullback = K + 1/2 B
)";

} // namespace

TEST_CASE("parse a small script")
{
    auto s = parse_script(kSmall, "small");
    CHECK(s.id == "small");
    REQUIRE(s.statements.size() == 17);
    CHECK(s.statements[0].pos.line == 2);
    const auto& blow = std::get<BlowupStmt>(s.statements[4].body);
    CHECK(blow.name == "e2");
    CHECK(blow.incidences == std::vector<Incidence>{{"B", 2}});
    const auto& con = std::get<ConnectsStmt>(s.statements[8].body);
    CHECK(con.witness == "e1");
    CHECK(con.a.chain == "P");
    CHECK(con.b.attachment == Attachment::End);
    CHECK_FALSE(con.power);
    const auto& pi = std::get<ExpectStmt>(s.statements[14].body);
    CHECK(pi.key == ExpectKey::Pi1);
    CHECK(std::get<bool>(pi.value));
}

TEST_CASE("serialize round-trips")
{
    auto s = parse_script(kSmall);
    auto text = serialize(s);
    auto again = parse_script(text);
    CHECK(again == s);
    CHECK(serialize(again) == text);
}

TEST_CASE("bundled scripts round-trip")
{
    namespace fs = std::filesystem;
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(RBD_CONSTRUCTIONS_DIR)) {
        if (entry.path().extension() != ".rbd")
            continue;
        auto s = load_script(entry.path().string());
        CHECK(s.id == entry.path().filename().string());
        CHECK(parse_script(serialize(s)) == s);
        ++seen;
    }
    CHECK(seen >= 4);
}

TEST_CASE("class expressions merge terms")
{
    auto s = parse_script("surface p2\ncurve A = h + h - 0h + 2*(h - h)\n");
    const auto& c = std::get<CurveStmt>(s.statements[1].body);
    REQUIRE(c.cls.size() == 1);
    CHECK(c.cls[0].coeff == Rational(2));
    CHECK(format_class(c.cls) == "2h");

    auto z = parse_script("surface p2\ncurve A = h\nassert h - h == 0\n");
    CHECK(format_class(std::get<AssertStmt>(z.statements[2].body).lhs) == "0");
}

TEST_CASE("parse errors carry positions")
{
    CHECK(error_pos("").line == 1);
    CHECK(error_detail("") == "missing surface statement");
    CHECK(error_detail("# nothing\n\n") == "missing surface statement");
    CHECK(error_pos("curve A = h\n").line == 1);
    CHECK(error_pos("surface p2\nsurface p2\n").line == 2);

    auto p = error_pos("surface p2\ncurve A = h\nblowup e at {A, Z}\n");
    CHECK(p.line == 3);
    CHECK(p.column == 17);

    CHECK(error_pos("surface p2\nfrobnicate\n").line == 2);
    CHECK(error_pos("surface p2\ncurve A = h\ncurve B = A +\n").line == 3);
    CHECK(error_pos("surface p2\ncurve A = 3\n").line == 2);
    CHECK(error_pos("surface p2\ncurve A = 1/2h\n").line == 2);
    CHECK(error_pos("surface p2\ncurve h = h\n").line == 2);
    CHECK(error_pos("surface p2\ncurve A = h\nchain P = [A, A]\n").line == 3);
    CHECK(error_pos("surface p2\ncurve A = h\nchain P = [A]\ncontract P\ncontract P\n").line == 5);
    CHECK(error_pos("surface p2\ncurve A = h\nchain P = [A]\ncontract Q\n").line == 4);
    CHECK(error_pos("surface p2\nexpect frob = 1\n").line == 2);
    CHECK(error_pos("surface p2\nexpect pi1 = MAYBE\n").line == 2);
    CHECK(error_pos("surface p2\nexpect cpq = (2, 1)\n").line == 2);
}

TEST_CASE("connects validation")
{
    const std::string head = "surface p2\ncurve A = h\ncurve B = h\nblowup e at {A, B}\nchain P = [A]\nchain Q = [B]\n";
    CHECK_NOTHROW(parse_script(head + "connects e : P(mid) -- Q(end) power 2\n"));
    CHECK(error_pos(head + "connects e : P(end) -- Q(end) power 2\n").line == 7);
    CHECK(error_pos(head + "connects e : P(mid) -- Q(mid) power 2\n").line == 7);
    CHECK(error_pos(head + "connects e : P(mid) -- Q(end) power 0\n").line == 7);
    CHECK(error_pos(head + "connects e : P(end) -- P(end)\n").line == 7);
    CHECK(error_pos(head + "connects e : P(side) -- Q(end)\n").line == 7);
    CHECK(error_pos(head + "connects e : P(end) -- R(end)\n").line == 7);
}

TEST_CASE("load_script reports missing files")
{
    CHECK_THROWS(load_script("/nonexistent/file.rbd"));
}
