#include "rbd/report.hpp"
#include "rbd/runner.hpp"

#include "doctest.h"

#include <filesystem>

using namespace rbd;

namespace {

std::string bundled(const std::string& name)
{
    return std::string(RBD_CONSTRUCTIONS_DIR) + "/" + name;
}

Report run_text(const std::string& text)
{
    return run(parse_script(text, "t"));
}

const std::string kNodal = R"(surface p2
curve N = 3h
blowup b1 at {N}
blowup b2 at {N}
blowup b3 at {N}
blowup b4 at {N}
blowup b5 at {N}
blowup b6 at {N}
blowup b7 at {N}
blowup b8 at {N}
blowup b9 at {N}
blowup E at {N*2}
chain F = [N]
contract F
)";

} // namespace

TEST_CASE("every bundled script passes")
{
    namespace fs = std::filesystem;
    for (const auto& entry : fs::directory_iterator(RBD_CONSTRUCTIONS_DIR)) {
        if (entry.path().extension() != ".rbd")
            continue;
        CAPTURE(entry.path().string());
        auto r = run(load_script(entry.path().string()));
        CHECK(r.failures.empty());
        for (const auto& e : r.expectations) {
            CAPTURE(e.label);
            CAPTURE(e.actual);
            CHECK(e.ok);
        }
        CHECK(r.passed());
    }
}

TEST_CASE("main construction")
{
    auto r = run(load_script(bundled("main.rbd")));
    CHECK(r.rank == 28);
    CHECK(r.ksq_ambient == -18);
    REQUIRE(r.contraction);
    CHECK(r.contraction->ksq_singular == Rational(2));
    CHECK(r.contraction->nef);
    REQUIRE(r.smoothing);
    CHECK(r.smoothing->pg == 0);
    CHECK(r.smoothing->chi_2k == 3);
    REQUIRE(r.pi1);
    CHECK(r.pi1->certificate.pass);
    REQUIRE(r.blowdown);
    CHECK(*r.blowdown == FourManifoldInvariants{1, 7});
}

TEST_CASE("reports are deterministic")
{
    auto a = to_json(run(load_script(bundled("main.rbd")))).dump(2);
    auto b = to_json(run(load_script(bundled("main.rbd")))).dump(2);
    CHECK(a == b);
    auto j = nlohmann::ordered_json::parse(a);
    CHECK(j["schema"] == 1);
    CHECK(j["passed"] == true);
    CHECK(j.begin().key() == "schema");
    CHECK(render_text(run(load_script(bundled("main.rbd"))), false) ==
          render_text(run(load_script(bundled("main.rbd"))), false));
}

TEST_CASE("text report has no colour unless asked")
{
    auto r = run(load_script(bundled("nodal.rbd")));
    CHECK(render_text(r, false).find('\x1b') == std::string::npos);
    CHECK(render_text(r, true).find('\x1b') != std::string::npos);
}

TEST_CASE("failed asserts and expectations fail the run")
{
    auto r = run_text(kNodal + "assert N == 3h\nexpect ksq_x = 1\nexpect pi1 = PASS\n");
    CHECK_FALSE(r.passed());
    CHECK(r.failures.size() == 1);
    REQUIRE(r.expectations.size() == 2);
    CHECK_FALSE(r.expectations[0].ok);
    CHECK(r.expectations[0].actual == "0");
    CHECK_FALSE(r.expectations[1].ok);
    CHECK(r.expectations[1].actual == "n/a");
}

TEST_CASE("module errors become run errors with the line")
{
    try {
        run_text("surface p2\ncurve A = h\ncurve B = h\nchain P = [A, B]\n");
        FAIL("expected a run error");
    } catch (const RunError& e) {
        CHECK(e.pos().line == 4);
    }
    // A line has self-intersection 1 and cannot sit in a chain.
    CHECK_THROWS_AS(run_text("surface p2\ncurve A = h\nchain P = [A]\n"), RunError);
    // Statically detectable mistakes never reach the runner.
    CHECK_THROWS_AS(run_text("surface p2\ncurve A = h\ncurve A = 2h\n"), ParseError);
    CHECK_THROWS_AS(run_text("surface p2\ncurve B = 1/2 h\n"), ParseError);
}

TEST_CASE("connects are checked against the pairing")
{
    auto base = kNodal;
    // b1 meets N once, but there is only one chain.
    CHECK_THROWS_AS(run_text(base + "connects b1 : F(end) -- F(end)\n"), ParseError);
    // E meets N twice.
    auto two = std::string(R"(surface p2
curve N = 3h
curve M = 3h
blowup b1 at {N, M}
blowup b2 at {N, M}
blowup b3 at {N, M}
blowup b4 at {N, M}
blowup b5 at {N, M}
blowup b6 at {N, M}
blowup b7 at {N, M}
blowup b8 at {N, M}
blowup b9 at {N, M}
blowup E at {N*2}
blowup G at {M*2}
chain P = [N]
chain Q = [M]
contract P, Q
)");
    CHECK_NOTHROW(run_text(two + "connects b1 : P(end) -- Q(end)\n"));
    CHECK_THROWS_AS(run_text(two + "connects E : P(end) -- Q(end)\n"), RunError);
    CHECK_THROWS_AS(run_text(two + "connects G : P(end) -- Q(end)\n"), RunError);
    CHECK_THROWS_AS(run_text(two + "connects b1 : P(mid) -- Q(end)\n"), RunError);
}
