#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "rapidbench/motion.hpp"
#include "rapidbench/numerals.hpp"
#include "rapidbench/parser.hpp"
#include "rapidbench/printer.hpp"
#include "rapidbench/transforms.hpp"

using namespace rapidbench;

namespace {

std::string decl(const std::string& name, double x, double y, double z) {
    return "CONST robtarget " + name + " := [[" + format_number(x) + ", " + format_number(y) +
           ", " + format_number(z) + "], [1, 0, 0, 0], [0, 0, 0, 0], [9E9, 9E9, 9E9, 9E9, 9E9, 9E9]];\n";
}

ModuleAst module_with(const std::string& decls, const std::string& stmts) {
    return parse_module("MODULE M\n" + decls + "PROC main()\n" + stmts + "ENDPROC\nENDMODULE\n");
}

}  // namespace

TEST_CASE("interpret: single linear move") {
    ModuleAst mod = module_with(decl("p1", 100, 0, 0), "MoveL p1, v100, fine, tool0;\n");
    MotionTrace trace = interpret(mod, "main", Pose{});
    REQUIRE(trace.segments.size() == 1);
    const Segment& seg = trace.segments[0];
    CHECK(seg.kind == MoveKind::Linear);
    CHECK(seg.end == Vec3{100, 0, 0});
    CHECK(seg.speed_mm_s == 100.0);
    CHECK(seg.zone_mm == 0.0);
    CHECK(seg.duration_s == doctest::Approx(1.0));
    CHECK(trace.idle_s == 0.0);
}

TEST_CASE("interpret: zero offset is the identity") {
    ModuleAst plain = module_with(decl("p1", 100, 0, 0), "MoveL p1, v100, fine, tool0;\n");
    ModuleAst offs = module_with(decl("p1", 100, 0, 0), "MoveL Offs(p1, 0, 0, 0), v100, fine, tool0;\n");
    CHECK(traces_equal(interpret(plain, "main", Pose{}), interpret(offs, "main", Pose{})));
}

TEST_CASE("interpret: offset displaces the declared position") {
    ModuleAst mod = module_with(decl("p1", 100, 0, 0), "MoveL Offs(p1, 1, -2, 50), v100, fine, tool0;\n");
    MotionTrace trace = interpret(mod, "main", Pose{});
    CHECK(trace.segments[0].end == Vec3{101, -2, 50});
}

TEST_CASE("interpret: circular chord-sum length") {
    ModuleAst mod = module_with(decl("c1", 100, 0, 0) + decl("p1", 100, 100, 0),
                                "MoveC c1, p1, v100, z10, tool0;\n");
    MotionTrace trace = interpret(mod, "main", Pose{});
    REQUIRE(trace.segments.size() == 1);
    const Segment& seg = trace.segments[0];
    CHECK(seg.kind == MoveKind::Circular);
    REQUIRE(seg.via.has_value());
    CHECK(*seg.via == Vec3{100, 0, 0});
    CHECK(seg.zone_mm == 10.0);
    CHECK(seg.duration_s == doctest::Approx(2.0));  // 100 + 100 mm at 100 mm/s
}

TEST_CASE("interpret: waits add idle time, no segment") {
    ModuleAst mod = module_with(decl("p1", 10, 0, 0),
                                "MoveL p1, v100, fine, tool0;\nWaitTime 1.5;\nWaitTime 0.5;\n");
    MotionTrace trace = interpret(mod, "main", Pose{});
    CHECK(trace.segments.size() == 1);
    CHECK(trace.idle_s == doctest::Approx(2.0));
}

TEST_CASE("interpret: joint moves measured as straight lines") {
    ModuleAst mod = module_with(decl("p1", 0, 30, 40), "MoveJ p1, v50, z10, tool0;\n");
    MotionTrace trace = interpret(mod, "main", Pose{});
    CHECK(trace.segments[0].kind == MoveKind::Joint);
    CHECK(trace.segments[0].duration_s == doctest::Approx(1.0));  // 50 mm at 50 mm/s
}

TEST_CASE("interpret: resolution failures") {
    ModuleAst mod = module_with(decl("p1", 1, 0, 0), "MoveL p2, v100, fine, tool0;\n");
    CHECK_THROWS_AS(interpret(mod, "main", Pose{}), UnresolvedName);
    CHECK_THROWS_AS(interpret(mod, "nosuch", Pose{}), UnresolvedName);

    ModuleAst badspeed = module_with(decl("p1", 1, 0, 0), "MoveL p1, vfast, fine, tool0;\n");
    CHECK_THROWS_AS(interpret(badspeed, "main", Pose{}), UnresolvedName);

    ModuleAst badzone = module_with(decl("p1", 1, 0, 0), "MoveL p1, v100, near, tool0;\n");
    CHECK_THROWS_AS(interpret(badzone, "main", Pose{}), UnresolvedName);

    ModuleAst zero = module_with(decl("p1", 1, 0, 0), "MoveL p1, v0, fine, tool0;\n");
    CHECK_THROWS_AS(interpret(zero, "main", Pose{}), ZeroSpeed);
}

TEST_CASE("tables: naming convention and explicit entries") {
    Tables tables;
    CHECK(tables.speeds.lookup("v100") == 100.0);
    CHECK(tables.speeds.lookup("V2500") == 2500.0);
    CHECK(tables.speeds.lookup("vmax") == 7000.0);
    CHECK(!tables.speeds.lookup("fast"));
    CHECK(tables.zones.lookup("fine") == 0.0);
    CHECK(tables.zones.lookup("z10") == 10.0);
    CHECK(tables.zones.lookup("Z200") == 200.0);
    CHECK(!tables.zones.lookup("blend"));
}

TEST_CASE("traces_equal: reflexive, stable under printing, strict at tolerance") {
    ModuleAst mod = module_with(decl("p1", 10, 20, 30) + decl("p2", -5, 0, 12),
                                "MoveL p1, v100, z10, tool0;\nMoveJ p2, v200, fine, tool0;\n");
    MotionTrace a = interpret(mod, "main", Pose{});
    CHECK(traces_equal(a, a));

    MotionTrace b = interpret(parse_module(print_module(mod)), "main", Pose{});
    CHECK(traces_equal(a, b));

    MotionTrace c = a;
    c.segments[1].end.z += 1.0;
    CHECK(!traces_equal(a, c, 1e-6));
}

TEST_CASE("segment-mode reversal retraces the forward endpoints") {
    // Forward trace, reversed endpoint list minus the final point, computed
    // independently of the transform.
    ModuleAst mod = module_with(decl("p1", 100, 0, 0) + decl("p2", 100, 200, 0) + decl("p3", 0, 200, 50),
                                "MoveL p1, v100, z10, tool0;\n"
                                "MoveJ p2, v200, z50, tool0;\n"
                                "MoveL p3, v50, fine, tool0;\n");
    MotionTrace forward = interpret(mod, "main", Pose{});
    REQUIRE(forward.segments.size() == 3);

    std::vector<Vec3> expected;  // reverse of forward endpoints, final dropped
    for (int i = static_cast<int>(forward.segments.size()) - 2; i >= 0; --i)
        expected.push_back(forward.segments[static_cast<std::size_t>(i)].end);

    ModuleAst reversed = apply_task(mod, "main", ReverseParams{ReverseMode::Segment});
    Pose start{forward.segments.back().end, Quat{}};
    MotionTrace back = interpret(reversed, "main", start);

    REQUIRE(back.segments.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(back.segments[i].end.x == doctest::Approx(expected[i].x).epsilon(1e-9));
        CHECK(back.segments[i].end.y == doctest::Approx(expected[i].y).epsilon(1e-9));
        CHECK(back.segments[i].end.z == doctest::Approx(expected[i].z).epsilon(1e-9));
    }
}

TEST_CASE("trace dump: one JSON line per segment, 9 significant digits") {
    ModuleAst mod = module_with(decl("p1", 1, 2, 3) + decl("c1", 0.123456789123, 0, 0),
                                "MoveC c1, p1, v300, z1, tool0;\n");
    MotionTrace trace = interpret(mod, "main", Pose{});
    std::string dump = trace_to_jsonl(trace);
    CHECK(dump == "{\"duration_s\":0.0127800885,\"end\":[1.0,2.0,3.0],\"kind\":\"circular\","
                  "\"speed_mm_s\":300.0,\"via\":[0.123456789,0.0,0.0],\"zone_mm\":1.0}\n");
}
