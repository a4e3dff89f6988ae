#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rapidbench/ast.hpp"
#include "rapidbench/geometry.hpp"

namespace rapidbench {

struct Pose {
    Vec3 position;          // millimetres
    Quat orient;            // unit quaternion
};

struct Segment {
    MoveKind kind = MoveKind::Linear;
    std::optional<Vec3> via;  // present iff kind == Circular
    Vec3 end;
    double speed_mm_s = 0;
    double zone_mm = 0;
    double duration_s = 0;
};

struct MotionTrace {
    Pose start;
    std::vector<Segment> segments;
    double idle_s = 0;  // summed WaitTime seconds; no segment is produced for waits
};

/// Resolves speed and zone identifiers to physical values. Explicit entries
/// win; with the naming convention enabled, vN resolves to N mm/s and zN to
/// N mm (fine is always 0 mm).
struct SpeedTable {
    std::map<std::string, double> entries;  // keys case-folded
    bool naming_convention = true;

    std::optional<double> lookup(const std::string& ident) const;
    static SpeedTable defaults();
};

struct ZoneTable {
    std::map<std::string, double> entries;  // keys case-folded
    bool naming_convention = true;

    std::optional<double> lookup(const std::string& ident) const;
    static ZoneTable defaults();
};

struct Tables {
    SpeedTable speeds = SpeedTable::defaults();
    ZoneTable zones = ZoneTable::defaults();
};

/// Executes one procedure geometrically: one segment per movement statement,
/// in order. Offset targets displace the declared position componentwise.
/// Path length is the straight-line distance for linear/joint moves and the
/// chord sum |prev->via| + |via->end| for circular moves; duration is
/// length/speed. Throws UnresolvedName or ZeroSpeed.
MotionTrace interpret(const ModuleAst& mod, const std::string& proc_name, const Pose& start,
                      const Tables& tables = {});

/// Segment-wise comparison: same count and kinds, endpoints and via points
/// within tol_mm componentwise, speeds and zones exactly equal.
bool traces_equal(const MotionTrace& a, const MotionTrace& b, double tol_mm = 1e-6);

/// Trace dump for golden tests: JSON lines, one segment per line, numerals
/// with at most 9 significant digits.
std::string trace_to_jsonl(const MotionTrace& trace);

}  // namespace rapidbench
