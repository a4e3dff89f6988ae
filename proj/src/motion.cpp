#include "rapidbench/motion.hpp"

#include <cctype>
#include <cmath>

#include <json.hpp>

#include "rapidbench/numerals.hpp"

namespace rapidbench {

namespace {

// vNNN / zNN convention: a lower-case prefix letter followed by digits.
std::optional<double> convention_value(const std::string& folded, char prefix) {
    if (folded.size() < 2 || folded[0] != prefix) return std::nullopt;
    double value = 0;
    for (std::size_t i = 1; i < folded.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(folded[i]))) return std::nullopt;
        value = value * 10 + (folded[i] - '0');
    }
    return value;
}

}  // namespace

std::optional<double> SpeedTable::lookup(const std::string& ident) const {
    std::string folded = fold_case(ident);
    if (auto it = entries.find(folded); it != entries.end()) return it->second;
    if (naming_convention) return convention_value(folded, 'v');
    return std::nullopt;
}

SpeedTable SpeedTable::defaults() {
    SpeedTable t;
    t.entries = {{"vmax", 7000.0}};
    return t;
}

std::optional<double> ZoneTable::lookup(const std::string& ident) const {
    std::string folded = fold_case(ident);
    if (folded == "fine") return 0.0;
    if (auto it = entries.find(folded); it != entries.end()) return it->second;
    if (naming_convention) return convention_value(folded, 'z');
    return std::nullopt;
}

ZoneTable ZoneTable::defaults() { return {}; }

namespace {

Vec3 resolve_point(const ModuleAst& mod, const TargetExpr& expr) {
    const std::string& base = target_name(expr);
    const TargetDecl* decl = mod.find_declaration(base);
    if (!decl) throw UnresolvedName(base, "target");
    Vec3 p = decl->target.trans;
    if (const auto* off = std::get_if<OffsetTarget>(&expr)) p = p + Vec3{off->dx, off->dy, off->dz};
    return p;
}

}  // namespace

MotionTrace interpret(const ModuleAst& mod, const std::string& proc_name, const Pose& start,
                      const Tables& tables) {
    const ProcAst* proc = mod.find_procedure(proc_name);
    if (!proc) throw UnresolvedName(proc_name, "procedure");

    MotionTrace trace;
    trace.start = start;
    Vec3 here = start.position;
    for (const auto& stmt : proc->statements) {
        if (const auto* wait = std::get_if<WaitStmt>(&stmt)) {
            trace.idle_s += wait->seconds;
            continue;
        }
        const auto& move = std::get<MoveStmt>(stmt);
        Segment seg;
        seg.kind = move.kind;
        seg.end = resolve_point(mod, move.target);

        auto speed = tables.speeds.lookup(move.speed);
        if (!speed) throw UnresolvedName(move.speed, "speed");
        if (*speed <= 0) throw ZeroSpeed(move.speed);
        seg.speed_mm_s = *speed;

        auto zone = tables.zones.lookup(move.zone);
        if (!zone) throw UnresolvedName(move.zone, "zone");
        seg.zone_mm = *zone;

        double length = 0;
        if (move.kind == MoveKind::Circular) {
            Vec3 via = resolve_point(mod, *move.via);
            seg.via = via;
            length = distance(here, via) + distance(via, seg.end);
        } else {
            length = distance(here, seg.end);
        }
        seg.duration_s = length / seg.speed_mm_s;
        here = seg.end;
        trace.segments.push_back(seg);
    }
    return trace;
}

bool traces_equal(const MotionTrace& a, const MotionTrace& b, double tol_mm) {
    if (a.segments.size() != b.segments.size()) return false;
    auto close = [tol_mm](const Vec3& p, const Vec3& q) {
        return std::fabs(p.x - q.x) <= tol_mm && std::fabs(p.y - q.y) <= tol_mm &&
               std::fabs(p.z - q.z) <= tol_mm;
    };
    for (std::size_t i = 0; i < a.segments.size(); ++i) {
        const Segment& s = a.segments[i];
        const Segment& t = b.segments[i];
        if (s.kind != t.kind) return false;
        if (s.via.has_value() != t.via.has_value()) return false;
        if (s.via && !close(*s.via, *t.via)) return false;
        if (!close(s.end, t.end)) return false;
        if (s.speed_mm_s != t.speed_mm_s || s.zone_mm != t.zone_mm) return false;
    }
    return true;
}

std::string trace_to_jsonl(const MotionTrace& trace) {
    auto sig9 = [](double v) { return round_significant(v, 9); };
    std::string out;
    for (const auto& seg : trace.segments) {
        nlohmann::json line;
        line["kind"] = move_kind_name(seg.kind);
        if (seg.via)
            line["via"] = {sig9(seg.via->x), sig9(seg.via->y), sig9(seg.via->z)};
        else
            line["via"] = nullptr;
        line["end"] = {sig9(seg.end.x), sig9(seg.end.y), sig9(seg.end.z)};
        line["speed_mm_s"] = sig9(seg.speed_mm_s);
        line["zone_mm"] = sig9(seg.zone_mm);
        line["duration_s"] = sig9(seg.duration_s);
        out += line.dump();
        out += '\n';
    }
    return out;
}

}  // namespace rapidbench
