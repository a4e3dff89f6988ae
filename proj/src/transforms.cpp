#include "rapidbench/transforms.hpp"

#include <algorithm>

#include <json.hpp>

namespace rapidbench {

using nlohmann::json;

std::string task_tag(const TaskParams& params) {
    switch (params.index()) {
        case 0: return "t1";
        case 1: return "t2";
        default: return "t3";
    }
}

namespace {

const char* field_name(MoveField f) {
    switch (f) {
        case MoveField::Speed: return "speed";
        case MoveField::Zone: return "zone";
        case MoveField::Tool: return "tool";
    }
    return "";
}

json selector_to_json(const std::variant<SelectAll, SelectIndexRange, SelectByTarget>& sel) {
    json out;
    if (std::holds_alternative<SelectAll>(sel)) {
        out["kind"] = "all";
    } else if (const auto* r = std::get_if<SelectIndexRange>(&sel)) {
        out["kind"] = "index_range";
        out["lo"] = r->lo;
        out["hi"] = r->hi;
    } else {
        out["kind"] = "by_target";
        out["name"] = std::get<SelectByTarget>(sel).name;
    }
    return out;
}

json selector_to_json(const std::variant<SelectIndex, SelectByTarget>& sel) {
    json out;
    if (const auto* i = std::get_if<SelectIndex>(&sel)) {
        out["kind"] = "index";
        out["index"] = i->index;
    } else {
        out["kind"] = "by_target";
        out["name"] = std::get<SelectByTarget>(sel).name;
    }
    return out;
}

json require(const json& obj, const char* key) {
    if (!obj.contains(key)) throw ConfigError(std::string("task params: missing field '") + key + "'");
    return obj.at(key);
}

}  // namespace

std::string task_params_to_json(const TaskParams& params) {
    json out;
    out["task"] = task_tag(params);
    if (const auto* t1 = std::get_if<ArgModParams>(&params)) {
        out["selector"] = selector_to_json(t1->selector);
        out["field"] = field_name(t1->field);
        out["new_value"] = t1->new_value;
    } else if (const auto* t2 = std::get_if<AddOffsetParams>(&params)) {
        out["selector"] = selector_to_json(t2->selector);
        out["dx"] = t2->dx;
        out["dy"] = t2->dy;
        out["dz"] = t2->dz;
    } else {
        const auto& t3 = std::get<ReverseParams>(params);
        out["mode"] = t3.mode == ReverseMode::Instruction ? "instruction" : "segment";
    }
    return out.dump();
}

TaskParams task_params_from_json(const std::string& json_text) {
    json obj;
    try {
        obj = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("task params: ") + e.what());
    }
    if (!obj.is_object()) throw ConfigError("task params: expected a JSON object");
    std::string task = require(obj, "task").get<std::string>();

    if (task == "t1") {
        ArgModParams p;
        json sel = require(obj, "selector");
        std::string kind = require(sel, "kind").get<std::string>();
        if (kind == "all") {
            p.selector = SelectAll{};
        } else if (kind == "index_range") {
            p.selector = SelectIndexRange{require(sel, "lo").get<int>(), require(sel, "hi").get<int>()};
        } else if (kind == "by_target") {
            p.selector = SelectByTarget{require(sel, "name").get<std::string>()};
        } else {
            throw ConfigError("task params: unknown t1 selector kind '" + kind + "'");
        }
        std::string field = require(obj, "field").get<std::string>();
        if (field == "speed")
            p.field = MoveField::Speed;
        else if (field == "zone")
            p.field = MoveField::Zone;
        else if (field == "tool")
            p.field = MoveField::Tool;
        else
            throw ConfigError("task params: unknown field '" + field + "'");
        p.new_value = require(obj, "new_value").get<std::string>();
        if (p.new_value.empty()) throw ConfigError("task params: new_value must be non-empty");
        return p;
    }
    if (task == "t2") {
        AddOffsetParams p;
        json sel = require(obj, "selector");
        std::string kind = require(sel, "kind").get<std::string>();
        if (kind == "index") {
            p.selector = SelectIndex{require(sel, "index").get<int>()};
        } else if (kind == "by_target") {
            p.selector = SelectByTarget{require(sel, "name").get<std::string>()};
        } else {
            throw ConfigError("task params: unknown t2 selector kind '" + kind + "'");
        }
        p.dx = require(obj, "dx").get<double>();
        p.dy = require(obj, "dy").get<double>();
        p.dz = require(obj, "dz").get<double>();
        return p;
    }
    if (task == "t3") {
        std::string mode = require(obj, "mode").get<std::string>();
        if (mode == "instruction") return ReverseParams{ReverseMode::Instruction};
        if (mode == "segment") return ReverseParams{ReverseMode::Segment};
        throw ConfigError("task params: unknown reverse mode '" + mode + "'");
    }
    throw ConfigError("task params: unknown task '" + task + "'");
}

namespace {

std::vector<std::size_t> move_statement_indices(const ProcAst& proc) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < proc.statements.size(); ++i)
        if (std::holds_alternative<MoveStmt>(proc.statements[i])) out.push_back(i);
    return out;
}

// Statement indices selected by a T1 selector, in order.
std::vector<std::size_t> select_t1(const ProcAst& proc, const ArgModParams& params) {
    std::vector<std::size_t> moves = move_statement_indices(proc);
    std::vector<std::size_t> out;
    if (std::holds_alternative<SelectAll>(params.selector)) {
        out = moves;
    } else if (const auto* r = std::get_if<SelectIndexRange>(&params.selector)) {
        for (int i = r->lo; i <= r->hi; ++i)
            if (i >= 1 && static_cast<std::size_t>(i) <= moves.size())
                out.push_back(moves[static_cast<std::size_t>(i) - 1]);
    } else {
        const auto& name = std::get<SelectByTarget>(params.selector).name;
        for (std::size_t idx : moves)
            if (ident_equal(target_name(std::get<MoveStmt>(proc.statements[idx]).target), name))
                out.push_back(idx);
    }
    return out;
}

void apply_t1(ProcAst& proc, const ArgModParams& params) {
    std::vector<std::size_t> selected = select_t1(proc, params);
    if (selected.empty()) throw SelectorMiss("argument-modification selector matched no movement");
    for (std::size_t idx : selected) {
        auto& move = std::get<MoveStmt>(proc.statements[idx]);
        switch (params.field) {
            case MoveField::Speed: move.speed = params.new_value; break;
            case MoveField::Zone: move.zone = params.new_value; break;
            case MoveField::Tool: move.tool = params.new_value; break;
        }
    }
}

void apply_t2(ProcAst& proc, const AddOffsetParams& params) {
    std::vector<std::size_t> moves = move_statement_indices(proc);
    std::vector<std::size_t> selected;
    if (const auto* i = std::get_if<SelectIndex>(&params.selector)) {
        if (i->index >= 1 && static_cast<std::size_t>(i->index) <= moves.size())
            selected.push_back(moves[static_cast<std::size_t>(i->index) - 1]);
    } else {
        const auto& name = std::get<SelectByTarget>(params.selector).name;
        for (std::size_t idx : moves)
            if (ident_equal(target_name(std::get<MoveStmt>(proc.statements[idx]).target), name))
                selected.push_back(idx);
    }
    if (selected.empty()) throw SelectorMiss("offset selector matched no movement");
    if (selected.size() > 1) throw AmbiguousSelector("offset selector matched more than one movement");

    auto& move = std::get<MoveStmt>(proc.statements[selected.front()]);
    if (const auto* named = std::get_if<NamedTarget>(&move.target)) {
        move.target = OffsetTarget{named->name, params.dx, params.dy, params.dz};
    } else {
        auto off = std::get<OffsetTarget>(move.target);
        off.dx += params.dx;
        off.dy += params.dy;
        off.dz += params.dz;
        move.target = off;
    }
}

// Instruction mode: reverse the movement order; each wait statement travels
// with the movement preceding it, and leading waits become trailing.
void reverse_instructions(ProcAst& proc) {
    for (const auto& stmt : proc.statements) {
        if (const auto* move = std::get_if<MoveStmt>(&stmt); move && move->kind == MoveKind::Circular)
            throw CircularInInstructionMode(
                "instruction-mode reversal refuses MoveC (the via point belongs to the forward segment)");
    }
    std::vector<Statement> leading;
    std::vector<std::vector<Statement>> groups;  // one movement plus its trailing waits
    for (const auto& stmt : proc.statements) {
        if (std::holds_alternative<MoveStmt>(stmt))
            groups.push_back({stmt});
        else if (groups.empty())
            leading.push_back(stmt);
        else
            groups.back().push_back(stmt);
    }
    std::vector<Statement> out;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it)
        out.insert(out.end(), it->begin(), it->end());
    out.insert(out.end(), leading.begin(), leading.end());
    proc.statements = std::move(out);
}

// Segment mode: moves m_1..m_n become n-1 statements; statement j drives to
// the target of m_{n-j} with the kind/speed/via of m_{n-j+1} and the zone of
// m_{n-j}. Wait statements do not survive (the output is the reversed path).
void reverse_segments(ProcAst& proc) {
    std::vector<MoveStmt> moves;
    for (const auto& stmt : proc.statements)
        if (const auto* move = std::get_if<MoveStmt>(&stmt)) moves.push_back(*move);
    if (moves.empty()) throw SelectorMiss("segment-mode reversal needs at least one movement");

    const std::size_t n = moves.size();
    std::vector<Statement> out;
    for (std::size_t j = 1; j <= n - 1; ++j) {
        const MoveStmt& corner = moves[n - j - 1];   // m_{n-j}: provides target and zone
        const MoveStmt& segment = moves[n - j];      // m_{n-j+1}: provides kind, speed, via
        MoveStmt stmt;
        stmt.kind = segment.kind;
        stmt.via = segment.kind == MoveKind::Circular ? segment.via : std::nullopt;
        stmt.target = corner.target;
        stmt.speed = segment.speed;
        stmt.zone = corner.zone;
        stmt.tool = segment.tool;
        stmt.wobj = segment.wobj;
        out.push_back(stmt);
    }
    proc.statements = std::move(out);
}

}  // namespace

ModuleAst apply_task(const ModuleAst& mod, const std::string& proc_name, const TaskParams& params) {
    ModuleAst out = mod;
    ProcAst* proc = nullptr;
    for (auto& p : out.procedures) {
        if (ident_equal(p.name, proc_name)) {
            proc = &p;
            break;
        }
    }
    if (!proc) throw UnresolvedName(proc_name, "procedure");

    if (const auto* t1 = std::get_if<ArgModParams>(&params))
        apply_t1(*proc, *t1);
    else if (const auto* t2 = std::get_if<AddOffsetParams>(&params))
        apply_t2(*proc, *t2);
    else if (std::get<ReverseParams>(params).mode == ReverseMode::Instruction)
        reverse_instructions(*proc);
    else
        reverse_segments(*proc);
    return out;
}

}  // namespace rapidbench
