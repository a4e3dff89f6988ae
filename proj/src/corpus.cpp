#include "rapidbench/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rapidbench/config.hpp"
#include "rapidbench/numerals.hpp"
#include "rapidbench/parser.hpp"
#include "rapidbench/printer.hpp"

namespace rapidbench {

namespace fs = std::filesystem;
using nlohmann::json;

void GenConfig::check() const {
    if (count <= 0) throw ConfigError("gen: count must be positive");
    if (count > 99999) throw ConfigError("gen: count must be at most 99999");
    if (moves_min <= 0 || moves_max <= 0 || moves_min > moves_max)
        throw ConfigError("gen: need 0 < moves_min <= moves_max");
    if (coord_min_mm >= coord_max_mm) throw ConfigError("gen: empty coordinate range");
    if (movec_fraction < 0.0 || movec_fraction > 1.0)
        throw ConfigError("gen: movec_fraction must be in [0, 1]");
    double total = 0;
    for (const auto& [task, weight] : task_mix) {
        if (task != "t1" && task != "t2" && task != "t3")
            throw ConfigError("gen: unknown task '" + task + "' in task mix");
        if (weight < 0) throw ConfigError("gen: task weights must be non-negative");
        total += weight;
    }
    if (total <= 0) throw ConfigError("gen: task weights must not all be zero");
}

namespace {

// ABB's predefined data names; also the validator's default allowed sets.
const std::vector<std::string>& speed_names() {
    static const std::vector<std::string> v = {
        "v5",    "v10",  "v20",  "v30",  "v40",  "v50",   "v60",   "v80",   "v100",
        "v150",  "v200", "v300", "v400", "v500", "v600",  "v800",  "v1000", "v1500",
        "v2000", "v2500", "v3000", "v4000", "v5000", "v6000", "v7000", "vmax"};
    return v;
}

const std::vector<std::string>& zone_names() {
    static const std::vector<std::string> v = {"fine", "z0",  "z1",  "z5",  "z10",
                                               "z15",  "z20", "z30", "z40", "z50",
                                               "z60",  "z80", "z100", "z150", "z200"};
    return v;
}

const std::vector<std::string>& proc_names() {
    static const std::vector<std::string> v = {"main", "move_part", "draw_path", "approach",
                                               "work_cycle"};
    return v;
}

// The 24 axis-aligned unit orientations (rotations mapping axes to axes),
// with components rounded to print compactly; unit norm holds within 1e-9.
const std::vector<Quat>& axis_aligned_orientations() {
    static const std::vector<Quat> quats = [] {
        const double s = 0.70710678;
        const double h = 0.5;
        std::vector<Quat> q;
        q.push_back({1, 0, 0, 0});
        q.push_back({0, 1, 0, 0});
        q.push_back({0, 0, 1, 0});
        q.push_back({0, 0, 0, 1});
        q.push_back({s, s, 0, 0});
        q.push_back({s, -s, 0, 0});
        q.push_back({s, 0, s, 0});
        q.push_back({s, 0, -s, 0});
        q.push_back({s, 0, 0, s});
        q.push_back({s, 0, 0, -s});
        q.push_back({0, s, s, 0});
        q.push_back({0, s, -s, 0});
        q.push_back({0, s, 0, s});
        q.push_back({0, s, 0, -s});
        q.push_back({0, 0, s, s});
        q.push_back({0, 0, s, -s});
        for (double x : {h, -h})
            for (double y : {h, -h})
                for (double z : {h, -h}) q.push_back({h, x, y, z});
        return q;
    }();
    return quats;
}

class Generator {
public:
    explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

    std::vector<TaskInstance> run() {
        std::vector<std::string> labels = task_labels();
        std::shuffle(labels.begin(), labels.end(), rng_);
        std::vector<TaskInstance> out;
        out.reserve(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) out.push_back(make_instance(i, labels[i]));
        return out;
    }

private:
    const GenConfig& cfg_;
    std::mt19937_64 rng_;

    int randint(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }
    template <typename T>
    const T& choice(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(randint(0, static_cast<int>(v.size()) - 1))];
    }

    double coord() {
        int lo = static_cast<int>(cfg_.coord_min_mm * 10);
        int hi = static_cast<int>(cfg_.coord_max_mm * 10);
        return randint(lo, hi) / 10.0;  // one-decimal millimetres
    }

    // Exact task counts via largest-remainder allocation over the mix weights.
    std::vector<std::string> task_labels() {
        double total = 0;
        for (const auto& [task, weight] : cfg_.task_mix) total += weight;
        std::map<std::string, int> counts;
        std::vector<std::pair<std::string, double>> remainders;
        int assigned = 0;
        for (const auto& [task, weight] : cfg_.task_mix) {
            double exact = cfg_.count * weight / total;
            int base = static_cast<int>(exact);
            counts[task] = base;
            assigned += base;
            remainders.push_back({task, exact - base});
        }
        std::stable_sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        for (int i = 0; assigned < cfg_.count; ++i, ++assigned)
            counts[remainders[static_cast<std::size_t>(i) % remainders.size()].first] += 1;
        std::vector<std::string> labels;
        for (const auto& [task, n] : counts)
            for (int i = 0; i < n; ++i) labels.push_back(task);
        return labels;
    }

    RobTarget random_robtarget() {
        RobTarget rt;
        rt.trans = {coord(), coord(), coord()};
        rt.orient = choice(axis_aligned_orientations());
        rt.conf = {randint(-4, 4), randint(-4, 4), randint(-4, 4), randint(-4, 4)};
        rt.extax = {9e9, 9e9, 9e9, 9e9, 9e9, 9e9};
        return rt;
    }

    TaskInstance make_instance(std::size_t index, const std::string& task) {
        ReverseMode mode = coin(0.5) ? ReverseMode::Instruction : ReverseMode::Segment;
        bool allow_movec = !(task == "t3" && mode == ReverseMode::Instruction);

        int n = randint(cfg_.moves_min, cfg_.moves_max);
        if (task == "t3" && mode == ReverseMode::Segment && n < 2) n = 2;

        char idbuf[16];
        std::snprintf(idbuf, sizeof idbuf, "%05zu", index + 1);
        std::string proc_name = choice(proc_names());

        ModuleAst mod;
        mod.name = "M" + std::string(idbuf);
        ProcAst proc;
        proc.name = proc_name;
        for (int i = 0; i < n; ++i) {
            std::string tname = "p" + std::to_string((i + 1) * 10);
            mod.declarations.push_back({tname, random_robtarget(), {}});
            MoveStmt move;
            if (allow_movec && coin(cfg_.movec_fraction)) {
                move.kind = MoveKind::Circular;
                std::string vname = "c" + std::to_string((i + 1) * 10);
                mod.declarations.push_back({vname, random_robtarget(), {}});
                move.via = NamedTarget{vname};
            } else {
                move.kind = coin(0.5) ? MoveKind::Linear : MoveKind::Joint;
            }
            move.target = NamedTarget{tname};
            move.speed = choice(speed_names());
            move.zone = i == n - 1 ? "fine" : choice(zone_names());
            move.tool = "tool0";
            if (coin(0.1)) move.wobj = "wobj1";
            proc.statements.push_back(move);
            if (i < n - 1 && coin(0.15))
                proc.statements.push_back(WaitStmt{randint(1, 50) / 10.0, {}});
        }
        mod.procedures.push_back(proc);

        TaskParams params = make_params(task, mode, proc, n);

        TaskInstance inst;
        inst.id = std::string(idbuf) + "-" + task;
        inst.task = params;
        inst.input_source = print_module(mod);
        inst.expected_source = print_module(apply_task(mod, proc_name, params));
        inst.nl_instruction_de = instruction_text(params, proc_name, "de");
        inst.nl_instruction_en = instruction_text(params, proc_name, "en");
        return inst;
    }

    TaskParams make_params(const std::string& task, ReverseMode mode, const ProcAst& proc, int n) {
        if (task == "t3") return ReverseParams{mode};

        auto nth_move_target = [&](int i) {
            int seen = 0;
            for (const auto& stmt : proc.statements) {
                if (const auto* move = std::get_if<MoveStmt>(&stmt)) {
                    if (++seen == i) return target_name(move->target);
                }
            }
            return std::string();
        };

        if (task == "t1") {
            ArgModParams p;
            int fieldPick = randint(0, 9);
            p.field = fieldPick < 5 ? MoveField::Speed : fieldPick < 9 ? MoveField::Zone : MoveField::Tool;
            switch (p.field) {
                case MoveField::Speed: p.new_value = choice(speed_names()); break;
                case MoveField::Zone: p.new_value = choice(zone_names()); break;
                case MoveField::Tool: p.new_value = "tool0"; break;
            }
            int selPick = randint(0, 9);
            if (selPick < 4) {
                p.selector = SelectAll{};
            } else if (selPick < 7) {
                int lo = randint(1, n);
                p.selector = SelectIndexRange{lo, randint(lo, n)};
            } else {
                p.selector = SelectByTarget{nth_move_target(randint(1, n))};
            }
            return p;
        }

        AddOffsetParams p;
        if (coin(0.6))
            p.selector = SelectIndex{randint(1, n)};
        else
            p.selector = SelectByTarget{nth_move_target(randint(1, n))};
        do {
            p.dx = randint(-1000, 1000) / 10.0;
            p.dy = randint(-1000, 1000) / 10.0;
            p.dz = randint(-1000, 1000) / 10.0;
        } while (p.dx == 0 && p.dy == 0 && p.dz == 0);
        return p;
    }
};

std::string selector_phrase_en(const std::variant<SelectAll, SelectIndexRange, SelectByTarget>& sel) {
    if (std::holds_alternative<SelectAll>(sel)) return "all movements";
    if (const auto* r = std::get_if<SelectIndexRange>(&sel)) {
        if (r->lo == r->hi) return "movement " + std::to_string(r->lo);
        return "movements " + std::to_string(r->lo) + " through " + std::to_string(r->hi);
    }
    return "the movement targeting " + std::get<SelectByTarget>(sel).name;
}

std::string selector_phrase_de(const std::variant<SelectAll, SelectIndexRange, SelectByTarget>& sel) {
    if (std::holds_alternative<SelectAll>(sel)) return "allen Bewegungen";
    if (const auto* r = std::get_if<SelectIndexRange>(&sel)) {
        if (r->lo == r->hi) return "Bewegung " + std::to_string(r->lo);
        return "den Bewegungen " + std::to_string(r->lo) + " bis " + std::to_string(r->hi);
    }
    return "der Bewegung zum Ziel " + std::get<SelectByTarget>(sel).name;
}

}  // namespace

std::string instruction_text(const TaskParams& params, const std::string& proc_name,
                             const std::string& language) {
    const bool de = language == "de";
    if (!de && language != "en") throw ConfigError("unknown instruction language '" + language + "'");

    if (const auto* t1 = std::get_if<ArgModParams>(&params)) {
        const char* field_en = t1->field == MoveField::Speed  ? "speed"
                               : t1->field == MoveField::Zone ? "zone"
                                                              : "tool";
        const char* field_de = t1->field == MoveField::Speed  ? "die Geschwindigkeit"
                               : t1->field == MoveField::Zone ? "die Zone"
                                                              : "das Werkzeug";
        if (de)
            return "Setze in der Prozedur " + proc_name + " " + field_de + " von " +
                   selector_phrase_de(t1->selector) + " auf " + t1->new_value + ".";
        return "In procedure " + proc_name + ", set the " + field_en + " of " +
               selector_phrase_en(t1->selector) + " to " + t1->new_value + ".";
    }

    if (const auto* t2 = std::get_if<AddOffsetParams>(&params)) {
        std::string triple = "(" + format_number(t2->dx) + ", " + format_number(t2->dy) + ", " +
                             format_number(t2->dz) + ")";
        std::string sel_en, sel_de;
        if (const auto* i = std::get_if<SelectIndex>(&t2->selector)) {
            sel_en = "movement " + std::to_string(i->index);
            sel_de = "der Bewegung " + std::to_string(i->index);
        } else {
            const auto& name = std::get<SelectByTarget>(t2->selector).name;
            sel_en = "the movement targeting " + name;
            sel_de = "der Bewegung zum Ziel " + name;
        }
        if (de)
            return "Füge in der Prozedur " + proc_name + " " + sel_de + " einen Versatz von " +
                   triple + " Millimetern hinzu.";
        return "In procedure " + proc_name + ", add an offset of " + triple + " millimetres to " +
               sel_en + ".";
    }

    const auto& t3 = std::get<ReverseParams>(params);
    if (t3.mode == ReverseMode::Instruction) {
        if (de)
            return "Kehre die Reihenfolge der Bewegungsanweisungen in der Prozedur " + proc_name +
                   " um.";
        return "Reverse the order of the movement instructions in procedure " + proc_name + ".";
    }
    if (de)
        return "Kehre die Bewegungsroutine in der Prozedur " + proc_name +
               " um, sodass der Pfad rückwärts abgefahren wird.";
    return "Reverse the movement routine in procedure " + proc_name +
           " so that the path is traversed backwards.";
}

std::vector<TaskInstance> generate_corpus(const GenConfig& cfg) {
    cfg.check();
    return Generator(cfg).run();
}

void write_corpus(const std::vector<TaskInstance>& corpus, const std::string& directory) {
    fs::path root(directory);
    fs::create_directories(root / "inputs");
    fs::create_directories(root / "expected");
    std::string manifest;
    for (const auto& inst : corpus) {
        std::string input_rel = "inputs/" + inst.id + ".mod";
        std::string expected_rel = "expected/" + inst.id + ".mod";
        write_text_file((root / input_rel).string(), inst.input_source);
        write_text_file((root / expected_rel).string(), inst.expected_source);
        json line;
        line["id"] = inst.id;
        line["task"] = json::parse(task_params_to_json(inst.task));
        line["input_path"] = input_rel;
        line["expected_path"] = expected_rel;
        line["nl_de"] = inst.nl_instruction_de;
        line["nl_en"] = inst.nl_instruction_en;
        manifest += line.dump();
        manifest += '\n';
    }
    write_text_file((root / "manifest.jsonl").string(), manifest);
}

std::vector<TaskInstance> load_corpus(const std::string& manifest_path) {
    std::string text = read_text_file(manifest_path);
    fs::path root = fs::path(manifest_path).parent_path();
    std::vector<TaskInstance> out;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw ConfigError("manifest line " + std::to_string(lineno) + ": " + e.what());
        }
        TaskInstance inst;
        try {
            inst.id = obj.at("id").get<std::string>();
            inst.task = task_params_from_json(obj.at("task").dump());
            inst.input_source = read_text_file((root / obj.at("input_path").get<std::string>()).string());
            inst.expected_source =
                read_text_file((root / obj.at("expected_path").get<std::string>()).string());
            inst.nl_instruction_de = obj.at("nl_de").get<std::string>();
            inst.nl_instruction_en = obj.at("nl_en").get<std::string>();
        } catch (const json::exception& e) {
            throw ConfigError("manifest line " + std::to_string(lineno) + ": " + e.what());
        }
        out.push_back(std::move(inst));
    }
    return out;
}

std::string instance_proc_name(const TaskInstance& instance) {
    ModuleAst mod = parse_module(instance.input_source);
    if (mod.procedures.empty()) throw ConfigError("instance " + instance.id + " has no procedure");
    return mod.procedures.front().name;
}

}  // namespace rapidbench
