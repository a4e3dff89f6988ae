#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include <json.hpp>

#include "rapidbench/config.hpp"
#include "rapidbench/eval.hpp"
#include "rapidbench/parser.hpp"
#include "rapidbench/printer.hpp"
#include "rapidbench/report.hpp"

using namespace rapidbench;
using nlohmann::json;

namespace {

// 0 success, 1 domain failure (violations, mismatch, below threshold),
// 2 usage/config error.
constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsageError = 2;

json target_expr_json(const TargetExpr& expr) {
    json out;
    out["name"] = target_name(expr);
    if (const auto* off = std::get_if<OffsetTarget>(&expr)) out["offset"] = {off->dx, off->dy, off->dz};
    return out;
}

json module_json(const ModuleAst& mod) {
    json out;
    out["name"] = mod.name;
    out["declarations"] = json::array();
    for (const auto& decl : mod.declarations) {
        out["declarations"].push_back(
            {{"name", decl.name},
             {"target",
              {{"trans", {decl.target.trans.x, decl.target.trans.y, decl.target.trans.z}},
               {"orient",
                {decl.target.orient.w, decl.target.orient.x, decl.target.orient.y,
                 decl.target.orient.z}},
               {"conf", decl.target.conf},
               {"extax", decl.target.extax}}}});
    }
    out["procedures"] = json::array();
    for (const auto& proc : mod.procedures) {
        json stmts = json::array();
        for (const auto& stmt : proc.statements) {
            if (const auto* wait = std::get_if<WaitStmt>(&stmt)) {
                stmts.push_back({{"stmt", "wait"}, {"seconds", wait->seconds}});
                continue;
            }
            const auto& move = std::get<MoveStmt>(stmt);
            json s = {{"stmt", "move"},
                      {"kind", move_kind_name(move.kind)},
                      {"target", target_expr_json(move.target)},
                      {"speed", move.speed},
                      {"zone", move.zone},
                      {"tool", move.tool}};
            if (move.via) s["via"] = target_expr_json(*move.via);
            if (move.wobj) s["wobj"] = *move.wobj;
            stmts.push_back(s);
        }
        out["procedures"].push_back({{"name", proc.name}, {"statements", stmts}});
    }
    return out;
}

Pose parse_start(const std::string& text) {
    Pose pose;
    if (text.empty()) return pose;
    double x, y, z;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &x, &y, &z) != 3)
        throw ConfigError("--start expects x,y,z");
    pose.position = {x, y, z};
    return pose;
}

std::map<std::string, double> parse_task_mix(const std::string& text) {
    std::map<std::string, double> mix;
    std::size_t at = 0;
    while (at < text.size()) {
        std::size_t comma = text.find(',', at);
        std::string item = text.substr(at, comma == std::string::npos ? comma : comma - at);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("--task-mix expects t1=W,t2=W,t3=W");
        mix[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        at = comma == std::string::npos ? text.size() : comma + 1;
    }
    return mix;
}

int run(int argc, char** argv) {
    CLI::App app{"RAPID movement-routine toolkit and LLM evaluation harness"};
    app.require_subcommand(1);

    // parse
    std::string parse_in;
    auto* cmd_parse = app.add_subcommand("parse", "Parse a module and dump its AST as JSON");
    cmd_parse->add_option("--in", parse_in, "module file")->required();

    // fmt
    std::string fmt_in;
    bool fmt_write = false;
    auto* cmd_fmt = app.add_subcommand("fmt", "Pretty-print a module");
    cmd_fmt->add_option("--in", fmt_in, "module file")->required();
    cmd_fmt->add_flag("--write", fmt_write, "rewrite the file in place");

    // transform
    std::string tr_task, tr_params, tr_proc, tr_in, tr_out;
    auto* cmd_transform = app.add_subcommand("transform", "Apply a task oracle to a module");
    cmd_transform->add_option("--task", tr_task, "t1|t2|t3")->required();
    cmd_transform->add_option("--params", tr_params, "task parameters as JSON")->required();
    cmd_transform->add_option("--proc", tr_proc, "procedure name")->required();
    cmd_transform->add_option("--in", tr_in, "input module file")->required();
    cmd_transform->add_option("--out", tr_out, "output module file")->required();

    // validate
    std::string val_rules, val_in, val_format = "text";
    auto* cmd_validate = app.add_subcommand("validate", "Check a module against house rules");
    cmd_validate->add_option("--rules", val_rules, "rules file (defaults to built-in rules)");
    cmd_validate->add_option("--in", val_in, "module file")->required();
    cmd_validate->add_option("--format", val_format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));

    // trace
    std::string trace_in, trace_proc, trace_start;
    auto* cmd_trace = app.add_subcommand("trace", "Interpret a procedure into motion segments");
    cmd_trace->add_option("--in", trace_in, "module file")->required();
    cmd_trace->add_option("--proc", trace_proc, "procedure name")->required();
    cmd_trace->add_option("--start", trace_start, "start position x,y,z (default 0,0,0)");

    // gen
    GenConfig gen_cfg;
    std::string gen_out, gen_mix;
    auto* cmd_gen = app.add_subcommand("gen", "Generate a synthetic task corpus");
    cmd_gen->add_option("--seed", gen_cfg.seed, "PRNG seed")->required();
    cmd_gen->add_option("--count", gen_cfg.count, "number of instances")->required();
    cmd_gen->add_option("--out", gen_out, "corpus directory")->required();
    cmd_gen->add_option("--moves-min", gen_cfg.moves_min, "minimum moves per routine");
    cmd_gen->add_option("--moves-max", gen_cfg.moves_max, "maximum moves per routine");
    cmd_gen->add_option("--movec-fraction", gen_cfg.movec_fraction, "fraction of circular moves");
    cmd_gen->add_option("--task-mix", gen_mix, "weights, e.g. t1=1,t2=1,t3=2");

    // eval
    std::string eval_config, eval_out, eval_md, eval_transcript;
    double eval_min_strict = -1.0;
    auto* cmd_eval = app.add_subcommand("eval", "Run the LLM evaluation harness");
    cmd_eval->add_option("--config", eval_config, "eval config file")->required();
    cmd_eval->add_option("--out", eval_out, "report JSON output path")->required();
    cmd_eval->add_option("--md", eval_md, "also write a Markdown summary here");
    cmd_eval->add_option("--save-transcript", eval_transcript, "save raw responses for replay");
    cmd_eval->add_option("--min-strict-accuracy", eval_min_strict,
                         "exit 1 when overall strict accuracy (%) falls below this");

    // report
    std::string rep_in, rep_format = "md";
    auto* cmd_report = app.add_subcommand("report", "Render a saved report");
    cmd_report->add_option("--in", rep_in, "report JSON file")->required();
    cmd_report->add_option("--format", rep_format, "md|csv")->check(CLI::IsMember({"md", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return kUsageError;
    }

    if (*cmd_parse) {
        ModuleAst mod = parse_module(read_text_file(parse_in));
        std::cout << module_json(mod).dump(2) << "\n";
        return kOk;
    }

    if (*cmd_fmt) {
        std::string pretty = print_module(parse_module(read_text_file(fmt_in)));
        if (fmt_write)
            write_text_file(fmt_in, pretty);
        else
            std::cout << pretty;
        return kOk;
    }

    if (*cmd_transform) {
        json params_json = json::parse(tr_params, nullptr, false);
        if (params_json.is_discarded()) throw ConfigError("--params is not valid JSON");
        if (!params_json.contains("task")) params_json["task"] = tr_task;
        if (params_json["task"] != tr_task)
            throw ConfigError("--task disagrees with the task field in --params");
        TaskParams params = task_params_from_json(params_json.dump());
        ModuleAst mod = parse_module(read_text_file(tr_in));
        write_text_file(tr_out, print_module(apply_task(mod, tr_proc, params)));
        return kOk;
    }

    if (*cmd_validate) {
        RuleSet rules = val_rules.empty() ? RuleSet::defaults() : RuleSet::load(val_rules);
        ValidationReport report = validate(read_text_file(val_in), rules);
        std::cout << (val_format == "json" ? report.to_json() + "\n" : report.to_text());
        return report.pass() ? kOk : kDomainFailure;
    }

    if (*cmd_trace) {
        ModuleAst mod = parse_module(read_text_file(trace_in));
        MotionTrace trace = interpret(mod, trace_proc, parse_start(trace_start));
        std::cout << trace_to_jsonl(trace);
        return kOk;
    }

    if (*cmd_gen) {
        if (!gen_mix.empty()) gen_cfg.task_mix = parse_task_mix(gen_mix);
        write_corpus(generate_corpus(gen_cfg), gen_out);
        std::cout << gen_out << "/manifest.jsonl\n";
        return kOk;
    }

    if (*cmd_eval) {
        EvalConfig cfg = EvalConfig::load(eval_config);
        EvalReport report = run_eval(cfg);
        json report_json = report.to_json();
        write_text_file(eval_out, report_json.dump(2) + "\n");
        if (!eval_md.empty()) write_text_file(eval_md, report_markdown(report_json));
        if (!eval_transcript.empty()) write_text_file(eval_transcript, report_transcript(report));

        int strict_total = 0;
        for (const auto& rec : report.records) strict_total += rec.strict ? 1 : 0;
        double overall =
            report.records.empty() ? 0.0 : 100.0 * strict_total / report.records.size();
        std::cerr << "records: " << report.records.size() << ", strict: " << strict_total << " ("
                  << overall << "%)\n";
        if (eval_min_strict >= 0.0 && overall < eval_min_strict) return kDomainFailure;
        return kOk;
    }

    if (*cmd_report) {
        json report = json::parse(read_text_file(rep_in), nullptr, false);
        if (report.is_discarded()) throw ConfigError("--in is not valid JSON");
        std::cout << (rep_format == "md" ? report_markdown(report) : report_csv(report));
        return kOk;
    }

    return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ShotMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomainFailure;
    }
}
