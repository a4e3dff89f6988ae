#include "rapidbench/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>

#include "rapidbench/config.hpp"
#include "rapidbench/parser.hpp"
#include "rapidbench/retrieval.hpp"

namespace rapidbench {

using nlohmann::json;

namespace {

RetrievalMode retrieval_from_string(const std::string& s) {
    if (s == "none") return RetrievalMode::None;
    if (s == "lexical") return RetrievalMode::Lexical;
    throw ConfigError("unknown retrieval mode '" + s + "'");
}

}  // namespace

EvalConfig EvalConfig::from_config_text(std::string_view text) {
    json cfg = parse_config_text(text);
    EvalConfig out;
    out.config_hash = content_hash(text);

    for (const auto& [key, value] : cfg.items()) {
        if (key == "corpus") {
            out.corpus_manifest = value.get<std::string>();
        } else if (key == "languages") {
            out.languages.clear();
            for (const auto& code : value) out.languages.push_back(lang_from_code(code.get<std::string>()));
            if (out.languages.empty()) throw ConfigError("eval config: languages must be non-empty");
        } else if (key == "shots") {
            out.shots = value.get<int>();
            if (out.shots < 0) throw ConfigError("eval config: shots must be >= 0");
        } else if (key == "retrieval") {
            out.retrieval = retrieval_from_string(value.get<std::string>());
        } else if (key == "seed") {
            out.seed = value.get<std::uint64_t>();
        } else if (key == "parallelism") {
            out.parallelism = value.get<int>();
            if (out.parallelism < 1) throw ConfigError("eval config: parallelism must be >= 1");
        } else if (key == "temperature") {
            out.temperature = value.get<double>();
        } else if (key == "max_tokens") {
            out.max_tokens = value.get<int>();
        } else if (key == "model") {
            for (const auto& [mkey, mval] : value.items()) {
                if (mkey == "kind")
                    out.model.kind = mval.get<std::string>();
                else if (mkey == "error_rate")
                    out.model.error_rate = mval.get<double>();
                else if (mkey == "transcript")
                    out.model.transcript = mval.get<std::string>();
                else if (mkey == "base_url")
                    out.model.http.base_url = mval.get<std::string>();
                else if (mkey == "path")
                    out.model.http.path = mval.get<std::string>();
                else if (mkey == "name")
                    out.model.http.model_name = mval.get<std::string>();
                else if (mkey == "timeout_s")
                    out.model.http.timeout_s = mval.get<double>();
                else if (mkey == "retries")
                    out.model.http.retries = mval.get<int>();
                else
                    throw ConfigError("eval config: unknown model key '" + mkey + "'");
            }
        } else if (key == "scoring") {
            for (const auto& [skey, sval] : value.items()) {
                if (skey == "strict")
                    out.scoring.strict = sval.get<bool>();
                else if (skey == "functional")
                    out.scoring.functional = sval.get<bool>();
                else if (skey == "rules")
                    out.scoring.rules_path = sval.get<std::string>();
                else if (skey == "pass_k")
                    out.scoring.pass_k = sval.get<int>();
                else
                    throw ConfigError("eval config: unknown scoring key '" + skey + "'");
            }
        } else if (key == "prompt") {
            for (const auto& [pkey, pval] : value.items()) {
                if (pkey == "template_id")
                    out.template_id = pval.get<std::string>();
                else if (pkey == "template_dir")
                    out.template_dir = pval.get<std::string>();
                else
                    throw ConfigError("eval config: unknown prompt key '" + pkey + "'");
            }
        } else {
            throw ConfigError("eval config: unknown key '" + key + "'");
        }
    }
    if (out.corpus_manifest.empty()) throw ConfigError("eval config: corpus is required");
    if (out.model.kind != "mock" && out.model.kind != "replay" && out.model.kind != "http")
        throw ConfigError("eval config: model kind must be mock, replay, or http");
    return out;
}

EvalConfig EvalConfig::load(const std::string& path) {
    EvalConfig cfg = from_config_text(read_text_file(path));
    auto anchor = std::filesystem::path(path).parent_path();
    auto resolve = [&](std::string& p) {
        if (!p.empty() && std::filesystem::path(p).is_relative()) p = (anchor / p).string();
    };
    resolve(cfg.corpus_manifest);
    resolve(cfg.model.transcript);
    resolve(cfg.scoring.rules_path);
    resolve(cfg.template_dir);
    return cfg;
}

double pass_at_k(long long n, long long c, long long k) {
    if (n < 0 || c < 0 || c > n) throw DomainError("pass@k: need 0 <= c <= n");
    if (k < 1 || k > n) throw DomainError("pass@k: need 1 <= k <= n");
    if (n - c < k) return 1.0;  // every k-subset contains a pass
    double miss_all = 1.0;
    for (long long i = 0; i < k; ++i)
        miss_all *= static_cast<double>(n - c - i) / static_cast<double>(n - i);
    return 1.0 - miss_all;
}

std::unique_ptr<ModelClient> make_model_client(const EvalConfig& cfg,
                                               const std::vector<TaskInstance>& corpus) {
    if (cfg.model.kind == "mock")
        return std::make_unique<OracleMockClient>(corpus, cfg.seed, cfg.model.error_rate);
    if (cfg.model.kind == "replay") {
        if (cfg.model.transcript.empty()) throw ConfigError("replay model: transcript is required");
        return std::make_unique<ReplayClient>(cfg.model.transcript);
    }
    return std::make_unique<HttpModelClient>(cfg.model.http);
}

namespace {

struct Job {
    std::size_t instance = 0;
    Lang language = Lang::EN;
};

struct InstanceContext {
    ModuleAst expected;
    std::string proc;
};

EvalRecord evaluate_one(const std::vector<TaskInstance>& corpus,
                        const std::vector<InstanceContext>& contexts,
                        const std::map<std::string, std::size_t>& by_id, const ExampleIndex* index,
                        const EvalConfig& cfg, const PromptTemplate& tmpl, const RuleSet& rules,
                        ModelClient& client, const Job& job) {
    const TaskInstance& inst = corpus[job.instance];
    EvalRecord rec;
    rec.id = inst.id;
    rec.language = job.language;

    try {
        std::vector<TaskInstance> examples;
        if (cfg.shots > 0) {
            if (cfg.retrieval == RetrievalMode::Lexical) {
                for (const auto& id : index->retrieve(inst, static_cast<std::size_t>(cfg.shots)))
                    examples.push_back(corpus[by_id.at(id)]);
            } else {
                for (std::size_t i = 0; i < corpus.size() &&
                                        examples.size() < static_cast<std::size_t>(cfg.shots);
                     ++i) {
                    if (corpus[i].id != inst.id) examples.push_back(corpus[i]);
                }
            }
            if (examples.size() != static_cast<std::size_t>(cfg.shots))
                throw ConfigError("corpus too small for " + std::to_string(cfg.shots) + " shots");
        }
        PromptSpec spec{job.language, cfg.shots, cfg.template_id, cfg.retrieval};
        ModelRequest request{inst.id, job.language,
                             build_prompt(inst, spec, examples, tmpl), cfg.temperature,
                             cfg.max_tokens};

        auto t0 = std::chrono::steady_clock::now();
        rec.raw_response = client.generate(request);
        if (!client.deterministic())
            rec.latency_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } catch (const Error& e) {
        rec.note = e.what();
        return rec;  // strict/functional stay false; the run continues
    }

    rec.extracted_code = extract_code(rec.raw_response);
    const InstanceContext& ctx = contexts[job.instance];
    if (cfg.scoring.strict) rec.strict = strict_match(rec.extracted_code, ctx.expected);
    if (cfg.scoring.functional)
        rec.functional = functional_match(rec.extracted_code, ctx.expected, ctx.proc, Pose{});
    rec.validator = validate(rec.extracted_code, rules);
    return rec;
}

}  // namespace

EvalReport run_eval(const std::vector<TaskInstance>& corpus, const EvalConfig& cfg,
                    ModelClient& client) {
    if (corpus.empty()) throw ConfigError("eval: corpus is empty");
    if (cfg.shots > 0 && static_cast<std::size_t>(cfg.shots) >= corpus.size())
        throw ConfigError("eval: corpus of " + std::to_string(corpus.size()) +
                          " instances cannot provide " + std::to_string(cfg.shots) +
                          " disjoint shots");

    std::vector<std::size_t> order(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return corpus[a].id < corpus[b].id; });

    std::vector<TaskInstance> sorted;
    sorted.reserve(corpus.size());
    for (std::size_t i : order) sorted.push_back(corpus[i]);

    std::vector<InstanceContext> contexts(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        contexts[i].expected = parse_module(sorted[i].expected_source);
        if (contexts[i].expected.procedures.empty())
            throw ConfigError("instance " + sorted[i].id + " has no procedure");
        contexts[i].proc = contexts[i].expected.procedures.front().name;
    }

    std::map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < sorted.size(); ++i) by_id[sorted[i].id] = i;

    ExampleIndex index;
    if (cfg.retrieval == RetrievalMode::Lexical && cfg.shots > 0)
        index = ExampleIndex::build(sorted);

    RuleSet rules =
        cfg.scoring.rules_path.empty() ? RuleSet::defaults() : RuleSet::load(cfg.scoring.rules_path);

    std::vector<Job> jobs;
    jobs.reserve(sorted.size() * cfg.languages.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (Lang lang : cfg.languages) jobs.push_back({i, lang});

    std::map<Lang, PromptTemplate> templates;
    for (Lang lang : cfg.languages)
        templates.emplace(lang, PromptTemplate::resolve(cfg.template_dir, cfg.template_id, lang));

    std::vector<EvalRecord> records(jobs.size());
    const auto n_jobs = static_cast<std::ptrdiff_t>(jobs.size());
    [[maybe_unused]] const int threads = std::max(cfg.parallelism, 1);
#if defined(RAPIDBENCH_HAVE_OPENMP)
    #pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
#endif
    for (std::ptrdiff_t j = 0; j < n_jobs; ++j) {
        const Job& job = jobs[static_cast<std::size_t>(j)];
        records[static_cast<std::size_t>(j)] =
            evaluate_one(sorted, contexts, by_id, &index, cfg, templates.at(job.language), rules,
                         client, job);
    }

    EvalReport report;
    report.model_identity = client.identity();
    report.seed = cfg.seed;
    report.config_hash = cfg.config_hash;
    report.languages = cfg.languages;
    report.shots = cfg.shots;
    report.retrieval = cfg.retrieval;
    report.records = std::move(records);

    std::map<std::pair<std::string, std::size_t>, TaskLangSummary> agg;
    std::map<std::string, std::size_t> lang_order;
    for (std::size_t i = 0; i < cfg.languages.size(); ++i)
        lang_order[lang_code(cfg.languages[i])] = i;
    std::map<std::string, std::string> task_of_id;
    for (const auto& inst : sorted) task_of_id[inst.id] = task_tag(inst.task);
    for (const auto& rec : report.records) {
        auto key = std::make_pair(task_of_id.at(rec.id), lang_order.at(lang_code(rec.language)));
        TaskLangSummary& cell = agg[key];
        cell.task = key.first;
        cell.language = rec.language;
        cell.n += 1;
        cell.strict_matches += rec.strict ? 1 : 0;
        cell.functional_matches += rec.functional ? 1 : 0;
    }
    for (const auto& [key, cell] : agg) report.summary.push_back(cell);

    if (cfg.scoring.pass_k >= 1) {
        PassAtKBlock block;
        block.n = static_cast<long long>(report.records.size());
        for (const auto& rec : report.records) block.c += rec.strict ? 1 : 0;
        block.k = cfg.scoring.pass_k;
        block.estimate = pass_at_k(block.n, block.c, block.k);
        report.pass_k = block;
    }
    return report;
}

EvalReport run_eval(const EvalConfig& cfg) {
    std::vector<TaskInstance> corpus = load_corpus(cfg.corpus_manifest);
    auto client = make_model_client(cfg, corpus);
    return run_eval(corpus, cfg, *client);
}

nlohmann::json EvalReport::to_json() const {
    json out;
    json langs = json::array();
    for (Lang lang : languages) langs.push_back(lang_code(lang));
    out["metadata"] = {{"model", model_identity},
                      {"seed", seed},
                      {"config_hash", config_hash},
                      {"languages", langs},
                      {"shots", shots},
                      {"retrieval", retrieval == RetrievalMode::None ? "none" : "lexical"}};

    auto pct = [](int matches, int n) -> json {
        if (n == 0) return nullptr;
        char buf[16];
        std::snprintf(buf, sizeof buf, "%.2f", 100.0 * matches / n);
        return std::string(buf);
    };

    out["summary"] = json::array();
    for (const auto& cell : summary) {
        out["summary"].push_back({{"task", cell.task},
                                  {"language", lang_code(cell.language)},
                                  {"n", cell.n},
                                  {"strict_matches", cell.strict_matches},
                                  {"strict_accuracy_pct", pct(cell.strict_matches, cell.n)},
                                  {"functional_matches", cell.functional_matches},
                                  {"functional_accuracy_pct", pct(cell.functional_matches, cell.n)}});
    }

    if (pass_k) {
        out["pass_at_k"] = {{"n", pass_k->n},
                            {"c", pass_k->c},
                            {"k", pass_k->k},
                            {"estimate", pass_k->estimate}};
    }

    out["records"] = json::array();
    for (const auto& rec : records) {
        json violations = json::array();
        for (const auto& v : rec.validator.violations)
            violations.push_back({{"rule", v.rule_id},
                                  {"line", v.location.line},
                                  {"column", v.location.column},
                                  {"message", v.message}});
        out["records"].push_back({{"id", rec.id},
                                  {"language", lang_code(rec.language)},
                                  {"raw_response", rec.raw_response},
                                  {"extracted_code", rec.extracted_code},
                                  {"strict", rec.strict},
                                  {"functional", rec.functional},
                                  {"violations", violations},
                                  {"latency_s", rec.latency_s},
                                  {"note", rec.note}});
    }
    return out;
}

std::string report_transcript(const EvalReport& report) {
    std::string out;
    for (const auto& rec : report.records) {
        json line;
        line["id"] = rec.id;
        line["language"] = lang_code(rec.language);
        line["response"] = rec.raw_response;
        out += line.dump();
        out += '\n';
    }
    return out;
}

}  // namespace rapidbench
