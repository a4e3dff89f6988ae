#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include <httplib.h>

#include "rapidbench/config.hpp"
#include "rapidbench/eval.hpp"
#include "rapidbench/report.hpp"

using namespace rapidbench;
namespace fs = std::filesystem;

namespace {

std::vector<TaskInstance> small_corpus(std::uint64_t seed, int count) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.count = count;
    return generate_corpus(cfg);
}

std::size_t count_fences(const std::string& text) {
    std::size_t n = 0;
    for (std::size_t at = text.find("```"); at != std::string::npos; at = text.find("```", at + 3))
        ++n;
    return n;
}

EvalConfig mock_config(std::uint64_t seed, double error_rate) {
    EvalConfig cfg;
    cfg.corpus_manifest = "<in-memory>";
    cfg.seed = seed;
    cfg.model.kind = "mock";
    cfg.model.error_rate = error_rate;
    cfg.config_hash = "test";
    return cfg;
}

// Brute-force oracle: enumerate every k-subset of n samples (c passing) and
// count subsets that contain at least one pass.
double pass_at_k_enumerated(int n, int c, int k) {
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    long long total = 0, hit = 0;
    for (;;) {
        ++total;
        bool any = false;
        for (int v : pick) any = any || v < c;  // samples 0..c-1 pass
        hit += any ? 1 : 0;
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return static_cast<double>(hit) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("build_prompt: fenced block structure and determinism") {
    auto corpus = small_corpus(3, 5);
    PromptSpec spec{Lang::EN, 0, "default", RetrievalMode::None};
    std::string zero = build_prompt(corpus[0], spec, {});
    CHECK(count_fences(zero) == 2);  // one block

    spec.shots = 2;
    std::string two = build_prompt(corpus[0], spec, {corpus[1], corpus[2]});
    CHECK(count_fences(two) == 10);  // five blocks
    CHECK(two == build_prompt(corpus[0], spec, {corpus[1], corpus[2]}));
    CHECK(two.find(corpus[1].nl_instruction_en) != std::string::npos);

    spec.language = Lang::DE;
    std::string de = build_prompt(corpus[0], spec, {corpus[1], corpus[2]});
    CHECK(de.find(corpus[1].nl_instruction_de) != std::string::npos);
    CHECK(de.find("vollständige RAPID-Modul") != std::string::npos);

    CHECK_THROWS_AS(build_prompt(corpus[0], spec, {corpus[1]}), ShotMismatch);
    CHECK_THROWS_AS(build_prompt(corpus[0], spec, {corpus[1], corpus[0]}), ShotMismatch);
}

TEST_CASE("prompt templates: builtin and directory override") {
    PromptTemplate de = PromptTemplate::builtin(Lang::DE);
    CHECK(de.instruction_label == "Aufgabe");
    CHECK_THROWS_AS(PromptTemplate::resolve("", "custom", Lang::EN), ConfigError);

    fs::path dir = fs::temp_directory_path() / "rapidbench_tmpl";
    fs::create_directories(dir);
    write_text_file((dir / "short.en.toml").string(),
                    "system = \"Fix the module.\"\n"
                    "instruction_label = \"Do\"\n"
                    "input_label = \"In\"\n"
                    "output_label = \"Out\"\n"
                    "directive = \"Module only.\"\n");
    PromptTemplate custom = PromptTemplate::resolve(dir.string(), "short", Lang::EN);
    CHECK(custom.system == "Fix the module.");
    CHECK_THROWS_AS(PromptTemplate::resolve(dir.string(), "short", Lang::DE), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("extract_code: fenced block, module span, fallback") {
    CHECK(extract_code("Here you go:\n```rapid\nMODULE M\nENDMODULE\n```\nthanks") ==
          "MODULE M\nENDMODULE\n");
    CHECK(extract_code("Sure thing.\nMODULE M\nWaitTime 1;\nENDMODULE done") ==
          "MODULE M\nWaitTime 1;\nENDMODULE");
    CHECK(extract_code("  I cannot do that.  ") == "I cannot do that.");
    // "MODULE" inside "ENDMODULE" is not a span start
    CHECK(extract_code("the ENDMODULE keyword alone") == "the ENDMODULE keyword alone");
    // unterminated fence falls through to the module span
    CHECK(extract_code("```\nMODULE M\nENDMODULE") == "MODULE M\nENDMODULE");
}

TEST_CASE("pass_at_k: frozen values") {
    CHECK(pass_at_k(10, 10, 3) == 1.0);
    CHECK(pass_at_k(2, 1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    // 3 of the C(5,2)=10 pairs are all-fail: 1 - 3/10
    CHECK(pass_at_k(5, 2, 2) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(pass_at_k(7, 0, 3) == 0.0);
}

TEST_CASE("pass_at_k: equals subset enumeration for all n <= 8") {
    for (int n = 1; n <= 8; ++n)
        for (int c = 0; c <= n; ++c)
            for (int k = 1; k <= n; ++k) {
                double closed = pass_at_k(n, c, k);
                double brute = pass_at_k_enumerated(n, c, k);
                CHECK(std::abs(closed - brute) <= 1e-12);
            }
}

TEST_CASE("pass_at_k: monotonicity and pass@1") {
    for (int n = 1; n <= 8; ++n)
        for (int c = 0; c <= n; ++c) {
            CHECK(pass_at_k(n, c, 1) == doctest::Approx(double(c) / n).epsilon(1e-12));
            for (int k = 2; k <= n; ++k) CHECK(pass_at_k(n, c, k) >= pass_at_k(n, c, k - 1));
            if (c > 0)
                for (int k = 1; k <= n; ++k) CHECK(pass_at_k(n, c, k) >= pass_at_k(n, c - 1, k));
        }
}

TEST_CASE("pass_at_k: domain errors") {
    CHECK_THROWS_AS(pass_at_k(5, 6, 1), DomainError);
    CHECK_THROWS_AS(pass_at_k(5, -1, 1), DomainError);
    CHECK_THROWS_AS(pass_at_k(5, 2, 0), DomainError);
    CHECK_THROWS_AS(pass_at_k(5, 2, 6), DomainError);
}

TEST_CASE("oracle mock: error_rate 0 replays the oracle exactly") {
    auto corpus = small_corpus(17, 12);
    EvalConfig cfg = mock_config(17, 0.0);
    OracleMockClient client(corpus, cfg.seed, 0.0);
    EvalReport report = run_eval(corpus, cfg, client);
    REQUIRE(report.records.size() == corpus.size() * 2);
    for (const auto& rec : report.records) {
        CHECK(rec.strict);
        CHECK(rec.functional);
        CHECK(rec.note.empty());
        CHECK(rec.latency_s == 0.0);
    }
    for (const auto& cell : report.summary) CHECK(cell.strict_matches == cell.n);
}

TEST_CASE("oracle mock: exact per-cell accuracy accounting") {
    // 10 instances per task; error rate 0.2 corrupts exactly 2 per task,
    // so every (task, language) cell lands exactly at 80.00%.
    auto corpus = small_corpus(23, 30);
    EvalConfig cfg = mock_config(23, 0.2);
    cfg.model.error_rate = 0.2;
    OracleMockClient client(corpus, cfg.seed, 0.2);
    CHECK(client.mutated_ids().size() == 6);

    EvalReport report = run_eval(corpus, cfg, client);
    nlohmann::json json = report.to_json();
    REQUIRE(json["summary"].size() == 6);
    for (const auto& cell : json["summary"]) {
        CHECK(cell["n"] == 10);
        CHECK(cell["strict_matches"] == 8);
        CHECK(cell["strict_accuracy_pct"] == "80.00");
    }
    // strict-true record count equals summed matches
    int total = 0;
    for (const auto& rec : report.records) total += rec.strict ? 1 : 0;
    CHECK(total == 48);
}

TEST_CASE("run_eval: per-shot examples come from other instances") {
    auto corpus = small_corpus(29, 8);
    EvalConfig cfg = mock_config(29, 0.0);
    cfg.shots = 2;
    cfg.retrieval = RetrievalMode::Lexical;
    OracleMockClient client(corpus, cfg.seed, 0.0);
    EvalReport report = run_eval(corpus, cfg, client);
    for (const auto& rec : report.records) CHECK(rec.strict);

    cfg.shots = 8;  // only 7 other instances exist
    CHECK_THROWS_AS(run_eval(corpus, cfg, client), ConfigError);

    EvalReport viaConfig = run_eval(corpus, mock_config(29, 0.0), client);
    CHECK(viaConfig.records.size() == corpus.size() * 2);
}

TEST_CASE("run_eval: parallel path equals the serial reference") {
    auto corpus = small_corpus(31, 20);
    EvalConfig serial = mock_config(31, 0.25);
    serial.parallelism = 1;
    EvalConfig parallel = serial;
    parallel.parallelism = 4;

    OracleMockClient client(corpus, serial.seed, 0.25);
    std::string a = run_eval(corpus, serial, client).to_json().dump(2);
    std::string b = run_eval(corpus, parallel, client).to_json().dump(2);
    CHECK(a == b);
}

TEST_CASE("replay: transcripts reproduce a run bit-for-bit") {
    auto corpus = small_corpus(37, 9);
    fs::path dir = fs::temp_directory_path() / "rapidbench_replay";
    fs::remove_all(dir);
    fs::create_directories(dir);

    EvalConfig cfg = mock_config(37, 0.2);
    OracleMockClient mock(corpus, cfg.seed, 0.2);
    EvalReport original = run_eval(corpus, cfg, mock);
    write_text_file((dir / "transcript.jsonl").string(), report_transcript(original));

    EvalConfig replay_cfg = cfg;
    replay_cfg.model.kind = "replay";
    replay_cfg.model.transcript = (dir / "transcript.jsonl").string();
    auto client1 = make_model_client(replay_cfg, corpus);
    auto client2 = make_model_client(replay_cfg, corpus);
    std::string a = run_eval(corpus, replay_cfg, *client1).to_json().dump(2);
    std::string b = run_eval(corpus, replay_cfg, *client2).to_json().dump(2);
    CHECK(a == b);
    fs::remove_all(dir);
}

TEST_CASE("replay: a missing id scores false and the run continues") {
    auto corpus = small_corpus(41, 4);
    fs::path dir = fs::temp_directory_path() / "rapidbench_replay_miss";
    fs::remove_all(dir);
    fs::create_directories(dir);

    EvalConfig cfg = mock_config(41, 0.0);
    OracleMockClient mock(corpus, cfg.seed, 0.0);
    EvalReport original = run_eval(corpus, cfg, mock);

    // drop the first instance's responses from the transcript
    std::string transcript;
    for (const auto& rec : original.records) {
        if (rec.id == corpus.front().id) continue;
        nlohmann::json line = {{"id", rec.id},
                               {"language", lang_code(rec.language)},
                               {"response", rec.raw_response}};
        transcript += line.dump() + "\n";
    }
    write_text_file((dir / "partial.jsonl").string(), transcript);

    ReplayClient replay((dir / "partial.jsonl").string());
    EvalReport rerun = run_eval(corpus, cfg, replay);
    int misses = 0;
    for (const auto& rec : rerun.records) {
        if (rec.id == corpus.front().id) {
            CHECK(!rec.strict);
            CHECK(!rec.functional);
            CHECK(rec.note.find("transcript") != std::string::npos);
            ++misses;
        } else {
            CHECK(rec.strict);
        }
    }
    CHECK(misses == 2);  // one per language
    fs::remove_all(dir);
}

TEST_CASE("http client: request shape, bearer token, retries") {
    httplib::Server server;
    std::atomic<int> calls{0};
    std::string seen_auth, seen_model;
    double seen_temperature = -1;

    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        int call = ++calls;
        if (call == 1) {  // first attempt fails; the client must retry
            res.status = 500;
            return;
        }
        seen_auth = req.get_header_value("Authorization");
        nlohmann::json body = nlohmann::json::parse(req.body);
        seen_model = body["model"];
        seen_temperature = body["temperature"];
        nlohmann::json reply = {
            {"choices", {{{"message", {{"content", "```\nMODULE M\nENDMODULE\n```"}}}}}}};
        res.set_content(reply.dump(), "application/json");
    });

    int port = server.bind_to_any_port("127.0.0.1");
    std::thread serve([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    setenv("RAPIDBENCH_API_KEY", "sekrit", 1);
    HttpClientConfig cfg;
    cfg.base_url = "http://127.0.0.1:" + std::to_string(port);
    cfg.model_name = "test-model";
    cfg.timeout_s = 5;
    cfg.retries = 2;
    HttpModelClient client(cfg);

    ModelRequest request{"id-1", Lang::EN, "prompt text", 0.0, 128};
    std::string answer = client.generate(request);
    CHECK(answer == "```\nMODULE M\nENDMODULE\n```");
    CHECK(seen_auth == "Bearer sekrit");
    CHECK(seen_model == "test-model");
    CHECK(seen_temperature == 0.0);
    CHECK(calls == 2);

    server.stop();
    serve.join();
    unsetenv("RAPIDBENCH_API_KEY");

    // unreachable endpoint surfaces as TransportError
    HttpClientConfig dead = cfg;
    dead.base_url = "http://127.0.0.1:1";
    dead.retries = 0;
    dead.timeout_s = 0.5;
    HttpModelClient dead_client(dead);
    CHECK_THROWS_AS(dead_client.generate(request), TransportError);
}

TEST_CASE("eval config: parsing and validation") {
    EvalConfig cfg = EvalConfig::from_config_text(
        "corpus = \"corpus/manifest.jsonl\"\n"
        "languages = [\"de\", \"en\"]\n"
        "shots = 2\n"
        "retrieval = \"lexical\"\n"
        "seed = 7\n"
        "parallelism = 3\n"
        "[model]\n"
        "kind = \"mock\"\n"
        "error_rate = 0.2\n"
        "[scoring]\n"
        "pass_k = 1\n");
    CHECK(cfg.corpus_manifest == "corpus/manifest.jsonl");
    CHECK(cfg.shots == 2);
    CHECK(cfg.retrieval == RetrievalMode::Lexical);
    CHECK(cfg.parallelism == 3);
    CHECK(cfg.model.error_rate == 0.2);
    CHECK(cfg.scoring.pass_k == 1);
    CHECK(!cfg.config_hash.empty());

    CHECK_THROWS_AS(EvalConfig::from_config_text("shots = 1\n"), ConfigError);  // no corpus
    CHECK_THROWS_AS(EvalConfig::from_config_text("corpus = \"m\"\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(EvalConfig::from_config_text("corpus = \"m\"\n[model]\nkind = \"psychic\"\n"),
                    ConfigError);
}

TEST_CASE("report: markdown mirrors the two-column accuracy table") {
    auto corpus = small_corpus(43, 15);
    EvalConfig cfg = mock_config(43, 0.2);
    cfg.scoring.pass_k = 1;
    OracleMockClient client(corpus, cfg.seed, 0.2);
    EvalReport report = run_eval(corpus, cfg, client);
    std::string md = report_markdown(report.to_json());

    CHECK(md.find("| Task | German prompts | English prompts |") != std::string::npos);
    CHECK(md.find("| Arguments Modification | 80.00% | 80.00% |") != std::string::npos);
    CHECK(md.find("| Adding an Offset | 80.00% | 80.00% |") != std::string::npos);
    CHECK(md.find("| Reversing | 80.00% | 80.00% |") != std::string::npos);
    CHECK(md.find("## pass@k") != std::string::npos);

    std::string csv = report_csv(report.to_json());
    CHECK(csv.find("task,language,n,strict_matches") == 0);
    CHECK(csv.find("t1,de,5,4,80.00,") != std::string::npos);
}
