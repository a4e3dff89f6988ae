#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rapidbench/conformance.hpp"
#include "rapidbench/model_client.hpp"
#include "rapidbench/prompt.hpp"

namespace rapidbench {

struct ModelSpec {
    std::string kind = "mock";  // mock | replay | http
    double error_rate = 0.0;    // mock
    std::string transcript;     // replay
    HttpClientConfig http;      // http
};

struct ScoringSpec {
    bool strict = true;
    bool functional = true;
    std::string rules_path;  // empty -> built-in defaults
    int pass_k = 0;          // 0 disables the pass@k block
};

struct EvalConfig {
    std::string corpus_manifest;
    std::vector<Lang> languages = {Lang::DE, Lang::EN};
    int shots = 0;
    RetrievalMode retrieval = RetrievalMode::None;
    std::string template_id = "default";
    std::string template_dir;
    std::uint64_t seed = 0;
    int parallelism = 1;  // 1 is the serial reference path
    double temperature = 0.0;
    int max_tokens = 2048;
    ModelSpec model;
    ScoringSpec scoring;
    std::string config_hash;  // content hash of the config text

    /// Parses the TOML-style eval config; unknown keys are errors. load()
    /// additionally resolves relative paths against the file's directory.
    static EvalConfig from_config_text(std::string_view text);
    static EvalConfig load(const std::string& path);
};

struct EvalRecord {
    std::string id;
    Lang language = Lang::EN;
    std::string raw_response;
    std::string extracted_code;
    bool strict = false;
    bool functional = false;
    ValidationReport validator;
    double latency_s = 0.0;
    std::string note;  // transport failures and similar
};

struct TaskLangSummary {
    std::string task;  // t1 | t2 | t3
    Lang language = Lang::EN;
    int n = 0;
    int strict_matches = 0;
    int functional_matches = 0;
};

struct PassAtKBlock {
    long long n = 0;
    long long c = 0;
    long long k = 0;
    double estimate = 0.0;
};

struct EvalReport {
    std::string model_identity;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::vector<Lang> languages;
    int shots = 0;
    RetrievalMode retrieval = RetrievalMode::None;
    std::vector<TaskLangSummary> summary;   // sorted by (task, language order)
    std::optional<PassAtKBlock> pass_k;
    std::vector<EvalRecord> records;        // sorted by (id, language order)

    nlohmann::json to_json() const;
};

/// pass@k = 1 - C(n-c, k)/C(n, k), evaluated as a stable product.
/// Preconditions 0 <= c <= n and 1 <= k <= n; DomainError otherwise.
double pass_at_k(long long n, long long c, long long k);

/// Builds the configured client (the mock needs the corpus for its answers).
std::unique_ptr<ModelClient> make_model_client(const EvalConfig& cfg,
                                               const std::vector<TaskInstance>& corpus);

/// Evaluates every instance in every configured language. Transport failures
/// score as false and the run continues. Records are ordered by instance id
/// regardless of completion order; parallelism > 1 runs instances
/// concurrently (OpenMP) and yields the same report as the serial path.
EvalReport run_eval(const std::vector<TaskInstance>& corpus, const EvalConfig& cfg,
                    ModelClient& client);

/// Convenience wrapper: loads the corpus, builds the client, runs.
EvalReport run_eval(const EvalConfig& cfg);

/// Saved transcript (JSON lines {id, language, response}) of a finished run.
std::string report_transcript(const EvalReport& report);

}  // namespace rapidbench
