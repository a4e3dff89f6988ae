#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rapidbench/corpus.hpp"
#include "rapidbench/prompt.hpp"

namespace rapidbench {

struct ModelRequest {
    std::string instance_id;  // replay/mock keying; never sent over the wire
    Lang language = Lang::EN;
    std::string prompt;
    double temperature = 0.0;
    int max_tokens = 2048;
};

/// A text-completion endpoint. generate() throws TransportError on failure;
/// deterministic clients report zero latency so replayed runs are
/// bit-reproducible.
class ModelClient {
public:
    virtual ~ModelClient() = default;
    virtual std::string generate(const ModelRequest& request) = 0;
    virtual std::string identity() const = 0;
    virtual bool deterministic() const { return false; }
};

/// Replays the oracle's expected outputs, corrupting a fixed fraction of
/// instances: exactly round(error_rate * n) per task bucket, chosen by a
/// seeded shuffle of ids, cycling through wrong-speed / dropped-move /
/// truncation mutations.
class OracleMockClient : public ModelClient {
public:
    OracleMockClient(const std::vector<TaskInstance>& corpus, std::uint64_t seed, double error_rate);

    std::string generate(const ModelRequest& request) override;
    std::string identity() const override { return "oracle-mock"; }
    bool deterministic() const override { return true; }

    /// ids chosen for corruption (exposed for accounting tests)
    const std::map<std::string, int>& mutated_ids() const { return mutations_; }

private:
    std::string respond(const TaskInstance& instance, int mutation) const;

    std::map<std::string, std::size_t> by_id_;
    std::map<std::string, std::string> by_input_;
    std::vector<TaskInstance> corpus_;
    std::map<std::string, int> mutations_;  // id -> mutation kind (0..2)
};

/// Answers from a saved id/language -> response map; missing entries are
/// transport errors.
class ReplayClient : public ModelClient {
public:
    explicit ReplayClient(const std::string& transcript_path);

    std::string generate(const ModelRequest& request) override;
    std::string identity() const override { return "replay"; }
    bool deterministic() const override { return true; }

private:
    std::map<std::string, std::string> responses_;  // key: id "\n" lang
};

/// Transcript file: JSON lines {id, language, response}.
std::string transcript_key(const std::string& id, Lang lang);
std::map<std::string, std::string> parse_transcript(const std::string& text);

struct HttpClientConfig {
    std::string base_url;                        // e.g. http://127.0.0.1:8080
    std::string path = "/v1/chat/completions";
    std::string model_name = "local-model";
    double timeout_s = 30.0;
    int retries = 2;                             // extra attempts after the first
    std::string api_key_env = "RAPIDBENCH_API_KEY";
};

/// Minimal chat-completion client: one user message per request, first
/// choice's message content as the answer, bearer token from the
/// environment.
class HttpModelClient : public ModelClient {
public:
    explicit HttpModelClient(HttpClientConfig config);

    std::string generate(const ModelRequest& request) override;
    std::string identity() const override { return config_.model_name; }

private:
    HttpClientConfig config_;
};

}  // namespace rapidbench
