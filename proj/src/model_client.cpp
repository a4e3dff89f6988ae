#include "rapidbench/model_client.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "rapidbench/config.hpp"
#include "rapidbench/parser.hpp"
#include "rapidbench/printer.hpp"

namespace rapidbench {

namespace {

std::string fenced(const std::string& code) {
    std::string out = "```\n";
    out += code;
    if (code.empty() || code.back() != '\n') out += '\n';
    out += "```\n";
    return out;
}

}  // namespace

OracleMockClient::OracleMockClient(const std::vector<TaskInstance>& corpus, std::uint64_t seed,
                                   double error_rate)
    : corpus_(corpus) {
    if (error_rate < 0.0 || error_rate > 1.0)
        throw ConfigError("oracle-mock: error_rate must be in [0, 1]");
    std::map<std::string, std::vector<std::string>> buckets;
    for (std::size_t i = 0; i < corpus_.size(); ++i) {
        by_id_[corpus_[i].id] = i;
        by_input_[corpus_[i].input_source] = corpus_[i].id;
        buckets[task_tag(corpus_[i].task)].push_back(corpus_[i].id);
    }
    // Corrupt exactly round(error_rate * n) ids per task bucket so accuracy
    // accounting is exact per task and language.
    for (auto& [task, ids] : buckets) {
        std::sort(ids.begin(), ids.end());
        std::mt19937_64 rng(seed ^ std::hash<std::string>{}(task));
        std::shuffle(ids.begin(), ids.end(), rng);
        auto corrupt = static_cast<std::size_t>(
            std::lround(error_rate * static_cast<double>(ids.size())));
        for (std::size_t i = 0; i < corrupt && i < ids.size(); ++i)
            mutations_[ids[i]] = static_cast<int>(i % 3);
    }
}

std::string OracleMockClient::generate(const ModelRequest& request) {
    std::size_t index;
    if (auto it = by_id_.find(request.instance_id); it != by_id_.end()) {
        index = it->second;
    } else {
        // No id supplied: recognise the query by its input code, the last
        // fenced block of the prompt.
        std::size_t close = request.prompt.rfind("\n```");
        std::size_t open = close == std::string::npos ? std::string::npos
                                                      : request.prompt.rfind("```\n", close - 1);
        if (open == std::string::npos) throw TransportError("oracle-mock: no code block in prompt");
        std::string code = request.prompt.substr(open + 4, close + 1 - (open + 4));
        auto hit = by_input_.find(code);
        if (hit == by_input_.end()) throw TransportError("oracle-mock: unknown input program");
        index = by_id_.at(hit->second);
    }
    const TaskInstance& inst = corpus_[index];
    auto mutated = mutations_.find(inst.id);
    return respond(inst, mutated == mutations_.end() ? -1 : mutated->second);
}

std::string OracleMockClient::respond(const TaskInstance& instance, int mutation) const {
    if (mutation < 0) return fenced(instance.expected_source);
    if (mutation == 2) {  // truncated text
        return fenced(instance.expected_source.substr(0, instance.expected_source.size() / 2));
    }
    ModuleAst mod = parse_module(instance.expected_source);
    std::vector<std::pair<std::size_t, std::size_t>> moves;  // (proc, stmt)
    for (std::size_t p = 0; p < mod.procedures.size(); ++p)
        for (std::size_t s = 0; s < mod.procedures[p].statements.size(); ++s)
            if (std::holds_alternative<MoveStmt>(mod.procedures[p].statements[s]))
                moves.push_back({p, s});
    if (moves.empty())  // nothing to corrupt structurally; degrade to truncation
        return fenced(instance.expected_source.substr(0, instance.expected_source.size() / 2));
    if (mutation == 0) {  // wrong speed identifier
        auto [p, s] = moves.front();
        auto& move = std::get<MoveStmt>(mod.procedures[p].statements[s]);
        move.speed = ident_equal(move.speed, "v17") ? "v23" : "v17";
    } else {  // dropped middle move
        auto [p, s] = moves[moves.size() / 2];
        mod.procedures[p].statements.erase(mod.procedures[p].statements.begin() +
                                           static_cast<std::ptrdiff_t>(s));
    }
    return fenced(print_module(mod));
}

std::string transcript_key(const std::string& id, Lang lang) { return id + "\n" + lang_code(lang); }

std::map<std::string, std::string> parse_transcript(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            nlohmann::json obj = nlohmann::json::parse(line);
            out[transcript_key(obj.at("id").get<std::string>(),
                               lang_from_code(obj.at("language").get<std::string>()))] =
                obj.at("response").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("transcript line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

ReplayClient::ReplayClient(const std::string& transcript_path)
    : responses_(parse_transcript(read_text_file(transcript_path))) {}

std::string ReplayClient::generate(const ModelRequest& request) {
    auto it = responses_.find(transcript_key(request.instance_id, request.language));
    if (it == responses_.end())
        throw TransportError("replay: transcript has no response for instance '" +
                             request.instance_id + "' (" + lang_code(request.language) + ")");
    return it->second;
}

HttpModelClient::HttpModelClient(HttpClientConfig config) : config_(std::move(config)) {
    if (config_.base_url.empty()) throw ConfigError("http model: base_url is required");
}

std::string HttpModelClient::generate(const ModelRequest& request) {
    nlohmann::json body;
    body["model"] = config_.model_name;
    body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}});
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_tokens;
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= config_.retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(50L * attempt));
        httplib::Client client(config_.base_url);
        auto timeout = std::chrono::duration<double>(config_.timeout_s);
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);
        httplib::Headers headers;
        if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
            headers.emplace("Authorization", std::string("Bearer ") + key);

        auto res = client.Post(config_.path, headers, payload, "application/json");
        if (!res) {
            last_error = "transport failure: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        try {
            nlohmann::json reply = nlohmann::json::parse(res->body);
            return reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            last_error = std::string("malformed completion payload: ") + e.what();
        }
    }
    throw TransportError("http model: " + last_error);
}

}  // namespace rapidbench
