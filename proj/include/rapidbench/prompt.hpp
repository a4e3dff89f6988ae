#pragma once

#include <string>
#include <vector>

#include "rapidbench/corpus.hpp"

namespace rapidbench {

enum class Lang { DE, EN };

std::string lang_code(Lang lang);          // "de" / "en"
Lang lang_from_code(const std::string&);   // throws ConfigError

enum class RetrievalMode { None, Lexical };

struct PromptSpec {
    Lang language = Lang::EN;
    int shots = 0;
    std::string template_id = "default";
    RetrievalMode retrieval = RetrievalMode::None;
};

/// Text pieces a prompt is assembled from. Built-in templates exist per
/// language; files in a template directory override them
/// (<template_id>.<lang>.toml with the five keys below).
struct PromptTemplate {
    std::string system;
    std::string instruction_label;
    std::string input_label;
    std::string output_label;
    std::string directive;  // "output only the complete module", per language

    static PromptTemplate builtin(Lang lang);
    static PromptTemplate resolve(const std::string& template_dir, const std::string& template_id,
                                  Lang lang);
};

/// Deterministic prompt assembly: system text, then one
/// instruction/input/output triple per example (code fenced in triple
/// backticks), then the query instruction and input, then the directive.
/// A prompt with k shots contains exactly 2k+1 fenced blocks. Throws
/// ShotMismatch when |examples| != spec.shots or an example aliases the query.
std::string build_prompt(const TaskInstance& instance, const PromptSpec& spec,
                         const std::vector<TaskInstance>& examples, const PromptTemplate& tmpl);
std::string build_prompt(const TaskInstance& instance, const PromptSpec& spec,
                         const std::vector<TaskInstance>& examples);

/// Pulls code out of a model response: the first fenced block if any, else
/// the widest MODULE..ENDMODULE span, else the whole trimmed response.
std::string extract_code(const std::string& response);

}  // namespace rapidbench
