#include "rapidbench/prompt.hpp"

#include <cctype>

#include "rapidbench/config.hpp"

namespace rapidbench {

std::string lang_code(Lang lang) { return lang == Lang::DE ? "de" : "en"; }

Lang lang_from_code(const std::string& code) {
    if (code == "de") return Lang::DE;
    if (code == "en") return Lang::EN;
    throw ConfigError("unknown language '" + code + "' (expected de or en)");
}

PromptTemplate PromptTemplate::builtin(Lang lang) {
    if (lang == Lang::DE) {
        return {
            "Du bist ein Assistent für die ABB-RAPID-Roboterprogrammierung. Gegeben eine "
            "Aufgabenbeschreibung und ein RAPID-Modul, erzeuge das geänderte RAPID-Modul.",
            "Aufgabe", "Eingabe", "Ausgabe",
            "Gib nur das vollständige RAPID-Modul aus.",
        };
    }
    return {
        "You are an assistant for ABB RAPID robot programming. Given a task description and a "
        "RAPID module, produce the modified RAPID module.",
        "Task", "Input", "Output",
        "Output only the complete RAPID module.",
    };
}

PromptTemplate PromptTemplate::resolve(const std::string& template_dir,
                                       const std::string& template_id, Lang lang) {
    if (template_dir.empty()) {
        if (template_id != "default")
            throw ConfigError("prompt template '" + template_id +
                              "' needs a template_dir to load from");
        return builtin(lang);
    }
    std::string path = template_dir + "/" + template_id + "." + lang_code(lang) + ".toml";
    nlohmann::json cfg = load_config_file(path);
    PromptTemplate tmpl;
    auto field = [&](const char* key) {
        if (!cfg.contains(key) || !cfg[key].is_string())
            throw ConfigError("prompt template " + path + ": missing string key '" + key + "'");
        return cfg[key].get<std::string>();
    };
    tmpl.system = field("system");
    tmpl.instruction_label = field("instruction_label");
    tmpl.input_label = field("input_label");
    tmpl.output_label = field("output_label");
    tmpl.directive = field("directive");
    return tmpl;
}

namespace {

void append_fenced(std::string& out, const std::string& code) {
    out += "```\n";
    out += code;
    if (code.empty() || code.back() != '\n') out += '\n';
    out += "```\n";
}

}  // namespace

std::string build_prompt(const TaskInstance& instance, const PromptSpec& spec,
                         const std::vector<TaskInstance>& examples, const PromptTemplate& tmpl) {
    if (static_cast<int>(examples.size()) != spec.shots)
        throw ShotMismatch("prompt wants " + std::to_string(spec.shots) + " examples, got " +
                           std::to_string(examples.size()));
    for (const auto& ex : examples)
        if (ex.id == instance.id)
            throw ShotMismatch("example '" + ex.id + "' aliases the query instance");

    const bool de = spec.language == Lang::DE;
    std::string out = tmpl.system;
    out += "\n\n";
    for (const auto& ex : examples) {
        out += tmpl.instruction_label + ": " +
               (de ? ex.nl_instruction_de : ex.nl_instruction_en) + "\n";
        out += tmpl.input_label + ":\n";
        append_fenced(out, ex.input_source);
        out += tmpl.output_label + ":\n";
        append_fenced(out, ex.expected_source);
        out += "\n";
    }
    out += tmpl.instruction_label + ": " +
           (de ? instance.nl_instruction_de : instance.nl_instruction_en) + "\n";
    out += tmpl.input_label + ":\n";
    append_fenced(out, instance.input_source);
    out += "\n" + tmpl.directive + "\n";
    return out;
}

std::string build_prompt(const TaskInstance& instance, const PromptSpec& spec,
                         const std::vector<TaskInstance>& examples) {
    return build_prompt(instance, spec, examples, PromptTemplate::builtin(spec.language));
}

namespace {

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Case-insensitive whole-word search; returns npos when absent.
std::size_t find_word(const std::string& text, const std::string& lower_word, std::size_t from,
                      bool backwards) {
    auto matches_at = [&](std::size_t at) {
        if (at + lower_word.size() > text.size()) return false;
        for (std::size_t i = 0; i < lower_word.size(); ++i) {
            if (std::tolower(static_cast<unsigned char>(text[at + i])) != lower_word[i]) return false;
        }
        if (at > 0 && word_char(text[at - 1])) return false;
        std::size_t end = at + lower_word.size();
        if (end < text.size() && word_char(text[end])) return false;
        return true;
    };
    if (backwards) {
        for (std::size_t at = from + 1; at-- > 0;)
            if (matches_at(at)) return at;
        return std::string::npos;
    }
    for (std::size_t at = from; at + lower_word.size() <= text.size(); ++at)
        if (matches_at(at)) return at;
    return std::string::npos;
}

std::string trim_copy(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

std::string extract_code(const std::string& response) {
    // 1. first fenced block
    std::size_t fence = response.find("```");
    if (fence != std::string::npos) {
        std::size_t content = response.find('\n', fence);
        if (content != std::string::npos) {
            ++content;  // skip the fence line (and any language tag on it)
            std::size_t close = response.find("```", content);
            if (close != std::string::npos) return response.substr(content, close - content);
        }
    }
    // 2. widest MODULE .. ENDMODULE span
    std::size_t begin = find_word(response, "module", 0, false);
    if (begin != std::string::npos) {
        std::size_t end = find_word(response, "endmodule", response.size(), true);
        if (end != std::string::npos && end > begin)
            return response.substr(begin, end + 9 - begin);
    }
    // 3. the response as-is
    return trim_copy(response);
}

}  // namespace rapidbench
