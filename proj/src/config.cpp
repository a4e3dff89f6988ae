#include "rapidbench/config.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rapidbench/errors.hpp"

namespace rapidbench {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Strips a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

nlohmann::json parse_scalar(std::string_view raw, int line) {
    raw = trim(raw);
    if (raw.empty()) fail(line, "missing value");
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
        std::string out;
        for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
            if (raw[i] == '\\' && i + 2 < raw.size()) {
                ++i;
                switch (raw[i]) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    default: fail(line, "unsupported escape");
                }
            } else {
                out.push_back(raw[i]);
            }
        }
        return out;
    }
    if (raw == "true") return true;
    if (raw == "false") return false;
    std::string text(raw);
    char* end = nullptr;
    double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) fail(line, "unrecognized value '" + text + "'");
    if (value == static_cast<long long>(value) && text.find_first_of(".eE") == std::string::npos)
        return static_cast<long long>(value);
    return value;
}

nlohmann::json parse_value(std::string_view raw, int line) {
    raw = trim(raw);
    if (!raw.empty() && raw.front() == '[') {
        if (raw.back() != ']') fail(line, "unterminated array");
        nlohmann::json arr = nlohmann::json::array();
        std::string_view body = raw.substr(1, raw.size() - 2);
        std::size_t start = 0;
        bool quoted = false;
        for (std::size_t i = 0; i <= body.size(); ++i) {
            if (i < body.size() && body[i] == '"') quoted = !quoted;
            if (i == body.size() || (body[i] == ',' && !quoted)) {
                std::string_view item = trim(body.substr(start, i - start));
                if (!item.empty()) arr.push_back(parse_scalar(item, line));
                start = i + 1;
            }
        }
        return arr;
    }
    return parse_scalar(raw, line);
}

}  // namespace

nlohmann::json parse_config_text(std::string_view text) {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* scope = &root;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;

        std::string_view body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') fail(lineno, "unterminated section header");
            std::string name(trim(body.substr(1, body.size() - 2)));
            if (name.empty()) fail(lineno, "empty section name");
            root[name] = nlohmann::json::object();
            scope = &root[name];
            continue;
        }
        std::size_t eq = std::string_view::npos;
        bool quoted = false;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '"') quoted = !quoted;
            if (body[i] == '=' && !quoted) {
                eq = i;
                break;
            }
        }
        if (eq == std::string_view::npos) fail(lineno, "expected 'key = value'");
        std::string key(trim(body.substr(0, eq)));
        if (key.empty()) fail(lineno, "empty key");
        (*scope)[key] = parse_value(body.substr(eq + 1), lineno);
    }
    return root;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("failed writing file '" + path + "'");
}

nlohmann::json load_config_file(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

std::string content_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace rapidbench
