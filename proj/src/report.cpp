#include "rapidbench/report.hpp"

#include <array>
#include <cstdio>
#include <sstream>

#include "rapidbench/errors.hpp"

namespace rapidbench {

namespace {

constexpr std::array<std::pair<const char*, const char*>, 3> kTaskRows = {{
    {"t1", "Arguments Modification"},
    {"t2", "Adding an Offset"},
    {"t3", "Reversing"},
}};

std::string cell_value(const nlohmann::json& report, const std::string& task,
                       const std::string& language, const char* field) {
    for (const auto& cell : report.at("summary")) {
        if (cell.at("task") == task && cell.at("language") == language) {
            const auto& value = cell.at(field);
            if (value.is_null()) return "n/a";
            return value.get<std::string>() + "%";
        }
    }
    return "n/a";
}

void accuracy_table(std::ostringstream& out, const nlohmann::json& report, const char* field) {
    out << "| Task | German prompts | English prompts |\n";
    out << "|------|----------------|-----------------|\n";
    for (const auto& [task, label] : kTaskRows) {
        out << "| " << label << " | " << cell_value(report, task, "de", field) << " | "
            << cell_value(report, task, "en", field) << " |\n";
    }
}

}  // namespace

std::string report_markdown(const nlohmann::json& report) {
    try {
        const auto& meta = report.at("metadata");
        std::ostringstream out;
        out << "# RAPID Task Evaluation\n\n";
        out << "Model: " << meta.at("model").get<std::string>()
            << " | Seed: " << meta.at("seed").get<std::uint64_t>()
            << " | Shots: " << meta.at("shots").get<int>()
            << " | Retrieval: " << meta.at("retrieval").get<std::string>() << "\n\n";

        out << "## Accuracy (strict)\n\n";
        accuracy_table(out, report, "strict_accuracy_pct");
        out << "\n## Accuracy (functional)\n\n";
        accuracy_table(out, report, "functional_accuracy_pct");

        if (report.contains("pass_at_k")) {
            const auto& block = report.at("pass_at_k");
            char est[32];
            std::snprintf(est, sizeof est, "%.4f", block.at("estimate").get<double>());
            out << "\n## pass@k\n\n"
                << "n = " << block.at("n").get<long long>()
                << ", c = " << block.at("c").get<long long>()
                << ", k = " << block.at("k").get<long long>() << ", estimate = " << est << "\n";
        }
        return out.str();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("report: malformed report JSON: ") + e.what());
    }
}

std::string report_csv(const nlohmann::json& report) {
    try {
        std::ostringstream out;
        out << "task,language,n,strict_matches,strict_accuracy_pct,functional_matches,"
               "functional_accuracy_pct\n";
        for (const auto& cell : report.at("summary")) {
            auto pct = [&](const char* key) {
                return cell.at(key).is_null() ? std::string("") : cell.at(key).get<std::string>();
            };
            out << cell.at("task").get<std::string>() << ","
                << cell.at("language").get<std::string>() << "," << cell.at("n").get<int>() << ","
                << cell.at("strict_matches").get<int>() << "," << pct("strict_accuracy_pct") << ","
                << cell.at("functional_matches").get<int>() << ","
                << pct("functional_accuracy_pct") << "\n";
        }
        return out.str();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("report: malformed report JSON: ") + e.what());
    }
}

}  // namespace rapidbench
