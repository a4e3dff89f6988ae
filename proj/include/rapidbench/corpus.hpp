#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rapidbench/transforms.hpp"

namespace rapidbench {

/// Controls synthetic corpus generation. The corpus file on disk is the
/// artifact of record; determinism is per seed within one build.
struct GenConfig {
    std::uint64_t seed = 0;
    int count = 0;
    int moves_min = 3;
    int moves_max = 12;
    double coord_min_mm = -1000.0;
    double coord_max_mm = 1000.0;
    double movec_fraction = 0.15;
    std::map<std::string, double> task_mix = {{"t1", 1.0}, {"t2", 1.0}, {"t3", 1.0}};

    void check() const;  // throws ConfigError
};

/// One evaluation instance: the input module, the task, the oracle-expected
/// output, and the bilingual instruction texts.
struct TaskInstance {
    std::string id;
    TaskParams task;
    std::string input_source;
    std::string expected_source;
    std::string nl_instruction_de;
    std::string nl_instruction_en;
};

/// Instruction sentences, filled from fixed templates per language.
std::string instruction_text(const TaskParams& params, const std::string& proc_name,
                             const std::string& language);

/// Deterministically generates `cfg.count` instances. Task counts follow the
/// mix weights exactly (largest-remainder allocation); every expected output
/// is computed by the oracle; MoveC appears only where the task/mode permits;
/// inputs end on zone fine.
std::vector<TaskInstance> generate_corpus(const GenConfig& cfg);

/// Corpus directory layout: inputs/<id>.mod, expected/<id>.mod, and
/// manifest.jsonl with one {id, task, input_path, expected_path, nl_de,
/// nl_en} object per line, paths relative to the manifest.
void write_corpus(const std::vector<TaskInstance>& corpus, const std::string& directory);
std::vector<TaskInstance> load_corpus(const std::string& manifest_path);

/// Name of the procedure a task instance operates on (the module's first).
std::string instance_proc_name(const TaskInstance& instance);

}  // namespace rapidbench
