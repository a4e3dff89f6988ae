#pragma once

#include <map>
#include <string>
#include <vector>

#include "rapidbench/corpus.hpp"

namespace rapidbench {

/// Lexical few-shot retrieval: instances are represented as L2-normalized
/// token-frequency vectors over their code tokens plus task-parameter tokens.
class ExampleIndex {
public:
    using SparseVector = std::map<std::string, double>;

    static ExampleIndex build(const std::vector<TaskInstance>& instances);

    void add(const TaskInstance& instance);
    std::size_t size() const { return vectors_.size(); }
    bool contains(const std::string& id) const { return vectors_.count(id) > 0; }

    /// Tokenizes one instance into its normalized vector.
    static SparseVector vectorize(const TaskInstance& instance);

    /// Top-k ids by cosine similarity against the query, self excluded, ties
    /// broken by ascending id. k beyond the index size returns everything.
    std::vector<std::string> retrieve(const TaskInstance& query, std::size_t k) const;

    /// Cosine similarity of two normalized sparse vectors; in [0, 1].
    static double cosine(const SparseVector& a, const SparseVector& b);

private:
    std::map<std::string, SparseVector> vectors_;
};

/// Free-function form mirroring the operation contract.
inline std::vector<std::string> retrieve_examples(const TaskInstance& query,
                                                  const ExampleIndex& index, std::size_t k) {
    return index.retrieve(query, k);
}

}  // namespace rapidbench
