#include "rapidbench/retrieval.hpp"

#include <algorithm>
#include <cmath>

#include "rapidbench/lexer.hpp"
#include "rapidbench/numerals.hpp"

namespace rapidbench {

namespace {

void bump(ExampleIndex::SparseVector& vec, const std::string& token) { vec[token] += 1.0; }

}  // namespace

ExampleIndex::SparseVector ExampleIndex::vectorize(const TaskInstance& instance) {
    SparseVector vec;
    for (const Token& tok : tokenize(instance.input_source)) {
        switch (tok.kind) {
            case TokKind::KeywordTok: bump(vec, fold_case(keyword_spelling(tok.keyword))); break;
            case TokKind::Ident: bump(vec, fold_case(tok.text)); break;
            case TokKind::Number: bump(vec, format_number(tok.number)); break;
            case TokKind::Switch: bump(vec, "\\" + fold_case(tok.text)); break;
            default: break;  // punctuation carries no signal
        }
    }
    bump(vec, "task:" + task_tag(instance.task));
    if (const auto* t1 = std::get_if<ArgModParams>(&instance.task)) {
        bump(vec, std::string("field:") + (t1->field == MoveField::Speed  ? "speed"
                                           : t1->field == MoveField::Zone ? "zone"
                                                                          : "tool"));
        bump(vec, "value:" + fold_case(t1->new_value));
        if (std::holds_alternative<SelectAll>(t1->selector))
            bump(vec, "sel:all");
        else if (std::holds_alternative<SelectIndexRange>(t1->selector))
            bump(vec, "sel:index_range");
        else
            bump(vec, "sel:by_target");
    } else if (const auto* t2 = std::get_if<AddOffsetParams>(&instance.task)) {
        if (const auto* byt = std::get_if<SelectByTarget>(&t2->selector)) {
            bump(vec, "sel:by_target");
            bump(vec, "target:" + fold_case(byt->name));
        } else {
            bump(vec, "sel:index");
        }
    } else {
        const auto& t3 = std::get<ReverseParams>(instance.task);
        bump(vec, std::string("mode:") +
                      (t3.mode == ReverseMode::Instruction ? "instruction" : "segment"));
    }

    double norm = 0;
    for (const auto& [token, count] : vec) norm += count * count;
    norm = std::sqrt(norm);
    for (auto& [token, count] : vec) count /= norm;
    return vec;
}

ExampleIndex ExampleIndex::build(const std::vector<TaskInstance>& instances) {
    ExampleIndex index;
    for (const auto& inst : instances) index.add(inst);
    return index;
}

void ExampleIndex::add(const TaskInstance& instance) {
    vectors_[instance.id] = vectorize(instance);
}

double ExampleIndex::cosine(const SparseVector& a, const SparseVector& b) {
    const SparseVector& small = a.size() <= b.size() ? a : b;
    const SparseVector& large = a.size() <= b.size() ? b : a;
    double dot = 0;
    for (const auto& [token, weight] : small) {
        auto it = large.find(token);
        if (it != large.end()) dot += weight * it->second;
    }
    return std::clamp(dot, 0.0, 1.0);
}

std::vector<std::string> ExampleIndex::retrieve(const TaskInstance& query, std::size_t k) const {
    SparseVector qvec = vectorize(query);
    std::vector<std::pair<double, std::string>> scored;
    scored.reserve(vectors_.size());
    for (const auto& [id, vec] : vectors_) {
        if (id == query.id) continue;  // no self-retrieval
        scored.push_back({cosine(qvec, vec), id});
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    if (scored.size() > k) scored.resize(k);
    std::vector<std::string> out;
    out.reserve(scored.size());
    for (const auto& [score, id] : scored) out.push_back(id);
    return out;
}

}  // namespace rapidbench
