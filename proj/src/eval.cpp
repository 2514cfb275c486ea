#include "qaw/eval.hpp"

#include "qaw/errors.hpp"
#include "qaw/io.hpp"
#include "qaw/util.hpp"

#include <algorithm>

namespace qaw {

void AnswerKey::compile_patterns() {
    compiled.clear();
    compiled.reserve(patterns.size());
    for (const std::string& p : patterns) {
        try {
            compiled.emplace_back(p, std::regex::ECMAScript | std::regex::icase);
        } catch (const std::regex_error& e) {
            throw DataError("question " + question_id + ": invalid answer pattern '" + p +
                            "': " + e.what());
        }
    }
}

bool AnswerKey::matches(const std::string& text) const {
    for (const std::regex& re : compiled) {
        if (std::regex_search(text, re)) return true;
    }
    return false;
}

AnswerKeyMap key_map(const std::vector<AnswerKey>& keys) {
    AnswerKeyMap out;
    for (const AnswerKey& k : keys) {
        if (!out.emplace(k.question_id, k).second) {
            throw DataError("duplicate answer key for question " + k.question_id);
        }
    }
    return out;
}

const char* mode_name(MatchMode mode) {
    return mode == MatchMode::Strict ? "strict" : "lenient";
}

MatchMode mode_from_name(const std::string& name) {
    if (name == "strict") return MatchMode::Strict;
    if (name == "lenient") return MatchMode::Lenient;
    throw UsageError("unknown match mode: " + name + " (expected strict|lenient)");
}

JudgedRun judge(const RetrievalRun& run, const AnswerKeyMap& keys, const Index& corpus, int jobs) {
    JudgedRun judged;
    judged.run_id = run.run_id;
    judged.cutoff = run.cutoff;

    std::vector<const std::pair<const std::string, std::vector<ScoredUnit>>*> questions;
    questions.reserve(run.results.size());
    for (const auto& entry : run.results) questions.push_back(&entry);

    std::vector<std::vector<Judgement>> rows(questions.size());
    std::vector<std::string> errors(questions.size());
    parallel_for(questions.size(), jobs, [&](std::size_t qi) {
        const auto& [question_id, results] = *questions[qi];
        auto key = keys.find(question_id);
        if (key == keys.end()) {
            errors[qi] = "no answer key for question " + question_id;
            return;
        }
        std::vector<Judgement>& out = rows[qi];
        out.reserve(results.size());
        for (std::size_t rank = 0; rank < results.size(); ++rank) {
            const IndexUnit* unit = corpus.find_unit(results[rank].unit_id);
            if (!unit) {
                errors[qi] = "run " + run.run_id + ": unit " + results[rank].unit_id +
                             " not in corpus";
                return;
            }
            bool lenient = key->second.matches(unit->text);
            bool strict = lenient && key->second.judged_docs.count(unit->parent_doc_id) > 0;
            out.push_back({question_id, unit->unit_id, static_cast<int>(rank) + 1, lenient, strict});
        }
    });
    for (const std::string& err : errors) {
        if (!err.empty()) throw DataError(err);
    }
    for (std::size_t qi = 0; qi < questions.size(); ++qi) {
        judged.per_question[questions[qi]->first] = std::move(rows[qi]);
    }
    return judged;
}

namespace {

bool positive(const Judgement& j, MatchMode mode) {
    return mode == MatchMode::Strict ? j.strict : j.lenient;
}

int count_in_top(const std::vector<Judgement>& judgements, int n, MatchMode mode) {
    int count = 0;
    for (const Judgement& j : judgements) {
        if (j.rank > n) break;
        if (positive(j, mode)) ++count;
    }
    return count;
}

}  // namespace

double coverage(const JudgedRun& judged, int n, MatchMode mode) {
    if (n < 1 || n > judged.cutoff) {
        throw ContractViolation("coverage cutoff " + std::to_string(n) +
                                " outside run cutoff " + std::to_string(judged.cutoff));
    }
    if (judged.per_question.empty()) return 0.0;
    int covered = 0;
    for (const auto& [qid, judgements] : judged.per_question) {
        if (count_in_top(judgements, n, mode) > 0) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(judged.per_question.size());
}

RedundancyReport redundancy(const JudgedRun& judged, int n, MatchMode mode) {
    if (n < 1 || n > judged.cutoff) {
        throw ContractViolation("redundancy cutoff " + std::to_string(n) +
                                " outside run cutoff " + std::to_string(judged.cutoff));
    }
    RedundancyReport report;
    report.run_id = judged.run_id;
    report.n = n;
    report.mode = mode;
    long long total = 0;
    for (const auto& [qid, judgements] : judged.per_question) {
        int count = count_in_top(judgements, n, mode);
        report.per_question[qid] = count;
        total += count;
    }
    report.macro_mean = report.per_question.empty()
                            ? 0.0
                            : static_cast<double>(total) /
                                  static_cast<double>(report.per_question.size());
    return report;
}

double mean_redundancy(const std::string& question_id,
                       const std::vector<RedundancyReport>& selected) {
    if (selected.empty()) throw ContractViolation("mean_redundancy needs at least one report");
    double sum = 0.0;
    for (const RedundancyReport& report : selected) {
        auto it = report.per_question.find(question_id);
        if (it == report.per_question.end()) {
            throw DataError("question " + question_id + " missing from report for run " +
                            report.run_id);
        }
        sum += static_cast<double>(it->second);
    }
    return sum / static_cast<double>(selected.size());
}

DifficultSet find_difficult(const std::vector<RedundancyReport>& reports,
                            const DifficultPolicy& policy) {
    std::vector<RedundancyReport> selected;
    for (const RedundancyReport& report : reports) {
        if (report.n != policy.n) continue;
        if (!policy.run_ids.empty() &&
            std::find(policy.run_ids.begin(), policy.run_ids.end(), report.run_id) ==
                policy.run_ids.end()) {
            continue;
        }
        if (!policy.modes.empty() &&
            std::find(policy.modes.begin(), policy.modes.end(), report.mode) ==
                policy.modes.end()) {
            continue;
        }
        selected.push_back(report);
    }
    if (selected.empty()) {
        throw ContractViolation("difficult-question policy selects no redundancy reports");
    }

    DifficultSet out;
    out.policy = policy;
    for (const auto& [qid, count] : selected.front().per_question) {
        if (mean_redundancy(qid, selected) <= policy.threshold) out.question_ids.push_back(qid);
    }
    return out;
}

void export_question_set(const DifficultSet& difficult, const std::vector<QuestionRecord>& questions,
                         const std::filesystem::path& path) {
    std::set<std::string> wanted(difficult.question_ids.begin(), difficult.question_ids.end());
    std::vector<QuestionRecord> selected;
    for (const QuestionRecord& q : questions) {
        if (wanted.erase(q.question_id) > 0) selected.push_back(q);
    }
    if (!wanted.empty()) {
        std::string ids;
        for (const std::string& id : wanted) {
            if (!ids.empty()) ids += ", ";
            ids += id;
        }
        throw DataError("difficult question ids not in the question set: " + ids);
    }
    write_question_set(path, selected);
}

std::vector<RunComparisonRow> compare_runs(const std::vector<JudgedRun>& runs,
                                           const std::vector<int>& ranks) {
    if (runs.empty()) return {};
    const JudgedRun& first = runs.front();
    for (const JudgedRun& run : runs) {
        std::vector<std::string> only_first;
        std::vector<std::string> only_other;
        for (const auto& [qid, j] : first.per_question) {
            if (!run.per_question.count(qid)) only_first.push_back(qid);
        }
        for (const auto& [qid, j] : run.per_question) {
            if (!first.per_question.count(qid)) only_other.push_back(qid);
        }
        if (!only_first.empty() || !only_other.empty()) {
            std::string detail;
            for (const std::string& id : only_first) detail += " -" + id;
            for (const std::string& id : only_other) detail += " +" + id;
            throw DataError("runs " + first.run_id + " and " + run.run_id +
                            " cover different questions:" + detail);
        }
    }

    std::vector<RunComparisonRow> rows;
    for (int n : ranks) {
        for (const JudgedRun& run : runs) {
            for (MatchMode mode : {MatchMode::Strict, MatchMode::Lenient}) {
                RunComparisonRow row;
                row.run_id = run.run_id;
                row.mode = mode;
                row.n = n;
                row.coverage = coverage(run, n, mode);
                row.mean_redundancy = redundancy(run, n, mode).macro_mean;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

}  // namespace qaw
