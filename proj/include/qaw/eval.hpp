#pragma once

#include "qaw/corpus.hpp"
#include "qaw/index.hpp"
#include "qaw/series.hpp"

#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

namespace qaw {

// Answer patterns plus the (possibly incomplete) set of documents the
// assessors flagged as answer-bearing.
struct AnswerKey {
    std::string question_id;
    std::vector<std::string> patterns;
    std::set<std::string> judged_docs;
    std::vector<std::regex> compiled;  // filled by compile_patterns

    void compile_patterns();
    bool matches(const std::string& text) const;
};

using AnswerKeyMap = std::map<std::string, AnswerKey>;

AnswerKeyMap key_map(const std::vector<AnswerKey>& keys);

struct RetrievalRun {
    std::string run_id;
    std::string config_name;
    IndexLevel level = IndexLevel::Passage;
    int cutoff = 20;
    std::map<std::string, std::vector<ScoredUnit>> results;  // question_id -> ranked units
};

enum class MatchMode { Strict, Lenient };

const char* mode_name(MatchMode mode);
MatchMode mode_from_name(const std::string& name);

struct Judgement {
    std::string question_id;
    std::string unit_id;
    int rank = 0;  // 1-based
    bool lenient = false;
    bool strict = false;
};

// Judgements for one run, ordered by (question_id, rank).
struct JudgedRun {
    std::string run_id;
    int cutoff = 0;
    std::map<std::string, std::vector<Judgement>> per_question;
};

// Lenient: any pattern matches the unit's text. Strict: lenient and the
// unit's parent document was flagged answer-bearing.
JudgedRun judge(const RetrievalRun& run, const AnswerKeyMap& keys, const Index& corpus,
                int jobs = 1);

// Fraction of questions with at least one positive judgement in the top n.
double coverage(const JudgedRun& judged, int n, MatchMode mode);

struct RedundancyReport {
    std::string run_id;
    int n = 0;
    MatchMode mode = MatchMode::Strict;
    std::map<std::string, int> per_question;  // answer-bearing count in top n
    double macro_mean = 0.0;
};

RedundancyReport redundancy(const JudgedRun& judged, int n, MatchMode mode);

// Arithmetic mean of one question's redundancy across the selected reports.
double mean_redundancy(const std::string& question_id,
                       const std::vector<RedundancyReport>& selected);

struct DifficultPolicy {
    double threshold = 0.0;
    std::vector<std::string> run_ids;   // empty = all runs present in the reports
    std::vector<MatchMode> modes;       // empty = both modes
    int n = 20;
};

struct DifficultSet {
    std::vector<std::string> question_ids;  // sorted
    DifficultPolicy policy;
};

DifficultSet find_difficult(const std::vector<RedundancyReport>& reports,
                            const DifficultPolicy& policy);

// Writes the difficult questions in the question-set format the CLI ingests,
// preserving the original question order.
void export_question_set(const DifficultSet& difficult, const std::vector<QuestionRecord>& questions,
                         const std::filesystem::path& path);

struct RunComparisonRow {
    std::string run_id;
    MatchMode mode = MatchMode::Strict;
    int n = 0;
    double coverage = 0.0;
    double mean_redundancy = 0.0;
};

// Coverage and mean redundancy per (run, mode, n). Runs must cover the same
// question set; a mismatch is a data error listing the symmetric difference.
std::vector<RunComparisonRow> compare_runs(const std::vector<JudgedRun>& runs,
                                           const std::vector<int>& ranks);

}  // namespace qaw
