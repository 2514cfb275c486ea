#pragma once

#include "qaw/eval.hpp"
#include "qaw/index.hpp"
#include "qaw/series.hpp"
#include "qaw/text.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace qaw {

struct ExtensionCandidate {
    std::string question_id;
    std::string word;
    std::string source_unit_id;
};

// Words from answer-bearing passages (lenient pattern match) that are not
// stopwords, not question tokens and not part of a matched answer string;
// deduplicated in first-occurrence order.
std::vector<ExtensionCandidate> extract_candidates(const std::string& question_id,
                                                   const std::string& question_text,
                                                   const AnswerKey& key,
                                                   std::span<const IndexUnit> passages,
                                                   const StopwordList& stops);

struct ExtensionOutcome {
    ExtensionCandidate candidate;
    int redundancy_before = 0;
    int redundancy_after = 0;
    bool helpful = false;  // redundancy_after > 0
};

// Retrieves with "question + ' ' + word" and counts answer-bearing units in
// the top n (strict by default).
ExtensionOutcome test_extension(const Index& index, const std::string& question_id,
                                const std::string& question_text, const std::string& word,
                                const AnswerKey& key, int n, const RankingConfig& config,
                                const StopwordList& stops, MatchMode mode = MatchMode::Strict);

// Per difficult question: every candidate tested; helpful ones kept.
std::map<std::string, std::vector<ExtensionOutcome>> mine_hew(
    const Index& index, const std::vector<QuestionRecord>& questions,
    const DifficultSet& difficult, const AnswerKeyMap& keys, int n,
    const RankingConfig& config, const StopwordList& stops, int jobs = 1,
    MatchMode mode = MatchMode::Strict);

struct RFSelection {
    std::string question_id;
    int r = 0;
    std::vector<std::pair<std::string, int>> terms;  // (token, aggregate tf), tf desc then lexicographic
};

// Harvests the top-r units of the base-question retrieval and ranks their
// non-stopword, non-question tokens by aggregate term frequency; keeps k.
RFSelection blind_rf_terms(const Index& index, const std::string& question_id,
                           const std::string& question_text, int r, int k,
                           const RankingConfig& config, const StopwordList& stops);

std::string expanded_query(const std::string& question_text, const RFSelection& selection);

struct RfCell {
    int r = 0;
    IndexLevel level = IndexLevel::Document;
    std::map<int, double> coverage_by_rank;  // strict coverage per rank
};

struct RfGrid {
    std::vector<int> ranks;
    std::vector<RfCell> cells;               // ordered by (r ascending, Document then Passage)
    std::map<int, double> baseline_by_rank;  // unexpanded strict coverage
};

// Table-2-shaped experiment: cells for each (r, harvesting level) with
// coverage of RF-expanded retrieval against the evaluation index, plus the
// unexpanded baseline column.
RfGrid rf_experiment(const std::map<IndexLevel, const Index*>& harvest_indexes,
                     const Index& eval_index, const std::vector<QuestionRecord>& questions,
                     const AnswerKeyMap& keys, const std::vector<int>& rs, int k,
                     const std::vector<int>& ranks, const RankingConfig& config,
                     const StopwordList& stops, int jobs = 1);

struct IntersectionStats {
    double hew_in_irt = 0.0;   // % of HEW tokens found in the question's IRT
    double irt_with_hew = 0.0; // % of IRT units containing at least one HEW
    double rf_in_hew = 0.0;    // % of RF-selected words that are HEW
};

// Pooled percentages over aligned per-question pools; empty pools render 0.
IntersectionStats intersection_stats(
    const std::map<std::string, std::vector<std::string>>& hew_words,
    const std::map<std::string, std::vector<std::string>>& irt_texts,
    const std::map<std::string, std::vector<std::string>>& rf_words);

}  // namespace qaw
