#pragma once

#include "qaw/series.hpp"
#include "qaw/text.hpp"

#include <string>
#include <vector>

namespace qaw {

enum class MetricKind { Jaccard, Dice, Cosine, BlockDistance };

const char* metric_name(MetricKind kind);
MetricKind metric_from_name(const std::string& name);

// Non-negative unigram/bigram/trigram weights; at least one must be positive.
struct GramWeights {
    double w1 = 2.0;
    double w2 = 1.0;
    double w3 = 0.0;
};

// Scores are in [0, 1]. Jaccard and Dice work over gram sets (multiplicity
// ignored), Cosine and BlockDistance over count vectors. Two empty profiles
// score 1, exactly one empty scores 0.
double base_similarity(MetricKind kind, const NGramProfile& a, const NGramProfile& b);

// Weighted combination of per-order similarities over the tokenized strings;
// orders with zero weight are not computed.
double weighted_similarity(MetricKind kind, const std::string& a, const std::string& b,
                           const GramWeights& w);

struct GoldStandardEntry {
    std::string series_id;
    std::string question_id;
    std::string target;       // context columns carried by the gold file
    std::string target_type;
    std::string question;
    std::vector<std::string> reformulations;
};

// Best-match semantics: maximum weighted similarity over the reformulations.
double score_against_gold(const std::string& candidate, const GoldStandardEntry& gold,
                          MetricKind kind, const GramWeights& w);

enum class DatasetKind { WithoutTarget, WithTarget, Identical };

const char* dataset_name(DatasetKind kind);

struct DatasetItem {
    std::string question_id;
    std::string candidate;
};

struct TestDataset {
    DatasetKind kind = DatasetKind::WithoutTarget;
    std::vector<DatasetItem> items;
};

struct DatasetTriple {
    TestDataset without_target;
    TestDataset with_target;
    TestDataset identical;
};

// WithoutTarget = raw question text; WithTarget = question + ' ' + target;
// Identical = first gold reformulation. Gold entries without a matching
// series question are a data error.
DatasetTriple generate_test_datasets(const std::vector<QuestionSeries>& series,
                                     const std::vector<GoldStandardEntry>& gold);

struct ScoredItem {
    std::string question_id;
    double score = 0.0;
};

struct DatasetReport {
    DatasetKind kind = DatasetKind::WithoutTarget;
    std::vector<ScoredItem> items;  // stable order by question_id
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

DatasetReport evaluate_dataset(const TestDataset& dataset, const std::vector<GoldStandardEntry>& gold,
                               MetricKind kind, const GramWeights& w, int jobs = 1);

}  // namespace qaw
