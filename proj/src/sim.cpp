#include "qaw/sim.hpp"

#include "qaw/errors.hpp"
#include "qaw/util.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qaw {

const char* metric_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::Jaccard: return "jaccard";
        case MetricKind::Dice: return "dice";
        case MetricKind::Cosine: return "cosine";
        case MetricKind::BlockDistance: return "block";
    }
    return "jaccard";
}

MetricKind metric_from_name(const std::string& name) {
    if (name == "jaccard") return MetricKind::Jaccard;
    if (name == "dice") return MetricKind::Dice;
    if (name == "cosine") return MetricKind::Cosine;
    if (name == "block") return MetricKind::BlockDistance;
    throw UsageError("unknown metric: " + name + " (expected jaccard|dice|cosine|block)");
}

const char* dataset_name(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::WithoutTarget: return "without-target";
        case DatasetKind::WithTarget: return "with-target";
        case DatasetKind::Identical: return "identical";
    }
    return "without-target";
}

namespace {

double jaccard(const NGramProfile& a, const NGramProfile& b) {
    std::size_t shared = 0;
    for (const auto& [gram, count] : a.grams) {
        if (b.grams.count(gram)) ++shared;
    }
    std::size_t united = a.grams.size() + b.grams.size() - shared;
    return static_cast<double>(shared) / static_cast<double>(united);
}

double dice(const NGramProfile& a, const NGramProfile& b) {
    std::size_t shared = 0;
    for (const auto& [gram, count] : a.grams) {
        if (b.grams.count(gram)) ++shared;
    }
    return 2.0 * static_cast<double>(shared) /
           static_cast<double>(a.grams.size() + b.grams.size());
}

double cosine(const NGramProfile& a, const NGramProfile& b) {
    double dot = 0.0;
    for (const auto& [gram, count] : a.grams) {
        auto it = b.grams.find(gram);
        if (it != b.grams.end()) dot += static_cast<double>(count) * it->second;
    }
    double na = 0.0;
    for (const auto& [gram, count] : a.grams) na += static_cast<double>(count) * count;
    double nb = 0.0;
    for (const auto& [gram, count] : b.grams) nb += static_cast<double>(count) * count;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double block_distance(const NGramProfile& a, const NGramProfile& b) {
    long long l1 = 0;
    long long total = 0;
    auto ia = a.grams.begin();
    auto ib = b.grams.begin();
    while (ia != a.grams.end() || ib != b.grams.end()) {
        if (ib == b.grams.end() || (ia != a.grams.end() && ia->first < ib->first)) {
            l1 += ia->second;
            total += ia->second;
            ++ia;
        } else if (ia == a.grams.end() || ib->first < ia->first) {
            l1 += ib->second;
            total += ib->second;
            ++ib;
        } else {
            l1 += std::llabs(static_cast<long long>(ia->second) - ib->second);
            total += ia->second + ib->second;
            ++ia;
            ++ib;
        }
    }
    return 1.0 - static_cast<double>(l1) / static_cast<double>(total);
}

}  // namespace

double base_similarity(MetricKind kind, const NGramProfile& a, const NGramProfile& b) {
    if (a.n != b.n) {
        throw ContractViolation("profile gram orders differ: " + std::to_string(a.n) + " vs " +
                                std::to_string(b.n));
    }
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    switch (kind) {
        case MetricKind::Jaccard: return jaccard(a, b);
        case MetricKind::Dice: return dice(a, b);
        case MetricKind::Cosine: return cosine(a, b);
        case MetricKind::BlockDistance: return block_distance(a, b);
    }
    return 0.0;
}

double weighted_similarity(MetricKind kind, const std::string& a, const std::string& b,
                           const GramWeights& w) {
    if (w.w1 < 0 || w.w2 < 0 || w.w3 < 0) throw ContractViolation("gram weights must be non-negative");
    double total = w.w1 + w.w2 + w.w3;
    if (total <= 0) throw ContractViolation("gram weights must not all be zero");
    TokenStream ta = tokenize(a);
    TokenStream tb = tokenize(b);
    double acc = 0.0;
    const double weights[3] = {w.w1, w.w2, w.w3};
    for (int order = 1; order <= 3; ++order) {
        double weight = weights[order - 1];
        if (weight == 0.0) continue;
        acc += weight * base_similarity(kind, ngrams(ta, order), ngrams(tb, order));
    }
    return acc / total;
}

double score_against_gold(const std::string& candidate, const GoldStandardEntry& gold,
                          MetricKind kind, const GramWeights& w) {
    if (gold.reformulations.empty()) {
        throw ContractViolation("gold entry " + gold.series_id + "/" + gold.question_id +
                                " has no reformulations");
    }
    double best = 0.0;
    for (const std::string& ref : gold.reformulations) {
        best = std::max(best, weighted_similarity(kind, candidate, ref, w));
    }
    return best;
}

DatasetTriple generate_test_datasets(const std::vector<QuestionSeries>& series,
                                     const std::vector<GoldStandardEntry>& gold) {
    DatasetTriple out;
    out.without_target.kind = DatasetKind::WithoutTarget;
    out.with_target.kind = DatasetKind::WithTarget;
    out.identical.kind = DatasetKind::Identical;

    std::vector<std::string> unmatched;
    for (const GoldStandardEntry& entry : gold) {
        const QuestionSeries* s = nullptr;
        for (const QuestionSeries& candidate : series) {
            if (candidate.series_id == entry.series_id) {
                s = &candidate;
                break;
            }
        }
        const SeriesQuestion* q = s ? s->find_question(entry.question_id) : nullptr;
        if (!q) {
            unmatched.push_back(entry.series_id + "/" + entry.question_id);
            continue;
        }
        out.without_target.items.push_back({entry.question_id, q->text});
        out.with_target.items.push_back({entry.question_id, q->text + " " + s->target});
        out.identical.items.push_back({entry.question_id, entry.reformulations.front()});
    }
    if (!unmatched.empty()) {
        std::string ids;
        for (const std::string& id : unmatched) {
            if (!ids.empty()) ids += ", ";
            ids += id;
        }
        throw DataError("gold entries without a matching series question: " + ids);
    }
    return out;
}

DatasetReport evaluate_dataset(const TestDataset& dataset, const std::vector<GoldStandardEntry>& gold,
                               MetricKind kind, const GramWeights& w, int jobs) {
    DatasetReport report;
    report.kind = dataset.kind;
    report.items.resize(dataset.items.size());

    std::vector<const GoldStandardEntry*> entries(dataset.items.size(), nullptr);
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < dataset.items.size(); ++i) {
        for (const GoldStandardEntry& entry : gold) {
            if (entry.question_id == dataset.items[i].question_id) {
                entries[i] = &entry;
                break;
            }
        }
        if (!entries[i]) missing.push_back(dataset.items[i].question_id);
    }
    if (!missing.empty()) {
        std::string ids;
        for (const std::string& id : missing) {
            if (!ids.empty()) ids += ", ";
            ids += id;
        }
        throw DataError("dataset items without a gold entry: " + ids);
    }

    parallel_for(dataset.items.size(), jobs, [&](std::size_t i) {
        report.items[i].question_id = dataset.items[i].question_id;
        report.items[i].score = score_against_gold(dataset.items[i].candidate, *entries[i], kind, w);
    });

    std::stable_sort(report.items.begin(), report.items.end(),
                     [](const ScoredItem& a, const ScoredItem& b) {
                         return a.question_id < b.question_id;
                     });

    if (report.items.empty()) return report;
    double sum = 0.0;
    report.min = report.items.front().score;
    report.max = report.items.front().score;
    for (const ScoredItem& item : report.items) {
        sum += item.score;
        report.min = std::min(report.min, item.score);
        report.max = std::max(report.max, item.score);
    }
    report.mean = sum / static_cast<double>(report.items.size());
    return report;
}

}  // namespace qaw
