#pragma once

#include "qaw/corpus.hpp"
#include "qaw/text.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qaw {

// Ranking scheme stand-ins for the engine configurations under comparison.
struct RankingConfig {
    enum class Scheme { Tfidf, Bm25 };

    std::string name = "tfidf";
    Scheme scheme = Scheme::Tfidf;
    double k1 = 1.2;
    double b = 0.75;

    void validate() const;
};

RankingConfig tfidf_config();
RankingConfig bm25_config(double k1 = 1.2, double b = 0.75);

struct Posting {
    int unit = 0;  // ordinal into units(), ascending unit_id
    int tf = 0;
};

struct ScoredUnit {
    std::string unit_id;
    double score = 0.0;
};

// Immutable inverted index over units at one granularity level. Stopwords
// are kept in the index; filtering is a query-time choice.
class Index {
public:
    static Index build(std::vector<IndexUnit> units, IndexLevel level);

    IndexLevel level() const { return level_; }
    std::size_t unit_count() const { return units_.size(); }
    double average_unit_length() const { return average_length_; }
    std::size_t term_count() const { return postings_.size(); }

    const std::vector<IndexUnit>& units() const { return units_; }
    const IndexUnit& unit(int ordinal) const { return units_[ordinal]; }
    int unit_length(int ordinal) const { return unit_lengths_[ordinal]; }
    const IndexUnit* find_unit(const std::string& unit_id) const;
    const std::vector<Posting>* postings(const std::string& term) const;

    void save(const std::filesystem::path& path) const;
    static Index load(const std::filesystem::path& path);

private:
    IndexLevel level_ = IndexLevel::Passage;
    std::vector<IndexUnit> units_;       // sorted by unit_id
    std::vector<int> unit_lengths_;
    double average_length_ = 0.0;
    std::map<std::string, std::vector<Posting>> postings_;
};

// Bag-of-words scoring of the query's non-stopword terms under the named
// scheme; ties break by ascending unit_id; only units with positive score
// are returned, at most n of them.
std::vector<ScoredUnit> retrieve(const Index& index, const std::string& query, int n,
                                 const RankingConfig& config, const StopwordList& stops);

}  // namespace qaw
