#include "qaw/index.hpp"

#include "qaw/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace qaw {

void RankingConfig::validate() const {
    if (scheme == Scheme::Bm25) {
        if (k1 <= 0) throw ContractViolation("bm25 k1 must be > 0");
        if (b < 0 || b > 1) throw ContractViolation("bm25 b must be in [0, 1]");
    }
}

RankingConfig tfidf_config() {
    return RankingConfig{"tfidf", RankingConfig::Scheme::Tfidf, 1.2, 0.75};
}

RankingConfig bm25_config(double k1, double b) {
    return RankingConfig{"bm25", RankingConfig::Scheme::Bm25, k1, b};
}

Index Index::build(std::vector<IndexUnit> units, IndexLevel level) {
    std::sort(units.begin(), units.end(),
              [](const IndexUnit& a, const IndexUnit& b) { return a.unit_id < b.unit_id; });
    for (std::size_t i = 1; i < units.size(); ++i) {
        if (units[i].unit_id == units[i - 1].unit_id) {
            throw DataError("duplicate unit_id: " + units[i].unit_id);
        }
    }

    Index index;
    index.level_ = level;
    index.units_ = std::move(units);
    index.unit_lengths_.resize(index.units_.size(), 0);

    long long total_tokens = 0;
    for (std::size_t u = 0; u < index.units_.size(); ++u) {
        TokenStream tokens = tokenize(index.units_[u].text);
        index.unit_lengths_[u] = static_cast<int>(tokens.size());
        total_tokens += static_cast<long long>(tokens.size());
        std::map<std::string, int> counts;
        for (const std::string& t : tokens) ++counts[t];
        for (const auto& [term, tf] : counts) {
            index.postings_[term].push_back({static_cast<int>(u), tf});
        }
    }
    index.average_length_ = index.units_.empty()
                                ? 0.0
                                : static_cast<double>(total_tokens) /
                                      static_cast<double>(index.units_.size());
    return index;
}

const IndexUnit* Index::find_unit(const std::string& unit_id) const {
    auto it = std::lower_bound(units_.begin(), units_.end(), unit_id,
                               [](const IndexUnit& u, const std::string& id) {
                                   return u.unit_id < id;
                               });
    if (it == units_.end() || it->unit_id != unit_id) return nullptr;
    return &*it;
}

const std::vector<Posting>* Index::postings(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? nullptr : &it->second;
}

namespace {
constexpr int kIndexVersion = 1;
}

void Index::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write index file: " + path.string());
    nlohmann::ordered_json header;
    header["format"] = "qaw-index";
    header["version"] = kIndexVersion;
    header["level"] = level_name(level_);
    header["units"] = units_.size();
    out << header.dump() << "\n";
    for (const IndexUnit& u : units_) {
        nlohmann::ordered_json record;
        record["unit_id"] = u.unit_id;
        record["parent_doc_id"] = u.parent_doc_id;
        record["text"] = u.text;
        out << record.dump() << "\n";
    }
}

Index Index::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open index file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": missing index header");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": invalid index header: " + e.what());
    }
    if (header.value("format", "") != "qaw-index" || header.value("version", 0) != kIndexVersion) {
        throw DataError(path.string() + ": not a qaw-index v" + std::to_string(kIndexVersion) +
                        " file");
    }
    IndexLevel level = level_from_name(header.value("level", "passage"));
    std::vector<IndexUnit> units;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ": line " + std::to_string(line_no) +
                            ": invalid JSON: " + e.what());
        }
        units.push_back({record.at("unit_id").get<std::string>(),
                         record.at("text").get<std::string>(),
                         record.at("parent_doc_id").get<std::string>()});
    }
    return build(std::move(units), level);
}

std::vector<ScoredUnit> retrieve(const Index& index, const std::string& query, int n,
                                 const RankingConfig& config, const StopwordList& stops) {
    if (n < 1) throw ContractViolation("retrieval cutoff must be >= 1");
    config.validate();

    TokenStream terms = strip_stopwords(tokenize(query), stops);
    if (terms.empty()) return {};

    // distinct terms in first-occurrence order, with query term frequency
    std::vector<std::pair<std::string, int>> query_terms;
    for (const std::string& t : terms) {
        auto it = std::find_if(query_terms.begin(), query_terms.end(),
                               [&](const auto& p) { return p.first == t; });
        if (it == query_terms.end()) {
            query_terms.emplace_back(t, 1);
        } else {
            ++it->second;
        }
    }

    const double unit_total = static_cast<double>(index.unit_count());
    const double avg_len = index.average_unit_length();
    std::vector<double> scores(index.unit_count(), 0.0);

    for (const auto& [term, qtf] : query_terms) {
        const std::vector<Posting>* postings = index.postings(term);
        if (!postings) continue;
        const double df = static_cast<double>(postings->size());
        double idf = 0.0;
        if (config.scheme == RankingConfig::Scheme::Tfidf) {
            idf = std::log(1.0 + unit_total / df);
        } else {
            idf = std::max(0.0, std::log((unit_total - df + 0.5) / (df + 0.5)));
        }
        if (idf == 0.0) continue;
        for (const Posting& p : *postings) {
            double tf = static_cast<double>(p.tf);
            double contribution;
            if (config.scheme == RankingConfig::Scheme::Tfidf) {
                contribution = tf * idf;
            } else {
                double len = static_cast<double>(index.unit_length(p.unit));
                double norm = config.k1 * (1.0 - config.b + config.b * len / avg_len);
                contribution = idf * tf * (config.k1 + 1.0) / (tf + norm);
            }
            scores[p.unit] += static_cast<double>(qtf) * contribution;
        }
    }

    std::vector<ScoredUnit> ranked;
    for (std::size_t u = 0; u < scores.size(); ++u) {
        if (scores[u] > 0.0) ranked.push_back({index.unit(static_cast<int>(u)).unit_id, scores[u]});
    }
    std::sort(ranked.begin(), ranked.end(), [](const ScoredUnit& a, const ScoredUnit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.unit_id < b.unit_id;
    });
    if (ranked.size() > static_cast<std::size_t>(n)) ranked.resize(n);
    return ranked;
}

}  // namespace qaw
