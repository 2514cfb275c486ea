#pragma once

#include "qaw/corpus.hpp"
#include "qaw/eval.hpp"
#include "qaw/index.hpp"
#include "qaw/sim.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qaw {

// Workbench configuration: "key = value" lines, '#' comments, unknown keys
// rejected. Relative paths resolve against the config file's directory.
struct WorkbenchConfig {
    std::filesystem::path config_dir;

    std::filesystem::path corpus;
    CorpusFormat corpus_format = CorpusFormat::TrecSgml;
    std::filesystem::path stopwords;
    std::filesystem::path questions;
    std::filesystem::path answer_keys;
    std::filesystem::path series;
    std::filesystem::path gold;
    std::filesystem::path output_dir = "out";

    std::vector<IndexLevel> levels = {IndexLevel::Document, IndexLevel::Passage};
    std::vector<std::string> rankers = {"tfidf", "bm25"};
    double bm25_k1 = 1.2;
    double bm25_b = 0.75;

    int n = 20;
    std::vector<int> ranks = {5, 10, 20, 50};
    MetricKind metric = MetricKind::Jaccard;
    GramWeights weights;

    double threshold = 0.0;
    std::vector<MatchMode> modes = {MatchMode::Strict, MatchMode::Lenient};
    std::vector<int> rs = {5, 50};
    int k = 5;
    int jobs = 1;

    static WorkbenchConfig load(const std::filesystem::path& path);

    // Flag override: same keys and value syntax as the file.
    void set(const std::string& key, const std::string& value);

    // Path existence for the inputs a subcommand is about to read.
    void require_paths(const std::vector<std::string>& keys) const;

    RankingConfig ranking(const std::string& name) const;
    std::vector<RankingConfig> ranking_configs() const;
};

}  // namespace qaw
