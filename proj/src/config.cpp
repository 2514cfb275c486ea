#include "qaw/config.hpp"

#include "qaw/errors.hpp"
#include "qaw/util.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

namespace qaw {

namespace {

const std::set<std::string> kPathKeys = {"corpus", "stopwords", "questions",
                                         "answer_keys", "series", "gold"};

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "': not an integer: " + value);
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "': not a number: " + value);
    }
}

std::vector<std::string> parse_list(const std::string& value) {
    std::vector<std::string> out;
    for (const std::string& part : split(value, ',')) {
        std::string item = trim(part);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    for (const std::string& item : parse_list(value)) out.push_back(parse_int(key, item));
    if (out.empty()) throw UsageError("config key '" + key + "': empty list");
    return out;
}

}  // namespace

void WorkbenchConfig::set(const std::string& key, const std::string& value) {
    if (key == "corpus") corpus = value;
    else if (key == "corpus_format") corpus_format = corpus_format_from_name(value);
    else if (key == "stopwords") stopwords = value;
    else if (key == "questions") questions = value;
    else if (key == "answer_keys") answer_keys = value;
    else if (key == "series") series = value;
    else if (key == "gold") gold = value;
    else if (key == "output_dir") output_dir = value;
    else if (key == "levels") {
        levels.clear();
        for (const std::string& item : parse_list(value)) levels.push_back(level_from_name(item));
        if (levels.empty()) throw UsageError("config key 'levels': empty list");
    } else if (key == "rankers") {
        rankers = parse_list(value);
        if (rankers.empty()) throw UsageError("config key 'rankers': empty list");
        for (const std::string& r : rankers) ranking(r);  // validates the names
    } else if (key == "bm25_k1") {
        bm25_k1 = parse_double(key, value);
        if (bm25_k1 <= 0) throw UsageError("bm25_k1 must be > 0");
    } else if (key == "bm25_b") {
        bm25_b = parse_double(key, value);
        if (bm25_b < 0 || bm25_b > 1) throw UsageError("bm25_b must be in [0, 1]");
    } else if (key == "n") {
        n = parse_int(key, value);
        if (n < 1) throw UsageError("n must be >= 1");
    } else if (key == "ranks") {
        ranks = parse_int_list(key, value);
        for (int r : ranks) {
            if (r < 1) throw UsageError("ranks must be >= 1");
        }
    } else if (key == "metric") {
        metric = metric_from_name(value);
    } else if (key == "weights") {
        std::vector<std::string> parts = parse_list(value);
        if (parts.size() != 3) throw UsageError("weights must be three comma-separated numbers");
        weights.w1 = parse_double(key, parts[0]);
        weights.w2 = parse_double(key, parts[1]);
        weights.w3 = parse_double(key, parts[2]);
        if (weights.w1 < 0 || weights.w2 < 0 || weights.w3 < 0 ||
            weights.w1 + weights.w2 + weights.w3 <= 0) {
            throw UsageError("weights must be non-negative with a positive sum");
        }
    } else if (key == "threshold") {
        threshold = parse_double(key, value);
        if (threshold < 0) throw UsageError("threshold must be >= 0");
    } else if (key == "modes") {
        modes.clear();
        for (const std::string& item : parse_list(value)) modes.push_back(mode_from_name(item));
        if (modes.empty()) throw UsageError("config key 'modes': empty list");
    } else if (key == "r") {
        rs = parse_int_list(key, value);
        for (int r : rs) {
            if (r < 1) throw UsageError("r must be >= 1");
        }
    } else if (key == "k") {
        k = parse_int(key, value);
        if (k < 1) throw UsageError("k must be >= 1");
    } else if (key == "jobs") {
        jobs = parse_int(key, value);
        if (jobs < 1) throw UsageError("jobs must be >= 1");
    } else {
        throw UsageError("unknown config key: " + key);
    }
}

WorkbenchConfig WorkbenchConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path.string());

    WorkbenchConfig config;
    config.config_dir = path.has_parent_path() ? path.parent_path() : ".";

    std::set<std::string> set_path_keys;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path.string() + ": line " + std::to_string(line_no) +
                             ": expected 'key = value'");
        }
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        try {
            config.set(key, value);
        } catch (const UsageError& e) {
            throw UsageError(path.string() + ": line " + std::to_string(line_no) + ": " + e.what());
        }
        if (kPathKeys.count(key)) set_path_keys.insert(key);
    }

    // resolve relative paths against the config directory
    auto resolve = [&](std::filesystem::path& p) {
        if (!p.empty() && p.is_relative()) p = config.config_dir / p;
    };
    resolve(config.corpus);
    resolve(config.stopwords);
    resolve(config.questions);
    resolve(config.answer_keys);
    resolve(config.series);
    resolve(config.gold);
    resolve(config.output_dir);

    if (const char* env_out = std::getenv("QAW_OUTPUT_DIR")) {
        config.output_dir = env_out;
    }

    config.require_paths({set_path_keys.begin(), set_path_keys.end()});
    return config;
}

void WorkbenchConfig::require_paths(const std::vector<std::string>& keys) const {
    for (const std::string& key : keys) {
        const std::filesystem::path* p = nullptr;
        if (key == "corpus") p = &corpus;
        else if (key == "stopwords") p = &stopwords;
        else if (key == "questions") p = &questions;
        else if (key == "answer_keys") p = &answer_keys;
        else if (key == "series") p = &series;
        else if (key == "gold") p = &gold;
        else throw UsageError("unknown path key: " + key);
        if (p->empty()) throw UsageError("config key '" + key + "' is required but not set");
        if (!std::filesystem::exists(*p)) {
            throw UsageError("config key '" + key + "': path does not exist: " + p->string());
        }
    }
}

RankingConfig WorkbenchConfig::ranking(const std::string& name) const {
    if (name == "tfidf") return tfidf_config();
    if (name == "bm25") return bm25_config(bm25_k1, bm25_b);
    throw UsageError("unknown ranker: " + name + " (expected tfidf|bm25)");
}

std::vector<RankingConfig> WorkbenchConfig::ranking_configs() const {
    std::vector<RankingConfig> out;
    out.reserve(rankers.size());
    for (const std::string& name : rankers) out.push_back(ranking(name));
    return out;
}

}  // namespace qaw
