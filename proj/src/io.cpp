#include "qaw/io.hpp"

#include "qaw/errors.hpp"
#include "qaw/util.hpp"

#include <json.hpp>

#include <fstream>

namespace qaw {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct LineReader {
    std::filesystem::path path;
    std::ifstream in;
    std::size_t line_no = 0;

    explicit LineReader(const std::filesystem::path& p) : path(p), in(p, std::ios::binary) {
        if (!in) throw DataError("cannot open file: " + p.string());
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw DataError(path.string() + ": line " + std::to_string(line_no) + ": " + what);
    }

    bool next(json& record) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            try {
                record = json::parse(line);
            } catch (const json::exception& e) {
                fail(std::string("invalid JSON: ") + e.what());
            }
            return true;
        }
        return false;
    }
};

std::string need_string(const LineReader& reader, const json& record, const char* field) {
    if (!record.contains(field) || !record[field].is_string()) {
        reader.fail(std::string("missing string field '") + field + "'");
    }
    return record[field].get<std::string>();
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path.string());
    return out;
}

EntityType entity_from_name(const LineReader& reader, const std::string& name) {
    if (name == "Person") return EntityType::Person;
    if (name == "Other") return EntityType::Other;
    reader.fail("unknown entity type '" + name + "' (expected Person|Other)");
}

const char* entity_name(EntityType type) {
    return type == EntityType::Person ? "Person" : "Other";
}

}  // namespace

std::vector<QuestionSeries> read_series(const std::filesystem::path& path) {
    LineReader reader(path);
    std::vector<QuestionSeries> out;
    json record;
    while (reader.next(record)) {
        QuestionSeries s;
        s.series_id = need_string(reader, record, "series_id");
        s.target = need_string(reader, record, "target");
        s.target_type = entity_from_name(reader, record.value("target_type", "Other"));
        if (!record.contains("questions") || !record["questions"].is_array() ||
            record["questions"].empty()) {
            reader.fail("series " + s.series_id + " needs a non-empty questions array");
        }
        for (const json& q : record["questions"]) {
            SeriesQuestion question;
            question.question_id = need_string(reader, q, "question_id");
            question.text = need_string(reader, q, "text");
            s.questions.push_back(std::move(question));
        }
        if (record.contains("previous_answers")) {
            for (const auto& [qid, answer] : record["previous_answers"].items()) {
                PreviousAnswer pa;
                pa.text = answer.value("text", "");
                pa.type = entity_from_name(reader, answer.value("type", "Other"));
                s.previous_answers[qid] = pa;
            }
        }
        if (s.target.empty()) reader.fail("series " + s.series_id + " has an empty target");
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<GoldStandardEntry> read_gold(const std::filesystem::path& path) {
    LineReader reader(path);
    std::vector<GoldStandardEntry> out;
    json record;
    while (reader.next(record)) {
        GoldStandardEntry entry;
        entry.series_id = need_string(reader, record, "series_id");
        entry.question_id = need_string(reader, record, "question_id");
        entry.target = record.value("target", "");
        entry.target_type = record.value("target_type", "");
        entry.question = record.value("question", "");
        if (!record.contains("reformulations") || !record["reformulations"].is_array() ||
            record["reformulations"].empty()) {
            reader.fail("gold entry " + entry.series_id + "/" + entry.question_id +
                        " needs a non-empty reformulations array");
        }
        for (const json& r : record["reformulations"]) {
            entry.reformulations.push_back(r.get<std::string>());
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<QuestionRecord> read_question_set(const std::filesystem::path& path) {
    LineReader reader(path);
    std::vector<QuestionRecord> out;
    json record;
    while (reader.next(record)) {
        QuestionRecord q;
        q.question_id = need_string(reader, record, "question_id");
        q.series_id = record.value("series_id", "");
        q.text = need_string(reader, record, "text");
        out.push_back(std::move(q));
    }
    return out;
}

void write_question_set(const std::filesystem::path& path,
                        const std::vector<QuestionRecord>& questions) {
    std::ofstream out = open_out(path);
    for (const QuestionRecord& q : questions) {
        ordered_json record;
        record["question_id"] = q.question_id;
        record["series_id"] = q.series_id;
        record["text"] = q.text;
        out << record.dump() << "\n";
    }
}

std::vector<AnswerKey> read_answer_keys(const std::filesystem::path& path) {
    LineReader reader(path);
    std::vector<AnswerKey> out;
    json record;
    while (reader.next(record)) {
        AnswerKey key;
        key.question_id = need_string(reader, record, "question_id");
        if (!record.contains("patterns") || !record["patterns"].is_array() ||
            record["patterns"].empty()) {
            reader.fail("answer key " + key.question_id + " needs a non-empty patterns array");
        }
        for (const json& p : record["patterns"]) key.patterns.push_back(p.get<std::string>());
        if (record.contains("judged_docs")) {
            for (const json& d : record["judged_docs"]) {
                key.judged_docs.insert(d.get<std::string>());
            }
        }
        try {
            key.compile_patterns();
        } catch (const DataError& e) {
            reader.fail(e.what());
        }
        out.push_back(std::move(key));
    }
    return out;
}

void write_run(const std::filesystem::path& path, const RetrievalRun& run) {
    std::ofstream out = open_out(path);
    ordered_json header;
    header["format"] = "qaw-run";
    header["version"] = 1;
    header["run_id"] = run.run_id;
    header["config"] = run.config_name;
    header["level"] = level_name(run.level);
    header["cutoff"] = run.cutoff;
    out << header.dump() << "\n";
    for (const auto& [question_id, results] : run.results) {
        ordered_json record;
        record["question_id"] = question_id;
        ordered_json list = ordered_json::array();
        for (const ScoredUnit& r : results) {
            ordered_json item;
            item["unit_id"] = r.unit_id;
            item["score"] = r.score;
            list.push_back(std::move(item));
        }
        record["results"] = std::move(list);
        out << record.dump() << "\n";
    }
}

RetrievalRun read_run(const std::filesystem::path& path) {
    LineReader reader(path);
    RetrievalRun run;
    json record;
    if (!reader.next(record) || record.value("format", "") != "qaw-run") {
        throw DataError(path.string() + ": not a qaw-run file");
    }
    run.run_id = need_string(reader, record, "run_id");
    run.config_name = record.value("config", "");
    run.level = level_from_name(record.value("level", "passage"));
    run.cutoff = record.value("cutoff", 0);
    while (reader.next(record)) {
        std::string question_id = need_string(reader, record, "question_id");
        std::vector<ScoredUnit>& results = run.results[question_id];
        if (!record.contains("results") || !record["results"].is_array()) {
            reader.fail("question " + question_id + " needs a results array");
        }
        for (const json& item : record["results"]) {
            results.push_back({item.at("unit_id").get<std::string>(),
                               item.at("score").get<double>()});
        }
    }
    return run;
}

void write_judgements(const std::filesystem::path& path, const JudgedRun& judged) {
    std::ofstream out = open_out(path);
    ordered_json header;
    header["format"] = "qaw-judgements";
    header["version"] = 1;
    header["run_id"] = judged.run_id;
    header["cutoff"] = judged.cutoff;
    out << header.dump() << "\n";
    for (const auto& [question_id, judgements] : judged.per_question) {
        for (const Judgement& j : judgements) {
            ordered_json record;
            record["question_id"] = j.question_id;
            record["unit_id"] = j.unit_id;
            record["rank"] = j.rank;
            record["lenient"] = j.lenient;
            record["strict"] = j.strict;
            out << record.dump() << "\n";
        }
        if (judgements.empty()) {
            ordered_json record;
            record["question_id"] = question_id;
            record["empty"] = true;
            out << record.dump() << "\n";
        }
    }
}

JudgedRun read_judgements(const std::filesystem::path& path) {
    LineReader reader(path);
    JudgedRun judged;
    json record;
    if (!reader.next(record) || record.value("format", "") != "qaw-judgements") {
        throw DataError(path.string() + ": not a qaw-judgements file");
    }
    judged.run_id = need_string(reader, record, "run_id");
    judged.cutoff = record.value("cutoff", 0);
    while (reader.next(record)) {
        std::string question_id = need_string(reader, record, "question_id");
        if (record.value("empty", false)) {
            judged.per_question[question_id];
            continue;
        }
        Judgement j;
        j.question_id = question_id;
        j.unit_id = need_string(reader, record, "unit_id");
        j.rank = record.at("rank").get<int>();
        j.lenient = record.at("lenient").get<bool>();
        j.strict = record.at("strict").get<bool>();
        judged.per_question[question_id].push_back(std::move(j));
    }
    return judged;
}

void write_reformulations(const std::filesystem::path& path,
                          const std::vector<ReformulationRecord>& records) {
    std::ofstream out = open_out(path);
    for (const ReformulationRecord& r : records) {
        ordered_json record;
        record["series_id"] = r.series_id;
        record["question_id"] = r.question_id;
        record["variant_index"] = r.variant_index;
        record["text"] = r.text;
        record["uses_previous_answer"] = r.uses_previous_answer;
        out << record.dump() << "\n";
    }
}

std::vector<ReformulationRecord> read_reformulations(const std::filesystem::path& path) {
    LineReader reader(path);
    std::vector<ReformulationRecord> out;
    json record;
    while (reader.next(record)) {
        ReformulationRecord r;
        r.series_id = need_string(reader, record, "series_id");
        r.question_id = need_string(reader, record, "question_id");
        r.variant_index = record.value("variant_index", 0);
        r.text = need_string(reader, record, "text");
        r.uses_previous_answer = record.value("uses_previous_answer", false);
        out.push_back(std::move(r));
    }
    return out;
}

void write_dataset(const std::filesystem::path& path, const TestDataset& dataset) {
    std::ofstream out = open_out(path);
    for (const DatasetItem& item : dataset.items) {
        ordered_json record;
        record["question_id"] = item.question_id;
        record["candidate"] = item.candidate;
        out << record.dump() << "\n";
    }
}

TestDataset read_dataset(const std::filesystem::path& path) {
    LineReader reader(path);
    TestDataset dataset;
    json record;
    while (reader.next(record)) {
        DatasetItem item;
        item.question_id = need_string(reader, record, "question_id");
        item.candidate = need_string(reader, record, "candidate");
        dataset.items.push_back(std::move(item));
    }
    return dataset;
}

void write_hew(const std::filesystem::path& path, const std::vector<HewRecord>& records) {
    std::ofstream out = open_out(path);
    for (const HewRecord& r : records) {
        ordered_json record;
        record["question_id"] = r.question_id;
        record["word"] = r.word;
        record["redundancy_after"] = r.redundancy_after;
        out << record.dump() << "\n";
    }
}

std::vector<HewRecord> read_hew(const std::filesystem::path& path) {
    LineReader reader(path);
    std::vector<HewRecord> out;
    json record;
    while (reader.next(record)) {
        HewRecord r;
        r.question_id = need_string(reader, record, "question_id");
        r.word = need_string(reader, record, "word");
        r.redundancy_after = record.value("redundancy_after", 0);
        out.push_back(std::move(r));
    }
    return out;
}

void write_difficult(const std::filesystem::path& path, const DifficultSet& difficult) {
    std::ofstream out = open_out(path);
    ordered_json header;
    header["format"] = "qaw-difficult";
    header["version"] = 1;
    header["threshold"] = difficult.policy.threshold;
    header["n"] = difficult.policy.n;
    ordered_json runs = ordered_json::array();
    for (const std::string& run : difficult.policy.run_ids) runs.push_back(run);
    header["runs"] = std::move(runs);
    ordered_json modes = ordered_json::array();
    for (MatchMode mode : difficult.policy.modes) modes.push_back(mode_name(mode));
    header["modes"] = std::move(modes);
    out << header.dump() << "\n";
    for (const std::string& qid : difficult.question_ids) {
        ordered_json record;
        record["question_id"] = qid;
        out << record.dump() << "\n";
    }
}

DifficultSet read_difficult(const std::filesystem::path& path) {
    LineReader reader(path);
    DifficultSet out;
    json record;
    if (!reader.next(record) || record.value("format", "") != "qaw-difficult") {
        throw DataError(path.string() + ": not a qaw-difficult file");
    }
    out.policy.threshold = record.value("threshold", 0.0);
    out.policy.n = record.value("n", 20);
    if (record.contains("runs")) {
        for (const json& r : record["runs"]) out.policy.run_ids.push_back(r.get<std::string>());
    }
    if (record.contains("modes")) {
        for (const json& m : record["modes"]) {
            out.policy.modes.push_back(mode_from_name(m.get<std::string>()));
        }
    }
    while (reader.next(record)) {
        out.question_ids.push_back(need_string(reader, record, "question_id"));
    }
    return out;
}

}  // namespace qaw
