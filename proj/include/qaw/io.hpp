#pragma once

#include "qaw/eval.hpp"
#include "qaw/reformulate.hpp"
#include "qaw/series.hpp"
#include "qaw/sim.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qaw {

// Line-delimited JSON record files. Readers report the file and line of any
// malformed record; writers emit fields in a fixed order so identical inputs
// produce byte-identical files.

std::vector<QuestionSeries> read_series(const std::filesystem::path& path);

std::vector<GoldStandardEntry> read_gold(const std::filesystem::path& path);

std::vector<QuestionRecord> read_question_set(const std::filesystem::path& path);
void write_question_set(const std::filesystem::path& path,
                        const std::vector<QuestionRecord>& questions);

// Patterns are compiled on load; an uncompilable pattern is a data error.
std::vector<AnswerKey> read_answer_keys(const std::filesystem::path& path);

void write_run(const std::filesystem::path& path, const RetrievalRun& run);
RetrievalRun read_run(const std::filesystem::path& path);

void write_judgements(const std::filesystem::path& path, const JudgedRun& judged);
JudgedRun read_judgements(const std::filesystem::path& path);

struct ReformulationRecord {
    std::string series_id;
    std::string question_id;
    int variant_index = 0;
    std::string text;
    bool uses_previous_answer = false;
};

void write_reformulations(const std::filesystem::path& path,
                          const std::vector<ReformulationRecord>& records);
std::vector<ReformulationRecord> read_reformulations(const std::filesystem::path& path);

void write_dataset(const std::filesystem::path& path, const TestDataset& dataset);
TestDataset read_dataset(const std::filesystem::path& path);

struct HewRecord {
    std::string question_id;
    std::string word;
    int redundancy_after = 0;
};

void write_hew(const std::filesystem::path& path, const std::vector<HewRecord>& records);
std::vector<HewRecord> read_hew(const std::filesystem::path& path);

void write_difficult(const std::filesystem::path& path, const DifficultSet& difficult);
DifficultSet read_difficult(const std::filesystem::path& path);

}  // namespace qaw
