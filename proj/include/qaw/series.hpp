#pragma once

#include <map>
#include <string>
#include <vector>

namespace qaw {

enum class EntityType { Person, Other };

struct SeriesQuestion {
    std::string question_id;
    std::string text;
};

// Answer to one question of a series. Empty text means the series author
// knows the question feeds the next one but the answer itself is unknown,
// which triggers the PREVIOUS_ANSWER placeholder path.
struct PreviousAnswer {
    std::string text;
    EntityType type = EntityType::Other;
};

struct QuestionSeries {
    std::string series_id;
    std::string target;
    EntityType target_type = EntityType::Other;
    std::vector<SeriesQuestion> questions;
    std::map<std::string, PreviousAnswer> previous_answers;  // keyed by the answered question's id

    const SeriesQuestion* find_question(const std::string& question_id) const {
        for (const SeriesQuestion& q : questions) {
            if (q.question_id == question_id) return &q;
        }
        return nullptr;
    }
};

// One entry of a standalone question-set file (retrieval test input).
struct QuestionRecord {
    std::string question_id;
    std::string series_id;
    std::string text;
};

}  // namespace qaw
