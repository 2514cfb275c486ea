#pragma once

#include "qaw/series.hpp"
#include "qaw/text.hpp"

#include <string>
#include <vector>

namespace qaw {

// Literal placeholder standing for the unknown answer to the preceding question.
inline constexpr const char* kPreviousAnswerPlaceholder = "PREVIOUS_ANSWER";

struct Reformulation {
    std::string question_id;
    std::string text;
    bool uses_previous_answer = false;
};

// "Nirvana (band)" -> {"Nirvana (band)", "Nirvana", "band"}; targets without
// brackets pass through unchanged. Unbalanced parentheses are a data error.
std::vector<std::string> expand_bracket_variants(const std::string& target);

// Finds the longest question token span, bounded by non-stopwords, whose
// stopword-stripped tokens form a contiguous subsequence of the target's
// stopword-stripped tokens, and replaces that span (interior stopwords
// included) with the full target. Leftmost span wins ties; no match leaves
// the question unchanged.
std::string substitute_target(const std::string& question, const std::string& target,
                              const StopwordList& stops);

// Applies the pronoun rules in order: "it" resolves to the preceding
// question's answer when available, otherwise the target; "he"/"she" resolve
// to a Person previous answer, otherwise a Person target; possessives
// ("his"/"her"/"hers"/"their") resolve the same way with "'s" appended.
// An unknown previous answer yields one variant with the PREVIOUS_ANSWER
// placeholder and one with the preceding question's reformulation inlined.
std::vector<std::string> resolve_pronouns(const std::string& question, const QuestionSeries& ctx,
                                          const std::string& question_id, const StopwordList& stops);

// Per question: pronoun resolution, then target substitution against each
// bracket variant, deduplicated preserving first-occurrence order.
std::vector<Reformulation> reformulate(const QuestionSeries& ctx, const StopwordList& stops);

// Naive baseline: each question's text + ' ' + full target.
std::vector<Reformulation> baseline_append_target(const QuestionSeries& ctx);

}  // namespace qaw
