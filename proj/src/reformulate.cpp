#include "qaw/reformulate.hpp"

#include "qaw/errors.hpp"
#include "qaw/util.hpp"

#include <algorithm>

namespace qaw {

std::vector<std::string> expand_bracket_variants(const std::string& target) {
    int depth = 0;
    std::size_t open = std::string::npos;
    std::size_t close = std::string::npos;
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (target[i] == '(') {
            if (depth == 0 && open == std::string::npos) open = i;
            ++depth;
        } else if (target[i] == ')') {
            --depth;
            if (depth < 0) throw DataError("unbalanced parentheses in target: " + target);
            if (depth == 0 && close == std::string::npos) close = i;
        }
    }
    if (depth != 0) throw DataError("unbalanced parentheses in target: " + target);
    if (open == std::string::npos) return {target};

    std::string inner = trim(target.substr(open + 1, close - open - 1));
    std::string without = target.substr(0, open) + target.substr(close + 1);
    // collapse the doubled spacing left by removing "(...)"
    std::string collapsed;
    bool prev_space = false;
    for (char c : without) {
        bool space = (c == ' ' || c == '\t');
        if (space && prev_space) continue;
        collapsed.push_back(space ? ' ' : c);
        prev_space = space;
    }
    return {target, trim(collapsed), inner};
}

namespace {

bool is_word_byte(unsigned char c) {
    if (c >= 0x80) return true;
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// Whole-word, case-insensitive replacement of any of `pronouns` by `replacement`.
std::string replace_pronouns(const std::string& text, const std::vector<std::string>& pronouns,
                             const std::string& replacement) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
            out.push_back(text[i]);
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
        std::string word = text.substr(i, j - i);
        std::string low;
        low.reserve(word.size());
        for (char c : word) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        bool hit = std::find(pronouns.begin(), pronouns.end(), low) != pronouns.end();
        out += hit ? replacement : word;
        i = j;
    }
    return out;
}

bool contains_pronoun(const std::string& text, const std::vector<std::string>& pronouns) {
    for (const std::string& token : tokenize(text)) {
        if (std::find(pronouns.begin(), pronouns.end(), token) != pronouns.end()) return true;
    }
    return false;
}

struct Referent {
    enum class Kind { None, Known, UnknownPreviousAnswer };
    Kind kind = Kind::None;
    std::string text;
};

const PreviousAnswer* preceding_answer(const QuestionSeries& ctx, std::size_t question_index) {
    if (question_index == 0) return nullptr;
    const std::string& prev_id = ctx.questions[question_index - 1].question_id;
    auto it = ctx.previous_answers.find(prev_id);
    return it == ctx.previous_answers.end() ? nullptr : &it->second;
}

// Guideline for "it": the preceding question's answer when available,
// otherwise the target.
Referent it_referent(const QuestionSeries& ctx, std::size_t question_index) {
    const PreviousAnswer* prev = preceding_answer(ctx, question_index);
    if (prev && !prev->text.empty()) return {Referent::Kind::Known, prev->text};
    return {Referent::Kind::Known, ctx.target};
}

// Guidelines for he/she and the possessives: a Person previous answer takes
// priority over a Person target.
Referent person_referent(const QuestionSeries& ctx, std::size_t question_index) {
    const PreviousAnswer* prev = preceding_answer(ctx, question_index);
    if (prev && prev->type == EntityType::Person) {
        if (!prev->text.empty()) return {Referent::Kind::Known, prev->text};
        return {Referent::Kind::UnknownPreviousAnswer, ""};
    }
    if (ctx.target_type == EntityType::Person) return {Referent::Kind::Known, ctx.target};
    return {};
}

void append_unique(std::vector<std::string>& list, const std::string& value) {
    if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
}

std::vector<std::string> apply_rule(const std::vector<std::string>& variants,
                                    const std::vector<std::string>& pronouns,
                                    const Referent& referent, bool possessive,
                                    const std::string* prev_reformulation) {
    std::vector<std::string> out;
    const std::string suffix = possessive ? "'s" : "";
    for (const std::string& text : variants) {
        if (referent.kind == Referent::Kind::None || !contains_pronoun(text, pronouns)) {
            append_unique(out, text);
            continue;
        }
        if (referent.kind == Referent::Kind::Known) {
            append_unique(out, replace_pronouns(text, pronouns, referent.text + suffix));
            continue;
        }
        append_unique(out, replace_pronouns(text, pronouns,
                                            std::string(kPreviousAnswerPlaceholder) + suffix));
        if (prev_reformulation && !prev_reformulation->empty()) {
            append_unique(out, replace_pronouns(text, pronouns, *prev_reformulation + suffix));
        }
    }
    return out;
}

std::vector<std::string> resolve_pronouns_at(const std::string& question, const QuestionSeries& ctx,
                                             std::size_t question_index,
                                             const std::string* prev_reformulation) {
    static const std::vector<std::string> kIt = {"it"};
    static const std::vector<std::string> kSubject = {"he", "she"};
    static const std::vector<std::string> kPossessive = {"his", "her", "hers", "their"};

    std::vector<std::string> variants = {question};
    variants = apply_rule(variants, kIt, it_referent(ctx, question_index), false, prev_reformulation);
    Referent person = person_referent(ctx, question_index);
    variants = apply_rule(variants, kSubject, person, false, prev_reformulation);
    variants = apply_rule(variants, kPossessive, person, true, prev_reformulation);
    return variants;
}

std::size_t question_index_of(const QuestionSeries& ctx, const std::string& question_id) {
    for (std::size_t i = 0; i < ctx.questions.size(); ++i) {
        if (ctx.questions[i].question_id == question_id) return i;
    }
    throw ContractViolation("question " + question_id + " not in series " + ctx.series_id);
}

// Per-question variant lists for questions [0, upto]; each question's first
// variant feeds the next one's inlined-reformulation path.
std::vector<std::vector<std::string>> reformulate_texts(const QuestionSeries& ctx,
                                                        const StopwordList& stops,
                                                        std::size_t upto) {
    std::vector<std::string> bracket_variants = expand_bracket_variants(ctx.target);
    std::vector<std::vector<std::string>> per_question;
    std::string prev_first;
    for (std::size_t i = 0; i <= upto && i < ctx.questions.size(); ++i) {
        const std::string* prev = per_question.empty() ? nullptr : &prev_first;
        std::vector<std::string> resolved =
            resolve_pronouns_at(ctx.questions[i].text, ctx, i, prev);
        std::vector<std::string> variants;
        for (const std::string& text : resolved) {
            for (const std::string& bracket : bracket_variants) {
                append_unique(variants, substitute_target(text, bracket, stops));
            }
        }
        prev_first = variants.front();
        per_question.push_back(std::move(variants));
    }
    return per_question;
}

}  // namespace

std::string substitute_target(const std::string& question, const std::string& target,
                              const StopwordList& stops) {
    std::vector<TokenSpan> spans = tokenize_spans(question);
    TokenStream target_tokens = strip_stopwords(tokenize(target), stops);
    if (spans.empty() || target_tokens.empty()) return question;

    std::vector<bool> is_stop(spans.size());
    for (std::size_t i = 0; i < spans.size(); ++i) is_stop[i] = stops.contains(spans[i].token);

    std::size_t best_begin = 0;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < spans.size(); ++i) {
        if (is_stop[i]) continue;
        for (std::size_t j = spans.size(); j > i; --j) {
            if (is_stop[j - 1]) continue;
            if (j - i <= best_len) break;
            TokenStream stripped;
            for (std::size_t t = i; t < j; ++t) {
                if (!is_stop[t]) stripped.push_back(spans[t].token);
            }
            bool match = false;
            if (stripped.size() <= target_tokens.size()) {
                for (std::size_t a = 0; a + stripped.size() <= target_tokens.size(); ++a) {
                    if (std::equal(stripped.begin(), stripped.end(), target_tokens.begin() + a)) {
                        match = true;
                        break;
                    }
                }
            }
            if (match) {
                best_begin = i;
                best_len = j - i;
                break;  // longest for this start; longer overall spans only at smaller i
            }
        }
    }
    if (best_len == 0) return question;

    std::size_t char_begin = spans[best_begin].begin;
    std::size_t char_end = spans[best_begin + best_len - 1].end;
    return question.substr(0, char_begin) + target + question.substr(char_end);
}

std::vector<std::string> resolve_pronouns(const std::string& question, const QuestionSeries& ctx,
                                          const std::string& question_id, const StopwordList& stops) {
    std::size_t index = question_index_of(ctx, question_id);
    if (index == 0) return resolve_pronouns_at(question, ctx, index, nullptr);
    std::vector<std::vector<std::string>> earlier = reformulate_texts(ctx, stops, index - 1);
    const std::string& prev_first = earlier.back().front();
    return resolve_pronouns_at(question, ctx, index, &prev_first);
}

std::vector<Reformulation> reformulate(const QuestionSeries& ctx, const StopwordList& stops) {
    if (ctx.questions.empty()) return {};
    std::vector<std::vector<std::string>> texts =
        reformulate_texts(ctx, stops, ctx.questions.size() - 1);
    std::vector<Reformulation> out;
    for (std::size_t i = 0; i < ctx.questions.size(); ++i) {
        for (const std::string& text : texts[i]) {
            bool uses_placeholder = text.find(kPreviousAnswerPlaceholder) != std::string::npos;
            out.push_back({ctx.questions[i].question_id, text, uses_placeholder});
        }
    }
    return out;
}

std::vector<Reformulation> baseline_append_target(const QuestionSeries& ctx) {
    std::vector<Reformulation> out;
    out.reserve(ctx.questions.size());
    for (const SeriesQuestion& q : ctx.questions) {
        out.push_back({q.question_id, q.text + " " + ctx.target, false});
    }
    return out;
}

}  // namespace qaw
