#include "qaw/expand.hpp"

#include "qaw/errors.hpp"
#include "qaw/util.hpp"

#include <algorithm>
#include <set>

namespace qaw {

namespace {

std::set<std::string> token_set(const std::string& text) {
    TokenStream tokens = tokenize(text);
    return {tokens.begin(), tokens.end()};
}

int strict_or_lenient_count(const Index& index, const std::string& question_id,
                            const std::vector<ScoredUnit>& results, const AnswerKey& key,
                            MatchMode mode) {
    int count = 0;
    for (const ScoredUnit& r : results) {
        const IndexUnit* unit = index.find_unit(r.unit_id);
        if (!unit) throw DataError("question " + question_id + ": unit " + r.unit_id + " not in corpus");
        bool lenient = key.matches(unit->text);
        bool positive = mode == MatchMode::Lenient
                            ? lenient
                            : lenient && key.judged_docs.count(unit->parent_doc_id) > 0;
        if (positive) ++count;
    }
    return count;
}

}  // namespace

std::vector<ExtensionCandidate> extract_candidates(const std::string& question_id,
                                                   const std::string& question_text,
                                                   const AnswerKey& key,
                                                   std::span<const IndexUnit> passages,
                                                   const StopwordList& stops) {
    std::set<std::string> question_tokens = token_set(question_text);
    std::vector<ExtensionCandidate> out;
    std::set<std::string> seen;
    for (const IndexUnit& unit : passages) {
        if (!key.matches(unit.text)) continue;
        // tokens of the matched answer strings are excluded per passage
        std::set<std::string> answer_tokens;
        for (const std::regex& re : key.compiled) {
            for (std::sregex_iterator it(unit.text.begin(), unit.text.end(), re), end;
                 it != end; ++it) {
                for (const std::string& t : tokenize(it->str())) answer_tokens.insert(t);
            }
        }
        for (const std::string& token : tokenize(unit.text)) {
            if (stops.contains(token)) continue;
            if (question_tokens.count(token)) continue;
            if (answer_tokens.count(token)) continue;
            if (!seen.insert(token).second) continue;
            out.push_back({question_id, token, unit.unit_id});
        }
    }
    return out;
}

ExtensionOutcome test_extension(const Index& index, const std::string& question_id,
                                const std::string& question_text, const std::string& word,
                                const AnswerKey& key, int n, const RankingConfig& config,
                                const StopwordList& stops, MatchMode mode) {
    if (word.empty()) throw ContractViolation("extension word must be non-empty");
    ExtensionOutcome outcome;
    outcome.candidate = {question_id, word, ""};

    std::vector<ScoredUnit> before = retrieve(index, question_text, n, config, stops);
    outcome.redundancy_before = strict_or_lenient_count(index, question_id, before, key, mode);

    std::vector<ScoredUnit> after =
        retrieve(index, question_text + " " + word, n, config, stops);
    outcome.redundancy_after = strict_or_lenient_count(index, question_id, after, key, mode);
    outcome.helpful = outcome.redundancy_after > 0;
    return outcome;
}

std::map<std::string, std::vector<ExtensionOutcome>> mine_hew(
    const Index& index, const std::vector<QuestionRecord>& questions,
    const DifficultSet& difficult, const AnswerKeyMap& keys, int n,
    const RankingConfig& config, const StopwordList& stops, int jobs, MatchMode mode) {
    std::vector<const QuestionRecord*> selected;
    for (const std::string& qid : difficult.question_ids) {
        const QuestionRecord* question = nullptr;
        for (const QuestionRecord& q : questions) {
            if (q.question_id == qid) {
                question = &q;
                break;
            }
        }
        if (!question) throw DataError("difficult question " + qid + " not in the question set");
        if (!keys.count(qid)) throw DataError("no answer key for question " + qid);
        selected.push_back(question);
    }

    std::vector<std::vector<ExtensionOutcome>> mined(selected.size());
    parallel_for(selected.size(), jobs, [&](std::size_t i) {
        const QuestionRecord& q = *selected[i];
        const AnswerKey& key = keys.at(q.question_id);
        std::vector<ExtensionCandidate> candidates =
            extract_candidates(q.question_id, q.text, key, index.units(), stops);
        for (const ExtensionCandidate& candidate : candidates) {
            ExtensionOutcome outcome = test_extension(index, q.question_id, q.text,
                                                      candidate.word, key, n, config, stops, mode);
            outcome.candidate = candidate;
            if (outcome.helpful) mined[i].push_back(std::move(outcome));
        }
    });

    std::map<std::string, std::vector<ExtensionOutcome>> out;
    for (std::size_t i = 0; i < selected.size(); ++i) {
        out[selected[i]->question_id] = std::move(mined[i]);
    }
    return out;
}

RFSelection blind_rf_terms(const Index& index, const std::string& question_id,
                           const std::string& question_text, int r, int k,
                           const RankingConfig& config, const StopwordList& stops) {
    if (r < 1) throw ContractViolation("feedback depth r must be >= 1");
    if (k < 1) throw ContractViolation("feedback term count k must be >= 1");

    RFSelection selection;
    selection.question_id = question_id;
    selection.r = r;

    std::set<std::string> question_tokens = token_set(question_text);
    std::vector<ScoredUnit> initial = retrieve(index, question_text, r, config, stops);

    std::map<std::string, int> tf;
    for (const ScoredUnit& result : initial) {
        const IndexUnit* unit = index.find_unit(result.unit_id);
        if (!unit) throw DataError("unit " + result.unit_id + " not in corpus");
        for (const std::string& token : tokenize(unit->text)) {
            if (stops.contains(token) || question_tokens.count(token)) continue;
            ++tf[token];
        }
    }

    std::vector<std::pair<std::string, int>> ranked(tf.begin(), tf.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > static_cast<std::size_t>(k)) ranked.resize(k);
    selection.terms = std::move(ranked);
    return selection;
}

std::string expanded_query(const std::string& question_text, const RFSelection& selection) {
    std::string query = question_text;
    for (const auto& [term, tf] : selection.terms) {
        query += " " + term;
    }
    return query;
}

namespace {

double strict_coverage_at(const Index& eval_index, const AnswerKeyMap& keys,
                          const std::vector<QuestionRecord>& questions,
                          const std::vector<std::vector<ScoredUnit>>& per_question_results,
                          int rank) {
    if (questions.empty()) return 0.0;
    int covered = 0;
    for (std::size_t i = 0; i < questions.size(); ++i) {
        const AnswerKey& key = keys.at(questions[i].question_id);
        int seen = 0;
        bool hit = false;
        for (const ScoredUnit& r : per_question_results[i]) {
            if (++seen > rank) break;
            const IndexUnit* unit = eval_index.find_unit(r.unit_id);
            if (!unit) throw DataError("unit " + r.unit_id + " not in corpus");
            if (key.matches(unit->text) && key.judged_docs.count(unit->parent_doc_id) > 0) {
                hit = true;
                break;
            }
        }
        if (hit) ++covered;
    }
    return static_cast<double>(covered) / static_cast<double>(questions.size());
}

}  // namespace

RfGrid rf_experiment(const std::map<IndexLevel, const Index*>& harvest_indexes,
                     const Index& eval_index, const std::vector<QuestionRecord>& questions,
                     const AnswerKeyMap& keys, const std::vector<int>& rs, int k,
                     const std::vector<int>& ranks, const RankingConfig& config,
                     const StopwordList& stops, int jobs) {
    for (const QuestionRecord& q : questions) {
        if (!keys.count(q.question_id)) {
            throw DataError("no answer key for question " + q.question_id);
        }
    }
    RfGrid grid;
    grid.ranks = ranks;
    int max_rank = ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end());
    if (max_rank < 1) throw ContractViolation("rf experiment needs at least one rank");

    // baseline: unexpanded retrieval against the evaluation index
    std::vector<std::vector<ScoredUnit>> baseline(questions.size());
    parallel_for(questions.size(), jobs, [&](std::size_t i) {
        baseline[i] = retrieve(eval_index, questions[i].text, max_rank, config, stops);
    });
    for (int rank : ranks) {
        grid.baseline_by_rank[rank] =
            strict_coverage_at(eval_index, keys, questions, baseline, rank);
    }

    for (int r : rs) {
        for (IndexLevel level : {IndexLevel::Document, IndexLevel::Passage}) {
            auto harvest = harvest_indexes.find(level);
            if (harvest == harvest_indexes.end()) {
                throw ContractViolation(std::string("no harvest index at level ") +
                                        level_name(level));
            }
            RfCell cell;
            cell.r = r;
            cell.level = level;
            std::vector<std::vector<ScoredUnit>> expanded(questions.size());
            parallel_for(questions.size(), jobs, [&](std::size_t i) {
                RFSelection terms = blind_rf_terms(*harvest->second, questions[i].question_id,
                                                   questions[i].text, r, k, config, stops);
                expanded[i] = retrieve(eval_index, expanded_query(questions[i].text, terms),
                                       max_rank, config, stops);
            });
            for (int rank : ranks) {
                cell.coverage_by_rank[rank] =
                    strict_coverage_at(eval_index, keys, questions, expanded, rank);
            }
            grid.cells.push_back(std::move(cell));
        }
    }
    return grid;
}

IntersectionStats intersection_stats(
    const std::map<std::string, std::vector<std::string>>& hew_words,
    const std::map<std::string, std::vector<std::string>>& irt_texts,
    const std::map<std::string, std::vector<std::string>>& rf_words) {
    auto same_keys = [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return false;
        auto ia = a.begin();
        auto ib = b.begin();
        for (; ia != a.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return false;
        }
        return true;
    };
    if (!same_keys(hew_words, irt_texts) || !same_keys(hew_words, rf_words)) {
        throw DataError("intersection stats need aligned question sets");
    }

    long long hew_total = 0, hew_in_irt = 0;
    long long irt_total = 0, irt_with_hew = 0;
    long long rf_total = 0, rf_in_hew = 0;

    for (const auto& [qid, hew] : hew_words) {
        const std::vector<std::string>& irt = irt_texts.at(qid);
        const std::vector<std::string>& rf = rf_words.at(qid);
        std::set<std::string> hew_set(hew.begin(), hew.end());

        std::set<std::string> irt_tokens;
        for (const std::string& text : irt) {
            for (const std::string& t : tokenize(text)) irt_tokens.insert(t);
        }

        hew_total += static_cast<long long>(hew.size());
        for (const std::string& w : hew) {
            if (irt_tokens.count(w)) ++hew_in_irt;
        }

        irt_total += static_cast<long long>(irt.size());
        for (const std::string& text : irt) {
            for (const std::string& t : tokenize(text)) {
                if (hew_set.count(t)) {
                    ++irt_with_hew;
                    break;
                }
            }
        }

        rf_total += static_cast<long long>(rf.size());
        for (const std::string& w : rf) {
            if (hew_set.count(w)) ++rf_in_hew;
        }
    }

    IntersectionStats stats;
    if (hew_total > 0) stats.hew_in_irt = 100.0 * static_cast<double>(hew_in_irt) / hew_total;
    if (irt_total > 0) stats.irt_with_hew = 100.0 * static_cast<double>(irt_with_hew) / irt_total;
    if (rf_total > 0) stats.rf_in_hew = 100.0 * static_cast<double>(rf_in_hew) / rf_total;
    return stats;
}

}  // namespace qaw
