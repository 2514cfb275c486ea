#include "qaw/expand.hpp"

#include "qaw/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qaw;

namespace {

AnswerKey key_for(const std::string& qid, const std::string& pattern,
                  std::set<std::string> judged = {}) {
    AnswerKey key;
    key.question_id = qid;
    key.patterns = {pattern};
    key.judged_docs = std::move(judged);
    key.compile_patterns();
    return key;
}

// One answer-bearing passage only "exposition" can pull back into the top
// rank: "grand" also occurs in heavier decoy passages.
Index planted_corpus() {
    return Index::build({{"a1#0", "the grand exposition of 1889", "a1"},
                         {"n1#0", "grand grand grand bazaar", "n1"},
                         {"n2#0", "another grand grand grand market", "n2"}},
                        IndexLevel::Passage);
}

}  // namespace

TEST_CASE("candidate extraction subtracts stopwords, question and answer tokens") {
    StopwordList stops{"the", "in", "opened"};
    AnswerKey key = key_for("q1", "1889");
    std::vector<IndexUnit> passages{
        {"d1#0", "the tower opened in 1889 during the exposition", "d1"}};

    std::vector<ExtensionCandidate> candidates = extract_candidates(
        "q1", "when did the eiffel tower open", key, passages, stops);
    REQUIRE(candidates.size() == 2);
    CHECK(candidates[0].word == "during");
    CHECK(candidates[1].word == "exposition");
    CHECK(candidates[0].source_unit_id == "d1#0");
}

TEST_CASE("questions without answer-bearing passages have no candidates") {
    StopwordList stops;
    AnswerKey key = key_for("q1", "zzz-never-matches");
    std::vector<IndexUnit> passages{{"d1#0", "some text", "d1"}};
    CHECK(extract_candidates("q1", "any question", key, passages, stops).empty());
}

TEST_CASE("candidates never contain question tokens") {
    StopwordList stops;
    AnswerKey key = key_for("q1", "1889");
    std::vector<IndexUnit> passages{{"d1#0", "tower tower 1889 extra", "d1"}};
    std::vector<ExtensionCandidate> candidates =
        extract_candidates("q1", "the tower", key, passages, stops);
    for (const ExtensionCandidate& c : candidates) {
        CHECK(c.word != "tower");
        CHECK(c.word != "the");
        CHECK(!stops.contains(c.word));
    }
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].word == "extra");
}

TEST_CASE("extension testing separates helpful from unhelpful words") {
    StopwordList stops{"the", "of", "did", "when", "open"};
    Index index = planted_corpus();
    AnswerKey key = key_for("q1", "1889", {"a1"});
    RankingConfig config = tfidf_config();
    const std::string question = "when did the eiffel tower open";

    // base question shares no indexed token: redundancy 0, the difficult case
    ExtensionOutcome exposition =
        test_extension(index, "q1", question, "exposition", key, 1, config, stops);
    CHECK(exposition.redundancy_before == 0);
    CHECK(exposition.redundancy_after == 1);
    CHECK(exposition.helpful);

    // "grand" drags in the heavier decoys first at n=1
    ExtensionOutcome grand = test_extension(index, "q1", question, "grand", key, 1, config, stops);
    CHECK(grand.redundancy_after == 0);
    CHECK(!grand.helpful);

    // a word absent from the corpus leaves the empty ranking unchanged
    ExtensionOutcome absent = test_extension(index, "q1", question, "zzz", key, 1, config, stops);
    CHECK(absent.redundancy_before == 0);
    CHECK(absent.redundancy_after == 0);
    CHECK(!absent.helpful);

    // question reduced to stopwords plus the word still works
    ExtensionOutcome degenerate =
        test_extension(index, "q1", "when did the", "exposition", key, 1, config, stops);
    CHECK(degenerate.redundancy_after == 1);

    CHECK_THROWS_AS(test_extension(index, "q1", question, "", key, 1, config, stops),
                    ContractViolation);
}

TEST_CASE("hew mining returns exactly the planted helpful word") {
    StopwordList stops{"the", "of", "did", "when", "open", "another"};
    Index index = planted_corpus();
    AnswerKeyMap keys = key_map({key_for("q1", "1889", {"a1"})});
    std::vector<QuestionRecord> questions{{"q1", "s1", "when did the eiffel tower open"}};
    DifficultSet difficult;
    difficult.question_ids = {"q1"};

    auto mined = mine_hew(index, questions, difficult, keys, 1, tfidf_config(), stops);
    REQUIRE(mined.count("q1"));
    REQUIRE(mined.at("q1").size() == 1);
    CHECK(mined.at("q1")[0].candidate.word == "exposition");
    CHECK(mined.at("q1")[0].helpful);

    // HEW is a subset of the candidate set
    std::vector<ExtensionCandidate> candidates = extract_candidates(
        "q1", questions[0].text, keys.at("q1"), index.units(), stops);
    for (const ExtensionOutcome& outcome : mined.at("q1")) {
        bool found = std::any_of(candidates.begin(), candidates.end(),
                                 [&](const ExtensionCandidate& c) {
                                     return c.word == outcome.candidate.word;
                                 });
        CHECK(found);
    }

    DifficultSet unknown;
    unknown.question_ids = {"q404"};
    CHECK_THROWS_AS(mine_hew(index, questions, unknown, keys, 1, tfidf_config(), stops),
                    DataError);
}

TEST_CASE("blind rf ranks harvested terms by aggregate tf") {
    StopwordList stops;
    Index index = Index::build({{"u1", "x x y", "u1"}}, IndexLevel::Passage);

    RFSelection selection = blind_rf_terms(index, "q1", "query terms", 1, 5, tfidf_config(), stops);
    CHECK(selection.terms.empty());  // nothing shares a token with the question

    Index index2 = Index::build({{"u1", "q x x y", "u1"}}, IndexLevel::Passage);
    RFSelection sel2 = blind_rf_terms(index2, "q1", "q", 1, 5, tfidf_config(), stops);
    REQUIRE(sel2.terms.size() == 2);
    CHECK(sel2.terms[0] == std::pair<std::string, int>{"x", 2});
    CHECK(sel2.terms[1] == std::pair<std::string, int>{"y", 1});

    // the question token itself is never selected
    for (const auto& [term, tf] : sel2.terms) CHECK(term != "q");

    // k caps the selection; ties break lexicographically
    Index index3 = Index::build({{"u1", "q b b a a c", "u1"}}, IndexLevel::Passage);
    RFSelection sel3 = blind_rf_terms(index3, "q1", "q", 1, 2, tfidf_config(), stops);
    REQUIRE(sel3.terms.size() == 2);
    CHECK(sel3.terms[0].first == "a");
    CHECK(sel3.terms[1].first == "b");

    CHECK_THROWS_AS(blind_rf_terms(index, "q1", "q", 0, 5, tfidf_config(), stops),
                    ContractViolation);
    CHECK_THROWS_AS(blind_rf_terms(index, "q1", "q", 1, 0, tfidf_config(), stops),
                    ContractViolation);
}

TEST_CASE("expanded queries append the selected terms once each") {
    RFSelection selection;
    selection.terms = {{"alpha", 3}, {"beta", 1}};
    CHECK(expanded_query("base question", selection) == "base question alpha beta");
}

TEST_CASE("rf experiment emits the full grid shape with a baseline column") {
    StopwordList stops{"the"};
    std::vector<IndexUnit> passages{{"a1#0", "marker answer 42 here", "a1"},
                                    {"n1#0", "noise noise noise marker", "n1"},
                                    {"n2#0", "noise noise filler marker", "n2"}};
    Index para = Index::build(passages, IndexLevel::Passage);
    Index doc = Index::build(
        {{"a1", "marker answer 42 here", "a1"},
         {"n1", "noise noise noise marker", "n1"},
         {"n2", "noise noise filler marker", "n2"}},
        IndexLevel::Document);
    AnswerKeyMap keys = key_map({key_for("q1", "42", {"a1"})});
    std::vector<QuestionRecord> questions{{"q1", "s1", "the marker"}};

    std::map<IndexLevel, const Index*> harvest{{IndexLevel::Document, &doc},
                                               {IndexLevel::Passage, &para}};
    RfGrid grid = rf_experiment(harvest, para, questions, keys, {1, 2}, 2, {1, 2, 3},
                                bm25_config(), stops);

    REQUIRE(grid.cells.size() == 4);
    CHECK(grid.cells[0].r == 1);
    CHECK(grid.cells[0].level == IndexLevel::Document);
    CHECK(grid.cells[1].level == IndexLevel::Passage);
    CHECK(grid.cells[2].r == 2);
    for (const RfCell& cell : grid.cells) {
        REQUIRE(cell.coverage_by_rank.size() == 3);
        for (const auto& [rank, value] : cell.coverage_by_rank) {
            CHECK(value >= 0.0);
            CHECK(value <= 1.0);
        }
    }
    REQUIRE(grid.baseline_by_rank.size() == 3);

    // baseline is independent of r and k
    RfGrid grid2 = rf_experiment(harvest, para, questions, keys, {2}, 1, {1, 2, 3},
                                 bm25_config(), stops);
    CHECK(grid2.baseline_by_rank == grid.baseline_by_rank);
}

TEST_CASE("intersection stats match the hand-computed single-question example") {
    std::map<std::string, std::vector<std::string>> hew{{"q1", {"a"}}};
    std::map<std::string, std::vector<std::string>> irt{{"q1", {"a b"}}};
    std::map<std::string, std::vector<std::string>> rf{{"q1", {"a", "c"}}};

    IntersectionStats stats = intersection_stats(hew, irt, rf);
    CHECK(stats.hew_in_irt == 100.0);
    CHECK(stats.irt_with_hew == 100.0);
    CHECK(stats.rf_in_hew == 50.0);
}

TEST_CASE("empty pools render zero percentages") {
    std::map<std::string, std::vector<std::string>> empty{{"q1", {}}};
    IntersectionStats stats = intersection_stats(empty, empty, empty);
    CHECK(stats.hew_in_irt == 0.0);
    CHECK(stats.irt_with_hew == 0.0);
    CHECK(stats.rf_in_hew == 0.0);
}

TEST_CASE("misaligned question sets are a data error") {
    std::map<std::string, std::vector<std::string>> a{{"q1", {}}};
    std::map<std::string, std::vector<std::string>> b{{"q2", {}}};
    CHECK_THROWS_AS(intersection_stats(a, b, a), DataError);
}
