#include "qaw/eval.hpp"

#include "qaw/errors.hpp"
#include "qaw/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace qaw;

namespace {

Index tower_corpus() {
    return Index::build({{"d1#0", "the tower stands 325m tall", "d1"},
                         {"d2#0", "a different passage about rivers", "d2"},
                         {"d3#0", "the tower is 325 m tall says this one", "d3"}},
                        IndexLevel::Passage);
}

AnswerKey tower_key() {
    AnswerKey key;
    key.question_id = "q1";
    key.patterns = {R"(325\s?m)"};
    key.judged_docs = {"d1"};
    key.compile_patterns();
    return key;
}

RetrievalRun run_with(const std::string& qid, std::vector<ScoredUnit> results, int cutoff = 20) {
    RetrievalRun run;
    run.run_id = "test";
    run.config_name = "tfidf";
    run.level = IndexLevel::Passage;
    run.cutoff = cutoff;
    run.results[qid] = std::move(results);
    return run;
}

}  // namespace

TEST_CASE("answer patterns compile or fail loudly") {
    AnswerKey bad;
    bad.question_id = "q1";
    bad.patterns = {"("};
    CHECK_THROWS_AS(bad.compile_patterns(), DataError);
}

TEST_CASE("judging separates lenient and strict matches") {
    Index corpus = tower_corpus();
    AnswerKeyMap keys = key_map({tower_key()});

    RetrievalRun run = run_with("q1", {{"d1#0", 2.0}, {"d3#0", 1.5}, {"d2#0", 1.0}});
    JudgedRun judged = judge(run, keys, corpus);
    const std::vector<Judgement>& j = judged.per_question.at("q1");
    REQUIRE(j.size() == 3);

    // "stands 325m tall" matches and d1 is judged answer-bearing
    CHECK(j[0].lenient);
    CHECK(j[0].strict);
    // "325 m" matches the pattern but d3 is not judged
    CHECK(j[1].lenient);
    CHECK(!j[1].strict);
    // no pattern match at all
    CHECK(!j[2].lenient);
    CHECK(!j[2].strict);

    for (const Judgement& row : j) {
        if (row.strict) CHECK(row.lenient);
    }
}

TEST_CASE("judging is deterministic and errors on missing inputs") {
    Index corpus = tower_corpus();
    AnswerKeyMap keys = key_map({tower_key()});
    RetrievalRun run = run_with("q1", {{"d1#0", 1.0}});

    JudgedRun a = judge(run, keys, corpus);
    JudgedRun b = judge(run, keys, corpus);
    CHECK(a.per_question.at("q1").size() == b.per_question.at("q1").size());
    CHECK(a.per_question.at("q1")[0].strict == b.per_question.at("q1")[0].strict);

    RetrievalRun unknown_unit = run_with("q1", {{"nope#0", 1.0}});
    CHECK_THROWS_WITH_AS(judge(unknown_unit, keys, corpus), doctest::Contains("nope#0"), DataError);

    RetrievalRun unknown_question = run_with("q404", {{"d1#0", 1.0}});
    CHECK_THROWS_WITH_AS(judge(unknown_question, keys, corpus), doctest::Contains("q404"),
                         DataError);
}

namespace {

// four questions, three of which have an answer-bearing unit in the top 20
JudgedRun four_question_run() {
    JudgedRun judged;
    judged.run_id = "fixture";
    judged.cutoff = 20;
    judged.per_question["q1"] = {{"q1", "u1", 1, true, true}, {"q1", "u2", 2, true, false}};
    judged.per_question["q2"] = {{"q2", "u3", 1, true, true}};
    judged.per_question["q3"] = {{"q3", "u4", 1, false, false}, {"q3", "u5", 2, true, true}};
    judged.per_question["q4"] = {{"q4", "u6", 1, false, false}};
    return judged;
}

}  // namespace

TEST_CASE("coverage counts questions with a positive judgement in the top n") {
    JudgedRun judged = four_question_run();
    CHECK(coverage(judged, 20, MatchMode::Strict) == 0.75);
    CHECK(coverage(judged, 20, MatchMode::Lenient) == 0.75);
    CHECK(coverage(judged, 1, MatchMode::Strict) == 0.5);
    CHECK_THROWS_AS(coverage(judged, 21, MatchMode::Strict), ContractViolation);

    JudgedRun empty;
    empty.run_id = "empty";
    empty.cutoff = 20;
    empty.per_question["q1"] = {};
    CHECK(coverage(empty, 20, MatchMode::Strict) == 0.0);
}

TEST_CASE("redundancy counts positive judgements per question") {
    JudgedRun judged = four_question_run();
    RedundancyReport lenient = redundancy(judged, 20, MatchMode::Lenient);
    CHECK(lenient.per_question.at("q1") == 2);
    CHECK(lenient.per_question.at("q4") == 0);
    CHECK(lenient.macro_mean == doctest::Approx((2 + 1 + 1 + 0) / 4.0));

    RedundancyReport strict = redundancy(judged, 20, MatchMode::Strict);
    CHECK(strict.per_question.at("q1") == 1);

    // redundancy > 0 exactly when the question counts as covered
    for (const auto& [qid, count] : strict.per_question) {
        JudgedRun solo;
        solo.run_id = "solo";
        solo.cutoff = 20;
        solo.per_question[qid] = judged.per_question.at(qid);
        CHECK((count > 0) == (coverage(solo, 20, MatchMode::Strict) == 1.0));
    }
}

TEST_CASE("mean redundancy averages the selected reports") {
    RedundancyReport a;
    a.run_id = "r1";
    a.n = 20;
    a.mode = MatchMode::Strict;
    a.per_question = {{"q1", 2}};
    RedundancyReport b = a;
    b.run_id = "r2";
    b.per_question = {{"q1", 0}};

    CHECK(mean_redundancy("q1", {a, b}) == 1.0);
    CHECK(mean_redundancy("q1", {a}) == 2.0);
    CHECK(mean_redundancy("q1", {b, b}) == 0.0);
    CHECK_THROWS_AS(mean_redundancy("q1", {}), ContractViolation);
}

TEST_CASE("difficult questions are those with mean redundancy at or below threshold") {
    RedundancyReport strict;
    strict.run_id = "r1";
    strict.n = 20;
    strict.mode = MatchMode::Strict;
    strict.per_question = {{"q1", 0}, {"q2", 1}, {"q3", 0}};
    RedundancyReport lenient = strict;
    lenient.mode = MatchMode::Lenient;
    lenient.per_question = {{"q1", 0}, {"q2", 2}, {"q3", 1}};

    DifficultPolicy both;
    both.threshold = 0.0;
    both.n = 20;
    DifficultSet with_both = find_difficult({strict, lenient}, both);
    CHECK(with_both.question_ids == std::vector<std::string>{"q1"});

    DifficultPolicy strict_only = both;
    strict_only.modes = {MatchMode::Strict};
    DifficultSet with_strict = find_difficult({strict, lenient}, strict_only);
    CHECK(with_strict.question_ids == std::vector<std::string>{"q1", "q3"});

    // restricting to strict-only can only grow the difficult set
    for (const std::string& qid : with_both.question_ids) {
        CHECK(std::find(with_strict.question_ids.begin(), with_strict.question_ids.end(), qid) !=
              with_strict.question_ids.end());
    }

    DifficultPolicy mismatched = both;
    mismatched.n = 10;
    CHECK_THROWS_AS(find_difficult({strict, lenient}, mismatched), ContractViolation);
}

TEST_CASE("threshold-zero difficult set equals the brute-force scan") {
    std::mt19937 rng(211);
    std::uniform_int_distribution<int> redundancy_value(0, 3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<RedundancyReport> reports;
        for (int r = 0; r < 3; ++r) {
            RedundancyReport report;
            report.run_id = "run" + std::to_string(r);
            report.n = 20;
            report.mode = r % 2 == 0 ? MatchMode::Strict : MatchMode::Lenient;
            for (int q = 0; q < 6; ++q) {
                report.per_question["q" + std::to_string(q)] = redundancy_value(rng);
            }
            reports.push_back(std::move(report));
        }
        DifficultPolicy policy;
        policy.threshold = 0.0;
        policy.n = 20;
        DifficultSet difficult = find_difficult(reports, policy);

        std::vector<std::string> expected;
        for (int q = 0; q < 6; ++q) {
            std::string qid = "q" + std::to_string(q);
            bool all_zero = true;
            for (const RedundancyReport& report : reports) {
                if (report.per_question.at(qid) != 0) all_zero = false;
            }
            if (all_zero) expected.push_back(qid);
        }
        CHECK(difficult.question_ids == expected);
    }
}

TEST_CASE("coverage and redundancy laws hold on randomized fixtures") {
    std::mt19937 rng(223);
    std::uniform_int_distribution<int> depth(0, 20);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int seed = 0; seed < 100; ++seed) {
        JudgedRun judged;
        judged.run_id = "rand";
        judged.cutoff = 20;
        for (int q = 0; q < 8; ++q) {
            std::string qid = "q" + std::to_string(q);
            int results = depth(rng);
            for (int rank = 1; rank <= results; ++rank) {
                bool lenient = coin(rng) == 0;
                bool strict = lenient && coin(rng) == 0;
                judged.per_question[qid].push_back(
                    {qid, "u" + std::to_string(rank), rank, lenient, strict});
            }
            judged.per_question[qid];
        }
        double prev_strict = 0.0;
        double prev_lenient = 0.0;
        double prev_red = 0.0;
        for (int n = 1; n <= 20; ++n) {
            double cov_strict = coverage(judged, n, MatchMode::Strict);
            double cov_lenient = coverage(judged, n, MatchMode::Lenient);
            RedundancyReport red = redundancy(judged, n, MatchMode::Lenient);
            CHECK(cov_strict <= cov_lenient);
            CHECK(cov_strict >= prev_strict);
            CHECK(cov_lenient >= prev_lenient);
            CHECK(red.macro_mean >= prev_red);
            for (const auto& [qid, count] : red.per_question) {
                CHECK(count <= n);
            }
            CHECK(cov_strict >= 0.0);
            CHECK(cov_lenient <= 1.0);
            prev_strict = cov_strict;
            prev_lenient = cov_lenient;
            prev_red = red.macro_mean;
        }
    }
}

TEST_CASE("difficult question export round-trips through the question-set format") {
    std::vector<QuestionRecord> questions = {{"q1", "s1", "Where is the tower?"},
                                             {"q2", "s1", "How tall is it?"},
                                             {"q3", "s2", "Who built the bridge?"}};
    DifficultSet difficult;
    difficult.question_ids = {"q1", "q3"};
    difficult.policy.n = 20;

    std::filesystem::path path = std::filesystem::temp_directory_path() / "qaw_difficult.jsonl";
    export_question_set(difficult, questions, path);
    std::vector<QuestionRecord> loaded = read_question_set(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].question_id == "q1");
    CHECK(loaded[0].text == "Where is the tower?");
    CHECK(loaded[1].question_id == "q3");
    std::filesystem::remove(path);

    DifficultSet unknown;
    unknown.question_ids = {"q404"};
    CHECK_THROWS_WITH_AS(export_question_set(unknown, questions, path), doctest::Contains("q404"),
                         DataError);
}

TEST_CASE("run comparison produces one row per run, mode and rank") {
    JudgedRun a = four_question_run();
    a.run_id = "a";
    JudgedRun b = four_question_run();
    b.run_id = "b";

    std::vector<RunComparisonRow> rows = compare_runs({a, b}, {5, 10});
    CHECK(rows.size() == 2 * 2 * 2);
    double prev = -1.0;
    for (const RunComparisonRow& row : rows) {
        if (row.run_id == "a" && row.mode == MatchMode::Strict) {
            CHECK(row.coverage >= prev);
            prev = row.coverage;
        }
    }

    JudgedRun c = four_question_run();
    c.run_id = "c";
    c.per_question.erase("q4");
    c.per_question["q9"] = {};
    CHECK_THROWS_WITH_AS(compare_runs({a, c}, {5}), doctest::Contains("q9"), DataError);
}

TEST_CASE("judgement files round-trip") {
    JudgedRun judged = four_question_run();
    std::filesystem::path path = std::filesystem::temp_directory_path() / "qaw_judgements.jsonl";
    write_judgements(path, judged);
    JudgedRun loaded = read_judgements(path);
    CHECK(loaded.run_id == judged.run_id);
    CHECK(loaded.cutoff == judged.cutoff);
    REQUIRE(loaded.per_question.size() == judged.per_question.size());
    for (const auto& [qid, rows] : judged.per_question) {
        const std::vector<Judgement>& got = loaded.per_question.at(qid);
        REQUIRE(got.size() == rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(got[i].unit_id == rows[i].unit_id);
            CHECK(got[i].rank == rows[i].rank);
            CHECK(got[i].lenient == rows[i].lenient);
            CHECK(got[i].strict == rows[i].strict);
        }
    }
    std::filesystem::remove(path);
}
