#include "qaw/config.hpp"
#include "qaw/corpus.hpp"
#include "qaw/errors.hpp"
#include "qaw/eval.hpp"
#include "qaw/expand.hpp"
#include "qaw/index.hpp"
#include "qaw/io.hpp"
#include "qaw/reformulate.hpp"
#include "qaw/report.hpp"
#include "qaw/sim.hpp"
#include "qaw/util.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace qaw;

namespace {

struct CliOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    bool no_timestamp = false;
    int jobs = 0;
    std::string input;  // used by `score`
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("-c,--config", opts.config_path, "workbench config file")->required();
    cmd->add_option("--set", opts.overrides, "override a config key, e.g. --set n=10");
    cmd->add_flag("--no-timestamp", opts.no_timestamp, "omit the generated-at header from reports");
    cmd->add_option("--jobs", opts.jobs, "worker thread cap");
}

WorkbenchConfig load_config(const CliOptions& opts) {
    WorkbenchConfig config = WorkbenchConfig::load(opts.config_path);
    for (const std::string& kv : opts.overrides) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value, got: " + kv);
        config.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
    }
    if (opts.jobs > 0) config.jobs = opts.jobs;
    return config;
}

fs::path index_path(const WorkbenchConfig& config, IndexLevel level) {
    return config.output_dir / (std::string("index-") + level_name(level) + ".idx");
}

fs::path run_path(const WorkbenchConfig& config, const std::string& run_id) {
    return config.output_dir / ("run-" + run_id + ".jsonl");
}

fs::path judgements_path(const WorkbenchConfig& config, const std::string& run_id) {
    return config.output_dir / ("judgements-" + run_id + ".jsonl");
}

std::string run_id_for(const std::string& ranker, IndexLevel level) {
    return ranker + "-" + level_name(level);
}

StopwordList load_stops(const WorkbenchConfig& config) {
    config.require_paths({"stopwords"});
    return StopwordList::load(config.stopwords);
}

std::vector<std::string> all_run_ids(const WorkbenchConfig& config) {
    std::vector<std::string> ids;
    for (const std::string& ranker : config.rankers) {
        for (IndexLevel level : config.levels) ids.push_back(run_id_for(ranker, level));
    }
    return ids;
}

// ---------------------------------------------------------------- index ---

int cmd_index(const CliOptions& opts) {
    WorkbenchConfig config = load_config(opts);
    config.require_paths({"corpus"});
    std::vector<Document> docs = ingest_corpus(config.corpus, config.corpus_format);
    std::size_t total_units = 0;
    for (IndexLevel level : config.levels) {
        Index index = Index::build(make_units(docs, level), level);
        index.save(index_path(config, level));
        total_units += index.unit_count();
    }
    std::cout << "index: " << docs.size() << " documents, " << config.levels.size()
              << " level(s), " << total_units << " units -> " << config.output_dir.string()
              << "\n";
    return 0;
}

// -------------------------------------------------------------- retrieve ---

int cmd_retrieve(const CliOptions& opts) {
    WorkbenchConfig config = load_config(opts);
    config.require_paths({"questions"});
    StopwordList stops = load_stops(config);
    std::vector<QuestionRecord> questions = read_question_set(config.questions);

    std::size_t runs = 0;
    for (IndexLevel level : config.levels) {
        Index index = Index::load(index_path(config, level));
        for (const RankingConfig& ranking : config.ranking_configs()) {
            RetrievalRun run;
            run.run_id = run_id_for(ranking.name, level);
            run.config_name = ranking.name;
            run.level = level;
            run.cutoff = config.n;
            std::vector<std::vector<ScoredUnit>> results(questions.size());
            parallel_for(questions.size(), config.jobs, [&](std::size_t i) {
                results[i] = retrieve(index, questions[i].text, config.n, ranking, stops);
            });
            for (std::size_t i = 0; i < questions.size(); ++i) {
                run.results[questions[i].question_id] = std::move(results[i]);
            }
            write_run(run_path(config, run.run_id), run);
            ++runs;
        }
    }
    std::cout << "retrieve: " << runs << " run(s) x " << questions.size()
              << " questions, cutoff " << config.n << " -> " << config.output_dir.string() << "\n";
    return 0;
}

// ----------------------------------------------------------------- judge ---

int cmd_judge(const CliOptions& opts) {
    WorkbenchConfig config = load_config(opts);
    config.require_paths({"answer_keys"});
    AnswerKeyMap keys = key_map(read_answer_keys(config.answer_keys));

    std::map<IndexLevel, Index> indexes;
    for (IndexLevel level : config.levels) {
        indexes.emplace(level, Index::load(index_path(config, level)));
    }

    std::size_t runs = 0;
    std::size_t questions = 0;
    for (const std::string& run_id : all_run_ids(config)) {
        RetrievalRun run = read_run(run_path(config, run_id));
        JudgedRun judged = judge(run, keys, indexes.at(run.level), config.jobs);
        write_judgements(judgements_path(config, run_id), judged);
        ++runs;
        questions = judged.per_question.size();
    }
    std::cout << "judge: " << runs << " run(s) x " << questions << " questions -> "
              << config.output_dir.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- report ---

int cmd_report(const CliOptions& opts) {
    WorkbenchConfig config = load_config(opts);
    std::vector<JudgedRun> judged;
    for (const std::string& run_id : all_run_ids(config)) {
        judged.push_back(read_judgements(judgements_path(config, run_id)));
    }

    // ranks past the run cutoff are skipped rather than erroring
    std::vector<int> ranks;
    for (int n : config.ranks) {
        if (!judged.empty() && n <= judged.front().cutoff) ranks.push_back(n);
    }
    std::vector<RunComparisonRow> rows = compare_runs(judged, ranks);

    ReportTable long_form;
    long_form.header = {"run", "mode", "n", "coverage", "mean_redundancy"};
    for (const RunComparisonRow& row : rows) {
        long_form.rows.push_back({row.run_id, mode_name(row.mode), std::to_string(row.n),
                                  format_fixed(row.coverage, 3),
                                  format_fixed(row.mean_redundancy, 3)});
    }
    write_csv(config.output_dir / "report-comparison.csv", long_form, !opts.no_timestamp);

    // pivoted tables: ranks as rows, run x mode as columns
    for (const char* what : {"coverage", "redundancy"}) {
        ReportTable pivot;
        pivot.header.push_back("rank");
        for (const JudgedRun& run : judged) {
            for (MatchMode mode : {MatchMode::Strict, MatchMode::Lenient}) {
                pivot.header.push_back(run.run_id + ":" + mode_name(mode));
            }
        }
        for (int n : ranks) {
            ReportRow row{std::to_string(n)};
            for (const RunComparisonRow& cell : rows) {
                if (cell.n != n) continue;
                double value = std::string(what) == "coverage" ? cell.coverage
                                                               : cell.mean_redundancy;
                row.push_back(format_fixed(value, 3));
            }
            pivot.rows.push_back(std::move(row));
        }
        write_text_table(config.output_dir / (std::string("report-") + what + ".txt"), pivot,
                         !opts.no_timestamp);
    }

    std::cout << "report: " << judged.size() << " run(s), " << ranks.size() << " rank(s) -> "
              << (config.output_dir / "report-comparison.csv").string() << "\n";
    return 0;
}

// ------------------------------------------------------------- difficult ---

int cmd_difficult(const CliOptions& opts) {
    WorkbenchConfig config = load_config(opts);
    config.require_paths({"questions"});
    std::vector<QuestionRecord> questions = read_question_set(config.questions);

    std::vector<RedundancyReport> reports;
    DifficultPolicy policy;
    policy.threshold = config.threshold;
    policy.n = config.n;
    policy.modes = config.modes;
    policy.run_ids = all_run_ids(config);
    for (const std::string& run_id : policy.run_ids) {
        JudgedRun judged = read_judgements(judgements_path(config, run_id));
        for (MatchMode mode : policy.modes) {
            reports.push_back(redundancy(judged, policy.n, mode));
        }
    }

    DifficultSet difficult = find_difficult(reports, policy);
    write_difficult(config.output_dir / "difficult.jsonl", difficult);
    export_question_set(difficult, questions, config.output_dir / "difficult-questions.jsonl");
    std::cout << "difficult: " << difficult.question_ids.size() << " of " << questions.size()
              << " questions at threshold " << format_fixed(policy.threshold, 3) << " -> "
              << (config.output_dir / "difficult-questions.jsonl").string() << "\n";
    return 0;
}

// ------------------------------------------------------------------- hew ---

int cmd_hew(const CliOptions& opts) {
    WorkbenchConfig config = load_config(opts);
    config.require_paths({"questions", "answer_keys"});
    StopwordList stops = load_stops(config);
    std::vector<QuestionRecord> questions = read_question_set(config.questions);
    AnswerKeyMap keys = key_map(read_answer_keys(config.answer_keys));
    DifficultSet difficult = read_difficult(config.output_dir / "difficult.jsonl");
    Index index = Index::load(index_path(config, IndexLevel::Passage));
    RankingConfig ranking = config.ranking(config.rankers.front());

    std::map<std::string, std::vector<ExtensionOutcome>> mined =
        mine_hew(index, questions, difficult, keys, config.n, ranking, stops, config.jobs);

    std::vector<HewRecord> records;
    std::map<std::string, std::vector<std::string>> hew_words;
    for (const auto& [qid, outcomes] : mined) {
        for (const ExtensionOutcome& outcome : outcomes) {
            records.push_back({qid, outcome.candidate.word, outcome.redundancy_after});
            hew_words[qid].push_back(outcome.candidate.word);
        }
        hew_words[qid];  // keep empty sets in the map
    }
    write_hew(config.output_dir / "hew.jsonl", records);

    // Intersection statistics against the initially retrieved texts and the
    // blind-RF selections at the first configured feedback depth.
    int r = config.rs.front();
    std::map<std::string, std::vector<std::string>> irt_texts;
    std::map<std::string, std::vector<std::string>> rf_words;
    for (const std::string& qid : difficult.question_ids) {
        const QuestionRecord* q = nullptr;
        for (const QuestionRecord& candidate : questions) {
            if (candidate.question_id == qid) {
                q = &candidate;
                break;
            }
        }
        std::vector<ScoredUnit> initial = retrieve(index, q->text, r, ranking, stops);
        for (const ScoredUnit& unit : initial) {
            irt_texts[qid].push_back(index.find_unit(unit.unit_id)->text);
        }
        irt_texts[qid];
        RFSelection selection = blind_rf_terms(index, qid, q->text, r, config.k, ranking, stops);
        for (const auto& [term, tf] : selection.terms) rf_words[qid].push_back(term);
        rf_words[qid];
    }
    IntersectionStats stats = intersection_stats(hew_words, irt_texts, rf_words);

    std::string set_name = config.questions.stem().string();
    ReportTable table;
    table.header = {"statistic", set_name};
    table.rows.push_back({"HEW found in IRT", format_fixed(stats.hew_in_irt, 2)});
    table.rows.push_back({"IRT containing HEW", format_fixed(stats.irt_with_hew, 2)});
    table.rows.push_back({"RF words in HEW", format_fixed(stats.rf_in_hew, 2)});
    write_csv(config.output_dir / "hew-stats.csv", table, !opts.no_timestamp);
    write_text_table(config.output_dir / "hew-stats.txt", table, !opts.no_timestamp);

    std::cout << "hew: " << difficult.question_ids.size() << " difficult question(s), "
              << records.size() << " helpful word(s) -> "
              << (config.output_dir / "hew.jsonl").string() << "\n";
    return 0;
}

// -------------------------------------------------------------------- rf ---

int cmd_rf(const CliOptions& opts) {
    WorkbenchConfig config = load_config(opts);
    config.require_paths({"questions", "answer_keys"});
    StopwordList stops = load_stops(config);
    std::vector<QuestionRecord> questions = read_question_set(config.questions);
    AnswerKeyMap keys = key_map(read_answer_keys(config.answer_keys));
    RankingConfig ranking = config.ranking(config.rankers.front());

    Index doc_index = Index::load(index_path(config, IndexLevel::Document));
    Index para_index = Index::load(index_path(config, IndexLevel::Passage));
    std::map<IndexLevel, const Index*> harvest = {{IndexLevel::Document, &doc_index},
                                                  {IndexLevel::Passage, &para_index}};

    RfGrid grid = rf_experiment(harvest, para_index, questions, keys, config.rs, config.k,
                                config.ranks, ranking, stops, config.jobs);

    ReportTable table;
    table.header.push_back("rank");
    for (const RfCell& cell : grid.cells) {
        table.header.push_back("r" + std::to_string(cell.r) + ":" +
                               (cell.level == IndexLevel::Document ? "doc" : "para"));
    }
    table.header.push_back("baseline");
    for (int rank : grid.ranks) {
        ReportRow row{std::to_string(rank)};
        for (const RfCell& cell : grid.cells) {
            row.push_back(format_fixed(cell.coverage_by_rank.at(rank), 3));
        }
        row.push_back(format_fixed(grid.baseline_by_rank.at(rank), 3));
        table.rows.push_back(std::move(row));
    }
    write_csv(config.output_dir / "rf-grid.csv", table, !opts.no_timestamp);
    write_text_table(config.output_dir / "rf-grid.txt", table, !opts.no_timestamp);

    std::cout << "rf: " << questions.size() << " questions, " << grid.cells.size()
              << " cell(s) + baseline -> " << (config.output_dir / "rf-grid.csv").string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- reform ---

int cmd_reform(const CliOptions& opts, bool baseline) {
    WorkbenchConfig config = load_config(opts);
    config.require_paths({"series"});
    StopwordList stops = load_stops(config);
    std::vector<QuestionSeries> series = read_series(config.series);

    std::vector<ReformulationRecord> records;
    std::size_t question_count = 0;
    for (const QuestionSeries& s : series) {
        std::vector<Reformulation> reformulations =
            baseline ? baseline_append_target(s) : reformulate(s, stops);
        question_count += s.questions.size();
        std::string current;
        int variant = 0;
        for (const Reformulation& r : reformulations) {
            if (r.question_id != current) {
                current = r.question_id;
                variant = 0;
            }
            records.push_back({s.series_id, r.question_id, variant++, r.text,
                               r.uses_previous_answer});
        }
    }
    fs::path out = config.output_dir / (baseline ? "reform-baseline.jsonl" : "reform.jsonl");
    write_reformulations(out, records);
    std::cout << "reform: " << series.size() << " series, " << question_count << " questions, "
              << records.size() << " variant(s) -> " << out.string() << "\n";
    return 0;
}

// ----------------------------------------------------------------- score ---

int cmd_score(const CliOptions& opts) {
    WorkbenchConfig config = load_config(opts);
    config.require_paths({"gold"});
    if (opts.input.empty()) throw UsageError("score needs --input <dataset or reformulation file>");
    fs::path input = opts.input;
    if (input.is_relative() && !fs::exists(input)) {
        fs::path in_out = config.output_dir / input;
        if (fs::exists(in_out)) input = in_out;
    }
    if (!fs::exists(input)) throw UsageError("score input does not exist: " + input.string());

    std::vector<GoldStandardEntry> gold = read_gold(config.gold);

    // Accept either a dataset file ({question_id, candidate} records) or a
    // reformulation file; reformulation variants score per question as the
    // best variant.
    TestDataset dataset;
    std::ifstream probe(input);
    std::string first_line;
    while (std::getline(probe, first_line) && trim(first_line).empty()) {
    }
    bool reform_input = first_line.find("\"variant_index\"") != std::string::npos;
    if (reform_input) {
        std::vector<ReformulationRecord> records = read_reformulations(input);
        std::map<std::string, std::vector<std::string>> variants;
        for (const ReformulationRecord& r : records) variants[r.question_id].push_back(r.text);
        std::vector<ScoredItem> items;
        for (const auto& [qid, texts] : variants) {
            const GoldStandardEntry* entry = nullptr;
            for (const GoldStandardEntry& g : gold) {
                if (g.question_id == qid) {
                    entry = &g;
                    break;
                }
            }
            if (!entry) throw DataError("no gold entry for question " + qid);
            double best = 0.0;
            for (const std::string& text : texts) {
                best = std::max(best, score_against_gold(text, *entry, config.metric,
                                                         config.weights));
            }
            items.push_back({qid, best});
        }
        ReportTable table;
        std::string name = input.stem().string();
        table.header = {"dataset", "question_id", "score"};
        double sum = 0.0, lo = 1.0, hi = 0.0;
        for (const ScoredItem& item : items) {
            table.rows.push_back({name, item.question_id, format_fixed(item.score, 3)});
            sum += item.score;
            lo = std::min(lo, item.score);
            hi = std::max(hi, item.score);
        }
        double mean = items.empty() ? 0.0 : sum / static_cast<double>(items.size());
        table.rows.push_back({name, "mean", format_fixed(mean, 3)});
        write_csv(config.output_dir / ("score-" + name + ".csv"), table, !opts.no_timestamp);
        std::cout << "score: input=" << name << " items=" << items.size()
                  << " mean=" << format_fixed(mean, 3) << " min=" << format_fixed(lo, 3)
                  << " max=" << format_fixed(hi, 3) << "\n";
        return 0;
    }

    dataset = read_dataset(input);
    std::string name = input.stem().string();
    DatasetReport report = evaluate_dataset(dataset, gold, config.metric, config.weights,
                                            config.jobs);
    ReportTable table;
    table.header = {"dataset", "question_id", "score"};
    for (const ScoredItem& item : report.items) {
        table.rows.push_back({name, item.question_id, format_fixed(item.score, 3)});
    }
    table.rows.push_back({name, "mean", format_fixed(report.mean, 3)});
    write_csv(config.output_dir / ("score-" + name + ".csv"), table, !opts.no_timestamp);
    std::cout << "score: input=" << name << " items=" << report.items.size()
              << " mean=" << format_fixed(report.mean, 3)
              << " min=" << format_fixed(report.min, 3)
              << " max=" << format_fixed(report.max, 3) << "\n";
    return 0;
}

// ---------------------------------------------------------- gen-datasets ---

int cmd_gen_datasets(const CliOptions& opts) {
    WorkbenchConfig config = load_config(opts);
    config.require_paths({"series", "gold"});
    std::vector<QuestionSeries> series = read_series(config.series);
    std::vector<GoldStandardEntry> gold = read_gold(config.gold);
    DatasetTriple datasets = generate_test_datasets(series, gold);
    write_dataset(config.output_dir / "dataset-without-target.jsonl", datasets.without_target);
    write_dataset(config.output_dir / "dataset-with-target.jsonl", datasets.with_target);
    write_dataset(config.output_dir / "dataset-identical.jsonl", datasets.identical);
    std::cout << "gen-datasets: " << gold.size() << " gold entries -> 3 datasets in "
              << config.output_dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qaw - question answering IR workbench"};
    app.require_subcommand(1);

    CliOptions opts;
    bool reform_baseline = false;

    CLI::App* c_index = app.add_subcommand("index", "build document/passage indexes from the corpus");
    CLI::App* c_retrieve = app.add_subcommand("retrieve", "run retrieval for each ranker and level");
    CLI::App* c_judge = app.add_subcommand("judge", "judge retrieval runs against answer keys");
    CLI::App* c_report = app.add_subcommand("report", "coverage/redundancy comparison tables");
    CLI::App* c_difficult = app.add_subcommand("difficult", "mine difficult questions");
    CLI::App* c_hew = app.add_subcommand("hew", "mine helpful extension words + intersection stats");
    CLI::App* c_rf = app.add_subcommand("rf", "blind relevance feedback coverage grid");
    CLI::App* c_reform = app.add_subcommand("reform", "reformulate question series");
    CLI::App* c_score = app.add_subcommand("score", "score candidates against the gold standard");
    CLI::App* c_gen = app.add_subcommand("gen-datasets", "generate the three metric test datasets");

    for (CLI::App* cmd : {c_index, c_retrieve, c_judge, c_report, c_difficult, c_hew, c_rf,
                          c_reform, c_score, c_gen}) {
        add_common_options(cmd, opts);
    }
    c_reform->add_flag("--baseline", reform_baseline, "append-target baseline instead of the rule engine");
    c_score->add_option("-i,--input", opts.input, "dataset or reformulation file to score");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_index->parsed()) return cmd_index(opts);
        if (c_retrieve->parsed()) return cmd_retrieve(opts);
        if (c_judge->parsed()) return cmd_judge(opts);
        if (c_report->parsed()) return cmd_report(opts);
        if (c_difficult->parsed()) return cmd_difficult(opts);
        if (c_hew->parsed()) return cmd_hew(opts);
        if (c_rf->parsed()) return cmd_rf(opts);
        if (c_reform->parsed()) return cmd_reform(opts, reform_baseline);
        if (c_score->parsed()) return cmd_score(opts);
        if (c_gen->parsed()) return cmd_gen_datasets(opts);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ContractViolation& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
