#pragma once

// Brute-force reference implementations, independent of the library's data
// structures. Metric oracles rebuild gram sets/count maps from scratch; the
// retrieval oracle scores every unit by re-tokenizing its text instead of
// walking postings.

#include "qaw/index.hpp"
#include "qaw/sim.hpp"
#include "qaw/text.hpp"

#include <string>
#include <vector>

namespace qaw::oracle {

double metric(MetricKind kind, const std::vector<std::string>& tokens_a,
              const std::vector<std::string>& tokens_b, int n);

double weighted(MetricKind kind, const std::string& a, const std::string& b,
                double w1, double w2, double w3);

double best_against_gold(const std::string& candidate, const std::vector<std::string>& gold,
                         MetricKind kind, double w1, double w2, double w3);

std::vector<ScoredUnit> retrieve_linear_scan(const std::vector<IndexUnit>& units,
                                             const std::string& query, int n,
                                             const RankingConfig& config,
                                             const StopwordList& stops);

}  // namespace qaw::oracle
