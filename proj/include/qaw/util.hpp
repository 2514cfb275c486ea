#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace qaw {

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

// Fixed-point rendering used by every report: scores and coverage get three
// decimals, percentages two.
std::string format_fixed(double value, int decimals);

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work is split into
// contiguous chunks so callers can write results into pre-sized slots and
// stay deterministic regardless of the worker count.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace qaw
