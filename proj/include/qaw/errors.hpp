#pragma once

#include <stdexcept>
#include <string>

namespace qaw {

// Malformed or inconsistent input data: bad file syntax, duplicate ids,
// unresolvable references. The CLI maps this to exit code 1.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke an operation's contract (gram order outside {1,2,3},
// all-zero weights, cutoff past the run's depth, ...).
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Bad flags or configuration. The CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qaw
