#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

namespace qaw {

// Ordered sequence of lowercase word tokens.
using TokenStream = std::vector<std::string>;

// A token plus its byte range [begin, end) in the original text.
struct TokenSpan {
    std::string token;
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Lowercases and splits on maximal runs of non-word characters.
// Letters, digits, underscore and non-ASCII bytes count as word characters,
// so the PREVIOUS_ANSWER placeholder survives as a single token.
TokenStream tokenize(const std::string& text);

// Same split, keeping byte offsets into the original text.
std::vector<TokenSpan> tokenize_spans(const std::string& text);

// Joins tokens with single spaces.
std::string join_tokens(const TokenStream& tokens);

class StopwordList {
public:
    StopwordList() = default;
    explicit StopwordList(std::initializer_list<const char*> words);
    explicit StopwordList(const TokenStream& words);

    // One token per line, UTF-8, '#' comment lines ignored.
    static StopwordList load(const std::filesystem::path& file);

    bool contains(const std::string& token) const;
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

TokenStream strip_stopwords(const TokenStream& tokens, const StopwordList& stops);

// Gram = n-token tuple; profiles map grams to occurrence counts.
using Gram = std::vector<std::string>;

struct NGramProfile {
    int n = 1;
    std::map<Gram, int> grams;

    int total_count() const;
    bool empty() const { return grams.empty(); }
};

// Sliding-window grams with multiplicity counts, no boundary padding.
// n must be 1, 2 or 3; a stream shorter than n yields an empty profile.
NGramProfile ngrams(const TokenStream& tokens, int n);

}  // namespace qaw
