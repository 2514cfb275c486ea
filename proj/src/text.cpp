#include "qaw/text.hpp"

#include "qaw/errors.hpp"

#include <fstream>

namespace qaw {

namespace {

bool is_word_char(unsigned char c) {
    if (c >= 0x80) return true;  // keep UTF-8 sequences intact, no case folding
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

char lower_ascii(unsigned char c) {
    if (c >= 'A' && c <= 'Z') return static_cast<char>(c - 'A' + 'a');
    return static_cast<char>(c);
}

}  // namespace

TokenStream tokenize(const std::string& text) {
    TokenStream out;
    std::string cur;
    for (unsigned char c : text) {
        if (is_word_char(c)) {
            cur.push_back(lower_ascii(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::vector<TokenSpan> tokenize_spans(const std::string& text) {
    std::vector<TokenSpan> out;
    TokenSpan cur;
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_word_char(c)) {
            if (cur.token.empty()) cur.begin = i;
            cur.token.push_back(lower_ascii(c));
            cur.end = i + 1;
        } else if (!cur.token.empty()) {
            out.push_back(std::move(cur));
            cur = TokenSpan{};
        }
    }
    if (!cur.token.empty()) out.push_back(std::move(cur));
    return out;
}

std::string join_tokens(const TokenStream& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

StopwordList::StopwordList(std::initializer_list<const char*> words) {
    for (const char* w : words) {
        for (const std::string& t : tokenize(w)) words_.insert(t);
    }
}

StopwordList::StopwordList(const TokenStream& words) {
    for (const std::string& w : words) {
        for (const std::string& t : tokenize(w)) words_.insert(t);
    }
}

StopwordList StopwordList::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open stopword file: " + file.string());
    StopwordList list;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        for (const std::string& t : tokenize(line)) list.words_.insert(t);
    }
    return list;
}

bool StopwordList::contains(const std::string& token) const {
    if (words_.count(token)) return true;
    // membership is case-insensitive by construction: lowercase the probe
    // in case a caller passes raw text
    bool has_upper = false;
    for (char c : token) {
        if (c >= 'A' && c <= 'Z') { has_upper = true; break; }
    }
    if (!has_upper) return false;
    std::string low;
    low.reserve(token.size());
    for (char c : token) low.push_back(lower_ascii(static_cast<unsigned char>(c)));
    return words_.count(low) > 0;
}

TokenStream strip_stopwords(const TokenStream& tokens, const StopwordList& stops) {
    TokenStream out;
    out.reserve(tokens.size());
    for (const std::string& t : tokens) {
        if (!stops.contains(t)) out.push_back(t);
    }
    return out;
}

int NGramProfile::total_count() const {
    int total = 0;
    for (const auto& [gram, count] : grams) total += count;
    return total;
}

NGramProfile ngrams(const TokenStream& tokens, int n) {
    if (n < 1 || n > 3) throw ContractViolation("gram order must be 1, 2 or 3, got " + std::to_string(n));
    NGramProfile profile;
    profile.n = n;
    if (tokens.size() < static_cast<std::size_t>(n)) return profile;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        Gram g(tokens.begin() + i, tokens.begin() + i + n);
        ++profile.grams[g];
    }
    return profile;
}

}  // namespace qaw
