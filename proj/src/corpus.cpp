#include "qaw/corpus.hpp"

#include "qaw/errors.hpp"
#include "qaw/util.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace qaw {

CorpusFormat corpus_format_from_name(const std::string& name) {
    if (name == "trec" || name == "trec-sgml") return CorpusFormat::TrecSgml;
    if (name == "jsonl") return CorpusFormat::Jsonl;
    throw UsageError("unknown corpus format: " + name + " (expected trec|jsonl)");
}

const char* level_name(IndexLevel level) {
    return level == IndexLevel::Document ? "document" : "passage";
}

IndexLevel level_from_name(const std::string& name) {
    if (name == "document" || name == "doc") return IndexLevel::Document;
    if (name == "passage" || name == "para") return IndexLevel::Passage;
    throw UsageError("unknown index level: " + name + " (expected document|passage)");
}

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

[[noreturn]] void malformed(const std::filesystem::path& path, std::size_t offset,
                            const std::string& what) {
    throw DataError(path.string() + ": byte " + std::to_string(offset) + ": " + what);
}

// Returns the range between <tag> and </tag> starting the search at `from`,
// or npos if no opening tag remains.
struct TagBody {
    std::size_t content_begin = std::string::npos;
    std::size_t content_end = std::string::npos;
    std::size_t element_end = std::string::npos;
};

TagBody find_tag(const std::string& text, const std::string& tag, std::size_t from,
                 std::size_t limit, const std::filesystem::path& path) {
    TagBody body;
    std::string open = "<" + tag + ">";
    std::string close = "</" + tag + ">";
    std::size_t start = text.find(open, from);
    if (start == std::string::npos || start >= limit) return body;
    std::size_t end = text.find(close, start + open.size());
    if (end == std::string::npos || end > limit) malformed(path, start, "unclosed <" + tag + ">");
    body.content_begin = start + open.size();
    body.content_end = end;
    body.element_end = end + close.size();
    return body;
}

std::vector<Document> ingest_trec(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    std::vector<Document> docs;
    std::set<std::string> seen;
    std::size_t cursor = 0;
    while (true) {
        TagBody doc = find_tag(text, "DOC", cursor, text.size(), path);
        if (doc.content_begin == std::string::npos) break;

        TagBody docno = find_tag(text, "DOCNO", doc.content_begin, doc.content_end, path);
        if (docno.content_begin == std::string::npos) {
            malformed(path, doc.content_begin, "<DOC> without <DOCNO>");
        }
        std::string doc_id = trim(text.substr(docno.content_begin,
                                              docno.content_end - docno.content_begin));
        if (doc_id.empty()) malformed(path, docno.content_begin, "empty <DOCNO>");
        if (!seen.insert(doc_id).second) {
            throw DataError(path.string() + ": duplicate doc_id: " + doc_id);
        }

        TagBody body = find_tag(text, "TEXT", doc.content_begin, doc.content_end, path);
        if (body.content_begin == std::string::npos) {
            malformed(path, doc.content_begin, "<DOC> without <TEXT>");
        }

        Document d;
        d.doc_id = doc_id;
        std::size_t p_cursor = body.content_begin;
        while (true) {
            TagBody p = find_tag(text, "P", p_cursor, body.content_end, path);
            if (p.content_begin == std::string::npos) break;
            std::string para = trim(text.substr(p.content_begin, p.content_end - p.content_begin));
            if (!para.empty()) d.paragraphs.push_back(para);
            p_cursor = p.element_end;
        }
        if (d.paragraphs.empty()) {
            std::string whole = trim(text.substr(body.content_begin,
                                                 body.content_end - body.content_begin));
            if (!whole.empty()) d.paragraphs.push_back(whole);
        }
        if (d.paragraphs.empty()) malformed(path, body.content_begin, "document " + doc_id + " has no paragraphs");

        docs.push_back(std::move(d));
        cursor = doc.element_end;
    }
    return docs;
}

std::vector<Document> ingest_jsonl(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    std::vector<Document> docs;
    std::set<std::string> seen;
    std::size_t offset = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t line_offset = offset;
        offset += line.size() + 1;
        if (trim(line).empty()) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            malformed(path, line_offset, std::string("invalid JSON: ") + e.what());
        }
        if (!record.is_object() || !record.contains("doc_id") || !record.contains("paragraphs")) {
            malformed(path, line_offset, "record needs doc_id and paragraphs");
        }
        Document d;
        d.doc_id = record["doc_id"].get<std::string>();
        for (const auto& p : record["paragraphs"]) {
            std::string para = p.get<std::string>();
            if (!para.empty()) d.paragraphs.push_back(para);
        }
        if (d.doc_id.empty()) malformed(path, line_offset, "empty doc_id");
        if (d.paragraphs.empty()) malformed(path, line_offset, "document " + d.doc_id + " has no paragraphs");
        if (!seen.insert(d.doc_id).second) {
            throw DataError(path.string() + ": duplicate doc_id: " + d.doc_id);
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

}  // namespace

std::vector<Document> ingest_corpus(const std::filesystem::path& path, CorpusFormat format) {
    return format == CorpusFormat::TrecSgml ? ingest_trec(path) : ingest_jsonl(path);
}

std::vector<IndexUnit> chunk_passages(const std::vector<Document>& docs) {
    std::vector<IndexUnit> units;
    for (const Document& d : docs) {
        for (std::size_t i = 0; i < d.paragraphs.size(); ++i) {
            units.push_back({d.doc_id + "#" + std::to_string(i), d.paragraphs[i], d.doc_id});
        }
    }
    return units;
}

std::vector<IndexUnit> wrap_documents(const std::vector<Document>& docs) {
    std::vector<IndexUnit> units;
    units.reserve(docs.size());
    for (const Document& d : docs) {
        std::string joined;
        for (std::size_t i = 0; i < d.paragraphs.size(); ++i) {
            if (i) joined.push_back('\n');
            joined += d.paragraphs[i];
        }
        units.push_back({d.doc_id, std::move(joined), d.doc_id});
    }
    return units;
}

std::vector<IndexUnit> make_units(const std::vector<Document>& docs, IndexLevel level) {
    return level == IndexLevel::Passage ? chunk_passages(docs) : wrap_documents(docs);
}

std::pair<std::string, int> parse_passage_unit_id(const std::string& unit_id) {
    std::size_t hash = unit_id.rfind('#');
    if (hash == std::string::npos || hash + 1 >= unit_id.size()) {
        throw DataError("not a passage unit_id: " + unit_id);
    }
    int ordinal = 0;
    for (std::size_t i = hash + 1; i < unit_id.size(); ++i) {
        char c = unit_id[i];
        if (c < '0' || c > '9') throw DataError("not a passage unit_id: " + unit_id);
        ordinal = ordinal * 10 + (c - '0');
    }
    return {unit_id.substr(0, hash), ordinal};
}

}  // namespace qaw
