#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace qaw {

struct Document {
    std::string doc_id;
    std::vector<std::string> paragraphs;
};

enum class CorpusFormat { TrecSgml, Jsonl };

CorpusFormat corpus_format_from_name(const std::string& name);

// TREC-SGML subset: <DOC> blocks with one <DOCNO> and one <TEXT>, paragraphs
// in <P> tags (a <TEXT> without <P> tags is a single paragraph). JSONL: one
// {"doc_id", "paragraphs": [...]} record per line. Malformed records and
// duplicate doc ids are data errors.
std::vector<Document> ingest_corpus(const std::filesystem::path& path, CorpusFormat format);

enum class IndexLevel { Document, Passage };

const char* level_name(IndexLevel level);
IndexLevel level_from_name(const std::string& name);

struct IndexUnit {
    std::string unit_id;
    std::string text;
    std::string parent_doc_id;
};

// One unit per paragraph, unit_id = doc_id#ordinal.
std::vector<IndexUnit> chunk_passages(const std::vector<Document>& docs);

// One unit per document, paragraphs joined by single newlines.
std::vector<IndexUnit> wrap_documents(const std::vector<Document>& docs);

std::vector<IndexUnit> make_units(const std::vector<Document>& docs, IndexLevel level);

// Inverse of the passage unit_id scheme: "d1#2" -> ("d1", 2).
std::pair<std::string, int> parse_passage_unit_id(const std::string& unit_id);

}  // namespace qaw
