#pragma once
// Text corpus ingestion into a document-term incidence.
//
// The vector space dimension is the number of documents; the vector of a
// term marks the documents containing it. Tokenization: ASCII lowercase,
// split on anything outside [A-Za-z0-9].

#include "coph/binary_vector.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace coph {

struct Corpus {
    uint32_t n_docs = 0;
    std::vector<std::string> terms;             // sorted
    std::vector<std::vector<uint32_t>> postings; // postings[t] = sorted doc ids for terms[t]

    bool has_term(const std::string& t) const;
    // Throws std::invalid_argument for unknown terms.
    BinaryVector term_vector(const std::string& t) const;
};

// One document per non-empty line.
Corpus ingest_corpus(std::istream& in);
// Path to a file (one doc per line) or a directory (each regular file is one
// document, in sorted filename order).
Corpus ingest_corpus_path(const std::string& path);

// CSV export, one row per term: term,dim,idx1;idx2;...
void export_corpus_csv(const Corpus& c, std::ostream& out);

} // namespace coph
