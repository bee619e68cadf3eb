#include "coph/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace coph {

namespace {

void tokenize_into(const std::string& text, uint32_t doc, std::map<std::string, std::set<uint32_t>>& index) {
    std::string tok;
    auto flush = [&] {
        if (!tok.empty()) {
            index[tok].insert(doc);
            tok.clear();
        }
    };
    for (unsigned char c : text) {
        if (std::isalnum(c))
            tok.push_back(char(std::tolower(c)));
        else
            flush();
    }
    flush();
}

Corpus from_documents(const std::vector<std::string>& docs) {
    std::map<std::string, std::set<uint32_t>> index;
    for (uint32_t i = 0; i < docs.size(); ++i) tokenize_into(docs[i], i, index);
    Corpus c;
    c.n_docs = uint32_t(docs.size());
    for (auto& [term, ids] : index) {
        c.terms.push_back(term);
        c.postings.emplace_back(ids.begin(), ids.end());
    }
    return c;
}

} // namespace

bool Corpus::has_term(const std::string& t) const {
    return std::binary_search(terms.begin(), terms.end(), t);
}

BinaryVector Corpus::term_vector(const std::string& t) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), t);
    if (it == terms.end() || *it != t) throw std::invalid_argument("unknown term: " + t);
    return make_vector(n_docs, postings[size_t(it - terms.begin())]);
}

Corpus ingest_corpus(std::istream& in) {
    std::vector<std::string> docs;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = line.find_first_not_of(" \t") == std::string::npos;
        if (!blank) docs.push_back(line);
    }
    return from_documents(docs);
}

Corpus ingest_corpus_path(const std::string& path) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (fs::is_directory(p)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(p))
            if (e.is_regular_file()) files.push_back(e.path());
        std::sort(files.begin(), files.end(),
                  [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
        std::vector<std::string> docs;
        for (const auto& f : files) {
            std::ifstream in(f);
            if (!in) throw std::runtime_error("cannot open " + f.string());
            std::ostringstream ss;
            ss << in.rdbuf();
            docs.push_back(ss.str());
        }
        return from_documents(docs);
    }
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + path);
    return ingest_corpus(in);
}

void export_corpus_csv(const Corpus& c, std::ostream& out) {
    out << "term,dim,indices\n";
    for (size_t t = 0; t < c.terms.size(); ++t) {
        out << c.terms[t] << ',' << c.n_docs << ',';
        for (size_t i = 0; i < c.postings[t].size(); ++i) {
            if (i) out << ';';
            out << c.postings[t][i];
        }
        out << '\n';
    }
}

} // namespace coph
