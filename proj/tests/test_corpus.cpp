#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coph/corpus.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace coph;

TEST_CASE("ingest builds the document-term incidence") {
    std::istringstream in("Apple banana APPLE\nbanana! cherry\n\n   \n  date  \n");
    Corpus c = ingest_corpus(in);
    CHECK(c.n_docs == 3); // blank lines are not documents
    CHECK(c.terms == std::vector<std::string>{"apple", "banana", "cherry", "date"});

    BinaryVector banana = c.term_vector("banana");
    CHECK(banana.dim == 3);
    CHECK(banana.support == std::vector<uint32_t>{0, 1});
    CHECK(c.term_vector("apple").support == std::vector<uint32_t>{0});
    CHECK(c.term_vector("date").support == std::vector<uint32_t>{2});

    CHECK(c.has_term("cherry"));
    CHECK_FALSE(c.has_term("mango"));
    CHECK_THROWS_AS(c.term_vector("mango"), std::invalid_argument);
}

TEST_CASE("tokenization lowercases and splits on non-alphanumerics") {
    std::istringstream in("FOO-bar_baz99 foo\tbar;;x");
    Corpus c = ingest_corpus(in);
    CHECK(c.terms == std::vector<std::string>{"bar", "baz99", "foo", "x"});
    CHECK(c.term_vector("foo").support == std::vector<uint32_t>{0});
}

TEST_CASE("empty input gives an empty corpus") {
    std::istringstream in("\n   \n");
    Corpus c = ingest_corpus(in);
    CHECK(c.n_docs == 0);
    CHECK(c.terms.empty());
    CHECK_THROWS(c.term_vector("anything"));
}

TEST_CASE("path ingestion handles files and directories") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "coph_corpus_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    { std::ofstream(dir / "b.txt") << "beta gamma"; }
    { std::ofstream(dir / "a.txt") << "alpha beta"; }

    Corpus c = ingest_corpus_path(dir.string());
    CHECK(c.n_docs == 2);
    // Filename order: a.txt is document 0.
    CHECK(c.term_vector("alpha").support == std::vector<uint32_t>{0});
    CHECK(c.term_vector("beta").support == std::vector<uint32_t>{0, 1});
    CHECK(c.term_vector("gamma").support == std::vector<uint32_t>{1});

    fs::path file = dir / "lines.txt";
    { std::ofstream(file) << "one two\nthree\n"; }
    Corpus fc = ingest_corpus_path(file.string());
    CHECK(fc.n_docs == 2);
    CHECK(fc.has_term("three"));

    CHECK_THROWS(ingest_corpus_path((dir / "missing.txt").string()));
    fs::remove_all(dir);
}

TEST_CASE("csv export lists one term per row") {
    std::istringstream in("x y\ny z\n");
    Corpus c = ingest_corpus(in);
    std::ostringstream out;
    export_corpus_csv(c, out);
    CHECK(out.str() == "term,dim,indices\nx,2,0\ny,2,0;1\nz,2,1\n");
}
