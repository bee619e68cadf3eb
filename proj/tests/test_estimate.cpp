#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coph/estimate.hpp"
#include "coph/minhash.hpp"
#include "coph/oph.hpp"
#include "coph/rng.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace coph;

namespace {

const std::vector<const char*> kReplayable{"cminhash", "cminhash-pp", "cminhash-2u",
                                           "cminhash-s2u", "oph-raw",  "oph-copy",
                                           "reden",    "reden-2u",     "coph",
                                           "coph-2u"};

Sketch library_sketch(const BinaryVector& v, const SchemeDesc& d, uint32_t K, uint32_t M,
                      uint64_t seed) {
    if (d.family == Family::MinHash) return minhash_standard(v, M, seed);
    if (d.family == Family::CMinHash) return cminhash(v, M, seed, d.sigma, d.pi);
    return oph_sketch(v, d, K, M, seed);
}

} // namespace

TEST_CASE("moments match direct computation and merge associatively") {
    Rng rng = make_stream(8, Stream::Misc, {0});
    std::vector<double> xs(500);
    for (auto& x : xs) x = rng.unit() * 3 - 1;

    Moments m;
    for (double x : xs) m.add(x);
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= double(xs.size());
    double v2 = 0, v4 = 0;
    for (double x : xs) {
        double c = x - mean;
        v2 += c * c;
        v4 += c * c * c * c;
    }
    CHECK(m.n == xs.size());
    CHECK(m.mean() == doctest::Approx(mean).epsilon(1e-12));
    CHECK(m.variance() == doctest::Approx(v2 / xs.size()).epsilon(1e-10));
    CHECK(m.fourth() == doctest::Approx(v4 / xs.size()).epsilon(1e-9));
    CHECK(m.se_mean() ==
          doctest::Approx(std::sqrt(v2 / (xs.size() * (xs.size() - 1.0)))).epsilon(1e-10));

    // Merging chunked accumulators reproduces the single-pass result.
    Moments a, b, c;
    for (size_t i = 0; i < 150; ++i) a.add(xs[i]);
    for (size_t i = 150; i < 170; ++i) b.add(xs[i]);
    for (size_t i = 170; i < xs.size(); ++i) c.add(xs[i]);
    Moments ab = a;
    ab.merge(b);
    ab.merge(c);
    Moments bc = b;
    bc.merge(c);
    Moments abc = a;
    abc.merge(bc);
    for (const Moments* mm : {&ab, &abc}) {
        CHECK(mm->n == m.n);
        CHECK(mm->mean() == doctest::Approx(m.mean()).epsilon(1e-12));
        CHECK(mm->variance() == doctest::Approx(m.variance()).epsilon(1e-10));
        CHECK(mm->fourth() == doctest::Approx(m.fourth()).epsilon(1e-9));
    }
    Moments empty;
    Moments d = m;
    d.merge(empty);
    CHECK(d.n == m.n);
    CHECK(d.mean() == m.mean());
    empty.merge(m);
    CHECK(empty.mean() == m.mean());
}

TEST_CASE("estimate_jaccard validates comparability and handles raw empties") {
    auto [v, w] = make_pair_vectors(32, 12, 6, 4);
    SchemeDesc coph_d = SchemeDesc::parse("coph");
    Sketch a = oph_sketch(v, coph_d, 8, 8, 10);
    Sketch b = oph_sketch(w, coph_d, 8, 8, 10);
    double est = estimate_jaccard(a, b);
    CHECK(est >= 0.0);
    CHECK(est <= 1.0);

    Sketch bad = b;
    bad.seed = 11;
    CHECK_THROWS_AS(estimate_jaccard(a, bad), std::invalid_argument);
    bad = b;
    bad.D = 16;
    CHECK_THROWS_AS(estimate_jaccard(a, bad), std::invalid_argument);
    bad = b;
    bad.scheme = SchemeDesc::parse("reden");
    CHECK_THROWS_AS(estimate_jaccard(a, bad), std::invalid_argument);
    bad = b;
    bad.values.pop_back();
    bad.M = 7;
    CHECK_THROWS_AS(estimate_jaccard(a, bad), std::invalid_argument);

    // Raw: both-empty slots drop out of the denominator.
    Sketch r1, r2;
    r1.scheme = r2.scheme = SchemeDesc::parse("oph-raw");
    r1.D = r2.D = 16;
    r1.K = r2.K = 4;
    r1.M = r2.M = 4;
    r1.seed = r2.seed = 1;
    r1.values = {3, EMPTY_SLOT, 5, EMPTY_SLOT};
    r2.values = {3, 2, 6, EMPTY_SLOT};
    CHECK(estimate_jaccard(r1, r2) == 0.5); // slots 0,2 usable, slot 0 agrees
    r2.values = {EMPTY_SLOT, 2, EMPTY_SLOT, EMPTY_SLOT};
    CHECK_THROWS_AS(estimate_jaccard(r1, r2), std::runtime_error);
}

TEST_CASE("the trial engine reproduces the library sketches slot for slot") {
    auto [v, w] = make_pair_vectors(32, 12, 6, 9);
    const uint32_t K = 8, M = 8;
    const uint64_t seed = 77;
    uint64_t tseed = stream_key(seed, Stream::Trial, {0});
    for (const char* name : kReplayable) {
        SchemeDesc d = SchemeDesc::parse(name);
        TrialRun r = run_trials(v, w, {d}, K, M, 1, seed);
        double lib =
            estimate_jaccard(library_sketch(v, d, K, M, tseed), library_sketch(w, d, K, M, tseed));
        CHECK_MESSAGE(r.stats[0].mean == lib, name);
    }
}

TEST_CASE("multi-trial statistics equal the averaged library estimates") {
    auto [v, w] = make_pair_vectors(32, 12, 6, 9);
    const uint32_t K = 8, M = 8;
    const uint64_t seed = 31, n = 40;
    for (const char* name : {"coph", "reden", "cminhash"}) {
        SchemeDesc d = SchemeDesc::parse(name);
        TrialRun r = run_trials(v, w, {d}, K, M, n, seed);
        Moments manual;
        for (uint64_t t = 0; t < n; ++t) {
            uint64_t ts = stream_key(seed, Stream::Trial, {t});
            manual.add(
                estimate_jaccard(library_sketch(v, d, K, M, ts), library_sketch(w, d, K, M, ts)));
        }
        CHECK(r.stats[0].mean == doctest::Approx(manual.mean()).epsilon(1e-13));
        CHECK(r.stats[0].variance == doctest::Approx(manual.variance()).epsilon(1e-10));
        CHECK(r.stats[0].stderr_mean == doctest::Approx(manual.se_mean()).epsilon(1e-10));
        CHECK(r.stats[0].n_trials == n);
        CHECK(r.stats[0].J == jaccard_exact(v, w).value());
        CHECK(r.stats[0].mse ==
              doctest::Approx(r.stats[0].variance + r.stats[0].bias * r.stats[0].bias));
    }
}

TEST_CASE("results do not depend on the thread partition") {
    auto [v, w] = make_pair_vectors(64, 20, 10, 2);
    std::vector<SchemeDesc> schemes{SchemeDesc::parse("coph"), SchemeDesc::parse("reden"),
                                    SchemeDesc::parse("oph-raw")};
    TrialRun r1 = run_trials(v, w, schemes, 8, 8, 97, 5, 1);
    for (unsigned jobs : {2u, 3u}) {
        TrialRun rj = run_trials(v, w, schemes, 8, 8, 97, 5, jobs);
        for (size_t i = 0; i < schemes.size(); ++i) {
            if (schemes[i].family == Family::OphRaw) {
                CHECK(rj.stats[i].mean == doctest::Approx(r1.stats[i].mean).epsilon(1e-12));
                CHECK(rj.stats[i].variance ==
                      doctest::Approx(r1.stats[i].variance).epsilon(1e-9));
            } else {
                // Integer accumulators: identical regardless of partition.
                CHECK(rj.stats[i].mean == r1.stats[i].mean);
                CHECK(rj.stats[i].variance == r1.stats[i].variance);
                CHECK(rj.stats[i].stderr_mean == r1.stats[i].stderr_mean);
            }
        }
        CHECK(rj.pairs[0].scheme_a == "coph");
        CHECK(rj.pairs[0].scheme_b == "reden");
        CHECK(rj.pairs[0].diff.n == 97);
        CHECK(rj.pairs[0].diff.mean() == r1.pairs[0].diff.mean());
    }
}

TEST_CASE("run_trials argument validation") {
    auto [v, w] = make_pair_vectors(32, 12, 6, 1);
    std::vector<SchemeDesc> coph_s{SchemeDesc::parse("coph")};
    CHECK_THROWS_AS(run_trials(v, w, {}, 8, 8, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_trials(v, w, coph_s, 8, 8, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_trials(v, w, coph_s, 8, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_trials(v, w, coph_s, 5, 8, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_trials(v, w, {SchemeDesc::parse("oph-copy")}, 8, 16, 10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_trials(v, w, {SchemeDesc::parse("cminhash")}, 8, 64, 10, 1),
                    std::invalid_argument); // M > D
    BinaryVector empty = make_vector(32, {});
    CHECK_THROWS_AS(run_trials(v, empty, coph_s, 8, 8, 10, 1), std::invalid_argument);
    BinaryVector wrongdim = make_vector(16, {1});
    CHECK_THROWS_AS(run_trials(v, wrongdim, coph_s, 8, 8, 10, 1), std::invalid_argument);
}

TEST_CASE("csv row shape") {
    auto [v, w] = make_pair_vectors(32, 12, 6, 1);
    TrialRun r = run_trials(v, w, {SchemeDesc::parse("coph")}, 8, 8, 5, 1);
    std::string row = r.stats[0].csv_row();
    size_t commas = 0;
    for (char c : row) commas += (c == ',');
    std::string header = TrialStats::csv_header();
    size_t hcommas = 0;
    for (char c : header) hcommas += (c == ',');
    CHECK(commas == hcommas);
    CHECK(row.substr(0, 5) == "coph,");
}
