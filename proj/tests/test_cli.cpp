#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "coph_cli_test";

int run_cli(const std::string& args) {
    std::string cmd = std::string(COPHBENCH_PATH) + " " + args + " > " +
                      (kDir / "stdout.txt").string() + " 2> " + (kDir / "stderr.txt").string();
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l))
        if (!l.empty()) out.push_back(l);
    return out;
}

size_t fields_of(const std::string& row) {
    size_t n = 1;
    for (char c : row) n += (c == ',');
    return n;
}

struct Setup {
    Setup() {
        fs::remove_all(kDir);
        fs::create_directories(kDir);
    }
} setup;

} // namespace

TEST_CASE("run: synthetic grid produces a parseable csv, stable across reruns and jobs") {
    fs::path cfg = kDir / "run.cfg";
    fs::path out = kDir / "out.csv";
    put(cfg, "D=64\nf=20\nJ=0.25,0.5\nK=4\nscheme=coph\nscheme=reden\nn_trials=40\nseed=3\n"
             "# comment line\n");
    REQUIRE(run_cli("run --config " + cfg.string() + " --out " + out.string()) == 0);
    std::string first = slurp(out);
    auto rows = lines_of(first);
    REQUIRE(rows.size() == 1 + 2 * 2); // header + schemes x J values
    CHECK(rows[0] == "scheme,J,D,f,K,M,n_trials,mean,bias,variance,mse,stderr");
    for (size_t i = 1; i < rows.size(); ++i) CHECK(fields_of(rows[i]) == 12);
    CHECK(rows[1].substr(0, 5) == "coph,");
    CHECK(rows[2].substr(0, 6) == "reden,");

    REQUIRE(run_cli("run --config " + cfg.string() + " --out " + out.string()) == 0);
    CHECK(slurp(out) == first);
    REQUIRE(run_cli("run --config " + cfg.string() + " --out " + out.string() + " --jobs 2") ==
            0);
    CHECK(slurp(out) == first);

    // Seed on the command line overrides the config and moves the numbers.
    REQUIRE(run_cli("run --config " + cfg.string() + " --out " + out.string() + " --seed 4") ==
            0);
    CHECK(slurp(out) != first);
}

TEST_CASE("run: plot output is an svg") {
    fs::path cfg = kDir / "plot.cfg";
    fs::path out = kDir / "plot.csv";
    fs::path svg = kDir / "plot.svg";
    put(cfg, "D=64\nf=20\nJ=0.2,0.5,0.8\nK=4,8\nscheme=coph\nscheme=reden\nn_trials=30\nseed=5\n");
    REQUIRE(run_cli("run --config " + cfg.string() + " --out " + out.string() + " --plot " +
                    svg.string()) == 0);
    std::string s = slurp(svg);
    REQUIRE(!s.empty());
    CHECK(s.substr(0, 4) == "<svg");
    CHECK(s.find("</svg>") != std::string::npos);
    CHECK(s.find("polyline") != std::string::npos);
    CHECK(lines_of(slurp(out)).size() == 1 + 2 * 3 * 2); // header + schemes x J x K
}

TEST_CASE("run: corpus pairs flow through ingestion") {
    fs::path corpus = kDir / "docs.txt";
    put(corpus, "alpha beta\nalpha\nbeta gamma\nalpha beta\n");
    fs::path cfg = kDir / "corpus.cfg";
    fs::path out = kDir / "corpus.csv";
    put(cfg, "corpus=" + corpus.string() +
                 "\npair=alpha,beta\nK=2\nscheme=coph\nscheme=minhash\nn_trials=25\nseed=9\n");
    REQUIRE(run_cli("run --config " + cfg.string() + " --out " + out.string()) == 0);
    auto rows = lines_of(slurp(out));
    REQUIRE(rows.size() == 3);
    // alpha = {0,1,3}, beta = {0,2,3}: union 4, intersection 2 in 4 docs.
    CHECK(rows[1].find(",0.5,4,4,") != std::string::npos);

    fs::path bad = kDir / "corpus_bad.cfg";
    put(bad, "corpus=" + corpus.string() + "\npair=alpha,beta\nD=8\nK=2\nscheme=coph\nn_trials=5\n");
    CHECK(run_cli("run --config " + bad.string()) == 2);
}

TEST_CASE("run: invalid inputs exit with status 2") {
    fs::path out = kDir / "x.csv";
    auto bad_cfg = [&](const std::string& name, const std::string& body) {
        fs::path p = kDir / name;
        put(p, body);
        return run_cli("run --config " + p.string() + " --out " + out.string());
    };
    CHECK(bad_cfg("b1.cfg", "D=64\nf=20\nJ=0.5\nK=4\nscheme=coph\nn_trials=0\n") == 2);
    CHECK(bad_cfg("b2.cfg", "D=64\nf=20\nJ=0.5\nK=4\nscheme=coph\nn_trials=5\nwat=1\n") == 2);
    CHECK(bad_cfg("b3.cfg", "D=64\nf=20\nJ=0.5\nK=4\nscheme=zzz\nn_trials=5\n") == 2);
    CHECK(bad_cfg("b4.cfg", "D=64\nf=20\nJ=1.5\nK=4\nscheme=coph\nn_trials=5\n") == 2);
    CHECK(bad_cfg("b5.cfg", "D=64\nf=80\nJ=0.5\nK=4\nscheme=coph\nn_trials=5\n") == 2);
    CHECK(bad_cfg("b6.cfg", "D=64\nf=20\nJ=0.5\nK=4\nscheme=coph\nn_trials=-3\n") == 2);
    CHECK(run_cli("run --config " + (kDir / "missing.cfg").string()) == 2);
}

TEST_CASE("theory: closed forms, oracle agreement and exact rationals") {
    fs::path cfg = kDir / "th.cfg";
    put(cfg, "D=12\nK=2\na=2\nf=5\noracle=exhaustive\nrationals=1\n");
    REQUIRE(run_cli("theory --config " + cfg.string()) == 0);
    std::string text = slurp(kDir / "stdout.txt");
    CHECK(text.find("119/1320") != std::string::npos);
    CHECK(text.find("199/2200") != std::string::npos);
    CHECK(text.find("exact match: yes") != std::string::npos);
    CHECK(text.find("exact match: NO") == std::string::npos);

    fs::path csv = kDir / "th.csv";
    REQUIRE(run_cli("theory --config " + cfg.string() + " --out " + csv.string()) == 0);
    auto rows = lines_of(slurp(csv));
    REQUIRE(rows.size() >= 4);
    CHECK(rows[0] == "quantity,value");
    for (size_t i = 1; i < rows.size(); ++i) CHECK(fields_of(rows[i]) == 2);
}

TEST_CASE("theory: hypothesis gate honours the override flag") {
    fs::path cfg = kDir / "ovr.cfg";
    put(cfg, "D=8\nK=4\na=2\nf=5\n");
    CHECK(run_cli("theory --config " + cfg.string()) == 2);
    std::string err = slurp(kDir / "stderr.txt");
    CHECK(err.find("K^2 <= D") != std::string::npos);
    CHECK(run_cli("theory --config " + cfg.string() + " --override-theory-hypotheses") == 0);
}

TEST_CASE("bad command lines exit nonzero") {
    CHECK(run_cli("") != 0);
    CHECK(run_cli("frobnicate") != 0);
    CHECK(run_cli("run") != 0); // --config is required
}
