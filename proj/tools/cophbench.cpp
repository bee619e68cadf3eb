// Benchmark and theory front-end.
//
//   cophbench run    --config FILE [--out CSV] [--plot SVG] [--seed N] [--jobs N]
//   cophbench theory --config FILE [--out CSV] [--seed N]
//                    [--override-theory-hypotheses]
//
// Config files are flat "key=value" lines; '#' starts a comment line.
// Exit codes: 0 success, 2 config validation failure.

#include <CLI11.hpp>

#include "coph/binary_vector.hpp"
#include "coph/corpus.hpp"
#include "coph/estimate.hpp"
#include "coph/rng.hpp"
#include "coph/theory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace coph;

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct Config {
    std::vector<std::pair<std::string, std::string>> items;

    std::vector<std::string> all(const std::string& key) const {
        std::vector<std::string> out;
        for (auto& [k, v] : items)
            if (k == key) out.push_back(v);
        return out;
    }
    std::optional<std::string> one(const std::string& key) const {
        auto v = all(key);
        if (v.size() > 1) throw std::invalid_argument("config: key '" + key + "' repeated");
        if (v.empty()) return std::nullopt;
        return v[0];
    }
    std::string need(const std::string& key) const {
        auto v = one(key);
        if (!v) throw std::invalid_argument("config: missing required key '" + key + "'");
        return *v;
    }
    bool has(const std::string& key) const { return !all(key).empty(); }
    void check_keys(const std::set<std::string>& allowed) const {
        for (auto& [k, v] : items)
            if (!allowed.count(k))
                throw std::invalid_argument("config: unknown key '" + k + "'");
    }
};

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not key=value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " has an empty key");
        cfg.items.emplace_back(key, val);
    }
    return cfg;
}

uint64_t parse_u64(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        if (s.empty() || s[0] == '-') throw std::invalid_argument("");
        unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config: key '" + key + "' needs a non-negative integer, got '" +
                                    s + "'");
    }
}

uint32_t parse_u32(const std::string& key, const std::string& s) {
    uint64_t v = parse_u64(key, s);
    if (v > UINT32_MAX)
        throw std::invalid_argument("config: key '" + key + "' out of range");
    return uint32_t(v);
}

double parse_double(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config: key '" + key + "' needs a number, got '" + s + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else
            cur += c;
    }
    out.push_back(trim(cur));
    return out;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---- plot -----------------------------------------------------------------

// Self-contained SVG: one MSE-vs-J curve per (scheme, K) series, log-scale
// MSE axis. A pure function of the stats rows (the CSV content).
std::string svg_plot(const std::vector<TrialStats>& rows) {
    struct Series {
        std::string scheme;
        uint32_t K;
        std::vector<std::pair<double, double>> pts; // (J, mse > 0)
    };
    std::vector<Series> series;
    std::vector<std::string> scheme_order;
    std::vector<uint32_t> k_order;
    for (const auto& r : rows) {
        if (!(r.mse > 0)) continue; // log scale cannot place zero
        Series* s = nullptr;
        for (auto& q : series)
            if (q.scheme == r.scheme && q.K == r.K) s = &q;
        if (!s) {
            series.push_back({r.scheme, r.K, {}});
            s = &series.back();
            bool seen = false;
            for (auto& n : scheme_order) seen |= n == r.scheme;
            if (!seen) scheme_order.push_back(r.scheme);
            seen = false;
            for (auto k : k_order) seen |= k == r.K;
            if (!seen) k_order.push_back(r.K);
        }
        s->pts.push_back({r.J, r.mse});
    }

    const double W = 760, H = 500, L = 70, R = 580, T = 30, B = 450;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (series.empty()) {
        out << "<text x=\"40\" y=\"60\" font-family=\"sans-serif\">no positive MSE values to "
               "plot</text>\n</svg>\n";
        return out.str();
    }

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto& s : series)
        for (auto [x, y] : s.pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmax == xmin) {
        xmin -= 0.05;
        xmax += 0.05;
    }
    double emin = std::floor(std::log10(ymin));
    double emax = std::ceil(std::log10(ymax));
    if (emax == emin) emax += 1;

    auto X = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (R - L); };
    auto Y = [&](double y) {
        return B - (std::log10(y) - emin) / (emax - emin) * (B - T);
    };

    // axes + decade grid
    out << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
    for (double e = emin; e <= emax + 0.5; e += 1) {
        double y = B - (e - emin) / (emax - emin) * (B - T);
        out << "<line x1=\"" << L << "\" y1=\"" << fmt("%.2f", y) << "\" x2=\"" << R
            << "\" y2=\"" << fmt("%.2f", y) << "\"/>\n";
    }
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (double e = emin; e <= emax + 0.5; e += 1) {
        double y = B - (e - emin) / (emax - emin) * (B - T);
        out << "<text x=\"" << L - 8 << "\" y=\"" << fmt("%.2f", y + 4)
            << "\" text-anchor=\"end\">1e" << int(e) << "</text>\n";
    }
    std::set<double> xticks;
    for (auto& s : series)
        for (auto [x, y] : s.pts) xticks.insert(x);
    for (double x : xticks)
        out << "<text x=\"" << fmt("%.2f", X(x)) << "\" y=\"" << B + 18
            << "\" text-anchor=\"middle\">" << fmt("%.3g", x) << "</text>\n";
    out << "<text x=\"" << (L + R) / 2 << "\" y=\"" << B + 38
        << "\" text-anchor=\"middle\">J</text>\n"
        << "<text x=\"18\" y=\"" << (T + B) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << (T + B) / 2
        << ")\">MSE</text>\n</g>\n";
    out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << R - L << "\" height=\""
        << B - T << "\" fill=\"none\" stroke=\"black\"/>\n";

    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                            "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    const char* dashes[] = {"", "6,3", "2,2", "8,3,2,3"};
    double ly = T + 14;
    for (auto& s : series) {
        size_t ci = 0, ki = 0;
        for (size_t i = 0; i < scheme_order.size(); ++i)
            if (scheme_order[i] == s.scheme) ci = i;
        for (size_t i = 0; i < k_order.size(); ++i)
            if (k_order[i] == s.K) ki = i;
        const char* color = colors[ci % 8];
        const char* dash = dashes[ki % 4];
        auto pts = s.pts;
        std::sort(pts.begin(), pts.end());
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"";
        if (dash[0]) out << " stroke-dasharray=\"" << dash << "\"";
        out << " points=\"";
        for (auto [x, y] : pts) out << fmt("%.2f", X(x)) << "," << fmt("%.2f", Y(y)) << " ";
        out << "\"/>\n";
        for (auto [x, y] : pts)
            out << "<circle cx=\"" << fmt("%.2f", X(x)) << "\" cy=\"" << fmt("%.2f", Y(y))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        out << "<line x1=\"" << R + 12 << "\" y1=\"" << fmt("%.2f", ly - 4) << "\" x2=\""
            << R + 40 << "\" y2=\"" << fmt("%.2f", ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"";
        if (dash[0]) out << " stroke-dasharray=\"" << dash << "\"";
        out << "/>\n<text x=\"" << R + 46 << "\" y=\"" << fmt("%.2f", ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.scheme << " K=" << s.K
            << "</text>\n";
        ly += 18;
    }
    out << "</svg>\n";
    return out.str();
}

// ---- run ------------------------------------------------------------------

struct CommonOpts {
    std::string config_path, out_path, plot_path;
    std::optional<uint64_t> seed;
    unsigned jobs = 1;
    bool override_hyp = false;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
}

int cmd_run(const CommonOpts& opt) {
    Config cfg = load_config(opt.config_path);
    cfg.check_keys({"D", "f", "J", "K", "M", "scheme", "n_trials", "seed", "out", "plot",
                    "corpus", "pair"});

    auto scheme_names = cfg.all("scheme");
    if (scheme_names.empty()) throw std::invalid_argument("config: no scheme= lines");
    std::vector<SchemeDesc> schemes;
    for (auto& n : scheme_names) schemes.push_back(SchemeDesc::parse(n));

    uint64_t n_trials = parse_u64("n_trials", cfg.need("n_trials"));
    if (n_trials == 0) throw std::invalid_argument("config: n_trials must be positive");

    uint64_t seed = opt.seed ? *opt.seed
                             : (cfg.has("seed") ? parse_u64("seed", *cfg.one("seed")) : 1);

    std::vector<uint32_t> Ks;
    for (auto& s : split(cfg.need("K"), ',')) Ks.push_back(parse_u32("K", s));
    std::optional<uint32_t> M_fixed;
    if (cfg.has("M")) M_fixed = parse_u32("M", *cfg.one("M"));

    struct Point {
        uint32_t K, M;
        BinaryVector v, w;
    };
    std::vector<Point> points;

    if (cfg.has("corpus")) {
        if (cfg.has("D") || cfg.has("f") || cfg.has("J"))
            throw std::invalid_argument("config: D/f/J are for synthetic mode; corpus mode "
                                        "takes pair= lines");
        auto pair_specs = cfg.all("pair");
        if (pair_specs.empty())
            throw std::invalid_argument("config: corpus mode needs at least one pair=term1,term2");
        Corpus corpus = ingest_corpus_path(*cfg.one("corpus"));
        std::vector<std::pair<BinaryVector, BinaryVector>> pairs;
        for (auto& spec : pair_specs) {
            auto parts = split(spec, ',');
            if (parts.size() != 2 || parts[0].empty() || parts[1].empty())
                throw std::invalid_argument("config: pair needs the form term1,term2, got '" +
                                            spec + "'");
            pairs.emplace_back(corpus.term_vector(parts[0]), corpus.term_vector(parts[1]));
        }
        for (uint32_t K : Ks)
            for (auto& [v, w] : pairs) points.push_back({K, M_fixed.value_or(K), v, w});
    } else {
        uint32_t D = parse_u32("D", cfg.need("D"));
        uint32_t f = parse_u32("f", cfg.need("f"));
        if (f == 0 || f > D) throw std::invalid_argument("config: need 1 <= f <= D");
        std::vector<double> Js;
        for (auto& s : split(cfg.need("J"), ',')) Js.push_back(parse_double("J", s));
        uint64_t gp = 0;
        for (uint32_t K : Ks)
            for (double J : Js) {
                if (!(J >= 0 && J <= 1))
                    throw std::invalid_argument("config: J must lie in [0, 1]");
                auto a = uint32_t(std::llround(J * f));
                uint64_t gseed = stream_key(seed, Stream::Misc, {gp++});
                auto [v, w] = make_pair_vectors(D, f, a, gseed);
                points.push_back({K, M_fixed.value_or(K), std::move(v), std::move(w)});
            }
    }

    std::vector<TrialStats> rows;
    uint64_t gp = 0;
    for (auto& pt : points) {
        uint64_t gseed = stream_key(seed, Stream::Misc, {gp++});
        TrialRun run = run_trials(pt.v, pt.w, schemes, pt.K, pt.M, n_trials, gseed, opt.jobs);
        for (auto& st : run.stats) rows.push_back(st);
    }

    std::string csv = TrialStats::csv_header();
    csv += "\n";
    for (auto& r : rows) csv += r.csv_row() + "\n";

    std::string out_path = !opt.out_path.empty()
                               ? opt.out_path
                               : (cfg.has("out") ? *cfg.one("out") : std::string());
    if (out_path.empty())
        std::cout << csv;
    else
        write_text(out_path, csv);

    std::string plot_path = !opt.plot_path.empty()
                                ? opt.plot_path
                                : (cfg.has("plot") ? *cfg.one("plot") : std::string());
    if (!plot_path.empty()) write_text(plot_path, svg_plot(rows));
    return 0;
}

// ---- theory ---------------------------------------------------------------

std::string rat_str(const BigRat& q) {
    return q.get_str();
}

int cmd_theory(const CommonOpts& opt) {
    Config cfg = load_config(opt.config_path);
    cfg.check_keys({"D", "K", "a", "f", "oracle", "oracle_trials", "seed", "rationals", "out"});

    uint32_t D = parse_u32("D", cfg.need("D"));
    uint32_t K = parse_u32("K", cfg.need("K"));
    uint32_t a = parse_u32("a", cfg.need("a"));
    uint32_t f = parse_u32("f", cfg.need("f"));
    bool rationals = cfg.has("rationals") && parse_u64("rationals", *cfg.one("rationals")) != 0;
    std::string oracle = cfg.has("oracle") ? *cfg.one("oracle") : std::string("none");
    if (oracle != "none" && oracle != "exhaustive" && oracle != "mc")
        throw std::invalid_argument("config: oracle must be none, exhaustive or mc");
    uint64_t oracle_trials =
        cfg.has("oracle_trials") ? parse_u64("oracle_trials", *cfg.one("oracle_trials")) : 200000;
    uint64_t seed = opt.seed ? *opt.seed
                             : (cfg.has("seed") ? parse_u64("seed", *cfg.one("seed")) : 1);

    TheoryConfig tc = TheoryConfig::make(D, K, a, f, opt.override_hyp);
    BigRat vc = variance_coph(tc);
    BigRat vr = variance_reden(tc);
    auto dist = empty_bin_dist(tc);

    std::ostringstream text;
    std::vector<std::pair<std::string, std::string>> csv_rows;
    auto put = [&](const std::string& key, double value, const BigRat* exact) {
        text << "  " << key;
        for (size_t i = key.size(); i < 24; ++i) text << ' ';
        text << ' ' << fmt("%.10g", value);
        if (exact && rationals) text << "  = " << rat_str(*exact);
        text << "\n";
        csv_rows.emplace_back(key, fmt("%.17g", value));
    };

    text << "configuration  D=" << D << " K=" << K << " d=" << tc.d() << " f=" << f
         << " a=" << a << " J=" << fmt("%.10g", tc.J().get_d()) << "\n";
    put("variance_coph", vc.get_d(), &vc);
    put("variance_reden", vr.get_d(), &vr);
    if (vc != 0) {
        BigRat ratio = vr / vc;
        put("reden_over_coph", ratio.get_d(), &ratio);
    }
    text << "  empty-bin distribution P[N = j]:\n";
    for (uint32_t j = 0; j <= K; ++j) {
        std::string key = "empty_bin_" + std::to_string(j);
        text << "    j=" << j;
        for (size_t i = std::to_string(j).size(); i < 6; ++i) text << ' ';
        text << fmt("%.10g", dist[j].get_d());
        if (rationals) text << "  = " << rat_str(dist[j]);
        text << "\n";
        csv_rows.emplace_back(key, fmt("%.17g", dist[j].get_d()));
    }

    if (oracle != "none") {
        OracleMode mode = oracle == "mc" ? OracleMode::MonteCarlo : OracleMode::Exhaustive;
        struct Check {
            const char* label;
            Family family;
            BigRat closed;
        } checks[] = {{"coph", Family::Coph, vc}, {"reden", Family::OphReDen, vr}};
        for (auto& c : checks) {
            OracleResult r = brute_force_variance(tc, c.family, mode, oracle_trials, seed);
            text << "  oracle " << oracle << " " << c.label << ":\n";
            std::string prefix = std::string("oracle_") + c.label + "_";
            put(prefix + "mean", r.mean, mode == OracleMode::Exhaustive ? &r.exact_mean : nullptr);
            put(prefix + "variance", r.variance,
                mode == OracleMode::Exhaustive ? &r.exact_variance : nullptr);
            if (mode == OracleMode::MonteCarlo) {
                put(prefix + "se_variance", r.se_variance, nullptr);
                double delta = r.variance - c.closed.get_d();
                put(prefix + "delta", delta, nullptr);
                if (r.se_variance > 0) put(prefix + "delta_over_se", delta / r.se_variance, nullptr);
            } else {
                BigRat delta = r.exact_variance - c.closed;
                put(prefix + "delta", delta.get_d(), &delta);
                text << "    exact match: " << (delta == 0 ? "yes" : "NO") << "\n";
            }
        }
    }

    std::string csv = "quantity,value\n";
    for (auto& [k, v] : csv_rows) csv += k + "," + v + "\n";

    std::cout << text.str();
    std::string out_path = !opt.out_path.empty()
                               ? opt.out_path
                               : (cfg.has("out") ? *cfg.one("out") : std::string());
    if (out_path.empty())
        std::cout << "\n" << csv;
    else
        write_text(out_path, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minwise hashing benchmark: sketch comparisons and exact variance reports"};
    app.require_subcommand(1);
    CommonOpts opt;
    uint64_t seed_val = 0;

    auto add_common = [&](CLI::App* sc, bool with_plot) {
        sc->add_option("--config", opt.config_path, "key=value config file")
            ->required();
        sc->add_option("--out", opt.out_path, "write CSV here instead of stdout");
        if (with_plot) sc->add_option("--plot", opt.plot_path, "write an SVG plot here");
        sc->add_option("--seed", seed_val, "override the config seed");
        sc->add_option("--jobs", opt.jobs, "worker threads for trials");
        sc->add_flag("--override-theory-hypotheses", opt.override_hyp,
                     "evaluate outside the closed forms' derivation range");
    };
    CLI::App* run_sc = app.add_subcommand("run", "Monte-Carlo scheme comparison over a grid");
    add_common(run_sc, true);
    CLI::App* theory_sc = app.add_subcommand("theory", "exact variance report for one config");
    add_common(theory_sc, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    CLI::App* active = run_sc->parsed() ? run_sc : theory_sc;
    if (active->count("--seed")) opt.seed = seed_val;
    try {
        return run_sc->parsed() ? cmd_run(opt) : cmd_theory(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
