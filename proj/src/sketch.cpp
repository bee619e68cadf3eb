#include "coph/sketch.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace coph {

std::string SchemeDesc::name() const {
    switch (family) {
        case Family::MinHash:
            return "minhash";
        case Family::CMinHash:
            if (sigma == SigmaKind::ReusePi) return "cminhash-pp";
            if (sigma == SigmaKind::TwoU) return "cminhash-2u";
            if (pi == PiKind::TwoU) return "cminhash-s2u";
            return "cminhash";
        case Family::OphRaw:
            return "oph-raw";
        case Family::OphCopy:
            return "oph-copy";
        case Family::OphReDen:
            return sigma == SigmaKind::TwoU ? "reden-2u" : "reden";
        case Family::Coph:
            return sigma == SigmaKind::TwoU ? "coph-2u" : "coph";
    }
    throw std::logic_error("bad family");
}

SchemeDesc SchemeDesc::parse(const std::string& s) {
    SchemeDesc d;
    if (s == "minhash") {
        d.family = Family::MinHash;
    } else if (s == "cminhash") {
        d.family = Family::CMinHash;
    } else if (s == "cminhash-pp") {
        d.family = Family::CMinHash;
        d.sigma = SigmaKind::ReusePi;
    } else if (s == "cminhash-2u") {
        d.family = Family::CMinHash;
        d.sigma = SigmaKind::TwoU;
    } else if (s == "cminhash-s2u") {
        d.family = Family::CMinHash;
        d.pi = PiKind::TwoU;
    } else if (s == "oph-raw") {
        d.family = Family::OphRaw;
    } else if (s == "oph-copy") {
        d.family = Family::OphCopy;
    } else if (s == "reden") {
        d.family = Family::OphReDen;
    } else if (s == "reden-2u") {
        d.family = Family::OphReDen;
        d.sigma = SigmaKind::TwoU;
    } else if (s == "coph") {
        d.family = Family::Coph;
    } else if (s == "coph-2u") {
        d.family = Family::Coph;
        d.sigma = SigmaKind::TwoU;
    } else {
        throw std::invalid_argument("unknown scheme: " + s);
    }
    return d;
}

namespace {
void put_u64(std::ostream& out, uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = (unsigned char)(v >> (8 * i));
    out.write((const char*)buf, 8);
}

uint64_t get_u64(std::istream& in) {
    unsigned char buf[8];
    in.read((char*)buf, 8);
    if (!in) throw std::runtime_error("truncated sketch values");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(buf[i]) << (8 * i);
    return v;
}

uint64_t parse_u64(const std::string& s, const std::string& key) {
    size_t pos = 0;
    uint64_t v;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("bad value for " + key);
    }
    if (pos != s.size()) throw std::runtime_error("bad value for " + key);
    return v;
}
} // namespace

void Sketch::save(std::ostream& out) const {
    out << "scheme=" << scheme.name() << '\n'
        << "D=" << D << '\n'
        << "K=" << K << '\n'
        << "M=" << M << '\n'
        << "p=" << p << '\n'
        << "seed=" << seed << '\n'
        << "---\n";
    for (uint64_t v : values) put_u64(out, v);
}

Sketch Sketch::load(std::istream& in) {
    Sketch s;
    std::map<std::string, std::string> kv;
    std::string line;
    bool sep = false;
    while (std::getline(in, line)) {
        if (line == "---") {
            sep = true;
            break;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("malformed sketch header line");
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    if (!sep) throw std::runtime_error("missing sketch header separator");
    for (const char* key : {"scheme", "D", "K", "M", "p", "seed"})
        if (!kv.count(key)) throw std::runtime_error(std::string("missing sketch field ") + key);
    s.scheme = SchemeDesc::parse(kv["scheme"]);
    s.D = uint32_t(parse_u64(kv["D"], "D"));
    s.K = uint32_t(parse_u64(kv["K"], "K"));
    s.M = uint32_t(parse_u64(kv["M"], "M"));
    s.p = parse_u64(kv["p"], "p");
    s.seed = parse_u64(kv["seed"], "seed");
    s.values.resize(s.M);
    for (uint32_t i = 0; i < s.M; ++i) s.values[i] = get_u64(in);
    return s;
}

void Sketch::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    save(out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Sketch Sketch::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return load(in);
}

} // namespace coph
