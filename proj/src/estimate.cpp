#include "coph/estimate.hpp"

#include "coph/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace coph {

void Moments::add(double x) {
    uint64_t n1 = n;
    n += 1;
    double nn = double(n);
    double delta = x - m1;
    double dn = delta / nn;
    double dn2 = dn * dn;
    double t1 = delta * dn * double(n1);
    m1 += dn;
    m4 += t1 * dn2 * (nn * nn - 3.0 * nn + 3.0) + 6.0 * dn2 * m2 - 4.0 * dn * m3;
    m3 += t1 * dn * (nn - 2.0) - 3.0 * dn * m2;
    m2 += t1;
}

void Moments::merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
        *this = o;
        return;
    }
    double na = double(n), nb = double(o.n), nt = na + nb;
    double delta = o.m1 - m1;
    double d2 = delta * delta;
    double m4t = m4 + o.m4 +
                 d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (nt * nt * nt) +
                 6.0 * d2 * (na * na * o.m2 + nb * nb * m2) / (nt * nt) +
                 4.0 * delta * (na * o.m3 - nb * m3) / nt;
    double m3t = m3 + o.m3 + d2 * delta * na * nb * (na - nb) / (nt * nt) +
                 3.0 * delta * (na * o.m2 - nb * m2) / nt;
    m1 += nb / nt * delta;
    m2 = m2 + o.m2 + d2 * na * nb / nt;
    m3 = m3t;
    m4 = m4t;
    n += o.n;
}

double Moments::se_mean() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / (double(n) * double(n - 1)));
}

double Moments::se_variance() const {
    if (n < 2) return 0.0;
    double var = m2 / double(n);
    double spread = m4 / double(n) - var * var;
    return spread > 0 ? std::sqrt(spread / double(n)) : 0.0;
}

double estimate_jaccard(const Sketch& sv, const Sketch& sw) {
    if (sv.scheme != sw.scheme || sv.D != sw.D || sv.K != sw.K || sv.M != sw.M ||
        sv.p != sw.p || sv.seed != sw.seed)
        throw std::invalid_argument("estimate_jaccard: sketches are not comparable");
    if (sv.M == 0 || sv.values.size() != sv.M || sw.values.size() != sw.M)
        throw std::invalid_argument("estimate_jaccard: malformed sketch");

    const auto& k = kern::ops();
    if (sv.scheme.family == Family::OphRaw) {
        size_t both = 0, eq = 0;
        k.count_eq_valid_u64(sv.values.data(), sw.values.data(), sv.M, EMPTY_SLOT, &both,
                             &eq);
        if (both == 0)
            throw std::runtime_error("estimate_jaccard: no slot valid on both sides");
        return double(eq) / double(both);
    }
    return double(k.count_eq_u64(sv.values.data(), sw.values.data(), sv.M)) / double(sv.M);
}

const char* TrialStats::csv_header() {
    return "scheme,J,D,f,K,M,n_trials,mean,bias,variance,mse,stderr";
}

std::string TrialStats::csv_row() const {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%u,%u,%u,%u,%llu,%.17g,%.17g,%.17g,%.17g,%.17g",
                  scheme.c_str(), J, D, f, K, M, (unsigned long long)n_trials, mean, bias,
                  variance, mse, stderr_mean);
    return buf;
}

} // namespace coph
