#include "kernels_internal.hpp"

#include <cstdlib>
#include <cstring>

namespace coph::kern {

namespace {

const Ops* pick_auto() {
    if (avx2_available()) return &avx2_ops();
    if (neon_available()) return &neon_ops();
    return &scalar_ops();
}

struct Selection {
    const Ops* ops;
    const char* name;
};

Selection initial() {
    const char* env = std::getenv("COPH_KERNELS");
    if (env) {
        if (!std::strcmp(env, "scalar")) return {&scalar_ops(), "scalar"};
        if (!std::strcmp(env, "avx2") && avx2_available()) return {&avx2_ops(), "avx2"};
        if (!std::strcmp(env, "neon") && neon_available()) return {&neon_ops(), "neon"};
        // Unknown or unavailable request: fall through to auto.
    }
    if (avx2_available()) return {&avx2_ops(), "avx2"};
    if (neon_available()) return {&neon_ops(), "neon"};
    return {&scalar_ops(), "scalar"};
}

Selection& current() {
    static Selection sel = initial();
    return sel;
}

} // namespace

const Ops& ops() { return *current().ops; }

const char* active_name() { return current().name; }

bool force(const char* name) {
    if (!std::strcmp(name, "scalar")) {
        current() = {&scalar_ops(), "scalar"};
        return true;
    }
    if (!std::strcmp(name, "avx2")) {
        if (!avx2_available()) return false;
        current() = {&avx2_ops(), "avx2"};
        return true;
    }
    if (!std::strcmp(name, "neon")) {
        if (!neon_available()) return false;
        current() = {&neon_ops(), "neon"};
        return true;
    }
    if (!std::strcmp(name, "auto")) {
        const Ops* o = pick_auto();
        current() = {o, o == &scalar_ops() ? "scalar" : (avx2_available() ? "avx2" : "neon")};
        return true;
    }
    return false;
}

} // namespace coph::kern
