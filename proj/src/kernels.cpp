#include "gbf/kernels.hpp"

#include <cstdlib>
#include <string>

#include "gbf/errors.hpp"

namespace gbf::kernels {

#if GBF_HAVE_AVX2
const Ops* avx2_ops() noexcept;
#endif
#if GBF_HAVE_NEON
const Ops* neon_ops() noexcept;
#endif

const Ops* ops_for(Backend backend) noexcept {
    switch (backend) {
        case Backend::scalar:
            return &scalar_ops();
        case Backend::avx2:
#if GBF_HAVE_AVX2
            if (__builtin_cpu_supports("avx2")) return avx2_ops();
#endif
            return nullptr;
        case Backend::neon:
#if GBF_HAVE_NEON
            return neon_ops();
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const char* backend_name(Backend backend) noexcept {
    switch (backend) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

namespace {

Backend detect() {
    if (ops_for(Backend::avx2)) return Backend::avx2;
    if (ops_for(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

Backend resolve() {
    const char* env = std::getenv("GBF_KERNELS");
    if (env == nullptr || *env == '\0' || std::string(env) == "auto") {
        return detect();
    }
    const std::string name(env);
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
        if (name == backend_name(b)) {
            if (ops_for(b) == nullptr) {
                throw ValidationError("GBF_KERNELS=" + name +
                                      " is not available on this machine");
            }
            return b;
        }
    }
    throw ValidationError("GBF_KERNELS=" + name +
                          " is not one of: auto, scalar, avx2, neon");
}

}  // namespace

Backend active_backend() {
    static const Backend backend = resolve();
    return backend;
}

const Ops& active() {
    static const Ops& ops = *ops_for(active_backend());
    return ops;
}

}  // namespace gbf::kernels
