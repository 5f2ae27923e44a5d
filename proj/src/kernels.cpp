#include "qtrans/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qtrans::kernels {

extern const Ops scalar_ops;

#if defined(QTRANS_HAVE_AVX2)
extern const Ops avx2_ops;
#endif
#if defined(__aarch64__)
extern const Ops neon_ops;
#endif

namespace {

bool cpu_supports(Backend backend)
{
    switch (backend) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(QTRANS_HAVE_AVX2)
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return true;  // NEON is baseline on aarch64
#else
            return false;
#endif
    }
    return false;
}

Backend pick_default()
{
    if (const char* env = std::getenv("QTRANS_KERNELS")) {
        std::string requested(env);
        for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
            if (requested == name(b) && cpu_supports(b)) return b;
        // Unknown or unavailable request falls through to autodetection.
    }
    if (cpu_supports(Backend::avx2)) return Backend::avx2;
    if (cpu_supports(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

Backend& active_backend()
{
    static Backend backend = pick_default();
    return backend;
}

}  // namespace

Backend active() { return active_backend(); }

bool available(Backend backend) { return cpu_supports(backend); }

const Ops* ops_for(Backend backend)
{
    if (!cpu_supports(backend)) return nullptr;
    switch (backend) {
        case Backend::scalar:
            return &scalar_ops;
        case Backend::avx2:
#if defined(QTRANS_HAVE_AVX2)
            return &avx2_ops;
#else
            return nullptr;
#endif
        case Backend::neon:
#if defined(__aarch64__)
            return &neon_ops;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const Ops& ops() { return *ops_for(active_backend()); }

void force(Backend backend)
{
    if (!cpu_supports(backend))
        throw std::runtime_error("kernels: backend " + name(backend) + " not available");
    active_backend() = backend;
}

std::string name(Backend backend)
{
    switch (backend) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "unknown";
}

}  // namespace qtrans::kernels
