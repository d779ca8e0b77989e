#include "lnc/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace lnc::kernels {

#if LNC_HAVE_AVX2_TU
namespace detail {
const Ops& avx2_ops_impl();
}
#endif

bool avx2_available() {
#if LNC_HAVE_AVX2_TU && (defined(__x86_64__) || defined(_M_X64))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const Ops* select(const char* pref) {
    if (pref && std::strcmp(pref, "scalar") == 0) return &scalar_ops();
    if (pref && std::strcmp(pref, "avx2") == 0) {
#if LNC_HAVE_AVX2_TU
        return avx2_available() ? &detail::avx2_ops_impl() : nullptr;
#else
        return nullptr;
#endif
    }
    if (pref && *pref && std::strcmp(pref, "auto") != 0)
        return nullptr;  // unknown names are an error, not a fallback
#if LNC_HAVE_AVX2_TU
    if (avx2_available()) return &detail::avx2_ops_impl();
#endif
    return &scalar_ops();
}

const Ops*& active() {
    // A bad LNC_KERNELS value silently means auto; force() is the strict path.
    static const Ops* a = [] {
        const Ops* s = select(std::getenv("LNC_KERNELS"));
        return s ? s : select(nullptr);
    }();
    return a;
}

}  // namespace

const Ops& ops() { return *active(); }

bool force(const char* name) {
    const Ops* s = select(name);
    if (!s) return false;
    active() = s;
    return true;
}

}  // namespace lnc::kernels
