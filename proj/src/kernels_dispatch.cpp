#include "danlab/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "danlab/errors.hpp"

namespace danlab::kernels {

namespace detail {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

}  // namespace detail

namespace {

Impl detect() {
    if (const char* env = std::getenv("DANLAB_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return Impl::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (!detail::avx2_available())
                throw UsageError("DANLAB_KERNEL=avx2 but AVX2 is not available");
            return Impl::avx2;
        }
    }
    return detail::avx2_available() ? Impl::avx2 : Impl::scalar;
}

Impl& current() {
    static Impl impl = detect();
    return impl;
}

}  // namespace

Impl active_impl() { return current(); }

const char* impl_name(Impl i) { return i == Impl::avx2 ? "avx2" : "scalar"; }

void force_impl(Impl i) {
    if (i == Impl::avx2 && !detail::avx2_available())
        throw UsageError("AVX2 kernels not available on this CPU");
    current() = i;
}

void reset_impl() { current() = detect(); }

void eval_abs2(const HitPoly& p, const double* t_re, const double* t_im, size_t n,
               double* out_abs2) {
#if defined(__x86_64__) || defined(_M_X64)
    if (current() == Impl::avx2)
        return detail::eval_abs2_avx2(p, t_re, t_im, n, out_abs2);
#endif
    detail::eval_abs2_scalar(p, t_re, t_im, n, out_abs2);
}

size_t count_hits(const HitPoly& p, const double* t_re, const double* t_im, size_t n, double r2) {
#if defined(__x86_64__) || defined(_M_X64)
    if (current() == Impl::avx2)
        return detail::count_hits_avx2(p, t_re, t_im, n, r2);
#endif
    return detail::count_hits_scalar(p, t_re, t_im, n, r2);
}

size_t count_modulus_ge(const double* t_re, const double* t_im, size_t n, double s2) {
#if defined(__x86_64__) || defined(_M_X64)
    if (current() == Impl::avx2)
        return detail::count_modulus_ge_avx2(t_re, t_im, n, s2);
#endif
    return detail::count_modulus_ge_scalar(t_re, t_im, n, s2);
}

}  // namespace danlab::kernels
