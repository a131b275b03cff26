#include "danlab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace danlab::kernels::detail {

// 4 samples per iteration; scalar tail reuses the reference path so the
// whole batch stays bit-identical to eval_abs2_scalar / count_hits_scalar.
// Plain mul/add/sub only -- FMA would change rounding.

void eval_abs2_avx2(const HitPoly& p, const double* t_re, const double* t_im, size_t n,
                    double* out_abs2) {
    const size_t top = p.ncoeffs - 1;
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d tr = _mm256_loadu_pd(t_re + i);
        const __m256d ti = _mm256_loadu_pd(t_im + i);
        __m256d ar = _mm256_set1_pd(p.coeffs[top].real());
        __m256d ai = _mm256_set1_pd(p.coeffs[top].imag());
        for (size_t k = top; k-- > 0;) {
            const __m256d cr = _mm256_set1_pd(p.coeffs[k].real());
            const __m256d ci = _mm256_set1_pd(p.coeffs[k].imag());
            const __m256d nr = _mm256_add_pd(
                _mm256_sub_pd(_mm256_mul_pd(ar, tr), _mm256_mul_pd(ai, ti)), cr);
            const __m256d ni = _mm256_add_pd(
                _mm256_add_pd(_mm256_mul_pd(ar, ti), _mm256_mul_pd(ai, tr)), ci);
            ar = nr;
            ai = ni;
        }
        const __m256d a2 =
            _mm256_add_pd(_mm256_mul_pd(ar, ar), _mm256_mul_pd(ai, ai));
        _mm256_storeu_pd(out_abs2 + i, a2);
    }
    if (i < n) eval_abs2_scalar(p, t_re + i, t_im + i, n - i, out_abs2 + i);
}

size_t count_hits_avx2(const HitPoly& p, const double* t_re, const double* t_im, size_t n,
                       double r2) {
    const size_t top = p.ncoeffs - 1;
    const __m256d vr2 = _mm256_set1_pd(r2);
    size_t hits = 0;
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d tr = _mm256_loadu_pd(t_re + i);
        const __m256d ti = _mm256_loadu_pd(t_im + i);
        __m256d ar = _mm256_set1_pd(p.coeffs[top].real());
        __m256d ai = _mm256_set1_pd(p.coeffs[top].imag());
        for (size_t k = top; k-- > 0;) {
            const __m256d cr = _mm256_set1_pd(p.coeffs[k].real());
            const __m256d ci = _mm256_set1_pd(p.coeffs[k].imag());
            const __m256d nr = _mm256_add_pd(
                _mm256_sub_pd(_mm256_mul_pd(ar, tr), _mm256_mul_pd(ai, ti)), cr);
            const __m256d ni = _mm256_add_pd(
                _mm256_add_pd(_mm256_mul_pd(ar, ti), _mm256_mul_pd(ai, tr)), ci);
            ar = nr;
            ai = ni;
        }
        const __m256d a2 =
            _mm256_add_pd(_mm256_mul_pd(ar, ar), _mm256_mul_pd(ai, ai));
        const __m256d lt = _mm256_cmp_pd(a2, vr2, _CMP_LT_OQ);
        hits += static_cast<size_t>(__builtin_popcount(_mm256_movemask_pd(lt)));
    }
    if (i < n) hits += count_hits_scalar(p, t_re + i, t_im + i, n - i, r2);
    return hits;
}

size_t count_modulus_ge_avx2(const double* t_re, const double* t_im, size_t n, double s2) {
    const __m256d vs2 = _mm256_set1_pd(s2);
    size_t hits = 0;
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d tr = _mm256_loadu_pd(t_re + i);
        const __m256d ti = _mm256_loadu_pd(t_im + i);
        const __m256d a2 =
            _mm256_add_pd(_mm256_mul_pd(tr, tr), _mm256_mul_pd(ti, ti));
        const __m256d ge = _mm256_cmp_pd(a2, vs2, _CMP_GE_OQ);
        hits += static_cast<size_t>(__builtin_popcount(_mm256_movemask_pd(ge)));
    }
    if (i < n) hits += count_modulus_ge_scalar(t_re + i, t_im + i, n - i, s2);
    return hits;
}

}  // namespace danlab::kernels::detail

#endif  // x86_64
