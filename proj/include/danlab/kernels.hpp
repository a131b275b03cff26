#pragma once

#include <cstddef>
#include <cstdint>

#include "danlab/scalar.hpp"

namespace danlab::kernels {

// Batch kernels for the Monte Carlo inner loop: evaluate a complex
// polynomial p(t) = c_0 + c_1 t + ... + c_deg t^deg by Horner over a batch
// of sample parameters t (SoA layout) and either report |p(t)|^2 or count
// strict hits |p(t)|^2 < r2.
//
// The scalar and AVX2 variants perform the identical sequence of IEEE
// mul/add/sub per sample (no FMA, no reassociation), so their results are
// bit-identical; the dispatcher may pick either without affecting any
// deterministic output. Equivalence is enforced by tests/test_kernels.cpp.

struct HitPoly {
    const Complex* coeffs;  // low-to-high, ncoeffs >= 1
    size_t ncoeffs;
};

void eval_abs2(const HitPoly& p, const double* t_re, const double* t_im, size_t n,
               double* out_abs2);

size_t count_hits(const HitPoly& p, const double* t_re, const double* t_im, size_t n, double r2);

// count of samples with t_re^2 + t_im^2 >= s2 (gaussian tail checks)
size_t count_modulus_ge(const double* t_re, const double* t_im, size_t n, double s2);

enum class Impl { scalar, avx2 };

Impl active_impl();
const char* impl_name(Impl i);
// Test/experiment override; throws if the implementation is unavailable.
void force_impl(Impl i);
void reset_impl();  // back to auto-detection (honors DANLAB_KERNEL env var)

namespace detail {
bool avx2_available();

void eval_abs2_scalar(const HitPoly& p, const double* t_re, const double* t_im, size_t n,
                      double* out_abs2);
size_t count_hits_scalar(const HitPoly& p, const double* t_re, const double* t_im, size_t n,
                         double r2);
size_t count_modulus_ge_scalar(const double* t_re, const double* t_im, size_t n, double s2);

#if defined(__x86_64__) || defined(_M_X64)
void eval_abs2_avx2(const HitPoly& p, const double* t_re, const double* t_im, size_t n,
                    double* out_abs2);
size_t count_hits_avx2(const HitPoly& p, const double* t_re, const double* t_im, size_t n,
                       double r2);
size_t count_modulus_ge_avx2(const double* t_re, const double* t_im, size_t n, double s2);
#endif
}  // namespace detail

}  // namespace danlab::kernels
