#include "danlab/kernels.hpp"

namespace danlab::kernels::detail {

// Reference path. The AVX2 variant mirrors this operation tree exactly:
//   acc = c_deg; acc = acc*t + c_k  with
//   re' = (re*tr - im*ti) + cr,  im' = (re*ti + im*tr) + ci
// and |p(t)|^2 = re*re + im*im.

void eval_abs2_scalar(const HitPoly& p, const double* t_re, const double* t_im, size_t n,
                      double* out_abs2) {
    const size_t top = p.ncoeffs - 1;
    for (size_t i = 0; i < n; ++i) {
        const double tr = t_re[i];
        const double ti = t_im[i];
        double ar = p.coeffs[top].real();
        double ai = p.coeffs[top].imag();
        for (size_t k = top; k-- > 0;) {
            const double nr = (ar * tr - ai * ti) + p.coeffs[k].real();
            const double ni = (ar * ti + ai * tr) + p.coeffs[k].imag();
            ar = nr;
            ai = ni;
        }
        out_abs2[i] = ar * ar + ai * ai;
    }
}

size_t count_hits_scalar(const HitPoly& p, const double* t_re, const double* t_im, size_t n,
                         double r2) {
    const size_t top = p.ncoeffs - 1;
    size_t hits = 0;
    for (size_t i = 0; i < n; ++i) {
        const double tr = t_re[i];
        const double ti = t_im[i];
        double ar = p.coeffs[top].real();
        double ai = p.coeffs[top].imag();
        for (size_t k = top; k-- > 0;) {
            const double nr = (ar * tr - ai * ti) + p.coeffs[k].real();
            const double ni = (ar * ti + ai * tr) + p.coeffs[k].imag();
            ar = nr;
            ai = ni;
        }
        if (ar * ar + ai * ai < r2) ++hits;
    }
    return hits;
}

size_t count_modulus_ge_scalar(const double* t_re, const double* t_im, size_t n, double s2) {
    size_t hits = 0;
    for (size_t i = 0; i < n; ++i)
        if (t_re[i] * t_re[i] + t_im[i] * t_im[i] >= s2) ++hits;
    return hits;
}

}  // namespace danlab::kernels::detail
