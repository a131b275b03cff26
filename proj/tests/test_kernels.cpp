#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "danlab/gaussian.hpp"
#include "danlab/kernels.hpp"

using namespace danlab;
namespace k = danlab::kernels;

namespace {

struct Batch {
    std::vector<double> re, im;
};

Batch random_batch(Rng& rng, size_t n) {
    Batch b;
    for (size_t i = 0; i < n; ++i) {
        const Complex t = rng.gaussian();
        b.re.push_back(2.5 * t.real());
        b.im.push_back(2.5 * t.imag());
    }
    return b;
}

std::vector<Complex> random_coeffs(Rng& rng, size_t n) {
    std::vector<Complex> c;
    for (size_t i = 0; i < n; ++i) c.push_back(rng.gaussian());
    return c;
}

}  // namespace

TEST_CASE("scalar kernel evaluates Horner correctly") {
    // p(t) = (t - 1)(t - i) = t^2 - (1+i)t + i
    const std::vector<Complex> c{Complex(0, 1), Complex(-1, -1), Complex(1, 0)};
    const double tre[] = {1.0, 0.0, 2.0};
    const double tim[] = {0.0, 1.0, 0.0};
    double out[3];
    k::detail::eval_abs2_scalar({c.data(), c.size()}, tre, tim, 3, out);
    CHECK(out[0] == doctest::Approx(0.0));
    CHECK(out[1] == doctest::Approx(0.0));
    CHECK(out[2] == doctest::Approx(std::norm((Complex(2, 0) - 1.0) * (Complex(2, 0) - Complex(0, 1)))));
    CHECK(k::detail::count_hits_scalar({c.data(), c.size()}, tre, tim, 3, 1e-12) == 2);
    // strict inequality: r2 = 0 never hits
    CHECK(k::detail::count_hits_scalar({c.data(), c.size()}, tre, tim, 3, 0.0) == 0);
}

TEST_CASE("modulus count kernel") {
    const double tre[] = {0.0, 3.0, 1.0};
    const double tim[] = {0.0, 4.0, 0.0};
    CHECK(k::detail::count_modulus_ge_scalar(tre, tim, 3, 1.0) == 2);  // |t| >= 1: {5, 1}
    CHECK(k::detail::count_modulus_ge_scalar(tre, tim, 3, 0.0) == 3);
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
    if (!k::detail::avx2_available()) {
        MESSAGE("AVX2 unavailable; skipping equivalence test");
        return;
    }
    Rng rng(99);
    // odd sizes exercise the remainder lanes
    for (size_t n : {1UL, 3UL, 4UL, 5UL, 17UL, 64UL, 1003UL}) {
        for (size_t deg = 0; deg <= 6; ++deg) {
            const auto coeffs = random_coeffs(rng, deg + 1);
            const auto batch = random_batch(rng, n);
            const k::HitPoly poly{coeffs.data(), coeffs.size()};
            std::vector<double> a(n), b(n);
            k::detail::eval_abs2_scalar(poly, batch.re.data(), batch.im.data(), n, a.data());
            k::detail::eval_abs2_avx2(poly, batch.re.data(), batch.im.data(), n, b.data());
            CHECK(std::memcmp(a.data(), b.data(), n * sizeof(double)) == 0);
            for (double r2 : {0.0, 0.5, 2.0, 100.0}) {
                CHECK(k::detail::count_hits_scalar(poly, batch.re.data(), batch.im.data(), n,
                                                   r2) ==
                      k::detail::count_hits_avx2(poly, batch.re.data(), batch.im.data(), n, r2));
            }
            CHECK(k::detail::count_modulus_ge_scalar(batch.re.data(), batch.im.data(), n, 1.7) ==
                  k::detail::count_modulus_ge_avx2(batch.re.data(), batch.im.data(), n, 1.7));
        }
    }
}
#endif

TEST_CASE("dispatch override") {
    k::force_impl(k::Impl::scalar);
    CHECK(k::active_impl() == k::Impl::scalar);
    k::reset_impl();
    if (k::detail::avx2_available()) {
        k::force_impl(k::Impl::avx2);
        CHECK(k::active_impl() == k::Impl::avx2);
        k::reset_impl();
    }
}
