#pragma once

// Shared generators for the randomized suites: exact on-surface points,
// random exact words with small rational parameters, manufactured points at
// prescribed exhaustion, and well-separated approximate instances.

#include <vector>

#include "danlab/constructions.hpp"
#include "danlab/gaussian.hpp"
#include "danlab/words.hpp"

namespace danlab::testing {

inline mpq_class random_rational(Rng& rng, long num_cap = 1000, long den_cap = 1000) {
    mpq_class q(rng.uniform_int(-num_cap, num_cap), rng.uniform_int(1, den_cap));
    q.canonicalize();
    return q;
}

inline ExactComplex random_exact_scalar(Rng& rng, long num_cap = 1000, long den_cap = 1000) {
    return ExactComplex(random_rational(rng, num_cap, den_cap),
                        random_rational(rng, num_cap, den_cap));
}

// Word parameters: rationals with numerators/denominators <= 10^3, weighted
// toward Gaussian integers. Coordinate heights multiply by ~d per
// FlowY/FlowX alternation, so nontrivial denominators on every parameter
// would drag a GCD of two multi-megabit integers into each canonicalization
// on the long-word suites; integer-heavy draws keep denominators small
// without shrinking the parameter range.
inline ExactComplex random_word_parameter(Rng& rng) {
    const long den = rng.uniform_int(0, 4) == 0 ? rng.uniform_int(1, 8) : 1;
    mpq_class re(rng.uniform_int(-1000, 1000), den);
    mpq_class im(rng.uniform_int(-1000, 1000), den);
    re.canonicalize();
    im.canonicalize();
    return ExactComplex(re, im);
}

// Random exact on-surface point: z, y small rationals with y != 0 and
// x = P(z)/y; occasionally a y = 0 point on a rational root of P.
inline SurfacePoint<ExactComplex> random_exact_point(const Surface<ExactComplex>& surf,
                                                     Rng& rng) {
    if (rng.uniform_int(0, 9) == 0) {
        // y = 0 fiber: z must be a root of P; the fixture polynomials
        // z, z^2-1, z^3-z have rational roots among {-1, 0, 1}
        std::vector<ExactComplex> roots;
        for (long r : {-1L, 0L, 1L})
            if (surf.poly().eval(ExactComplex(r)).is_zero()) roots.push_back(ExactComplex(r));
        if (!roots.empty()) {
            const ExactComplex z = roots[static_cast<size_t>(
                rng.uniform_int(0, static_cast<int64_t>(roots.size()) - 1))];
            return surf.point(random_exact_scalar(rng, 9, 4), ExactComplex(0), z);
        }
    }
    const ExactComplex z = random_exact_scalar(rng, 9, 4);
    ExactComplex y = random_exact_scalar(rng, 9, 4);
    if (y.is_zero()) y = ExactComplex(1);
    return surf.point(surf.poly().eval(z) / y, y, z);
}

inline Polynomial<ExactComplex> random_exact_poly(Rng& rng, int max_deg) {
    const int deg = static_cast<int>(rng.uniform_int(0, max_deg));
    std::vector<ExactComplex> c;
    for (int k = 0; k <= deg; ++k) c.push_back(random_exact_scalar(rng));
    return Polynomial<ExactComplex>(std::move(c));
}

inline Polynomial<ExactComplex> random_word_multiplier(Rng& rng, int max_deg) {
    const int deg = static_cast<int>(rng.uniform_int(0, max_deg));
    std::vector<ExactComplex> c;
    for (int k = 0; k <= deg; ++k) c.push_back(random_word_parameter(rng));
    return Polynomial<ExactComplex>(std::move(c));
}

// Replica multipliers are degree <= 1: non-constant (so genuinely replicas)
// while keeping the coordinate bit-growth of long exact words out of the
// doubly-exponential regime (degree-k multipliers raise the growth factor
// per alternation from ~d to ~d+k). Mix: flows 3/8 each, replicas 1/16
// each, swap 1/8.
inline Generator<ExactComplex> random_exact_generator(Rng& rng) {
    switch (rng.uniform_int(0, 15)) {
        case 0:
            return Generator<ExactComplex>::replica_y(random_word_multiplier(rng, 1),
                                                      random_word_parameter(rng));
        case 1:
            return Generator<ExactComplex>::replica_x(random_word_multiplier(rng, 1),
                                                      random_word_parameter(rng));
        case 2:
        case 3: return Generator<ExactComplex>::swap();
        case 4:
        case 5:
        case 6:
        case 7:
        case 8:
        case 9: return Generator<ExactComplex>::flow_y(random_word_parameter(rng));
        default: return Generator<ExactComplex>::flow_x(random_word_parameter(rng));
    }
}

inline Word<ExactComplex> random_exact_word(Rng& rng, int max_len = 20) {
    Word<ExactComplex> w;
    const int len = static_cast<int>(rng.uniform_int(0, max_len));
    for (int i = 0; i < len; ++i) w.gens.push_back(random_exact_generator(rng));
    return w;
}

// Approximate on-surface point with |y| in [ymin, ymax], well away from the
// degenerate fibers.
inline SurfacePoint<Complex> random_approx_point(const Surface<Complex>& surf, Rng& rng,
                                                 double ymin = 0.5, double ymax = 4.0) {
    const double ymod = ymin + (ymax - ymin) * rng.uniform01();
    const Complex y = std::polar(ymod, 2.0 * M_PI * rng.uniform01());
    const Complex z = std::polar(3.0 * rng.uniform01(), 2.0 * M_PI * rng.uniform01());
    return surf.point(surf.poly().eval(z) / y, y, z);
}

// Well-separated random instance: points on a jittered |y| ladder so the
// interpolation nodes stay apart (|y_i - y_j| >= ~0.3).
inline std::vector<SurfacePoint<Complex>> separated_instance(const Surface<Complex>& surf,
                                                             Rng& rng, size_t n) {
    std::vector<SurfacePoint<Complex>> pts;
    for (size_t i = 0; i < n; ++i) {
        const double ymod = 0.75 + 0.5 * static_cast<double>(i) + 0.15 * rng.uniform01();
        const Complex y = std::polar(ymod, 2.0 * M_PI * rng.uniform01());
        const Complex z = std::polar(2.5 * rng.uniform01(), 2.0 * M_PI * rng.uniform01());
        pts.push_back(surf.point(surf.poly().eval(z) / y, y, z));
    }
    return pts;
}

// Integer lane for the bulk word suites: Gaussian-integer parameters and
// points (y a unit or a small exact divisor of P(z)), so every coordinate
// stays a Gaussian integer and mpq canonicalization never runs a large GCD.
inline ExactComplex random_integer_parameter(Rng& rng, long cap = 1000) {
    return ExactComplex(mpq_class(rng.uniform_int(-cap, cap)),
                        mpq_class(rng.uniform_int(-cap, cap)));
}

inline SurfacePoint<ExactComplex> random_integer_point(const Surface<ExactComplex>& surf,
                                                       Rng& rng) {
    const ExactComplex z(mpq_class(rng.uniform_int(-9, 9)), mpq_class(rng.uniform_int(-9, 9)));
    const ExactComplex pz = surf.poly().eval(z);
    static const ExactComplex units[] = {
        ExactComplex(1), ExactComplex(-1), ExactComplex(mpq_class(0), mpq_class(1)),
        ExactComplex(mpq_class(0), mpq_class(-1))};
    static const ExactComplex divisors[] = {
        ExactComplex(2), ExactComplex(3), ExactComplex(mpq_class(1), mpq_class(1)),
        ExactComplex(mpq_class(2), mpq_class(1)), ExactComplex(mpq_class(1), mpq_class(-2)),
        ExactComplex(5)};
    ExactComplex y = units[rng.uniform_int(0, 3)];
    if (rng.uniform_int(0, 1) == 0 && !pz.is_zero()) {
        const ExactComplex cand = divisors[rng.uniform_int(0, 5)];
        const ExactComplex x = pz / cand;
        if (x.re.get_den() == 1 && x.im.get_den() == 1) y = cand;
    }
    return surf.point(pz / y, y, z);
}

inline Generator<ExactComplex> random_integer_generator(Rng& rng) {
    switch (rng.uniform_int(0, 15)) {
        case 0:
            return Generator<ExactComplex>::replica_y(
                Polynomial<ExactComplex>({random_integer_parameter(rng),
                                          random_integer_parameter(rng)}),
                random_integer_parameter(rng));
        case 1:
            return Generator<ExactComplex>::replica_x(
                Polynomial<ExactComplex>({random_integer_parameter(rng),
                                          random_integer_parameter(rng)}),
                random_integer_parameter(rng));
        case 2:
        case 3: return Generator<ExactComplex>::swap();
        case 4:
        case 5:
        case 6:
        case 7:
        case 8:
        case 9: return Generator<ExactComplex>::flow_y(random_integer_parameter(rng));
        default: return Generator<ExactComplex>::flow_x(random_integer_parameter(rng));
    }
}

inline Word<ExactComplex> random_integer_word(Rng& rng, int max_len = 20) {
    Word<ExactComplex> w;
    const int len = static_cast<int>(rng.uniform_int(0, max_len));
    for (int i = 0; i < len; ++i) w.gens.push_back(random_integer_generator(rng));
    return w;
}

// On-surface point with exhaustion just above the target: |y| dominant
// (z = 0, x = P(0)/y tiny) or |x| dominant with |y| <= target^(1/d^2).
inline SurfacePoint<Complex> manufacture_point(const Surface<Complex>& surf, double target,
                                               bool y_dominant, double phase) {
    const double bump = 1.01 * target;
    if (y_dominant) {
        const Complex y = std::polar(bump, phase);
        return surf.point(surf.poly().eval(Complex(0, 0)) / y, y, Complex(0, 0));
    }
    const int d = surf.degree();
    const double ymod = 0.5 * std::pow(target, 1.0 / (d * d));
    const Complex y = std::polar(ymod, phase);
    // |P| is increasing along the positive real axis far out; bisect for
    // |P(z0)| = bump * |y|
    double lo = surf.bounds().rho, hi = surf.bounds().rho;
    while (std::abs(surf.poly().eval(Complex(hi, 0))) < bump * ymod) hi *= 2;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(surf.poly().eval(Complex(mid, 0))) < bump * ymod) lo = mid;
        else hi = mid;
    }
    const Complex z(hi, 0);
    return surf.point(surf.poly().eval(z) / y, y, z);
}

}  // namespace danlab::testing
