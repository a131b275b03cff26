#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "danlab/errors.hpp"
#include "danlab/polynomial.hpp"

namespace danlab {

// Constants rho, alpha, beta, M with
//   alpha |z|^d <= |P(z)| <= beta |z|^d   for |z| >= rho,
//   |P(z)| <= M                           for |z| <= rho.
struct GrowthBounds {
    double rho = 0, alpha = 0, beta = 0, M = 0;
};

template <class S>
struct SurfacePoint {
    S x, y, z;
    friend bool operator==(const SurfacePoint& a, const SurfacePoint& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

// max{|x|, |y|}; an exhaustion function on X. Computed in floating point,
// used for comparisons and reports only (decisive exact comparisons go
// through exhaustion_abs2).
template <class S>
double exhaustion(const SurfacePoint<S>& p) {
    return std::max(abs_value(p.x), abs_value(p.y));
}

// max(|x|^2, |y|^2) in the backend's own arithmetic.
template <class S>
typename scalar_traits<S>::Abs2 exhaustion_abs2(const SurfacePoint<S>& p) {
    auto ax = scalar_traits<S>::abs2(p.x);
    auto ay = scalar_traits<S>::abs2(p.y);
    return ax > ay ? ax : ay;
}

// Triangle-inequality growth constants:
//   alpha = |a_d|/2, beta = 2|a_d|,
//   rho   = max(1, 2 * sum_{k<d} |a_k| / |a_d|),
//   M     = sum_k |a_k| rho^k.
// Spot-verified by sampling below; the closed forms carry the proof.
template <class S>
GrowthBounds growth_constants(const Polynomial<S>& p) {
    const int d = p.degree();
    if (d < 1) throw ZeroPolynomial("growth_constants requires deg(P) >= 1");
    std::vector<double> mags;
    mags.reserve(d + 1);
    for (const S& c : p.coeffs()) mags.push_back(abs_value(c));
    const double lead = mags.back();
    if (lead == 0.0) throw InternalError("ZeroLeadingCoefficient after normalization");
    double lower = 0;
    for (int k = 0; k < d; ++k) lower += mags[k];
    GrowthBounds b;
    b.alpha = lead / 2.0;
    b.beta = 2.0 * lead;
    b.rho = std::max(1.0, 2.0 * lower / lead);
    b.M = 0;
    double rk = 1.0;
    for (int k = 0; k <= d; ++k, rk *= b.rho) b.M += mags[k] * rk;

    // Sampled sanity check of the two-sided bound on |z| in {rho, 2 rho, 4 rho}
    // and of |P| <= M on the closed disc of radius rho (32x32 grid). The 1e-9
    // relative slack absorbs float rounding where the bound is attained.
    const Polynomial<Complex> pa = [&] {
        if constexpr (scalar_traits<S>::exact) return to_approx(p);
        else return p;
    }();
    constexpr double kSlack = 1e-9;
    for (double mul : {1.0, 2.0, 4.0}) {
        const double R = b.rho * mul;
        const double Rd = std::pow(R, d);
        for (int i = 0; i < 1000; ++i) {
            const double th = 2.0 * M_PI * i / 1000.0;
            const double v = std::abs(pa.eval(Complex(R * std::cos(th), R * std::sin(th))));
            if (v < b.alpha * Rd * (1.0 - kSlack) || v > b.beta * Rd * (1.0 + kSlack)) {
                std::ostringstream os;
                os << "growth bound violated on |z|=" << R << ": |P|=" << v;
                throw InternalError(os.str());
            }
        }
    }
    for (int i = 0; i < 32; ++i) {
        for (int j = 0; j < 32; ++j) {
            const double re = b.rho * (2.0 * i / 31.0 - 1.0);
            const double im = b.rho * (2.0 * j / 31.0 - 1.0);
            if (re * re + im * im > b.rho * b.rho) continue;
            const double v = std::abs(pa.eval(Complex(re, im)));
            if (v > b.M * (1.0 + kSlack)) {
                std::ostringstream os;
                os << "growth bound M violated at |z|<=rho: |P|=" << v << " > M=" << b.M;
                throw InternalError(os.str());
            }
        }
    }
    return b;
}

// The Danielewski surface X = {xy = P(z)} for squarefree P with deg(P) >= 1.
// Carries the Taylor coefficient polynomials P^{(k)}/k! used by every flow.
template <class S>
class Surface {
  public:
    explicit Surface(Polynomial<S> p) : p_(std::move(p)) {
        if (p_.is_zero()) throw ZeroPolynomial("surface polynomial is zero");
        if (p_.degree() < 1) throw DomainError("surface polynomial must have degree >= 1");
        if (!squarefree_check(p_)) throw NotSquarefree(p_.to_text());
        bounds_ = growth_constants(p_);
        const int d = p_.degree();
        taylor_.reserve(d + 1);
        S fact = scalar_traits<S>::from_int(1);
        for (int k = 0; k <= d; ++k) {
            if (k > 0) fact = fact * scalar_traits<S>::from_int(k);
            taylor_.push_back((scalar_traits<S>::from_int(1) / fact) * p_.derivative(k));
        }
    }

    int degree() const { return p_.degree(); }
    const Polynomial<S>& poly() const { return p_; }
    // P^{(k)} / k!
    const Polynomial<S>& taylor(size_t k) const { return taylor_[k]; }
    const GrowthBounds& bounds() const { return bounds_; }

    S residual(const SurfacePoint<S>& p) const { return p.x * p.y - p_.eval(p.z); }

    // Membership: exact zero residual, or, in the approximate backend,
    // |residual| <= 1e-9 * (1 + |x||y| + |P(z)|).
    bool on_surface(const SurfacePoint<S>& p) const {
        if constexpr (scalar_traits<S>::exact) {
            return residual(p).is_zero();
        } else {
            return std::abs(residual(p)) <= membership_tol(p);
        }
    }

    double membership_tol(const SurfacePoint<S>& p) const {
        return 1e-9 * (1.0 + abs_value(p.x) * abs_value(p.y) + abs_value(p_.eval(p.z)));
    }

    SurfacePoint<S> point(S x, S y, S z) const {
        SurfacePoint<S> p{std::move(x), std::move(y), std::move(z)};
        if (!on_surface(p)) {
            std::ostringstream os;
            os << "residual xy - P(z) = " << format_scalar(residual(p));
            throw NotOnSurface(os.str());
        }
        return p;
    }

  private:
    Polynomial<S> p_;
    std::vector<Polynomial<S>> taylor_;
    GrowthBounds bounds_;
};

inline Surface<Complex> to_approx(const Surface<ExactComplex>& s) {
    return Surface<Complex>(to_approx(s.poly()));
}

template <class S>
SurfacePoint<Complex> to_approx(const SurfacePoint<S>& p) {
    return SurfacePoint<Complex>{scalar_traits<S>::to_complex(p.x),
                                 scalar_traits<S>::to_complex(p.y),
                                 scalar_traits<S>::to_complex(p.z)};
}

}  // namespace danlab
