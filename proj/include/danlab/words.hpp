#pragma once

#include <utility>
#include <vector>

#include "danlab/surface.hpp"

namespace danlab {

// Generator algebra of holomorphic automorphisms of X:
//   FlowY(t)        flow of the LND with invariant y     (x, y, z) -> ((1/y)P(z - yt), y, z - yt)
//   FlowX(t)        swap-conjugate, invariant x
//   ReplicaY(h, t)  flow of (h o y) times the y-invariant LND
//   ReplicaX(h, t)  flow of (h o x) times the x-invariant LND
//   Swap            (x, y, z) -> (y, x, z)
//   Twist(phi)      (x, y, z) -> (x e^{phi(z)}, y e^{-phi(z)}, z), approximate backend only
enum class GenKind { FlowY, FlowX, ReplicaY, ReplicaX, Swap, Twist };

inline const char* gen_kind_name(GenKind k) {
    switch (k) {
        case GenKind::FlowY: return "FlowY";
        case GenKind::FlowX: return "FlowX";
        case GenKind::ReplicaY: return "ReplicaY";
        case GenKind::ReplicaX: return "ReplicaX";
        case GenKind::Swap: return "Swap";
        case GenKind::Twist: return "Twist";
    }
    return "?";
}

template <class S>
struct Generator {
    GenKind kind = GenKind::Swap;
    S t{};               // FlowY/FlowX/Replica*
    Polynomial<S> h{};   // Replica* multiplier, Twist exponent

    static Generator flow_y(S t) { return {GenKind::FlowY, std::move(t), {}}; }
    static Generator flow_x(S t) { return {GenKind::FlowX, std::move(t), {}}; }
    static Generator replica_y(Polynomial<S> h, S t) {
        return {GenKind::ReplicaY, std::move(t), std::move(h)};
    }
    static Generator replica_x(Polynomial<S> h, S t) {
        return {GenKind::ReplicaX, std::move(t), std::move(h)};
    }
    static Generator swap() { return {GenKind::Swap, S{}, {}}; }
    static Generator twist(Polynomial<S> phi) { return {GenKind::Twist, S{}, std::move(phi)}; }

    Generator inverse() const {
        switch (kind) {
            case GenKind::Swap: return *this;
            case GenKind::Twist: return twist(-h);
            default: return {kind, -t, h};
        }
    }

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.kind == b.kind && a.t == b.t && a.h == b.h;
    }
};

// Ordered list of generators, applied left to right.
template <class S>
struct Word {
    std::vector<Generator<S>> gens;

    friend bool operator==(const Word& a, const Word& b) { return a.gens == b.gens; }
};

// ---------------------------------------------------------------------------
// Flows. The x-coordinate along a FlowY orbit is the finite series
//   x(s) = x + sum_{k=1..d} (-1)^k y^{k-1} s^k P^{(k)}(z)/k!
// which equals (1/y) P(z - ys) when y != 0 and degenerates to x - s P'(z)
// when y = 0, so y = 0 needs no branch. The same polynomial drives the
// eta family (at time -s) and all flow-time equation solving.
// ---------------------------------------------------------------------------

// Coefficients of s -> x(flow_y(s, p)).
template <class S>
Polynomial<S> orbit_poly_x(const Surface<S>& surf, const SurfacePoint<S>& p) {
    const int d = surf.degree();
    std::vector<S> c(d + 1, scalar_traits<S>::from_int(0));
    c[0] = p.x;
    S ypow = scalar_traits<S>::from_int(1);  // y^{k-1}
    S sign = scalar_traits<S>::from_int(-1); // (-1)^k
    for (int k = 1; k <= d; ++k) {
        c[k] = sign * ypow * surf.taylor(k).eval(p.z);
        ypow = ypow * p.y;
        sign = -sign;
    }
    return Polynomial<S>(std::move(c));
}

// Coefficients of t -> eta_t(p) = x(flow_y(-t, p)):
//   x + sum_{k=1..d} y^{k-1} t^k P^{(k)}(z)/k!  (= (1/y)P(z + yt) for y != 0).
template <class S>
Polynomial<S> eta_poly(const Surface<S>& surf, const SurfacePoint<S>& p) {
    const int d = surf.degree();
    std::vector<S> c(d + 1, scalar_traits<S>::from_int(0));
    c[0] = p.x;
    S ypow = scalar_traits<S>::from_int(1);
    for (int k = 1; k <= d; ++k) {
        c[k] = ypow * surf.taylor(k).eval(p.z);
        ypow = ypow * p.y;
    }
    return Polynomial<S>(std::move(c));
}

template <class S>
SurfacePoint<S> swap_point(const SurfacePoint<S>& p) {
    return {p.y, p.x, p.z};
}

template <class S>
SurfacePoint<S> flow_y(const Surface<S>& surf, const S& t, const SurfacePoint<S>& p) {
    return {orbit_poly_x(surf, p).eval(t), p.y, p.z - p.y * t};
}

// swap . flow_y(t) . swap
template <class S>
SurfacePoint<S> flow_x(const Surface<S>& surf, const S& t, const SurfacePoint<S>& p) {
    return swap_point(flow_y(surf, t, swap_point(p)));
}

// Replica flow: the multiplier h is constant on each orbit (it depends only
// on the invariant coordinate), so the time-t map is the base flow at time
// t * h(invariant). No ODE integration anywhere.
template <class S>
SurfacePoint<S> replica_flow(const Surface<S>& surf, GenKind axis, const Polynomial<S>& h,
                             const S& t, const SurfacePoint<S>& p) {
    if (axis == GenKind::ReplicaY || axis == GenKind::FlowY)
        return flow_y(surf, t * h.eval(p.y), p);
    return flow_x(surf, t * h.eval(p.x), p);
}

template <class S>
SurfacePoint<S> twist(const Surface<S>& surf, const Polynomial<S>& phi, const SurfacePoint<S>& p) {
    (void)surf;
    if constexpr (scalar_traits<S>::exact) {
        (void)phi;
        throw ExactBackendUnsupported("twist needs e^{phi(z)}; use the approximate backend");
    } else {
        const Complex e = std::exp(phi.eval(p.z));
        return {p.x * e, p.y / e, p.z};
    }
}

template <class S>
SurfacePoint<S> apply(const Surface<S>& surf, const Generator<S>& g, const SurfacePoint<S>& p) {
    switch (g.kind) {
        case GenKind::FlowY: return flow_y(surf, g.t, p);
        case GenKind::FlowX: return flow_x(surf, g.t, p);
        case GenKind::ReplicaY:
        case GenKind::ReplicaX: return replica_flow(surf, g.kind, g.h, g.t, p);
        case GenKind::Swap: return swap_point(p);
        case GenKind::Twist: return twist(surf, g.h, p);
    }
    throw InternalError("unknown generator kind");
}

template <class S>
SurfacePoint<S> word_apply(const Surface<S>& surf, const Word<S>& w, const SurfacePoint<S>& p) {
    SurfacePoint<S> q = p;
    for (const auto& g : w.gens) q = apply(surf, g, q);
    return q;
}

template <class S>
Word<S> word_inverse(const Word<S>& w) {
    Word<S> r;
    r.gens.reserve(w.gens.size());
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) r.gens.push_back(it->inverse());
    return r;
}

// apply(compose(w1, w2), p) == apply(w2, apply(w1, p))
template <class S>
Word<S> word_compose(const Word<S>& w1, const Word<S>& w2) {
    Word<S> r = w1;
    r.gens.insert(r.gens.end(), w2.gens.begin(), w2.gens.end());
    return r;
}

inline Word<Complex> to_approx(const Word<ExactComplex>& w) {
    Word<Complex> r;
    r.gens.reserve(w.gens.size());
    for (const auto& g : w.gens)
        r.gens.push_back(Generator<Complex>{g.kind, g.t.to_complex(), to_approx(g.h)});
    return r;
}

}  // namespace danlab
