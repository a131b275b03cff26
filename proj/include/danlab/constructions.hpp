#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "danlab/discrete_set.hpp"
#include "danlab/gaussian.hpp"
#include "danlab/spreading.hpp"
#include "danlab/words.hpp"

namespace danlab {

// ---------------------------------------------------------------------------
// Lagrange interpolation through prescribed nodes. Realizes every "choose a
// holomorphic function with given values on a discrete set" step at finite
// scale; exact for exact inputs.
// ---------------------------------------------------------------------------

template <class S>
Polynomial<S> interpolate(const std::vector<std::pair<S, S>>& nodes) {
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i].first == nodes[j].first)
                throw DuplicateNode("abscissa " + format_scalar(nodes[i].first));
    Polynomial<S> acc = Polynomial<S>::zero();
    for (size_t i = 0; i < nodes.size(); ++i) {
        Polynomial<S> term = Polynomial<S>::constant(nodes[i].second);
        for (size_t j = 0; j < nodes.size(); ++j) {
            if (j == i) continue;
            const S denom = nodes[i].first - nodes[j].first;
            term = term * Polynomial<S>({-nodes[j].first / denom,
                                         scalar_traits<S>::from_int(1) / denom});
        }
        acc = acc + term;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Flow-time equations: solve q(xi) = target for the orbit polynomial q.
// Approximate backend: Durand-Kerner for all roots, Newton polish,
// residual-certified; the smallest |xi| certified root wins (deterministic
// tie-break). Exact backend: degree-1 fibers by exact division, otherwise
// rational reconstruction of the numeric roots verified exactly.
// ---------------------------------------------------------------------------

namespace detail {

inline double poly_scale(const Polynomial<Complex>& p) {
    double s = 0;
    for (const Complex& c : p.coeffs()) s = std::max(s, std::abs(c));
    return s;
}

inline std::vector<Complex> all_roots(const Polynomial<Complex>& p) {
    const int m = p.degree();
    if (m < 1) return {};
    if (m == 1) return {-p.coeff(0) / p.coeff(1)};
    std::vector<Complex> b(m);  // monic tail
    for (int k = 0; k < m; ++k) b[k] = p.coeff(k) / p.coeff(m);
    double radius = 0;
    for (int k = 0; k < m; ++k) radius = std::max(radius, std::abs(b[k]));
    radius = 1.0 + radius;  // Cauchy bound
    auto eval_monic = [&](Complex w) {
        Complex acc(1, 0);
        for (int k = m; k-- > 0;) acc = acc * w + b[k];
        return acc;
    };
    std::vector<Complex> roots(m);
    for (int j = 0; j < m; ++j)
        roots[j] = 0.9 * radius * std::polar(1.0, 2.0 * M_PI * (j + 0.25) / m + 0.4);
    for (int it = 0; it < 400; ++it) {
        double step = 0;
        for (int j = 0; j < m; ++j) {
            Complex denom(1, 0);
            for (int k = 0; k < m; ++k)
                if (k != j) denom *= roots[j] - roots[k];
            if (std::abs(denom) < 1e-300) {
                roots[j] += Complex(1e-8, 1e-8);
                continue;
            }
            const Complex d = eval_monic(roots[j]) / denom;
            roots[j] -= d;
            step = std::max(step, std::abs(d));
        }
        if (step < 1e-15 * radius) break;
    }
    // Newton polish on the original polynomial
    const Polynomial<Complex> dp = p.derivative();
    for (Complex& w : roots) {
        for (int it = 0; it < 12; ++it) {
            const Complex dv = dp.eval(w);
            if (std::abs(dv) < 1e-300) break;
            const Complex corr = p.eval(w) / dv;
            w -= corr;
            if (std::abs(corr) < 1e-16 * (1.0 + std::abs(w))) break;
        }
    }
    return roots;
}

// continued-fraction convergents of a double, smallest denominators first
inline std::vector<std::pair<long, long>> cf_convergents(double x, long max_den = (1L << 26)) {
    std::vector<std::pair<long, long>> out;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // h_{-2}/k_{-2}, h_{-1}/k_{-1}
    double v = x;
    for (int it = 0; it < 40; ++it) {
        if (!(std::abs(v) < 9e15)) break;
        const double fl = std::floor(v);
        const long a = static_cast<long>(fl);
        const long p2 = a * p1 + p0;
        const long q2 = a * q1 + q0;
        if (std::abs(q2) > max_den) break;
        out.emplace_back(p2, q2);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    return out;
}

}  // namespace detail

inline Complex solve_flow_time(const Polynomial<Complex>& q, const Complex& target) {
    if (q.eval(Complex(0, 0)) == target) return Complex(0, 0);
    Polynomial<Complex> p = q - Polynomial<Complex>::constant(target);
    if (p.degree() < 1) throw NoExactFlowTime("constant orbit coordinate cannot reach target");
    std::vector<Complex> roots = detail::all_roots(p);
    const double tol = 1e-10 * (1.0 + std::abs(target) + detail::poly_scale(q));
    std::vector<Complex> ok;
    for (const Complex& w : roots)
        if (std::abs(q.eval(w) - target) <= tol) ok.push_back(w);
    if (ok.empty()) throw NoExactFlowTime("no numerically certified flow time");
    std::sort(ok.begin(), ok.end(), [](const Complex& a, const Complex& b) {
        const double ma = std::norm(a), mb = std::norm(b);
        if (ma != mb) return ma < mb;
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return ok[0];
}

inline ExactComplex solve_flow_time(const Polynomial<ExactComplex>& q, const ExactComplex& target) {
    if (q.eval(ExactComplex(0)) == target) return ExactComplex(0);
    Polynomial<ExactComplex> p = q - Polynomial<ExactComplex>::constant(target);
    if (p.degree() < 1) throw NoExactFlowTime("constant orbit coordinate cannot reach target");
    if (p.degree() == 1) return -p.coeff(0) / p.coeff(1);
    // rational reconstruction of the numeric roots, verified exactly
    std::vector<Complex> roots = detail::all_roots(to_approx(p));
    std::vector<ExactComplex> ok;
    for (const Complex& w : roots) {
        auto cr = detail::cf_convergents(w.real());
        auto ci = detail::cf_convergents(w.imag());
        auto near = [](const std::pair<long, long>& c, double v) {
            return std::abs(static_cast<double>(c.first) / static_cast<double>(c.second) - v) <=
                   1e-6 * (1.0 + std::abs(v));
        };
        for (const auto& a : cr) {
            if (a.second == 0 || !near(a, w.real())) continue;
            for (const auto& b : ci) {
                if (b.second == 0 || !near(b, w.imag())) continue;
                ExactComplex cand(mpq_class(a.first, a.second), mpq_class(b.first, b.second));
                if (q.eval(cand) == target) {
                    ok.push_back(cand);
                    break;
                }
            }
        }
    }
    if (ok.empty()) throw NoExactFlowTime("no rational flow time found");
    std::sort(ok.begin(), ok.end(), [](const ExactComplex& a, const ExactComplex& b) {
        const mpq_class ma = a.abs2(), mb = b.abs2();
        if (ma != mb) return ma < mb;
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
    return ok[0];
}

// ---------------------------------------------------------------------------
// randomize_projection: a single random flow word making the chosen
// coordinate projection injective on D with a quantitative gap, avoiding 0.
// ---------------------------------------------------------------------------

namespace detail {

template <class S>
S draw_flow_parameter(Rng& rng) {
    if constexpr (scalar_traits<S>::exact) {
        // uniform small rationals stand in for the Gaussian in exact mode
        auto draw = [&rng] {
            return mpq_class(rng.uniform_int(-1000, 1000), rng.uniform_int(1, 1000));
        };
        mpq_class re = draw(), im = draw();
        re.canonicalize();
        im.canonicalize();
        return ExactComplex(re, im);
    } else {
        return rng.gaussian();
    }
}

}  // namespace detail

template <class S>
struct RandomizedProjection {
    S t;
    Word<S> word;
};

// The word is [FlowY(-t)] for axis X (projected values are eta_t) and the
// swap-conjugate [FlowX(-t)] for axis Y.
template <class S>
RandomizedProjection<S> randomize_projection(const Surface<S>& surf, const DiscreteSet<S>& d,
                                             Rng& rng, int attempts = 64, Axis axis = Axis::X) {
    if (d.empty()) throw DomainError("randomize_projection requires |D| >= 1");
    for (int a = 0; a < attempts; ++a) {
        const S t = detail::draw_flow_parameter<S>(rng);
        Word<S> w;
        w.gens.push_back(axis == Axis::X ? Generator<S>::flow_y(-t) : Generator<S>::flow_x(-t));
        std::vector<S> vals;
        vals.reserve(d.size());
        for (const auto& p : d.points()) vals.push_back(project(axis, word_apply(surf, w, p)));
        double maxmod = 0;
        for (const S& v : vals) maxmod = std::max(maxmod, abs_value(v));
        const double gap_tol = 1e-6 * (1.0 + maxmod);
        bool ok = true;
        for (size_t i = 0; i < vals.size() && ok; ++i) {
            if (abs_value(vals[i]) <= 1e-6) ok = false;
            for (size_t j = i + 1; j < vals.size() && ok; ++j)
                if (vals[i] == vals[j] || abs_value(vals[i] - vals[j]) <= gap_tol) ok = false;
        }
        if (ok) return {t, std::move(w)};
    }
    throw ExhaustedAttempts("no separating flow parameter found; degenerate input?");
}

// ---------------------------------------------------------------------------
// prescribe_p2: force prescribed x-values on D by one replica keyed on the
// y-invariant; y is preserved on all of X.
// ---------------------------------------------------------------------------

template <class S>
Word<S> prescribe_p2(const Surface<S>& surf, const DiscreteSet<S>& d,
                     const std::vector<S>& targets) {
    if (targets.size() != d.size())
        throw UsageError("prescribe_p2: one target per point required");
    // y-projection must separate the points; in the approximate backend a
    // quantitative gap is required or the multiplier cannot be stable
    double max_y = 0;
    for (const auto& p : d.points()) max_y = std::max(max_y, abs_value(p.y));
    for (size_t i = 0; i < d.size(); ++i) {
        for (size_t j = i + 1; j < d.size(); ++j) {
            if (d[i].y == d[j].y) throw NotInjective("duplicate y value");
            if constexpr (!scalar_traits<S>::exact) {
                if (abs_value(d[i].y - d[j].y) <= 1e-9 * (1.0 + max_y))
                    throw NotInjective("y values too close for a stable multiplier");
            }
        }
    }
    std::vector<std::pair<S, S>> nodes;
    bool all_zero = true;
    for (size_t i = 0; i < d.size(); ++i) {
        const S xi = solve_flow_time(orbit_poly_x(surf, d[i]), targets[i]);
        if (!scalar_traits<S>::is_zero(xi)) all_zero = false;
        nodes.emplace_back(d[i].y, xi);
    }
    Word<S> w;
    if (all_zero) return w;  // identity targets
    w.gens.push_back(Generator<S>::replica_y(interpolate(nodes), scalar_traits<S>::from_int(1)));
    return w;
}

// ---------------------------------------------------------------------------
// spread_past: push every point of D past its escape target zeta along one
// replica flow; returns the witness word plus the verified exhaustion values.
// ---------------------------------------------------------------------------

template <class S>
struct TameWitness {
    Word<S> word;
    std::vector<double> zeta;      // per-point escape targets
    std::vector<double> achieved;  // post-application exhaustion, all > zeta
};

enum class AxisChoice { Auto, X, Y };

namespace detail {

// strict exhaustion comparison, exact where the backend allows it
template <class S>
bool exhaustion_exceeds(const SurfacePoint<S>& p, double bound) {
    if constexpr (scalar_traits<S>::exact) {
        if (bound < 0) return true;
        const mpq_class b = rational_from_double(bound);
        return exhaustion_abs2(p) > b * b;
    } else {
        return exhaustion(p) > bound;
    }
}

// Fibers of the invariant coordinate: exact grouping by value, approximate
// grouping by a relative gap so near-collisions share one flow time.
template <class S>
std::vector<std::vector<size_t>> invariant_fibers(const DiscreteSet<S>& d, Axis axis) {
    std::vector<std::vector<size_t>> fibers;
    for (size_t i = 0; i < d.size(); ++i) {
        const S& v = project(axis, d[i]);
        bool placed = false;
        for (auto& f : fibers) {
            const S& rep = project(axis, d[f.front()]);
            bool same;
            if constexpr (scalar_traits<S>::exact) same = (rep == v);
            else same = abs_value(rep - v) <= 1e-6 * (1.0 + abs_value(rep));
            if (same) {
                f.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) fibers.push_back({i});
    }
    return fibers;
}

}  // namespace detail

// Core search along FlowY orbits (axis Y); axis X mirrors through swap.
template <class S>
TameWitness<S> spread_past(const Surface<S>& surf, const DiscreteSet<S>& d,
                           const std::vector<double>& zeta, AxisChoice axis = AxisChoice::Auto) {
    if (zeta.size() != d.size()) throw UsageError("spread_past: one zeta per point required");
    TameWitness<S> wit;
    wit.zeta = zeta;
    if (d.empty()) return wit;

    bool already = true;
    for (size_t i = 0; i < d.size(); ++i)
        if (!detail::exhaustion_exceeds(d[i], zeta[i])) already = false;
    if (already) {
        for (const auto& p : d.points()) wit.achieved.push_back(exhaustion(p));
        return wit;
    }

    Axis ax;
    if (axis == AxisChoice::X) ax = Axis::X;
    else if (axis == AxisChoice::Y) ax = Axis::Y;
    else ax = projection_report(d, Axis::Y).injective ? Axis::Y : Axis::X;

    // Work in the axis-Y picture; swap in and out for axis X.
    std::vector<SurfacePoint<S>> work;
    work.reserve(d.size());
    for (const auto& p : d.points()) work.push_back(ax == Axis::Y ? p : swap_point(p));

    const double safety = 1e-6;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const double boost = std::ldexp(1.0, 2 * attempt);  // 4^attempt margin on retry
        auto fibers = detail::invariant_fibers(d, ax);
        std::vector<std::pair<S, S>> nodes;
        for (const auto& f : fibers) {
            const S inv = work[f.front()].y;
            // common escape time for the whole fiber, doubling search
            S s = scalar_traits<S>::from_int(1);
            bool zero_ok = true;
            for (size_t idx : f)
                if (!detail::exhaustion_exceeds(work[idx],
                                                zeta[idx] * boost * (1.0 + safety) + safety))
                    zero_ok = false;
            if (zero_ok) {
                nodes.emplace_back(inv, scalar_traits<S>::from_int(0));
                continue;
            }
            int doublings = 0;
            for (;; s = s * scalar_traits<S>::from_int(2)) {
                bool all_past = true;
                for (size_t idx : f) {
                    const auto q = flow_y(surf, s, work[idx]);
                    if (!detail::exhaustion_exceeds(q, zeta[idx] * boost * (1.0 + safety) +
                                                           safety)) {
                        all_past = false;
                        break;
                    }
                }
                if (all_past) break;
                if (++doublings > 900) throw SearchDiverged("doubling cap in spread_past");
            }
            nodes.emplace_back(inv, s);
        }
        Word<S> w;
        bool nontrivial = false;
        for (const auto& n : nodes)
            if (!scalar_traits<S>::is_zero(n.second)) nontrivial = true;
        if (nontrivial) {
            const Polynomial<S> mult = interpolate(nodes);
            w.gens.push_back(ax == Axis::Y
                                 ? Generator<S>::replica_y(mult, scalar_traits<S>::from_int(1))
                                 : Generator<S>::replica_x(mult, scalar_traits<S>::from_int(1)));
        }
        // verify on the original points
        std::vector<double> achieved;
        bool ok = true;
        for (size_t i = 0; i < d.size(); ++i) {
            const auto q = word_apply(surf, w, d[i]);
            if (!detail::exhaustion_exceeds(q, zeta[i])) ok = false;
            achieved.push_back(exhaustion(q));
        }
        if (ok) {
            wit.word = std::move(w);
            wit.achieved = std::move(achieved);
            return wit;
        }
    }
    throw SearchDiverged("spread_past verification kept failing after margin boosts");
}

// ---------------------------------------------------------------------------
// map_tame_to_tame: realize an injective map D -> Dt by one automorphism
// word, via the five-stage projection pipeline.
// ---------------------------------------------------------------------------

template <class S>
struct MapReport {
    Word<S> word;
    std::vector<double> residuals;  // coordinate distance to the targets
    double max_residual = 0;
};

namespace detail {

// Nonvanishing tag values, consistent across both sets: a point prefers its
// own current x (keeps its prescribing flow time zero); fallbacks are small
// integers in the exact backend and well-conditioned root-of-unity rings in
// the approximate one.
template <class S>
std::vector<S> assign_tags(const std::vector<S>& preferred, size_t total_needed) {
    std::vector<S> tags;
    std::vector<S> used;
    const double scale = [&] {
        double s = 1.0;
        for (const S& v : preferred) s = std::max(s, abs_value(v));
        return s;
    }();
    auto acceptable = [&](const S& v) {
        if constexpr (scalar_traits<S>::exact) {
            if (v.is_zero()) return false;
            for (const S& u : used)
                if (u == v) return false;
            return true;
        } else {
            if (abs_value(v) <= 1e-6 * scale) return false;
            for (const S& u : used)
                if (abs_value(u - v) <= 1e-3 * scale) return false;
            return true;
        }
    };
    size_t fallback = 0;
    auto next_fallback = [&]() -> S {
        if constexpr (scalar_traits<S>::exact) {
            return scalar_traits<S>::from_int(static_cast<long>(++fallback));
        } else {
            // rings of 16 at radii 2*scale, 3*scale, ...: nonzero, separated,
            // numerically tame Lagrange nodes
            const size_t k = fallback++;
            const double radius = (2.0 + static_cast<double>(k / 16)) * scale;
            const double ang = 2.0 * M_PI * static_cast<double>(k % 16) / 16.0;
            return Complex(radius * std::cos(ang), radius * std::sin(ang));
        }
    };
    for (size_t i = 0; i < total_needed; ++i) {
        S tag{};
        if (i < preferred.size() && acceptable(preferred[i])) {
            tag = preferred[i];
        } else {
            do {
                tag = next_fallback();
            } while (!acceptable(tag));
        }
        used.push_back(tag);
        tags.push_back(tag);
    }
    return tags;
}

template <class S>
double point_distance(const SurfacePoint<S>& a, const SurfacePoint<S>& b) {
    return std::max({abs_value(a.x - b.x), abs_value(a.y - b.y), abs_value(a.z - b.z)});
}

}  // namespace detail

namespace detail {

// One pass of the five-stage pipeline: a word mapping src[i] onto
// dst[tgt_idx[i]] up to floating-point conditioning (exactly in the exact
// backend when every flow-time equation has a rational root).
template <class S>
Word<S> map_tame_pass(const Surface<S>& surf, const std::vector<SurfacePoint<S>>& src,
                      const std::vector<SurfacePoint<S>>& dst,
                      const std::vector<size_t>& tgt_idx, Rng& sub) {
    // stage 1: make the y-projection injective on both sets
    auto stage1 = [&](const std::vector<SurfacePoint<S>>& pts) -> Word<S> {
        double maxmod = 0, mingap = std::numeric_limits<double>::infinity();
        bool exact_distinct = true;
        for (size_t i = 0; i < pts.size(); ++i) {
            maxmod = std::max(maxmod, abs_value(pts[i].y));
            for (size_t j = i + 1; j < pts.size(); ++j) {
                mingap = std::min(mingap, abs_value(pts[i].y - pts[j].y));
                if (pts[i].y == pts[j].y) exact_distinct = false;
            }
        }
        if (pts.size() < 2 || (exact_distinct && mingap > 1e-6 * (1.0 + maxmod)))
            return Word<S>{};
        return randomize_projection(surf, DiscreteSet<S>(surf, pts), sub, 64, Axis::Y).word;
    };
    const Word<S> phi1 = stage1(src);
    const Word<S> psi1 = stage1(dst);

    std::vector<SurfacePoint<S>> d1, dt1;
    for (const auto& p : src) d1.push_back(word_apply(surf, phi1, p));
    for (const auto& p : dst) dt1.push_back(word_apply(surf, psi1, p));

    // stage 2: consistent nonvanishing tags; the i-th source point and its
    // target share a tag, remaining dst points get the leftover pool
    std::vector<S> preferred;
    for (size_t i = 0; i < d1.size(); ++i) preferred.push_back(d1[i].x);
    std::vector<bool> is_image(dt1.size(), false);
    for (size_t idx : tgt_idx) is_image[idx] = true;
    for (size_t j = 0; j < dt1.size(); ++j)
        if (!is_image[j]) preferred.push_back(dt1[j].x);
    const std::vector<S> tags = assign_tags<S>(preferred, dt1.size());

    std::vector<S> tags_d(d1.size());
    std::vector<S> tags_dt(dt1.size());
    for (size_t i = 0; i < d1.size(); ++i) {
        tags_d[i] = tags[i];
        tags_dt[tgt_idx[i]] = tags[i];
    }
    size_t extra = d1.size();
    for (size_t j = 0; j < dt1.size(); ++j)
        if (!is_image[j]) tags_dt[j] = tags[extra++];

    // stage 3: prescribe the x-values on both sets
    const Word<S> phi2 = prescribe_p2(surf, DiscreteSet<S>(surf, d1), tags_d);
    const Word<S> psi2 = prescribe_p2(surf, DiscreteSet<S>(surf, dt1), tags_dt);
    std::vector<SurfacePoint<S>> d2, dt2;
    for (const auto& p : d1) d2.push_back(word_apply(surf, phi2, p));
    for (const auto& p : dt1) dt2.push_back(word_apply(surf, psi2, p));

    // stage 4: close each fiber with one x-invariant flow; the flow time
    // solves z_A - x gamma = z_B, a linear equation
    std::vector<std::pair<S, S>> nodes;
    bool nontrivial = false;
    for (size_t i = 0; i < d2.size(); ++i) {
        const auto& A = d2[i];
        const auto& B = dt2[tgt_idx[i]];
        const S gamma = (A.z - B.z) / A.x;
        if (!scalar_traits<S>::is_zero(gamma)) nontrivial = true;
        nodes.emplace_back(A.x, gamma);
    }
    Word<S> eta_word;
    if (nontrivial)
        eta_word.gens.push_back(
            Generator<S>::replica_x(interpolate(nodes), scalar_traits<S>::from_int(1)));

    // alpha = psi1^-1 . psi2^-1 . eta . phi2 . phi1 (applied left to right)
    Word<S> alpha = word_compose(word_compose(phi1, phi2), eta_word);
    alpha = word_compose(alpha, word_inverse(psi2));
    return word_compose(alpha, word_inverse(psi1));
}

}  // namespace detail

// zeta_idx[i] is the index in dt of the image of d[i]; must be injective.
template <class S>
MapReport<S> map_tame_to_tame(const Surface<S>& surf, const DiscreteSet<S>& d,
                              const DiscreteSet<S>& dt, const std::vector<size_t>& zeta_idx,
                              Rng& rng) {
    if (zeta_idx.size() != d.size()) throw UsageError("map_tame_to_tame: one image per point");
    if (d.size() > dt.size()) throw UsageError("map_tame_to_tame: |D| must be <= |Dt|");
    {
        std::vector<size_t> sorted = zeta_idx;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
            (!sorted.empty() && sorted.back() >= dt.size()))
            throw NotInjective("zeta must be an injective map into Dt");
    }
    MapReport<S> rep;
    if (d.empty()) return rep;

    const double res_tol = 1e-9;
    std::vector<SurfacePoint<S>> targets;
    for (size_t idx : zeta_idx) targets.push_back(dt[idx]);
    std::vector<size_t> identity_idx(targets.size());
    for (size_t i = 0; i < identity_idx.size(); ++i) identity_idx[i] = i;

    std::string last_error = "no attempt";
    std::exception_ptr structural;  // rational-root nonexistence is not a random degradation
    for (int attempt = 0; attempt < 4; ++attempt) {
        Rng sub = rng.substream(1000 + static_cast<uint64_t>(attempt));
        try {
            Word<S> alpha =
                detail::map_tame_pass(surf, d.points(), dt.points(), zeta_idx, sub);
            // Iterative refinement: interpolation conditioning leaves the
            // one-pass residual around eps * kappa; a correction pass maps
            // the achieved images (displacements ~ current residual) onto
            // the targets, contracting the error by another eps * kappa.
            for (int pass = 0; pass < 4; ++pass) {
                MapReport<S> out;
                out.word = alpha;
                std::vector<SurfacePoint<S>> images;
                bool exact_match = true;
                for (size_t i = 0; i < d.size(); ++i) {
                    images.push_back(word_apply(surf, alpha, d[i]));
                    const double r = detail::point_distance(images.back(), targets[i]);
                    out.residuals.push_back(r);
                    out.max_residual = std::max(out.max_residual, r);
                    if (!(images.back() == targets[i])) exact_match = false;
                }
                if constexpr (scalar_traits<S>::exact) {
                    // every stage is exact algebra, so a completed pass
                    // matches identically
                    if (exact_match) return out;
                    break;
                } else {
                    // demand a decade of margin while refinement is cheap
                    if (out.max_residual < res_tol * 0.1) return out;
                    if (pass == 3) {
                        if (out.max_residual < res_tol) return out;
                        break;
                    }
                    alpha = word_compose(
                        alpha, detail::map_tame_pass(surf, images, targets, identity_idx, sub));
                }
            }
            last_error = "residual above tolerance after refinement";
        } catch (const NoExactFlowTime& e) {
            structural = std::current_exception();
            last_error = e.what();
        } catch (const DomainError& e) {
            // a random stage degraded; retry with a fresh parameter stream
            last_error = e.what();
        }
    }
    if (structural) std::rethrow_exception(structural);
    throw InjectivityLost("pipeline failed after retries; last: " + last_error);
}

// ---------------------------------------------------------------------------
// split_into_tame: split by dominant coordinate, then witness each half
// along its favored axis (with a projection fix-up when needed).
// ---------------------------------------------------------------------------

template <class S>
struct SplitWitness {
    DiscreteSet<S> d1, d2;
    TameWitness<S> w1, w2;
};

template <class S>
SplitWitness<S> split_into_tame(const Surface<S>& surf, const DiscreteSet<S>& d,
                                const std::vector<double>& zeta, Rng& rng) {
    if (zeta.size() != d.size()) throw UsageError("split_into_tame: one zeta per point");
    auto halves = split(surf, d);

    auto witness_half = [&](const DiscreteSet<S>& half, Axis axis,
                            uint64_t tag) -> TameWitness<S> {
        // zeta values follow the points into the halves
        std::vector<double> zh;
        for (const auto& p : half.points()) {
            for (size_t i = 0; i < d.size(); ++i) {
                if (d[i] == p) {
                    zh.push_back(zeta[i]);
                    break;
                }
            }
        }
        if (half.empty()) return TameWitness<S>{{}, zh, {}};
        Word<S> fixup;
        if (!projection_report(half, axis).injective) {
            Rng sub = rng.substream(tag);
            fixup = randomize_projection(surf, half, sub, 64, axis).word;
        }
        std::vector<SurfacePoint<S>> moved;
        for (const auto& p : half.points()) moved.push_back(word_apply(surf, fixup, p));
        TameWitness<S> inner = spread_past(surf, DiscreteSet<S>(surf, moved), zh,
                                           axis == Axis::X ? AxisChoice::X : AxisChoice::Y);
        TameWitness<S> out;
        out.word = word_compose(fixup, inner.word);
        out.zeta = zh;
        // achieved values are measured on the original points through the
        // full witness word
        for (size_t i = 0; i < half.size(); ++i) {
            const auto q = word_apply(surf, out.word, half[i]);
            if (!detail::exhaustion_exceeds(q, zh[i]))
                throw SearchDiverged("split witness lost its margin");
            out.achieved.push_back(exhaustion(q));
        }
        return out;
    };

    SplitWitness<S> res;
    res.d1 = halves.first;
    res.d2 = halves.second;
    res.w1 = witness_half(halves.first, Axis::X, 11);
    res.w2 = witness_half(halves.second, Axis::Y, 22);
    return res;
}

}  // namespace danlab
