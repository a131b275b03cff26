#include "danlab/spreading.hpp"

#include <algorithm>
#include <cmath>

#include "danlab/kernels.hpp"

namespace danlab {

namespace {

struct GaussianBatch {
    std::vector<double> re, im;
    size_t size() const { return re.size(); }
};

GaussianBatch draw_batch(Rng& rng, size_t n) {
    GaussianBatch b;
    b.re.resize(n);
    b.im.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const Complex t = rng.gaussian();
        b.re[i] = t.real();
        b.im[i] = t.imag();
    }
    return b;
}

kernels::HitPoly hit_poly_view(const Polynomial<Complex>& p, Complex& zero_slot) {
    if (p.is_zero()) {
        zero_slot = Complex(0, 0);
        return {&zero_slot, 1};
    }
    return {p.coeffs().data(), p.coeffs().size()};
}

}  // namespace

double hit_probability_bound(const GrowthBounds& b, int d, double y_mod, double r) {
    if (y_mod <= 0) throw DomainError("hit_probability_bound requires |y| > 0");
    const double first = M_PI * b.rho * b.rho / (y_mod * y_mod);
    const double second =
        std::pow(y_mod, (2.0 - 2.0 * d) / d) * M_PI * std::pow(r / b.alpha, 2.0 / d);
    return std::min(1.0, first + second);
}

SpreadReport mc_hit_probability(const Polynomial<Complex>& poly_in_t, double r, uint64_t n,
                                Rng rng, std::optional<double> bound) {
    if (n < 1000) throw UsageError("mc_hit_probability requires N >= 1000");
    if (r < 0) throw UsageError("mc_hit_probability requires r >= 0");
    SpreadReport rep;
    rep.r = r;
    rep.samples = n;
    rep.bound = bound;
    const GaussianBatch batch = draw_batch(rng, n);
    Complex zero_slot;
    const auto view = hit_poly_view(poly_in_t, zero_slot);
    rep.hits = kernels::count_hits(view, batch.re.data(), batch.im.data(), n, r * r);
    rep.estimate = static_cast<double>(rep.hits) / static_cast<double>(n);
    rep.stderr_est = std::sqrt(rep.estimate * (1.0 - rep.estimate) / static_cast<double>(n));
    return rep;
}

SpreadReport mc_hit_eta(const Surface<Complex>& surf, const SurfacePoint<Complex>& p, double r,
                        uint64_t n, Rng rng) {
    const double ymod = std::abs(p.y);
    std::optional<double> bound;
    if (ymod > 0) bound = hit_probability_bound(surf, ymod, r);
    SpreadReport rep = mc_hit_probability(eta_poly(surf, p), r, n, rng, bound);
    rep.point_x = p.x;
    rep.point_y = p.y;
    rep.point_z = p.z;
    return rep;
}

// ---------------------------------------------------------------------------
// estimate_cR
// ---------------------------------------------------------------------------

double estimate_cR(const Surface<Complex>& surf, double R, double r, const CRParams& prm,
                   Rng& rng) {
    (void)rng;  // grids are deterministic low-discrepancy; see CRParams
    if (R <= r) throw DomainError("estimate_cR requires R > r");
    const int d = surf.degree();
    const GrowthBounds& gb = surf.bounds();
    const double y_cap = std::pow(R, 1.0 / (d * d));
    constexpr double kGolden = 0.6180339887498949;

    std::vector<SurfacePoint<Complex>> pts;
    const int ray_count = prm.z_radii * prm.z_phases;
    for (double mult : prm.x_mults) {
        const double Rx = mult * R;
        for (int jy = 0; jy < prm.y_mags && pts.size() < prm.max_points; ++jy) {
            const double ymag = y_cap * (jy + 1) / prm.y_mags;
            for (int py = 0; py < prm.y_phases && pts.size() < prm.max_points; ++py) {
                const double yph = 2.0 * M_PI * (py + kGolden * (jy + 1)) / prm.y_phases;
                const Complex y = std::polar(ymag, yph);
                // per-ray bisection for |P(z)| = Rx |y|: the growth bounds
                // sandwich |P| above rho, so the bracket always crosses
                const double target = Rx * ymag;
                for (int ray = 0; ray < ray_count && pts.size() < prm.max_points; ++ray) {
                    const double zph =
                        2.0 * M_PI * (ray + kGolden * (jy + py + 1)) / ray_count;
                    const Complex dir = std::polar(1.0, zph);
                    double lo = 1e-9;
                    double hi = std::max(gb.rho, std::pow(target / gb.alpha, 1.0 / d));
                    auto mag = [&](double rad) {
                        return std::abs(surf.poly().eval(rad * dir));
                    };
                    if (mag(lo) > target) continue;  // this ray starts above the level set
                    for (int it = 0; it < 60; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        (mag(mid) < target ? lo : hi) = mid;
                    }
                    const Complex z = hi * dir;
                    const Complex x = surf.poly().eval(z) / y;
                    if (std::abs(std::abs(x) - Rx) > prm.x_rel_tol * Rx) continue;
                    pts.push_back(SurfacePoint<Complex>{x, y, z});
                }
            }
        }
    }
    if (pts.empty())
        throw InfeasibleRegion("no on-surface sample with |x|~R, |y|<=R^(1/d^2) found");

    // t grid sorted by |t| ascending; the first hit per point gives its
    // minimal found |t|.
    std::vector<double> t_re, t_im;
    t_re.reserve(static_cast<size_t>(prm.t_radii) * prm.t_phases);
    t_im.reserve(t_re.capacity());
    for (int it = 0; it < prm.t_radii; ++it) {
        const double tr = prm.t_max * (it + 1) / prm.t_radii;
        for (int pt = 0; pt < prm.t_phases; ++pt) {
            const double ang = 2.0 * M_PI * (pt + kGolden * (it + 1)) / prm.t_phases;
            t_re.push_back(tr * std::cos(ang));
            t_im.push_back(tr * std::sin(ang));
        }
    }

    double best = prm.t_max;
    std::vector<double> abs2(t_re.size());
    const double r2 = r * r;
    for (const auto& p : pts) {
        const Polynomial<Complex> poly = eta_poly(surf, p);
        Complex zero_slot;
        const auto view = hit_poly_view(poly, zero_slot);
        kernels::eval_abs2(view, t_re.data(), t_im.data(), t_re.size(), abs2.data());
        for (size_t i = 0; i < abs2.size(); ++i) {
            if (abs2[i] <= r2) {
                const double mod = std::hypot(t_re[i], t_im[i]);
                best = std::min(best, mod);
                break;  // radii ascend; later hits for this point are no smaller
            }
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// threshold_sequence
// ---------------------------------------------------------------------------

double threshold_certified_bound(const Surface<Complex>& surf, double R, double ball_r,
                                 const CRParams& prm, Rng& rng) {
    const int d = surf.degree();
    // region |y| >= R^(1/d^2): the analytic hit bound, monotone decreasing in |y| for d >= 2
    const double region_y = hit_probability_bound(surf, std::pow(R, 1.0 / (d * d)), ball_r);
    // region |x| >= R >= |y|^(d^2): gaussian tail past the sampled c_R;
    // no usable sample means no certificate for this region (vacuous 1.0)
    double region_x = 1.0;
    if (R > ball_r) {
        try {
            region_x = gaussian_tail(estimate_cR(surf, R, ball_r, prm, rng));
        } catch (const InfeasibleRegion&) {
        }
    }
    return std::max(region_y, region_x);
}

ThresholdSchedule threshold_sequence(const Surface<Complex>& surf, int n_max, double r_ball,
                                     Rng& rng, const CRParams& prm) {
    if (n_max < 1 || n_max > 64) throw UsageError("threshold_sequence requires 1 <= n_max <= 64");
    if (r_ball <= 0) throw UsageError("threshold_sequence requires r_ball > 0");
    std::vector<double> radii;
    double prev = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        const double delta = std::ldexp(1.0, -n - 1);
        const double ball = r_ball * n;
        Rng sub = rng.substream(static_cast<uint64_t>(n));
        auto bound = [&](double R) { return threshold_certified_bound(surf, R, ball, prm, sub); };
        // doubling
        double hi = std::max(prev, ball + 1.0);
        int it = 0;
        while (bound(hi) >= delta) {
            hi *= 2.0;
            if (++it > 200) throw BoundNotAchievable("doubling cap hit at level " +
                                                     std::to_string(n));
        }
        // bisection down to the failing side
        double lo = std::max(prev, std::min(hi / 2.0, ball));
        if (bound(lo) < delta) {
            hi = lo;  // already certified at the floor
        } else {
            for (int b = 0; b < 40 && hi - lo > 1e-6 * hi; ++b) {
                const double mid = 0.5 * (lo + hi);
                if (bound(mid) < delta) hi = mid;
                else lo = mid;
            }
        }
        if (bound(hi) >= delta) throw BoundNotAchievable("certification lost at level " +
                                                         std::to_string(n));
        prev = std::max(prev, hi);
        radii.push_back(prev);
    }
    return make_schedule(std::move(radii), r_ball);
}

// ---------------------------------------------------------------------------
// toy model verdict
// ---------------------------------------------------------------------------

SpreadReport mc_hit_toy(const ToyFamily& fam, const Complex& x, const Complex& y, double r,
                        uint64_t n, Rng rng) {
    Polynomial<Complex> poly({x, fam.value(y)});
    SpreadReport rep = mc_hit_probability(poly, r, n, std::move(rng));
    rep.point_x = x;
    rep.point_y = y;
    rep.point_z = Complex(0, 0);
    return rep;
}

ToyVerdict toy_spread_verdict(const ToyFamily& fam, double r, double eps,
                              const std::vector<double>& r_grid, uint64_t n, Rng& rng) {
    ToyVerdict v;
    v.r = r;
    v.eps = eps;
    // Sphere sample: |y| fractions of ||v|| (both poles included; (0, R) is
    // the designated witness direction for the essential-singularity case).
    const std::vector<double> y_fracs{0.0, 0.25, 0.5, 0.75, 1.0};
    const int phases = 4;
    uint64_t tag = 0;
    for (double R : r_grid) {
        double sup = 0;
        ToyRow sup_row;
        for (double sphere : {R, 2.0 * R, 4.0 * R}) {
            for (double fy : y_fracs) {
                const double ymag = fy * sphere;
                const double xmag = std::sqrt(std::max(0.0, sphere * sphere - ymag * ymag));
                for (int ph = 0; ph < phases; ++ph) {
                    const double a = 2.0 * M_PI * ph / phases;
                    const Complex y = std::polar(ymag, a);
                    const Complex x = std::polar(xmag, a * 0.5);
                    ToyRow row;
                    row.sphere_radius = sphere;
                    row.report = mc_hit_toy(fam, x, y, r, n, rng.substream(tag++));
                    if (row.report.estimate >= sup) {
                        sup = row.report.estimate;
                        sup_row = row;
                    }
                    v.rows.push_back(std::move(row));
                    // y = 0 pole: the hit measure depends only on |x|, |f(0)|
                    // (gaussian rotation invariance), so one phase suffices
                    if (ymag == 0.0) break;
                }
            }
        }
        if (sup < eps) {
            v.spreading_evidence = true;
            v.R_found = R;
            return v;
        }
        v.witness = sup_row;  // latest (largest R) maximal-measure sample
    }
    v.spreading_evidence = false;
    return v;
}

}  // namespace danlab
