#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "danlab/discrete_set.hpp"
#include "danlab/gaussian.hpp"
#include "danlab/words.hpp"

namespace danlab {

// eta_t(x,y,z) = (1/y) P(z + yt) for y != 0, x + t P'(z) for y = 0, computed
// by the finite series so y = 0 is a regular case. Equals x(flow_y(-t, p)).
template <class S>
S eta(const Surface<S>& surf, const S& t, const SurfacePoint<S>& p) {
    return eta_poly(surf, p).eval(t);
}

// One Monte Carlo measurement of a hit probability gamma{t : |f(t)| < r}.
struct SpreadReport {
    Complex point_x{}, point_y{}, point_z{};  // measured point (z unused for the toy model)
    double r = 0;
    uint64_t samples = 0;
    uint64_t hits = 0;
    double estimate = 0;    // hits / samples
    double stderr_est = 0;  // sqrt(estimate (1-estimate) / samples)
    std::optional<double> bound;  // analytic bound when one applies
};

// Hit-probability bound pi rho^2/|y|^2 + |y|^((2-2d)/d) pi (r/alpha)^(2/d),
// clamped to [0,1] for reporting.
double hit_probability_bound(const GrowthBounds& b, int d, double y_mod, double r);

template <class S>
double hit_probability_bound(const Surface<S>& surf, double y_mod, double r) {
    return hit_probability_bound(surf.bounds(), surf.degree(), y_mod, r);
}

// Core MC estimator over the polynomial-in-t family f(t) = sum_k c_k t^k,
// with t drawn from the standard complex Gaussian. Deterministic per rng
// stream. Requires N >= 1000.
SpreadReport mc_hit_probability(const Polynomial<Complex>& poly_in_t, double r, uint64_t n,
                                Rng rng, std::optional<double> bound = std::nullopt);

SpreadReport mc_hit_eta(const Surface<Complex>& surf, const SurfacePoint<Complex>& p, double r,
                        uint64_t n, Rng rng);

// ---------------------------------------------------------------------------
// Critical-radius search and threshold sequences.
// ---------------------------------------------------------------------------

// Search-grid parameters for estimate_cR. The grids are deterministic
// (low-discrepancy phase offsets); the rng argument of estimate_cR is part
// of the operation contract but the default sampler does not consume it.
struct CRParams {
    std::vector<double> x_mults{1.0, 2.0, 4.0};  // sampled |x| targets, multiples of R
    int z_radii = 8;
    int z_phases = 24;
    int y_mags = 6;
    int y_phases = 8;
    double x_rel_tol = 0.02;  // keep |x| within this of the target
    int t_radii = 96;
    int t_phases = 48;
    double t_max = 8.0;       // gaussian_tail(8) ~ 1.3e-14
    size_t max_points = 256;
};

// Upper approximation of
//   c_R = inf{ |t| : exists (x,y,z) in X, |eta_t| <= r, |x| = R, |y| <= R^(1/d^2) }
// by sampling the constraint region and minimizing |t| over found solutions.
// Returns t_max when no sampled solution exists (conservative for the
// threshold builder, which applies gaussian_tail to the result).
double estimate_cR(const Surface<Complex>& surf, double R, double r, const CRParams& prm,
                   Rng& rng);

// Builds radii R_1 <= ... <= R_n_max such that the certified hit bound at
// exhaustion radius R_n with ball radius r_ball * n is < delta_n = 2^-(n+1).
// The certificate combines hit_probability_bound on the |y|-large region with
// gaussian_tail(estimate_cR) on the |x| >= R >= |y|^(d^2) region.
ThresholdSchedule threshold_sequence(const Surface<Complex>& surf, int n_max, double r_ball,
                                     Rng& rng, const CRParams& prm = {});

// The certified per-level bound itself (exposed for tests/reports).
double threshold_certified_bound(const Surface<Complex>& surf, double R, double ball_r,
                                 const CRParams& prm, Rng& rng);

// ---------------------------------------------------------------------------
// Appendix toy model: pi_t(x, y) = x + t f(y) on C^2.
// ---------------------------------------------------------------------------

struct ToyFamily {
    enum class Kind { polynomial, exp_neg };
    Kind kind = Kind::polynomial;
    Polynomial<Complex> f;  // polynomial kind only

    static ToyFamily poly(Polynomial<Complex> p) {
        return ToyFamily{Kind::polynomial, std::move(p)};
    }
    static ToyFamily exp_neg() { return ToyFamily{Kind::exp_neg, {}}; }

    Complex value(const Complex& y) const {
        return kind == Kind::polynomial ? f.eval(y) : std::exp(-y);
    }
};

inline Complex toy_eta(const ToyFamily& fam, const Complex& t, const Complex& x,
                       const Complex& y) {
    return x + t * fam.value(y);
}

SpreadReport mc_hit_toy(const ToyFamily& fam, const Complex& x, const Complex& y, double r,
                        uint64_t n, Rng rng);

struct ToyRow {
    double sphere_radius = 0;  // ||v|| of the sampled point
    SpreadReport report;
};

struct ToyVerdict {
    bool spreading_evidence = false;
    double r = 0;
    double eps = 0;
    // first grid R whose sampled sup hit-measure stays below eps (if any)
    std::optional<double> R_found;
    std::vector<ToyRow> rows;
    // max-measure row at the largest grid radius when evidence fails
    std::optional<ToyRow> witness;
};

ToyVerdict toy_spread_verdict(const ToyFamily& fam, double r, double eps,
                              const std::vector<double>& r_grid, uint64_t n, Rng& rng);

}  // namespace danlab
