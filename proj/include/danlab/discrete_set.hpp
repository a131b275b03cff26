#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "danlab/surface.hpp"

namespace danlab {

// Finite list of pairwise distinct points on one surface. Finite truncation
// of the idealized infinite discrete sets; all diagnostics are quantitative.
template <class S>
class DiscreteSet {
  public:
    DiscreteSet() = default;

    DiscreteSet(const Surface<S>& surf, std::vector<SurfacePoint<S>> points)
        : points_(std::move(points)) {
        for (const auto& p : points_)
            if (!surf.on_surface(p))
                throw MixedSurfaces("point not on the given surface, residual " +
                                    format_scalar(surf.residual(p)));
        for (size_t i = 0; i < points_.size(); ++i) {
            for (size_t j = i + 1; j < points_.size(); ++j) {
                if constexpr (scalar_traits<S>::exact) {
                    if (points_[i] == points_[j]) throw DuplicatePoint();
                } else {
                    if (coord_distance(points_[i], points_[j]) <= 1e-12) throw DuplicatePoint();
                }
            }
        }
    }

    static double coord_distance(const SurfacePoint<S>& a, const SurfacePoint<S>& b) {
        return std::max({abs_value(a.x - b.x), abs_value(a.y - b.y), abs_value(a.z - b.z)});
    }

    bool empty() const { return points_.empty(); }
    size_t size() const { return points_.size(); }
    const std::vector<SurfacePoint<S>>& points() const { return points_; }
    const SurfacePoint<S>& operator[](size_t i) const { return points_[i]; }

  private:
    std::vector<SurfacePoint<S>> points_;
};

enum class Axis { X, Y };

template <class S>
const S& project(Axis axis, const SurfacePoint<S>& p) {
    return axis == Axis::X ? p.x : p.y;
}

// D1 = {|x| >= |y|}, D2 = {|y| >= |x|}; ties land in both halves unless
// disjoint_ties, which assigns them to D1 only. Exact backend compares the
// squared moduli exactly.
template <class S>
std::pair<DiscreteSet<S>, DiscreteSet<S>> split(const Surface<S>& surf, const DiscreteSet<S>& d,
                                                bool disjoint_ties = false) {
    std::vector<SurfacePoint<S>> d1, d2;
    for (const auto& p : d.points()) {
        const auto ax = scalar_traits<S>::abs2(p.x);
        const auto ay = scalar_traits<S>::abs2(p.y);
        if (ax >= ay) d1.push_back(p);
        if (ay > ax || (ay == ax && !disjoint_ties)) d2.push_back(p);
    }
    // proof inequality at finite scale: on D1, max{|x|,|y|} <= 2|x|
    for (const auto& p : d1)
        if (exhaustion(p) > 2.0 * abs_value(p.x) + 1e-12)
            throw InternalError("split: exhaustion(p) <= 2|x(p)| violated on D1");
    for (const auto& p : d2)
        if (exhaustion(p) > 2.0 * abs_value(p.y) + 1e-12)
            throw InternalError("split: exhaustion(p) <= 2|y(p)| violated on D2");
    return {DiscreteSet<S>(surf, std::move(d1)), DiscreteSet<S>(surf, std::move(d2))};
}

struct ProjectionReport {
    Axis axis = Axis::X;
    bool injective = false;
    double min_gap = 0;           // min pairwise distance of projected values
    bool avoids_zero = false;
    double properness_margin = 0; // min over points of |proj(p)| / exhaustion(p)
};

template <class S>
ProjectionReport projection_report(const DiscreteSet<S>& d, Axis axis) {
    ProjectionReport r;
    r.axis = axis;
    r.min_gap = std::numeric_limits<double>::infinity();
    r.properness_margin = std::numeric_limits<double>::infinity();
    r.avoids_zero = true;
    bool distinct = true;
    const auto& pts = d.points();
    for (size_t i = 0; i < pts.size(); ++i) {
        const S& vi = project(axis, pts[i]);
        if (scalar_traits<S>::is_zero(vi)) r.avoids_zero = false;
        const double e = exhaustion(pts[i]);
        const double m = e > 0 ? abs_value(vi) / e : (abs_value(vi) > 0
                               ? std::numeric_limits<double>::infinity() : 0.0);
        r.properness_margin = std::min(r.properness_margin, m);
        for (size_t j = i + 1; j < pts.size(); ++j) {
            const S& vj = project(axis, pts[j]);
            if (vi == vj) distinct = false;
            r.min_gap = std::min(r.min_gap, abs_value(vi - vj));
        }
    }
    r.injective = distinct && r.min_gap > 0;
    return r;
}

// Radii R_1 <= R_2 <= ... with per-level measure budgets delta_n = 2^-(n+1);
// the ball radius probed at level n is r_ball * n.
struct ThresholdSchedule {
    std::vector<double> radii;
    double r_ball = 1.0;
    std::vector<double> deltas;
};

inline ThresholdSchedule make_schedule(std::vector<double> radii, double r_ball) {
    ThresholdSchedule s;
    s.radii = std::move(radii);
    s.r_ball = r_ball;
    for (size_t n = 1; n <= s.radii.size(); ++n) s.deltas.push_back(std::ldexp(1.0, -(int)n - 1));
    for (size_t n = 0; n < s.radii.size(); ++n) {
        if (s.radii[n] <= 0) throw DomainError("threshold radii must be positive");
        if (n > 0 && s.radii[n] < s.radii[n - 1])
            throw DomainError("threshold radii must be nondecreasing");
    }
    if (r_ball <= 0) throw DomainError("threshold r_ball must be positive");
    return s;
}

// Counting predicate: for every n, #{p in D : exhaustion(p) <= R_n} <= n.
template <class S>
bool schedule_check(const DiscreteSet<S>& d, const ThresholdSchedule& sched) {
    for (size_t n = 0; n < sched.radii.size(); ++n) {
        size_t count = 0;
        for (const auto& p : d.points())
            if (exhaustion(p) <= sched.radii[n]) ++count;
        if (count > n + 1) return false;
    }
    return true;
}

}  // namespace danlab
