#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "danlab/constructions.hpp"
#include "helpers.hpp"

using namespace danlab;

namespace {

ExactComplex ec(long re, long im = 0) { return ExactComplex(mpq_class(re), mpq_class(im)); }

const Surface<ExactComplex>& quadric() {
    static Surface<ExactComplex> s(Polynomial<ExactComplex>::parse("-1,0,1"));
    return s;
}

const Surface<Complex>& aquadric() {
    static Surface<Complex> s(Polynomial<Complex>::parse("-1,0,1"));
    return s;
}

}  // namespace

TEST_CASE("interpolate examples against a Vandermonde oracle") {
    // single node -> constant
    const auto c = interpolate<ExactComplex>({{ec(3), ec(7)}});
    CHECK(c == Polynomial<ExactComplex>::constant(ec(7)));
    // (0,0), (1,1) -> identity
    const auto id = interpolate<ExactComplex>({{ec(0), ec(0)}, {ec(1), ec(1)}});
    CHECK(id == Polynomial<ExactComplex>::identity());
    // (0,1), (1,2), (2,5): the 3x3 Vandermonde system solves to 1 + z^2
    const auto q = interpolate<ExactComplex>({{ec(0), ec(1)}, {ec(1), ec(2)}, {ec(2), ec(5)}});
    CHECK(q == Polynomial<ExactComplex>::parse("1,0,1"));
    CHECK_THROWS_AS(interpolate<ExactComplex>({{ec(1), ec(0)}, {ec(1), ec(2)}}), DuplicateNode);
}

TEST_CASE("interpolation hits random exact nodes exactly") {
    Rng rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::pair<ExactComplex, ExactComplex>> nodes;
        const int n = static_cast<int>(rng.uniform_int(1, 6));
        for (int i = 0; i < n; ++i) {
            ExactComplex a = testing::random_exact_scalar(rng, 30, 10);
            bool dup = false;
            for (const auto& nd : nodes)
                if (nd.first == a) dup = true;
            if (dup) continue;
            nodes.emplace_back(a, testing::random_exact_scalar(rng, 30, 10));
        }
        const auto g = interpolate(nodes);
        CHECK(g.degree() < static_cast<int>(nodes.size()));
        for (const auto& nd : nodes) CHECK(g.eval(nd.first) == nd.second);
    }
}

TEST_CASE("solve_flow_time: exact roots") {
    const auto& s = quadric();
    // orbit through (1,-1,0): x(xi) = 1 - xi^2; target 0 solved by xi = +-1
    const auto q = orbit_poly_x(s, s.point(ec(1), ec(-1), ec(0)));
    const auto xi = solve_flow_time(q, ec(0));
    CHECK((xi == ec(1) || xi == ec(-1)));
    CHECK(q.eval(xi) == ec(0));
    // current value: zero time
    CHECK(solve_flow_time(q, ec(1)) == ec(0));
    // no rational root: x(xi) = 1 - xi^2 = 3 needs xi^2 = -2
    CHECK_THROWS_AS(solve_flow_time(q, ec(3)), NoExactFlowTime);
}

TEST_CASE("solve_flow_time: certified numeric roots") {
    const auto& s = aquadric();
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const auto p = testing::random_approx_point(s, rng);
        const auto q = orbit_poly_x(s, p);
        const Complex target = rng.gaussian();
        const Complex xi = solve_flow_time(q, target);
        CHECK(std::abs(q.eval(xi) - target) <= 1e-9 * (1.0 + std::abs(target)));
    }
}

TEST_CASE("randomize_projection separates a colliding pair") {
    const auto& s = quadric();
    // both project to x = 5; eta_t values 5 + 2t and 5 - 2t split for t != 0
    DiscreteSet<ExactComplex> d(
        s, {s.point(ec(5), ec(0), ec(1)), s.point(ec(5), ec(0), ec(-1))});
    CHECK_FALSE(projection_report(d, Axis::X).injective);
    Rng rng(3);
    const auto rp = randomize_projection(s, d, rng, 64, Axis::X);
    std::vector<SurfacePoint<ExactComplex>> moved;
    for (const auto& p : d.points()) moved.push_back(word_apply(s, rp.word, p));
    const auto rep = projection_report(DiscreteSet<ExactComplex>(s, moved), Axis::X);
    CHECK(rep.injective);
    CHECK(rep.avoids_zero);
    // the word realizes eta_t: x-values are 5 +- 2t
    CHECK(moved[0].x == ec(5) + ec(2) * rp.t);
    CHECK(moved[1].x == ec(5) - ec(2) * rp.t);
}

TEST_CASE("randomize_projection singleton succeeds") {
    const auto& s = aquadric();
    DiscreteSet<Complex> d(s, {s.point(Complex(1, 0), Complex(-1, 0), Complex(0, 0))});
    Rng rng(12);
    CHECK_NOTHROW(randomize_projection(s, d, rng));
}

TEST_CASE("y = 0 with P'(z) = 0 cannot happen on the surface") {
    // P = z^2 - 1 has P'(0) = 0 but P(0) = -1 != 0, so no point (x, 0, 0)
    // satisfies xy = P(z); the eta family is never degenerate on X
    const auto& s = quadric();
    CHECK_THROWS_AS(s.point(ec(3), ec(0), ec(0)), NotOnSurface);
    const auto& sa = aquadric();
    CHECK_THROWS_AS(sa.point(Complex(3, 0), Complex(0, 0), Complex(0, 0)), NotOnSurface);
}

TEST_CASE("prescribe_p2: identity targets give the empty word") {
    const auto& s = quadric();
    DiscreteSet<ExactComplex> d(
        s, {s.point(ec(1), ec(-1), ec(0)), s.point(ec(-1), ec(1), ec(0))});
    const auto w = prescribe_p2(s, d, {ec(1), ec(-1)});
    CHECK(w.gens.empty());
}

TEST_CASE("prescribe_p2: single point reaches x = 0 with unit flow time") {
    const auto& s = quadric();
    DiscreteSet<ExactComplex> d(s, {s.point(ec(1), ec(-1), ec(0))});
    const auto w = prescribe_p2(s, d, {ec(0)});
    REQUIRE(w.gens.size() == 1);
    const auto img = word_apply(s, w, d[0]);
    CHECK(img.x == ec(0));
    CHECK(img.y == ec(-1));
    // the flow time solves 1 - xi^2 = 0; either root lands on z = -y*xi = +-1
    CHECK((img.z == ec(1) || img.z == ec(-1)));
    CHECK(s.residual(img).is_zero());
}

TEST_CASE("prescribe_p2: two fibers, independent targets, y preserved off-set") {
    const auto& s = quadric();
    DiscreteSet<ExactComplex> d(
        s, {s.point(ec(1), ec(-1), ec(0)), s.point(ec(-1), ec(1), ec(0))});
    const auto w = prescribe_p2(s, d, {ec(0), ec(-1)});
    const auto i0 = word_apply(s, w, d[0]);
    const auto i1 = word_apply(s, w, d[1]);
    CHECK(i0.x == ec(0));
    CHECK(i1.x == ec(-1));
    CHECK(i0.y == d[0].y);
    CHECK(i1.y == d[1].y);
    // replica preserves y at probe points off the defining set too
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        const auto probe = testing::random_exact_point(s, rng);
        CHECK(word_apply(s, w, probe).y == probe.y);
        CHECK(s.residual(word_apply(s, w, probe)).is_zero());
    }
    const DiscreteSet<ExactComplex> same_y(
        s, {s.point(ec(1), ec(-1), ec(0)), s.point(ec(-3), ec(-1), ec(2))});
    const std::vector<ExactComplex> targets{ec(0), ec(0)};
    CHECK_THROWS_AS(prescribe_p2(s, same_y, targets), NotInjective);
}

TEST_CASE("spread_past examples") {
    const auto& s = quadric();
    // zeta == 0 with positive exhaustion: empty word suffices
    DiscreteSet<ExactComplex> d0(s, {s.point(ec(1), ec(-1), ec(0))});
    const auto w0 = spread_past(s, d0, {0.0});
    CHECK(w0.word.gens.empty());
    CHECK(w0.achieved[0] > 0.0);

    // singleton with zeta = 100: a flow time with |1 - t^2| > 100 exists
    const auto w1 = spread_past(s, d0, {100.0});
    CHECK(w1.achieved[0] > 100.0);
    CHECK(s.residual(word_apply(s, w1.word, d0[0])).is_zero());

    // two points, distinct y, zeta = 1000 each, one replica word
    DiscreteSet<ExactComplex> d2(
        s, {s.point(ec(1), ec(-1), ec(0)), s.point(ExactComplex(mpq_class(-1, 2)), ec(2), ec(0))});
    const auto w2 = spread_past(s, d2, {1000.0, 1000.0});
    CHECK(w2.achieved[0] > 1000.0);
    CHECK(w2.achieved[1] > 1000.0);
    CHECK(w2.word.gens.size() <= 1);
}

TEST_CASE("spread_past randomized instances (approx)") {
    const auto& s = aquadric();
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const size_t n = static_cast<size_t>(rng.uniform_int(1, 8));
        auto pts = testing::separated_instance(s, rng, n);
        std::vector<double> zeta;
        for (size_t i = 0; i < n; ++i)
            zeta.push_back(std::pow(10.0, 1.0 + 5.0 * rng.uniform01()));
        const auto wit = spread_past(s, DiscreteSet<Complex>(s, pts), zeta);
        for (size_t i = 0; i < n; ++i) {
            CHECK(wit.achieved[i] > zeta[i]);
            // membership is preserved by the witness word
            CHECK(s.on_surface(word_apply(s, wit.word, pts[i])));
        }
    }
}

TEST_CASE("map_tame_to_tame: exact singleton fixture") {
    const auto& s = quadric();
    DiscreteSet<ExactComplex> d(s, {s.point(ec(1), ec(-1), ec(0))});
    DiscreteSet<ExactComplex> dt(s, {s.point(ec(0), ec(-1), ec(1))});
    Rng rng(1);
    const auto rep = map_tame_to_tame(s, d, dt, {0}, rng);
    CHECK(rep.max_residual == 0.0);
    CHECK(word_apply(s, rep.word, d[0]) == dt[0]);
}

TEST_CASE("map_tame_to_tame: exact identity fixture has zero residual") {
    const auto& s = quadric();
    DiscreteSet<ExactComplex> d(
        s, {s.point(ec(1), ec(-1), ec(0)), s.point(ec(-1), ec(1), ec(0))});
    Rng rng(2);
    const auto rep = map_tame_to_tame(s, d, d, {0, 1}, rng);
    CHECK(rep.max_residual == 0.0);
    for (size_t i = 0; i < d.size(); ++i) CHECK(word_apply(s, rep.word, d[i]) == d[i]);
}

TEST_CASE("map_tame_to_tame: randomized approximate instances") {
    const auto& s = aquadric();
    Rng rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        const size_t nd = static_cast<size_t>(rng.uniform_int(1, 6));
        const size_t extra = static_cast<size_t>(rng.uniform_int(0, 2));
        auto pts = testing::separated_instance(s, rng, nd + extra);
        std::vector<SurfacePoint<Complex>> dpts, dtpts;
        Rng tgt_rng = rng.substream(trial);
        auto tgt = testing::separated_instance(s, tgt_rng, nd + extra);
        for (size_t i = 0; i < nd; ++i) dpts.push_back(pts[i]);
        dtpts = tgt;
        // random injection
        std::vector<size_t> idx(nd + extra);
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (size_t i = idx.size(); i-- > 1;)
            std::swap(idx[i], idx[static_cast<size_t>(rng.uniform_int(0, (int64_t)i))]);
        idx.resize(nd);
        Rng sub = rng.substream(5000 + trial);
        const auto rep = map_tame_to_tame(s, DiscreteSet<Complex>(s, dpts),
                                          DiscreteSet<Complex>(s, dtpts), idx, sub);
        CHECK(rep.max_residual < 1e-9);
    }
}

TEST_CASE("map_tame_to_tame rejects non-injective maps") {
    const auto& s = quadric();
    DiscreteSet<ExactComplex> d(
        s, {s.point(ec(1), ec(-1), ec(0)), s.point(ec(-1), ec(1), ec(0))});
    Rng rng(3);
    CHECK_THROWS_AS(map_tame_to_tame(s, d, d, {0, 0}, rng), NotInjective);
}

TEST_CASE("split_into_tame examples") {
    const auto& s = quadric();
    Rng rng(9);
    // x-dominated set: D2 side empty
    DiscreteSet<ExactComplex> dx(
        s, {s.point(ec(5), ec(0), ec(1)), s.point(ec(7), ec(0), ec(-1))});
    const auto swx = split_into_tame(s, dx, {10.0, 10.0}, rng);
    CHECK(swx.d2.empty());
    CHECK(swx.w1.achieved.size() == 2);
    for (double a : swx.w1.achieved) CHECK(a > 10.0);

    // the split example set: one point per half
    DiscreteSet<ExactComplex> dm(
        s, {s.point(ec(5), ec(0), ec(1)), s.point(ec(0), ec(5), ec(1))});
    const auto swm = split_into_tame(s, dm, {100.0, 100.0}, rng);
    CHECK(swm.d1.size() == 1);
    CHECK(swm.d2.size() == 1);
    for (double a : swm.w1.achieved) CHECK(a > 100.0);
    for (double a : swm.w2.achieved) CHECK(a > 100.0);
}

TEST_CASE("split_into_tame randomized (approx): union and verified witnesses") {
    const auto& s = aquadric();
    Rng rng(55);
    for (int trial = 0; trial < 60; ++trial) {
        const size_t n = static_cast<size_t>(rng.uniform_int(1, 10));
        auto pts = testing::separated_instance(s, rng, n);
        std::vector<double> zeta(n, 1000.0);
        Rng sub = rng.substream(trial);
        const auto sw = split_into_tame(s, DiscreteSet<Complex>(s, pts), zeta, sub);
        CHECK(sw.d1.size() + sw.d2.size() >= n);
        for (double a : sw.w1.achieved) CHECK(a > 1000.0);
        for (double a : sw.w2.achieved) CHECK(a > 1000.0);
        // every input point appears in some half
        for (const auto& p : pts) {
            bool found = false;
            for (const auto& q : sw.d1.points())
                if (q == p) found = true;
            for (const auto& q : sw.d2.points())
                if (q == p) found = true;
            CHECK(found);
        }
    }
}
