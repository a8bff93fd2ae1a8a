#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "linkint/curves.hpp"
#include "test_helpers.hpp"

using namespace linkint;
using linkint::testing::Rand;

TEST_CASE("great circle samples and velocity") {
    const ClosedCurve gc = great_circle(8);
    CHECK(norm4(gc.point_coords(0) - Vec4{1, 0, 0, 0}) < 1e-15);
    CHECK(norm4(gc.point_coords(2) - Vec4{0, 1, 0, 0}) < 1e-15);
    CHECK(norm4(gc.point_coords(4) - Vec4{-1, 0, 0, 0}) < 1e-15);
    CHECK(gc.arclength() == doctest::Approx(kTwoPi).epsilon(1e-12));

    const ClosedCurve c = great_circle(32);
    for (int i = 0; i < c.size(); ++i) {
        const double s = c.param(i);
        CHECK(norm4(c.velocity_coords(i) - Vec4{-std::sin(s), std::cos(s), 0, 0}) < 1e-10);
        CHECK(std::abs(dot4(c.velocity_coords(i), c.point_coords(i))) < 1e-10);
    }
}

TEST_CASE("velocity agrees with finite differences") {
    const ClosedCurve tk = clifford_torus_knot(2, 3, 512);
    const double h = tk.param_step();
    for (int i = 0; i < tk.size(); i += 29) {
        const Vec4 fd = (tk.point_coords((i + 1) % tk.size()) -
                         tk.point_coords((i + tk.size() - 1) % tk.size())) *
                        (1.0 / (2 * h));
        // second-order difference vs spectral derivative: error h^2 |x'''|/6
        CHECK(norm4(tk.velocity_coords(i) - fd) < 1e-3);
    }
    // the spectral derivative itself is accurate to near machine precision
    for (int i = 0; i < tk.size(); i += 61) {
        const double s = tk.param(i);
        const double r = 1.0 / std::sqrt(2.0);
        const Vec4 exact{-2 * r * std::sin(2 * s), 2 * r * std::cos(2 * s),
                         -3 * r * std::sin(3 * s), 3 * r * std::cos(3 * s)};
        CHECK(norm4(tk.velocity_coords(i) - exact) < 1e-8);
    }
}

TEST_CASE("canonical curve loci") {
    const ClosedCurve tk = clifford_torus_knot(2, 3, 64);
    for (int i = 0; i < tk.size(); ++i) {
        const Vec4& p = tk.point_coords(i);
        CHECK(std::abs(p[0] * p[0] + p[1] * p[1] - 0.5) < 1e-12);
        CHECK(std::abs(norm4(p) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(clifford_torus_knot(2, 4, 64), InvalidInput);
    CHECK_THROWS_AS(clifford_torus_knot(0, 1, 64), InvalidInput);

    // the (1,1) curve is a great circle: it spans a fixed 2-plane
    const ClosedCurve c11 = clifford_torus_knot(1, 1, 32);
    const Vec4 n1{1, 0, -1, 0}, n2{0, 1, 0, -1};
    for (int i = 0; i < c11.size(); ++i) {
        CHECK(std::abs(dot4(c11.point_coords(i), n1)) < 1e-12);
        CHECK(std::abs(dot4(c11.point_coords(i), n2)) < 1e-12);
    }

    const Point center = canonical_pole(SpaceTag::H3);
    const ClosedCurve hc = h3_geodesic_circle(center, 0.8, 32);
    for (int i = 0; i < hc.size(); ++i)
        CHECK(std::abs(distance(center, hc.point(i)) - 0.8) < 1e-10);
}

TEST_CASE("hopf fiber pair is Clifford parallel") {
    auto [a, b] = hopf_fiber_pair(64, kPi / 4);
    // min distance from each point of a to the curve b is the constant eta
    double lo = 1e9, hi = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        double m = 1e9;
        for (int j = 0; j < b.size(); ++j) m = std::min(m, distance(a.point(i), b.point(j)));
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    CHECK(lo == doctest::Approx(kPi / 4).epsilon(1e-3));
    CHECK(hi - lo < 2e-3);  // sampling jitter only
}

TEST_CASE("resampling is spectral") {
    const ClosedCurve tk = clifford_torus_knot(2, 3, 64);
    const ClosedCurve same = tk.resampled(64);
    for (int i = 0; i < tk.size(); ++i)
        CHECK(norm4(tk.point_coords(i) - same.point_coords(i)) < 1e-12);

    const ClosedCurve up = great_circle(16).resampled(64);
    for (int i = 0; i < up.size(); ++i) CHECK(std::abs(norm4(up.point_coords(i)) - 1.0) < 1e-13);

    const ClosedCurve tk2 = tk.resampled(192);
    CHECK(std::abs(tk2.arclength() - tk.arclength()) < 1e-6);

    // arclength of a variable-speed analytic curve converges at least
    // quadratically under refinement (clifford knots are constant speed, so
    // use a lumpy loop in R3)
    auto lumpy = [](int n) {
        std::vector<Vec4> pts(n);
        for (int i = 0; i < n; ++i) {
            const double s = kTwoPi * i / n;
            pts[i] = {std::cos(s) + 0.3 * std::cos(2 * s), std::sin(s), 0.3 * std::sin(3 * s), 0.0};
        }
        return ClosedCurve::from_points(SpaceTag::R3, std::move(pts), 1e-12);
    };
    const double L = lumpy(512).arclength();
    const double e1 = std::abs(lumpy(16).arclength() - L);
    const double e2 = std::abs(lumpy(32).arclength() - L);
    CHECK(e1 > 1e-12);
    CHECK(e2 < e1 / 4.0);
}

TEST_CASE("curve construction guards") {
    std::vector<Vec4> pts(16, Vec4{1, 0, 0, 0});
    CHECK_THROWS_AS(ClosedCurve::from_points(SpaceTag::S3, pts), InvalidInput);
    CHECK_THROWS_AS(great_circle(7), InvalidInput);
    std::vector<Vec4> off;
    for (int i = 0; i < 16; ++i) {
        const double s = kTwoPi * i / 16;
        off.push_back({1.1 * std::cos(s), 1.1 * std::sin(s), 0, 0});
    }
    CHECK_THROWS_AS(ClosedCurve::from_points(SpaceTag::S3, off), InvalidInput);
}

TEST_CASE("reversal") {
    const ClosedCurve tk = clifford_torus_knot(2, 3, 64);
    const ClosedCurve rev = tk.reversed();
    CHECK(norm4(rev.point_coords(0) - tk.point_coords(0)) < 1e-12);
    CHECK(norm4(rev.point_coords(1) - tk.point_coords(63)) < 1e-12);
    CHECK(std::abs(rev.arclength() - tk.arclength()) < 1e-9);
}

TEST_CASE("explicit framing from the registry") {
    const ClosedCurve gc = great_circle(64);
    const Framing f = make_framing(gc, FramingMethod::explicit_registry, "paper_example");
    for (int i = 0; i < gc.size(); ++i) {
        const double s = gc.param(i);
        CHECK(norm4(f.normals[i] - Vec4{0, 0, std::cos(s), std::sin(s)}) < 1e-14);
    }
    CHECK_THROWS_AS(make_framing(gc, FramingMethod::explicit_registry, "nope"), InvalidInput);
}

TEST_CASE("transported framings close up") {
    Rand rnd;
    for (auto make_curve : {+[](int n) { return clifford_torus_knot(2, 3, n); },
                            +[](int n) { return great_circle(n); }}) {
        const ClosedCurve K = make_curve(256);
        const Framing f = make_framing(K, FramingMethod::parallel_corrected);
        REQUIRE(f.holonomy_angle.has_value());
        for (int i = 0; i < K.size(); ++i) {
            CHECK(std::abs(metric_norm(K.tag(), f.normals[i]) - 1.0) < 1e-8);
            const Vec4 t = K.velocity_coords(i);
            CHECK(std::abs(metric_dot(K.tag(), f.normals[i], t)) / metric_norm(K.tag(), t) < 1e-8);
        }
        // the unrolled field returns to its start after a full loop
        const Point x0 = K.point(0);
        const Point xl = K.point(K.size() - 1);
        Vec4 back = parallel_transport(xl, x0, {xl, f.normals[K.size() - 1]}).comp;
        // one more (corrected) step closes the loop within the step error
        const double step_angle = std::abs(*f.holonomy_angle) / K.size() + 1e-3;
        CHECK(norm4(back - f.normals[0]) < 2.0 * kTwoPi / K.size() + step_angle);
    }
}

TEST_CASE("ribbon edges") {
    const ClosedCurve gc = great_circle(64);
    const Framing f = make_framing(gc, FramingMethod::explicit_registry, "paper_example");

    const ClosedCurve base = ribbon_edge(f, 0.0);
    for (int i = 0; i < gc.size(); ++i)
        CHECK(norm4(base.point_coords(i) - gc.point_coords(i)) < 1e-14);

    // pushing the example framing a quarter turn lands on the orthogonal circle
    const ClosedCurve quarter = ribbon_edge(f, kPi / 2);
    for (int i = 0; i < gc.size(); ++i) {
        const double s = gc.param(i);
        CHECK(norm4(quarter.point_coords(i) - Vec4{0, 0, std::cos(s), std::sin(s)}) < 1e-12);
    }

    const double eps = 0.05;
    const ClosedCurve edge = ribbon_edge(f, eps);
    for (int i = 0; i < gc.size(); ++i)
        CHECK(std::abs(distance(gc.point(i), edge.point(i)) - eps) < 1e-12);

    const Ribbon rib = make_ribbon(f, eps);
    CHECK(rib.eps == eps);
    CHECK_THROWS_AS(make_ribbon(f, -1.0), InvalidInput);
}

TEST_CASE("exp-embedded curves") {
    Rand rnd;
    const ClosedCurve model = r3_round_circle({0, 0, 0}, 0.4, 32);
    for (SpaceTag tag : {SpaceTag::S3, SpaceTag::H3}) {
        const Point base = canonical_pole(tag);
        const ClosedCurve emb = exp_embedded(model, base);
        CHECK(emb.tag() == tag);
        for (int i = 0; i < emb.size(); ++i)
            CHECK(std::abs(distance(base, emb.point(i)) - 0.4) < 1e-9);
    }
    CHECK_THROWS_AS(exp_embedded(great_circle(16), canonical_pole(SpaceTag::S3)), InvalidInput);
}

TEST_CASE("canonical references") {
    const auto two = canonical_curve("orthogonal_great_circle_pair", {}, 32);
    REQUIRE(two.size() == 2);
    CHECK(std::abs(dot4(two[0].point_coords(3), two[1].point_coords(11))) < 1e-12);
    CHECK_THROWS_AS(canonical_curve("unknown_name", {}, 32), InvalidInput);
    const auto tk = canonical_curve("clifford_torus_knot", {{"p", 2}, {"q", 3}}, 32);
    CHECK(norm4(tk[0].point_coords(0) - clifford_torus_knot(2, 3, 32).point_coords(0)) == 0.0);
}
