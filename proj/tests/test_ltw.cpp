#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "linkint/ltw.hpp"
#include "linkint/quadrature.hpp"
#include "test_helpers.hpp"

using namespace linkint;
using linkint::testing::Rand;

namespace {

ClosedCurve transform_curve(const ClosedCurve& c, const std::function<Vec4(const Vec4&)>& iso) {
    std::vector<Vec4> pts(c.size());
    for (int i = 0; i < c.size(); ++i) pts[i] = iso(c.point_coords(i));
    return ClosedCurve::from_points(c.tag(), std::move(pts), 1e-8);
}

// Small nonplanar closed model curve in R3.
ClosedCurve saddle_model(double r, double lift, int n) {
    std::vector<Vec4> pts(n);
    for (int i = 0; i < n; ++i) {
        const double s = kTwoPi * i / n;
        pts[i] = {r * std::cos(s), r * std::sin(s), lift * std::sin(2 * s), 0.0};
    }
    return ClosedCurve::from_points(SpaceTag::R3, std::move(pts), 1e-12);
}

}  // namespace

TEST_CASE("orthogonal great circles in left-translation format") {
    auto [a, b] = orthogonal_great_circle_pair(128);
    const LinkResult r = linking_number(a, b, Format::left_translation, 128);
    REQUIRE(r.first_integral.has_value());
    CHECK(std::abs(*r.first_integral) < 1e-12);
    CHECK(std::abs(*r.second_integral - 1.0) < 1e-12);
    CHECK(std::abs(r.total - 1.0) < 1e-12);
}

TEST_CASE("hopf fibers link once in every format") {
    auto [a, b] = hopf_fiber_pair(256);
    const double lp = linking_number(a, b, Format::parallel, 256).total;
    const double ll = linking_number(a, b, Format::left_translation, 256).total;
    CHECK(std::abs(lp - 1.0) < 1e-9);
    CHECK(std::abs(lp - ll) < 2e-6);
    // integer-valuedness is stable under refinement
    const double lp2 = linking_number(a, b, Format::parallel, 512).total;
    CHECK(std::abs(lp - lp2) < 1e-8);
}

TEST_CASE("far-separated small loops do not link") {
    // R3: two distant unit circles
    const ClosedCurve c1 = r3_round_circle({0, 0, 0}, 1.0, 64);
    const ClosedCurve c2 = r3_round_circle({10, 0, 0}, 1.0, 64, 0, 2);
    CHECK(std::abs(linking_number(c1, c2, Format::euclidean, 64).total) < 1e-8);
    // H3: two small circles exp-embedded far apart
    const Point base1 = canonical_pole(SpaceTag::H3);
    const Point base2 = exp_map(base1, {base1, {0, 1, 0, 0}}, 3.0);
    const ClosedCurve h1 = exp_embedded(r3_round_circle({0, 0, 0}, 0.3, 64), base1);
    const ClosedCurve h2 = exp_embedded(r3_round_circle({0, 0, 0}, 0.3, 64, 1, 2), base2);
    CHECK(std::abs(linking_number(h1, h2, Format::parallel, 64).total) < 1e-8);
}

TEST_CASE("proximity guard") {
    auto [a, b] = hopf_fiber_pair(16, 0.1);  // coarse sampling, close fibers
    CHECK_THROWS_AS(linking_number(a, b, Format::parallel, 16), CurvesTooClose);
}

TEST_CASE("format mismatches are rejected") {
    const ClosedCurve c1 = r3_round_circle({0, 0, 0}, 1.0, 32);
    const ClosedCurve c2 = r3_round_circle({5, 0, 0}, 1.0, 32, 0, 2);
    CHECK_THROWS_AS(linking_number(c1, c2, Format::left_translation, 32), InvalidInput);
    CHECK_THROWS_AS(linking_number(c1, c2, Format::parallel, 32), InvalidInput);
    auto [a, b] = hopf_fiber_pair(64);
    CHECK_THROWS_AS(linking_number(a, b, Format::euclidean, 64), InvalidInput);
}

TEST_CASE("writhe of the great circle") {
    const ClosedCurve gc = great_circle(128);
    CHECK(std::abs(writhe(gc, Format::parallel, 128).value) < 1e-10);
    CHECK(writhe(gc, Format::left_translation, 128).value ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("writhe offset identity on the trefoil torus curve") {
    const int n = 1024;
    const ClosedCurve tk = clifford_torus_knot(2, 3, n);
    const double wl = writhe(tk, Format::left_translation, n).value;
    const double wp = writhe(tk, Format::parallel, n).value;
    CHECK(std::abs(wl - wp - tk.arclength() / kTwoPi) < 5e-6);
}

TEST_CASE("small embedded curves inherit the euclidean writhe") {
    // small trefoil: nonzero writhe, scale-invariant in R3
    auto trefoil = [](double scale, int n) {
        std::vector<Vec4> pts(n);
        for (int i = 0; i < n; ++i) {
            const double s = kTwoPi * i / n;
            pts[i] = {scale * (2 + std::cos(3 * s)) * std::cos(2 * s),
                      scale * (2 + std::cos(3 * s)) * std::sin(2 * s), scale * std::sin(3 * s),
                      0.0};
        }
        return ClosedCurve::from_points(SpaceTag::R3, std::move(pts), 1e-12);
    };
    const int n = 256;
    const double wr_model = writhe(trefoil(1.0, n), Format::euclidean, n).value;
    CHECK(std::abs(wr_model) > 3.0);  // a trefoil coils visibly
    // the writhe of the scaled copy is identical (scale invariance)
    CHECK(writhe(trefoil(0.05, n), Format::euclidean, n).value ==
          doctest::Approx(wr_model).epsilon(1e-10));
    for (SpaceTag tag : {SpaceTag::S3, SpaceTag::H3}) {
        const double d1 =
            std::abs(writhe(exp_embedded(trefoil(0.05, n), canonical_pole(tag)), Format::parallel, n)
                         .value -
                     wr_model);
        const double d2 =
            std::abs(writhe(exp_embedded(trefoil(0.025, n), canonical_pole(tag)), Format::parallel,
                            n)
                         .value -
                     wr_model);
        CHECK(d1 < 0.02 * std::abs(wr_model));
        CHECK(d2 < 0.3 * d1);  // curvature distortion shrinks like the square of the scale
    }
}

TEST_CASE("self-intersection guard") {
    // a figure-eight-like curve that nearly touches itself
    std::vector<Vec4> pts;
    const int n = 64;
    for (int i = 0; i < n; ++i) {
        const double s = kTwoPi * i / n;
        pts.push_back({std::sin(2 * s), std::sin(s) * 0.02 + 1.5 * std::cos(s) * std::sin(s), 0.3 * std::sin(s), 0.0});
    }
    const ClosedCurve fig8 = ClosedCurve::from_points(SpaceTag::R3, std::move(pts), 1e-6);
    CHECK_THROWS_AS(writhe(fig8, Format::euclidean, n), SelfIntersectionSuspected);
}

TEST_CASE("twist of the example framing") {
    const ClosedCurve gc = great_circle(256);
    const Framing f = make_framing(gc, FramingMethod::explicit_registry, "paper_example");
    CHECK(std::abs(twist(f, TwistFlavor::left)) < 1e-12);
    CHECK(twist(f, TwistFlavor::parallel) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(twist(f, TwistFlavor::left, TwistDerivative::finite_difference)) < 1e-3);
    CHECK(twist(f, TwistFlavor::parallel, TwistDerivative::finite_difference) ==
          doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("transported framings have zero parallel twist before correction") {
    // constant_angle framing with theta0 = 0 equals the corrected transport
    // frame; its parallel twist equals -holonomy/2pi, and an uncorrected
    // relatively-parallel frame would have zero twist.
    const ClosedCurve tk = clifford_torus_knot(2, 3, 512);
    const Framing f = make_framing(tk, FramingMethod::parallel_corrected);
    REQUIRE(f.holonomy_angle.has_value());
    CHECK(twist(f, TwistFlavor::parallel) ==
          doctest::Approx(-*f.holonomy_angle / kTwoPi).epsilon(2e-3));
}

TEST_CASE("twist flavors differ by arclength over 2 pi") {
    const ClosedCurve gc = great_circle(256);
    const ClosedCurve tk = clifford_torus_knot(2, 3, 512);
    for (double theta0 : {0.0, 0.7, 2.1}) {
        for (const ClosedCurve* K : {&gc, &tk}) {
            const Framing f = make_framing(*K, FramingMethod::constant_angle, "", theta0);
            const double tl = twist(f, TwistFlavor::left);
            const double tp = twist(f, TwistFlavor::parallel);
            CHECK(std::abs(tl - tp + K->arclength() / kTwoPi) < 1e-3);
        }
    }
}

TEST_CASE("link equals twist plus writhe") {
    const ClosedCurve gc = great_circle(512);
    const Framing f = make_framing(gc, FramingMethod::explicit_registry, "paper_example");
    const LtwReport rp = ltw_check(f, 0.01, Format::parallel, 512);
    CHECK(rp.lk == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rp.tw == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(rp.wr) < 1e-9);
    CHECK(std::abs(rp.residual) < 1e-3);

    const LtwReport rl = ltw_check(f, 0.01, Format::left_translation, 512);
    CHECK(rl.lk == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(rl.tw) < 1e-9);
    CHECK(rl.wr == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(rl.residual) < 1e-3);
}

TEST_CASE("isometry invariance of linking and writhe") {
    Rand rnd;
    // S3: left and right quaternion multiplication
    {
        auto [a, b] = hopf_fiber_pair(128);
        const Vec4 ql = rnd.unit_quat(), qr = rnd.unit_quat();
        auto iso = [&](const Vec4& p) { return quat_mul(ql, quat_mul(p, qr)); };
        for (Format fmt : {Format::parallel, Format::left_translation}) {
            const double before = linking_number(a, b, fmt, 128).total;
            const double after =
                linking_number(transform_curve(a, iso), transform_curve(b, iso), fmt, 128).total;
            CHECK(std::abs(before - after) < 1e-9);
        }
        const ClosedCurve tk = clifford_torus_knot(2, 3, 256);
        const double before = writhe(tk, Format::parallel, 256).value;
        const double after = writhe(transform_curve(tk, iso), Format::parallel, 256).value;
        CHECK(std::abs(before - after) < 1e-9);
    }
    // H3: translation along a geodesic composed with a spatial rotation
    {
        const Point target = rnd.point(SpaceTag::H3);
        const Recenter boost(target);
        const double th = rnd.uniform(0, kTwoPi);
        auto iso = [&](const Vec4& p) {
            const Vec4 rot{p[0], p[1] * std::cos(th) - p[2] * std::sin(th),
                           p[1] * std::sin(th) + p[2] * std::cos(th), p[3]};
            return boost(rot);
        };
        const Point base1 = canonical_pole(SpaceTag::H3);
        const ClosedCurve h1 = exp_embedded(r3_round_circle({0, 0, 0}, 0.5, 96), base1);
        const ClosedCurve h2 =
            exp_embedded(r3_round_circle({0.5, 0, 0}, 0.5, 96, 0, 2), base1);
        const double before = linking_number(h1, h2, Format::parallel, 96).total;
        const double after =
            linking_number(transform_curve(h1, iso), transform_curve(h2, iso), Format::parallel, 96)
                .total;
        CHECK(std::abs(before - after) < 1e-9);
    }
    // R3: rotation plus translation
    {
        const double th = rnd.uniform(0, kTwoPi);
        const Vec4 shift{rnd.normal(), rnd.normal(), rnd.normal()};
        auto iso = [&](const Vec4& p) {
            return Vec4{p[0] * std::cos(th) - p[1] * std::sin(th) + shift[0],
                        p[0] * std::sin(th) + p[1] * std::cos(th) + shift[1], p[2] + shift[2]};
        };
        const ClosedCurve c1 = r3_round_circle({0, 0, 0}, 1.0, 96);
        const ClosedCurve c2 = r3_round_circle({1, 0, 0}, 1.0, 96, 0, 2);
        const double before = linking_number(c1, c2, Format::euclidean, 96).total;
        CHECK(std::abs(std::abs(before) - 1.0) < 1e-10);  // a classic once-linked pair
        const double after =
            linking_number(transform_curve(c1, iso), transform_curve(c2, iso), Format::euclidean, 96)
                .total;
        CHECK(std::abs(before - after) < 1e-9);
    }
}

TEST_CASE("orientation reversal negates linking") {
    auto [a, b] = hopf_fiber_pair(128);
    const double fwd = linking_number(a, b, Format::parallel, 128).total;
    const double bwd = linking_number(a, b.reversed(), Format::parallel, 128).total;
    CHECK(std::abs(fwd + bwd) < 1e-12);
}

TEST_CASE("ltw on the trefoil torus curve in all three geometries") {
    // S3, both formats
    const ClosedCurve tk = clifford_torus_knot(2, 3, 384);
    const Framing f = make_framing(tk, FramingMethod::parallel_corrected);
    for (Format fmt : {Format::parallel, Format::left_translation}) {
        const LtwReport r = ltw_check(f, 0.01, fmt, 384);
        CHECK(r.integer_gap < 1e-3);
        CHECK(std::abs(r.residual) < 1e-2);
    }
    // H3, parallel format on an embedded nonplanar loop
    const ClosedCurve model = saddle_model(0.5, 0.2, 384);
    const ClosedCurve emb = exp_embedded(model, canonical_pole(SpaceTag::H3));
    const Framing fh = make_framing(emb, FramingMethod::parallel_corrected);
    const LtwReport rh = ltw_check(fh, 0.01, Format::parallel, 384);
    CHECK(rh.integer_gap < 1e-3);
    CHECK(std::abs(rh.residual) < 1e-2);
}
