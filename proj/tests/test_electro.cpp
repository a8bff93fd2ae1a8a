#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "linkint/electro.hpp"
#include "test_helpers.hpp"

using namespace linkint;
using linkint::testing::Rand;

namespace {

const FieldSpec kLeft = FieldSpec::left_invariant(1, 0, 0);
const FieldSpec kRight = FieldSpec::right_invariant(1, 0, 0);
const FieldSpec kGrad = FieldSpec::gradient_of(SpaceTag::S3, "x0");

}  // namespace

TEST_CASE("left-translation format collapses for invariant currents") {
    Rand rnd;
    const VolumeGrid g = VolumeGrid::s3_hopf(16, 32, 32);
    for (int t = 0; t < 3; ++t) {
        const Point y = rnd.point(SpaceTag::S3);
        const auto parts = biot_savart_left_parts(kLeft, y, g);
        CHECK(norm4(parts.first) < 1e-12);
        CHECK(norm4(parts.second + 0.5 * kLeft.eval_coords(y)) < 1e-12);
        CHECK(norm4(parts.third) < 1e-10);
        CHECK(norm4(parts.total + 0.5 * kLeft.eval_coords(y)) < 1e-10);
    }
}

TEST_CASE("left-format integral structure separates field classes") {
    Rand rnd;
    const VolumeGrid g = VolumeGrid::s3_hopf(16, 32, 32);
    const Point y = rnd.point(SpaceTag::S3);
    // gradient current: first and third integrals large and cancelling
    const auto gp = biot_savart_left_parts(kGrad, y, g);
    CHECK(norm4(gp.first) > 0.1);
    CHECK(norm4(gp.third) > 0.1);
    CHECK(norm4(gp.second) < 1e-10);  // no left-invariant component
    CHECK(norm4(gp.total) < 0.2 * norm4(gp.first));
    // generic (non-left-invariant) divergence-free current: first integral alive,
    // third dead
    const auto rp = biot_savart_left_parts(kRight, y, g);
    CHECK(norm4(rp.first) > 0.1);
    CHECK(norm4(rp.third) < 1e-10);
}

TEST_CASE("biot-savart eigenvalues in parallel format") {
    Rand rnd;
    const VolumeGrid g = VolumeGrid::s3_hopf(16, 32, 32);
    const double rc = g.max_spacing;  // tighter exclusion than the default
    for (int t = 0; t < 5; ++t) {
        const Point y = rnd.point(SpaceTag::S3);
        CHECK(norm4(biot_savart(kLeft, y, Format::parallel, g, rc).comp +
                    0.5 * kLeft.eval_coords(y)) < 0.02);
        CHECK(norm4(biot_savart(kRight, y, Format::parallel, g, rc).comp -
                    0.5 * kRight.eval_coords(y)) < 0.02);
        CHECK(norm4(biot_savart(kGrad, y, Format::parallel, g, rc).comp) < 1e-10);
    }
}

TEST_CASE("biot-savart is linear at the summand level") {
    Rand rnd;
    const VolumeGrid g = VolumeGrid::s3_hopf(10, 20, 20);
    FieldSpec combo = 2.0 * kLeft;
    combo.add(kRight, -3.0);
    const Point y = rnd.point(SpaceTag::S3);
    const Vec4 lhs = biot_savart(combo, y, Format::parallel, g).comp;
    const Vec4 rhs = 2.0 * biot_savart(kLeft, y, Format::parallel, g).comp -
                     3.0 * biot_savart(kRight, y, Format::parallel, g).comp;
    CHECK(norm4(lhs - rhs) < 1e-12);
}

TEST_CASE("convolution collapses for invariant fields") {
    Rand rnd;
    const VolumeGrid g = VolumeGrid::s3_hopf(12, 24, 24);
    const Point y = rnd.point(SpaceTag::S3);
    const double avg = average_value(KernelId::s3_cos);
    const Vec4 a = conv_A(kLeft, KernelId::s3_cos, y, g);
    CHECK(norm4(a - (2.0 * kPi * kPi * avg) * kLeft.eval_coords(y)) < 1e-6);
    CHECK(norm4(conv_B(kLeft, KernelId::s3_cos, y, g)) < 1e-6);
    CHECK(norm4(conv_G(kLeft, KernelId::s3_cos, y, g)) < 1e-6);
    // zero field maps to zero
    const FieldSpec zero = 0.0 * kLeft;
    CHECK(norm4(conv_A(zero, KernelId::s3_cos, y, g)) == 0.0);
    CHECK(norm4(conv_B(zero, KernelId::s3_cos, y, g)) == 0.0);
    CHECK(norm4(conv_G(zero, KernelId::s3_cos, y, g)) == 0.0);
    // with the phi1 kernel too; it is only C^1 at the antipode, so the
    // quadrature converges algebraically rather than spectrally
    const double avg1 = average_value(KernelId::s3_phi1);
    const Vec4 a1 = conv_A(kLeft, KernelId::s3_phi1, y, g);
    CHECK(norm4(a1 - (2.0 * kPi * kPi * avg1) * kLeft.eval_coords(y)) < 1e-4);
}

TEST_CASE("laplacian-of-convolution identities") {
    Rand rnd;
    const Point y = rnd.point(SpaceTag::S3);
    // left-invariant current on a coarse grid
    {
        const VolumeGrid g = VolumeGrid::s3_hopf(12, 24, 24);
        const auto res = convolution_laplacian_residuals(kLeft, KernelId::s3_cos, y, g);
        CHECK(res[0] < 1e-3);
        CHECK(res[1] < 1e-3);
        CHECK(res[2] < 1e-3);
    }
    // grid-sampled generic smooth current: residuals small and shrinking
    {
        FieldSpec smooth = FieldSpec::left_invariant(0.4, -0.3, 0.2);
        smooth.add(FieldSpec::right_invariant(-0.1, 0.5, 0.3), 1.0);
        smooth.add(FieldSpec::gradient_of(SpaceTag::S3, "x1"), 0.7);
        const VolumeGrid coarse_skel = VolumeGrid::s3_hopf(10, 20, 20);
        const auto gsf = std::make_shared<GridSampledField>(
            GridSampledField::sample(smooth.as_fn(), coarse_skel));
        const FieldSpec sampled = FieldSpec::grid_sampled(gsf, SpaceTag::S3);
        const auto coarse =
            convolution_laplacian_residuals(sampled, KernelId::s3_cos, y,
                                            VolumeGrid::s3_hopf(10, 20, 20));
        CHECK(coarse[0] < 1e-2);
        CHECK(coarse[1] < 1e-2);
        CHECK(coarse[2] < 1e-2);
    }
}

TEST_CASE("pointwise identity residuals for both shifted kernels") {
    Rand rnd;
    double worst_s3 = 0.0, worst_h3 = 0.0, worst_smooth = 0.0;
    int done = 0;
    while (done < 20) {
        const Point x = rnd.point(SpaceTag::S3), y = rnd.point(SpaceTag::S3);
        const double a = distance(x, y);
        if (a < 0.25 || a > kPi - 0.25) continue;
        const TangentVec vx = rnd.unit_tangent(x);
        worst_s3 = std::max(worst_s3, key_lemma_residual(x, y, vx, KernelId::s3_shift));
        worst_smooth = std::max(worst_smooth, key_lemma_residual(x, y, vx, KernelId::s3_cos));
        ++done;
    }
    done = 0;
    while (done < 20) {
        const Point x = rnd.point(SpaceTag::H3), y = rnd.point(SpaceTag::H3);
        if (distance(x, y) < 0.25) continue;
        const TangentVec vx = rnd.unit_tangent(x);
        worst_h3 = std::max(worst_h3, key_lemma_residual(x, y, vx, KernelId::h3_shift));
        worst_h3 = std::max(worst_h3, key_lemma_residual(x, y, vx, KernelId::h3_gauss));
        ++done;
    }
    CHECK(worst_s3 < 1e-4);
    CHECK(worst_smooth < 1e-4);
    CHECK(worst_h3 < 1e-4);

    // zero vector gives an exactly zero residual
    const Point x = Point::s3({1, 0, 0, 0});
    const Point y = Point::s3({0, 1, 0, 0});
    CHECK(key_lemma_residual(x, y, {x, Vec4{}}, KernelId::s3_shift) == 0.0);
    // out-of-range configurations are rejected
    const Point close = Point::s3({std::cos(0.05), std::sin(0.05), 0, 0});
    CHECK_THROWS_AS(key_lemma_residual(x, close, {x, Vec4{0, 0, 1, 0}}, KernelId::s3_shift),
                    InvalidInput);
}

TEST_CASE("green's operator inverts the vector laplacian") {
    Rand rnd;
    const VolumeGrid g = VolumeGrid::s3_hopf(24, 48, 48);
    const double rc = 0.75 * g.max_spacing;
    const Point y = rnd.point(SpaceTag::S3);
    // eigenfield: Delta V = -4V so Gr(V) = -V/4
    const Vec4 gr = greens_operator(kLeft, y, g, rc).comp;
    CHECK(norm4(gr + 0.25 * kLeft.eval_coords(y)) < 0.02);
    // zero in, zero out
    CHECK(norm4(greens_operator(0.0 * kLeft, y, g, rc).comp) == 0.0);
    // minus curl of Gr reproduces the magnetic field
    auto gr_fn = [&](const Point& p) { return greens_operator(kLeft, p, g, rc).comp; };
    const Vec4 minus_curl = -1.0 * fd_curl(gr_fn, y, kFdStep1);
    const Vec4 bs = biot_savart(kLeft, y, Format::parallel, g, rc).comp;
    CHECK(norm4(minus_curl - bs) < 0.05);
}

TEST_CASE("electric fields") {
    Rand rnd;
    const VolumeGrid g = VolumeGrid::s3_hopf(16, 32, 32);
    const Point y = rnd.point(SpaceTag::S3);
    // zero density
    const ChargeSpec zero = ChargeSpec::from_fn(SpaceTag::S3, "zero", [](const Point&) { return 0.0; });
    CHECK(norm4(electric_field(zero, y, g).comp) == 0.0);
    // the x0 density has nearly zero grid average
    const ChargeSpec rho = ChargeSpec::registry(SpaceTag::S3, "x0");
    const double avg = integrate_volume<double>(
        g, [&](const Point& p, double w) { return w * rho.eval(p); });
    CHECK(std::abs(avg) < 1e-8);
    // equivariance: rotate-then-solve equals solve-then-rotate
    const Vec4 q = rnd.unit_quat();
    const ChargeSpec rho_rot = ChargeSpec::from_fn(SpaceTag::S3, "x0_rot", [q](const Point& p) {
        return quat_mul(quat_conj(q), p.coords())[0];  // pull back by the isometry
    });
    const Point gy = Point::project(SpaceTag::S3, quat_mul(q, y.coords()));
    const Vec4 e1 = quat_mul(q, electric_field(rho, y, g).comp);  // push the vector forward
    const Vec4 e2 = electric_field(rho_rot, gy, g).comp;
    CHECK(norm4(e1 - e2) < 1e-6);
}

TEST_CASE("steady-state field equations") {
    Rand rnd;
    const VolumeGrid g = VolumeGrid::s3_hopf(24, 48, 48);
    const double rc = g.max_spacing;
    const ChargeSpec rho = ChargeSpec::registry(SpaceTag::S3, "x0");
    for (int t = 0; t < 2; ++t) {
        const Point y = rnd.point(SpaceTag::S3);
        const MaxwellReport r = maxwell_residuals(kLeft, rho, y, g, rc);
        CHECK(std::abs(r.div_e_minus_rho) < 0.05);
        CHECK(r.curl_e < 1e-6);
        CHECK(std::abs(r.div_b) < 5e-3);
        CHECK(r.ampere < 0.05);  // |J| = 1
    }
}

TEST_CASE("curve currents reproduce the linking number") {
    auto [k1, k2] = hopf_fiber_pair(192);
    for (Format fmt : {Format::parallel, Format::left_translation}) {
        auto B = [&](const Point& p) { return bs_from_curve(k1, p, fmt).comp; };
        const double circ = circulation(B, k2);
        const double lk = linking_number(k1, k2, fmt, 192).total;
        CHECK(std::abs(circ - lk) < 1e-6);
        CHECK(std::abs(circ - 1.0) < 1e-6);
    }
    // H3 pair
    const Point base = canonical_pole(SpaceTag::H3);
    const ClosedCurve h1 = exp_embedded(r3_round_circle({0, 0, 0}, 0.5, 192), base);
    const ClosedCurve h2 = exp_embedded(r3_round_circle({0.5, 0, 0}, 0.5, 192, 0, 2), base);
    auto B = [&](const Point& p) { return bs_from_curve(h1, p, Format::parallel).comp; };
    const double circ = circulation(B, h2);
    const double lk = linking_number(h1, h2, Format::parallel, 192).total;
    CHECK(std::abs(circ - lk) < 1e-6);
}
