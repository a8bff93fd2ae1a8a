#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "linkint/kernels.hpp"
#include "test_helpers.hpp"

using namespace linkint;
using linkint::testing::Rand;

namespace {

const KernelId kAll[] = {KernelId::r3_newton, KernelId::s3_lap,   KernelId::s3_shift,
                         KernelId::s3_phi1,   KernelId::s3_phi2,  KernelId::h3_shift,
                         KernelId::h3_lap,    KernelId::s3_cos,   KernelId::h3_gauss};

// Interior sample distances for a kernel's space.
std::vector<double> samples(KernelId id, int n) {
    const double hi = kernel_space(id) == SpaceTag::S3 ? kPi - 0.05 : 3.0;
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(0.05 + (hi - 0.05) * i / (n - 1.0));
    return out;
}

}  // namespace

TEST_CASE("closed-form values") {
    CHECK(kernel_value(KernelId::s3_lap, kPi / 2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(kernel_value(KernelId::s3_shift, kPi / 2) ==
          doctest::Approx(-1.0 / (8.0 * kPi)).epsilon(1e-14));
    // h3_shift behaves like -1/(4 pi alpha) near zero
    const double a = 1e-6;
    CHECK(a * kernel_value(KernelId::h3_shift, a) ==
          doctest::Approx(-1.0 / (4.0 * kPi)).epsilon(1e-9));
    CHECK(kernel_deriv(KernelId::r3_newton, 1.0) == doctest::Approx(1.0 / (4.0 * kPi)));
    CHECK(kernel_deriv(KernelId::s3_phi1, kPi) == doctest::Approx(0.0).epsilon(1e-15));
    for (KernelId id : kAll)
        if (kernel_singular_at_zero(id)) CHECK_THROWS_AS(kernel_value(id, 0.0), Singular);
}

TEST_CASE("derivatives match central differences") {
    const double h = 1e-5;
    for (KernelId id : kAll) {
        for (double a : samples(id, 23)) {
            const double fd = (kernel_value(id, a + h) - kernel_value(id, a - h)) / (2 * h);
            CHECK(std::abs(kernel_deriv(id, a) - fd) < 1e-7 * (1.0 + std::abs(fd)));
            const double fd2 = (kernel_deriv(id, a + h) - kernel_deriv(id, a - h)) / (2 * h);
            CHECK(std::abs(kernel_second_deriv(id, a) - fd2) < 1e-6 * (1.0 + std::abs(fd2)));
        }
    }
    // specific value from the example list
    const double fd = (kernel_value(KernelId::s3_shift, 1.0 + h) -
                       kernel_value(KernelId::s3_shift, 1.0 - h)) / (2 * h);
    CHECK(std::abs(kernel_deriv(KernelId::s3_shift, 1.0) - fd) < 1e-8);
}

TEST_CASE("series branches join smoothly at the switchover") {
    // Values straddling the alpha = pi series window must agree.
    for (KernelId id : {KernelId::s3_lap, KernelId::s3_shift, KernelId::s3_phi2}) {
        const double b = 1e-2;  // switchover width
        const double v1 = kernel_value(id, kPi - b * (1 + 1e-12));
        const double v2 = kernel_value(id, kPi - b * (1 - 1e-12));
        CHECK(std::abs(v1 - v2) < 1e-13);
        const double d1 = kernel_deriv(id, kPi - b * (1 + 1e-12));
        const double d2 = kernel_deriv(id, kPi - b * (1 - 1e-12));
        CHECK(std::abs(d1 - d2) < 1e-13);
    }
    const double v1 = kernel_value(KernelId::s3_phi2, 1e-2 * (1 + 1e-12));
    const double v2 = kernel_value(KernelId::s3_phi2, 1e-2 * (1 - 1e-12));
    CHECK(std::abs(v1 - v2) < 1e-13);
}

TEST_CASE("defining equations hold at interior samples") {
    const double avg_phi0 = average_value(KernelId::s3_lap);
    const double avg_phi1 = average_value(KernelId::s3_phi1);
    for (double a : samples(KernelId::s3_lap, 50)) {
        CHECK(std::abs(radial_laplacian(KernelId::s3_lap, a) + 1.0 / (2.0 * kPi * kPi)) < 1e-8);
        CHECK(std::abs(radial_laplacian(KernelId::s3_shift, a) -
                       kernel_value(KernelId::s3_shift, a)) < 1e-8);
        CHECK(std::abs(radial_laplacian(KernelId::s3_phi1, a) -
                       (kernel_value(KernelId::s3_lap, a) - avg_phi0)) < 1e-8);
        CHECK(std::abs(radial_laplacian(KernelId::s3_phi2, a) -
                       (kernel_value(KernelId::s3_phi1, a) - avg_phi1)) < 1e-8);
    }
    for (double a : samples(KernelId::h3_shift, 50)) {
        CHECK(std::abs(radial_laplacian(KernelId::h3_shift, a) +
                       kernel_value(KernelId::h3_shift, a)) < 1e-8);
        CHECK(std::abs(radial_laplacian(KernelId::h3_lap, a)) < 1e-8);
    }
    for (double a : samples(KernelId::r3_newton, 50))
        CHECK(std::abs(radial_laplacian(KernelId::r3_newton, a)) < 1e-10);
}

TEST_CASE("average values") {
    // closed forms frozen from the polynomial antiderivatives
    CHECK(average_value(KernelId::s3_lap) ==
          doctest::Approx(-1.0 / (8.0 * kPi * kPi)).epsilon(1e-11));
    CHECK(average_value(KernelId::s3_shift) ==
          doctest::Approx(-1.0 / (2.0 * kPi * kPi)).epsilon(1e-11));
    CHECK(average_value(KernelId::s3_phi1) ==
          doctest::Approx(-1.0 / 24.0 - 1.0 / (32.0 * kPi * kPi)).epsilon(1e-11));
    CHECK(average_value(KernelId::s3_phi2) ==
          doctest::Approx(-1.0 / 96.0 - 1.0 / (64.0 * kPi * kPi)).epsilon(1e-11));
    CHECK(std::abs(average_value(KernelId::s3_cos)) < 1e-13);
    CHECK(average_value([](double) { return 3.25; }) == doctest::Approx(3.25).epsilon(1e-12));
    CHECK_THROWS_AS(average_value(KernelId::h3_shift), InvalidInput);
}

TEST_CASE("kernel gradients") {
    Rand rnd;
    // vanishing at the antipode
    const Point x = Point::s3({1, 0, 0, 0});
    const Point anti = Point::s3({-1, 0, 0, 0});
    for (KernelId id : {KernelId::s3_lap, KernelId::s3_shift, KernelId::s3_phi1, KernelId::s3_phi2})
        CHECK(norm4(kernel_grad(id, x, anti).comp) == 0.0);
    CHECK_THROWS_AS(kernel_grad(KernelId::s3_shift, x, x), Singular);

    for (KernelId id : kAll) {
        const SpaceTag tag = kernel_space(id);
        if (tag == SpaceTag::R3) continue;
        for (int t = 0; t < 15; ++t) {
            const Point a = rnd.point(tag), b = rnd.point(tag);
            const double d0 = distance(a, b);
            if (d0 < 0.2 || (tag == SpaceTag::S3 && d0 > kPi - 0.2)) continue;
            const TangentVec g = kernel_grad(id, a, b);
            // magnitude and direction relative to the geodesic
            CHECK(norm(g) == doctest::Approx(std::abs(kernel_deriv(id, d0))).epsilon(1e-10));
            CHECK(dot(g, geodesic_dir(b, a)) ==
                  doctest::Approx(-kernel_deriv(id, d0)).epsilon(1e-9));
            // finite-difference directional derivative
            const TangentVec w = rnd.unit_tangent(b);
            const double h = 1e-4;
            const double fd = (kernel_value(id, distance(a, exp_map(b, w, h))) -
                               kernel_value(id, distance(a, exp_map(b, w, -h)))) /
                              (2 * h);
            CHECK(std::abs(dot(g, w) - fd) < 1e-6 * (1 + std::abs(fd)));
        }
    }
}
