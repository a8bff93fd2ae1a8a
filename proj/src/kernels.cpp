#include "linkint/kernels.hpp"

#include <cmath>

namespace linkint {

namespace {

constexpr double c0 = -1.0 / (4.0 * kPi * kPi);    // s3_lap, s3_shift
constexpr double c1 = -1.0 / (16.0 * kPi * kPi);   // s3_phi1
constexpr double c2 = -1.0 / (192.0 * kPi * kPi);  // s3_phi2
constexpr double cR = -1.0 / (4.0 * kPi);          // r3_newton, h3 kernels

// Series switchover widths. Near alpha = pi the S3 closed forms cancel
// catastrophically; near alpha = 0 only s3_phi2 does.
constexpr double kPiSeriesWidth = 1e-2;
constexpr double kZeroSeriesWidth = 1e-2;

void check_domain(KernelId id, double alpha) {
    if (kernel_singular_at_zero(id) && alpha <= 0.0)
        throw Singular("kernel evaluated at alpha = 0");
    if (alpha < 0.0) throw Singular("negative distance");
    if (kernel_space(id) == SpaceTag::S3 && alpha > kPi + 1e-12)
        throw InvalidInput("S3 kernel evaluated beyond alpha = pi");
}

}  // namespace

SpaceTag kernel_space(KernelId id) {
    switch (id) {
        case KernelId::r3_newton: return SpaceTag::R3;
        case KernelId::s3_lap:
        case KernelId::s3_shift:
        case KernelId::s3_phi1:
        case KernelId::s3_phi2:
        case KernelId::s3_cos: return SpaceTag::S3;
        case KernelId::h3_shift:
        case KernelId::h3_lap:
        case KernelId::h3_gauss: return SpaceTag::H3;
    }
    throw InvalidInput("unknown kernel id");
}

const char* kernel_name(KernelId id) {
    switch (id) {
        case KernelId::r3_newton: return "r3_newton";
        case KernelId::s3_lap: return "s3_lap";
        case KernelId::s3_shift: return "s3_shift";
        case KernelId::s3_phi1: return "s3_phi1";
        case KernelId::s3_phi2: return "s3_phi2";
        case KernelId::h3_shift: return "h3_shift";
        case KernelId::h3_lap: return "h3_lap";
        case KernelId::s3_cos: return "s3_cos";
        case KernelId::h3_gauss: return "h3_gauss";
    }
    return "?";
}

bool kernel_singular_at_zero(KernelId id) {
    switch (id) {
        case KernelId::s3_phi1:
        case KernelId::s3_cos:
        case KernelId::h3_gauss: return false;
        case KernelId::s3_phi2: return true;  // finite value but singular derivative chain at 0
        default: return true;
    }
}

double kernel_value(KernelId id, double alpha) {
    check_domain(id, alpha);
    const double b = kPi - alpha;  // S3 antipode offset
    switch (id) {
        case KernelId::r3_newton: return cR / alpha;
        case KernelId::s3_lap:
            if (b < kPiSeriesWidth) {
                const double b2 = b * b;
                return -c0 * (1.0 - b2 / 3.0 - b2 * b2 / 45.0 - 2.0 * b2 * b2 * b2 / 945.0);
            }
            return c0 * b / std::tan(alpha);
        case KernelId::s3_shift:
            if (b < kPiSeriesWidth) {
                const double b2 = b * b;
                return c0 * (1.0 + b2 / 6.0 + 7.0 * b2 * b2 / 360.0 + 31.0 * b2 * b2 * b2 / 15120.0);
            }
            return c0 * b / std::sin(alpha);
        case KernelId::s3_phi1: return c1 * alpha * (kTwoPi - alpha);
        case KernelId::s3_phi2: {
            if (alpha < kZeroSeriesWidth) {
                const double a2 = alpha * alpha;
                return c2 * (4.0 * kPi * kPi - a2 * (1.0 + 4.0 * kPi * kPi / 3.0) +
                             2.0 * kPi * a2 * alpha -
                             a2 * a2 * (2.0 / 3.0 + 4.0 * kPi * kPi / 45.0) +
                             a2 * a2 * alpha * 2.0 * kPi / 15.0);
            }
            if (b < kPiSeriesWidth) {
                const double b2 = b * b;
                return c2 * (kPi * kPi + b2 * (2.0 * kPi * kPi / 3.0 - 1.0) +
                             b2 * b2 * (2.0 * kPi * kPi / 45.0 - 2.0 / 3.0) +
                             b2 * b2 * b2 * (4.0 * kPi * kPi / 945.0 - 2.0 / 45.0));
            }
            const double Q = 3.0 * alpha * (kTwoPi - alpha);
            const double P = alpha * (kPi - alpha) * (kTwoPi - alpha);
            return c2 * (Q + 2.0 * P / std::tan(alpha));
        }
        case KernelId::h3_shift: return cR / std::sinh(alpha);
        case KernelId::h3_lap: return cR / std::tanh(alpha);
        case KernelId::s3_cos: return std::cos(alpha);
        case KernelId::h3_gauss: return std::exp(-alpha * alpha);
    }
    throw InvalidInput("unknown kernel id");
}

double kernel_deriv(KernelId id, double alpha) {
    check_domain(id, alpha);
    const double b = kPi - alpha;
    switch (id) {
        case KernelId::r3_newton: return -cR / (alpha * alpha);
        case KernelId::s3_lap: {
            if (b < kPiSeriesWidth)
                return c0 * (-2.0 * b / 3.0 - 4.0 * b * b * b / 45.0 -
                             4.0 * b * b * b * b * b / 315.0);
            const double ct = 1.0 / std::tan(alpha), cs = 1.0 / std::sin(alpha);
            return c0 * (-ct - b * cs * cs);
        }
        case KernelId::s3_shift: {
            if (b < kPiSeriesWidth)
                return -c0 * (b / 3.0 + 7.0 * b * b * b / 90.0 + 31.0 * std::pow(b, 5) / 2520.0);
            const double ct = 1.0 / std::tan(alpha), cs = 1.0 / std::sin(alpha);
            return c0 * (-cs - b * cs * ct);
        }
        case KernelId::s3_phi1: return c1 * (kTwoPi - 2.0 * alpha);
        case KernelId::s3_phi2: {
            if (alpha < kZeroSeriesWidth) {
                const double a2 = alpha * alpha;
                return c2 * (-2.0 * alpha * (1.0 + 4.0 * kPi * kPi / 3.0) + 6.0 * kPi * a2 -
                             alpha * a2 * (8.0 / 3.0 + 16.0 * kPi * kPi / 45.0) +
                             a2 * a2 * 2.0 * kPi / 3.0);
            }
            if (b < kPiSeriesWidth)
                return -c2 * (2.0 * b * (2.0 * kPi * kPi / 3.0 - 1.0) +
                              4.0 * b * b * b * (2.0 * kPi * kPi / 45.0 - 2.0 / 3.0) +
                              6.0 * b * b * b * b * b * (4.0 * kPi * kPi / 945.0 - 2.0 / 45.0));
            const double ct = 1.0 / std::tan(alpha), cs2 = 1.0 / (std::sin(alpha) * std::sin(alpha));
            const double Qp = 6.0 * kPi - 6.0 * alpha;
            const double P = alpha * (kPi - alpha) * (kTwoPi - alpha);
            const double Pp = 2.0 * kPi * kPi - 6.0 * kPi * alpha + 3.0 * alpha * alpha;
            return c2 * (Qp + 2.0 * Pp * ct - 2.0 * P * cs2);
        }
        case KernelId::h3_shift: {
            const double csch = 1.0 / std::sinh(alpha);
            return -cR * csch / std::tanh(alpha);
        }
        case KernelId::h3_lap: {
            const double csch = 1.0 / std::sinh(alpha);
            return -cR * csch * csch;
        }
        case KernelId::s3_cos: return -std::sin(alpha);
        case KernelId::h3_gauss: return -2.0 * alpha * std::exp(-alpha * alpha);
    }
    throw InvalidInput("unknown kernel id");
}

double kernel_second_deriv(KernelId id, double alpha) {
    check_domain(id, alpha);
    const double b = kPi - alpha;
    switch (id) {
        case KernelId::r3_newton: return 2.0 * cR / (alpha * alpha * alpha);
        case KernelId::s3_lap: {
            if (b < kPiSeriesWidth)
                return 2.0 * c0 * (1.0 / 3.0 + 2.0 * b * b / 15.0 + 2.0 * std::pow(b, 4) / 63.0);
            const double cs2 = 1.0 / (std::sin(alpha) * std::sin(alpha));
            const double ct = 1.0 / std::tan(alpha);
            return c0 * (2.0 * cs2 + 2.0 * b * cs2 * ct);
        }
        case KernelId::s3_shift: {
            if (b < kPiSeriesWidth)
                return c0 * (1.0 / 3.0 + 7.0 * b * b / 30.0 + 31.0 * std::pow(b, 4) / 504.0);
            const double cs = 1.0 / std::sin(alpha), ct = 1.0 / std::tan(alpha);
            return c0 * (2.0 * cs * ct + b * cs * (ct * ct + cs * cs));
        }
        case KernelId::s3_phi1: return -2.0 * c1;
        case KernelId::s3_phi2: {
            if (alpha < kZeroSeriesWidth)
                return c2 * (-2.0 - 8.0 * kPi * kPi / 3.0 + 12.0 * kPi * alpha -
                             alpha * alpha * (8.0 + 16.0 * kPi * kPi / 15.0) +
                             alpha * alpha * alpha * 8.0 * kPi / 3.0);
            if (b < kPiSeriesWidth)
                return c2 * (2.0 * (2.0 * kPi * kPi / 3.0 - 1.0) +
                             12.0 * b * b * (2.0 * kPi * kPi / 45.0 - 2.0 / 3.0) +
                             30.0 * b * b * b * b * (4.0 * kPi * kPi / 945.0 - 2.0 / 45.0));
            const double ct = 1.0 / std::tan(alpha), cs2 = 1.0 / (std::sin(alpha) * std::sin(alpha));
            const double P = alpha * (kPi - alpha) * (kTwoPi - alpha);
            const double Pp = 2.0 * kPi * kPi - 6.0 * kPi * alpha + 3.0 * alpha * alpha;
            const double Ppp = -6.0 * kPi + 6.0 * alpha;
            return c2 * (-6.0 + 2.0 * Ppp * ct - 4.0 * Pp * cs2 + 4.0 * P * cs2 * ct);
        }
        case KernelId::h3_shift: {
            const double csch = 1.0 / std::sinh(alpha), coth = 1.0 / std::tanh(alpha);
            return cR * csch * (coth * coth + csch * csch);
        }
        case KernelId::h3_lap: {
            const double csch = 1.0 / std::sinh(alpha), coth = 1.0 / std::tanh(alpha);
            return 2.0 * cR * csch * csch * coth;
        }
        case KernelId::s3_cos: return -std::cos(alpha);
        case KernelId::h3_gauss: {
            const double a2 = alpha * alpha;
            return (4.0 * a2 - 2.0) * std::exp(-a2);
        }
    }
    throw InvalidInput("unknown kernel id");
}

double radial_laplacian(KernelId id, double alpha) {
    if (alpha <= 0.0) throw Singular("radial Laplacian at alpha = 0");
    const SpaceTag tag = kernel_space(id);
    if (tag == SpaceTag::S3 && alpha >= kPi)
        throw Singular("radial Laplacian at alpha = pi");
    const double d1 = kernel_deriv(id, alpha);
    const double d2 = kernel_second_deriv(id, alpha);
    switch (tag) {
        case SpaceTag::R3: return d2 + 2.0 / alpha * d1;
        case SpaceTag::S3: return d2 + 2.0 / std::tan(alpha) * d1;
        case SpaceTag::H3: return d2 + 2.0 / std::tanh(alpha) * d1;
    }
    throw InvalidInput("unknown space tag");
}

TangentVec kernel_grad(KernelId id, const Point& x, const Point& y) {
    if (x.tag() != kernel_space(id) || y.tag() != x.tag()) throw TagMismatch();
    const double a = distance(x, y);
    if (a <= 0.0) throw Singular("kernel gradient at coincident points");
    // Every stored S3 kernel has phi'(pi) = 0, so the gradient extends by
    // zero across the antipode where the geodesic direction is ambiguous.
    if (x.tag() == SpaceTag::S3 && a >= kPi - 1e-9) return {y, Vec4{}};
    return {y, kernel_deriv(id, a) * grad_distance(x, y).comp};
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol) {
    struct Rec {
        const std::function<double(double)>& f;
        double tol_scale;
        double run(double a, double fa, double m, double fm, double b, double fb, double whole,
                   int depth) const {
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= 15.0 * tol_scale * (b - a))
                return left + right + delta / 15.0;
            return run(a, fa, lm, flm, m, fm, left, depth - 1) +
                   run(m, fm, rm, frm, b, fb, right, depth - 1);
        }
    };
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double scale = std::max(std::abs(whole), 1e-3) / (b - a);
    Rec rec{f, rel_tol * scale};
    return rec.run(a, fa, m, fm, b, fb, whole, 48);
}

double average_value(const std::function<double(double)>& phi) {
    auto g = [&phi](double a) {
        if (a <= 0.0 || a >= kPi) return 0.0;  // sin^2 kills the integrable endpoints
        const double s = std::sin(a);
        return phi(a) * s * s * (2.0 / kPi);
    };
    return adaptive_simpson(g, 0.0, kPi, 1e-13);
}

double average_value(KernelId id) {
    if (kernel_space(id) != SpaceTag::S3)
        throw InvalidInput("average value is defined for S3 kernels only");
    return average_value([id](double a) { return kernel_value(id, a); });
}

}  // namespace linkint
