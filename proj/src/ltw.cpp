#include "linkint/ltw.hpp"

#include <algorithm>
#include <cmath>

#include "linkint/parallel.hpp"

namespace linkint {

const char* to_string(Format fmt) {
    switch (fmt) {
        case Format::left_translation: return "left";
        case Format::parallel: return "parallel";
        case Format::euclidean: return "euclidean";
    }
    return "?";
}

bool format_compatible(Format fmt, SpaceTag tag) {
    switch (fmt) {
        case Format::left_translation: return tag == SpaceTag::S3;
        case Format::parallel: return tag == SpaceTag::S3 || tag == SpaceTag::H3;
        case Format::euclidean: return tag == SpaceTag::R3;
    }
    return false;
}

Format default_format(SpaceTag tag) {
    return tag == SpaceTag::R3 ? Format::euclidean : Format::parallel;
}

namespace {

struct PairTerm {
    double cross = 0.0;  // kernel-gradient integrand
    double dot = 0.0;    // left-translation plain-dot integrand

    PairTerm& operator+=(const PairTerm& o) {
        cross += o.cross;
        dot += o.dot;
        return *this;
    }
    friend PairTerm operator+(PairTerm a, const PairTerm& b) { return a += b; }
    friend PairTerm operator-(PairTerm a, const PairTerm& b) {
        a.cross -= b.cross;
        a.dot -= b.dot;
        return a;
    }
};

KernelId format_kernel(SpaceTag tag, Format fmt) {
    switch (fmt) {
        case Format::left_translation: return KernelId::s3_lap;
        case Format::parallel: return tag == SpaceTag::S3 ? KernelId::s3_shift : KernelId::h3_shift;
        case Format::euclidean: return KernelId::r3_newton;
    }
    throw InvalidInput("unknown format");
}

// Integrand of the Gauss-type integrals for one node pair, in ambient
// coordinates.  All tags: cross = -(T x' x y') . grad_y phi with T the
// format's transport; left translation additionally fills dot = (L x') . y'.
PairTerm pair_integrand(SpaceTag tag, Format fmt, const Vec4& x, const Vec4& vx, const Vec4& y,
                        const Vec4& vy) {
    PairTerm out;
    switch (tag) {
        case SpaceTag::R3: {
            const Vec4 d = y - x;
            const double r2 = dot4(d, d);
            const double r = std::sqrt(r2);
            // grad_y phi = (y - x) / (4 pi r^3) for phi = -1/(4 pi r)
            const Vec4 grad = d * (1.0 / (4.0 * kPi * r2 * r));
            out.cross = -dot4(cross3(vx, vy), grad);
            return out;
        }
        case SpaceTag::S3: {
            const double c = std::clamp(dot4(x, y), -1.0, 1.0);
            const double a = std::acos(c);
            const double sa = std::sin(a);
            if (fmt == Format::parallel) {
                if (a >= kPi - 1e-9) return out;  // kernel gradient vanishes at the antipode
                const Vec4 u = (y - c * x) * (1.0 / sa);
                const double comp = dot4(vx, u);
                const Vec4 moved = vx + comp * ((c - 1.0) * u - sa * x);
                const Vec4 grad = (c * y - x) * (kernel_deriv(KernelId::s3_shift, a) / sa);
                out.cross = -dot4(tangent_cross(SpaceTag::S3, y, moved, vy), grad);
                return out;
            }
            const Vec4 moved = quat_mul(quat_mul(y, quat_conj(x)), vx);
            out.dot = dot4(moved, vy);
            if (a < kPi - 1e-9) {
                const Vec4 grad = (c * y - x) * (kernel_deriv(KernelId::s3_lap, a) / sa);
                out.cross = -dot4(tangent_cross(SpaceTag::S3, y, moved, vy), grad);
            }
            return out;
        }
        case SpaceTag::H3: {
            const double c = std::max(minkowski_form(x, y), 1.0);
            const double a = std::acosh(c);
            const double sa = std::sinh(a);
            const Vec4 u = (y - c * x) * (1.0 / sa);
            const double comp = -minkowski_form(vx, u);
            const Vec4 moved = vx + comp * ((c - 1.0) * u + sa * x);
            const Vec4 grad = (c * y - x) * (kernel_deriv(KernelId::h3_shift, a) / sa);
            // tangent metric dot = -Minkowski form
            out.cross = minkowski_form(tangent_cross(SpaceTag::H3, y, moved, vy), grad);
            return out;
        }
    }
    return out;
}

constexpr double kLeftDotConstant = 1.0 / (4.0 * kPi * kPi);

// Double trapezoid sum over K1 x K2; `self` zeroes the diagonal.  Also returns
// the half-resolution (even-index) sum for an error estimate when both sizes
// are even.
struct DoubleSum {
    PairTerm full;
    PairTerm half;
    bool has_half = false;
};

struct PairAcc {
    PairTerm full, half;
    PairAcc& operator+=(const PairAcc& o) {
        full += o.full;
        half += o.half;
        return *this;
    }
    friend PairAcc operator+(PairAcc a, const PairAcc& b) { return a += b; }
    friend PairAcc operator-(PairAcc a, const PairAcc& b) {
        a.full = a.full - b.full;
        a.half = a.half - b.half;
        return a;
    }
};

DoubleSum pair_double_sum(const ClosedCurve& k1, const ClosedCurve& k2, Format fmt, bool self) {
    const SpaceTag tag = k1.tag();
    const int n1 = k1.size(), n2 = k2.size();
    using Acc = PairAcc;

    const Acc sum = parallel_sum<Acc>(static_cast<std::size_t>(n1), [&](std::size_t i) {
        Acc row;
        Kahan<PairTerm> facc, hacc;
        const Vec4& x = k1.point_coords(static_cast<int>(i));
        const Vec4& vx = k1.velocity_coords(static_cast<int>(i));
        for (int j = 0; j < n2; ++j) {
            PairTerm t;
            if (self && static_cast<int>(i) == j) {
                // The kernel integrand vanishes along the diagonal; the
                // left-translation dot integrand is smooth there and keeps
                // its value |x'|^2.
                if (fmt != Format::left_translation) continue;
                t.dot = dot4(vx, vx);
            } else {
                t = pair_integrand(tag, fmt, x, vx, k2.point_coords(j), k2.velocity_coords(j));
            }
            facc.add(t);
            if (i % 2 == 0 && j % 2 == 0) hacc.add(t);
        }
        row.full = facc.value();
        row.half = hacc.value();
        return row;
    });

    DoubleSum out;
    const double w = k1.param_step() * k2.param_step();
    out.full.cross = sum.full.cross * w;
    out.full.dot = sum.full.dot * w;
    out.has_half = (n1 % 2 == 0 && n2 % 2 == 0);
    out.half.cross = sum.half.cross * 4.0 * w;
    out.half.dot = sum.half.dot * 4.0 * w;
    return out;
}

double assemble(const PairTerm& t, Format fmt) {
    return fmt == Format::left_translation ? t.cross - kLeftDotConstant * t.dot : t.cross;
}

}  // namespace

LinkResult linking_number(const ClosedCurve& k1in, const ClosedCurve& k2in, Format fmt, int n,
                          bool bypass_proximity) {
    if (k1in.tag() != k2in.tag()) throw TagMismatch();
    if (!format_compatible(fmt, k1in.tag()))
        throw InvalidInput(std::string("format ") + to_string(fmt) + " is not defined on " +
                           to_string(k1in.tag()));
    const ClosedCurve k1 = n == k1in.size() ? k1in : k1in.resampled(n);
    const ClosedCurve k2 = n == k2in.size() ? k2in : k2in.resampled(n);

    if (!bypass_proximity) {
        const double spacing = std::max(k1.max_sample_spacing(), k2.max_sample_spacing());
        const double gap = k1.min_distance_to(k2);
        if (gap <= 10.0 * spacing)
            throw CurvesTooClose("curve separation " + std::to_string(gap) +
                                 " is below 10x the sample spacing " + std::to_string(spacing));
    }

    const DoubleSum s = pair_double_sum(k1, k2, fmt, false);
    LinkResult out;
    out.total = assemble(s.full, fmt);
    if (fmt == Format::left_translation) {
        out.first_integral = s.full.cross;
        out.second_integral = -kLeftDotConstant * s.full.dot;
    }
    if (s.has_half) out.error_estimate = std::abs(out.total - assemble(s.half, fmt));
    out.integer_gap = std::abs(out.total - std::round(out.total));
    return out;
}

WritheResult writhe(const ClosedCurve& kin, Format fmt, int n) {
    if (!format_compatible(fmt, kin.tag()))
        throw InvalidInput(std::string("format ") + to_string(fmt) + " is not defined on " +
                           to_string(kin.tag()));
    const ClosedCurve k = n == kin.size() ? kin : kin.resampled(n);

    const int window = std::max(4, k.size() / 16);
    if (k.min_self_distance(window) <= 2.0 * k.max_sample_spacing())
        throw SelfIntersectionSuspected(
            "distant samples come closer than twice the sample spacing");

    const DoubleSum s = pair_double_sum(k, k, fmt, true);
    WritheResult out;
    out.value = assemble(s.full, fmt);
    if (fmt == Format::left_translation) {
        out.first_integral = s.full.cross;
        out.second_integral = -kLeftDotConstant * s.full.dot;
        out.value += k.arclength() / kPi;  // local counterterm, see header
    }
    if (s.has_half) {
        double half = assemble(s.half, fmt);
        if (fmt == Format::left_translation) half += k.arclength() / kPi;
        out.error_estimate = std::abs(out.value - half);
    }
    return out;
}

double twist(const Framing& f, TwistFlavor flavor, TwistDerivative mode) {
    const ClosedCurve& K = f.curve;
    const SpaceTag tag = K.tag();
    if (flavor == TwistFlavor::left && tag != SpaceTag::S3)
        throw InvalidInput("left-invariant twist is defined on S3 only");
    if (tag == SpaceTag::R3 && flavor != TwistFlavor::parallel)
        throw InvalidInput("R3 twist uses the parallel flavor");

    const int n = K.size();
    const bool analytic =
        mode == TwistDerivative::analytic_if_available && f.has_analytic_derivative();

    auto derivative = [&](int i) -> Vec4 {
        const Point x = K.point(i);
        if (analytic) {
            const Vec4 vdot = f.analytic_derivative(i);
            if (flavor == TwistFlavor::parallel) return project_tangent(tag, x.coords(), vdot);
            // left-invariant derivative: V' = Vdot - x' x^{-1} V
            const Vec4 corr = quat_mul(quat_mul(K.velocity_coords(i), quat_conj(x.coords())),
                                       f.normals[i]);
            return vdot - corr;
        }
        const int ip = (i + 1) % n, im = (i + n - 1) % n;
        Vec4 fwd, bwd;
        if (flavor == TwistFlavor::parallel) {
            fwd = parallel_transport(K.point(ip), x, {K.point(ip), f.normals[ip]}).comp;
            bwd = parallel_transport(K.point(im), x, {K.point(im), f.normals[im]}).comp;
        } else {
            fwd = left_translate(K.point(ip), x, {K.point(ip), f.normals[ip]}).comp;
            bwd = left_translate(K.point(im), x, {K.point(im), f.normals[im]}).comp;
        }
        return (fwd - bwd) * (1.0 / (2.0 * K.param_step()));
    };

    Kahan<double> acc;
    for (int i = 0; i < n; ++i) {
        const Vec4& vx = K.velocity_coords(i);
        const double speed = metric_norm(tag, vx);
        const Vec4 cr = tangent_cross(tag, K.point_coords(i), vx, f.normals[i]);
        acc.add(metric_dot(tag, cr, derivative(i)) / speed);
    }
    return acc.value() * K.param_step() / kTwoPi;
}

LtwReport ltw_check(const Framing& f, double eps, Format fmt, int n) {
    const Framing fr = (n == f.curve.size())
                           ? f
                           : make_framing(f.curve.resampled(n), f.method, f.registry_name, f.theta0);
    const Ribbon ribbon = make_ribbon(fr, eps);
    const ClosedCurve edge = ribbon_edge(ribbon);
    const ClosedCurve& K = fr.curve;

    // The linking integrand develops an eps-wide ridge along the diagonal;
    // resolve it by oversampling the linking factor only.
    const double target = 4.0 * K.arclength() / eps;
    int m = n;
    while (m < target && m < 8192) m *= 2;

    LtwReport out;
    out.lk = linking_number(K, edge, fmt, m, /*bypass_proximity=*/true).total;
    const TwistFlavor flavor =
        fmt == Format::left_translation ? TwistFlavor::left : TwistFlavor::parallel;
    out.tw = twist(fr, flavor);
    out.wr = writhe(K, fmt, n).value;
    out.residual = out.lk - out.tw - out.wr;
    out.integer_gap = std::abs(out.lk - std::round(out.lk));
    return out;
}

}  // namespace linkint
