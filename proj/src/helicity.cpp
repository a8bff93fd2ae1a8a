#include "linkint/helicity.hpp"

#include <cmath>

namespace linkint {

namespace {

// Shared with electro.cpp conceptually: P_yx v x grad phi at a pair.
Vec4 helicity_pair_term(SpaceTag tag, const Vec4& x, const Vec4& vx, const Vec4& y, double alpha,
                        double dphi) {
    switch (tag) {
        case SpaceTag::R3: {
            const Vec4 d = y - x;
            return cross3(vx, d * (dphi / alpha));
        }
        case SpaceTag::S3: {
            if (alpha >= kPi - 1e-9) return Vec4{};
            const double c = std::cos(alpha), s = std::sin(alpha);
            const Vec4 u = (y - c * x) * (1.0 / s);
            const double comp = dot4(vx, u);
            const Vec4 moved = vx + comp * ((c - 1.0) * u - s * x);
            return tangent_cross(SpaceTag::S3, y, moved, (c * y - x) * (dphi / s));
        }
        case SpaceTag::H3: {
            const double c = std::cosh(alpha), s = std::sinh(alpha);
            const Vec4 u = (y - c * x) * (1.0 / s);
            const double comp = -minkowski_form(vx, u);
            const Vec4 moved = vx + comp * ((c - 1.0) * u + s * x);
            return tangent_cross(SpaceTag::H3, y, moved, (c * y - x) * (dphi / s));
        }
    }
    return Vec4{};
}

}  // namespace

double helicity(const FieldSpec& V, Format fmt, const VolumeGrid& grid, HelicityRoute route,
                double r_cut, const VolumeGrid* outer) {
    const SpaceTag tag = V.tag();
    if (grid.tag != tag) throw TagMismatch();
    if (!format_compatible(fmt, tag)) throw InvalidInput("incompatible helicity format");
    if (tag == SpaceTag::H3 && V.support_radius() == 0.0)
        throw InvalidInput("H3 helicity requires a compactly supported field");
    if (tag != SpaceTag::S3 && V.support_radius() > grid.radius)
        throw InvalidInput("grid does not cover the field support");

    if (route == HelicityRoute::bs_pairing) {
        const VolumeGrid& out_grid = outer ? *outer : grid;
        if (out_grid.tag != tag) throw TagMismatch();
        return parallel_sum<double>(out_grid.size(), [&](std::size_t i) {
            const Point y = Point::make(tag, out_grid.nodes[i], 1e-9);
            const Vec4 b = biot_savart(V, y, fmt, grid, r_cut).comp;
            return out_grid.weights[i] * metric_dot(tag, b, V.eval_coords(y));
        });
    }

    if (fmt == Format::left_translation)
        throw InvalidInput(
            "the double-integral route runs in parallel/euclidean format; use bs_pairing for "
            "the left-translation operator");

    // Precompute node field values once; the pair sum is the hot loop.
    std::vector<Vec4> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        vals[i] = V.eval_coords(Point::make(tag, grid.nodes[i], 1e-9));

    const KernelId id = tag == SpaceTag::S3   ? KernelId::s3_shift
                        : tag == SpaceTag::H3 ? KernelId::h3_shift
                                              : KernelId::r3_newton;
    const PairGrid pg(grid, grid, r_cut);
    const double cut = pg.r_cut;
    const double cos_cut = std::cos(cut), cosh_cut = std::cosh(cut);

    return parallel_sum<double>(grid.size(), [&](std::size_t i) {
        Kahan<double> row;
        const Vec4& x = grid.nodes[i];
        const double wx = grid.weights[i];
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const Vec4& y = grid.nodes[j];
            double alpha;
            if (tag == SpaceTag::S3) {
                const double c = dot4(x, y);
                if (c > cos_cut) continue;
                alpha = std::acos(std::max(c, -1.0));
            } else if (tag == SpaceTag::H3) {
                const double c = minkowski_form(x, y);
                if (c < cosh_cut) continue;
                alpha = std::acosh(c);
            } else {
                const Vec4 d = x - y;
                const double r2 = dot4(d, d);
                if (r2 < cut * cut) continue;
                alpha = std::sqrt(r2);
            }
            const Vec4 term = helicity_pair_term(tag, x, vals[i], y, alpha, kernel_deriv(id, alpha));
            row.add(wx * grid.weights[j] * metric_dot(tag, term, vals[j]));
        }
        return row.value();
    });
}

double ball_volume(SpaceTag tag, double R) {
    if (R <= 0.0) throw InvalidInput("ball radius must be positive");
    switch (tag) {
        case SpaceTag::R3: return 4.0 / 3.0 * kPi * R * R * R;
        case SpaceTag::S3:
            if (R > kPi + 1e-12) throw InvalidInput("S3 ball radius exceeds pi");
            return kPi * (2.0 * R - std::sin(2.0 * R));
        case SpaceTag::H3: return kTwoPi * (std::sinh(R) * std::cosh(R) - R);
    }
    throw InvalidInput("unknown space tag");
}

double ball_radius_for_volume(SpaceTag tag, double vol) {
    if (vol <= 0.0) throw InvalidInput("volume must be positive");
    if (tag == SpaceTag::S3 && vol > 2.0 * kPi * kPi + 1e-9)
        throw InvalidInput("volume exceeds the volume of S3");
    // dV/dR vanishes cubically at the closed sphere; resolve the endpoint
    // directly rather than by bisection.
    if (tag == SpaceTag::S3 && vol >= 2.0 * kPi * kPi * (1.0 - 1e-12)) return kPi;
    double lo = 0.0;
    double hi = tag == SpaceTag::S3 ? kPi : 1.0;
    if (tag != SpaceTag::S3)
        while (ball_volume(tag, hi) < vol) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-13 * std::max(1.0, hi)) break;
        (ball_volume(tag, mid) < vol ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double bound_N(SpaceTag tag, double R) {
    if (R <= 0.0) throw InvalidInput("radius must be positive");
    switch (tag) {
        case SpaceTag::R3: return R;
        case SpaceTag::S3:
            if (R > kPi + 1e-12) throw InvalidInput("S3 radius exceeds pi");
            return (2.0 * (1.0 - std::cos(R)) + (kPi - R) * std::sin(R)) / kPi;
        case SpaceTag::H3: return std::sinh(R);
    }
    throw InvalidInput("unknown space tag");
}

double curl_eigen_bound(SpaceTag tag, double R) { return 1.0 / bound_N(tag, R); }

DomainSpec DomainSpec::whole_s3() { return {SpaceTag::S3, true, kPi}; }

DomainSpec DomainSpec::ball(SpaceTag tag, double R) {
    if (R <= 0.0) throw InvalidInput("ball radius must be positive");
    return {tag, false, R};
}

double DomainSpec::volume() const {
    if (whole_space) {
        if (tag != SpaceTag::S3) throw InvalidInput("whole-space domains are finite on S3 only");
        return 2.0 * kPi * kPi;
    }
    return ball_volume(tag, ball_radius);
}

double DomainSpec::equivalent_radius() const {
    if (whole_space) return kPi;
    return ball_radius;  // already a ball
}

HelicityBoundReport check_helicity_bound(const FieldSpec& V, const DomainSpec& dom,
                                         const VolumeGrid& grid, const VolumeGrid* outer) {
    if (dom.tag != V.tag() || grid.tag != V.tag()) throw TagMismatch();
    if (!dom.whole_space && V.support_radius() > dom.ball_radius + 1e-12)
        throw InvalidInput("field support exceeds the domain");

    HelicityBoundReport rep;
    const Format fmt = default_format(V.tag());
    rep.helicity = helicity(V, fmt, grid, HelicityRoute::bs_pairing, -1.0, outer);
    rep.energy = l2_inner(V, V, grid);
    rep.N = bound_N(dom.tag, dom.equivalent_radius());

    const VolumeGrid& og = outer ? *outer : grid;
    const double bs_sq = parallel_sum<double>(og.size(), [&](std::size_t i) {
        const Point y = Point::make(V.tag(), og.nodes[i], 1e-9);
        const Vec4 b = biot_savart(V, y, fmt, grid).comp;
        return og.weights[i] * metric_dot(V.tag(), b, b);
    });
    const double vnorm = std::sqrt(std::max(rep.energy, 0.0));
    rep.bs_norm_ratio = vnorm > 0.0 ? std::sqrt(std::max(bs_sq, 0.0)) / vnorm : 0.0;
    rep.helicity_ok = std::abs(rep.helicity) <= rep.N * rep.energy + 1e-12;
    rep.bs_norm_ok = rep.bs_norm_ratio <= rep.N + 1e-12;
    return rep;
}

}  // namespace linkint
