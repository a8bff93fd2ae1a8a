#include "linkint/electro.hpp"

#include <cmath>

namespace linkint {

namespace {

// P_{yx} v x grad_y phi for one source node, ambient coordinates.
// `dphi` is phi'(alpha).
Vec4 bs_pair_term(SpaceTag tag, const Vec4& x, const Vec4& vx, const Vec4& y, double alpha,
                  double dphi) {
    switch (tag) {
        case SpaceTag::R3: {
            const Vec4 d = y - x;
            const Vec4 grad = d * (dphi / alpha);
            return cross3(vx, grad);
        }
        case SpaceTag::S3: {
            if (alpha >= kPi - 1e-9) return Vec4{};
            const double c = std::cos(alpha), s = std::sin(alpha);
            const Vec4 u = (y - c * x) * (1.0 / s);
            const double comp = dot4(vx, u);
            const Vec4 moved = vx + comp * ((c - 1.0) * u - s * x);
            const Vec4 grad = (c * y - x) * (dphi / s);
            return tangent_cross(SpaceTag::S3, y, moved, grad);
        }
        case SpaceTag::H3: {
            const double c = std::cosh(alpha), s = std::sinh(alpha);
            const Vec4 u = (y - c * x) * (1.0 / s);
            const double comp = -minkowski_form(vx, u);
            const Vec4 moved = vx + comp * ((c - 1.0) * u + s * x);
            const Vec4 grad = (c * y - x) * (dphi / s);
            return tangent_cross(SpaceTag::H3, y, moved, grad);
        }
    }
    return Vec4{};
}

KernelId bs_kernel(SpaceTag tag) {
    switch (tag) {
        case SpaceTag::R3: return KernelId::r3_newton;
        case SpaceTag::S3: return KernelId::s3_shift;
        case SpaceTag::H3: return KernelId::h3_shift;
    }
    throw InvalidInput("unknown space tag");
}

constexpr double kMeanConstant = 1.0 / (4.0 * kPi * kPi);

Vec4 left_translate_raw(const Vec4& y, const Vec4& x, const Vec4& v) {
    return quat_mul(quat_mul(y, quat_conj(x)), v);
}

}  // namespace

ChargeSpec ChargeSpec::registry(SpaceTag tag, const std::string& name, double radius) {
    const ScalarSpec s = scalar_registry(tag, name, radius);
    return {tag, name, [s](const Point& x) { return s.eval(x); }};
}

ChargeSpec ChargeSpec::from_fn(SpaceTag tag, const std::string& name, ScalarFieldFn fn) {
    return {tag, name, std::move(fn)};
}

TangentVec biot_savart(const FieldSpec& V, const Point& y, Format fmt, const VolumeGrid& grid,
                       double r_cut) {
    if (V.tag() != y.tag() || grid.tag != y.tag()) throw TagMismatch();
    if (!format_compatible(fmt, y.tag()))
        throw InvalidInput("incompatible Biot-Savart format for this space");
    if (fmt == Format::left_translation)
        return {y, biot_savart_left_parts(V, y, grid, r_cut).total};
    const KernelId id = bs_kernel(y.tag());
    const Vec4 yc = y.coords();
    const SpaceTag tag = y.tag();
    const Vec4 sum = convolve<Vec4>(grid, y, r_cut, V.smooth_everywhere(),
                                    [&](const Vec4& x, double w, double alpha) {
        const Vec4 vx = V.eval_coords(Point::make(tag, x, 1e-9));
        return w * bs_pair_term(tag, x, vx, yc, alpha, kernel_deriv(id, alpha));
    });
    return {y, sum};
}

BSLeftParts biot_savart_left_parts(const FieldSpec& V, const Point& y, const VolumeGrid& grid,
                                   double r_cut) {
    if (y.tag() != SpaceTag::S3 || V.tag() != SpaceTag::S3 || grid.tag != SpaceTag::S3)
        throw InvalidInput("left-translation Biot-Savart requires S3 data");
    if (r_cut < 0.0) r_cut = grid.default_r_cut();
    const Vec4 yc = y.coords();

    BSLeftParts out;
    // Kernel-cross integral, masked near the source singularity.
    const bool rc_ok = V.smooth_everywhere();
    out.first = convolve<Vec4>(grid, y, r_cut, rc_ok, [&](const Vec4& x, double w, double alpha) {
        const Vec4 lv = left_translate_raw(yc, x, V.eval_coords(Point::s3(x, 1e-9)));
        if (alpha >= kPi - 1e-9) return Vec4{};
        const double c = std::cos(alpha), s = std::sin(alpha);
        const Vec4 grad = (c * yc - x) * (kernel_deriv(KernelId::s3_lap, alpha) / s);
        return w * tangent_cross(SpaceTag::S3, yc, lv, grad);
    });
    // Mean integral: smooth integrand, no mask.
    out.second = (-kMeanConstant) *
                 convolve<Vec4>(grid, y, 0.0, rc_ok, [&](const Vec4& x, double w, double) {
                     return w * left_translate_raw(yc, x, V.eval_coords(Point::s3(x, 1e-9)));
                 });
    // Gradient integral: differences of the scalar convolution with phi1.
    auto inner = [&](const Point& yy) {
        const Vec4 yyc = yy.coords();
        return convolve<double>(grid, yy, 1e-9, rc_ok, [&](const Vec4& x, double w, double alpha) {
            if (alpha >= kPi - 1e-9) return 0.0;
            const Vec4 lv = left_translate_raw(yyc, x, V.eval_coords(Point::s3(x, 1e-9)));
            const double c = std::cos(alpha), s = std::sin(alpha);
            const Vec4 grad = (c * yyc - x) * (kernel_deriv(KernelId::s3_phi1, alpha) / s);
            return w * dot4(lv, grad);
        });
    };
    out.third = 2.0 * fd_gradient(inner, y, kFdStep1);
    out.total = out.first + out.second + out.third;
    return out;
}

TangentVec bs_from_curve(const ClosedCurve& K, const Point& y, Format fmt) {
    if (K.tag() != y.tag()) throw TagMismatch();
    if (!format_compatible(fmt, y.tag()))
        throw InvalidInput("incompatible Biot-Savart format for this space");
    const Vec4 yc = y.coords();
    const SpaceTag tag = y.tag();
    Kahan<Vec4> acc;
    if (fmt == Format::left_translation) {
        for (int i = 0; i < K.size(); ++i) {
            const Vec4& x = K.point_coords(i);
            const Vec4 lv = left_translate_raw(yc, x, K.velocity_coords(i));
            const double alpha = distance(K.point(i), y);
            Vec4 term = (-kMeanConstant) * lv;
            if (alpha > 1e-12 && alpha < kPi - 1e-9) {
                const double c = std::cos(alpha), s = std::sin(alpha);
                const Vec4 grad = (c * yc - x) * (kernel_deriv(KernelId::s3_lap, alpha) / s);
                term += tangent_cross(SpaceTag::S3, yc, lv, grad);
            }
            acc.add(term);
        }
    } else {
        const KernelId id = bs_kernel(tag);
        for (int i = 0; i < K.size(); ++i) {
            const double alpha = distance(K.point(i), y);
            if (alpha <= 1e-12) throw Singular("curve current evaluated on the curve");
            acc.add(bs_pair_term(tag, K.point_coords(i), K.velocity_coords(i), yc, alpha,
                                 kernel_deriv(id, alpha)));
        }
    }
    return {y, acc.value() * K.param_step()};
}

double circulation(const std::function<Vec4(const Point&)>& B, const ClosedCurve& K) {
    Kahan<double> acc;
    for (int i = 0; i < K.size(); ++i)
        acc.add(metric_dot(K.tag(), B(K.point(i)), K.velocity_coords(i)));
    return acc.value() * K.param_step();
}

// ---- convolution calculus --------------------------------------------------------

RadialFn RadialFn::from_kernel(KernelId id) {
    return {[id](double a) { return kernel_value(id, a); },
            [id](double a) { return kernel_deriv(id, a); }, kernel_singular_at_zero(id)};
}

RadialFn RadialFn::laplacian_of(KernelId id) {
    if (id == KernelId::s3_cos)
        return {[](double a) { return -3.0 * std::cos(a); },
                [](double a) { return 3.0 * std::sin(a); }, false};
    throw InvalidInput("laplacian_of supports the smooth S3 test kernel only");
}

namespace {

void require_s3(const FieldSpec& V, const Point& y, const VolumeGrid& grid) {
    if (V.tag() != SpaceTag::S3 || y.tag() != SpaceTag::S3 || grid.tag != SpaceTag::S3)
        throw InvalidInput("left-translation convolutions require S3 data");
}

double conv_mask(const RadialFn& phi, const VolumeGrid& grid, double r_cut, bool needs_grad) {
    if (phi.singular) return r_cut >= 0.0 ? r_cut : grid.default_r_cut();
    return needs_grad ? 1e-9 : 0.0;
}

}  // namespace

Vec4 conv_A(const FieldSpec& V, const RadialFn& phi, const Point& y, const VolumeGrid& grid,
            double r_cut) {
    require_s3(V, y, grid);
    const Vec4 yc = y.coords();
    return convolve<Vec4>(grid, y, conv_mask(phi, grid, r_cut, false), V.smooth_everywhere(),
                          [&](const Vec4& x, double w, double alpha) {
                              const Vec4 lv =
                                  left_translate_raw(yc, x, V.eval_coords(Point::s3(x, 1e-9)));
                              return (w * phi.value(alpha)) * lv;
                          });
}

Vec4 conv_B(const FieldSpec& V, const RadialFn& phi, const Point& y, const VolumeGrid& grid,
            double r_cut) {
    require_s3(V, y, grid);
    const Vec4 yc = y.coords();
    return convolve<Vec4>(grid, y, conv_mask(phi, grid, r_cut, true), V.smooth_everywhere(),
                          [&](const Vec4& x, double w, double alpha) {
                              if (alpha >= kPi - 1e-9) return Vec4{};
                              const Vec4 lv =
                                  left_translate_raw(yc, x, V.eval_coords(Point::s3(x, 1e-9)));
                              const double c = std::cos(alpha), s = std::sin(alpha);
                              const Vec4 grad = (c * yc - x) * (phi.deriv(alpha) / s);
                              return w * tangent_cross(SpaceTag::S3, yc, lv, grad);
                          });
}

Vec4 conv_G(const FieldSpec& V, const RadialFn& phi, const Point& y, const VolumeGrid& grid,
            double r_cut) {
    require_s3(V, y, grid);
    const double mask = conv_mask(phi, grid, r_cut, true);
    const bool rc_ok = V.smooth_everywhere();
    auto inner = [&](const Point& yy) {
        const Vec4 yyc = yy.coords();
        return convolve<double>(grid, yy, mask, rc_ok, [&](const Vec4& x, double w, double alpha) {
            if (alpha >= kPi - 1e-9) return 0.0;
            const Vec4 lv = left_translate_raw(yyc, x, V.eval_coords(Point::s3(x, 1e-9)));
            const double c = std::cos(alpha), s = std::sin(alpha);
            const Vec4 grad = (c * yyc - x) * (phi.deriv(alpha) / s);
            return w * dot4(lv, grad);
        });
    };
    return fd_gradient(inner, y, kFdStep1);
}

Vec4 conv_A(const FieldSpec& V, KernelId id, const Point& y, const VolumeGrid& grid, double r_cut) {
    return conv_A(V, RadialFn::from_kernel(id), y, grid, r_cut);
}
Vec4 conv_B(const FieldSpec& V, KernelId id, const Point& y, const VolumeGrid& grid, double r_cut) {
    return conv_B(V, RadialFn::from_kernel(id), y, grid, r_cut);
}
Vec4 conv_G(const FieldSpec& V, KernelId id, const Point& y, const VolumeGrid& grid, double r_cut) {
    return conv_G(V, RadialFn::from_kernel(id), y, grid, r_cut);
}

TangentVec greens_operator(const FieldSpec& V, const Point& y, const VolumeGrid& grid,
                           double r_cut) {
    require_s3(V, y, grid);
    const Vec4 a = conv_A(V, KernelId::s3_lap, y, grid, r_cut);
    const Vec4 b = conv_B(V, KernelId::s3_phi1, y, grid, r_cut);
    const Vec4 g = conv_G(V, KernelId::s3_phi2, y, grid, r_cut);
    return {y, a + 2.0 * b + 4.0 * g};
}

std::array<double, 3> convolution_laplacian_residuals(const FieldSpec& V, KernelId smooth_id,
                                                      const Point& y, const VolumeGrid& grid,
                                                      double h_outer, double h_inner) {
    const RadialFn phi = RadialFn::from_kernel(smooth_id);
    const RadialFn dphi = RadialFn::laplacian_of(smooth_id);

    auto A_fn = [&](const Point& p) { return conv_A(V, phi, p, grid); };
    auto B_fn = [&](const Point& p) { return conv_B(V, phi, p, grid); };
    auto G_fn = [&](const Point& p) { return conv_G(V, phi, p, grid); };

    const Vec4 A1 = conv_A(V, phi, y, grid), B1 = conv_B(V, phi, y, grid),
               G1 = conv_G(V, phi, y, grid);
    const Vec4 Ad = conv_A(V, dphi, y, grid), Bd = conv_B(V, dphi, y, grid),
               Gd = conv_G(V, dphi, y, grid);

    const Vec4 lapA = fd_vector_laplacian(A_fn, y, h_outer, h_inner);
    const Vec4 lapB = fd_vector_laplacian(B_fn, y, h_outer, h_inner);
    const Vec4 lapG = fd_vector_laplacian(G_fn, y, h_outer, h_inner);

    const Vec4 rA = lapA - (Ad - 4.0 * A1 - 2.0 * B1);
    const Vec4 rB = lapB - (Bd + 2.0 * Ad - 2.0 * G1);
    const Vec4 rG = lapG - Gd;
    return {norm4(rA), norm4(rB), norm4(rG)};
}

double key_lemma_residual(const Point& x, const Point& y, const TangentVec& vx, KernelId id) {
    const SpaceTag tag = kernel_space(id);
    if (tag == SpaceTag::R3) throw InvalidInput("pointwise identity checks run on S3/H3");
    if (x.tag() != tag || y.tag() != tag || vx.base.tag() != tag) throw TagMismatch();
    const double alpha0 = distance(x, y);
    if (tag == SpaceTag::S3 && (alpha0 < 0.2 || alpha0 > kPi - 0.2))
        throw InvalidInput("configuration outside the safe distance range");
    if (tag == SpaceTag::H3 && alpha0 < 0.2)
        throw InvalidInput("configuration outside the safe distance range");

    auto W = [&](const Point& yy) {
        const double a = distance(x, yy);
        return bs_pair_term(tag, x.coords(), vx.comp, yy.coords(), a, kernel_deriv(id, a));
    };
    auto S = [&](const Point& yy) {
        const double a = distance(x, yy);
        const double phi = kernel_value(id, a), dphi = kernel_deriv(id, a);
        const double dpsi = tag == SpaceTag::S3 ? -std::sin(a) * phi + std::cos(a) * dphi
                                                : std::sinh(a) * phi + std::cosh(a) * dphi;
        // grad_x alpha points away from yy
        return -dpsi * metric_dot(tag, vx.comp, geodesic_dir(x, yy).comp);
    };

    const Vec4 lhs = fd_curl(W, y, kFdStep1) - fd_gradient(S, y, kFdStep1);

    const double shifted = tag == SpaceTag::S3
                               ? radial_laplacian(id, alpha0) - kernel_value(id, alpha0)
                               : radial_laplacian(id, alpha0) + kernel_value(id, alpha0);
    const double pair = tag == SpaceTag::S3 ? dot4(vx.comp, y.coords())
                                            : minkowski_form(vx.comp, y.coords());
    const Vec4 rhs = shifted * (vx.comp - pair * y.coords());
    return metric_norm(tag, lhs - rhs);
}

// ---- electric fields and Maxwell ---------------------------------------------------

namespace {

KernelId laplace_kernel(SpaceTag tag) {
    switch (tag) {
        case SpaceTag::R3: return KernelId::r3_newton;
        case SpaceTag::S3: return KernelId::s3_lap;
        case SpaceTag::H3: return KernelId::h3_lap;
    }
    throw InvalidInput("unknown space tag");
}

}  // namespace

TangentVec electric_field(const ChargeSpec& rho, const Point& y, const VolumeGrid& grid,
                          double r_cut) {
    if (rho.tag != y.tag() || grid.tag != y.tag()) throw TagMismatch();
    const KernelId id = laplace_kernel(y.tag());
    auto potential = [&](const Point& yy) {
        return convolve<double>(grid, yy, r_cut, [&](const Vec4& x, double w, double alpha) {
            return w * rho.eval(Point::make(grid.tag, x, 1e-9)) * kernel_value(id, alpha);
        });
    };
    return {y, fd_gradient(potential, y, kFdStep1)};
}

MaxwellReport maxwell_residuals(const FieldSpec& J, const ChargeSpec& rho, const Point& y,
                                const VolumeGrid& grid, double r_cut) {
    MaxwellReport out;

    auto E_fn = [&](const Point& p) { return electric_field(rho, p, grid, r_cut).comp; };
    out.div_e_minus_rho = fd_divergence(E_fn, y, kFdStep2) - rho.eval(y);
    out.curl_e = metric_norm(y.tag(), fd_curl(E_fn, y, kFdStep2));

    const Format fmt = default_format(y.tag());
    auto B_fn = [&](const Point& p) { return biot_savart(J, p, fmt, grid, r_cut).comp; };
    out.div_b = fd_divergence(B_fn, y, kFdStep2);

    const Vec4 curl_b = fd_curl(B_fn, y, kFdStep2);
    Vec4 dEdt{};
    // dE/dt is the electric field of the accumulating charge -div J; it
    // vanishes identically for divergence-free currents.
    const bool divergence_free = [&] {
        for (const auto& t : J.terms())
            if (t.kind == FieldKind::gradient_scalar || t.kind == FieldKind::grid_sampled)
                return false;
        return true;
    }();
    if (!divergence_free) {
        const ChargeSpec rho_j = ChargeSpec::from_fn(
            J.tag(), "-div_j", [&J](const Point& p) { return -divergence(J, p); });
        dEdt = electric_field(rho_j, y, grid, r_cut).comp;
    }
    out.ampere = metric_norm(y.tag(), curl_b - J.eval_coords(y) - dEdt);
    return out;
}

}  // namespace linkint
