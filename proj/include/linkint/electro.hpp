#pragma once

// Biot-Savart and Green's operators, the left-translation convolution
// calculus, pointwise curl/grad identities for the shifted kernels, electric
// fields and Maxwell residuals.
//
// Volume quadratures exclude nodes within r_cut of the evaluation point
// (default 2x the grid spacing).  On S3 the grid is re-centered at the
// evaluation point, so exclusion bias varies smoothly when fields are
// differentiated in y.

#include <array>

#include "linkint/curves.hpp"
#include "linkint/fields.hpp"
#include "linkint/kernels.hpp"
#include "linkint/ltw.hpp"

namespace linkint {

// ---- charge densities ----------------------------------------------------------

// Smooth scalar source. S3 entries must have (near-)zero average; H3/R3
// entries are compactly supported.
struct ChargeSpec {
    SpaceTag tag;
    std::string name;
    ScalarFieldFn eval;

    static ChargeSpec registry(SpaceTag tag, const std::string& name, double radius = 1.0);
    static ChargeSpec from_fn(SpaceTag tag, const std::string& name, ScalarFieldFn fn);
};

// ---- Biot-Savart ----------------------------------------------------------------

// Magnetic field of the current V at y. Parallel format on S3/H3, the Gauss
// kernel form on R3 (Format::euclidean).
TangentVec biot_savart(const FieldSpec& V, const Point& y, Format fmt, const VolumeGrid& grid,
                       double r_cut = -1.0);

// Left-translation format on S3, with the three integrals reported
// separately: kernel-cross term, mean term, and the gradient term.
struct BSLeftParts {
    Vec4 first, second, third;
    Vec4 total;
};
BSLeftParts biot_savart_left_parts(const FieldSpec& V, const Point& y, const VolumeGrid& grid,
                                   double r_cut = -1.0);

// Field of a unit current concentrated on a closed curve (arclength measure).
TangentVec bs_from_curve(const ClosedCurve& K, const Point& y, Format fmt);
// Circulation of a field around a closed curve.
double circulation(const std::function<Vec4(const Point&)>& B, const ClosedCurve& K);

// ---- Green's operator and the convolution calculus ------------------------------

// Radial kernel handed to the convolutions: value, derivative, and the mask
// radius to use around its singular point (0 for smooth kernels).
struct RadialFn {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    bool singular = false;

    static RadialFn from_kernel(KernelId id);
    // The radial Laplacian of a smooth kernel, with its own derivative
    // (s3_cos only; needed by the Laplacian-of-convolution identities).
    static RadialFn laplacian_of(KernelId id);
};

// Left-translation convolutions on S3:
//   A = Int L V phi dx,  B = Int L V x grad phi dx,
//   G = grad_y Int L V . grad phi dx  (outer gradient by differences).
Vec4 conv_A(const FieldSpec& V, const RadialFn& phi, const Point& y, const VolumeGrid& grid,
            double r_cut = -1.0);
Vec4 conv_B(const FieldSpec& V, const RadialFn& phi, const Point& y, const VolumeGrid& grid,
            double r_cut = -1.0);
Vec4 conv_G(const FieldSpec& V, const RadialFn& phi, const Point& y, const VolumeGrid& grid,
            double r_cut = -1.0);
Vec4 conv_A(const FieldSpec& V, KernelId id, const Point& y, const VolumeGrid& grid,
            double r_cut = -1.0);
Vec4 conv_B(const FieldSpec& V, KernelId id, const Point& y, const VolumeGrid& grid,
            double r_cut = -1.0);
Vec4 conv_G(const FieldSpec& V, KernelId id, const Point& y, const VolumeGrid& grid,
            double r_cut = -1.0);

// Gr(V) = A(V, phi0) + 2 B(V, phi1) + 4 G(V, phi2); inverse of the vector
// Laplacian on S3.
TangentVec greens_operator(const FieldSpec& V, const Point& y, const VolumeGrid& grid,
                           double r_cut = -1.0);

// Residuals of the three Laplacian-of-convolution identities for a smooth
// kernel (default s3_cos):
//   Delta A = A(V, Dphi) - 4 A - 2 B
//   Delta B = B(V, Dphi) + 2 A(V, Dphi) - 2 G
//   Delta G = G(V, Dphi)
// Left sides by nested differences in y with the given steps; the residuals
// are truncation-limited and shrink quadratically as the steps are refined.
// Returns the three magnitudes.
std::array<double, 3> convolution_laplacian_residuals(const FieldSpec& V, KernelId smooth_id,
                                                      const Point& y, const VolumeGrid& grid,
                                                      double h_outer = kFdStep2,
                                                      double h_inner = kFdStep1);

// Pointwise identity residual
//   curl_y {P_yx v x grad_y phi} - grad_y {v . grad_x(c(alpha) phi)}
//     = (Delta phi -+ phi) (v - <v,y> y),
// c = cos on S3 (minus sign), cosh on H3 (plus sign).  Derivatives in y by
// finite differences; returns the tangent-norm of the mismatch.
double key_lemma_residual(const Point& x, const Point& y, const TangentVec& vx, KernelId id);

// ---- electric fields and Maxwell -------------------------------------------------

// E(rho)(y) = grad_y Int rho(x) phi(x,y) dx with the space's Laplacian
// fundamental solution; outer gradient by differences.
TangentVec electric_field(const ChargeSpec& rho, const Point& y, const VolumeGrid& grid,
                          double r_cut = -1.0);

struct MaxwellReport {
    double div_e_minus_rho = 0.0;
    double curl_e = 0.0;
    double div_b = 0.0;
    double ampere = 0.0;  // |curl B - J - dE/dt|
};

// Residuals of the four steady-state equations at y, for current J and charge
// rho. dE/dt is realized as the electric field of -div J.
MaxwellReport maxwell_residuals(const FieldSpec& J, const ChargeSpec& rho, const Point& y,
                                const VolumeGrid& grid, double r_cut = -1.0);

}  // namespace linkint
