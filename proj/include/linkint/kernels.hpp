#pragma once

// Radial kernel functions phi(alpha), alpha the geodesic distance, stored in
// signed form with the normalizing constant folded in:
//
//   r3_newton  phi  = -1/(4 pi alpha)                                 Delta phi = delta        (R3)
//   s3_lap     phi0 = -(1/4pi^2) (pi-a) cot a                         Delta phi0 = delta - 1/(2 pi^2)
//   s3_shift   phi  = -(1/4pi^2) (pi-a) csc a                         Delta phi - phi = delta
//   s3_phi1    phi1 = -(1/16pi^2) a (2pi-a)                           Delta phi1 = phi0 - [phi0]
//   s3_phi2    phi2 = -(1/192pi^2) (3a(2pi-a) + 2a(pi-a)(2pi-a)cot a) Delta phi2 = phi1 - [phi1]
//   h3_shift   phi  = -(1/4pi) csch a                                 Delta phi + phi = delta  (H3)
//   h3_lap     phi0 = -(1/4pi) coth a                                 Delta phi0 = delta       (H3)
//
// plus two smooth test kernels used by the convolution and pointwise-identity
// checks: s3_cos (cos a) and h3_gauss (exp(-a^2)).
//
// Integral operators consume these signed kernels directly and apply no
// further constants.

#include <functional>

#include "linkint/space.hpp"

namespace linkint {

enum class KernelId {
    r3_newton,
    s3_lap,
    s3_shift,
    s3_phi1,
    s3_phi2,
    h3_shift,
    h3_lap,
    s3_cos,    // smooth test kernel on S3
    h3_gauss,  // smooth test kernel on H3
};

SpaceTag kernel_space(KernelId id);
const char* kernel_name(KernelId id);

// True for kernels that blow up at alpha = 0.
bool kernel_singular_at_zero(KernelId id);

// Closed-form evaluation; removable values at alpha = pi handled by series.
double kernel_value(KernelId id, double alpha);
double kernel_deriv(KernelId id, double alpha);
double kernel_second_deriv(KernelId id, double alpha);

// phi'' + 2 cot(a) phi' on S3, phi'' + 2 coth(a) phi' on H3,
// phi'' + (2/a) phi' on R3.
double radial_laplacian(KernelId id, double alpha);

// grad_y phi(alpha(x,y)) = phi'(alpha) grad_y alpha.  Returns the zero vector
// at an S3 antipodal pair (every stored S3 kernel has phi'(pi) = 0).
TangentVec kernel_grad(KernelId id, const Point& x, const Point& y);

// Average value over S3: (1/2pi^2) Int_0^pi phi(a) 4 pi sin^2(a) da,
// by adaptive quadrature to relative accuracy ~1e-12.
double average_value(KernelId id);
double average_value(const std::function<double(double)>& phi);

// Adaptive Simpson quadrature on [a,b] (shared utility).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12);

}  // namespace linkint
