#pragma once

// Linking, writhing and twisting integrals, and the Link = Twist + Writhe
// check for exponentiated ribbons.
//
// Formats:
//   left_translation (S3): two-integral form with the s3_lap kernel,
//     Lk = -II ( L_{yx^-1} x' x y' ) . grad_y phi0  -  (1/4pi^2) II (L x') . y'
//   parallel (S3/H3): one integral with the shifted kernel of the space,
//     Lk = -II ( P_{yx} x' x y' ) . grad_y phi
//   euclidean (R3): the classical Gauss integral (r3_newton kernel).
//
// Writhe uses the same integrands over K x K with the diagonal set to zero.
// The left-translation writhe carries an additional local counterterm +L/pi
// (L the arclength): the two-integral double integral by itself evaluates to
// Wr_P - L/(2pi), and the counterterm restores both the offset identity
// Wr_L - Wr_P = L/(2pi) and Link = Twist + Writhe in left format.

#include <optional>

#include "linkint/curves.hpp"
#include "linkint/kernels.hpp"

namespace linkint {

enum class Format { left_translation, parallel, euclidean };

const char* to_string(Format fmt);
bool format_compatible(Format fmt, SpaceTag tag);
Format default_format(SpaceTag tag);

struct LinkResult {
    double total = 0.0;
    // Left-translation format only: the kernel-gradient and plain-dot parts.
    std::optional<double> first_integral;
    std::optional<double> second_integral;
    double error_estimate = 0.0;  // |value - half-resolution value|
    double integer_gap = 0.0;
};

// Gauss-type linking integral by the product periodic trapezoid rule at
// resolution n (curves are spectrally resampled when needed).  Rejects pairs
// whose minimum distance is below 10x the maximum sample spacing unless
// `bypass_proximity` is set (used internally for ribbon edges).
LinkResult linking_number(const ClosedCurve& k1, const ClosedCurve& k2, Format fmt, int n,
                          bool bypass_proximity = false);

struct WritheResult {
    double value = 0.0;
    std::optional<double> first_integral;   // left format parts
    std::optional<double> second_integral;
    double error_estimate = 0.0;
};

WritheResult writhe(const ClosedCurve& k, Format fmt, int n);

enum class TwistFlavor { left, parallel };
enum class TwistDerivative { finite_difference, analytic_if_available };

// (1/2pi) Int T x V . V' ds with V' the transported-difference derivative of
// the framing (left translation or parallel transport moves V(s+h) back).
double twist(const Framing& f, TwistFlavor flavor,
             TwistDerivative mode = TwistDerivative::analytic_if_available);

struct LtwReport {
    double lk = 0.0;
    double tw = 0.0;
    double wr = 0.0;
    double residual = 0.0;      // lk - tw - wr
    double integer_gap = 0.0;   // |lk - nearest integer|
};

// Builds the ribbon edge at width eps, links it with the base curve, and
// compares against twist + writhe in the given format.  The linking factor is
// internally oversampled to resolve the eps-scale near-diagonal ridge.
LtwReport ltw_check(const Framing& f, double eps, Format fmt, int n);

}  // namespace linkint
