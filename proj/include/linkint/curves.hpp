#pragma once

// Discretized closed curves on R3/S3/H3 with trigonometric (spectral)
// interpolation, a canonical curve library, unit-normal framings and
// exponentiated ribbon edges.
//
// Curves store n samples on a uniform parameter grid s_j = 2 pi j / n
// (implicitly closed).  All downstream integrals use parameter-derivative
// velocity vectors and parameter measure, so nothing assumes unit speed.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linkint/space.hpp"

namespace linkint {

class ClosedCurve {
  public:
    ClosedCurve() = default;  // empty; fill via from_points

    // Validates membership (tol), reprojects, and builds spectral velocities.
    static ClosedCurve from_points(SpaceTag tag, std::vector<Vec4> samples, double tol = 1e-8);

    int size() const { return static_cast<int>(pts_.size()); }
    SpaceTag tag() const { return tag_; }
    double param_step() const { return kTwoPi / size(); }
    double param(int i) const { return kTwoPi * i / size(); }

    Point point(int i) const { return Point::make(tag_, pts_[i], 1e-9); }
    const Vec4& point_coords(int i) const { return pts_[i]; }
    // dx/ds at node i (parameter derivative), projected to the tangent space.
    TangentVec velocity(int i) const { return {point(i), vel_[i]}; }
    const Vec4& velocity_coords(int i) const { return vel_[i]; }

    double arclength() const { return arclength_; }

    ClosedCurve resampled(int m) const;
    ClosedCurve reversed() const;

    double min_sample_spacing() const;
    double max_sample_spacing() const;
    double min_distance_to(const ClosedCurve& other) const;
    // Minimum distance between samples at circular index separation >= window.
    double min_self_distance(int window) const;

  private:
    void build_spectral();

    SpaceTag tag_ = SpaceTag::R3;
    std::vector<Vec4> pts_;
    std::vector<Vec4> vel_;
    double arclength_ = 0.0;
    // Fourier coefficients per ambient coordinate: cosc[d][k], k = 0..M;
    // sinc[d][k], k = 1..K (K = (n-1)/2, M = n/2 rounded down).
    std::array<std::vector<double>, 4> cosc_, sinc_;
};

// Periodic trapezoid over the curve parameter; spectrally accurate for
// analytic integrands. fn(i) is the integrand at node i.
double integrate_curve(const ClosedCurve& c, const std::function<double(int)>& fn);

// ---- canonical curves ------------------------------------------------------

ClosedCurve great_circle(int n);
// (cos s, sin s, 0, 0) and (0, 0, cos t, sin t); linking number +1.
std::pair<ClosedCurve, ClosedCurve> orthogonal_great_circle_pair(int n);
// x(s) = (1/sqrt2)(cos ps, sin ps, cos qs, sin qs); requires gcd(p,q) = 1.
ClosedCurve clifford_torus_knot(int p, int q, int n);
// Two fibers of the Hopf fibration by left multiplication, at fiber distance
// eta; consistently oriented, linking number +1.
std::pair<ClosedCurve, ClosedCurve> hopf_fiber_pair(int n, double eta = kPi / 4.0);
ClosedCurve h3_geodesic_circle(const Point& center, double radius, int n, int plane_axis1 = 0,
                               int plane_axis2 = 1);
ClosedCurve r3_round_circle(const Vec4& center, double radius, int n, int plane_axis1 = 0,
                            int plane_axis2 = 1);
// Map an R3 model curve into S3/H3 through the exponential map at base,
// using the positively-oriented frame there.
ClosedCurve exp_embedded(const ClosedCurve& r3_model, const Point& base);

// Name-based constructor backing `canonical:NAME?key=value` references.
// Returns one curve or, for the *_pair names, two.
std::vector<ClosedCurve> canonical_curve(const std::string& name,
                                         const std::map<std::string, double>& params, int n);

// ---- framings and ribbons --------------------------------------------------

enum class FramingMethod { explicit_registry, parallel_corrected, constant_angle };

struct Framing {
    ClosedCurve curve;
    std::vector<Vec4> normals;  // unit, orthogonal to the tangent
    FramingMethod method = FramingMethod::parallel_corrected;
    std::string registry_name;
    double theta0 = 0.0;
    std::optional<double> holonomy_angle;  // recorded by parallel transport construction

    TangentVec normal(int i) const { return {curve.point(i), normals[i]}; }
    // Analytic parameter derivative dV/ds for registry framings.
    bool has_analytic_derivative() const;
    Vec4 analytic_derivative(int i) const;
};

Framing make_framing(const ClosedCurve& curve, FramingMethod method,
                     const std::string& registry_name = "", double theta0 = 0.0);

struct Ribbon {
    Framing framing;
    double eps;
};

// Validates the embeddedness heuristic: min distance between the curve and
// its pushed-off edge must exceed eps/2.
Ribbon make_ribbon(const Framing& framing, double eps);

// Node-wise exp_map(x(s), V(s), eps).
ClosedCurve ribbon_edge(const Ribbon& ribbon);
ClosedCurve ribbon_edge(const Framing& framing, double eps);

}  // namespace linkint
