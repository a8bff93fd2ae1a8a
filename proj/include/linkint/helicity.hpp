#pragma once

// Helicity integrals, the <BS(V),V> pairing route, operator-norm bounds N(R)
// with ball-radius inversion, and the curl eigenvalue lower bound.

#include "linkint/electro.hpp"

namespace linkint {

enum class HelicityRoute { double_integral, bs_pairing };

// H(V) = Int BS(V).V.  The double-integral route is the raw pair-grid sum of
// (P_yx V(x) x grad_y phi).V(y) with the near-diagonal mask (parallel format;
// the left-translation format is served by the pairing route with the
// left-format operator).  The pairing route sums BS(V).V over `outer`
// (defaults to the integration grid itself).
double helicity(const FieldSpec& V, Format fmt, const VolumeGrid& grid, HelicityRoute route,
                double r_cut = -1.0, const VolumeGrid* outer = nullptr);

// Ball-equivalent geometry.
double ball_volume(SpaceTag tag, double R);
double ball_radius_for_volume(SpaceTag tag, double vol);

// Operator-norm bound: R3 N(R) = R; S3 N(R) = (1/pi)(2(1-cos R)+(pi-R) sin R);
// H3 N(R) = sinh R.
double bound_N(SpaceTag tag, double R);
double curl_eigen_bound(SpaceTag tag, double R);  // 1/N(R)

struct DomainSpec {
    SpaceTag tag;
    bool whole_space = true;  // S3 only
    double ball_radius = 0.0;

    static DomainSpec whole_s3();
    static DomainSpec ball(SpaceTag tag, double R);
    double volume() const;
    double equivalent_radius() const;  // R with ball_volume(R) = volume()
};

struct HelicityBoundReport {
    double helicity = 0.0;
    double energy = 0.0;       // <V,V>
    double N = 0.0;            // N(R(domain))
    double bs_norm_ratio = 0.0;  // |BS(V)| / |V| on the grid
    bool helicity_ok = false;    // |H| <= N |V|^2
    bool bs_norm_ok = false;     // |BS(V)| <= N |V|
};

HelicityBoundReport check_helicity_bound(const FieldSpec& V, const DomainSpec& dom,
                                         const VolumeGrid& grid, const VolumeGrid* outer = nullptr);

}  // namespace linkint
