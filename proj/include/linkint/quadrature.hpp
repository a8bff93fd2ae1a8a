#pragma once

// Volume grids and integration rules.
//
// S3 uses Hopf coordinates (eta, xi1, xi2) in [0,pi/2] x [0,2pi)^2,
//   x = (cos eta cos xi1, cos eta sin xi1, sin eta cos xi2, sin eta sin xi2),
// with Gauss-Legendre nodes in eta and half-offset uniform (trapezoid) nodes
// in the two periodic angles; the volume element is sin eta cos eta.
// H3 and R3 use geodesic-polar balls about the canonical pole, truncated at
// a configured radius.
//
// Singular convolutions exclude nodes within r_cut of the evaluation point.
// On S3 the whole grid is re-centered at the evaluation point by an isometry,
// so node distances are fixed and the exclusion bias varies smoothly with y.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "linkint/parallel.hpp"
#include "linkint/space.hpp"

namespace linkint {

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

struct VolumeGrid {
    SpaceTag tag = SpaceTag::S3;
    std::vector<Vec4> nodes;      // centered at the canonical pole
    std::vector<double> weights;
    std::vector<double> alpha0;   // geodesic distance node -> pole
    std::array<int, 3> dims{0, 0, 0};
    std::array<std::vector<double>, 3> axis;  // per-axis coordinates (eta/xi or rho/theta/phi)
    double max_spacing = 0.0;     // coarsest local node spacing (arc length)
    double radius = 0.0;          // truncation radius (H3/R3 balls)
    double weight_sum = 0.0;

    std::size_t size() const { return nodes.size(); }
    double default_r_cut() const { return 2.0 * max_spacing; }

    static VolumeGrid s3_hopf(int n_eta, int n_xi1, int n_xi2);
    static VolumeGrid h3_ball(double rho_max, int n_rho, int n_theta, int n_phi);
    static VolumeGrid r3_ball(double r_max, int n_r, int n_theta, int n_phi);
    static VolumeGrid make_default(SpaceTag tag, std::array<int, 3> dims, double radius = 3.0);
};

// Isometry taking the canonical pole to y, applied to pole-centered nodes.
class Recenter {
  public:
    explicit Recenter(const Point& y);
    Vec4 operator()(const Vec4& node) const;

  private:
    SpaceTag tag_;
    Vec4 y_;
    bool identity_ = false;
    double cosh_d_ = 1.0, sinh_d_ = 0.0;
    Vec4 u_;  // H3 translation direction at the pole
};

// Plain weighted sum of fn(node_point, weight) over the grid.
template <class T, class F>
T integrate_volume(const VolumeGrid& g, F&& fn) {
    return parallel_sum<T>(g.size(), [&](std::size_t i) -> T {
        return fn(Point::make(g.tag, g.nodes[i], 1e-9), g.weights[i]);
    });
}

// Convolution-style sum at y with singular exclusion.  fn receives the world
// node coordinates, its weight and alpha(node, y).  On S3 with `recenter`
// set the grid is carried to y by an isometry, so alpha comes precomputed
// and the exclusion bias varies smoothly with y.  Callers whose integrand is
// only piecewise-smooth in the node positions (grid-sampled fields) keep the
// nodes fixed instead.  H3/R3 grids always stay put: they cover the
// integrand's support.
template <class T, class F>
T convolve(const VolumeGrid& g, const Point& y, double r_cut, bool recenter, F&& fn) {
    if (g.tag != y.tag()) throw TagMismatch();
    if (r_cut < 0.0) r_cut = g.default_r_cut();
    if (g.tag == SpaceTag::S3 && recenter) {
        const Recenter rc(y);
        return parallel_sum<T>(g.size(), [&](std::size_t i) -> T {
            const double a = g.alpha0[i];
            if (a < r_cut) return T{};
            return fn(rc(g.nodes[i]), g.weights[i], a);
        });
    }
    return parallel_sum<T>(g.size(), [&](std::size_t i) -> T {
        const double a = distance(Point::make(g.tag, g.nodes[i], 1e-9), y);
        if (a < r_cut) return T{};
        return fn(g.nodes[i], g.weights[i], a);
    });
}

template <class T, class F>
T convolve(const VolumeGrid& g, const Point& y, double r_cut, F&& fn) {
    return convolve<T>(g, y, r_cut, true, std::forward<F>(fn));
}

struct PairGrid {
    const VolumeGrid* a;
    const VolumeGrid* b;  // may equal a
    double r_cut;

    PairGrid(const VolumeGrid& ga, const VolumeGrid& gb, double cut = -1.0)
        : a(&ga), b(&gb), r_cut(cut >= 0.0 ? cut : 2.0 * std::max(ga.max_spacing, gb.max_spacing)) {}
};

// Double sum over the pair grid with the near-diagonal mask alpha < r_cut.
// fn(xa, wa, xb, wb, alpha) -> T.  Outer index parallel, deterministic.
template <class T, class F>
T integrate_pair(const PairGrid& pg, F&& fn) {
    const VolumeGrid& A = *pg.a;
    const VolumeGrid& B = *pg.b;
    if (A.tag != B.tag) throw TagMismatch();
    const SpaceTag tag = A.tag;
    const double cut = pg.r_cut;
    const double cos_cut = std::cos(cut), cosh_cut = std::cosh(cut);
    return parallel_sum<T>(A.size(), [&](std::size_t i) -> T {
        Kahan<T> row;
        const Vec4& xa = A.nodes[i];
        const double wa = A.weights[i];
        for (std::size_t j = 0; j < B.size(); ++j) {
            const Vec4& xb = B.nodes[j];
            double alpha;
            if (tag == SpaceTag::S3) {
                const double c = dot4(xa, xb);
                if (c > cos_cut) continue;
                alpha = std::acos(std::max(c, -1.0));
            } else if (tag == SpaceTag::H3) {
                const double c = minkowski_form(xa, xb);
                if (c < cosh_cut) continue;
                alpha = std::acosh(c);
            } else {
                const Vec4 d = xa - xb;
                const double r2 = dot4(d, d);
                if (r2 < cut * cut) continue;
                alpha = std::sqrt(r2);
            }
            row.add(fn(xa, wa, xb, B.weights[j], alpha));
        }
        return row.value();
    });
}

// Fraction of the product weight lost to the diagonal mask.
double masked_weight_fraction(const PairGrid& pg);

struct SweepRow {
    double resolution;
    double value;
    double delta;  // value - previous value (0 for the first row)
};

std::vector<SweepRow> convergence_sweep(const std::vector<double>& resolutions,
                                        const std::function<double(double)>& compute);

// Estimated convergence order from the last two deltas (log2 ratio); NaN when
// fewer than three rows or a vanishing delta.
double estimated_order(const std::vector<SweepRow>& rows);

}  // namespace linkint
