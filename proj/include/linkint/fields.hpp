#pragma once

// Vector fields on the three spaces and first/second-order differential
// operators with analytic and finite-difference backends.
//
// Registry kinds:
//   left_invariant(a,b,c)   x -> x (a i + b j + c k)   (S3, quaternion product)
//   right_invariant(a,b,c)  x -> (a i + b j + c k) x   (S3)
//   gradient_of(name)       gradient of a registered scalar
//   bump_gradient           gradient of the radial bump (1 - (r/R)^2)^3  (H3/R3)
//   bump_rotational         bump(r) times a rotation generator; divergence-free
//   grid_sampled            trilinear frame-component interpolation
//
// Finite-difference operators work in geodesic normal coordinates: evaluate
// along exp_map rays from the base point and transport values back.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "linkint/quadrature.hpp"
#include "linkint/space.hpp"

namespace linkint {

// Default geometric step sizes for first and second derivatives.
constexpr double kFdStep1 = 1e-3;
constexpr double kFdStep2 = 5e-3;

using VecFieldFn = std::function<Vec4(const Point&)>;
using ScalarFieldFn = std::function<double(const Point&)>;

// ---- scalar registry ---------------------------------------------------------

// Scalar functions usable as gradient potentials and charge densities.
// S3: coordinate functions "x0".."x3" (zero average).  H3/R3: "bump", the
// C^2 radial profile (1 - (r/R)^2)^3 supported in r < R about the pole.
struct ScalarSpec {
    SpaceTag tag;
    std::string name;
    double radius = 1.0;  // bump support

    double eval(const Point& x) const;
    Vec4 grad(const Point& x) const;       // analytic gradient
    double laplacian(const Point& x) const;  // analytic scalar Laplacian
};

ScalarSpec scalar_registry(SpaceTag tag, const std::string& name, double radius = 1.0);

// ---- grid-sampled fields -----------------------------------------------------

class GridSampledField {
  public:
    static GridSampledField sample(const VecFieldFn& src, const VolumeGrid& skeleton);

    Vec4 eval(const Point& x) const;  // trilinear in grid coordinates, frame components
    const VolumeGrid& skeleton() const { return grid_; }

  private:
    VolumeGrid grid_;
    std::vector<std::array<double, 3>> comps_;
};

// ---- field specifications ----------------------------------------------------

enum class FieldKind {
    left_invariant,
    right_invariant,
    gradient_scalar,
    bump_rotational,
    grid_sampled,
};

struct FieldTerm {
    FieldKind kind;
    double coeff = 1.0;
    Vec4 quat_axis{0, 0, 0, 0};  // (0,a,b,c) for invariant kinds
    ScalarSpec scalar{SpaceTag::S3, "x0"};
    int rotation_axis = 2;  // bump_rotational: coordinate axis of the rotation plane normal
    std::shared_ptr<const GridSampledField> grid;
};

class FieldSpec {
  public:
    static FieldSpec left_invariant(double a, double b, double c);
    static FieldSpec right_invariant(double a, double b, double c);
    static FieldSpec gradient_of(SpaceTag tag, const std::string& scalar_name, double radius = 1.0);
    static FieldSpec bump_rotational(SpaceTag tag, double radius, int axis = 2);
    static FieldSpec grid_sampled(std::shared_ptr<const GridSampledField> g, SpaceTag tag);

    FieldSpec& add(const FieldSpec& other, double coeff = 1.0);  // linear combination
    friend FieldSpec operator*(double s, FieldSpec f);
    friend FieldSpec operator+(FieldSpec a, const FieldSpec& b) { return a.add(b); }

    SpaceTag tag() const { return tag_; }
    const std::vector<FieldTerm>& terms() const { return terms_; }

    Vec4 eval_coords(const Point& x) const;
    TangentVec eval(const Point& x) const { return {x, eval_coords(x)}; }
    VecFieldFn as_fn() const;

    // Compact support radius about the pole; 0 means global support.
    double support_radius() const;
    bool has_analytic_ops() const;
    // True when every term is a closed form (no C^0 grid interpolation), so
    // quadratures may move their nodes with the evaluation point.
    bool smooth_everywhere() const;

  private:
    SpaceTag tag_ = SpaceTag::S3;
    std::vector<FieldTerm> terms_;
};

// Named registry constructor backing `registry:NAME?key=value` references.
FieldSpec field_registry(SpaceTag tag, const std::string& name,
                         const std::map<std::string, double>& params);

// ---- differential operators --------------------------------------------------

enum class DiffBackend { automatic, analytic, finite_difference };

// FD primitives on arbitrary callables (geodesic normal coordinates).
Vec4 fd_covariant_derivative(const VecFieldFn& V, const Point& x, const TangentVec& dir, double h);
Vec4 fd_curl(const VecFieldFn& V, const Point& x, double h = kFdStep1);
double fd_divergence(const VecFieldFn& V, const Point& x, double h = kFdStep1);
Vec4 fd_gradient(const ScalarFieldFn& f, const Point& x, double h = kFdStep1);
// Delta V = -curl curl V + grad div V, by nested differences.
Vec4 fd_vector_laplacian(const VecFieldFn& V, const Point& x, double h_outer = kFdStep2,
                         double h_inner = kFdStep1);

double divergence(const FieldSpec& V, const Point& x, DiffBackend b = DiffBackend::automatic);
TangentVec curl(const FieldSpec& V, const Point& x, DiffBackend b = DiffBackend::automatic);
TangentVec vector_laplacian(const FieldSpec& V, const Point& x,
                            DiffBackend b = DiffBackend::automatic);

// ---- L2 pairings --------------------------------------------------------------

double l2_inner(const FieldSpec& a, const FieldSpec& b, const VolumeGrid& grid);
double l2_norm(const FieldSpec& a, const VolumeGrid& grid);

}  // namespace linkint
