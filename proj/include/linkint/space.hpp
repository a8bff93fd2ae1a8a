#pragma once

// Ambient-space layer for the three model geometries:
//
//   R3  -- Euclidean 3-space, coordinates in components 0..2.
//   S3  -- unit sphere in R^4, also read as the group of unit quaternions
//          with basis (1, i, j, k) = (e0, e1, e2, e3).
//   H3  -- hyperboloid <x,x> = 1, x0 > 0 in Minkowski R^{1,3} with the
//          form <x,y> = x0 y0 - x1 y1 - x2 y2 - x3 y3.  The tangent metric
//          is u . v = -<u,v>, which is positive definite.
//
// Orientation convention: the ambient triple product is defined by
// [A,B,C] . w = det(A; B; C; w) (rows in that order).  On S3 this makes the
// left-invariant frame (x i, x j, x k) positively oriented, so left-invariant
// unit fields are curl eigenfields with eigenvalue -2 and a positively
// oriented Hopf fiber pair links +1.  All cross products, curls and linking
// signs in the library descend from this single choice.

#include <array>
#include <span>

#include "linkint/errors.hpp"
#include "linkint/vec.hpp"

namespace linkint {

enum class SpaceTag { R3, S3, H3 };

const char* to_string(SpaceTag tag);

// Number of ambient coordinates carried by points of the space.
inline int ambient_dim(SpaceTag tag) { return tag == SpaceTag::R3 ? 3 : 4; }

class Point {
  public:
    // Validating constructors; `tol` is the accepted manifold-membership error.
    static Point r3(const Vec4& c);
    static Point s3(const Vec4& c, double tol = 1e-12);
    static Point h3(const Vec4& c, double tol = 1e-12);
    static Point make(SpaceTag tag, const Vec4& c, double tol = 1e-12);

    // Snap near-manifold data (e.g. file input, accumulated rounding) back on.
    static Point project(SpaceTag tag, const Vec4& c);

    SpaceTag tag() const { return tag_; }
    const Vec4& coords() const { return c_; }
    double operator[](std::size_t i) const { return c_[i]; }

  private:
    Point(SpaceTag tag, const Vec4& c) : tag_(tag), c_(c) {}
    SpaceTag tag_;
    Vec4 c_;
};

struct TangentVec {
    Point base;
    Vec4 comp;

    SpaceTag tag() const { return base.tag(); }
};

// Tangent-metric inner product at a common base point. On H3 this is
// -<u,v>, positive definite on tangent vectors.
double metric_dot(SpaceTag tag, const Vec4& u, const Vec4& v);
double metric_norm(SpaceTag tag, const Vec4& u);

inline double dot(const TangentVec& u, const TangentVec& v) {
    if (u.tag() != v.tag()) throw TagMismatch();
    return metric_dot(u.tag(), u.comp, v.comp);
}
inline double norm(const TangentVec& u) { return metric_norm(u.tag(), u.comp); }

// Orthogonal projection of an ambient vector onto the tangent space at x.
Vec4 project_tangent(SpaceTag tag, const Vec4& x, const Vec4& w);

// Geodesic distance. Radians on S3 (range [0,pi]), hyperbolic length on H3.
double distance(const Point& x, const Point& y);

// Unit tangent at x pointing toward y along the geodesic.
TangentVec geodesic_dir(const Point& x, const Point& y);

// Gradient of the distance function alpha(x, .) evaluated at y: the unit
// tangent at y pointing away from x.
TangentVec grad_distance(const Point& x, const Point& y);

// exp_map(x, v, t) with |v| = 1:  x + t v  /  cos t x + sin t v  /
// cosh t x + sinh t v.
Point exp_map(const Point& x, const TangentVec& v, double t);

// Parallel transport of v along the geodesic from x to y.  Throws
// AmbiguousTransport for antipodal pairs on S3.
TangentVec parallel_transport(const Point& x, const Point& y, const TangentVec& v);

// Quaternion algebra on Vec4 read as w + x i + y j + z k.
Vec4 quat_mul(const Vec4& a, const Vec4& b);
Vec4 quat_conj(const Vec4& a);
Vec4 quat_inv(const Vec4& a);  // conjugate over squared norm

// Differential of left translation by y x^{-1} on S3: v -> (y x^{-1}) v.
TangentVec left_translate(const Point& x, const Point& y, const TangentVec& v);

// Ambient triple product [A,B,C] defined by [A,B,C] . w = det(A;B;C;w).
// In the H3 context the result is returned with its index raised so that
// -<[A,B,C], w> = det(A;B;C;w) for the Minkowski form.
Vec4 triple_product(SpaceTag tag, const Vec4& a, const Vec4& b, const Vec4& c);

// Cross product of tangent vectors at x: u x v = [x, u, v] (R3: the
// standard cross product).
TangentVec tangent_cross(const Point& x, const TangentVec& u, const TangentVec& v);
Vec4 tangent_cross(SpaceTag tag, const Vec4& x, const Vec4& u, const Vec4& v);

// Orthonormal positively-oriented tangent frame at x.  S3: the left-invariant
// frame (x i, x j, x k).  H3/R3: coordinate frame parallel-transported from
// the base point (1,0,0,0) / origin.
std::array<TangentVec, 3> frame_at(const Point& x);

// Base point used for canonical grids and transported frames.
Point canonical_pole(SpaceTag tag);

}  // namespace linkint
