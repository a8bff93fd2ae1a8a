#include "linkint/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace linkint {

const char* to_string(SpaceTag tag) {
    switch (tag) {
        case SpaceTag::R3: return "r3";
        case SpaceTag::S3: return "s3";
        case SpaceTag::H3: return "h3";
    }
    return "?";
}

Point Point::r3(const Vec4& c) {
    Vec4 p = c;
    p[3] = 0.0;
    return Point(SpaceTag::R3, p);
}

Point Point::s3(const Vec4& c, double tol) {
    const double n = norm4(c);
    if (std::abs(n - 1.0) > tol)
        throw InvalidInput("point not on the unit 3-sphere: |x| = " + std::to_string(n));
    return Point(SpaceTag::S3, c);
}

Point Point::h3(const Vec4& c, double tol) {
    const double q = minkowski_form(c, c);
    if (std::abs(q - 1.0) > tol || c[0] <= 0.0)
        throw InvalidInput("point not on the hyperboloid <x,x> = 1, x0 > 0");
    return Point(SpaceTag::H3, c);
}

Point Point::make(SpaceTag tag, const Vec4& c, double tol) {
    switch (tag) {
        case SpaceTag::R3: return r3(c);
        case SpaceTag::S3: return s3(c, tol);
        case SpaceTag::H3: return h3(c, tol);
    }
    throw InvalidInput("unknown space tag");
}

Point Point::project(SpaceTag tag, const Vec4& c) {
    switch (tag) {
        case SpaceTag::R3: return r3(c);
        case SpaceTag::S3: {
            const double n = norm4(c);
            if (!(n > 1e-8)) throw InvalidInput("cannot project a near-zero vector to the 3-sphere");
            return Point(SpaceTag::S3, c * (1.0 / n));
        }
        case SpaceTag::H3: {
            const double q = minkowski_form(c, c);
            if (!(q > 1e-12) || c[0] <= 0.0)
                throw InvalidInput("vector is not timelike-forward; cannot project to the hyperboloid");
            return Point(SpaceTag::H3, c * (1.0 / std::sqrt(q)));
        }
    }
    throw InvalidInput("unknown space tag");
}

double metric_dot(SpaceTag tag, const Vec4& u, const Vec4& v) {
    return tag == SpaceTag::H3 ? -minkowski_form(u, v) : dot4(u, v);
}

double metric_norm(SpaceTag tag, const Vec4& u) {
    const double q = metric_dot(tag, u, u);
    return q > 0.0 ? std::sqrt(q) : 0.0;
}

Vec4 project_tangent(SpaceTag tag, const Vec4& x, const Vec4& w) {
    switch (tag) {
        case SpaceTag::R3: {
            Vec4 p = w;
            p[3] = 0.0;
            return p;
        }
        case SpaceTag::S3: return w - dot4(w, x) * x;
        case SpaceTag::H3: return w - minkowski_form(w, x) * x;  // <x,x> = 1
    }
    return w;
}

double distance(const Point& x, const Point& y) {
    if (x.tag() != y.tag()) throw TagMismatch();
    switch (x.tag()) {
        case SpaceTag::R3: return norm4(x.coords() - y.coords());
        case SpaceTag::S3: {
            const double c = std::clamp(dot4(x.coords(), y.coords()), -1.0, 1.0);
            return std::acos(c);
        }
        case SpaceTag::H3: {
            double c = minkowski_form(x.coords(), y.coords());
            if (c < 1.0 - 1e-9) throw InvalidInput("invalid hyperboloid pair: <x,y> < 1");
            c = std::max(c, 1.0);
            return std::acosh(c);
        }
    }
    throw InvalidInput("unknown space tag");
}

TangentVec geodesic_dir(const Point& x, const Point& y) {
    if (x.tag() != y.tag()) throw TagMismatch();
    const double a = distance(x, y);
    if (a <= 0.0) throw Singular("geodesic direction undefined for coincident points");
    switch (x.tag()) {
        case SpaceTag::R3: return {x, (y.coords() - x.coords()) * (1.0 / a)};
        case SpaceTag::S3: {
            if (a >= kPi - 1e-12)
                throw Singular("geodesic direction undefined for antipodal points");
            return {x, (y.coords() - std::cos(a) * x.coords()) * (1.0 / std::sin(a))};
        }
        case SpaceTag::H3:
            return {x, (y.coords() - std::cosh(a) * x.coords()) * (1.0 / std::sinh(a))};
    }
    throw InvalidInput("unknown space tag");
}

TangentVec grad_distance(const Point& x, const Point& y) {
    const double a = distance(x, y);
    if (a <= 0.0) throw Singular("distance gradient undefined at the source point");
    switch (x.tag()) {
        case SpaceTag::R3: return {y, (y.coords() - x.coords()) * (1.0 / a)};
        case SpaceTag::S3: {
            if (a >= kPi - 1e-12)
                throw Singular("distance gradient undefined at the antipode");
            return {y, (std::cos(a) * y.coords() - x.coords()) * (1.0 / std::sin(a))};
        }
        case SpaceTag::H3:
            return {y, (std::cosh(a) * y.coords() - x.coords()) * (1.0 / std::sinh(a))};
    }
    throw InvalidInput("unknown space tag");
}

Point exp_map(const Point& x, const TangentVec& v, double t) {
    if (v.base.tag() != x.tag()) throw TagMismatch();
    const double n = norm(v);
    if (std::abs(n - 1.0) > 1e-10)
        throw InvalidInput("exp_map requires a unit tangent direction");
    switch (x.tag()) {
        case SpaceTag::R3: return Point::r3(x.coords() + t * v.comp);
        case SpaceTag::S3:
            return Point::project(SpaceTag::S3, std::cos(t) * x.coords() + std::sin(t) * v.comp);
        case SpaceTag::H3:
            return Point::project(SpaceTag::H3, std::cosh(t) * x.coords() + std::sinh(t) * v.comp);
    }
    throw InvalidInput("unknown space tag");
}

TangentVec parallel_transport(const Point& x, const Point& y, const TangentVec& v) {
    if (x.tag() != y.tag() || v.base.tag() != x.tag()) throw TagMismatch();
    const double a = distance(x, y);
    if (a <= 0.0) return {y, v.comp};
    switch (x.tag()) {
        case SpaceTag::R3: return {y, v.comp};
        case SpaceTag::S3: {
            if (a >= kPi - 1e-12) throw AmbiguousTransport();
            const double ca = std::cos(a), sa = std::sin(a);
            const Vec4 u = (y.coords() - ca * x.coords()) * (1.0 / sa);
            const double comp = dot4(v.comp, u);
            // Rotate the in-plane component, fix the orthogonal complement.
            return {y, v.comp + comp * ((ca - 1.0) * u - sa * x.coords())};
        }
        case SpaceTag::H3: {
            const double ca = std::cosh(a), sa = std::sinh(a);
            const Vec4 u = (y.coords() - ca * x.coords()) * (1.0 / sa);
            const double comp = -minkowski_form(v.comp, u);
            return {y, v.comp + comp * ((ca - 1.0) * u + sa * x.coords())};
        }
    }
    throw InvalidInput("unknown space tag");
}

Vec4 quat_mul(const Vec4& a, const Vec4& b) {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

Vec4 quat_conj(const Vec4& a) { return {a[0], -a[1], -a[2], -a[3]}; }

Vec4 quat_inv(const Vec4& a) {
    const double q = dot4(a, a);
    if (q <= 0.0) throw Singular("inverse of the zero quaternion");
    return quat_conj(a) * (1.0 / q);
}

TangentVec left_translate(const Point& x, const Point& y, const TangentVec& v) {
    if (x.tag() != SpaceTag::S3 || y.tag() != SpaceTag::S3)
        throw InvalidInput("left translation is defined on S3 only");
    return {y, quat_mul(quat_mul(y.coords(), quat_conj(x.coords())), v.comp)};
}

namespace {

// Cofactors of the last row of det(a; b; c; w): coeff[i] = d det / d w[i].
Vec4 det_cofactors(const Vec4& a, const Vec4& b, const Vec4& c) {
    auto minor3 = [&](int i, int j, int k) {
        return a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i]) +
               a[k] * (b[i] * c[j] - b[j] * c[i]);
    };
    // Expansion of det(a;b;c;w) along the bottom row w.
    return {-minor3(1, 2, 3), minor3(0, 2, 3), -minor3(0, 1, 3), minor3(0, 1, 2)};
}

}  // namespace

Vec4 triple_product(SpaceTag tag, const Vec4& a, const Vec4& b, const Vec4& c) {
    Vec4 d = det_cofactors(a, b, c);
    if (tag == SpaceTag::H3) d[0] = -d[0];  // raise the index: -<[A,B,C],w> = det(A;B;C;w)
    return d;
}

Vec4 tangent_cross(SpaceTag tag, const Vec4& x, const Vec4& u, const Vec4& v) {
    if (tag == SpaceTag::R3) return cross3(u, v);
    return triple_product(tag, x, u, v);
}

TangentVec tangent_cross(const Point& x, const TangentVec& u, const TangentVec& v) {
    return {x, tangent_cross(x.tag(), x.coords(), u.comp, v.comp)};
}

Point canonical_pole(SpaceTag tag) {
    if (tag == SpaceTag::R3) return Point::r3({0, 0, 0});
    return Point::make(tag, {1, 0, 0, 0});
}

std::array<TangentVec, 3> frame_at(const Point& x) {
    switch (x.tag()) {
        case SpaceTag::R3:
            return {TangentVec{x, {1, 0, 0}}, TangentVec{x, {0, 1, 0}}, TangentVec{x, {0, 0, 1}}};
        case SpaceTag::S3: {
            const Vec4 q = x.coords();
            return {TangentVec{x, quat_mul(q, {0, 1, 0, 0})}, TangentVec{x, quat_mul(q, {0, 0, 1, 0})},
                    TangentVec{x, quat_mul(q, {0, 0, 0, 1})}};
        }
        case SpaceTag::H3: {
            const Point c0 = canonical_pole(SpaceTag::H3);
            const double a = distance(c0, x);
            std::array<Vec4, 3> e = {Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1}};
            if (a <= 0.0)
                return {TangentVec{x, e[0]}, TangentVec{x, e[1]}, TangentVec{x, e[2]}};
            std::array<TangentVec, 3> out = {TangentVec{x, {}}, TangentVec{x, {}}, TangentVec{x, {}}};
            for (int i = 0; i < 3; ++i)
                out[i] = parallel_transport(c0, x, TangentVec{c0, e[i]});
            return out;
        }
    }
    throw InvalidInput("unknown space tag");
}

}  // namespace linkint
