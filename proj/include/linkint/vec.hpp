#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace linkint {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

// Ambient 4-vector. R3 data lives in components 0..2 with component 3 kept zero.
struct Vec4 {
    std::array<double, 4> v{0.0, 0.0, 0.0, 0.0};

    Vec4() = default;
    Vec4(double a, double b, double c, double d = 0.0) : v{a, b, c, d} {}

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    Vec4& operator+=(const Vec4& o) {
        for (int i = 0; i < 4; ++i) v[i] += o.v[i];
        return *this;
    }
    Vec4& operator-=(const Vec4& o) {
        for (int i = 0; i < 4; ++i) v[i] -= o.v[i];
        return *this;
    }
    Vec4& operator*=(double s) {
        for (int i = 0; i < 4; ++i) v[i] *= s;
        return *this;
    }

    friend Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
    friend Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
    friend Vec4 operator*(Vec4 a, double s) { return a *= s; }
    friend Vec4 operator*(double s, Vec4 a) { return a *= s; }
    friend Vec4 operator-(const Vec4& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
};

inline double dot4(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm4(const Vec4& a) { return std::sqrt(dot4(a, a)); }

// Signature (+,-,-,-) bilinear form on R^{1,3}.
inline double minkowski_form(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

// Standard cross product on components 0..2.
inline Vec4 cross3(const Vec4& a, const Vec4& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0], 0.0};
}

// Compensated accumulator; works for double and Vec4 alike.
template <class T>
struct Kahan {
    T sum{};
    T comp{};

    void add(const T& x) {
        T y = x - comp;
        T t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    T value() const { return sum; }
};

}  // namespace linkint
