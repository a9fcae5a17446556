#pragma once

#include "surfq/types.hpp"

#include <cmath>

namespace surfq {

/// Second-order forward-mode jet over three variables: carries a value, a
/// gradient and a (symmetric) Hessian through arithmetic. Used as the
/// derivative fallback for user-defined level functions; built-in surfaces
/// ship analytic closures instead.
struct Jet3 {
    double v = 0.0;
    Vec3 g = Vec3::Zero();
    Mat3 h = Mat3::Zero();

    Jet3() = default;
    Jet3(double value) : v(value) {}  // constant, no derivatives
    Jet3(double value, int var) : v(value) { g[var] = 1.0; }

    static Jet3 variable(double value, int var) { return Jet3(value, var); }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    Jet3 r;
    r.v = a.v + b.v;
    r.g = a.g + b.g;
    r.h = a.h + b.h;
    return r;
}

inline Jet3 operator-(const Jet3& a, const Jet3& b) {
    Jet3 r;
    r.v = a.v - b.v;
    r.g = a.g - b.g;
    r.h = a.h - b.h;
    return r;
}

inline Jet3 operator-(const Jet3& a) {
    Jet3 r;
    r.v = -a.v;
    r.g = -a.g;
    r.h = -a.h;
    return r;
}

inline Jet3 operator*(const Jet3& a, const Jet3& b) {
    Jet3 r;
    r.v = a.v * b.v;
    r.g = a.g * b.v + b.g * a.v;
    r.h = a.h * b.v + b.h * a.v + a.g * b.g.transpose() + b.g * a.g.transpose();
    return r;
}

inline Jet3 operator*(double s, const Jet3& a) { return Jet3(s) * a; }
inline Jet3 operator*(const Jet3& a, double s) { return Jet3(s) * a; }
inline Jet3 operator+(const Jet3& a, double s) { return a + Jet3(s); }
inline Jet3 operator+(double s, const Jet3& a) { return a + Jet3(s); }
inline Jet3 operator-(const Jet3& a, double s) { return a - Jet3(s); }
inline Jet3 operator-(double s, const Jet3& a) { return Jet3(s) - a; }

/// Chain rule for a scalar function with first and second derivatives d1, d2.
inline Jet3 compose(const Jet3& a, double value, double d1, double d2) {
    Jet3 r;
    r.v = value;
    r.g = d1 * a.g;
    r.h = d1 * a.h + d2 * a.g * a.g.transpose();
    return r;
}

inline Jet3 sqrt(const Jet3& a) {
    const double s = std::sqrt(a.v);
    return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet3 sin(const Jet3& a) { return compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet3 cos(const Jet3& a) { return compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet3 exp(const Jet3& a) {
    const double e = std::exp(a.v);
    return compose(a, e, e, e);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) {
    return a * compose(b, 1.0 / b.v, -1.0 / (b.v * b.v), 2.0 / (b.v * b.v * b.v));
}
inline Jet3 operator/(const Jet3& a, double s) { return a * Jet3(1.0 / s); }
inline Jet3 operator/(double s, const Jet3& a) { return Jet3(s) / a; }

}  // namespace surfq
