#pragma once

// Upper half-plane model primitives: points, boundary points, geodesic
// lines, real Mobius transformations, hyperbolic distance and the closed
// forms for horoball excursion geometry.
//
// All values are plain immutable structs; everything is double precision
// with explicit tolerances (1e-9 for type classification, 1e-8 for
// geometric identities).

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "gcur/errors.hpp"

namespace gcur {

inline constexpr double kClassifyTol = 1e-9;  // trace / determinant classification
inline constexpr double kGeomTol     = 1e-8;  // geometric identities

// Point of the open upper half plane, y > 0.
struct Point {
    double x = 0.0;
    double y = 1.0;
};

inline bool valid(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y) && p.y > 0.0; }

// Point of the boundary circle R u {inf}.
struct BoundaryPoint {
    double value    = 0.0;
    bool   infinite = false;

    static BoundaryPoint at(double v) { return {v, false}; }
    static BoundaryPoint infinity() { return {0.0, true}; }
};

inline bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.value == b.value;
}

// Unoriented bi-infinite geodesic, stored by its distinct boundary endpoints.
// Canonical order: smaller real endpoint first, infinity last.
struct GeodesicLine {
    BoundaryPoint e0, e1;

    GeodesicLine() = default;
    GeodesicLine(BoundaryPoint a, BoundaryPoint b) {
        if (a.infinite && b.infinite) fail(errc::domain_error, "geodesic endpoints coincide at infinity");
        if (!a.infinite && !b.infinite && a.value == b.value)
            fail(errc::domain_error, "geodesic endpoints coincide");
        if (a.infinite || (!b.infinite && b.value < a.value)) std::swap(a, b);
        e0 = a;
        e1 = b;
    }

    bool vertical() const { return e1.infinite; }
    // Euclidean center/radius of the half circle (finite endpoints only).
    double center() const { return 0.5 * (e0.value + e1.value); }
    double radius() const { return 0.5 * (e1.value - e0.value); }
};

// Real 2x2 matrix of determinant one acting by fractional linear maps.
// Stored sign-normalized: first entry of (a,b,c,d) with |entry| > 1e-12
// is positive, so each projective transformation has one representative.
struct Mobius {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    Mobius() = default;
    Mobius(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        double det = a * d - b * c;
        if (!(det > 0.0) || !std::isfinite(det))
            fail(errc::domain_error, "matrix determinant must be positive");
        if (std::fabs(det - 1.0) > kClassifyTol) {
            double s = 1.0 / std::sqrt(det);
            a *= s; b *= s; c *= s; d *= s;
        }
        normalize_sign();
    }

    static Mobius identity() { return Mobius(); }

    void normalize_sign() {
        double lead = 0.0;
        for (double v : {a, b, c, d}) {
            if (std::fabs(v) > 1e-12) { lead = v; break; }
        }
        if (lead < 0.0) { a = -a; b = -b; c = -c; d = -d; }
    }

    double trace() const { return a + d; }
    Mobius inverse() const { return Mobius(d, -b, -c, a); }

    friend Mobius operator*(const Mobius& m, const Mobius& n) {
        return Mobius(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                      m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d);
    }
};

inline bool approx_eq(const Mobius& m, const Mobius& n, double tol = kGeomTol) {
    return std::fabs(m.a - n.a) <= tol && std::fabs(m.b - n.b) <= tol &&
           std::fabs(m.c - n.c) <= tol && std::fabs(m.d - n.d) <= tol;
}

inline bool is_identity(const Mobius& m, double tol = kGeomTol) { return approx_eq(m, Mobius::identity(), tol); }

inline bool is_hyperbolic(const Mobius& m) { return std::fabs(m.trace()) > 2.0 + kClassifyTol; }
inline bool is_parabolic(const Mobius& m) { return std::fabs(std::fabs(m.trace()) - 2.0) <= kClassifyTol; }

// Standard fractional linear action, z -> (az+b)/(cz+d).
inline Point apply(const Mobius& m, const Point& z) {
    double cx = m.c * z.x + m.d;
    double cy = m.c * z.y;
    double den = cx * cx + cy * cy;
    double ax = m.a * z.x + m.b;
    double ay = m.a * z.y;
    return Point{(ax * cx + ay * cy) / den, z.y / den};
}

// Boundary action on R u {inf}.
inline BoundaryPoint apply_boundary(const Mobius& m, const BoundaryPoint& p) {
    if (p.infinite) {
        if (std::fabs(m.c) <= 1e-300) return BoundaryPoint::infinity();
        return BoundaryPoint::at(m.a / m.c);
    }
    double den = m.c * p.value + m.d;
    if (std::fabs(den) <= 1e-14 * std::max(1.0, std::fabs(m.c * p.value)) || den == 0.0)
        return BoundaryPoint::infinity();
    return BoundaryPoint::at((m.a * p.value + m.b) / den);
}

inline GeodesicLine apply(const Mobius& m, const GeodesicLine& l) {
    return GeodesicLine(apply_boundary(m, l.e0), apply_boundary(m, l.e1));
}

// cosh d = 1 + |p-q|^2 / (2 p.y q.y)
inline double cosh_dist(const Point& p, const Point& q) {
    double dx = p.x - q.x, dy = p.y - q.y;
    return 1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y);
}

inline double acosh_clamped(double t) { return std::acosh(t < 1.0 ? 1.0 : t); }

inline double dist(const Point& p, const Point& q) { return acosh_clamped(cosh_dist(p, q)); }

// Axis of a hyperbolic transformation: the geodesic between its two real
// fixed points. Fixed points solve c x^2 + (d - a) x - b = 0; when c = 0 one
// of them is infinity.
inline GeodesicLine axis(const Mobius& m) {
    if (!is_hyperbolic(m)) fail(errc::parabolic_or_elliptic, "axis requires |trace| > 2");
    if (std::fabs(m.c) <= 1e-14) {
        // fixes infinity; other fixed point at b / (d - a)
        return GeodesicLine(BoundaryPoint::infinity(), BoundaryPoint::at(m.b / (m.d - m.a)));
    }
    double disc = (m.d - m.a) * (m.d - m.a) + 4.0 * m.b * m.c;
    // equals tr^2 - 4 > 0 for hyperbolic elements
    double s = std::sqrt(disc);
    double x0 = (m.a - m.d - s) / (2.0 * m.c);
    double x1 = (m.a - m.d + s) / (2.0 * m.c);
    return GeodesicLine(BoundaryPoint::at(x0), BoundaryPoint::at(x1));
}

// l = 2 arccosh(|tr|/2), the displacement along the axis.
inline double translation_length(const Mobius& m) {
    if (!is_hyperbolic(m)) fail(errc::parabolic_or_elliptic, "translation length requires |trace| > 2");
    return 2.0 * acosh_clamped(0.5 * std::fabs(m.trace()));
}

// Geometry of one horoball excursion in the cusp chart where the parabolic
// is z -> z+1 and the horoball at depth k is {Im z > k}. A geodesic whose
// lift is a half circle of Euclidean radius h > k crosses the horosphere
// with:
//   width       = 2 sqrt(h^2 - k^2)   (chord of the circle at height k)
//   arc_length  = 2 arccosh(h / k)    (hyperbolic length above height k)
//   entry_angle = arcsin(k / h)       (angle against the horosphere normal)
struct ExcursionGeometry {
    double width;
    double arc_length;
    double entry_angle;
};

inline ExcursionGeometry excursion_geometry(double h, double k) {
    if (!(k >= 1.0)) fail(errc::domain_error, "excursion geometry requires k >= 1");
    if (h == k) return {0.0, 0.0, std::asin(1.0)};
    if (!(h > k)) fail(errc::domain_error, "excursion geometry requires h > k");
    double w = 2.0 * std::sqrt((h - k) * (h + k));
    return {w, 2.0 * acosh_clamped(h / k), std::asin(k / h)};
}

// Distance from a point to a geodesic line: map the line to the imaginary
// axis, where sinh(dist) = |x| / y.
inline double dist_to_line(const Point& p, const GeodesicLine& l) {
    double ratio;
    if (l.vertical()) {
        ratio = std::fabs(p.x - l.e0.value) / p.y;
    } else {
        // sinh d = ||z - c|^2 - r^2| / (2 r y)
        double dx = p.x - l.center();
        double num = dx * dx + p.y * p.y - l.radius() * l.radius();
        ratio = std::fabs(num) / (2.0 * l.radius() * p.y);
    }
    return std::asinh(ratio);
}

// Signed arclength coordinate of the orthogonal projection of p onto l.
// For a vertical line the coordinate is ln(y) at the foot; for a half
// circle it is ln tan(t/2) in the angle parametrization z = c + r e^{it}.
inline double project_param(const Point& p, const GeodesicLine& l) {
    if (l.vertical()) {
        // foot of perpendicular from p to {x = x0}: |z - x0|
        double dx = p.x - l.e0.value;
        return 0.5 * std::log(dx * dx + p.y * p.y);
    }
    // Apply M(z) = (z - e0)/(e1 - z) mapping the line to (0, inf); the foot is
    // at height |M(p)| on the imaginary axis, param = ln |M(p)|.
    double u = l.e0.value, v = l.e1.value;
    double nx = p.x - u, dxx = v - p.x;
    // |M(p)|^2 = |p - u|^2 / |p - v|^2
    double n2 = nx * nx + p.y * p.y;
    double d2 = dxx * dxx + p.y * p.y;
    return 0.5 * std::log(n2 / d2);
}

// Point of l at signed arclength parameter s (same parametrization as
// project_param: s increases from e0 towards e1). On the half circle
// z = c + r e^{i theta} the parameter is s = -ln tan(theta/2).
inline Point line_point(const GeodesicLine& l, double s) {
    if (l.vertical()) return Point{l.e0.value, std::exp(s)};
    double ang = 2.0 * std::atan(std::exp(-s));  // in (0, pi); pi at e0, 0 at e1
    return Point{l.center() + l.radius() * std::cos(ang), l.radius() * std::sin(ang)};
}

} // namespace gcur
