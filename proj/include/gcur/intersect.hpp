#pragma once

// Geometric intersection numbers, by two independent algorithms that
// cross-validate:
//   * drawing overlay: transverse crossings of the drawn segment lists in
//     the fundamental domain (plus one layer of carrier translates at the
//     boundary), deduplicated by canonical reduced position;
//   * double cosets: group-ball enumeration of translates g*axis2 linking
//     axis1 with the crossing inside a fundamental period.
// The overlay scales to long random geodesics; the coset method is exact on
// short classes and serves as the oracle.
//
// Counting conventions: pair counts and the stored self-intersection count
// are geometric crossing points, once each. Normalized current-form values
// (the quantities compared against 1/(pi^2 |chi|)) double the self counts,
// since the intersection form pairs ordered strand pairs on the diagonal.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <vector>

#include "gcur/errors.hpp"
#include "gcur/geodesics.hpp"
#include "gcur/halfplane.hpp"
#include "gcur/surface.hpp"
#include "gcur/words.hpp"

namespace gcur {

struct CrossingWitness {
    Point at;          // reduced position of the crossing
    double depth = 1.0;
    int seg_i = -1, seg_j = -1;  // overlay: segment pair
    Mobius deck;                 // coset method: normalized coset representative
};

struct CrossingReport {
    long count = 0;
    std::vector<CrossingWitness> witnesses;
};

namespace detail {

// full geodesic line through two distinct points
inline GeodesicLine line_through(const Point& p, const Point& q) {
    if (std::fabs(p.x - q.x) <= 1e-12 * std::max({1.0, std::fabs(p.x), std::fabs(q.x)})) {
        return GeodesicLine(BoundaryPoint::at(0.5 * (p.x + q.x)), BoundaryPoint::infinity());
    }
    double c = 0.5 * (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (q.x - p.x);
    double r = std::hypot(p.x - c, p.y);
    return GeodesicLine(BoundaryPoint::at(c - r), BoundaryPoint::at(c + r));
}

// unoriented tangent direction (angle mod pi) of the line at a point on it
inline double line_direction(const GeodesicLine& l, const Point& z) {
    double ang;
    if (l.vertical()) ang = 1.5707963267948966;
    else ang = std::atan2(l.center() - z.x, z.y);  // tangent of circle: (-y, x-c) rotated
    // fold into [0, pi)
    ang = std::fmod(ang, 3.14159265358979323846);
    if (ang < 0) ang += 3.14159265358979323846;
    return ang;
}

struct SegGeom {
    Point a, b;
    GeodesicLine line;
    double xlo, xhi, ylo, yhi;  // bounding box
    int index;
};

inline SegGeom seg_geom(const Point& a, const Point& b, int index) {
    SegGeom g{a, b, line_through(a, b), 0, 0, 0, 0, index};
    g.xlo = std::min(a.x, b.x);
    g.xhi = std::max(a.x, b.x);
    g.ylo = std::min(a.y, b.y);
    g.yhi = std::max(a.y, b.y);
    if (!g.line.vertical()) g.yhi = std::max(g.yhi, g.line.radius());  // arc apex
    return g;
}

// crossing point of two transversal geodesic lines, if any
inline std::optional<Point> line_cross(const GeodesicLine& l1, const GeodesicLine& l2) {
    if (l1.vertical() && l2.vertical()) return std::nullopt;
    if (l1.vertical() || l2.vertical()) {
        const GeodesicLine& v = l1.vertical() ? l1 : l2;
        const GeodesicLine& c = l1.vertical() ? l2 : l1;
        double dx = v.e0.value - c.center();
        double y2 = c.radius() * c.radius() - dx * dx;
        if (y2 <= 0.0) return std::nullopt;
        return Point{v.e0.value, std::sqrt(y2)};
    }
    double c1 = l1.center(), r1 = l1.radius(), c2 = l2.center(), r2 = l2.radius();
    if (std::fabs(c2 - c1) <= 1e-14 * std::max(1.0, std::fabs(c1))) return std::nullopt;
    double x = 0.5 * (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (c2 - c1);
    double dx = x - c1;
    double y2 = r1 * r1 - dx * dx;
    if (y2 <= 0.0) return std::nullopt;
    return Point{x, std::sqrt(y2)};
}

// rotation applied to tangent directions by the derivative of m at z
inline double deriv_rotation(const Mobius& m, const Point& z) {
    return -2.0 * std::atan2(m.c * z.y, m.c * z.x + m.d);
}

struct OverlayHit {
    Point at;         // canonical reduced position
    double d1, d2;    // transported strand directions (angles mod pi)
    int i, j;
    Point raw;
};

// Canonical representative among the near-equal boundary copies of a point:
// breadth-first over near-tie moves, lexicographic minimum of the positions.
// Also returns the transform that carries p there (for direction transport).
inline std::pair<Point, Mobius> canonical_position(const FuchsianSurface& s, const Point& p0) {
    auto [p, w] = reduce_point(s, p0);
    Mobius T = evaluate(s, w);
    double base = cosh_dist(p, s.basepoint);
    double slack = 3e-9 * std::sqrt(std::max(base * base - 1.0, 1e-30));  // ~3e-9 in distance
    // fast path: interior points have no near-tie neighbour copy
    bool boundary = false;
    for (const auto& mv : s.moves) {
        if (cosh_dist(apply(mv.m, p), s.basepoint) <= base + slack) { boundary = true; break; }
    }
    if (!boundary) return {p, T};
    struct Node { Point z; Mobius t; };
    std::vector<Node> all{{p, T}};
    for (int depth = 0; depth < 2 && all.size() <= 24; ++depth) {
        size_t n = all.size();
        for (size_t i = 0; i < n && all.size() <= 24; ++i) {
            for (const auto& mv : s.moves) {
                Point q = apply(mv.m, all[i].z);
                if (cosh_dist(q, s.basepoint) > base + slack) continue;
                bool known = false;
                for (const auto& nd : all)
                    if (std::fabs(nd.z.x - q.x) < 1e-9 && std::fabs(nd.z.y - q.y) < 1e-9) known = true;
                if (!known) all.push_back({q, mv.m * all[i].t});
                if (all.size() > 24) break;
            }
        }
    }
    size_t best = 0;
    for (size_t i = 1; i < all.size(); ++i) {
        const Point& a = all[i].z;
        const Point& b = all[best].z;
        if (a.x < b.x - 1e-9 || (std::fabs(a.x - b.x) <= 1e-9 && a.y < b.y - 1e-9)) best = i;
    }
    return {all[best].z, all[best].t};
}

} // namespace detail

// --- closed-form excursion crossing counts -----------------------------------

// Two lifts above {y > k}: half circles of heights h1 at x1 and h2 at x2+n.
// They cross above height k iff |P - Q| < |x1 - x2 - n| < P + Q with
// P = sqrt(h1^2-k^2), Q = sqrt(h2^2-k^2). Counts integers n, excluding
// tangencies; for the self case pass equal circles and count n >= 1 only.
inline long excursion_pair_crossings(double x1, double h1, double x2, double h2, double k) {
    if (h1 <= k || h2 <= k) return 0;
    double P = std::sqrt((h1 - k) * (h1 + k));
    double Q = std::sqrt((h2 - k) * (h2 + k));
    double lo = std::fabs(P - Q), hi = P + Q;
    double a = x1 - x2;
    auto ints_in_open = [](double u, double v) -> long {
        // #integers strictly between u and v, integer endpoints excluded
        long n_lo = static_cast<long>(std::floor(u));
        if (std::fabs(u - std::round(u)) < 1e-9) n_lo = std::lround(u);
        long n_hi = static_cast<long>(std::ceil(v));
        if (std::fabs(v - std::round(v)) < 1e-9) n_hi = std::lround(v);
        long cnt = n_hi - n_lo - 1;
        return cnt > 0 ? cnt : 0;
    };
    // n in (a - hi, a - lo) u (a + lo, a + hi)
    return ints_in_open(a - hi, a - lo) + ints_in_open(a + lo, a + hi);
}

// Self crossings of one excursion image in the cusp cylinder: translates
// n >= 1 with n < width, tangency excluded.
inline long excursion_self_crossings(double h, double k) {
    if (h <= k) return 0;
    double w = 2.0 * std::sqrt((h - k) * (h + k));
    return std::max<long>(tangency_ceil(w) - 1, 0);
}

// --- drawing overlay ----------------------------------------------------------

namespace detail {

// transverse crossing of two concrete segments; throws on near-tangency or
// near-endpoint hits (the degenerate-crossing policy)
inline std::optional<Point> segment_cross(const SegGeom& s1, const SegGeom& s2) {
    if (s1.xhi < s2.xlo - 1e-12 || s2.xhi < s1.xlo - 1e-12) return std::nullopt;
    if (s1.yhi < s2.ylo - 1e-12 || s2.yhi < s1.ylo - 1e-12) return std::nullopt;
    auto cross = line_cross(s1.line, s2.line);
    if (!cross) return std::nullopt;
    const Point& p = *cross;
    double scale = std::max(1.0, std::fabs(p.x));
    // inside both arcs, endpoints excluded by a hyperbolic-scaled guard
    auto inside = [&](const SegGeom& sg) {
        if (sg.line.vertical()) {
            double lo = std::min(sg.a.y, sg.b.y), hi = std::max(sg.a.y, sg.b.y);
            return p.y > lo && p.y < hi;
        }
        return p.x > sg.xlo && p.x < sg.xhi;
    };
    if (!inside(s1) || !inside(s2)) return std::nullopt;
    double guard = 1e-9 * p.y;  // ~hyperbolic 1e-9 near the crossing
    for (const Point* e : {&s1.a, &s1.b, &s2.a, &s2.b}) {
        if (std::fabs(e->x - p.x) <= guard && std::fabs(e->y - p.y) <= guard)
            fail(errc::degenerate_crossing, "crossing at a segment endpoint");
    }
    double a1 = line_direction(s1.line, p);
    double a2 = line_direction(s2.line, p);
    double diff = std::fabs(std::sin(a1 - a2));
    if (diff <= 1e-9) fail(errc::degenerate_crossing, "tangential crossing");
    (void)scale;
    return p;
}

// deck elements used for the boundary translate layer: carriers of both
// drawings, their inverses, single letters and letter pairs
inline std::vector<Mobius> translate_layer(const FuchsianSurface& s, const Drawing& d1,
                                           const Drawing& d2) {
    std::vector<Mobius> out;
    auto push = [&](const Mobius& m) {
        if (is_identity(m, 1e-9)) return;
        for (const auto& o : out)
            if (approx_eq(o, m, 1e-9)) return;
        out.push_back(m);
    };
    std::vector<Mobius> letters;
    for (int k = 1; k <= s.rank(); ++k) {
        letters.push_back(s.gen(k));
        letters.push_back(s.gen(k).inverse());
    }
    for (const auto& m : letters) push(m);
    for (const auto& m : letters)
        for (const auto& n : letters) push(m * n);
    for (const Drawing* d : {&d1, &d2}) {
        for (const auto& seg : d->segments) {
            push(seg.carrier);
            push(seg.carrier.inverse());
        }
    }
    return out;
}

inline std::vector<OverlayHit> overlay(const FuchsianSurface& s, const Drawing& d1,
                                       const Drawing& d2, bool self) {
    std::vector<SegGeom> segs1, segs2;
    segs1.reserve(d1.segments.size());
    for (size_t i = 0; i < d1.segments.size(); ++i)
        if (d1.segments[i].t1 - d1.segments[i].t0 > 1e-12)
            segs1.push_back(seg_geom(d1.segments[i].a, d1.segments[i].b, static_cast<int>(i)));
    segs2.reserve(d2.segments.size());
    for (size_t j = 0; j < d2.segments.size(); ++j)
        if (d2.segments[j].t1 - d2.segments[j].t0 > 1e-12)
            segs2.push_back(seg_geom(d2.segments[j].a, d2.segments[j].b, static_cast<int>(j)));

    std::vector<OverlayHit> hits;
    auto record = [&](const Point& raw, const SegGeom& s1, const SegGeom& s2,
                      const Mobius& applied_to_2) {
        auto [cp, T] = canonical_position(s, raw);
        double rot = deriv_rotation(T, raw);
        auto fold = [](double a) {
            a = std::fmod(a, 3.14159265358979323846);
            if (a < 0) a += 3.14159265358979323846;
            return a;
        };
        OverlayHit h;
        h.at = cp;
        h.raw = raw;
        h.d1 = fold(line_direction(s1.line, raw) + rot);
        h.d2 = fold(line_direction(s2.line, raw) + rot);
        h.i = s1.index;
        h.j = s2.index;
        (void)applied_to_2;
        hits.push_back(h);
    };

    // direct layer
    for (size_t i = 0; i < segs1.size(); ++i) {
        size_t j0 = self ? i + 1 : 0;
        for (size_t j = j0; j < segs2.size(); ++j) {
            if (auto p = segment_cross(segs1[i], segs2[j])) record(*p, segs1[i], segs2[j], Mobius());
        }
    }
    // translate layer: segments of d2 carried next to the domain boundary
    std::vector<Mobius> layer = translate_layer(s, d1, d2);
    for (const auto& kap : layer) {
        for (size_t j = 0; j < segs2.size(); ++j) {
            Point a = apply(kap, segs2[j].a);
            Point b = apply(kap, segs2[j].b);
            SegGeom sg = seg_geom(a, b, segs2[j].index);
            for (size_t i = 0; i < segs1.size(); ++i) {
                if (self && segs1[i].index == sg.index) {
                    // a segment against its own translate is a genuine
                    // self-crossing candidate; different copy, so keep it
                }
                if (auto p = segment_cross(segs1[i], sg)) record(*p, segs1[i], sg, kap);
            }
        }
    }

    // deduplicate by canonical position and unordered direction pair
    std::sort(hits.begin(), hits.end(), [](const OverlayHit& a, const OverlayHit& b) {
        if (a.at.x != b.at.x) return a.at.x < b.at.x;
        return a.at.y < b.at.y;
    });
    std::vector<OverlayHit> uniq;
    std::vector<char> dead(hits.size(), 0);
    for (size_t i = 0; i < hits.size(); ++i) {
        if (dead[i]) continue;
        uniq.push_back(hits[i]);
        for (size_t j = i + 1; j < hits.size() && hits[j].at.x - hits[i].at.x <= 1e-6; ++j) {
            if (dead[j]) continue;
            if (std::fabs(hits[j].at.y - hits[i].at.y) > 1e-6) continue;
            auto close_dir = [](double a, double b) {
                double d = std::fabs(a - b);
                d = std::min(d, std::fabs(3.14159265358979323846 - d));
                return d <= 1e-4;
            };
            bool same = (close_dir(hits[i].d1, hits[j].d1) && close_dir(hits[i].d2, hits[j].d2)) ||
                        (close_dir(hits[i].d1, hits[j].d2) && close_dir(hits[i].d2, hits[j].d1));
            if (same) dead[j] = 1;
        }
    }
    return uniq;
}

} // namespace detail

// Crossings of two drawn geodesics by segment overlay. Retries once with a
// perturbed drawing start when a degenerate crossing is hit.
inline CrossingReport drawing_crossings(const FuchsianSurface& s, const ClosedGeodesic& g1,
                                        const ClosedGeodesic& g2) {
    if (unoriented_canonical(g1.cls) == unoriented_canonical(g2.cls))
        fail(errc::degenerate, "classes coincide as unoriented curves");
    for (double offset : {0.0, 1e-4}) {
        try {
            Drawing d1 = draw(s, g1, offset);
            Drawing d2 = draw(s, g2, offset == 0.0 ? 0.0 : 1.3e-4);
            auto hits = detail::overlay(s, d1, d2, false);
            CrossingReport rep;
            rep.count = static_cast<long>(hits.size());
            for (const auto& h : hits)
                rep.witnesses.push_back({h.at, depth(s, h.at), h.i, h.j, Mobius()});
            return rep;
        } catch (const error& e) {
            if (e.code() != errc::degenerate_crossing || offset != 0.0) throw;
        }
    }
    fail(errc::degenerate_crossing, "degenerate crossings persist after retry");
}

inline CrossingReport self_drawing_crossings(const FuchsianSurface& s, const ClosedGeodesic& g) {
    if (is_proper_power(g.cls.canonical)) fail(errc::non_primitive, "class is a proper power");
    for (double offset : {0.0, 1e-4}) {
        try {
            Drawing d = draw(s, g, offset);
            auto hits = detail::overlay(s, d, d, true);
            CrossingReport rep;
            rep.count = static_cast<long>(hits.size());
            for (const auto& h : hits)
                rep.witnesses.push_back({h.at, depth(s, h.at), h.i, h.j, Mobius()});
            return rep;
        } catch (const error& e) {
            if (e.code() != errc::degenerate_crossing || offset != 0.0) throw;
        }
    }
    fail(errc::degenerate_crossing, "degenerate crossings persist after retry");
}

// Self-crossings located in the compact core X^k: crossing points of depth
// at most k, each counted once. With k beyond the max depth this reproduces
// the full self-intersection count.
inline long restricted_self_intersection(const FuchsianSurface& s, const ClosedGeodesic& g,
                                         double k) {
    if (!(k >= 1.0)) fail(errc::domain_error, "restriction depth must be >= 1");
    CrossingReport rep = self_drawing_crossings(s, g);
    long n = 0;
    for (const auto& w : rep.witnesses)
        if (w.depth <= k) ++n;
    return n;
}

// Crossings of a closed geodesic with a compact geodesic segment given by
// its endpoints (drawn and overlaid like a curve).
inline long segment_intersections(const FuchsianSurface& s, const ClosedGeodesic& g,
                                  const Point& p, const Point& q) {
    if (dist(p, q) <= 1e-9) fail(errc::domain_error, "segment has zero length");
    for (double offset : {0.0, 1e-4}) {
        try {
            Drawing d = draw(s, g, offset);
            // draw the segment: march from p to q, reducing
            GeodesicLine l = detail::line_through(p, q);
            double s0 = project_param(p, l), s1 = project_param(q, l);
            if (s0 > s1) std::swap(s0, s1);
            Drawing ds;
            ds.surface = &s;
            ds.length = s1 - s0;
            ds.axis_line = l;
            ds.s_base = s0;
            ds.dir = 1;
            auto [r0, w0] = reduce_point(s, line_point(l, s0));
            Mobius U = evaluate(s, w0);
            double t = 0.0, t_open = 0.0;
            Point open_pt = apply(U, line_point(l, s0));
            const double step = 0.2;
            while (t < ds.length - 1e-12) {
                double tn = std::min(t + step, ds.length);
                auto pt = [&](double tt) { return apply(U, line_point(l, s0 + tt)); };
                if (best_move(s, pt(tn)) < 0) {
                    t = tn;
                    continue;
                }
                double lo = t, hi = tn;
                for (int it = 0; it < 64 && hi - lo > 1e-12; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (best_move(s, pt(mid)) < 0) lo = mid;
                    else hi = mid;
                }
                DrawSegment seg;
                seg.t0 = t_open;
                seg.t1 = lo;
                seg.a = open_pt;
                seg.b = pt(lo);
                double probe = std::min(hi + 1e-7, ds.length);
                bool moved = false;
                for (int guard = 0; guard < 64; ++guard) {
                    int mi = best_move(s, pt(probe));
                    if (mi < 0) break;
                    U = s.moves[static_cast<size_t>(mi)].m * U;
                    moved = true;
                }
                if (!moved) {
                    t = probe;
                    continue;
                }
                if (seg.t1 - seg.t0 > 1e-12) ds.segments.push_back(seg);
                t_open = lo;
                open_pt = pt(lo);
                t = lo;
                if (probe >= ds.length) break;
            }
            DrawSegment seg;
            seg.t0 = t_open;
            seg.t1 = ds.length;
            seg.a = open_pt;
            seg.b = apply(U, line_point(l, s1));
            ds.segments.push_back(seg);

            Drawing dg = draw(s, g, offset);
            auto hits = detail::overlay(s, dg, ds, false);
            return static_cast<long>(hits.size());
        } catch (const error& e) {
            if (e.code() != errc::degenerate_crossing || offset != 0.0) throw;
        }
    }
    fail(errc::degenerate_crossing, "degenerate crossings persist after retry");
}

// --- double cosets ------------------------------------------------------------

namespace detail {

inline bool boundary_close(const BoundaryPoint& a, const BoundaryPoint& b, double tol) {
    if (a.infinite || b.infinite) return a.infinite && b.infinite;
    return std::fabs(a.value - b.value) <= tol;
}

inline bool lines_equal(const GeodesicLine& a, const GeodesicLine& b, double tol) {
    return boundary_close(a.e0, b.e0, tol) && boundary_close(a.e1, b.e1, tol);
}

// do the endpoint pairs interleave on the boundary circle?
inline bool linked(const GeodesicLine& a, const GeodesicLine& b) {
    auto side = [](const GeodesicLine& l, const BoundaryPoint& p) {
        // -1 / +1: which component of the circle minus l's endpoints
        if (l.vertical()) {
            if (p.infinite) return 0;
            return p.value < l.e0.value ? -1 : (p.value > l.e0.value ? 1 : 0);
        }
        if (p.infinite) return -1;  // outside the half circle's span
        if (p.value > l.e0.value && p.value < l.e1.value) return 1;
        if (p.value < l.e0.value || p.value > l.e1.value) return -1;
        return 0;
    };
    int s0 = side(a, b.e0), s1 = side(a, b.e1);
    return s0 * s1 < 0;
}

struct CosetHit {
    double param;      // crossing parameter in the fundamental strip
    double e0, e1;     // endpoints of the strip-normalized line
    int inf0, inf1;
    Point at;
    Mobius deck;
};

} // namespace detail

// Crossing count via double cosets <phi1>\Gamma/<phi2>: translates g*axis2
// linking axis1 with the crossing point inside one fundamental period.
inline CrossingReport coset_crossings(const FuchsianSurface& s, const ClosedGeodesic& g1,
                                      const ClosedGeodesic& g2, bool self,
                                      size_t cap = 30000000) {
    const GeodesicLine& A1 = g1.axis_line;
    const GeodesicLine& A2 = g2.axis_line;
    double d1 = dist_to_line(s.basepoint, A1);
    double d2 = dist_to_line(s.basepoint, A2);
    double R = 0.5 * g1.length + 0.5 * g2.length + d1 + d2 + 2.0;
    double c1 = project_param(s.basepoint, A1);
    double lo = c1 - 0.5 * g1.length;

    std::vector<detail::CosetHit> hits;
    ball_enumerate(s, R, cap, 1.5, [&](const Mobius& g, double) {
        GeodesicLine L = apply(g, A2);
        if (detail::lines_equal(L, A1, 1e-9)) {
            if (!self) fail(errc::degenerate, "axes coincide");
            return;  // self: powers of the holonomy, excluded
        }
        if (!detail::linked(A1, L)) return;
        auto cp = detail::line_cross(A1, L);
        if (!cp) return;
        double p = project_param(*cp, A1);
        // normalize the crossing into [lo, lo + length), consistently biased
        double shift = std::floor((p - lo) / g1.length + 1e-7 / g1.length);
        long j = static_cast<long>(shift);
        detail::CosetHit h;
        h.param = p - g1.length * static_cast<double>(j);
        Mobius phi_pow;
        Mobius phi = g1.holonomy;
        // phi may translate towards -param; orient the power by testing
        double pf = project_param(apply(phi, line_point(A1, c1)), A1);
        bool forward = pf > c1;
        long steps = forward ? j : -j;
        Mobius base = steps >= 0 ? phi.inverse() : phi;
        long nsteps = std::labs(steps);
        for (long i = 0; i < nsteps; ++i) phi_pow = phi_pow * base;
        GeodesicLine Lnorm = apply(phi_pow, L);
        h.e0 = Lnorm.e0.infinite ? 0.0 : Lnorm.e0.value;
        h.e1 = Lnorm.e1.infinite ? 0.0 : Lnorm.e1.value;
        h.inf0 = Lnorm.e0.infinite;
        h.inf1 = Lnorm.e1.infinite;
        h.at = *cp;
        h.deck = phi_pow * g;
        hits.push_back(h);
    });

    std::sort(hits.begin(), hits.end(),
              [](const detail::CosetHit& a, const detail::CosetHit& b) { return a.param < b.param; });
    std::vector<char> dead(hits.size(), 0);
    std::vector<detail::CosetHit> uniq;
    for (size_t i = 0; i < hits.size(); ++i) {
        if (dead[i]) continue;
        uniq.push_back(hits[i]);
        for (size_t j = i + 1; j < hits.size() && hits[j].param - hits[i].param <= 1e-6; ++j) {
            if (dead[j]) continue;
            if (hits[i].inf0 == hits[j].inf0 && hits[i].inf1 == hits[j].inf1 &&
                std::fabs(hits[i].e0 - hits[j].e0) <= 1e-6 &&
                std::fabs(hits[i].e1 - hits[j].e1) <= 1e-6)
                dead[j] = 1;
        }
    }

    CrossingReport rep;
    if (self) {
        if (uniq.size() % 2 != 0)
            fail(errc::degenerate, "self-crossing enumeration parity failure");
        rep.count = static_cast<long>(uniq.size() / 2);
    } else {
        rep.count = static_cast<long>(uniq.size());
    }
    for (const auto& h : uniq) {
        auto [cp, T] = detail::canonical_position(s, h.at);
        rep.witnesses.push_back({cp, depth(s, cp), -1, -1, h.deck});
    }
    return rep;
}

// Intersection number of two distinct unoriented classes.
inline CrossingReport intersection_number(const FuchsianSurface& s, const ClosedGeodesic& g1,
                                          const ClosedGeodesic& g2) {
    if (unoriented_canonical(g1.cls) == unoriented_canonical(g2.cls))
        fail(errc::degenerate, "classes coincide as unoriented curves");
    return coset_crossings(s, g1, g2, false);
}

// Self-intersection count (double points) of a primitive class.
inline CrossingReport self_intersection(const FuchsianSurface& s, const ClosedGeodesic& g) {
    if (is_proper_power(g.cls.canonical)) fail(errc::non_primitive, "class is a proper power");
    return coset_crossings(s, g, g, true);
}

} // namespace gcur
