#pragma once

// Closed geodesics as geometric objects: the drawing of a geodesic in the
// quotient (wall-accurate segments in the implicit Dirichlet domain), depth
// profiles, horoball excursions, core/cusp length decompositions and the
// peripheral self-intersection number.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "gcur/errors.hpp"
#include "gcur/halfplane.hpp"
#include "gcur/surface.hpp"
#include "gcur/words.hpp"

namespace gcur {

struct ClosedGeodesic {
    ConjugacyClass cls;
    Mobius holonomy;      // evaluate of the canonical word
    double length = 0.0;  // translation length
    GeodesicLine axis_line;
};

// Unique geodesic representative of an essential free homotopy class.
inline ClosedGeodesic close_up(const FuchsianSurface& s, const ConjugacyClass& c) {
    Mobius m = evaluate(s, c.canonical);
    if (!is_hyperbolic(m))
        fail(errc::not_hyperbolic, "class is peripheral or trivial (|trace| <= 2)");
    return ClosedGeodesic{c, m, translation_length(m), axis(m)};
}

inline ClosedGeodesic close_up(const FuchsianSurface& s, const Word& w) {
    return close_up(s, canonical(w));
}

// One geodesic arc of the drawing, in reduced position. The carrier is the
// deck element with start(next) = carrier^{-1}(end(this)); the product of
// all carriers in order is conjugate to the holonomy.
struct DrawSegment {
    double t0 = 0.0, t1 = 0.0;  // arclength parameters along the period
    Point a, b;                 // reduced start/end points
    Mobius frame;               // deck element U with segment = U * (axis arc)
    int frame_prefix = 0;       // reduction letters consumed before this segment
    Mobius carrier;             // U_j * U_{j+1}^{-1}
    Word carrier_word;
};

struct Drawing {
    ConjugacyClass cls;
    Mobius holonomy;
    double length = 0.0;
    GeodesicLine axis_line;
    double s_base = 0.0;   // axis parameter of the starting point
    int dir = 1;           // axis orientation matching the holonomy
    double offset = 0.0;   // start perturbation used for this drawing
    Word frame0_word;      // word of the first frame U_0
    Mobius frame0;
    const FuchsianSurface* surface = nullptr;
    std::vector<int> moves_applied;  // wall-crossing reduction moves, in order
    std::vector<DrawSegment> segments;

    Point axis_point(double t) const { return line_point(axis_line, s_base + offset + dir * t); }

    // evaluate(frame_word(j)) = frame of segment j: the product of the
    // crossing moves applied so far, newest on the left, times U_0.
    Word frame_word(const DrawSegment& seg) const {
        Word w;
        for (int i = seg.frame_prefix - 1; i >= 0; --i) {
            const Word& mw = surface->moves[static_cast<size_t>(moves_applied[static_cast<size_t>(i)])].word;
            w.insert(w.end(), mw.begin(), mw.end());
        }
        w.insert(w.end(), frame0_word.begin(), frame0_word.end());
        return free_reduce(w);
    }
};

// March along the axis for one period, reducing into the Dirichlet domain
// whenever the domain inequality fails; wall crossings are located by
// bisection so segments stay inside the closed domain.
inline Drawing draw(const FuchsianSurface& s, const ClosedGeodesic& g, double start_offset = 0.0,
                    double step = 0.2) {
    Drawing d;
    d.cls = g.cls;
    d.holonomy = g.holonomy;
    d.length = g.length;
    d.axis_line = g.axis_line;
    d.s_base = project_param(s.basepoint, g.axis_line);
    d.offset = start_offset;
    d.surface = &s;

    // orient the parameter so the holonomy translates forward
    Point z0 = line_point(g.axis_line, d.s_base);
    Point fwd = line_point(g.axis_line, d.s_base + g.length);
    d.dir = dist(apply(g.holonomy, z0), fwd) < 1e-6 * (1.0 + g.length) ? 1 : -1;

    auto [p0, w0] = reduce_point(s, d.axis_point(0.0));
    d.frame0_word = w0;
    d.frame0 = evaluate(s, w0);

    Mobius U = d.frame0;
    double t_open = 0.0;
    Point open_pt = apply(U, d.axis_point(0.0));
    int prefix = 0;

    auto reduced_here = [&](double t) { return best_move(s, apply(U, d.axis_point(t))) < 0; };

    const long max_crossings = 1000000;
    long crossings = 0;
    double t = 0.0;
    while (t < d.length - 1e-12) {
        double t_next = std::min(t + step, d.length);
        if (reduced_here(t_next)) {
            t = t_next;
            continue;
        }
        // bisect for the first wall crossing in (t, t_next]
        double lo = t, hi = t_next;
        for (int it = 0; it < 64 && hi - lo > 1e-12; ++it) {
            double mid = 0.5 * (lo + hi);
            if (reduced_here(mid)) lo = mid;
            else hi = mid;
        }
        double t_cross = lo;
        DrawSegment seg;
        seg.t0 = t_open;
        seg.t1 = t_cross;
        seg.a = open_pt;
        seg.b = apply(U, d.axis_point(t_cross));
        seg.frame = U;
        seg.frame_prefix = prefix;
        // cross however many walls meet here; probe far enough past the wall
        // that the improvement clears the reduction tolerance
        Mobius U_old = U;
        Word cw;
        double probe = std::min(hi + 1e-7, d.length);
        for (int guard = 0; guard < 64; ++guard) {
            int mi = best_move(s, apply(U, d.axis_point(probe)));
            if (mi < 0) break;
            const ReduceMove& mv = s.moves[static_cast<size_t>(mi)];
            U = mv.m * U;
            d.moves_applied.push_back(mi);
            ++prefix;
            Word iw = inverse_word(mv.word);
            cw.insert(cw.end(), iw.begin(), iw.end());
        }
        if (cw.empty()) {
            // tolerance chatter at a wall, not a real crossing
            t = probe;
            continue;
        }
        seg.carrier = U_old * U.inverse();
        seg.carrier_word = free_reduce(cw);
        d.segments.push_back(seg);
        if (++crossings > max_crossings) fail(errc::non_termination, "drawing exceeded crossing budget");
        t_open = t_cross;
        open_pt = apply(U, d.axis_point(t_cross));
        t = t_cross;
        if (probe >= d.length) break;
    }
    // closing segment: from the last wall to the end of the period. The dir
    // flag orients the parameter along the holonomy translation, so phi
    // always carries the period start to the period end. The closing carrier
    // is U_m * U_{m+1}^{-1} with U_{m+1} := U_0 * phi^{-1}, which maps the end
    // point back to the start and makes the carrier product telescope to
    // U_0 * phi * U_0^{-1}.
    DrawSegment seg;
    seg.t0 = t_open;
    seg.t1 = d.length;
    seg.a = open_pt;
    seg.b = apply(U, d.axis_point(d.length));
    seg.frame = U;
    seg.frame_prefix = prefix;
    seg.carrier = U * g.holonomy * d.frame0.inverse();
    {
        Word wU = d.frame_word(seg);
        seg.carrier_word = concat(concat(wU, d.cls.canonical), inverse_word(d.frame0_word));
    }
    d.segments.push_back(seg);

    // geometric closing check
    Point end_mapped = apply(seg.carrier.inverse(), seg.b);
    Point start_pt = d.segments.front().a;
    if (dist(end_mapped, start_pt) > 1e-6)
        fail(errc::non_termination, "drawing failed to close up");
    return d;
}

inline Drawing draw_robust(const FuchsianSurface& s, const ClosedGeodesic& g) {
    try {
        return draw(s, g);
    } catch (const error&) {
        return draw(s, g, 1e-4, 0.1);
    }
}

inline double drawn_length(const Drawing& d) {
    double total = 0.0;
    for (const auto& seg : d.segments) total += seg.t1 - seg.t0;
    return total;
}

// --- depth along drawings ----------------------------------------------------

namespace detail {

// Max chart height over the geodesic arc between two chart images.
inline double chart_arc_max(const Point& w1, const Point& w2) {
    double m = std::max(w1.y, w2.y);
    if (std::fabs(w1.x - w2.x) < 1e-12) return m;
    // circle through w1, w2 centered on the real axis
    double c = 0.5 * (w2.x * w2.x + w2.y * w2.y - w1.x * w1.x - w1.y * w1.y) / (w2.x - w1.x);
    double dx = w1.x - c;
    double r = std::sqrt(dx * dx + w1.y * w1.y);
    bool apex_inside = (w1.x - c) * (w2.x - c) < 0.0;
    return apex_inside ? r : m;
}

struct SegHeight {
    double height = 0.0;      // max chart height over the segment
    Mobius chart;             // achieving chart map (cusp normalizer * frame)
    bool valid = false;
};

// Max chart height of one drawn segment in the charts of one cusp.
inline SegHeight segment_cusp_height(const FuchsianSurface& s, size_t cusp, const DrawSegment& seg) {
    const HoroDiskList& list = s.disk_lists[cusp];
    SegHeight out;
    for (const auto& hp : list.halfplanes) {
        Point w1 = apply(hp.chart, seg.a), w2 = apply(hp.chart, seg.b);
        double h = chart_arc_max(w1, w2);
        if (h > out.height) { out.height = h; out.chart = hp.chart; out.valid = true; }
    }
    double xlo = std::min(seg.a.x, seg.b.x), xhi = std::max(seg.a.x, seg.b.x);
    double window = 2.0 * list.max_diam + 0.5 * (xhi - xlo);
    double xmid = 0.5 * (xlo + xhi);
    auto lo = std::lower_bound(list.disks.begin(), list.disks.end(), xmid - window,
                               [](const HoroDisk& d, double v) { return d.xi < v; });
    for (auto it = lo; it != list.disks.end() && it->xi <= xmid + window; ++it) {
        Point w1 = apply(it->chart, seg.a), w2 = apply(it->chart, seg.b);
        double h = chart_arc_max(w1, w2);
        if (h > out.height) { out.height = h; out.chart = it->chart; out.valid = true; }
    }
    return out;
}

} // namespace detail

// One maximal arc above depth k in a cusp chart.
struct Excursion {
    int cusp = 0;
    double height = 0.0;       // h, max chart height
    double width = 0.0;        // 2 sqrt(h^2 - k^2)
    double arc_length = 0.0;   // 2 arccosh(h / k)
    double entry_angle = 0.0;  // arcsin(k / h)
    long translate_count = 0;  // signed; |n| = ceil(width) - 1

    // bookkeeping for surgery and diagnostics
    double t_enter = 0.0, t_exit = 0.0;   // parameter range along the drawing
    int deep_segment = 0;                 // segment index attaining the height
    Mobius deep_chart;                    // cusp chart map at the deepest segment
    double measured_arc = 0.0;            // in-ball length measured along the drawing
};

struct CoreDecomposition {
    double k = 1.0;
    double core_length = 0.0;  // l(gamma cap X^k)
    double cusp_length = 0.0;  // l(gamma cap B^k)
    std::vector<Excursion> excursions;
};

inline long tangency_ceil(double v) {
    double r = std::round(v);
    if (std::fabs(v - r) < 1e-9) return static_cast<long>(r);  // tangency excluded
    return static_cast<long>(std::ceil(v));
}

inline CoreDecomposition core_decomposition(const FuchsianSurface& s, const Drawing& d, double k) {
    if (!(k >= 1.0)) fail(errc::domain_error, "core decomposition requires k >= 1");
    CoreDecomposition out;
    out.k = k;

    size_t n = d.segments.size();
    for (size_t cusp = 0; cusp < s.cusps.size(); ++cusp) {
        std::vector<detail::SegHeight> hs(n);
        for (size_t j = 0; j < n; ++j) hs[j] = detail::segment_cusp_height(s, cusp, d.segments[j]);

        // height of the drawn point at parameter t in the chart of segment j
        auto height_at = [&](size_t j, double t, const Mobius& chart) {
            return chart_height(chart * d.segments[j].frame, d.axis_point(t));
        };

        std::vector<char> deep(n, 0);
        for (size_t j = 0; j < n; ++j) deep[j] = hs[j].height > k ? 1 : 0;
        size_t start = 0;
        while (start < n && deep[start]) ++start;
        // winding sign: the chart x coordinate is monotone along a half
        // circle traversal, so the drift across the deepest segment alone
        // decides the direction.
        auto winding_sign = [&](size_t jm) {
            Mobius chart = hs[jm].chart * d.segments[jm].frame;
            double x0 = apply(chart, d.axis_point(d.segments[jm].t0)).x;
            double x1 = apply(chart, d.axis_point(d.segments[jm].t1)).x;
            return x1 >= x0 ? 1 : -1;
        };

        if (start == n) {
            // the whole period is above depth k in this cusp (one excursion)
            Excursion e;
            e.cusp = static_cast<int>(cusp);
            size_t jm = 0;
            for (size_t j = 0; j < n; ++j)
                if (hs[j].height > hs[jm].height) jm = j;
            e.height = hs[jm].height;
            e.deep_segment = static_cast<int>(jm);
            e.deep_chart = hs[jm].chart;
            e.t_enter = 0.0;
            e.t_exit = d.length;
            e.measured_arc = d.length;
            auto eg = excursion_geometry(e.height, k);
            e.width = eg.width;
            e.arc_length = eg.arc_length;
            e.entry_angle = eg.entry_angle;
            e.translate_count = winding_sign(jm) * std::max<long>(tangency_ceil(e.width) - 1, 0);
            out.excursions.push_back(e);
            out.cusp_length += d.length;
            continue;
        }
        // walk the period cyclically from a shallow segment
        size_t j = start;
        size_t visited = 0;
        while (visited < n) {
            if (!deep[j]) {
                ++visited;
                j = (j + 1) % n;
                continue;
            }
            // run of deep segments
            Excursion e;
            e.cusp = static_cast<int>(cusp);
            size_t first = j;
            size_t jm = j;
            double run_len = 0.0;
            size_t last = j;
            while (visited < n && deep[j]) {
                if (hs[j].height > hs[jm].height) jm = j;
                run_len += d.segments[j].t1 - d.segments[j].t0;
                last = j;
                ++visited;
                j = (j + 1) % n;
            }
            e.height = hs[jm].height;
            e.deep_segment = static_cast<int>(jm);
            e.deep_chart = hs[jm].chart;
            // refine the entry/exit parameters by bisection inside the
            // boundary segments (height is unimodal per chart there)
            const DrawSegment& sf = d.segments[first];
            double t_in = sf.t0;
            if (height_at(first, sf.t0, hs[first].chart) <= k) {
                double lo = sf.t0, hi = sf.t1;
                for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (height_at(first, mid, hs[first].chart) <= k) lo = mid;
                    else hi = mid;
                }
                t_in = hi;
                run_len -= t_in - sf.t0;
            }
            const DrawSegment& sl = d.segments[last];
            double t_out = sl.t1;
            if (height_at(last, sl.t1, hs[last].chart) <= k) {
                double lo = sl.t0, hi = sl.t1;
                for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (height_at(last, mid, hs[last].chart) > k) lo = mid;
                    else hi = mid;
                }
                t_out = lo;
                run_len -= sl.t1 - t_out;
            }
            e.t_enter = t_in;
            e.t_exit = t_out;
            e.measured_arc = run_len;
            auto eg = excursion_geometry(e.height, k);
            e.width = eg.width;
            e.arc_length = eg.arc_length;
            e.entry_angle = eg.entry_angle;
            long count = std::max<long>(tangency_ceil(e.width) - 1, 0);
            e.translate_count = winding_sign(jm) * count;
            out.cusp_length += run_len;
            out.excursions.push_back(e);
        }
    }
    // merge wrap-around runs of the same cusp (enter at t=0 and exit at t=L)
    out.core_length = d.length - out.cusp_length;
    if (out.core_length < 0.0) out.core_length = 0.0;
    return out;
}

inline CoreDecomposition core_decomposition(const FuchsianSurface& s, const ClosedGeodesic& g,
                                            double k) {
    return core_decomposition(s, draw_robust(s, g), k);
}

// True maximal chart height of the drawing per cusp (not floored at 1).
inline std::vector<double> max_chart_heights(const FuchsianSurface& s, const Drawing& d) {
    std::vector<double> out(s.cusps.size(), 0.0);
    for (size_t cusp = 0; cusp < s.cusps.size(); ++cusp) {
        for (const auto& seg : d.segments) {
            auto sh = detail::segment_cusp_height(s, cusp, seg);
            out[cusp] = std::max(out[cusp], sh.height);
        }
    }
    return out;
}

inline double max_depth(const FuchsianSurface& s, const Drawing& d) {
    auto hs = max_chart_heights(s, d);
    double m = 1.0;
    for (double h : hs) m = std::max(m, h);
    return m;
}

// Peripheral self-intersection number: in each cusp chart the deepest lift
// is a half circle of radius h, which meets exactly the translates
// n = +-1, ..., +-(ceil(2h) - 1) of itself; tangency (2h integral) counts as
// non-crossing.
inline long i_per(const FuchsianSurface& s, const Drawing& d) {
    auto hs = max_chart_heights(s, d);
    long best = 0;
    for (double h : hs) {
        if (h <= 0.5) continue;
        long c = 2 * (tangency_ceil(2.0 * h) - 1);
        best = std::max(best, c);
    }
    return best;
}

inline long i_per(const FuchsianSurface& s, const ClosedGeodesic& g) {
    return i_per(s, draw_robust(s, g));
}

} // namespace gcur
