#pragma once

// Surfaces as explicit Fuchsian groups: presets, the trace-coordinate
// pinching family, word evaluation, greedy point reduction to an implicit
// Dirichlet domain, group-ball enumeration over the Cayley graph, cusp
// charts and the horoball-lift tables used for depth queries.
//
// All groups handled here are free (presets have free pi_1, no torsion), so
// breadth-first enumeration of freely reduced words visits every group
// element exactly once; no matrix deduplication is needed.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gcur/errors.hpp"
#include "gcur/halfplane.hpp"
#include "gcur/words.hpp"

namespace gcur {

// One lift of the depth-1 horoball of a cusp: the Euclidean disk tangent to
// the real axis at xi with diameter diam = 1/c^2, carried to {Im > 1} by the
// chart map. Chart height of a point z is Im(chart * z).
struct HoroDisk {
    double xi;
    double diam;
    Mobius chart;
};

// Lifts that are halfplanes {y > 1/scale2}; chart height is scale2 * y.
struct HoroHalfplane {
    double scale2;
    Mobius chart;
};

struct HoroDiskList {
    std::vector<HoroDisk> disks;          // sorted by xi
    std::vector<HoroHalfplane> halfplanes;
    double max_diam = 0.0;
};

struct CuspChart {
    Mobius normalizer;     // conjugates the cusp parabolic to z -> z+1
    int index = 0;
    Mobius parabolic;      // group element with normalizer*parabolic*normalizer^-1 = T
    Word parabolic_word;   // the same element as a word in the generators
};

// A reduction move: a short group element used by the greedy descent into
// the Dirichlet domain. Single generators are not enough: the domain's side
// pairings can be longer words (the commutator around a cusp, products like
// ab), so the move set is a small displacement ball.
struct ReduceMove {
    Word word;
    Mobius m;
};

struct FuchsianSurface {
    std::vector<Mobius> generators;   // letter k acts by generators[k-1]
    std::vector<CuspChart> cusps;
    int euler_char = -1;              // chi < 0
    int num_cusps = 1;                // C >= 1
    Point basepoint{0.0, 2.0};
    std::string name;

    // derived data
    double max_gen_displacement = 0.0;
    std::vector<ReduceMove> moves;          // reduction move set, identity excluded
    std::vector<HoroDiskList> disk_lists;   // one per cusp

    // sampling box for the reduced region (presets fill these in)
    double box_x = 3.5, box_ylo = 0.02, box_yhi = 20.0;

    int rank() const { return static_cast<int>(generators.size()); }

    const Mobius& gen(int k) const { return generators[static_cast<size_t>(k - 1)]; }

    Mobius letter_mobius(Letter l) const {
        int k = std::abs(l);
        if (k < 1 || k > rank()) fail(errc::domain_error, "letter indexes no generator");
        return l > 0 ? gen(k) : gen(k).inverse();
    }
};

inline Mobius evaluate(const FuchsianSurface& s, const Word& w) {
    Mobius m;
    for (Letter l : w) m = m * s.letter_mobius(l);
    return m;
}

// --- point reduction -------------------------------------------------------

// Strict-improvement gate for the greedy descent. The tolerance sits above
// the noise of recomputing a point through a composed frame matrix (~1e-10),
// or the descent can oscillate across a wall forever.
inline constexpr double kReduceTol = 1e-9;

inline bool improves(double candidate, double current) { return candidate < current - kReduceTol; }

// Index of the move pulling p strictly closest to the basepoint, or -1 when
// p is reduced. Ties are broken by move order (shortest words first, then
// letter order), so the descent is deterministic.
inline int best_move(const FuchsianSurface& s, const Point& p) {
    double dc = cosh_dist(p, s.basepoint);
    int best = -1;
    double best_c = dc;
    for (size_t i = 0; i < s.moves.size(); ++i) {
        double dq = cosh_dist(apply(s.moves[i].m, p), s.basepoint);
        if (dq < best_c) {
            best = static_cast<int>(i);
            best_c = dq;
        }
    }
    if (best < 0 || !improves(acosh_clamped(best_c), acosh_clamped(dc))) return -1;
    return best;
}

inline bool is_reduced(const FuchsianSurface& s, const Point& p) { return best_move(s, p) < 0; }

// Greedy descent towards the basepoint: while some move strictly shortens
// the distance to the basepoint, apply the best one. Returns the reduced
// point and the word w with evaluate(w) * z = reduced. The returned point
// satisfies the Dirichlet inequality for all generators (and all moves).
inline std::pair<Point, Word> reduce_point(const FuchsianSurface& s, const Point& z) {
    Point p = z;
    Word w;
    const long kMaxSteps = 1000000;
    for (long step = 0; step < kMaxSteps; ++step) {
        int i = best_move(s, p);
        if (i < 0) return {p, free_reduce(w)};
        const ReduceMove& mv = s.moves[static_cast<size_t>(i)];
        p = apply(mv.m, p);
        Word nw = mv.word;
        nw.insert(nw.end(), w.begin(), w.end());
        w.swap(nw);
    }
    fail(errc::non_termination, "point reduction exceeded the step budget");
}

// --- group ball ------------------------------------------------------------

inline constexpr double kEntryCap = 1e12;   // beyond this, numerical trust is gone

// Breadth-first enumeration of all group elements with displacement of the
// basepoint at most R over freely reduced words, pruned at R + margin. The
// groups here are free, so every element is visited at most once. A pruned
// search can only miss an element whose (unique) reduced word has a prefix
// detouring beyond the margin; completeness at a given margin is enforced
// empirically by the enumeration-oracle tests.
template <class Visit>
inline void ball_enumerate(const FuchsianSurface& s, double R, size_t cap, double margin,
                           Visit&& visit) {
    struct Node {
        Mobius m;
        Letter last;
    };
    double prune = R + margin;
    double cosh_prune = std::cosh(prune);
    std::vector<Node> frontier{{Mobius::identity(), 0}};
    std::vector<Node> next;
    visit(Mobius::identity(), 0.0);
    size_t seen = 1;
    while (!frontier.empty()) {
        next.clear();
        for (const Node& n : frontier) {
            for (int k = 1; k <= s.rank(); ++k) {
                for (Letter l : {k, -k}) {
                    if (l == -n.last) continue;
                    Mobius m = n.m * s.letter_mobius(l);
                    if (std::fabs(m.a) > kEntryCap || std::fabs(m.b) > kEntryCap ||
                        std::fabs(m.c) > kEntryCap || std::fabs(m.d) > kEntryCap)
                        fail(errc::budget_exceeded, "group ball matrix entries exceed 1e12");
                    double cd = cosh_dist(apply(m, s.basepoint), s.basepoint);
                    if (cd > cosh_prune) continue;
                    if (++seen > cap) fail(errc::budget_exceeded, "group ball exceeds element cap");
                    double disp = acosh_clamped(cd);
                    if (disp <= R) visit(m, disp);
                    next.push_back({m, l});
                }
            }
        }
        frontier.swap(next);
    }
}

struct BallElement {
    Word word;
    Mobius m;
};

// All group elements displacing the basepoint by at most R, each exactly
// once, with their (freely reduced) words. The Cayley-graph search is pruned
// at R + margin; the default margin is 2 * max generator displacement.
inline std::vector<BallElement> group_ball(const FuchsianSurface& s, double R,
                                           size_t cap = 4000000, double margin = -1.0) {
    if (R < 0.0) fail(errc::domain_error, "group ball radius must be nonnegative");
    struct Node {
        Mobius m;
        Word w;
    };
    double prune = R + (margin < 0.0 ? 2.0 * s.max_gen_displacement : margin);
    std::vector<Node> frontier{{Mobius::identity(), {}}};
    std::vector<Node> next;
    std::vector<BallElement> out;
    out.push_back({Word{}, Mobius::identity()});
    size_t seen = 1;
    while (!frontier.empty()) {
        next.clear();
        for (const Node& n : frontier) {
            Letter last = n.w.empty() ? 0 : n.w.back();
            for (int k = 1; k <= s.rank(); ++k) {
                for (Letter l : {k, -k}) {
                    if (l == -last) continue;
                    Mobius m = n.m * s.letter_mobius(l);
                    if (std::fabs(m.a) > kEntryCap || std::fabs(m.b) > kEntryCap ||
                        std::fabs(m.c) > kEntryCap || std::fabs(m.d) > kEntryCap)
                        fail(errc::budget_exceeded, "group ball matrix entries exceed 1e12");
                    double d = dist(apply(m, s.basepoint), s.basepoint);
                    if (d > prune) continue;
                    if (++seen > cap) fail(errc::budget_exceeded, "group ball exceeds element cap");
                    Word w = n.w;
                    w.push_back(l);
                    if (d <= R) out.push_back({w, m});
                    next.push_back({m, std::move(w)});
                }
            }
        }
        frontier.swap(next);
    }
    return out;
}

// --- cusp charts and depth --------------------------------------------------

// Builds the chart that conjugates a parabolic element to z -> z+1.
// Returns the normalizer and whether the parabolic had to be inverted to
// make the translation positive.
inline std::pair<Mobius, bool> parabolic_normalizer(const Mobius& p0) {
    if (!is_parabolic(p0)) fail(errc::domain_error, "normalizer requires a parabolic element");
    Mobius p = p0;
    Mobius m;
    if (std::fabs(p.c) > 1e-12) {
        double x0 = (p.a - p.d) / (2.0 * p.c);
        m = Mobius(0.0, 1.0, -1.0, x0);  // sends the fixed point to infinity
        p = m * p * m.inverse();
    }
    // now p is (sign-normalized) [[1, tau],[0, 1]]
    double tau = p.b / p.a;
    bool flipped = false;
    if (tau < 0.0) {
        tau = -tau;
        flipped = true;
    }
    if (tau <= 0.0) fail(errc::domain_error, "degenerate parabolic translation");
    Mobius scale(1.0 / std::sqrt(tau), 0.0, 0.0, std::sqrt(tau));
    return {scale * m, flipped};
}

inline CuspChart make_cusp_chart(const Mobius& parabolic, const Word& word, int index) {
    auto [n, flipped] = parabolic_normalizer(parabolic);
    CuspChart c;
    c.normalizer = n;
    c.index = index;
    c.parabolic = flipped ? parabolic.inverse() : parabolic;
    c.parabolic_word = flipped ? inverse_word(word) : word;
    Mobius check = c.normalizer * c.parabolic * c.normalizer.inverse();
    if (!approx_eq(check, Mobius(1.0, 1.0, 0.0, 1.0), kGeomTol))
        fail(errc::domain_error, "cusp normalizer check failed");
    return c;
}

// Chart height of z in the lift carried by `chart`: Im(chart * z).
inline double chart_height(const Mobius& m, const Point& z) {
    double cx = m.c * z.x + m.d;
    double cy = m.c * z.y;
    return z.y / (cx * cx + cy * cy);
}

// Collects the horoball lifts (disks and halfplanes) of every cusp reachable
// from the basepoint within the given ball radius. Only these lifts can meet
// the reduced region, so pointwise depth reduces to a window scan.
inline void build_disk_lists(FuchsianSurface& s, double radius = 8.0, double min_diam = 1e-4,
                             size_t cap = 2000000) {
    s.disk_lists.assign(s.cusps.size(), HoroDiskList{});
    ball_enumerate(s, radius, cap, 1.5, [&](const Mobius& g, double) {
        for (size_t i = 0; i < s.cusps.size(); ++i) {
            Mobius m = s.cusps[i].normalizer * g;
            HoroDiskList& list = s.disk_lists[i];
            if (std::fabs(m.c) < 1e-9) {
                double sc = m.a * m.a;
                bool dup = false;
                for (const auto& hp : list.halfplanes)
                    if (std::fabs(hp.scale2 - sc) <= 1e-9 * sc) dup = true;
                if (!dup) list.halfplanes.push_back({sc, m});
            } else {
                double diam = 1.0 / (m.c * m.c);
                if (diam < min_diam) continue;
                list.disks.push_back({-m.d / m.c, diam, m});
            }
        }
    });
    for (auto& list : s.disk_lists) {
        std::sort(list.disks.begin(), list.disks.end(),
                  [](const HoroDisk& a, const HoroDisk& b) { return a.xi < b.xi; });
        std::vector<HoroDisk> dedup;
        for (const auto& d : list.disks) {
            if (!dedup.empty()) {
                const auto& p = dedup.back();
                double tol = 1e-7 * std::max(1.0, std::fabs(d.xi));
                if (std::fabs(p.xi - d.xi) <= tol && std::fabs(p.diam - d.diam) <= 1e-7 * d.diam)
                    continue;
            }
            dedup.push_back(d);
            if (d.diam > list.max_diam) list.max_diam = d.diam;
        }
        list.disks.swap(dedup);
    }
}

// Maximum chart height of z over the recorded lifts of cusp i. This is the
// true height of the deepest chart position; callers floor it as needed.
inline double cusp_chart_height(const FuchsianSurface& s, size_t cusp, const Point& z) {
    const HoroDiskList& list = s.disk_lists[cusp];
    double best = 0.0;
    for (const auto& hp : list.halfplanes) best = std::max(best, hp.scale2 * z.y);
    // window: a disk of diameter d reaches height h at z only if |x - xi| is
    // within the disk scale; scan a conservative window of the largest diameter
    double window = 2.0 * list.max_diam;
    auto lo = std::lower_bound(list.disks.begin(), list.disks.end(), z.x - window,
                               [](const HoroDisk& d, double v) { return d.xi < v; });
    for (auto it = lo; it != list.disks.end() && it->xi <= z.x + window; ++it)
        best = std::max(best, chart_height(it->chart, z));
    return best;
}

// Depth of a reduced point: max over cusps of the chart height, floored at 1
// (the embedded-horoball regime; nothing in scope queries below depth 1).
inline double depth(const FuchsianSurface& s, const Point& z) {
    double best = 1.0;
    for (size_t i = 0; i < s.cusps.size(); ++i) best = std::max(best, cusp_chart_height(s, i, z));
    return best;
}

// --- construction -----------------------------------------------------------

// The reduction move set: all elements displacing the basepoint by at most
// 2 * max generator displacement + 1.2, which covers the Dirichlet side
// pairings of the presets (validated by the orbit-roundtrip tests). The
// radius is capped at 8 so strongly pinched family members stay cheap; those
// surfaces are only used through length functions.
inline void build_moves(FuchsianSurface& s) {
    double r = std::min(2.0 * s.max_gen_displacement + 1.2, 8.0);
    auto ball = group_ball(s, r, 500000, 1.5);
    s.moves.clear();
    for (auto& e : ball) {
        if (e.word.empty()) continue;
        s.moves.push_back({std::move(e.word), e.m});
    }
    std::sort(s.moves.begin(), s.moves.end(), [](const ReduceMove& a, const ReduceMove& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return std::lexicographical_compare(a.word.begin(), a.word.end(), b.word.begin(),
                                            b.word.end(), letter_less);
    });
}

inline void finalize_surface(FuchsianSurface& s, double disk_radius = 8.0) {
    double md = 0.0;
    for (const auto& g : s.generators) md = std::max(md, dist(apply(g, s.basepoint), s.basepoint));
    s.max_gen_displacement = md;
    if ((int)s.cusps.size() != s.num_cusps) fail(errc::bad_config, "cusp count mismatch");
    if (s.euler_char >= 0) fail(errc::bad_config, "Euler characteristic must be negative");
    build_moves(s);
    build_disk_lists(s, disk_radius);
}

// Once-punctured torus from the commutator subgroup of PSL(2,Z):
// A = [[1,1],[1,2]], B = [[1,-1],[-1,2]], cusp parabolic ABA^-1B^-1.
inline FuchsianSurface modular_torus() {
    FuchsianSurface s;
    s.name = "modular_torus";
    s.generators = {Mobius(1, 1, 1, 2), Mobius(1, -1, -1, 2)};
    s.euler_char = -1;
    s.num_cusps = 1;
    s.basepoint = Point{0.0, 2.0};
    Word kw = {1, 2, -1, -2};
    s.cusps = {make_cusp_chart(evaluate(s, kw), kw, 0)};
    s.box_x = 3.2;
    s.box_ylo = 0.02;
    s.box_yhi = 19.0;   // the halfplane lift is {y > 6}; depth 3 is y = 18
    finalize_surface(s);
    return s;
}

// Thrice-punctured sphere, the level-2 congruence group:
// P1 = [[1,2],[0,1]], P2 = [[1,0],[2,1]]; cusps at infinity, 0 and 1.
inline FuchsianSurface thrice_punctured_sphere() {
    FuchsianSurface s;
    s.name = "thrice_punctured_sphere";
    s.generators = {Mobius(1, 2, 0, 1), Mobius(1, 0, 2, 1)};
    s.euler_char = -1;
    s.num_cusps = 3;
    s.basepoint = Point{0.0, 2.0};
    Word w_inf = {1};
    Word w_zero = {2};
    Word w_one = {1, -2};
    s.cusps = {make_cusp_chart(evaluate(s, w_inf), w_inf, 0),
               make_cusp_chart(evaluate(s, w_zero), w_zero, 1),
               make_cusp_chart(evaluate(s, w_one), w_one, 2)};
    s.box_x = 1.2;
    s.box_ylo = 0.02;
    s.box_yhi = 6.5;    // halfplane lift {y > 2}; depth 3 is y = 6
    finalize_surface(s);
    return s;
}

inline FuchsianSurface preset(const std::string& name) {
    if (name == "modular_torus") return modular_torus();
    if (name == "thrice_punctured_sphere") return thrice_punctured_sphere();
    fail(errc::unknown_preset, "unknown preset '" + name + "'");
}

// Once-punctured torus family with traces (t, t, z_-(t)),
// z_-(t) = (t^2 - sqrt(t^4 - 8 t^2)) / 2; t = 3 is the square torus point and
// t -> infinity pinches the class of AB (trace z -> 2).
inline FuchsianSurface markov_family(double t) {
    if (!(t >= 3.0)) fail(errc::domain_error, "markov family requires t >= 3");
    double z = 0.5 * (t * t - std::sqrt(t * t * (t * t - 8.0)));
    double lam = 0.5 * (t + std::sqrt(t * t - 4.0));
    Mobius A(lam, 0.0, 0.0, 1.0 / lam);
    double p = (z - t / lam) / (lam - 1.0 / lam);
    double q = t - p;
    Mobius B(p, 1.0, p * q - 1.0, q);
    FuchsianSurface s;
    s.name = "markov_family";
    s.generators = {A, B};
    s.euler_char = -1;
    s.num_cusps = 1;
    s.basepoint = Point{0.0, 2.0};
    Word kw = {1, 2, -1, -2};
    // commutator trace in SL(2,R) via the Fricke identity (sign-normalized
    // Mobius products lose the lift's sign): tr[A,B] = x^2+y^2+z^2 - xyz - 2
    {
        double x = t, y = t;
        double zz = lam * p + q / lam;
        double fricke = x * x + y * y + zz * zz - x * y * zz - 2.0;
        if (std::fabs(fricke + 2.0) > 1e-6)
            fail(errc::domain_error, "markov family commutator trace check failed");
    }
    Mobius comm = evaluate(s, kw);
    s.cusps = {make_cusp_chart(comm, kw, 0)};
    s.box_x = 2.0 * lam + 1.0;
    s.box_ylo = 0.02;
    s.box_yhi = 40.0 * lam;
    finalize_surface(s);
    return s;
}

} // namespace gcur
