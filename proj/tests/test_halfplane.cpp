#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "gcur/halfplane.hpp"

using namespace gcur;

namespace {

// independent oracle: fractional linear action via std::complex
Point complex_apply(double a, double b, double c, double d, Point z) {
    std::complex<double> w(z.x, z.y);
    std::complex<double> r = (a * w + b) / (c * w + d);
    return Point{r.real(), r.imag()};
}

struct Lcg {
    unsigned long long s;
    double uniform(double lo, double hi) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        double u = double(s >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }
};

Mobius random_mobius(Lcg& rng) {
    // product of a translation, a dilation and an inversion-ish element
    Mobius t(1.0, rng.uniform(-2.0, 2.0), 0.0, 1.0);
    double lam = std::exp(rng.uniform(-1.0, 1.0));
    Mobius d(lam, 0.0, 0.0, 1.0 / lam);
    double c = rng.uniform(-1.5, 1.5);
    Mobius k(1.0, 0.0, c, 1.0);
    return t * d * k;
}

} // namespace

TEST_CASE("mobius apply") {
    CHECK(apply(Mobius::identity(), Point{0, 1}).x == Catch::Approx(0.0).margin(1e-15));
    CHECK(apply(Mobius::identity(), Point{0, 1}).y == Catch::Approx(1.0));

    Point p = apply(Mobius(1, 1, 0, 1), Point{0, 1});
    CHECK(p.x == Catch::Approx(1.0));
    CHECK(p.y == Catch::Approx(1.0));

    // (z+1)/(z+2) at z = i, against direct complex division
    Point q = apply(Mobius(1, 1, 1, 2), Point{0, 1});
    Point oracle = complex_apply(1, 1, 1, 2, Point{0, 1});
    CHECK(q.x == Catch::Approx(oracle.x).epsilon(1e-12));
    CHECK(q.y == Catch::Approx(oracle.y).epsilon(1e-12));
    CHECK(q.x == Catch::Approx(0.6));
    CHECK(q.y == Catch::Approx(0.2));
}

TEST_CASE("distance closed forms") {
    CHECK(dist(Point{0, 1}, Point{0, 1}) == Catch::Approx(0.0).margin(1e-12));
    CHECK(dist(Point{0, 1}, Point{0, 2}) == Catch::Approx(std::log(2.0)).epsilon(1e-12));
    // cosh d = 1.5 for (0,1) and (1,1)
    CHECK(dist(Point{0, 1}, Point{1, 1}) == Catch::Approx(std::acosh(1.5)).epsilon(1e-12));
}

TEST_CASE("distance is a mobius invariant", "[property]") {
    Lcg rng{12345};
    for (int i = 0; i < 200; ++i) {
        Mobius m = random_mobius(rng);
        Point p{rng.uniform(-3, 3), rng.uniform(0.1, 5)};
        Point q{rng.uniform(-3, 3), rng.uniform(0.1, 5)};
        CHECK(std::fabs(dist(apply(m, p), apply(m, q)) - dist(p, q)) <= 1e-8);
    }
}

TEST_CASE("axis and translation length") {
    GeodesicLine l = axis(Mobius(2, 0, 0, 0.5));
    CHECK(l.e0.value == Catch::Approx(0.0).margin(1e-12));
    CHECK(l.e1.infinite);

    // fixed points of [[1,1],[1,2]] solve x^2 + x - 1 = 0
    GeodesicLine m = axis(Mobius(1, 1, 1, 2));
    double r5 = std::sqrt(5.0);
    CHECK(m.e0.value == Catch::Approx((-1 - r5) / 2).epsilon(1e-12));
    CHECK(m.e1.value == Catch::Approx((-1 + r5) / 2).epsilon(1e-12));

    CHECK_THROWS_AS(axis(Mobius(1, 2, 0, 1)), error);

    CHECK(translation_length(Mobius(1, 1, 1, 2)) == Catch::Approx(2.0 * std::acosh(1.5)).epsilon(1e-12));
    CHECK_THROWS_AS(translation_length(Mobius(1, 1, 0, 1)), error);
    // trace -3 same as trace 3
    CHECK(translation_length(Mobius(-1, -1, -1, -2)) ==
          Catch::Approx(2.0 * std::acosh(1.5)).epsilon(1e-12));
}

TEST_CASE("axis endpoints are fixed by the boundary action", "[property]") {
    Lcg rng{777};
    int hyperbolic_seen = 0;
    for (int i = 0; i < 400; ++i) {
        Mobius m = random_mobius(rng);
        if (!is_hyperbolic(m)) continue;
        ++hyperbolic_seen;
        GeodesicLine l = axis(m);
        for (const BoundaryPoint& e : {l.e0, l.e1}) {
            BoundaryPoint im = apply_boundary(m, e);
            REQUIRE(!im.infinite);
            CHECK(std::fabs(im.value - e.value) <= 1e-8 * std::max(1.0, std::fabs(e.value)));
        }
    }
    CHECK(hyperbolic_seen > 100);
}

TEST_CASE("excursion geometry closed forms") {
    auto tangent = excursion_geometry(1.0, 1.0);
    CHECK(tangent.width == Catch::Approx(0.0).margin(1e-15));
    CHECK(tangent.arc_length == Catch::Approx(0.0).margin(1e-15));
    CHECK(tangent.entry_angle == Catch::Approx(std::asin(1.0)));

    auto e = excursion_geometry(2.0, 1.0);
    CHECK(e.width == Catch::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(e.arc_length == Catch::Approx(2.0 * std::acosh(2.0)).epsilon(1e-12));
    CHECK(e.entry_angle == Catch::Approx(std::asin(0.5)).epsilon(1e-12));

    CHECK_THROWS_AS(excursion_geometry(0.5, 1.0), error);
}

TEST_CASE("excursion geometry identities", "[property]") {
    Lcg rng{424242};
    for (int i = 0; i < 300; ++i) {
        double k = rng.uniform(1.0, 5.0);
        double h = k + std::exp(rng.uniform(-4.0, 4.0));
        auto e = excursion_geometry(h, k);
        CHECK(std::fabs(std::sin(e.entry_angle) * h - k) <= 1e-10 * k);
        CHECK(std::fabs(std::cosh(e.arc_length / 2.0) * k - h) <= 1e-10 * h);
        CHECK(std::fabs(e.width / 2.0 - std::sqrt((h - k) * (h + k))) <= 1e-10 * h);
    }
}

TEST_CASE("deep entry arcs are long") {
    // an arc entering at angle 2*theta has length >= ln(1/theta) for small theta
    for (double theta : {0.1, 0.05, 0.01, 0.001}) {
        double k = 1.0;
        double h = k / std::sin(2.0 * theta);
        auto e = excursion_geometry(h, k);
        CHECK(e.arc_length >= std::log(1.0 / theta));
    }
}

TEST_CASE("line parametrization roundtrip") {
    GeodesicLine l(BoundaryPoint::at(-1.0), BoundaryPoint::at(3.0));
    Lcg rng{99};
    for (int i = 0; i < 50; ++i) {
        double sv = rng.uniform(-3.0, 3.0);
        Point p = line_point(l, sv);
        CHECK(project_param(p, l) == Catch::Approx(sv).margin(1e-9));
        CHECK(dist_to_line(p, l) <= 1e-9);
    }
    // arclength: parameter difference equals hyperbolic distance on the line
    Point p = line_point(l, 0.3), q = line_point(l, 1.7);
    CHECK(dist(p, q) == Catch::Approx(1.4).margin(1e-10));

    GeodesicLine v(BoundaryPoint::at(2.0), BoundaryPoint::infinity());
    Point w = line_point(v, 0.5);
    CHECK(w.x == Catch::Approx(2.0));
    CHECK(w.y == Catch::Approx(std::exp(0.5)));
    CHECK(project_param(w, v) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("mobius sign normalization dedups projective representatives") {
    Mobius m(-1, -1, -1, -2);
    Mobius n(1, 1, 1, 2);
    CHECK(approx_eq(m, n, 1e-12));
}
