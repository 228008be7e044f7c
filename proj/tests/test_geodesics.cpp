#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gcur/geodesics.hpp"
#include "gcur/surface.hpp"

using namespace gcur;

namespace {

struct Lcg {
    unsigned long long s;
    unsigned long long next() { return s = s * 6364136223846793005ull + 1442695040888963407ull; }
    int range(int n) { return int(next() >> 33) % n; }
};

Word random_word(Lcg& rng, int len) {
    Word w;
    while ((int)w.size() < len) {
        Letter l = (rng.range(2) ? 1 : 2) * (rng.range(2) ? 1 : -1);
        if (!w.empty() && w.back() == -l) continue;
        w.push_back(l);
    }
    return w;
}

// random word with a commutator power spliced in, so the curve makes a real
// cusp excursion
Word deep_word(Lcg& rng, int len, int power) {
    Word w = random_word(rng, len);
    Word k = word_from_string("abAB");
    for (int i = 0; i < power; ++i) w.insert(w.end(), k.begin(), k.end());
    return free_reduce(w);
}

const FuchsianSurface& torus() {
    static FuchsianSurface s = modular_torus();
    return s;
}

} // namespace

TEST_CASE("close up") {
    const auto& s = torus();
    ClosedGeodesic a = close_up(s, word_from_string("a"));
    CHECK(a.length == Catch::Approx(2.0 * std::acosh(1.5)).epsilon(1e-12));

    CHECK_THROWS_AS(close_up(s, word_from_string("abAB")), error);  // peripheral

    FuchsianSurface m4 = markov_family(4.0);
    double z4 = 0.5 * (16.0 - std::sqrt(128.0));
    ClosedGeodesic ab = close_up(m4, word_from_string("ab"));
    CHECK(ab.length == Catch::Approx(2.0 * std::acosh(z4 / 2.0)).epsilon(1e-9));
}

TEST_CASE("close up is conjugation invariant") {
    const auto& s = torus();
    Lcg rng{42};
    for (int i = 0; i < 30; ++i) {
        Word w = random_word(rng, 1 + rng.range(6));
        Word u = random_word(rng, rng.range(5));
        Word conj = concat(concat(u, w), inverse_word(u));
        if (cyclic_reduce(conj).empty()) continue;
        Mobius m = evaluate(s, w);
        if (!is_hyperbolic(m)) continue;
        CHECK(close_up(s, conj).length == Catch::Approx(close_up(s, w).length).epsilon(1e-9));
    }
}

TEST_CASE("drawing closes up and has the right length", "[property]") {
    const auto& s = torus();
    Lcg rng{7};
    int drawn = 0;
    for (int i = 0; i < 50 && drawn < 40; ++i) {
        Word w = random_word(rng, 1 + rng.range(8));
        Mobius m = evaluate(s, w);
        if (!is_hyperbolic(m)) continue;
        ++drawn;
        ClosedGeodesic g = close_up(s, w);
        Drawing d = draw_robust(s, g);
        CHECK(std::fabs(drawn_length(d) - g.length) <= 1e-6);

        // product of carriers is conjugate to the holonomy: trace match
        Mobius prod;
        for (const auto& seg : d.segments) prod = prod * seg.carrier;
        CHECK(std::fabs(std::fabs(prod.trace()) - std::fabs(g.holonomy.trace())) <=
              1e-6 * std::max(1.0, std::fabs(g.holonomy.trace())));

        // carrier words evaluate to the carrier matrices
        for (const auto& seg : d.segments)
            CHECK(approx_eq(evaluate(s, seg.carrier_word), seg.carrier, 1e-6));

        // segments start where the previous carrier leads
        for (size_t j = 0; j + 1 < d.segments.size(); ++j) {
            Point mapped = apply(d.segments[j].carrier.inverse(), d.segments[j].b);
            CHECK(dist(mapped, d.segments[j + 1].a) <= 1e-6);
        }
    }
    CHECK(drawn >= 30);
}

TEST_CASE("drawing of a stays shallow") {
    const auto& s = torus();
    Drawing d = draw_robust(s, close_up(s, word_from_string("a")));
    double h = max_depth(s, d);
    // regression value from the drawing: the deepest chart position of the
    // class a never reaches depth 2
    CHECK(h < 2.0);
}

TEST_CASE("core decomposition partitions the length", "[property]") {
    const auto& s = torus();
    Lcg rng{99};
    for (int i = 0; i < 25; ++i) {
        Word w = random_word(rng, 1 + rng.range(8));
        if (!is_hyperbolic(evaluate(s, w))) continue;
        ClosedGeodesic g = close_up(s, w);
        Drawing d = draw_robust(s, g);
        for (double k : {1.0, 1.5, 2.0, 3.0, 5.0}) {
            CoreDecomposition cd = core_decomposition(s, d, k);
            CHECK(cd.core_length + cd.cusp_length == Catch::Approx(g.length).margin(1e-6));
            CHECK(cd.core_length >= 0.0);
            CHECK(cd.cusp_length >= -1e-12);
        }
    }
}

TEST_CASE("core decomposition above max depth is trivial") {
    const auto& s = torus();
    ClosedGeodesic g = close_up(s, word_from_string("ab"));
    Drawing d = draw_robust(s, g);
    double deep = max_depth(s, d);
    CoreDecomposition cd = core_decomposition(s, d, deep + 1.0);
    CHECK(cd.cusp_length == Catch::Approx(0.0).margin(1e-12));
    CHECK(cd.excursions.empty());
}

TEST_CASE("cusp length decreases in k") {
    const auto& s = torus();
    Lcg rng{123};
    for (int i = 0; i < 10; ++i) {
        Word w = random_word(rng, 4 + rng.range(5));
        if (!is_hyperbolic(evaluate(s, w))) continue;
        Drawing d = draw_robust(s, close_up(s, w));
        double prev = 1e30;
        for (double k : {1.0, 1.3, 1.8, 2.5, 4.0, 7.0}) {
            double cl = core_decomposition(s, d, k).cusp_length;
            CHECK(cl <= prev + 1e-9);
            prev = cl;
        }
    }
}

TEST_CASE("parabolic turns make deeper excursions") {
    const auto& s = torus();
    // a * (aba^-1b^-1)^p: the excursion height grows with the parabolic power
    double prev_h = 0.0;
    for (int p = 1; p <= 3; ++p) {
        Word w = word_from_string("a");
        for (int i = 0; i < p; ++i) {
            Word k = word_from_string("abAB");
            w.insert(w.end(), k.begin(), k.end());
        }
        Drawing d = draw_robust(s, close_up(s, w));
        double h = max_depth(s, d);
        CHECK(h > prev_h);
        prev_h = h;
    }
    CHECK(prev_h > 1.5);
}

TEST_CASE("excursion data is consistent with the closed forms", "[property]") {
    const auto& s = torus();
    Lcg rng{2718};
    int seen = 0;
    for (int i = 0; i < 30; ++i) {
        Word w = deep_word(rng, 2 + rng.range(6), 1 + rng.range(4));
        if (!is_hyperbolic(evaluate(s, w))) continue;
        Drawing d = draw_robust(s, close_up(s, w));
        CoreDecomposition cd = core_decomposition(s, d, 1.0);
        for (const auto& e : cd.excursions) {
            ++seen;
            auto eg = excursion_geometry(e.height, cd.k);
            CHECK(std::fabs(e.width - eg.width) <= 1e-8 * std::max(1.0, eg.width));
            CHECK(std::fabs(e.arc_length - eg.arc_length) <= 1e-8);
            CHECK(std::fabs(e.entry_angle - eg.entry_angle) <= 1e-8);
            // the measured in-ball arc agrees with the chord formula
            CHECK(e.measured_arc == Catch::Approx(e.arc_length).margin(1e-4));
            CHECK(std::labs(e.translate_count) == std::max<long>(tangency_ceil(e.width) - 1, 0));
        }
    }
    CHECK(seen >= 10);
}

TEST_CASE("i_per formula and conjugation invariance") {
    const auto& s = torus();

    // simple curve a: frozen regression from the drawing
    Drawing da = draw_robust(s, close_up(s, word_from_string("a")));
    auto heights = max_chart_heights(s, da);
    long ia = i_per(s, da);
    CHECK(ia == 2 * (tangency_ceil(2.0 * heights[0]) - 1));

    Lcg rng{31415};
    for (int i = 0; i < 15; ++i) {
        Word w = random_word(rng, 1 + rng.range(6));
        if (!is_hyperbolic(evaluate(s, w))) continue;
        Word u = random_word(rng, rng.range(4));
        Word conj = concat(concat(u, w), inverse_word(u));
        if (cyclic_reduce(conj).empty()) continue;
        CHECK(i_per(s, close_up(s, conj)) == i_per(s, close_up(s, w)));
    }
}

TEST_CASE("lemma: support in the core bounds i_per", "[property]") {
    const auto& s = torus();
    Lcg rng{5150};
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        Word w = random_word(rng, 1 + rng.range(8));
        if (!is_hyperbolic(evaluate(s, w))) continue;
        Drawing d = draw_robust(s, close_up(s, w));
        double h = max_depth(s, d);
        long ip = i_per(s, d);
        for (long k : {1L, 2L, 3L, 5L}) {
            if (h <= double(k)) {
                CHECK(ip <= 4 * k);
                ++checked;
            }
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("excursion count bound from deep entries", "[property]") {
    // #excursions reaching depth k/sin(2 theta) <= l(gamma cap B^k)/ln(1/theta) + 1 per cusp
    const auto& s = torus();
    Lcg rng{6021};
    for (int i = 0; i < 12; ++i) {
        Word w = deep_word(rng, 4 + rng.range(6), 1 + rng.range(3));
        if (!is_hyperbolic(evaluate(s, w))) continue;
        Drawing d = draw_robust(s, close_up(s, w));
        for (double theta : {0.3, 0.15}) {
            double k = 1.0;
            CoreDecomposition cd = core_decomposition(s, d, k);
            double threshold = k / std::sin(2.0 * theta);
            long deep = 0;
            for (const auto& e : cd.excursions)
                if (e.height >= threshold) ++deep;
            CHECK(double(deep) <= cd.cusp_length / std::log(1.0 / theta) + 1.0);
        }
    }
}
