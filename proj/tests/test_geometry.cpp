#include <doctest.h>

#include <cmath>
#include <random>

#include "diskpack/geometry.hpp"
#include "oracles.hpp"

using namespace diskpack;

namespace {

oracle::P op(Point p) { return {p.x, p.y}; }

// Integer coefficients of v in the basis (g0, g1), or false if not integral.
bool integral_in(Point g0, Point g1, Point v, double tol = 1e-9) {
    const double det = cross(g0, g1);
    const double a = cross(v, g1) / det;
    const double b = cross(g0, v) / det;
    return std::abs(a - std::round(a)) < tol && std::abs(b - std::round(b)) < tol;
}

void check_reduction(const Lattice& in) {
    const Lattice out = lattice_reduce(in);
    const Point g0 = in.generator(0), g1 = in.generator(1);
    const Point r0 = out.generator(0), r1 = out.generator(1);
    CHECK(std::abs(std::abs(out.determinant()) - std::abs(in.determinant())) <= 1e-12 * std::abs(in.determinant()));
    CHECK(integral_in(g0, g1, r0));
    CHECK(integral_in(g0, g1, r1));
    CHECK(integral_in(r0, r1, g0));
    CHECK(integral_in(r0, r1, g1));
    CHECK(norm(r0) <= norm(r1) + 1e-15);
    CHECK(std::abs(dot(r0, r1)) <= norm2(r0) / 2 + 1e-12);
    // r0 is a shortest vector; r1 is shortest among vectors independent of r0.
    // Both minima are at most max(|g0|, |g1|), so this range is exhaustive.
    const int kk = oracle::coefficient_bound(op(g0), op(g1), std::max(norm(g0), norm(g1)));
    const double sv = oracle::shortest_vector(op(g0), op(g1), kk);
    CHECK(norm(r0) == doctest::Approx(sv).epsilon(1e-12));
    double second = 1e300;
    for (int i = -kk; i <= kk; ++i)
        for (int j = -kk; j <= kk; ++j) {
            const Point v = g0 * i + g1 * j;
            if (std::abs(cross(r0, v)) > 1e-9 * norm(r0) * (norm(v) + 1)) second = std::min(second, norm(v));
        }
    CHECK(norm(r1) == doctest::Approx(second).epsilon(1e-12));
}

}  // namespace

TEST_CASE("lattice_reduce keeps a reduced basis") {
    const Lattice l = lattice_reduce(Lattice({{1, 0}, {0, 1}}));
    CHECK(l.generator(0) == Point{1, 0});
    CHECK(l.generator(1) == Point{0, 1});
    const Lattice h = lattice_reduce(Lattice({{2, 0}, {1, 1.7320508}}));
    CHECK(norm(h.generator(0)) == doctest::Approx(2.0));
    CHECK(norm(h.generator(1)) == doctest::Approx(std::hypot(1.0, 1.7320508)));
    check_reduction(Lattice({{2, 0}, {1, 1.7320508}}));
}

TEST_CASE("lattice_reduce recovers the unit square from a skewed basis") {
    const Lattice l = lattice_reduce(Lattice({{1, 0}, {10, 1}}));
    CHECK(norm(l.generator(0)) == doctest::Approx(1.0));
    CHECK(norm(l.generator(1)) == doctest::Approx(1.0));
    CHECK(std::abs(dot(l.generator(0), l.generator(1))) < 1e-12);
    check_reduction(Lattice({{1, 0}, {10, 1}}));
}

TEST_CASE("lattice_reduce on random unimodular images") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    std::uniform_int_distribution<int> k(-6, 6);
    for (int t = 0; t < 200; ++t) {
        Point b0{u(rng), u(rng)}, b1{u(rng), u(rng)};
        if (std::abs(cross(b0, b1)) < 0.2) continue;
        // Skew with a random unimodular matrix [[1, k], [0, 1]][[1, 0], [k', 1]].
        const int s = k(rng), s2 = k(rng);
        Point c1 = b1 + b0 * s2;
        Point c0 = b0 + c1 * s;
        check_reduction(Lattice::planar(c0, c1));
    }
}

TEST_CASE("lattice rejects singular bases") {
    CHECK_THROWS_AS(Lattice({{1, 2}, {2, 4}}), std::invalid_argument);
    CHECK_THROWS(Lattice({{1, 0}}));
}

TEST_CASE("shortest_vector matches enumeration") {
    CHECK(shortest_vector(Lattice({{2, 0}, {1, 1.7320508}})) == doctest::Approx(2.0));
    CHECK(shortest_vector(Lattice({{1, 0}, {0, 1}})) == 1.0);
    const double sv = shortest_vector(Lattice({{0.5, 0}, {0.25, 1.9682458}}));
    CHECK(sv == doctest::Approx(oracle::shortest_vector({0.5, 0}, {0.25, 1.9682458}, 5)).epsilon(1e-14));
    CHECK(sv == doctest::Approx(0.5));
}

TEST_CASE("periodic_delta examples") {
    const Lattice sq({{10, 0}, {0, 10}});
    CHECK(periodic_delta(sq, {0, 0}, {9, 0}) == doctest::Approx(1.0));
    CHECK(periodic_delta(sq, {3.3, 4.4}, {3.3, 4.4}) == 0.0);
    const Lattice hex({{2, 0}, {1, 1.7320508}});
    const double d = periodic_delta(hex, {0, 0}, {1, 0.5773503});
    CHECK(d == doctest::Approx(oracle::periodic_distance({2, 0}, {1, 1.7320508}, {0, 0}, {1, 0.5773503}, 3)).epsilon(1e-14));
    CHECK(d == doctest::Approx(1.1547005).epsilon(1e-7));
}

TEST_CASE("periodic_delta properties on random lattices") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    std::uniform_int_distribution<int> k(-5, 5);
    for (int t = 0; t < 300; ++t) {
        const Point b0{u(rng), u(rng)}, b1{u(rng), u(rng)};
        if (std::abs(cross(b0, b1)) < 0.3) continue;
        const Lattice l = Lattice::planar(b0, b1);
        const Point p{3 * u(rng), 3 * u(rng)}, q{3 * u(rng), 3 * u(rng)};
        const double d = periodic_delta(l, p, q);
        CHECK(d <= distance(p, q) + 1e-15);
        CHECK(d == doctest::Approx(oracle::periodic_distance(op(b0), op(b1), op(p), op(q),
                                                                 oracle::coefficient_bound(op(b0), op(b1), 2 * distance(p, q))))
                       .epsilon(1e-12));
        const Point w = b0 * k(rng) + b1 * k(rng);
        CHECK(std::abs(periodic_delta(l, p + w, q) - d) <= 1e-12 * (1 + norm(w)));
        CHECK(std::abs(periodic_delta(l, p, q - w) - d) <= 1e-12 * (1 + norm(w)));
        CHECK(periodic_delta(l, q, p) == doctest::Approx(d).epsilon(1e-14));
    }
}

TEST_CASE("smallest_enclosing_circle examples") {
    const std::vector<Point> one{{0, 0}};
    Disk d = smallest_enclosing_circle(one);
    CHECK(d.radius == 0.0);
    CHECK(d.center == Point{0, 0});
    const std::vector<Point> two{{0, 0}, {2, 0}};
    d = smallest_enclosing_circle(two);
    CHECK(d.radius == doctest::Approx(1.0));
    CHECK(d.center.x == doctest::Approx(1.0));
    const std::vector<Point> tri{{0, 0}, {2, 0}, {1, 1.7320508}};
    d = smallest_enclosing_circle(tri);
    for (const Point& p : tri) CHECK(distance(p, d.center) == doctest::Approx(d.radius).epsilon(1e-12));
    CHECK(d.radius == doctest::Approx(1.1547005).epsilon(1e-7));
    CHECK_THROWS(smallest_enclosing_circle(std::vector<Point>{}));
}

TEST_CASE("smallest_enclosing_circle is minimal on random sets") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng() % 12);
        std::vector<Point> pts;
        std::vector<oracle::P> ref;
        for (int i = 0; i < n; ++i) {
            pts.push_back({u(rng), u(rng)});
            ref.push_back(op(pts.back()));
        }
        const Disk d = smallest_enclosing_circle(pts);
        bool excluded = false;
        for (const Point& p : pts) {
            CHECK(d.radius - distance(p, d.center) >= -1e-12);
            excluded = excluded || distance(p, d.center) > d.radius - 1e-6;
        }
        CHECK(excluded);
        const auto [c, r] = oracle::enclosing_circle(ref);
        CHECK(d.radius == doctest::Approx(r).epsilon(1e-10));
    }
}

TEST_CASE("arc_set_covers_full_circle examples") {
    AngularArcSet full;
    full.add(0, kTwoPi);
    CHECK(arc_set_covers_full_circle(full));
    AngularArcSet halves;
    halves.add(0, std::numbers::pi);
    halves.add(std::numbers::pi, std::numbers::pi);
    CHECK(arc_set_covers_full_circle(halves));
    AngularArcSet gap;
    gap.add(0, std::numbers::pi);
    gap.add(std::numbers::pi + 0.01, std::numbers::pi - 0.01);
    CHECK_FALSE(arc_set_covers_full_circle(gap));
    AngularArcSet wrap;
    wrap.add(-1, 2);
    CHECK(wrap.contains(kTwoPi - 0.5));
    CHECK(wrap.contains(0.5));
    CHECK_FALSE(wrap.contains(std::numbers::pi));
}

TEST_CASE("arc_set_covers_full_circle agrees with dense direction sampling") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, kTwoPi);
    std::uniform_real_distribution<double> w(0.2, 2.5);
    const int samples = 100000;
    int decided = 0;
    for (int t = 0; t < 300; ++t) {
        AngularArcSet s;
        std::vector<std::pair<double, double>> raw;
        const int n = 2 + static_cast<int>(rng() % 7);
        for (int i = 0; i < n; ++i) {
            raw.emplace_back(u(rng) - 1.0, w(rng));
            s.add(raw.back().first, raw.back().second);
        }
        auto in_raw = [&](double t) {
            for (const auto& [a, len] : raw) {
                const double off = std::fmod(std::fmod(t - a, kTwoPi) + kTwoPi, kTwoPi);
                if (off <= len) return true;
            }
            return false;
        };
        // Skip sets whose largest gap is too thin for the sampling to see.
        double widest = 0;
        for (const auto& g : s.gaps()) widest = std::max(widest, g.width);
        if (widest > 0 && widest < 3 * kTwoPi / samples) continue;
        bool sampled = true;
        for (int k = 0; k < samples && sampled; ++k) sampled = in_raw(kTwoPi * (k + 0.5) / samples);
        CHECK(arc_set_covers_full_circle(s) == sampled);
        ++decided;
    }
    CHECK(decided > 250);
}

TEST_CASE("unit_ball_volume") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
    CHECK_THROWS(unit_ball_volume(0));
}
