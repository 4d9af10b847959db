#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "diskpack/constructions.hpp"
#include "diskpack/periodic.hpp"
#include "oracles.hpp"

using namespace diskpack;
using std::numbers::pi;

namespace {

const double kSqrt3 = std::sqrt(3.0);

PeriodicArrangement square(double side, std::vector<Point> motif = {{0, 0}}, double r = 1.0) {
    return PeriodicArrangement(Lattice({{side, 0}, {0, side}}), std::move(motif), r);
}

double oracle_hole(const PeriodicArrangement& a, int g) {
    const Point b0 = a.lattice().generator(0), b1 = a.lattice().generator(1);
    std::vector<oracle::P> m;
    for (const Point& p : a.motif()) m.push_back({p.x, p.y});
    return oracle::grid_deepest_hole({b0.x, b0.y}, {b1.x, b1.y}, m, g).first;
}

}  // namespace

TEST_CASE("density examples") {
    CHECK(density(hex_packing()) == doctest::Approx(pi / (2 * kSqrt3)).epsilon(1e-14));
    CHECK(density(hex_covering()) == doctest::Approx(2 * pi / std::sqrt(27.0)).epsilon(1e-14));
    const double a = 0.5;
    CHECK(density(sect5_covering(2, a)) == doctest::Approx(pi / (a * (1 + std::sqrt(1 - a * a / 4)))).epsilon(1e-14));
    CHECK(density(sect5_covering(2, a)) == doctest::Approx(3.19228).epsilon(1e-5));
}

TEST_CASE("density invariances") {
    const PeriodicArrangement base(Lattice({{3, 0.2}, {0.7, 2.9}}), {{0, 0}, {1.4, 1.1}, {2.0, 2.4}}, 0.6);
    const double d = density(base);
    // Motif translation.
    std::vector<Point> shifted;
    for (const Point& p : base.motif()) shifted.push_back(p + Point{0.37, -1.21});
    CHECK(density(base.with_motif(shifted)) == doctest::Approx(d).epsilon(1e-12));
    // Change of basis generating the same lattice.
    const Point g0 = base.lattice().generator(0), g1 = base.lattice().generator(1);
    const Lattice other = Lattice::planar(g0 + g1 * 3, g1 + (g0 + g1 * 3) * -2);
    CHECK(density(PeriodicArrangement(other, base.motif(), 0.6)) == doctest::Approx(d).epsilon(1e-12));
    // Rigid motion.
    CHECK(density(base.transformed({1.1, {5, -3}})) == doctest::Approx(d).epsilon(1e-12));
}

TEST_CASE("arrangement validation") {
    CHECK_THROWS(square(4, {}));
    CHECK_THROWS(square(4, {{0, 0}, {4, 0}}));
    CHECK_THROWS(square(4, {{0, 0}}, 0.0));
}

TEST_CASE("motif points inside the reduced cell are kept verbatim") {
    const PeriodicArrangement a = square(4, {{0.1, 0.2}, {3.9, 3.7}});
    CHECK(a.motif()[0] == Point{0.1, 0.2});
    CHECK(a.motif()[1] == Point{3.9, 3.7});
    const PeriodicArrangement b = square(4, {{-0.5, 9.0}});
    CHECK(b.motif()[0].x == doctest::Approx(3.5));
    CHECK(b.motif()[0].y == doctest::Approx(1.0));
}

TEST_CASE("is_packing examples") {
    CHECK(is_packing(hex_packing()).certified);
    const PackingVerdict v = is_packing(hex_packing().with_radius(1.01));
    CHECK_FALSE(v.certified);
    REQUIRE(v.witness);
    const PeriodicArrangement a = hex_packing();
    CHECK(distance(a.center(v.witness->first), a.center(v.witness->second)) == doctest::Approx(2.0));
    CHECK(is_packing(square(2)).certified);
}

TEST_CASE("covering_check examples") {
    const PeriodicArrangement h = hex_covering();
    CHECK(covering_check(h, 1.01).status == CoverStatusKind::certified_yes);
    const CoverVerdict no = covering_check(h, 0.99);
    CHECK(no.status == CoverStatusKind::certified_no);
    REQUIRE(no.witness);
    CHECK(h.nearest_center_distance(*no.witness) > 0.99 + 1e-8);
    CHECK(covering_check(h, 1.0).status == CoverStatusKind::unknown);
}

TEST_CASE("covering_check: scaling and monotonicity") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 20; ++t) {
        std::vector<Point> motif;
        const int m = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < m; ++i) motif.push_back({4 * u(rng), 3 * u(rng)});
        const PeriodicArrangement a(Lattice({{4, 0}, {1.3, 3}}), motif, 1.0);
        const HoleBracket hole = deepest_hole_bracket(a, 1e-4);
        CHECK(hole.lower <= hole.upper);
        CHECK(hole.upper - hole.lower <= 1e-4 + 1e-12);
        CHECK(oracle_hole(a, 200) <= hole.upper + 1e-12);
        CHECK(oracle_hole(a, 200) >= hole.lower - 0.04);
        for (double target : {hole.lower * 0.9, hole.upper * 1.1}) {
            const CoverStatusKind s = covering_check(a, target).status;
            CHECK(s == (target > hole.upper ? CoverStatusKind::certified_yes : CoverStatusKind::certified_no));
            for (double lambda : {0.5, 3.0})
                CHECK(covering_check(a.scaled(lambda), target * lambda).status == s);
            if (s == CoverStatusKind::certified_yes)
                for (double bigger : {target * 1.01, target * 2})
                    CHECK(covering_check(a, bigger).status == CoverStatusKind::certified_yes);
        }
        const HoleBracket scaled = deepest_hole_bracket(a.scaled(3.0), 1e-4);
        CHECK(scaled.lower <= 3 * hole.upper + 1e-9);
        CHECK(scaled.upper >= 3 * hole.lower - 1e-9);
        CHECK(is_packing(a).certified == is_packing(a.scaled(0.5)).certified);
    }
}

TEST_CASE("deepest_hole_bracket examples") {
    HoleBracket h = deepest_hole_bracket(square(4));
    CHECK(h.lower <= 2 * std::sqrt(2.0) + 1e-12);
    CHECK(h.upper >= 2 * std::sqrt(2.0) - 1e-12);
    CHECK(h.upper - h.lower <= 1e-3);
    h = deepest_hole_bracket(hex_packing());
    CHECK(h.lower <= 2 / kSqrt3 + 1e-12);
    CHECK(h.upper >= 2 / kSqrt3 - 1e-12);
    std::vector<Point> grid;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) grid.push_back({0.1 * i, 0.1 * j});
    // The 3x3 grid tiles a cell of side 0.3: hole = half-diagonal of the spacing.
    h = deepest_hole_bracket(square(0.3, grid, 0.01));
    CHECK(h.upper <= 0.08 + 1e-3);
    CHECK(h.lower <= 0.05 * std::sqrt(2.0) + 1e-12);
    CHECK(h.upper >= 0.05 * std::sqrt(2.0) - 1e-12);
    // In a unit cell it leaves a hole at (0.6, 0.6) of depth 0.4 * sqrt2.
    h = deepest_hole_bracket(square(1, grid, 0.01));
    CHECK(h.lower <= 0.4 * std::sqrt(2.0) + 1e-12);
    CHECK(h.upper >= 0.4 * std::sqrt(2.0) - 1e-12);
    CHECK(h.lower == doctest::Approx(oracle_hole(square(1, grid, 0.01), 400)).epsilon(0.01));
}

TEST_CASE("uniquely_covered_samples") {
    CHECK_FALSE(uniquely_covered_samples(hex_covering(), 0, 0.02).empty());
    const auto s5 = uniquely_covered_samples(sect5_covering(2, 0.5), 0, 0.01);
    REQUIRE_FALSE(s5.empty());
    double widest = 0;
    for (const Point& p : s5)
        for (const Point& q : s5) widest = std::max(widest, distance(p, q));
    CHECK(widest > 1.9);
    const PeriodicArrangement twin(hex_covering().lattice(), {{0, 0}, {1e-7, 0}}, 1.0);
    CHECK(uniquely_covered_samples(twin, 1, 0.01).empty());
    CHECK_THROWS_AS(uniquely_covered_samples(twin, 2, 0.01), std::out_of_range);
}

TEST_CASE("relative_density examples") {
    CHECK(relative_density(hex_packing(), {{0, 0}, 50}) == doctest::Approx(pi / (2 * kSqrt3)).epsilon(0.01 / 0.9069));
    CHECK(relative_density(square(100), {{50, 50}, 10}) == 0.0);
    CHECK(relative_density(hex_packing(), {{0.1, 0.1}, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(relative_density(hex_packing(), {{0, 0}, 0}));
}

TEST_CASE("translate-averaged relative density equals density") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-100, 100);
    for (const PeriodicArrangement& a : {hex_packing(), hex_covering()}) {
        double sum = 0;
        for (int i = 0; i < 100; ++i) sum += relative_density(a, {{u(rng), u(rng)}, 20});
        CHECK(std::abs(sum / 100 - density(a)) < 0.01);
    }
}

TEST_CASE("center counts over translates straddle aV(G)") {
    const PeriodicArrangement a = hex_packing();
    const double aV = pi * 100 / (2 * kSqrt3);
    std::mt19937_64 rng(54);
    std::uniform_real_distribution<double> u(-50, 50);
    std::size_t lo = SIZE_MAX, hi = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = count_centers(a, {{u(rng), u(rng)}, 10});
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    CHECK(static_cast<double>(lo) <= std::floor(aV));
    CHECK(static_cast<double>(hi) >= std::ceil(aV));
}

TEST_CASE("count_centers matches enumeration") {
    const PeriodicArrangement a = sect5_covering(2, 0.5);
    const Disk w{{0.3, -0.2}, 3.0};
    std::size_t n = 0;
    for (int i = -40; i <= 40; ++i)
        for (int j = -5; j <= 5; ++j)
            if (distance(Point{0.5 * i + 0.25 * j, 1.9682458365518543 * j}, w.center) <= w.radius) ++n;
    CHECK(count_centers(a, w) == n);
}
