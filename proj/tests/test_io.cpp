#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <regex>

#include "diskpack/constructions.hpp"
#include "diskpack/io.hpp"
#include "diskpack/svg.hpp"

using namespace diskpack;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::size_t count_circles(const std::string& svg) {
    std::size_t n = 0;
    for (std::size_t pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("arrangement files round-trip bit-exactly") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 200; ++t) {
        const Point b0{2 + u(rng), u(rng) / 3}, b1{u(rng) / 3, 2 + u(rng)};
        std::vector<Point> motif{{0.1 + 0.3 * std::abs(u(rng)), 0.1 + 0.3 * std::abs(u(rng))}};
        if (t % 2) motif.push_back({1.1 + 0.2 * std::abs(u(rng)), 1.2 + 0.2 * std::abs(u(rng))});
        const PeriodicArrangement a(Lattice::planar(b0, b1), motif, 0.1 + std::abs(u(rng)));
        const std::string text = serialize(to_json(a));
        const PeriodicArrangement back = arrangement_from_json(parse_json_text(text));
        REQUIRE(back.size() == a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(same_bits(back.motif()[i].x, a.motif()[i].x));
            CHECK(same_bits(back.motif()[i].y, a.motif()[i].y));
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(same_bits(back.lattice().rows()[i][j], a.lattice().rows()[i][j]));
        CHECK(same_bits(back.radius(), a.radius()));
        CHECK(serialize(to_json(back)) == text);
    }
    // Symbolic three-dimensional output round-trips as well.
    const PeriodicArrangement s3 = sect5_covering(3, 0.5);
    CHECK(serialize(to_json(arrangement_from_json(to_json(s3)))) == serialize(to_json(s3)));
}

TEST_CASE("arrangement file fields") {
    const Json j = to_json(sect5_covering(2, 0.5));
    CHECK(j["dim"] == 2);
    CHECK(j["radius"] == 1.0);
    CHECK(j["basis"][0][0] == 0.5);
    CHECK(j["basis"][1][0] == 0.25);
    CHECK(j["motif"].size() == 1);
}

TEST_CASE("malformed arrangement files") {
    const char* bad[] = {
        R"({"basis": [[1,0],[0,1]], "motif": [[0,0]], "radius": 1})",
        R"({"dim": 2, "basis": [[1,0]], "motif": [[0,0]], "radius": 1})",
        R"({"dim": 2, "basis": [[1,0],[2,0]], "motif": [[0,0]], "radius": 1})",
        R"({"dim": 2, "basis": [[1,0],[0,1]], "motif": [], "radius": 1})",
        R"({"dim": 2, "basis": [[1,0],[0,1]], "motif": [[0,0]], "radius": -1})",
        R"({"dim": 2, "basis": [[1,0],[0,1]], "motif": [[0,0]], "radius": "one"})",
        R"({"dim": 2, "basis": [[1,0],[0,1]], "motif": [[0,0],[1,0]], "radius": 1})",
        R"({"dim": 2, "basis": [[1,0],[0,1]], "motif": [[0,0,0]], "radius": 1})",
        R"([1, 2, 3])",
    };
    for (const char* text : bad) CHECK_THROWS_AS(arrangement_from_json(parse_json_text(text)), FormatError);
    CHECK_THROWS_AS(parse_json_text("{not json"), FormatError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), FormatError);
}

TEST_CASE("cluster files") {
    const Cluster c = make_cluster(ClusterKind::pack7);
    const Json j = to_json(c);
    CHECK(is_cluster_document(j));
    CHECK_FALSE(is_cluster_document(to_json(hex_packing())));
    CHECK(cluster_from_json(j).centers == c.centers);
    CHECK_THROWS_AS(cluster_from_json(parse_json_text(R"({"centers": [[0,0],[0,0]]})")), FormatError);
}

TEST_CASE("witness serialization round-trips") {
    ReplacementWitness w{{{1, -2, 3}}, {{0.1, 0.2}, {1.0 / 3, 2.0 / 7}}, 0.125};
    const ReplacementWitness back = witness_from_json(parse_json_text(serialize(to_json(w))));
    CHECK(back.removed == w.removed);
    CHECK(back.added == w.added);
    CHECK(back.margin == w.margin);
}

TEST_CASE("result records") {
    ResultRecord r{"bound", {{"cluster", "pack2"}}, to_json(cluster_packing_bound(ClusterKind::pack2)), kToolVersion, 7};
    const Json j = to_json(r);
    CHECK(j["command"] == "bound");
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["seed"] == 7);
    CHECK(j["inputs"]["cluster"] == "pack2");
    CHECK(j["result"]["bound"].get<double>() == doctest::Approx(0.31075).epsilon(1e-4));
}

TEST_CASE("render: circle count equals the disks meeting the window") {
    const PeriodicArrangement a = sect5_covering(2, 0.5);
    const Box w{-3, 3, -3, 3};
    const std::string svg = render_svg(a, w);
    // Enumerate lattice points whose unit disk meets the window.
    std::size_t expect = 0;
    const double h = 1 + std::sqrt(1 - 0.0625);
    for (int j = -5; j <= 5; ++j)
        for (int i = -30; i <= 30; ++i) {
            const Point c{0.5 * i + 0.25 * j, h * j};
            const double dx = std::max({w.xmin - c.x, 0.0, c.x - w.xmax});
            const double dy = std::max({w.ymin - c.y, 0.0, c.y - w.ymax});
            if (std::hypot(dx, dy) < 1.0) ++expect;
        }
    CHECK(count_circles(svg) == expect);
    CHECK(rendered_disk_count(a, w) == expect);
    CHECK(svg.find("fill-opacity=\"0.3\"") != std::string::npos);
    CHECK(svg.find("clipPath") != std::string::npos);
    CHECK(svg.find("width=\"300") != std::string::npos);
    CHECK(render_svg(a, w) == svg);
    CHECK_THROWS(render_svg(a, {0, 0, 0, 1}));
}

TEST_CASE("render clusters") {
    CHECK(count_circles(render_svg(make_cluster(ClusterKind::pack7))) == 7);
    CHECK(count_circles(render_svg(make_cluster(ClusterKind::pack2))) == 2);
}
