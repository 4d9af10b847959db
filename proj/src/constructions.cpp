#include "diskpack/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diskpack {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

PeriodicArrangement hex_packing() { return {Lattice::planar({2, 0}, {1, kSqrt3}), {{0, 0}}, 1.0}; }

PeriodicArrangement hex_covering(double inflation) {
    if (!(inflation >= 0)) throw std::invalid_argument("hex_covering: inflation must be nonnegative");
    return {Lattice::planar({kSqrt3, 0}, {kSqrt3 / 2, 1.5}), {{0, 0}}, 1.0 + inflation};
}

PeriodicArrangement sect5_covering(int d, double a) {
    if (d < 2) throw std::invalid_argument("sect5_covering: d must be at least 2");
    if (!(a > 0) || !(a < 2 / std::sqrt(d - 1.0)))
        throw std::invalid_argument("sect5_covering: a must lie in (0, 2/sqrt(d-1))");
    std::vector<std::vector<double>> rows(d, std::vector<double>(d, 0.0));
    for (int i = 0; i + 1 < d; ++i) {
        rows[i][i] = a;
        rows[d - 1][i] = a / 2;
    }
    rows[d - 1][d - 1] = 1 + std::sqrt(1 - a * a / 4 * (d - 1));
    return PeriodicArrangement::from_coordinates(Lattice(std::move(rows)), {std::vector<double>(d, 0.0)}, 1.0);
}

SplitPacking::SplitPacking(double slide) : slide_(slide) {
    if (!(slide >= 0) || !(slide < 1)) throw std::invalid_argument("split_packing: slide must lie in [0, 1)");
}

Point SplitPacking::boundary_offset() const {
    const double dx = 1 - slide_;
    return {dx, std::sqrt(4 - dx * dx)};
}

std::vector<Point> SplitPacking::centers_in_window(const Box& w) const {
    if (!(w.xmax > w.xmin) || !(w.ymax > w.ymin)) throw std::invalid_argument("split_packing: empty window");
    // Row j >= 1 of the upper part sits at the boundary offset plus (j-1)
    // hexagonal row steps; rows j <= 0 are the untouched lower half.
    const Point up = boundary_offset();
    std::vector<Point> out;
    auto meets = [&](Point p) {
        const double cx = std::clamp(p.x, w.xmin, w.xmax), cy = std::clamp(p.y, w.ymin, w.ymax);
        return distance(p, {cx, cy}) < 1.0;
    };
    const auto jmin = static_cast<long>(std::floor((w.ymin - 1) / kSqrt3)) - 1;
    const auto jmax = static_cast<long>(std::ceil((w.ymax + 1) / kSqrt3)) + 1;
    for (long j = jmin; j <= jmax; ++j) {
        Point origin;
        if (j <= 0)
            origin = {static_cast<double>(j), kSqrt3 * static_cast<double>(j)};
        else
            origin = up + Point{static_cast<double>(j - 1), kSqrt3 * static_cast<double>(j - 1)};
        const auto imin = static_cast<long>(std::floor((w.xmin - 1 - origin.x) / 2)) - 1;
        const auto imax = static_cast<long>(std::ceil((w.xmax + 1 - origin.x) / 2)) + 1;
        for (long i = imin; i <= imax; ++i) {
            const Point p = origin + Point{2.0 * static_cast<double>(i), 0};
            if (meets(p)) out.push_back(p);
        }
    }
    return out;
}

SplitPacking split_packing(double slide) { return SplitPacking(slide); }

std::string to_string(ClusterKind k) {
    switch (k) {
        case ClusterKind::pack2: return "pack2";
        case ClusterKind::pack3: return "pack3";
        case ClusterKind::pack7: return "pack7";
        case ClusterKind::cover3: return "cover3";
        case ClusterKind::cover4: return "cover4";
        case ClusterKind::cover7: return "cover7";
    }
    return "?";
}

ClusterKind parse_cluster_kind(const std::string& s) {
    for (ClusterKind k : {ClusterKind::pack2, ClusterKind::pack3, ClusterKind::pack7, ClusterKind::cover3,
                          ClusterKind::cover4, ClusterKind::cover7})
        if (to_string(k) == s) return k;
    throw std::invalid_argument("unknown cluster kind: " + s);
}

bool is_packing_kind(ClusterKind k) {
    return k == ClusterKind::pack2 || k == ClusterKind::pack3 || k == ClusterKind::pack7;
}

Cluster make_cluster(ClusterKind kind, double scale) {
    if (!(scale > 0) || !std::isfinite(scale)) throw std::invalid_argument("cluster scale must be positive");
    if (is_packing_kind(kind) && scale != 2.0) throw std::invalid_argument("packing clusters are tangent: scale must be 2");
    const double s = scale;
    switch (kind) {
        case ClusterKind::pack2: return Cluster({{0, 0}, {2, 0}});
        case ClusterKind::pack3:
        case ClusterKind::cover3: return Cluster({{0, 0}, {s, 0}, {s / 2, s * kSqrt3 / 2}});
        case ClusterKind::cover4: return Cluster({{0, 0}, {s, 0}, {s, s}, {0, s}});
        case ClusterKind::pack7:
        case ClusterKind::cover7: {
            std::vector<Point> pts{{0, 0}};
            // Exact hexagon vertices keep tangent distances at exactly s.
            const double h = s * kSqrt3 / 2;
            for (Point p : {Point{s, 0}, Point{s / 2, h}, Point{-s / 2, h}, Point{-s, 0}, Point{-s / 2, -h},
                            Point{s / 2, -h}})
                pts.push_back(p);
            return Cluster(std::move(pts));
        }
    }
    throw std::invalid_argument("unknown cluster kind");
}

}  // namespace diskpack
