#include "diskpack/disk_union.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace diskpack {

Cluster::Cluster(std::vector<Point> pts) : centers(std::move(pts)) {
    if (centers.empty()) throw std::invalid_argument("cluster must be nonempty");
    for (const Point& p : centers)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::invalid_argument("cluster center is not finite");
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (distance(centers[i], centers[j]) < 1e-12) throw std::invalid_argument("cluster centers must be distinct");
}

double Cluster::min_pairwise_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j) best = std::min(best, distance(centers[i], centers[j]));
    return best;
}

std::string to_string(AreaMethod m) {
    switch (m) {
        case AreaMethod::exact_arcs: return "exact-arcs";
        case AreaMethod::certified_grid: return "certified-grid";
        case AreaMethod::monte_carlo: return "monte-carlo";
    }
    return "unknown";
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// ---- exact union area ----

AreaBracket union_area_exact(std::span<const Point> centers, double radius) {
    if (!(radius > 0)) throw std::invalid_argument("union_area_exact: radius must be positive");
    if (centers.empty()) throw std::invalid_argument("union_area_exact: no disks");
    if (centers.size() > kMaxExactDisks) throw std::invalid_argument("union_area_exact: too many disks");
    const std::size_t n = centers.size();

    // Work relative to the centroid to limit cancellation in the Green sums.
    Point centroid{};
    for (const Point& c : centers) centroid += c;
    centroid = centroid / static_cast<double>(n);
    std::vector<Point> cs;
    cs.reserve(n);
    for (const Point& c : centers) cs.push_back(c - centroid);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (distance(cs[i], cs[j]) < 1e-12) throw std::invalid_argument("union_area_exact: nearly identical centers");

    const double r = radius;
    double twice_area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        AngularArcSet covered;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const Point d = cs[j] - cs[i];
            const double dist = norm(d);
            if (dist >= 2 * r) continue;
            covered.add_centered(std::atan2(d.y, d.x), std::acos(dist / (2 * r)));
        }
        const Point c = cs[i];
        for (const auto& gap : covered.gaps()) {
            const double t1 = gap.start, t2 = gap.start + gap.width;
            twice_area += r * r * (t2 - t1) + r * c.x * (std::sin(t2) - std::sin(t1)) -
                          r * c.y * (std::cos(t2) - std::cos(t1));
        }
    }
    const double area = 0.5 * twice_area;
    const double eps = 1e-12 * static_cast<double>(n) * std::numbers::pi * r * r;
    return {area - eps, area + eps, AreaMethod::exact_arcs, 0.0, true};
}

AreaBracket dilated_union_area(const Cluster& c, double t) {
    if (!(t >= 0)) throw std::invalid_argument("dilated_union_area: t must be nonnegative");
    return union_area_exact(c.centers, 1.0 + t);
}

// ---- disk containment in a union ----

bool disk_in_union(std::span<const Point> centers, double r, Point p, double R) {
    if (!(r > 0) || !(R > 0)) return false;
    AngularArcSet arcs;
    for (const Point& c : centers) {
        const Point v = c - p;
        const double d = norm(v);
        if (d + R <= r) return true;
        if (d == 0) continue;
        const double t = (R * R + d * d - r * r) / (2 * R * d);
        if (t >= 1) continue;
        if (t <= -1) {
            arcs.add_full();
            continue;
        }
        arcs.add_centered(std::atan2(v.y, v.x), std::acos(t));
    }
    if (!arc_set_covers_full_circle(arcs)) return false;

    // A bounded uncovered component would have a crossing of two circles on
    // its boundary; such a crossing lies in no other open disk.
    const std::size_t n = centers.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point d = centers[j] - centers[i];
            const double dist = norm(d);
            if (dist >= 2 * r || dist == 0) continue;
            const Point mid = (centers[i] + centers[j]) / 2.0;
            const double h = std::sqrt(std::max(0.0, r * r - dist * dist / 4));
            const Point perp{-d.y / dist, d.x / dist};
            for (const double sgn : {-1.0, 1.0}) {
                const Point v = mid + perp * (sgn * h);
                if (distance(v, p) >= R) continue;
                bool inside_other = false;
                for (std::size_t k = 0; k < n && !inside_other; ++k)
                    if (k != i && k != j && distance(v, centers[k]) < r) inside_other = true;
                if (!inside_other) return false;
            }
        }
    }
    return true;
}

CoverStatus disk_cover_status(std::span<const Point> centers, double r, Point p, double R, double tol) {
    if (disk_in_union(centers, r - tol, p, R)) return CoverStatus::covered;
    if (!disk_in_union(centers, r + tol, p, R)) return CoverStatus::uncovered;
    return CoverStatus::borderline;
}

bool erosion_contains(const Cluster& c, Point p, double tol) {
    return disk_cover_status(c.centers, 1.0, p, 1.0, tol) != CoverStatus::uncovered;
}

// ---- certified erosion area ----

namespace {

enum class CellClass { inside, outside, undecided };

CellClass classify_erosion_cell(std::span<const Point> centers, Point p, double rho, double tol) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Point& c : centers) nearest = std::min(nearest, distance(c, p));
    // The erosion lies inside the union, so every member is within 1 of a center.
    if (nearest > 1.0 + rho + tol) return CellClass::outside;
    // Every q in the cell has B(1, q) inside B(1 + rho, p).
    if (disk_cover_status(centers, 1.0, p, 1.0 + rho, tol) == CoverStatus::covered) return CellClass::inside;
    // A point of B(1, p) farther than 1 + rho from all centers stays
    // uncovered after moving the disk by at most rho.
    if (disk_cover_status(centers, 1.0 + rho, p, 1.0, tol) == CoverStatus::uncovered) return CellClass::outside;
    return CellClass::undecided;
}

}  // namespace

namespace {
constexpr std::size_t kMaxErosionCells = 4'000'000;
}

AreaBracket erosion_area(const Cluster& c, double h, const ErosionOptions& opt) {
    if (!(h > 0)) throw std::invalid_argument("erosion_area: resolution must be positive");
    Box box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point& p : c.centers) {
        box.xmin = std::min(box.xmin, p.x - 1);
        box.xmax = std::max(box.xmax, p.x + 1);
        box.ymin = std::min(box.ymin, p.y - 1);
        box.ymax = std::max(box.ymax, p.y + 1);
    }
    const auto nx = static_cast<int>(std::ceil(box.width() / h));
    const auto ny = static_cast<int>(std::ceil(box.height() / h));

    std::vector<Point> cells;
    cells.reserve(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) cells.push_back({box.xmin + (i + 0.5) * h, box.ymin + (j + 0.5) * h});

    double lower = 0.0;
    double step = h;
    std::vector<Point> undecided;
    while (true) {
        const double rho = step * std::numbers::sqrt2 / 2;
        const double cell_area = step * step;
        undecided.clear();
        for (const Point& p : cells) {
            switch (classify_erosion_cell(c.centers, p, rho, opt.tolerance)) {
                case CellClass::inside: lower += cell_area; break;
                case CellClass::undecided: undecided.push_back(p); break;
                case CellClass::outside: break;
            }
        }
        const double upper = lower + cell_area * static_cast<double>(undecided.size());
        if (upper - lower <= opt.rel_width * std::max(upper, 0.01))
            return {lower, upper, AreaMethod::certified_grid, step, true};
        // Undecided cells multiply without bound only on degenerate inputs
        // (concurrent circles), where the bracket cannot close anyway.
        if (step / 2 < opt.min_step || undecided.size() > kMaxErosionCells / 4)
            return {lower, upper, AreaMethod::certified_grid, step, false};
        const double q = step / 4;
        cells.clear();
        cells.reserve(undecided.size() * 4);
        for (const Point& p : undecided) {
            cells.push_back({p.x - q, p.y - q});
            cells.push_back({p.x + q, p.y - q});
            cells.push_back({p.x - q, p.y + q});
            cells.push_back({p.x + q, p.y + q});
        }
        step /= 2;
    }
}

// ---- Monte Carlo ----

AreaBracket mc_area_oracle(const std::function<bool(Point)>& pred, const Box& box, std::int64_t samples,
                           std::uint64_t seed) {
    if (samples < 10000) throw std::invalid_argument("mc_area_oracle: need at least 1e4 samples");
    if (!(box.width() > 0) || !(box.height() > 0) || !std::isfinite(box.area()))
        throw std::invalid_argument("mc_area_oracle: degenerate box");
    constexpr std::int64_t kBatch = 1 << 16;
    constexpr double kUnit = 0x1.0p-53;
    std::int64_t hits = 0;
    for (std::int64_t start = 0, batch = 0; start < samples; start += kBatch, ++batch) {
        std::uint64_t state = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(batch)));
        const std::int64_t count = std::min(kBatch, samples - start);
        for (std::int64_t k = 0; k < count; ++k) {
            state = splitmix64(state);
            const double u = static_cast<double>(state >> 11) * kUnit;
            state = splitmix64(state);
            const double v = static_cast<double>(state >> 11) * kUnit;
            if (pred({box.xmin + u * box.width(), box.ymin + v * box.height()})) ++hits;
        }
    }
    const double n = static_cast<double>(samples);
    const double frac = static_cast<double>(hits) / n;
    const double area = frac * box.area();
    const double sigma = box.area() * std::sqrt(frac * (1 - frac) / n);
    return {std::max(0.0, area - 3 * sigma), std::min(box.area(), area + 3 * sigma), AreaMethod::monte_carlo, n, true};
}

double lens_area(Point c1, double r1, Point c2, double r2) {
    const double d = distance(c1, c2);
    if (d >= r1 + r2) return 0.0;
    const double rmin = std::min(r1, r2);
    if (d <= std::abs(r1 - r2)) return std::numbers::pi * rmin * rmin;
    const double a1 = std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0);
    const double a2 = std::clamp((d * d + r2 * r2 - r1 * r1) / (2 * d * r2), -1.0, 1.0);
    const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    return r1 * r1 * std::acos(a1) + r2 * r2 * std::acos(a2) - 0.5 * std::sqrt(std::max(0.0, k));
}

}  // namespace diskpack
