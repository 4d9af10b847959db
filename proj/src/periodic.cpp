#include "diskpack/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "diskpack/disk_union.hpp"

namespace diskpack {

namespace {

// Points with reduced coordinates in [-eps, 1 + eps) count as inside the cell,
// which keeps canonicalization idempotent under rounding.
constexpr double kCellSlack = 1e-9;

}  // namespace

PeriodicArrangement::PeriodicArrangement(Lattice lattice, std::vector<Point> motif, double radius)
    : lattice_(std::move(lattice)), motif_(std::move(motif)), radius_(radius) {
    require_planar();
    if (!(radius_ > 0) || !std::isfinite(radius_)) throw std::invalid_argument("radius must be positive");
    if (motif_.empty()) throw std::invalid_argument("motif must be nonempty");
    const Point r0 = lattice_.reduced(0), r1 = lattice_.reduced(1);
    for (Point& p : motif_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::invalid_argument("motif point is not finite");
        const auto [u, v] = lattice_.reduced_coordinates(p);
        if (u < -kCellSlack || u >= 1 + kCellSlack) p -= r0 * std::floor(u);
        if (v < -kCellSlack || v >= 1 + kCellSlack) p -= r1 * std::floor(v);
    }
    for (std::size_t i = 0; i < motif_.size(); ++i)
        for (std::size_t j = i + 1; j < motif_.size(); ++j)
            if (periodic_delta(lattice_, motif_[i], motif_[j]) <= 1e-9)
                throw std::invalid_argument("motif points must be distinct modulo the lattice");
    coords_.reserve(motif_.size());
    for (const Point& p : motif_) coords_.push_back({p.x, p.y});
}

PeriodicArrangement PeriodicArrangement::from_coordinates(Lattice lattice, std::vector<std::vector<double>> motif,
                                                          double radius) {
    if (lattice.dim() == 2) {
        std::vector<Point> pts;
        for (const auto& c : motif) {
            if (c.size() != 2) throw std::invalid_argument("motif point dimension mismatch");
            pts.push_back({c[0], c[1]});
        }
        return PeriodicArrangement(std::move(lattice), std::move(pts), radius);
    }
    if (!(radius > 0) || !std::isfinite(radius)) throw std::invalid_argument("radius must be positive");
    if (motif.empty()) throw std::invalid_argument("motif must be nonempty");
    for (const auto& c : motif) {
        if (static_cast<int>(c.size()) != lattice.dim()) throw std::invalid_argument("motif point dimension mismatch");
        for (double v : c)
            if (!std::isfinite(v)) throw std::invalid_argument("motif point is not finite");
    }
    PeriodicArrangement out(std::move(lattice), radius);
    out.coords_ = std::move(motif);
    return out;
}

void PeriodicArrangement::require_planar() const {
    if (dim() != 2) throw std::invalid_argument("operation requires a planar arrangement");
}

const std::vector<Point>& PeriodicArrangement::motif() const {
    require_planar();
    return motif_;
}

Point PeriodicArrangement::center(const DiskCopy& c) const {
    return motif().at(static_cast<std::size_t>(c.motif)) + lattice_.vector(c.a, c.b);
}

std::vector<DiskCopy> PeriodicArrangement::copies_near(Point p, double range) const {
    require_planar();
    std::vector<DiskCopy> out;
    for (std::size_t k = 0; k < motif_.size(); ++k) {
        for_each_lattice_vector_near(lattice_, motif_[k] - p, range, [&](std::int64_t a, std::int64_t b, Point) {
            const auto [sa, sb] = lattice_.to_stored(a, b);
            out.push_back({static_cast<int>(k), sa, sb});
        });
    }
    return out;
}

double PeriodicArrangement::nearest_center_distance(Point p) const {
    double best2 = std::numeric_limits<double>::infinity();
    for (const Point& m : motif()) best2 = std::min(best2, norm2(minimum_image(lattice_, p - m)));
    return std::sqrt(best2);
}

Point PeriodicArrangement::cell_point(double u, double v) const {
    return lattice_.reduced(0) * u + lattice_.reduced(1) * v;
}

PeriodicArrangement PeriodicArrangement::with_radius(double r) const {
    return from_coordinates(lattice_, coords_, r);
}

PeriodicArrangement PeriodicArrangement::with_motif(std::vector<Point> motif) const {
    return PeriodicArrangement(lattice_, std::move(motif), radius_);
}

PeriodicArrangement PeriodicArrangement::transformed(const RigidMotion& m) const {
    std::vector<Point> pts;
    for (const Point& p : motif()) pts.push_back(m(p));
    return PeriodicArrangement(lattice_.rotated(m.angle), std::move(pts), radius_);
}

PeriodicArrangement PeriodicArrangement::scaled(double s) const {
    std::vector<Point> pts;
    for (const Point& p : motif()) pts.push_back(p * s);
    return PeriodicArrangement(lattice_.scaled(s), std::move(pts), radius_ * s);
}

double density(const PeriodicArrangement& a) {
    const int d = a.dim();
    return static_cast<double>(a.size()) * unit_ball_volume(d) * std::pow(a.radius(), d) /
           std::abs(a.lattice().determinant());
}

// ---- packing ----

PackingVerdict is_packing(const PeriodicArrangement& a, double tol) {
    const double r = a.radius();
    PackingVerdict out;
    out.min_distance = std::numeric_limits<double>::infinity();
    const auto& motif = a.motif();
    double worst = 2 * r - tol;
    for (std::size_t i = 0; i < motif.size(); ++i) {
        const DiskCopy self{static_cast<int>(i), 0, 0};
        for (std::size_t j = i; j < motif.size(); ++j) {
            const double d = (i == j) ? shortest_vector(a.lattice())
                                      : norm(minimum_image(a.lattice(), motif[j] - motif[i]));
            out.min_distance = std::min(out.min_distance, d);
        }
        for (const DiskCopy& c : a.copies_near(motif[i], 2 * r)) {
            if (c == self) continue;
            const double d = distance(a.center(c), motif[i]);
            if (d < worst) {
                worst = d;
                out.witness = std::make_pair(self, c);
            }
        }
    }
    out.certified = !out.witness.has_value();
    return out;
}

PackingVerdict is_packing(std::span<const Point> centers, double radius, double tol) {
    PackingVerdict out;
    out.min_distance = std::numeric_limits<double>::infinity();
    double worst = 2 * radius - tol;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            const double d = distance(centers[i], centers[j]);
            out.min_distance = std::min(out.min_distance, d);
            if (d < worst) {
                worst = d;
                out.witness = std::make_pair(DiskCopy{static_cast<int>(i), 0, 0}, DiskCopy{static_cast<int>(j), 0, 0});
            }
        }
    }
    out.certified = !out.witness.has_value();
    return out;
}

// ---- covering ----

std::string to_string(CoverStatusKind s) {
    switch (s) {
        case CoverStatusKind::certified_yes: return "certified-yes";
        case CoverStatusKind::certified_no: return "certified-no";
        case CoverStatusKind::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

/// Cell of the fundamental parallelogram in reduced coordinates.
struct FracCell {
    double u = 0, v = 0;    // center
    double su = 0, sv = 0;  // side lengths
};

double cell_circumradius(const PeriodicArrangement& a, double su, double sv) {
    const Point e0 = a.lattice().reduced(0) * su, e1 = a.lattice().reduced(1) * sv;
    return 0.5 * std::max(norm(e0 + e1), norm(e0 - e1));
}

std::vector<FracCell> initial_cells(const PeriodicArrangement& a, double h0) {
    const auto n0 = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(norm(a.lattice().reduced(0)) / h0)));
    const auto n1 = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(norm(a.lattice().reduced(1)) / h0)));
    std::vector<FracCell> cells;
    cells.reserve(static_cast<std::size_t>(n0 * n1));
    const double su = 1.0 / static_cast<double>(n0), sv = 1.0 / static_cast<double>(n1);
    for (std::int64_t i = 0; i < n0; ++i)
        for (std::int64_t j = 0; j < n1; ++j) cells.push_back({(i + 0.5) * su, (j + 0.5) * sv, su, sv});
    return cells;
}

void split(const FracCell& c, std::vector<FracCell>& out) {
    const double qu = c.su / 4, qv = c.sv / 4;
    for (const double du : {-qu, qu})
        for (const double dv : {-qv, qv}) out.push_back({c.u + du, c.v + dv, c.su / 2, c.sv / 2});
}

}  // namespace

CoverVerdict covering_check(const PeriodicArrangement& a, double target_radius, double h0, double tol,
                            double min_cell_rel) {
    if (!(target_radius > 0)) throw std::invalid_argument("covering_check: target radius must be positive");
    if (!(h0 > 0)) h0 = target_radius / 4;
    std::vector<FracCell> cells = initial_cells(a, h0);
    std::vector<FracCell> undecided;
    double min_slack = std::numeric_limits<double>::infinity();
    while (true) {
        const double rho = cell_circumradius(a, cells.front().su, cells.front().sv);
        undecided.clear();
        double best_clearance = -1.0;
        Point best_point{};
        for (const FracCell& c : cells) {
            const Point p = a.cell_point(c.u, c.v);
            const double d = a.nearest_center_distance(p);
            if (d + rho <= target_radius - tol) {
                min_slack = std::min(min_slack, target_radius - d - rho);
            } else if (d > target_radius + 10 * tol) {
                if (d - target_radius > best_clearance) {
                    best_clearance = d - target_radius;
                    best_point = p;
                }
            } else {
                undecided.push_back(c);
            }
        }
        if (best_clearance > 0) return {CoverStatusKind::certified_no, best_point, best_clearance, 2 * rho};
        if (undecided.empty()) return {CoverStatusKind::certified_yes, std::nullopt, min_slack, 2 * rho};
        if (rho < 0.5 * min_cell_rel * target_radius) return {CoverStatusKind::unknown, std::nullopt, 0.0, 2 * rho};
        cells.clear();
        for (const FracCell& c : undecided) split(c, cells);
    }
}

HoleBracket deepest_hole_bracket(const PeriodicArrangement& a, double accuracy) {
    struct Node {
        double upper;
        FracCell cell;
        bool operator<(const Node& o) const { return upper < o.upper; }
    };
    const double h0 = std::min(norm(a.lattice().reduced(0)), norm(a.lattice().reduced(1))) / 8;
    std::priority_queue<Node> queue;
    HoleBracket out{-1.0, 0.0, {}};
    auto visit = [&](const FracCell& c) {
        const Point p = a.cell_point(c.u, c.v);
        const double d = a.nearest_center_distance(p);
        if (d > out.lower) {
            out.lower = d;
            out.location = p;
        }
        queue.push({d + cell_circumradius(a, c.su, c.sv), c});
    };
    for (const FracCell& c : initial_cells(a, h0)) visit(c);
    while (true) {
        const Node top = queue.top();
        if (top.upper - out.lower <= accuracy) {
            out.upper = top.upper;
            return out;
        }
        queue.pop();
        std::vector<FracCell> kids;
        split(top.cell, kids);
        for (const FracCell& k : kids) visit(k);
    }
}

std::vector<Point> uniquely_covered_samples(const PeriodicArrangement& a, std::size_t disk_index, double h, double tol) {
    if (disk_index >= a.size()) throw std::out_of_range("uniquely_covered_samples: disk index out of range");
    if (!(h > 0)) throw std::invalid_argument("uniquely_covered_samples: step must be positive");
    const double r = a.radius();
    const Point c = a.motif()[disk_index];
    const DiskCopy self{static_cast<int>(disk_index), 0, 0};
    std::vector<Point> others;
    for (const DiskCopy& k : a.copies_near(c, 2 * r + h))
        if (k != self) others.push_back(a.center(k));
    std::vector<Point> out;
    const auto n = static_cast<std::int64_t>(std::floor(r / h));
    for (std::int64_t i = -n; i <= n; ++i) {
        for (std::int64_t j = -n; j <= n; ++j) {
            const Point p = c + Point{static_cast<double>(i) * h, static_cast<double>(j) * h};
            if (distance(p, c) > r) continue;
            const bool unique = std::all_of(others.begin(), others.end(),
                                            [&](Point o) { return distance(p, o) > r + tol; });
            if (unique) out.push_back(p);
        }
    }
    return out;
}

double relative_density(const PeriodicArrangement& a, const Disk& window) {
    if (!(window.radius > 0)) throw std::invalid_argument("relative_density: window radius must be positive");
    const double r = a.radius();
    double total = 0.0;
    for (const DiskCopy& c : a.copies_near(window.center, window.radius + r))
        total += lens_area(a.center(c), r, window.center, window.radius);
    return total / (std::numbers::pi * window.radius * window.radius);
}

std::size_t count_centers(const PeriodicArrangement& a, const Disk& window) {
    return a.copies_near(window.center, window.radius).size();
}

}  // namespace diskpack
