#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diskpack/geometry.hpp"

namespace diskpack {

/// One translate of a motif disk: center = motif[motif] + a*g0 + b*g1, where
/// g0, g1 are the stored (not reduced) lattice generators.
struct DiskCopy {
    int motif = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;

    bool operator==(const DiskCopy&) const = default;
    auto operator<=>(const DiskCopy&) const = default;
};

/// Congruent disks centered at the points of finitely many lattice cosets.
/// Immutable after construction. Motif points of planar arrangements are
/// moved into the fundamental parallelogram of the reduced basis when they
/// lie outside it; points already inside are kept bit-for-bit.
class PeriodicArrangement {
public:
    PeriodicArrangement(Lattice lattice, std::vector<Point> motif, double radius);
    /// Arbitrary dimension; only the symbolic lattice constructions use dim != 2.
    static PeriodicArrangement from_coordinates(Lattice lattice, std::vector<std::vector<double>> motif,
                                                double radius);

    int dim() const { return lattice_.dim(); }
    const Lattice& lattice() const { return lattice_; }
    /// Planar motif; throws for dim != 2.
    const std::vector<Point>& motif() const;
    const std::vector<std::vector<double>>& motif_coordinates() const { return coords_; }
    double radius() const { return radius_; }
    std::size_t size() const { return coords_.size(); }

    Point center(const DiskCopy& c) const;
    /// All copies whose centers lie within `range` of p.
    std::vector<DiskCopy> copies_near(Point p, double range) const;
    /// Smallest distance from p to any disk center, on the torus.
    double nearest_center_distance(Point p) const;
    /// u*r0 + v*r1 for the reduced generators r0, r1.
    Point cell_point(double u, double v) const;

    PeriodicArrangement with_radius(double r) const;
    PeriodicArrangement with_motif(std::vector<Point> motif) const;
    PeriodicArrangement transformed(const RigidMotion& m) const;
    PeriodicArrangement scaled(double s) const;

private:
    PeriodicArrangement(Lattice lattice, double radius) : lattice_(std::move(lattice)), radius_(radius) {}
    void require_planar() const;

    Lattice lattice_;
    std::vector<std::vector<double>> coords_;
    std::vector<Point> motif_;
    double radius_ = 1.0;
};

double density(const PeriodicArrangement& a);

struct PackingVerdict {
    bool certified = false;
    /// Closest offending pair when not a packing.
    std::optional<std::pair<DiskCopy, DiskCopy>> witness;
    double min_distance = 0.0;
};

PackingVerdict is_packing(const PeriodicArrangement& a, double tol = kDefaultTolerance);
/// Pairwise test for a finite set of congruent disks.
PackingVerdict is_packing(std::span<const Point> centers, double radius, double tol = kDefaultTolerance);

enum class CoverStatusKind { certified_yes, certified_no, unknown };
std::string to_string(CoverStatusKind s);

struct CoverVerdict {
    CoverStatusKind status = CoverStatusKind::unknown;
    std::optional<Point> witness;
    /// certified-no: clearance of the witness beyond the target radius.
    /// certified-yes: smallest certified slack over the final cells.
    double margin = 0.0;
    double resolution = 0.0;
};

/// Certified covering test of the plane by disks of radius `target_radius`
/// centered at the arrangement's centers. Quadtree over the fundamental cell
/// with 1-Lipschitz certification of the nearest-center distance.
/// h0 <= 0 picks an initial step of target_radius / 4. Cells are refined
/// down to a diameter of min_cell_rel * target_radius before giving up.
CoverVerdict covering_check(const PeriodicArrangement& a, double target_radius, double h0 = 0.0,
                            double tol = kDefaultTolerance, double min_cell_rel = 1e-8);

struct HoleBracket {
    double lower = 0.0;
    double upper = 0.0;
    Point location{};  ///< point attaining `lower`
};

/// Branch-and-bound bracket on the covering radius of the center set.
HoleBracket deepest_hole_bracket(const PeriodicArrangement& a, double accuracy = 1e-3);

/// Grid points (step h) of the indexed motif disk that lie farther than
/// radius + tol from every other disk center.
std::vector<Point> uniquely_covered_samples(const PeriodicArrangement& a, std::size_t disk_index, double h,
                                            double tol = kDefaultTolerance);

/// Total area of all disk copies inside the window, divided by the window area.
double relative_density(const PeriodicArrangement& a, const Disk& window);

/// Number of disk centers in the closed window.
std::size_t count_centers(const PeriodicArrangement& a, const Disk& window);

}  // namespace diskpack
