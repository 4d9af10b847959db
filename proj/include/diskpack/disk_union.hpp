#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "diskpack/geometry.hpp"

namespace diskpack {

/// A finite set of unit-disk centers.
struct Cluster {
    std::vector<Point> centers;

    Cluster() = default;
    explicit Cluster(std::vector<Point> pts);

    std::size_t size() const { return centers.size(); }
    /// Smallest pairwise center distance (infinity for a single disk).
    double min_pairwise_distance() const;
};

enum class AreaMethod { exact_arcs, certified_grid, monte_carlo };
std::string to_string(AreaMethod m);

struct AreaBracket {
    double lower = 0.0;
    double upper = 0.0;
    AreaMethod method = AreaMethod::exact_arcs;
    /// Grid step, sample count, or 0 for exact evaluation.
    double resolution = 0.0;
    /// False when a certified grid hit its resolution floor before reaching
    /// the requested relative width.
    bool conclusive = true;

    double mid() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
    bool contains(double v) const { return v >= lower && v <= upper; }
};

inline constexpr std::size_t kMaxExactDisks = 64;

/// Area of the union of congruent disks by boundary-arc decomposition and
/// Green's theorem.
AreaBracket union_area_exact(std::span<const Point> centers, double radius);
inline AreaBracket union_area_exact(const Cluster& c, double radius) { return union_area_exact(c.centers, radius); }

/// Area of the outer parallel domain of radius t of a union of unit disks.
AreaBracket dilated_union_area(const Cluster& c, double t);

/// Three-valued answer to "is B(R, p) inside the union of radius-r disks?".
enum class CoverStatus { covered, uncovered, borderline };

/// Exact (in the floating-point sense) containment predicate. The disk is
/// covered iff its boundary circle is covered by the disks' arcs and every
/// pairwise circle crossing strictly inside it lies strictly inside a third
/// disk.
bool disk_in_union(std::span<const Point> centers, double r, Point p, double R);

/// `covered` if containment holds with the union shrunk by tol, `uncovered`
/// if it fails with the union grown by tol, `borderline` otherwise.
CoverStatus disk_cover_status(std::span<const Point> centers, double r, Point p, double R,
                              double tol = kDefaultTolerance);

/// Membership of p in the inner parallel domain of radius 1 of the union of
/// unit disks, with tolerance-closed semantics.
bool erosion_contains(const Cluster& c, Point p, double tol = kDefaultTolerance);

struct ErosionOptions {
    double rel_width = 1e-3;
    double min_step = 1e-4;
    double tolerance = kDefaultTolerance;
};

/// Certified bracket on the area of the erosion, by quadtree refinement
/// starting at grid step h.
AreaBracket erosion_area(const Cluster& c, double h, const ErosionOptions& opt = {});

/// Monte-Carlo area of {p in box : pred(p)}; bracket is the 3-sigma interval.
/// Batches draw from counter-derived seeds so the result depends only on
/// (samples, seed).
AreaBracket mc_area_oracle(const std::function<bool(Point)>& pred, const Box& box, std::int64_t samples,
                           std::uint64_t seed);

/// Area of B(r1, c1) intersected with B(r2, c2).
double lens_area(Point c1, double r1, Point c2, double r2);

/// SplitMix64 step, used to derive independent stream seeds from a counter.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace diskpack
