#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace diskpack {

/// Default length tolerance for every geometric predicate.
inline constexpr double kDefaultTolerance = 1e-9;
/// Angular tolerance used by arc-set coverage.
inline constexpr double kAngularTolerance = 1e-12;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    Point operator/(double s) const { return {x / s, y / s}; }
    Point operator-() const { return {-x, -y}; }
    Point& operator+=(Point o) { x += o.x; y += o.y; return *this; }
    Point& operator-=(Point o) { x -= o.x; y -= o.y; return *this; }
    bool operator==(const Point&) const = default;
    auto operator<=>(const Point&) const = default;
};

inline Point operator*(double s, Point p) { return p * s; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Rotation by `angle` about the origin followed by a translation.
struct RigidMotion {
    double angle = 0.0;
    Point shift{};

    Point operator()(Point p) const {
        const double c = std::cos(angle), s = std::sin(angle);
        return Point{c * p.x - s * p.y, s * p.x + c * p.y} + shift;
    }
    Point rotate(Point p) const {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c * p.x - s * p.y, s * p.x + c * p.y};
    }
};

struct Disk {
    Point center{};
    double radius = 0.0;

    bool contains(Point p, double tol = kDefaultTolerance) const {
        return distance(p, center) <= radius + tol;
    }
};

/// Axis-aligned rectangle.
struct Box {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double area() const { return width() * height(); }
    bool contains(Point p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
};

/// Integer change of basis. `rows[i]` holds the coefficients of new generator i
/// in terms of the old generators.
using Unimodular2 = std::array<std::array<std::int64_t, 2>, 2>;

/// A full-rank lattice given by its generator rows. Two-dimensional lattices
/// carry a Lagrange-reduced copy of the basis together with the integer
/// transform that produced it; the user-supplied rows are kept verbatim.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(std::vector<std::vector<double>> rows);
    static Lattice planar(Point b1, Point b2);

    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    double determinant() const { return det_; }

    /// Generator i of the stored basis (dim 2 only).
    Point generator(int i) const;
    /// Reduced generators, |b1| <= |b2| and |b1.b2| <= |b1|^2 / 2.
    Point reduced(int i) const;
    const Lattice reduced_lattice() const { return planar(red_[0], red_[1]); }
    /// Coefficients of the reduced generators in the stored basis.
    const Unimodular2& reduction_transform() const { return to_stored_; }

    /// Lattice vector a*g0 + b*g1 in the stored basis.
    Point vector(std::int64_t a, std::int64_t b) const;
    /// Convert coefficients in the reduced basis to coefficients in the stored basis.
    std::pair<std::int64_t, std::int64_t> to_stored(std::int64_t a, std::int64_t b) const;
    /// Coordinates of p in the reduced basis (real-valued).
    std::pair<double, double> reduced_coordinates(Point p) const;

    /// Lattice scaled by s (all generators multiplied).
    Lattice scaled(double s) const;
    /// Lattice with all generators rotated.
    Lattice rotated(double angle) const;

private:
    void require_planar() const;

    std::vector<std::vector<double>> rows_;
    double det_ = 0.0;
    std::array<Point, 2> red_{};
    Unimodular2 to_stored_{{{1, 0}, {0, 1}}};
    std::array<std::array<double, 2>, 2> red_inverse_{};
};

Lattice lattice_reduce(const Lattice& lattice);
double shortest_vector(const Lattice& lattice);

/// Distance between u and v on the torus R^2 / lattice.
double periodic_delta(const Lattice& lattice, Point u, Point v);
/// Shortest representative of d modulo the lattice.
Point minimum_image(const Lattice& lattice, Point d);

/// Calls fn(a, b, w) for every lattice vector w = a*r0 + b*r1 of the reduced
/// basis with |offset + w| <= radius.
template <class Fn>
void for_each_lattice_vector_near(const Lattice& lattice, Point offset, double radius, Fn&& fn);

Disk smallest_enclosing_circle(std::span<const Point> points);

/// Union of angular intervals on the unit circle. Arcs crossing angle 0 are
/// split so that the normalized form is a sorted list of disjoint arcs inside
/// [0, 2pi).
class AngularArcSet {
public:
    struct Arc {
        double start = 0.0;
        double width = 0.0;
        double end() const { return start + width; }
    };

    AngularArcSet() = default;
    explicit AngularArcSet(std::vector<Arc> arcs);

    void add(double start, double width);
    /// Arc centered at `center` with the given half-width.
    void add_centered(double center, double half_width) { add(center - half_width, 2.0 * half_width); }
    void add_full() { full_ = true; }

    bool empty() const { return !full_ && arcs_.empty(); }
    bool full() const { return full_; }
    /// Sorted disjoint arcs; merges touching arcs.
    std::vector<Arc> normalized() const;
    /// Complement of the union, as arcs of positive width.
    std::vector<Arc> gaps() const;
    bool contains(double angle) const;

private:
    std::vector<Arc> arcs_;
    bool full_ = false;
};

bool arc_set_covers_full_circle(const AngularArcSet& arcs, double angular_tol = kAngularTolerance);

/// Wrap an angle into [0, 2pi).
double normalize_angle(double angle);

/// Volume of the unit ball in dimension d.
double unit_ball_volume(int d);

// --- template implementation ---

template <class Fn>
void for_each_lattice_vector_near(const Lattice& lattice, Point offset, double radius, Fn&& fn) {
    const Point r0 = lattice.reduced(0), r1 = lattice.reduced(1);
    // Coefficient bounds from the dual basis: |a| <= |v| * |dual_0|.
    const double det = cross(r0, r1);
    const double dual0 = norm(r1) / std::abs(det);
    const double dual1 = norm(r0) / std::abs(det);
    const auto [ca, cb] = lattice.reduced_coordinates(-offset);
    const auto a_lo = static_cast<std::int64_t>(std::floor(ca - radius * dual0)) - 1;
    const auto a_hi = static_cast<std::int64_t>(std::ceil(ca + radius * dual0)) + 1;
    const auto b_lo = static_cast<std::int64_t>(std::floor(cb - radius * dual1)) - 1;
    const auto b_hi = static_cast<std::int64_t>(std::ceil(cb + radius * dual1)) + 1;
    const double r2 = radius * radius;
    for (std::int64_t a = a_lo; a <= a_hi; ++a) {
        for (std::int64_t b = b_lo; b <= b_hi; ++b) {
            const Point w = r0 * static_cast<double>(a) + r1 * static_cast<double>(b);
            if (norm2(offset + w) <= r2) fn(a, b, w);
        }
    }
}

}  // namespace diskpack
