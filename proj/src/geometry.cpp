#include "diskpack/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace diskpack {

namespace {

double matrix_determinant(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (m[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

}  // namespace

Lattice::Lattice(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("lattice basis is empty");
    for (const auto& r : rows_) {
        if (r.size() != rows_.size()) throw std::invalid_argument("lattice basis must be square");
        for (double v : r)
            if (!std::isfinite(v)) throw std::invalid_argument("lattice basis has non-finite entries");
    }
    det_ = matrix_determinant(rows_);
    if (!(std::abs(det_) > 0.0) || !std::isfinite(det_))
        throw std::invalid_argument("lattice basis is not invertible");
    if (dim() != 2) return;

    Point b1{rows_[0][0], rows_[0][1]}, b2{rows_[1][0], rows_[1][1]};
    Unimodular2 u{{{1, 0}, {0, 1}}};
    // Lagrange reduction. Stops as soon as |mu| <= 1/2 so an already reduced
    // basis is returned untouched.
    for (int guard = 0; guard < 10000; ++guard) {
        if (norm2(b1) > norm2(b2)) {
            std::swap(b1, b2);
            std::swap(u[0], u[1]);
        }
        const double ratio = dot(b1, b2) / norm2(b1);
        if (std::abs(ratio) <= 0.5) break;
        const auto mu = static_cast<std::int64_t>(std::llround(ratio));
        b2 -= b1 * static_cast<double>(mu);
        u[1][0] -= mu * u[0][0];
        u[1][1] -= mu * u[0][1];
    }
    red_ = {b1, b2};
    to_stored_ = u;
    const double d = cross(b1, b2);
    // Inverse of the row matrix [b1; b2].
    red_inverse_ = {{{b2.y / d, -b1.y / d}, {-b2.x / d, b1.x / d}}};
}

Lattice Lattice::planar(Point b1, Point b2) { return Lattice({{b1.x, b1.y}, {b2.x, b2.y}}); }

void Lattice::require_planar() const {
    if (dim() != 2) throw std::invalid_argument("operation requires a two-dimensional lattice");
}

Point Lattice::generator(int i) const {
    require_planar();
    return {rows_.at(i)[0], rows_.at(i)[1]};
}

Point Lattice::reduced(int i) const {
    require_planar();
    return red_.at(i);
}

Point Lattice::vector(std::int64_t a, std::int64_t b) const {
    return generator(0) * static_cast<double>(a) + generator(1) * static_cast<double>(b);
}

std::pair<std::int64_t, std::int64_t> Lattice::to_stored(std::int64_t a, std::int64_t b) const {
    return {a * to_stored_[0][0] + b * to_stored_[1][0], a * to_stored_[0][1] + b * to_stored_[1][1]};
}

std::pair<double, double> Lattice::reduced_coordinates(Point p) const {
    // p = a*r0 + b*r1  =>  (a, b) = p * inverse
    return {p.x * red_inverse_[0][0] + p.y * red_inverse_[1][0],
            p.x * red_inverse_[0][1] + p.y * red_inverse_[1][1]};
}

Lattice Lattice::scaled(double s) const {
    auto rows = rows_;
    for (auto& r : rows)
        for (double& v : r) v *= s;
    return Lattice(std::move(rows));
}

Lattice Lattice::rotated(double angle) const {
    require_planar();
    const RigidMotion rot{angle, {}};
    return planar(rot.rotate(generator(0)), rot.rotate(generator(1)));
}

Lattice lattice_reduce(const Lattice& lattice) {
    if (lattice.dim() != 2) throw std::invalid_argument("lattice_reduce requires dim = 2");
    return lattice.reduced_lattice();
}

double shortest_vector(const Lattice& lattice) { return norm(lattice.reduced(0)); }

Point minimum_image(const Lattice& lattice, Point d) {
    const Point r0 = lattice.reduced(0), r1 = lattice.reduced(1);
    const auto [ca, cb] = lattice.reduced_coordinates(d);
    const double a0 = std::round(ca), b0 = std::round(cb);
    Point base = d - r0 * a0 - r1 * b0;
    Point best = base;
    double best2 = norm2(base);
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const Point cand = base - r0 * static_cast<double>(i) - r1 * static_cast<double>(j);
            const double c2 = norm2(cand);
            if (c2 < best2) {
                best2 = c2;
                best = cand;
            }
        }
    }
    return best;
}

double periodic_delta(const Lattice& lattice, Point u, Point v) { return norm(minimum_image(lattice, u - v)); }

// ---- smallest enclosing circle (randomized incremental, fixed shuffle seed) ----

namespace {

constexpr double kEnclosingSlack = 1.0 + 1e-14;

bool encloses(const Disk& c, Point p) { return c.radius >= 0 && distance(c.center, p) <= c.radius * kEnclosingSlack + 1e-300; }

Disk diameter_circle(Point a, Point b) {
    const Point c = (a + b) / 2.0;
    return {c, std::max(distance(c, a), distance(c, b))};
}

Disk circumcircle(Point a, Point b, Point c) {
    const double ox = (std::min({a.x, b.x, c.x}) + std::max({a.x, b.x, c.x})) / 2;
    const double oy = (std::min({a.y, b.y, c.y}) + std::max({a.y, b.y, c.y})) / 2;
    const double ax = a.x - ox, ay = a.y - oy;
    const double bx = b.x - ox, by = b.y - oy;
    const double cx = c.x - ox, cy = c.y - oy;
    const double d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2;
    if (d == 0) return {{}, -1};
    const double x = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d;
    const double y = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d;
    const Point p{ox + x, oy + y};
    return {p, std::max({distance(p, a), distance(p, b), distance(p, c)})};
}

Disk circle_two_known(std::span<const Point> pts, std::size_t end, Point p, Point q) {
    const Disk circ = diameter_circle(p, q);
    Disk left{{}, -1}, right{{}, -1};
    const Point pq = q - p;
    for (std::size_t i = 0; i < end; ++i) {
        const Point r = pts[i];
        if (encloses(circ, r)) continue;
        const double side = cross(pq, r - p);
        const Disk c = circumcircle(p, q, r);
        if (c.radius < 0) continue;
        if (side > 0 && (left.radius < 0 || cross(pq, c.center - p) > cross(pq, left.center - p)))
            left = c;
        else if (side < 0 && (right.radius < 0 || cross(pq, c.center - p) < cross(pq, right.center - p)))
            right = c;
    }
    if (left.radius < 0 && right.radius < 0) return circ;
    if (left.radius < 0) return right;
    if (right.radius < 0) return left;
    return left.radius <= right.radius ? left : right;
}

Disk circle_one_known(std::span<const Point> pts, std::size_t end, Point p) {
    Disk c{p, 0};
    for (std::size_t i = 0; i < end; ++i) {
        const Point q = pts[i];
        if (!encloses(c, q)) c = (c.radius == 0) ? diameter_circle(p, q) : circle_two_known(pts, i + 1, p, q);
    }
    return c;
}

}  // namespace

Disk smallest_enclosing_circle(std::span<const Point> points) {
    if (points.empty()) throw std::invalid_argument("smallest_enclosing_circle: empty input");
    std::vector<Point> pts(points.begin(), points.end());
    std::mt19937_64 rng(0x5eedULL);
    std::shuffle(pts.begin(), pts.end(), rng);
    Disk c{{}, -1};
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (c.radius < 0 || !encloses(c, pts[i])) c = circle_one_known(pts, i + 1, pts[i]);
    return c;
}

double unit_ball_volume(int d) {
    if (d < 1) throw std::invalid_argument("unit_ball_volume: dimension must be positive");
    return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

// ---- angular arc sets ----

double normalize_angle(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

AngularArcSet::AngularArcSet(std::vector<Arc> arcs) {
    for (const Arc& a : arcs) add(a.start, a.width);
}

void AngularArcSet::add(double start, double width) {
    if (!(width > 0)) return;
    if (width >= kTwoPi) {
        full_ = true;
        return;
    }
    const double s = normalize_angle(start);
    const double e = s + width;
    if (e > kTwoPi) {
        arcs_.push_back({s, kTwoPi - s});
        arcs_.push_back({0.0, e - kTwoPi});
    } else {
        arcs_.push_back({s, width});
    }
}

std::vector<AngularArcSet::Arc> AngularArcSet::normalized() const {
    if (full_) return {{0.0, kTwoPi}};
    std::vector<Arc> sorted = arcs_;
    std::sort(sorted.begin(), sorted.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
    std::vector<Arc> out;
    for (const Arc& a : sorted) {
        if (!out.empty() && a.start <= out.back().end()) {
            const double e = std::max(out.back().end(), a.end());
            out.back().width = e - out.back().start;
        } else {
            out.push_back(a);
        }
    }
    return out;
}

std::vector<AngularArcSet::Arc> AngularArcSet::gaps() const {
    if (full_) return {};
    const auto arcs = normalized();
    if (arcs.empty()) return {{0.0, kTwoPi}};
    std::vector<Arc> out;
    for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
        const double w = arcs[i + 1].start - arcs[i].end();
        if (w > 0) out.push_back({arcs[i].end(), w});
    }
    // Wrap-around gap; may cross angle 0.
    const double wrap = kTwoPi - arcs.back().end() + arcs.front().start;
    if (wrap > 0) out.push_back({normalize_angle(arcs.back().end()), wrap});
    return out;
}

bool AngularArcSet::contains(double angle) const {
    if (full_) return true;
    const double a = normalize_angle(angle);
    return std::any_of(arcs_.begin(), arcs_.end(), [a](const Arc& arc) { return a >= arc.start && a <= arc.end(); });
}

bool arc_set_covers_full_circle(const AngularArcSet& arcs, double angular_tol) {
    if (arcs.full()) return true;
    const auto g = arcs.gaps();
    return std::all_of(g.begin(), g.end(), [angular_tol](const AngularArcSet::Arc& a) { return a.width <= angular_tol; });
}

}  // namespace diskpack
