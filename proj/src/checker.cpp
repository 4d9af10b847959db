#include "diskpack/checker.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "diskpack/disk_union.hpp"

namespace diskpack {

double CheckConfig::window(double radius) const {
    const double def = (2.0 * n + 1.0) * 2.0 * radius;
    if (!window_radius) return def;
    if (*window_radius < def && !override_window)
        throw std::invalid_argument("window radius below (2n+1) * diameter requires override_window");
    return *window_radius;
}

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::violated: return "violated";
        case VerdictStatus::certified_holds: return "certified-holds";
        case VerdictStatus::no_violation_found: return "no-violation-found";
    }
    return "unknown";
}

std::string to_string(WitnessMode m) { return m == WitnessMode::saturation ? "saturation" : "reduction"; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- max-min-slack placement ----

/// New centers must keep `min_sep` from every obstacle and from each other,
/// and stay inside `container` when one is given.
struct PlacementSpec {
    std::vector<Point> obstacles;
    double min_sep = 2.0;
    std::optional<Disk> container;

    double point_slack(Point x) const {
        double s = kInf;
        for (const Point& o : obstacles) s = std::min(s, distance(x, o) - min_sep);
        if (container) s = std::min(s, container->radius - distance(x, container->center));
        return s;
    }

    double margin(std::span<const Point> pts) const {
        double m = kInf;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            m = std::min(m, point_slack(pts[i]));
            for (std::size_t j = i + 1; j < pts.size(); ++j) m = std::min(m, distance(pts[i], pts[j]) - min_sep);
        }
        return m;
    }
};

struct Candidate {
    Point p;
    double slack;
};

struct Placement {
    std::vector<Point> points;
    double margin = -kInf;
};

/// Coordinate pattern search on the max-min slack, with diagonal moves and a
/// halving step.
void refine(const PlacementSpec& spec, Placement& pl, double step, int iters) {
    static constexpr std::array<Point, 8> kDirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                                 {0.70710678118654752, 0.70710678118654752},
                                                 {-0.70710678118654752, 0.70710678118654752},
                                                 {0.70710678118654752, -0.70710678118654752},
                                                 {-0.70710678118654752, -0.70710678118654752}}};
    pl.margin = spec.margin(pl.points);
    for (int it = 0; it < iters && step > 1e-11; ++it) {
        bool improved = false;
        for (std::size_t i = 0; i < pl.points.size(); ++i) {
            for (const Point& d : kDirs) {
                const Point saved = pl.points[i];
                pl.points[i] = saved + d * step;
                const double m = spec.margin(pl.points);
                if (m > pl.margin) {
                    pl.margin = m;
                    improved = true;
                } else {
                    pl.points[i] = saved;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
}

std::optional<Placement> maximin_placement(const PlacementSpec& spec, std::vector<Candidate> cands, int k,
                                           double grid, int iters, std::uint64_t seed) {
    if (k <= 0 || cands.empty()) return std::nullopt;
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.slack != b.slack) return a.slack > b.slack;
        return a.p < b.p;
    });

    if (k >= 2) {
        // Any feasible point is within grid/sqrt(2) of a candidate, so the
        // candidate cloud bounds every feasible configuration.
        double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
        for (const Candidate& c : cands) {
            xmin = std::min(xmin, c.p.x);
            xmax = std::max(xmax, c.p.x);
            ymin = std::min(ymin, c.p.y);
            ymax = std::max(ymax, c.p.y);
        }
        if (std::hypot(xmax - xmin, ymax - ymin) + 2 * grid < spec.min_sep) return std::nullopt;
    }

    constexpr std::size_t kMaxCandidates = 6000;
    if (cands.size() > kMaxCandidates) {
        std::vector<Candidate> thinned;
        const double stride = static_cast<double>(cands.size()) / kMaxCandidates;
        for (std::size_t i = 0; i < kMaxCandidates; ++i) thinned.push_back(cands[static_cast<std::size_t>(i * stride)]);
        cands = std::move(thinned);
    }

    std::vector<Placement> starts;
    if (k == 1) {
        for (std::size_t i = 0; i < std::min<std::size_t>(3, cands.size()); ++i)
            starts.push_back({{cands[i].p}, cands[i].slack});
    } else if (k == 2) {
        Placement best;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (cands[i].slack <= best.margin) break;
            for (std::size_t j = i + 1; j < cands.size(); ++j) {
                if (cands[j].slack <= best.margin) break;
                const double m = std::min(cands[j].slack, distance(cands[i].p, cands[j].p) - spec.min_sep);
                if (m > best.margin) best = {{cands[i].p, cands[j].p}, m};
            }
        }
        if (best.points.empty()) return std::nullopt;
        starts.push_back(best);
    } else {
        std::mt19937_64 rng(seed);
        std::vector<std::size_t> first;
        for (std::size_t i = 0; i < std::min<std::size_t>(3, cands.size()); ++i) first.push_back(i);
        std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
        for (int i = 0; i < 3; ++i) first.push_back(pick(rng));
        for (const std::size_t f : first) {
            Placement pl{{cands[f].p}, cands[f].slack};
            while (static_cast<int>(pl.points.size()) < k) {
                double best = -kInf;
                Point bp{};
                for (const Candidate& c : cands) {
                    double m = c.slack;
                    for (const Point& q : pl.points) m = std::min(m, distance(c.p, q) - spec.min_sep);
                    if (m > best) {
                        best = m;
                        bp = c.p;
                    }
                }
                pl.points.push_back(bp);
                pl.margin = std::min(pl.margin, best);
            }
            starts.push_back(pl);
        }
        std::sort(starts.begin(), starts.end(), [](const Placement& a, const Placement& b) { return a.margin > b.margin; });
        if (starts.size() > 3) starts.resize(3);
    }

    std::optional<Placement> best;
    for (Placement& s : starts) {
        refine(spec, s, grid, iters);
        if (!best || s.margin > best->margin) best = s;
    }
    return best;
}

/// Grid points of step h (anchored at the origin) within `reach` of some seed.
std::vector<Point> grid_points_near(std::span<const Point> seeds, double reach, double h) {
    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    for (const Point& s : seeds) {
        xmin = std::min(xmin, s.x - reach);
        xmax = std::max(xmax, s.x + reach);
        ymin = std::min(ymin, s.y - reach);
        ymax = std::max(ymax, s.y + reach);
    }
    std::vector<Point> out;
    const auto i0 = static_cast<std::int64_t>(std::floor(xmin / h)), i1 = static_cast<std::int64_t>(std::ceil(xmax / h));
    const auto j0 = static_cast<std::int64_t>(std::floor(ymin / h)), j1 = static_cast<std::int64_t>(std::ceil(ymax / h));
    for (std::int64_t i = i0; i <= i1; ++i) {
        for (std::int64_t j = j0; j <= j1; ++j) {
            const Point p{static_cast<double>(i) * h, static_cast<double>(j) * h};
            for (const Point& s : seeds) {
                if (distance(p, s) <= reach) {
                    out.push_back(p);
                    break;
                }
            }
        }
    }
    return out;
}

// ---- subset enumeration ----

/// Translation classes of `size`-element sets of disk copies containing the
/// anchor as their lexicographically smallest member, whose members are
/// linked by steps shorter than `link` and lie within `window` of the anchor.
std::vector<std::vector<DiskCopy>> anchored_subsets(const PeriodicArrangement& a, int anchor, int size, double window,
                                                    double link) {
    const DiskCopy root{anchor, 0, 0};
    if (size == 1) return {{root}};
    const Point c0 = a.center(root);
    std::vector<DiskCopy> pool;
    for (const DiskCopy& c : a.copies_near(c0, std::min(window, link * (size - 1)))) {
        if (c.motif < anchor) continue;
        if (c.motif == anchor && std::make_pair(c.a, c.b) <= std::make_pair<std::int64_t, std::int64_t>(0, 0)) continue;
        pool.push_back(c);
    }
    std::sort(pool.begin(), pool.end());

    std::vector<std::vector<DiskCopy>> out;
    std::vector<DiskCopy> current{root};
    auto connected = [&](const std::vector<DiskCopy>& s) {
        std::vector<Point> pts;
        for (const DiskCopy& c : s) pts.push_back(a.center(c));
        std::vector<bool> seen(pts.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (!seen[j] && distance(pts[i], pts[j]) < link) {
                    seen[j] = true;
                    ++count;
                    stack.push_back(j);
                }
            }
        }
        return count == pts.size();
    };
    auto recurse = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<int>(current.size()) == size) {
            if (connected(current)) out.push_back(current);
            return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
            current.push_back(pool[i]);
            self(self, i + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 0);
    return out;
}

/// Centers of all copies within `range` of any seed, excluding `skip`.
std::vector<Point> neighbor_centers(const PeriodicArrangement& a, std::span<const Point> seeds, double range,
                                    std::span<const DiskCopy> skip) {
    std::set<DiskCopy> ids;
    for (const Point& s : seeds)
        for (const DiskCopy& c : a.copies_near(s, range)) ids.insert(c);
    for (const DiskCopy& c : skip) ids.erase(c);
    std::vector<Point> out;
    out.reserve(ids.size());
    for (const DiskCopy& c : ids) out.push_back(a.center(c));
    return out;
}

// ---- saturation ----

std::optional<ReplacementWitness> try_saturation_replacement(const PeriodicArrangement& a,
                                                             const std::vector<DiskCopy>& removed,
                                                             const CheckConfig& cfg, std::uint64_t seed) {
    const double r = a.radius();
    const double h = cfg.placement_grid;
    std::vector<Point> rc;
    for (const DiskCopy& c : removed) rc.push_back(a.center(c));

    PlacementSpec spec;
    spec.min_sep = 2 * r;
    spec.obstacles = neighbor_centers(a, rc, 4 * r + 2 * h, removed);

    std::vector<Candidate> cands;
    for (const Point& p : grid_points_near(rc, 2 * r + h, h)) {
        const double s = spec.point_slack(p);
        if (s >= -h) cands.push_back({p, s});
    }
    const int k = static_cast<int>(removed.size()) + 1;
    auto best = maximin_placement(spec, std::move(cands), k, h, cfg.refinement_iters, seed);
    if (!best || !(best->margin > 10 * cfg.tolerance)) return std::nullopt;
    return ReplacementWitness{removed, best->points, best->margin};
}

// ---- reduction ----

/// Certified check that every point within `r` of a removed center is within
/// `cover_r` of some cover center. Returns the smallest certified slack.
std::optional<double> certify_reduction_cover(std::span<const Point> removed, double r, std::span<const Point> cover,
                                              double cover_r, double tol) {
    struct Cell {
        Point c;
        double half;
    };
    const double h0 = r / 8;
    std::vector<Cell> cells;
    for (const Point& p : grid_points_near(removed, r + h0, h0)) cells.push_back({p, h0 / 2});
    std::vector<Cell> next;
    double min_slack = kInf;
    std::size_t processed = 0;
    constexpr std::size_t kMaxCells = 4'000'000;
    const double floor_half = 1e-10 * r;
    while (!cells.empty()) {
        next.clear();
        for (const Cell& cell : cells) {
            if (++processed > kMaxCells) return std::nullopt;
            const double rho = cell.half * std::numbers::sqrt2;
            double to_removed = kInf;
            for (const Point& q : removed) to_removed = std::min(to_removed, distance(cell.c, q));
            if (to_removed - rho > r) continue;
            double d = kInf;
            for (const Point& q : cover) d = std::min(d, distance(cell.c, q));
            if (d + rho <= cover_r - tol) {
                min_slack = std::min(min_slack, cover_r - d - rho);
                continue;
            }
            if (d > cover_r + 10 * tol && to_removed <= r) return std::nullopt;
            if (cell.half < floor_half) return std::nullopt;
            const double q = cell.half / 2;
            for (const double dx : {-q, q})
                for (const double dy : {-q, q}) next.push_back({{cell.c.x + dx, cell.c.y + dy}, q});
        }
        std::swap(cells, next);
    }
    return min_slack;
}

/// Farthest-point seeding, then alternating nearest-center assignment and
/// enclosing-circle recentering.
std::vector<Disk> cover_by_groups(std::span<const Point> pts, int groups) {
    std::vector<Point> centers{pts.front()};
    while (static_cast<int>(centers.size()) < groups) {
        double best = -1;
        Point bp = pts.front();
        for (const Point& p : pts) {
            double d = kInf;
            for (const Point& c : centers) d = std::min(d, distance(p, c));
            if (d > best) {
                best = d;
                bp = p;
            }
        }
        centers.push_back(bp);
    }
    std::vector<Disk> disks;
    double best_worst = kInf;
    std::vector<Disk> best_disks;
    for (int round = 0; round < 20; ++round) {
        std::vector<std::vector<Point>> members(groups);
        for (const Point& p : pts) {
            std::size_t arg = 0;
            double d = kInf;
            for (std::size_t g = 0; g < centers.size(); ++g) {
                const double dg = distance(p, centers[g]);
                if (dg < d) {
                    d = dg;
                    arg = g;
                }
            }
            members[arg].push_back(p);
        }
        disks.clear();
        double worst = 0;
        for (int g = 0; g < groups; ++g) {
            if (members[g].empty()) {
                disks.push_back({centers[g], 0});
                continue;
            }
            disks.push_back(smallest_enclosing_circle(members[g]));
            worst = std::max(worst, disks.back().radius);
        }
        if (worst < best_worst) {
            best_worst = worst;
            best_disks = disks;
        } else {
            break;
        }
        for (int g = 0; g < groups; ++g) centers[g] = disks[g].center;
    }
    return best_disks;
}

std::optional<ReplacementWitness> try_reduction_replacement(const PeriodicArrangement& a,
                                                            const std::vector<DiskCopy>& removed, double cover_r,
                                                            const CheckConfig& cfg) {
    const double r = a.radius();
    const double h = cfg.placement_grid;
    const double tol = cfg.tolerance;
    std::vector<Point> rc;
    for (const DiskCopy& c : removed) rc.push_back(a.center(c));
    const std::vector<Point> others = neighbor_centers(a, rc, r + cover_r + h, removed);

    std::vector<Point> uncovered;
    for (const Point& p : grid_points_near(rc, r, h)) {
        bool covered = false;
        for (const Point& o : others) {
            if (distance(p, o) <= cover_r + tol) {
                covered = true;
                break;
            }
        }
        if (!covered) uncovered.push_back(p);
    }

    const int replacements = static_cast<int>(removed.size()) - 1;
    std::vector<Point> added;
    if (uncovered.empty()) {
        added.assign(rc.begin(), rc.begin() + replacements);
    } else {
        if (replacements == 0) return std::nullopt;
        const auto disks = cover_by_groups(uncovered, replacements);
        for (const Disk& d : disks) {
            if (d.radius > cover_r) return std::nullopt;
            added.push_back(d.center);
        }
    }
    std::vector<Point> cover = others;
    cover.insert(cover.end(), added.begin(), added.end());
    const auto slack = certify_reduction_cover(rc, r, cover, cover_r, tol);
    if (!slack || !(*slack > 0)) return std::nullopt;
    return ReplacementWitness{removed, added, *slack};
}

}  // namespace

// ---- public checks ----

Verdict check_saturation(const PeriodicArrangement& a, const CheckConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("check_saturation: n must be positive");
    if (!is_packing(a, cfg.tolerance).certified) throw std::invalid_argument("check_saturation: input is not a packing");
    const double r = a.radius();
    const double window = cfg.window(r);
    Verdict out;
    out.n = cfg.n;
    out.radius_used = r;

    // One extra disk fits iff the center set does not cover the plane at radius 2r.
    const CoverVerdict cov = covering_check(a, 2 * r, 0.0, cfg.tolerance);
    if (cov.status == CoverStatusKind::certified_no) {
        const HoleBracket hole = deepest_hole_bracket(a, 1e-9 * r);
        Point p = *cov.witness;
        if (a.nearest_center_distance(hole.location) > a.nearest_center_distance(p)) p = hole.location;
        out.status = VerdictStatus::violated;
        out.witness = ReplacementWitness{{}, {p}, a.nearest_center_distance(p) - 2 * r};
        out.resolution = cov.resolution;
        return out;
    }
    if (cfg.n == 1) {
        out.status = cov.status == CoverStatusKind::certified_yes ? VerdictStatus::certified_holds
                                                                  : VerdictStatus::no_violation_found;
        out.resolution = cov.resolution;
        return out;
    }

    out.resolution = cfg.placement_grid;
    // Free regions of far-apart removal groups cannot interact beyond 6r.
    const double link = 6 * r;
    std::uint64_t counter = 0;
    for (int k = 1; k <= cfg.n - 1; ++k) {
        for (int anchor = 0; anchor < static_cast<int>(a.size()); ++anchor) {
            for (const auto& subset : anchored_subsets(a, anchor, k, window, link)) {
                const std::uint64_t seed = splitmix64(cfg.seed ^ splitmix64(++counter));
                if (auto w = try_saturation_replacement(a, subset, cfg, seed)) {
                    out.status = VerdictStatus::violated;
                    out.witness = std::move(w);
                    return out;
                }
            }
        }
    }
    out.status = VerdictStatus::no_violation_found;
    return out;
}

Verdict check_reduction(const PeriodicArrangement& a, const CheckConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("check_reduction: n must be positive");
    const double r = a.radius();
    const double cover_r = r * (1 + kReductionInflation);
    if (covering_check(a, cover_r, 0.0, cfg.tolerance).status != CoverStatusKind::certified_yes)
        throw std::invalid_argument("check_reduction: input is not a certified covering at the inflated radius");
    const double window = cfg.window(r);
    Verdict out;
    out.n = cfg.n;
    out.radius_used = cover_r;
    out.resolution = cfg.placement_grid;
    const double link = r + cover_r + 2 * cover_r;
    for (int k = 1; k <= cfg.n; ++k) {
        for (int anchor = 0; anchor < static_cast<int>(a.size()); ++anchor) {
            for (const auto& subset : anchored_subsets(a, anchor, k, window, link)) {
                if (auto w = try_reduction_replacement(a, subset, cover_r, cfg)) {
                    out.status = VerdictStatus::violated;
                    out.witness = std::move(w);
                    return out;
                }
            }
        }
    }
    out.status = VerdictStatus::no_violation_found;
    return out;
}

bool verify_witness(const PeriodicArrangement& a, const ReplacementWitness& w, WitnessMode mode, double tol) {
    for (const DiskCopy& c : w.removed)
        if (c.motif < 0 || static_cast<std::size_t>(c.motif) >= a.size())
            throw std::invalid_argument("verify_witness: motif index out of range");
    const double r = a.radius();
    std::vector<Point> rc;
    for (const DiskCopy& c : w.removed) rc.push_back(a.center(c));

    if (mode == WitnessMode::saturation) {
        if (w.added.size() != w.removed.size() + 1) return false;
        double margin = kInf;
        for (std::size_t i = 0; i < w.added.size(); ++i)
            for (std::size_t j = i + 1; j < w.added.size(); ++j)
                margin = std::min(margin, distance(w.added[i], w.added[j]) - 2 * r);
        std::set<DiskCopy> skip(w.removed.begin(), w.removed.end());
        for (const Point& p : w.added) {
            for (const DiskCopy& c : a.copies_near(p, 2 * r + std::max(0.0, w.margin) + 1.0)) {
                if (skip.contains(c)) continue;
                margin = std::min(margin, distance(p, a.center(c)) - 2 * r);
            }
        }
        return margin > 0 && margin >= w.margin - tol;
    }

    if (w.added.size() + 1 != w.removed.size()) return false;
    const double cover_r = r * (1 + kReductionInflation);
    std::vector<Point> cover = neighbor_centers(a, rc, r + cover_r + 1.0, w.removed);
    cover.insert(cover.end(), w.added.begin(), w.added.end());
    const auto slack = certify_reduction_cover(rc, r, cover, cover_r, tol);
    return slack && *slack > 0;
}

std::optional<std::vector<Point>> free_placement_search(std::span<const Point> fixed, const Disk& region, int k,
                                                        double radius, double grid, int iters, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("free_placement_search: k must be positive");
    if (!(grid > 0) || !(radius > 0)) throw std::invalid_argument("free_placement_search: bad grid or radius");
    const double reach = region.radius - radius;
    if (reach < 0) return std::nullopt;
    PlacementSpec spec;
    spec.min_sep = 2 * radius;
    spec.container = Disk{region.center, reach};
    for (const Point& f : fixed)
        if (distance(f, region.center) <= reach + 2 * radius + grid) spec.obstacles.push_back(f);

    std::vector<Candidate> cands;
    const auto n = static_cast<std::int64_t>(std::floor(reach / grid));
    for (std::int64_t i = -n; i <= n; ++i) {
        for (std::int64_t j = -n; j <= n; ++j) {
            const Point p = region.center + Point{static_cast<double>(i) * grid, static_cast<double>(j) * grid};
            const double s = spec.point_slack(p);
            if (s >= -grid) cands.push_back({p, s});
        }
    }
    auto best = maximin_placement(spec, std::move(cands), k, grid, iters, seed);
    if (!best || !(best->margin > 0)) return std::nullopt;
    return best->points;
}

}  // namespace diskpack
