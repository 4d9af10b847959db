#include "diskpack/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "diskpack/disk_union.hpp"

namespace diskpack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Target radius the center set must cover: 2r for saturated packings, r for
/// coverings.
double cover_target(const PeriodicArrangement& a, Objective obj) {
    return obj == Objective::min_density_packing ? 2 * a.radius() : a.radius();
}

/// Points of a regular grid over the reduced cell whose clearance from every
/// center exceeds `clearance`, sorted lexicographically.
std::vector<Point> feasible_holes(const PeriodicArrangement& a, double clearance) {
    const Lattice& L = a.lattice();
    const double spacing = a.radius() / 2;
    const int gu = std::max(8, static_cast<int>(std::ceil(norm(L.reduced(0)) / spacing)));
    const int gv = std::max(8, static_cast<int>(std::ceil(norm(L.reduced(1)) / spacing)));
    std::vector<Point> out;
    for (int i = 0; i < gu; ++i) {
        for (int j = 0; j < gv; ++j) {
            const Point p = a.cell_point((i + 0.5) / gu, (j + 0.5) / gv);
            if (a.nearest_center_distance(p) > clearance) out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<PeriodicArrangement> try_motif(const PeriodicArrangement& a, std::vector<Point> motif) {
    try {
        return a.with_motif(std::move(motif));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

struct Evaluator {
    Objective objective;
    const SearchConfig& cfg;

    bool feasible(const PeriodicArrangement& a, double resolution) const {
        const double tol = cfg.tolerance;
        if (objective == Objective::min_density_packing) {
            if (!is_packing(a, tol).certified) return false;
            if (covering_check(a, 2 * a.radius(), 0.0, tol).status != CoverStatusKind::certified_yes) return false;
            if (cfg.constraint_n <= 1) return true;
            CheckConfig cc;
            cc.n = cfg.constraint_n;
            cc.placement_grid = resolution;
            cc.seed = cfg.seed;
            cc.tolerance = tol;
            return check_saturation(a, cc).status != VerdictStatus::violated;
        }
        if (covering_check(a, a.radius(), 0.0, tol).status != CoverStatusKind::certified_yes) return false;
        if (covering_check(a, a.radius() * (1 + kReductionInflation), 0.0, tol).status != CoverStatusKind::certified_yes)
            return false;
        CheckConfig cc;
        cc.n = std::max(1, cfg.constraint_n);
        cc.placement_grid = resolution;
        cc.seed = cfg.seed;
        cc.tolerance = tol;
        return check_reduction(a, cc).status != VerdictStatus::violated;
    }

    double hole(const PeriodicArrangement& a) const { return deepest_hole_bracket(a, 1e-3 * a.radius()).upper; }

    double energy(const PeriodicArrangement& a) const {
        return density(a) + cfg.hole_weight * hole(a) / cover_target(a, objective);
    }
};

/// Pattern search on the covering radius of the center set over the motif
/// points nearest `focus`, keeping the packing condition for packings.
std::optional<PeriodicArrangement> repair(const PeriodicArrangement& a, Point focus, Objective obj,
                                          const Evaluator& ev, int budget) {
    const double target = cover_target(a, obj);
    const double r = a.radius();
    std::vector<Point> motif = a.motif();
    std::vector<std::size_t> order(motif.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return periodic_delta(a.lattice(), motif[i], focus) < periodic_delta(a.lattice(), motif[j], focus);
    });
    if (order.size() > 6) order.resize(6);

    auto score = [&](const std::vector<Point>& m) {
        auto cand = try_motif(a, m);
        if (!cand) return kInf;
        if (obj == Objective::min_density_packing && !is_packing(*cand, ev.cfg.tolerance).certified) return kInf;
        return ev.hole(*cand);
    };
    double best = score(motif);
    static constexpr std::array<Point, 8> kDirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                                 {0.70710678118654752, 0.70710678118654752},
                                                 {-0.70710678118654752, 0.70710678118654752},
                                                 {0.70710678118654752, -0.70710678118654752},
                                                 {-0.70710678118654752, -0.70710678118654752}}};
    double step = 0.5 * r;
    int evals = 0;
    while (best >= target - 1e-3 * r && step > 1e-3 * r && evals < budget) {
        bool improved = false;
        for (std::size_t i : order) {
            for (const Point& d : kDirs) {
                const Point saved = motif[i];
                motif[i] = saved + d * step;
                const double s = score(motif);
                ++evals;
                if (s < best) {
                    best = s;
                    improved = true;
                } else {
                    motif[i] = saved;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    if (!(best < target - 1e-3 * r)) return std::nullopt;
    return try_motif(a, motif);
}

/// Global minimax relaxation: every motif point moves to the center of the
/// smallest circle enclosing the grid samples of its periodic Voronoi cell.
/// Returns the state with the smallest sampled covering radius once that is
/// below the target; the caller checks it exactly.
std::optional<PeriodicArrangement> relax(const PeriodicArrangement& a, std::vector<Point> motif, Objective obj,
                                         int rounds) {
    const Lattice& L = a.lattice();
    const Point r0 = L.reduced(0), r1 = L.reduced(1);
    auto wrap = [&](Point p) {
        const auto [u, v] = L.reduced_coordinates(p);
        return p - r0 * std::floor(u) - r1 * std::floor(v);
    };
    const double target = cover_target(a, obj);
    std::vector<Point> best_motif;
    double best = kInf;
    std::vector<std::vector<Point>> cells(motif.size());
    std::vector<Point> images, samples;
    // Converge on a coarse grid first; only the fine grid decides `best`.
    for (const double spacing : {0.2 * a.radius(), 0.07 * a.radius()}) {
        const int gu = std::max(16, static_cast<int>(std::ceil(norm(r0) / spacing)));
        const int gv = std::max(16, static_cast<int>(std::ceil(norm(r1) / spacing)));
        samples.clear();
        for (int i = 0; i < gu; ++i)
            for (int j = 0; j < gv; ++j) samples.push_back(a.cell_point((i + 0.5) / gu, (j + 0.5) / gv));
        const bool fine = spacing < 0.1 * a.radius();
        double level_best = kInf;
        int stale = 0;
        for (int round = 0; round < rounds && stale < 8; ++round) {
            // Samples and motif both lie in the reduced cell, so the nearest
            // translate is among the 3x3 neighbouring images.
            images.clear();
            for (Point& m : motif) {
                m = wrap(m);
                for (int i = -1; i <= 1; ++i)
                    for (int j = -1; j <= 1; ++j)
                        images.push_back(m + r0 * static_cast<double>(i) + r1 * static_cast<double>(j));
            }
            for (auto& c : cells) c.clear();
            double radius = 0;
            for (const Point& s : samples) {
                std::size_t arg = 0;
                double d2 = kInf;
                for (std::size_t k = 0; k < images.size(); ++k) {
                    const double e = norm2(s - images[k]);
                    if (e < d2) {
                        d2 = e;
                        arg = k;
                    }
                }
                cells[arg / 9].push_back(s - images[arg]);
                radius = std::max(radius, d2);
            }
            radius = std::sqrt(radius);
            if (radius < level_best - 1e-4 * target) {
                level_best = radius;
                stale = 0;
                if (fine && radius < best) {
                    best = radius;
                    best_motif = motif;
                }
            } else {
                ++stale;
            }
            for (std::size_t k = 0; k < motif.size(); ++k)
                if (!cells[k].empty()) motif[k] += smallest_enclosing_circle(cells[k]).center;
        }
    }
    // Sampling misses up to a cell half-diagonal; the polish closes small gaps.
    if (!(best < target * 1.02)) return std::nullopt;
    return try_motif(a, std::move(best_motif));
}

/// The m points (k/m, k*s/m) mod 1 in lattice coordinates, with the step s
/// giving the largest minimum separation: an evenly spread starting motif.
std::vector<Point> cyclic_motif(const Lattice& L, int m) {
    const Point g0 = L.generator(0), g1 = L.generator(1);
    auto point = [&](int k, int s) {
        const double u = static_cast<double>(k) / m;
        const double v = static_cast<double>((static_cast<long long>(k) * s) % m) / m;
        return g0 * u + g1 * v;
    };
    int best_s = 1;
    double best = -1;
    for (int s = 1; s < m; ++s) {
        double sep = kInf;
        for (int k = 1; k < m; ++k) sep = std::min(sep, norm(minimum_image(L, point(k, s))));
        if (sep > best + 1e-12) {
            best = sep;
            best_s = s;
        }
    }
    std::vector<Point> out;
    for (int k = 0; k < m; ++k) out.push_back(point(k, best_s));
    return out;
}

/// Minimax descent on the exact deepest hole: the three centers nearest to it
/// step toward it while that shrinks the hole.
PeriodicArrangement polish(const PeriodicArrangement& a, int iters) {
    const Lattice& L = a.lattice();
    const double r = a.radius();
    PeriodicArrangement cur = a;
    HoleBracket h = deepest_hole_bracket(cur, 1e-4 * r);
    double step = 0.05 * r;
    for (int it = 0; it < iters && step > 1e-4 * r; ++it) {
        std::vector<Point> m = cur.motif();
        std::vector<std::pair<double, std::size_t>> near;
        for (std::size_t k = 0; k < m.size(); ++k) near.emplace_back(norm(minimum_image(L, h.location - m[k])), k);
        std::sort(near.begin(), near.end());
        for (std::size_t q = 0; q < std::min<std::size_t>(3, near.size()); ++q) {
            const Point v = minimum_image(L, h.location - m[near[q].second]);
            if (norm(v) > 0) m[near[q].second] += v * (step / norm(v));
        }
        auto cand = try_motif(cur, std::move(m));
        if (!cand) break;
        const HoleBracket h2 = deepest_hole_bracket(*cand, 1e-4 * r);
        if (h2.upper < h.upper) {
            cur = *cand;
            h = h2;
            step *= 1.2;
        } else {
            step *= 0.5;
        }
    }
    return cur;
}

/// Area-preserving random linear deformation applied to lattice and motif.
PeriodicArrangement deform(const PeriodicArrangement& a, double eps, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-eps, eps);
    const double p = u(rng), q = u(rng), s = u(rng);
    // M = [[1+p, q], [s, 1-p]] scaled to unit determinant.
    double m00 = 1 + p, m01 = q, m10 = s, m11 = 1 - p;
    const double det = m00 * m11 - m01 * m10;
    if (!(det > 0.1)) return a;
    const double k = 1 / std::sqrt(det);
    m00 *= k;
    m01 *= k;
    m10 *= k;
    m11 *= k;
    auto map = [&](Point v) { return Point{v.x * m00 + v.y * m10, v.x * m01 + v.y * m11}; };
    const Lattice L = Lattice::planar(map(a.lattice().generator(0)), map(a.lattice().generator(1)));
    std::vector<Point> motif;
    for (const Point& m : a.motif()) motif.push_back(map(m));
    return PeriodicArrangement(L, std::move(motif), a.radius());
}

}  // namespace

std::string to_string(Objective o) {
    return o == Objective::min_density_packing ? "min-density-packing" : "min-count-covering";
}

Objective parse_objective(const std::string& s) {
    if (s == "min-density-packing") return Objective::min_density_packing;
    if (s == "min-count-covering") return Objective::min_count_covering;
    throw std::invalid_argument("unknown objective: " + s);
}

PeriodicArrangement greedy_saturate(const Lattice& lattice, double radius, std::uint64_t seed) {
    if (!(radius > 0)) throw std::invalid_argument("greedy_saturate: radius must be positive");
    if (shortest_vector(lattice) < 2 * radius - kDefaultTolerance)
        throw std::invalid_argument("greedy_saturate: lattice too small for one disk");
    PeriodicArrangement a(lattice, {{0, 0}}, radius);
    std::mt19937_64 rng(seed);
    const double clearance = 2 * radius * (1 + 1e-6);
    for (int guard = 0; guard < 100000; ++guard) {
        const CoverVerdict cov = covering_check(a, 2 * radius);
        if (cov.status == CoverStatusKind::certified_yes) return a;
        std::optional<Point> next;
        const auto holes = feasible_holes(a, clearance);
        if (!holes.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, holes.size() - 1);
            next = holes[pick(rng)];
        } else if (cov.status == CoverStatusKind::certified_no) {
            next = *cov.witness;
        } else {
            const HoleBracket h = deepest_hole_bracket(a, 1e-9 * radius);
            if (h.lower > 2 * radius + 10 * kDefaultTolerance) next = h.location;
        }
        if (!next) return a;  // tangency-critical: no hole with positive clearance
        std::vector<Point> motif = a.motif();
        motif.push_back(*next);
        a = a.with_motif(std::move(motif));
    }
    throw std::runtime_error("greedy_saturate: did not terminate");
}

std::optional<AppliedReplacement> replace_k_for_k_plus_1(const PeriodicArrangement& a, int k, const CheckConfig& cfg) {
    if (k < 0) throw std::invalid_argument("replace_k_for_k_plus_1: k must be nonnegative");
    CheckConfig cc = cfg;
    cc.n = k + 1;
    const Verdict v = check_saturation(a, cc);
    if (v.status != VerdictStatus::violated || !v.witness) return std::nullopt;
    std::set<int> gone;
    for (const DiskCopy& c : v.witness->removed) gone.insert(c.motif);
    std::vector<Point> motif;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!gone.contains(static_cast<int>(i))) motif.push_back(a.motif()[i]);
    for (const Point& p : v.witness->added) motif.push_back(p);
    if (motif.size() <= a.size()) return std::nullopt;
    auto next = try_motif(a, std::move(motif));
    if (!next || !is_packing(*next, cfg.tolerance).certified) return std::nullopt;
    return AppliedReplacement{*next, *v.witness};
}

PeriodicArrangement saturate(const PeriodicArrangement& a, int n, const CheckConfig& cfg) {
    if (n < 1) throw std::invalid_argument("saturate: n must be positive");
    PeriodicArrangement cur = a;
    for (int guard = 0; guard < 10000; ++guard) {
        auto rep = replace_k_for_k_plus_1(cur, n - 1, cfg);
        if (!rep) return cur;
        cur = rep->arrangement;
    }
    throw std::runtime_error("saturate: did not terminate");
}

OptimizeResult optimize(const PeriodicArrangement& initial, Objective objective, const SearchConfig& cfg) {
    const MoveWeights& w = cfg.move_weights;
    const std::array<double, 5> weights{w.insert, w.remove, w.jiggle, w.replace, w.deform};
    if (std::none_of(weights.begin(), weights.end(), [](double x) { return x > 0; }) ||
        std::any_of(weights.begin(), weights.end(), [](double x) { return x < 0 || !std::isfinite(x); }))
        throw std::invalid_argument("optimize: move weights must be nonnegative with one positive");
    if (!(cfg.cooling > 0 && cfg.cooling < 1)) throw std::invalid_argument("optimize: cooling must lie in (0, 1)");
    if (cfg.iterations < 0) throw std::invalid_argument("optimize: negative iteration count");

    const Evaluator ev{objective, cfg};
    if (!ev.feasible(initial, cfg.final_resolution))
        throw std::invalid_argument("optimize: initial arrangement does not satisfy the constraint");

    OptimizeResult result{initial, {}, {}, std::nullopt};
    auto finalize = [&](const PeriodicArrangement& best) {
        result.best = best;
        CheckConfig cc;
        cc.n = std::max(1, cfg.constraint_n);
        cc.placement_grid = cfg.final_resolution;
        cc.seed = cfg.seed;
        cc.tolerance = cfg.tolerance;
        if (objective == Objective::min_density_packing) {
            result.final_verdict = check_saturation(best, cc);
        } else {
            result.final_verdict = check_reduction(best, cc);
            result.final_cover = covering_check(best, best.radius(), 0.0, cfg.tolerance);
        }
    };
    if (cfg.iterations == 0) {
        finalize(initial);
        return result;
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::discrete_distribution<int> pick_move(weights.begin(), weights.end());
    static constexpr std::array<const char*, 5> kNames{"insert", "remove", "jiggle", "replace", "deform"};

    PeriodicArrangement current = initial;
    double e_current = ev.energy(current);
    // Accepted states ranked by density for the final validation pass.
    std::vector<std::pair<double, PeriodicArrangement>> ranked{{density(current), current}};
    double temperature = cfg.initial_temperature;
    const double r = initial.radius();

    for (int it = 0; it < cfg.iterations; ++it, temperature *= cfg.cooling) {
        const int move = pick_move(rng);
        std::optional<PeriodicArrangement> cand;
        switch (move) {
            case 0: {  // insert
                const double clearance = objective == Objective::min_density_packing ? 2 * r * (1 + 1e-6) : 0.0;
                const auto holes = feasible_holes(current, clearance);
                if (holes.empty()) break;
                std::uniform_int_distribution<std::size_t> pick(0, holes.size() - 1);
                std::vector<Point> m = current.motif();
                m.push_back(holes[pick(rng)]);
                cand = try_motif(current, std::move(m));
                break;
            }
            case 1: {  // remove, then repair the hole locally
                if (current.size() < 2) break;
                std::uniform_int_distribution<std::size_t> pick(0, current.size() - 1);
                const std::size_t i = pick(rng);
                std::vector<Point> m = current.motif();
                const Point focus = m[i];
                m.erase(m.begin() + static_cast<std::ptrdiff_t>(i));
                if (auto base = try_motif(current, std::move(m))) {
                    cand = repair(*base, focus, objective, ev, 160);
                    // Local repair failed: spread all remaining points instead.
                    // Local repair failed: spread all remaining points, from
                    // their current places and from an even cyclic layout.
                    if (!cand || !ev.feasible(*cand, cfg.resolution))
                        if (auto spread = relax(*base, base->motif(), objective, 60)) cand = polish(*spread, 120);
                    if ((!cand || !ev.feasible(*cand, cfg.resolution)) && base->size() > 1) {
                        const auto even = cyclic_motif(base->lattice(), static_cast<int>(base->size()));
                        if (auto spread = relax(*base, even, objective, 60)) cand = polish(*spread, 120);
                    }
                }
                break;
            }
            case 2: {  // jiggle
                std::uniform_int_distribution<std::size_t> pick(0, current.size() - 1);
                std::vector<Point> m = current.motif();
                const std::size_t i = pick(rng);
                const double rho = 0.3 * r * std::sqrt(unit(rng)), phi = kTwoPi * unit(rng);
                m[i] += unit_vector(phi) * rho;
                cand = try_motif(current, std::move(m));
                break;
            }
            case 3: {  // replace k disks by k + 1
                CheckConfig cc;
                cc.placement_grid = cfg.resolution;
                cc.seed = cfg.seed + static_cast<std::uint64_t>(it);
                cc.tolerance = cfg.tolerance;
                if (objective == Objective::min_density_packing)
                    if (auto rep = replace_k_for_k_plus_1(current, std::max(0, cfg.constraint_n), cc))
                        cand = rep->arrangement;
                break;
            }
            case 4: {  // area-preserving lattice deformation
                PeriodicArrangement d = deform(current, 0.05, rng);
                const double floor = objective == Objective::min_density_packing ? 2 * r * 0.9 : 0.5 * r;
                if (shortest_vector(d.lattice()) >= floor) cand = d;
                break;
            }
        }
        if (!cand || !ev.feasible(*cand, cfg.resolution)) continue;
        const double e = ev.energy(*cand);
        const double delta = e - e_current;
        if (delta > 0 && !(temperature > 0 && unit(rng) < std::exp(-delta / temperature))) continue;

        result.audit.push_back({it, kNames[static_cast<std::size_t>(move)], current.size(), cand->size(),
                                density(current), density(*cand), e});
        current = *cand;
        e_current = e;
        ranked.emplace_back(density(current), current);
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        if (ranked.size() > 16) ranked.erase(ranked.begin() + 16, ranked.end());
    }

    for (const auto& [dens, state] : ranked) {
        if (ev.feasible(state, cfg.final_resolution)) {
            finalize(state);
            return result;
        }
    }
    finalize(initial);
    return result;
}

}  // namespace diskpack
