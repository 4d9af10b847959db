#include "diskpack/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace diskpack {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

void attach_paper_value(BoundReport& r, std::optional<double> paper) {
    r.paper_value = paper;
    if (paper) r.abs_err = std::abs(r.bound - *paper);
}

}  // namespace

std::string to_string(BoundSide s) { return s == BoundSide::packing_lower ? "packing-lower" : "covering-upper"; }

double paper_cluster_bound(ClusterKind kind) {
    switch (kind) {
        case ClusterKind::pack2: return 3 * kPi / (3 * kSqrt3 + 8 * kPi);
        case ClusterKind::pack3: return 3 * kPi / (4 * kSqrt3 + 6 * kPi);
        case ClusterKind::pack7: return 7 * kPi / (12 * kSqrt3 + 8 * kPi);
        case ClusterKind::cover3: return 6 * kPi / (2 * kSqrt3 - kPi);
        case ClusterKind::cover4: return 4 * kPi / (4 - kPi);
        case ClusterKind::cover7: return 7 * kPi / (6 * kSqrt3 - 2 * kPi);
    }
    throw std::invalid_argument("unknown cluster kind");
}

BoundReport cluster_packing_bound(const Cluster& c, std::optional<double> paper_value) {
    if (c.min_pairwise_distance() < 2 - 1e-9) throw std::invalid_argument("cluster_packing_bound: disks overlap");
    BoundReport r;
    r.n = static_cast<int>(c.size());
    r.side = BoundSide::packing_lower;
    r.cluster = c;
    r.domain_area = dilated_union_area(c, 1.0);
    r.bound = r.n * kPi / r.domain_area.mid();
    attach_paper_value(r, paper_value);
    return r;
}

BoundReport cluster_packing_bound(ClusterKind kind) {
    if (!is_packing_kind(kind)) throw std::invalid_argument("cluster_packing_bound: not a packing cluster");
    return cluster_packing_bound(make_cluster(kind), paper_cluster_bound(kind));
}

BoundReport cluster_covering_bound(ClusterKind kind, std::optional<double> scale, const ScaleSearchOptions& opt) {
    if (is_packing_kind(kind)) throw std::invalid_argument("cluster_covering_bound: not a covering cluster");
    constexpr double kStartStep = 0.05;

    double best_scale;
    if (scale) {
        best_scale = *scale;
    } else {
        if (opt.sweep_points < 3 || !(opt.hi > opt.lo)) throw std::invalid_argument("cluster_covering_bound: bad sweep");
        ErosionOptions coarse = opt.final_erosion;
        coarse.rel_width = opt.search_rel_width;
        auto area_at = [&](double s) { return erosion_area(make_cluster(kind, s), kStartStep, coarse).mid(); };

        // The interval ends can be tangency-critical scales (sqrt 3 makes the
        // flower's circles concurrent), so they are pulled inward slightly.
        const double inset = 1e-6 * (opt.hi - opt.lo);
        std::vector<double> xs, ys;
        for (int i = 0; i < opt.sweep_points; ++i) {
            xs.push_back(std::clamp(opt.lo + (opt.hi - opt.lo) * i / (opt.sweep_points - 1), opt.lo + inset,
                                    opt.hi - inset));
            ys.push_back(area_at(xs.back()));
        }
        const auto arg = static_cast<std::size_t>(std::max_element(ys.begin(), ys.end()) - ys.begin());
        best_scale = xs[arg];

        // Unimodal up to noise at the search resolution: no significant rise
        // after the first significant fall.
        const double noise = opt.search_rel_width * std::max(ys[arg], 0.01);
        bool fell = false, unimodal = true;
        for (std::size_t i = 1; i < ys.size(); ++i) {
            if (ys[i] < ys[i - 1] - noise) fell = true;
            if (fell && ys[i] > ys[i - 1] + noise) unimodal = false;
        }
        if (unimodal) {
            double a = xs[arg == 0 ? 0 : arg - 1];
            double b = xs[std::min(arg + 1, xs.size() - 1)];
            const double g = (std::sqrt(5.0) - 1) / 2;
            double x1 = b - g * (b - a), x2 = a + g * (b - a);
            double f1 = area_at(x1), f2 = area_at(x2);
            while (b - a > opt.scale_tol) {
                if (f1 < f2) {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + g * (b - a);
                    f2 = area_at(x2);
                } else {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - g * (b - a);
                    f1 = area_at(x1);
                }
            }
            double cand = f1 >= f2 ? x1 : x2;
            if (std::max(f1, f2) >= ys[arg]) best_scale = cand;
        }
    }

    BoundReport r;
    r.side = BoundSide::covering_upper;
    r.cluster = make_cluster(kind, best_scale);
    r.n = static_cast<int>(r.cluster.size());
    r.scale = best_scale;
    r.domain_area = erosion_area(r.cluster, kStartStep, opt.final_erosion);
    r.bound = r.domain_area.mid() > 0 ? r.n * kPi / r.domain_area.mid() : std::numeric_limits<double>::infinity();
    if (!scale) {
        attach_paper_value(r, paper_cluster_bound(kind));
        if (*r.abs_err > 1e-2 * *r.paper_value) r.note = "optimized bound misses the published value by more than 1e-2 relative";
    }
    if (!r.domain_area.conclusive) {
        if (!r.note.empty()) r.note += "; ";
        r.note += "erosion bracket inconclusive at the resolution floor";
    }
    return r;
}

double asymptotic_saturation_bound(double delta, double body_volume, int d, long long n) {
    if (d < 1 || n < 1) throw std::invalid_argument("asymptotic_saturation_bound: d and n must be positive");
    if (!(body_volume > 0) || !(delta > 0)) throw std::invalid_argument("asymptotic_saturation_bound: bad inputs");
    const double c = std::pow(body_volume / unit_ball_volume(d), 1.0 / d);
    const double x = c * std::pow(static_cast<double>(n), 1.0 / d);
    if (!(x > 1)) throw std::domain_error("asymptotic_saturation_bound: c * n^(1/d) <= 1, bound is vacuous");
    return delta * std::pow((x - 1) / (x + 1), d);
}

std::vector<NamedConstant> known_constants() {
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {
        {"Delta_1(B^2)", "pi/(6*sqrt(3))", kPi / (6 * kSqrt3), false, false},
        {"delta(B^2)", "pi/sqrt(12)", kPi / std::sqrt(12.0), false, false},
        {"theta(B^2)", "2*pi/sqrt(27)", 2 * kPi / std::sqrt(27.0), false, false},
        {"Theta_1(B^2)", "infinity", inf, false, true},
        {"Theta_2(B^2)", "infinity", inf, false, true},
        {"Delta_2(B^2)", "pi*(3-sqrt(5))/sqrt(27)", kPi * (3 - std::sqrt(5.0)) / std::sqrt(27.0), true, false},
        {"N_c(B^d)", "d+1", nan, false, false},
        {"l(B^d) upper", "d+1", nan, false, false},
        {"l(K) upper", "N_c(K)+1", nan, false, false},
    };
}

}  // namespace diskpack
