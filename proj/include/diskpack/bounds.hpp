#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diskpack/constructions.hpp"
#include "diskpack/disk_union.hpp"

namespace diskpack {

enum class BoundSide { packing_lower, covering_upper };
std::string to_string(BoundSide s);

struct BoundReport {
    int n = 0;
    BoundSide side = BoundSide::packing_lower;
    Cluster cluster;
    /// Dilation area for packings, erosion area for coverings.
    AreaBracket domain_area;
    /// n * pi / domain_area.mid()
    double bound = 0.0;
    std::optional<double> paper_value;
    std::optional<double> abs_err;
    /// Covering clusters only: the scale the bound was evaluated at.
    std::optional<double> scale;
    /// Set when the optimized value misses the published one by > 1e-2 relative
    /// or the area bracket is inconclusive.
    std::string note;
};

/// Published closed-form value for a cluster kind (packing lower bounds and
/// optimized covering upper bounds).
double paper_cluster_bound(ClusterKind kind);

/// Lower bound on the density of |C|-saturated packings from the dilation
/// of a non-overlapping unit-disk cluster.
BoundReport cluster_packing_bound(const Cluster& c, std::optional<double> paper_value = std::nullopt);
BoundReport cluster_packing_bound(ClusterKind kind);

struct ScaleSearchOptions {
    double lo = 0.1;
    double hi = 1.7320508075688772;
    int sweep_points = 50;
    /// Relative bracket width while searching; the final evaluation uses the
    /// options' erosion settings.
    double search_rel_width = 1e-2;
    double scale_tol = 1e-4;
    ErosionOptions final_erosion{1e-3, 2e-5, kDefaultTolerance};
};

/// Upper bound on the density of n-reduced coverings from the erosion of an
/// n-disk covering cluster. With no scale, the scale maximizing the erosion
/// area is searched (sweep, then golden section around the sweep maximum).
BoundReport cluster_covering_bound(ClusterKind kind, std::optional<double> scale = std::nullopt,
                                   const ScaleSearchOptions& opt = {});

/// delta * ((c n^{1/d} - 1) / (c n^{1/d} + 1))^d with c = (V / sigma_d)^{1/d}.
/// Throws std::domain_error when c n^{1/d} <= 1 (vacuous).
double asymptotic_saturation_bound(double delta, double body_volume, int d, long long n);

struct NamedConstant {
    std::string name;
    std::string expression;
    /// Infinity for the unbounded covering constants; NaN for integer-valued
    /// formulas in d (see `expression`).
    double value;
    bool conjectural = false;
    bool infinite = false;
};

std::vector<NamedConstant> known_constants();

}  // namespace diskpack
