#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diskpack/periodic.hpp"

namespace diskpack {

/// Reduction checks run against the covering with every radius multiplied by
/// (1 + kReductionInflation); the extremal coverings are tangency-critical.
inline constexpr double kReductionInflation = 1e-6;

struct CheckConfig {
    int n = 1;
    /// Defaults to (2n + 1) * 2 * radius.
    std::optional<double> window_radius;
    /// Permit a window smaller than the default.
    bool override_window = false;
    double placement_grid = 0.02;
    int refinement_iters = 60;
    std::uint64_t seed = 0;
    double tolerance = kDefaultTolerance;

    double window(double radius) const;
};

enum class VerdictStatus { violated, certified_holds, no_violation_found };
enum class WitnessMode { saturation, reduction };

std::string to_string(VerdictStatus s);
std::string to_string(WitnessMode m);

/// A local replacement: `removed` disk copies are deleted and disks centered
/// at `added` are inserted.
struct ReplacementWitness {
    std::vector<DiskCopy> removed;
    std::vector<Point> added;
    double margin = 0.0;
};

struct Verdict {
    VerdictStatus status = VerdictStatus::no_violation_found;
    std::optional<ReplacementWitness> witness;
    double resolution = 0.0;
    /// Radius the predicate was evaluated at (inflated for reductions).
    double radius_used = 0.0;
    int n = 1;
};

/// Is the packing n-saturated? n = 1 is decided exactly through the covering
/// radius of the center set; larger n can only be refuted.
Verdict check_saturation(const PeriodicArrangement& a, const CheckConfig& cfg);

/// Is the covering n-reduced? Only refutations are possible.
Verdict check_reduction(const PeriodicArrangement& a, const CheckConfig& cfg);

/// Re-derives the witness from scratch against the arrangement.
bool verify_witness(const PeriodicArrangement& a, const ReplacementWitness& w, WitnessMode mode,
                    double tol = kDefaultTolerance);

/// Places k disks of the given radius inside `region`, clear of `fixed`, with
/// the largest minimum slack found. Returns nothing when no placement with
/// positive slack is found at this grid resolution.
std::optional<std::vector<Point>> free_placement_search(std::span<const Point> fixed, const Disk& region, int k,
                                                        double radius, double grid, int iters, std::uint64_t seed);

}  // namespace diskpack
