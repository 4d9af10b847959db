#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diskpack/checker.hpp"
#include "diskpack/periodic.hpp"

namespace diskpack {

struct MoveWeights {
    double insert = 1.0;
    double remove = 2.0;
    double jiggle = 4.0;
    double replace = 0.5;
    double deform = 1.0;
};

struct SearchConfig {
    std::uint64_t seed = 0;
    int iterations = 200;
    MoveWeights move_weights;
    double initial_temperature = 0.02;
    /// Geometric cooling factor per iteration.
    double cooling = 0.99;
    int constraint_n = 1;
    /// Placement grid of the checker inside the loop.
    double resolution = 0.05;
    /// Placement grid of the final validation.
    double final_resolution = 0.02;
    /// Weight of the covering-radius term added to the density in the energy.
    double hole_weight = 0.01;
    double tolerance = kDefaultTolerance;
};

enum class Objective { min_density_packing, min_count_covering };
std::string to_string(Objective o);
Objective parse_objective(const std::string& s);

/// Fills a torus with disks of the given radius by repeated
/// insertion at feasible holes until the packing is 1-saturated. The seed
/// chooses among the feasible holes of a fixed sampling grid.
PeriodicArrangement greedy_saturate(const Lattice& lattice, double radius, std::uint64_t seed);

struct AuditEntry {
    int iteration = 0;
    std::string move;
    std::size_t count_before = 0;
    std::size_t count_after = 0;
    double density_before = 0.0;
    double density_after = 0.0;
    double energy = 0.0;
};

struct OptimizeResult {
    PeriodicArrangement best;
    std::vector<AuditEntry> audit;
    /// Constraint re-check of `best` at the final resolution.
    Verdict final_verdict;
    /// Covering objective: the certified covering status of `best`.
    std::optional<CoverVerdict> final_cover;
};

/// Simulated annealing over jiggle, remove (with local repair), insert,
/// area-preserving lattice deformation and k -> k+1 replacement moves. Every
/// accepted state satisfies the constraint at the loop resolution; the
/// returned state is re-validated at the final resolution.
OptimizeResult optimize(const PeriodicArrangement& initial, Objective objective, const SearchConfig& cfg);

struct AppliedReplacement {
    PeriodicArrangement arrangement;
    ReplacementWitness witness;
};

/// Searches for a replacement of at most k disks by one more and applies it
/// periodically (removed motif classes go, added centers join the motif).
std::optional<AppliedReplacement> replace_k_for_k_plus_1(const PeriodicArrangement& a, int k,
                                                         const CheckConfig& cfg = {});

/// Applies replacements of at most n-1 disks by one more until the checker
/// finds none at the configured resolution.
PeriodicArrangement saturate(const PeriodicArrangement& a, int n, const CheckConfig& cfg = {});

}  // namespace diskpack
