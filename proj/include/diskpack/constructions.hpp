#pragma once

#include <string>
#include <vector>

#include "diskpack/disk_union.hpp"
#include "diskpack/periodic.hpp"

namespace diskpack {

/// Densest lattice packing of unit disks: basis [[2,0],[1,sqrt3]].
PeriodicArrangement hex_packing();

/// Thinnest lattice covering by unit disks, basis [[sqrt3,0],[sqrt3/2,3/2]],
/// with radius 1 + inflation.
PeriodicArrangement hex_covering(double inflation = 0.0);

/// Unit balls at the points of the lattice generated by v_i = a e_i
/// (i < d) and v_d = (1 + sqrt(1 - (a^2/4)(d-1))) e_d + (a/2) sum_{i<d} e_i.
/// Requires 0 < a < 2 / sqrt(d - 1).
PeriodicArrangement sect5_covering(int d, double a);

/// Hexagonal packing cut along a row; the upper half-plane part rolls along
/// the lower one so the two boundary rows stay in contact.
class SplitPacking {
public:
    explicit SplitPacking(double slide);

    double slide() const { return slide_; }
    /// Horizontal and vertical offset between the boundary rows.
    Point boundary_offset() const;
    /// Centers of all unit disks meeting the box.
    std::vector<Point> centers_in_window(const Box& window) const;

private:
    double slide_;
};

SplitPacking split_packing(double slide);

enum class ClusterKind { pack2, pack3, pack7, cover3, cover4, cover7 };
std::string to_string(ClusterKind k);
ClusterKind parse_cluster_kind(const std::string& s);
bool is_packing_kind(ClusterKind k);

/// Figure-style clusters of unit disks. Packing kinds are tangent and only
/// accept scale 2; covering kinds place the outer centers at `scale`.
Cluster make_cluster(ClusterKind kind, double scale = 2.0);

}  // namespace diskpack
