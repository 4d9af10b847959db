#pragma once

#include <string>

#include "diskpack/disk_union.hpp"
#include "diskpack/periodic.hpp"

namespace diskpack {

inline constexpr double kPixelsPerUnit = 50.0;

/// SVG of every disk copy meeting the window, clipped to it, with the
/// reduced fundamental cell at the origin outlined. Throws on an empty window.
std::string render_svg(const PeriodicArrangement& a, const Box& window);

/// SVG of a cluster of unit disks; the window defaults to the bounding box.
std::string render_svg(const Cluster& c, const Box& window);
std::string render_svg(const Cluster& c);

/// Number of disks drawn by render_svg for this window.
std::size_t rendered_disk_count(const PeriodicArrangement& a, const Box& window);

}  // namespace diskpack
