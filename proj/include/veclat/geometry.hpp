#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "veclat/errors.hpp"

namespace veclat {

/// Coordinates of one lattice site, one entry per dimension.
using SiteCoord = std::vector<int>;

/// Periodic lattice with extents L_0..L_{d-1}.
struct LatticeGeometry {
    std::vector<int> extents;

    int dims() const { return static_cast<int>(extents.size()); }
    std::int64_t volume() const;
};

/// Per-dimension lane counts {n_0,...,n_{d-1}}; each a power of 2, with
/// product n = number of sites folded into one Grid-array.
struct SimdLayout {
    std::vector<int> lanes_per_dim;

    int dims() const { return static_cast<int>(lanes_per_dim.size()); }
    int total_lanes() const;
};

/// A validated (geometry, layout) pair with the derived outer extents
/// O_i = L_i / n_i. One outer site owns one Grid-array per degree of freedom;
/// the n sites sharing it form a sublattice with stride O_i in dimension i.
struct DecomposedGeometry {
    LatticeGeometry geometry;
    SimdLayout layout;
    std::vector<int> outer_extents;
    std::int64_t outer_volume = 0;
    int lanes = 0;
};

/// Checks the layout against the geometry and derives the outer extents.
/// Throws NonPowerOfTwoLane, LaneExceedsExtent or DimensionMismatch.
DecomposedGeometry validate(const LatticeGeometry& geometry, const SimdLayout& layout);

/// Maps a site to its (outer index, lane). The inner coordinate is the
/// blocked quotient i_i = x_i / O_i, so lanes of one Grid-array are spread
/// through the lattice with stride O_i. Dimension 0 varies fastest in both
/// indices.
std::pair<std::int64_t, int> site_to_vector(const DecomposedGeometry& dg, const SiteCoord& x);

/// Exact inverse of site_to_vector.
SiteCoord vector_to_site(const DecomposedGeometry& dg, std::int64_t outer_index, int lane);

/// All layouts with product n whose lanes fit the geometry, in lexicographic
/// order. Empty if no layout fits.
std::vector<SimdLayout> enumerate_layouts(const LatticeGeometry& geometry, int n);

/// Lexicographic site index, dimension 0 fastest.
std::int64_t site_index(const LatticeGeometry& geometry, const SiteCoord& x);
SiteCoord site_coord(const LatticeGeometry& geometry, std::int64_t index);

/// Dot-separated text form used by the CLI, e.g. "8.8.8.8".
std::vector<int> parse_extents(const std::string& text);
std::string format_extents(const std::vector<int>& values);

constexpr bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

} // namespace veclat
