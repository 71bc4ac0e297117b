#include "veclat/geometry.hpp"

#include <algorithm>
#include <charconv>

namespace veclat {

std::int64_t LatticeGeometry::volume() const {
    std::int64_t v = 1;
    for (int e : extents)
        v *= e;
    return v;
}

int SimdLayout::total_lanes() const {
    int n = 1;
    for (int l : lanes_per_dim)
        n *= l;
    return n;
}

DecomposedGeometry validate(const LatticeGeometry& geometry, const SimdLayout& layout) {
    const int d = geometry.dims();
    if (d < 1)
        fail(errc::dimension_mismatch, "geometry needs at least one dimension");
    if (layout.dims() != d)
        fail(errc::dimension_mismatch, "layout has " + std::to_string(layout.dims()) +
                                           " entries, geometry has " + std::to_string(d));
    DecomposedGeometry dg;
    dg.geometry = geometry;
    dg.layout = layout;
    dg.outer_extents.resize(static_cast<std::size_t>(d));
    dg.outer_volume = 1;
    dg.lanes = 1;
    for (int i = 0; i < d; ++i) {
        const int L = geometry.extents[static_cast<std::size_t>(i)];
        const int n = layout.lanes_per_dim[static_cast<std::size_t>(i)];
        if (L < 1)
            fail(errc::dimension_mismatch, "extent " + std::to_string(L) + " in dimension " +
                                               std::to_string(i));
        if (!is_power_of_two(n))
            fail(errc::non_power_of_two_lane,
                 "lane count " + std::to_string(n) + " in dimension " + std::to_string(i));
        if (L % n != 0)
            fail(errc::lane_exceeds_extent, "lane count " + std::to_string(n) +
                                                " does not divide extent " + std::to_string(L) +
                                                " in dimension " + std::to_string(i));
        dg.outer_extents[static_cast<std::size_t>(i)] = L / n;
        dg.outer_volume *= L / n;
        dg.lanes *= n;
    }
    return dg;
}

std::pair<std::int64_t, int> site_to_vector(const DecomposedGeometry& dg, const SiteCoord& x) {
    const int d = dg.geometry.dims();
    if (static_cast<int>(x.size()) != d)
        fail(errc::coord_out_of_range, "coordinate has " + std::to_string(x.size()) +
                                           " entries, geometry has " + std::to_string(d));
    std::int64_t outer = 0;
    std::int64_t outer_stride = 1;
    int lane = 0;
    int lane_stride = 1;
    for (int i = 0; i < d; ++i) {
        const int xi = x[static_cast<std::size_t>(i)];
        const int Li = dg.geometry.extents[static_cast<std::size_t>(i)];
        const int Oi = dg.outer_extents[static_cast<std::size_t>(i)];
        if (xi < 0 || xi >= Li)
            fail(errc::coord_out_of_range, "coordinate " + std::to_string(xi) +
                                               " outside [0, " + std::to_string(Li) +
                                               ") in dimension " + std::to_string(i));
        outer += outer_stride * (xi % Oi);
        lane += lane_stride * (xi / Oi);
        outer_stride *= Oi;
        lane_stride *= dg.layout.lanes_per_dim[static_cast<std::size_t>(i)];
    }
    return {outer, lane};
}

SiteCoord vector_to_site(const DecomposedGeometry& dg, std::int64_t outer_index, int lane) {
    if (outer_index < 0 || outer_index >= dg.outer_volume)
        fail(errc::index_out_of_range, "outer index " + std::to_string(outer_index));
    if (lane < 0 || lane >= dg.lanes)
        fail(errc::index_out_of_range, "lane " + std::to_string(lane));
    const int d = dg.geometry.dims();
    SiteCoord x(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const int Oi = dg.outer_extents[static_cast<std::size_t>(i)];
        const int ni = dg.layout.lanes_per_dim[static_cast<std::size_t>(i)];
        const int oi = static_cast<int>(outer_index % Oi);
        const int ii = lane % ni;
        outer_index /= Oi;
        lane /= ni;
        x[static_cast<std::size_t>(i)] = oi + Oi * ii;
    }
    return x;
}

namespace {

void enumerate_rec(const LatticeGeometry& geometry, int dim, int remaining,
                   std::vector<int>& current, std::vector<SimdLayout>& out) {
    const int d = geometry.dims();
    if (dim == d) {
        if (remaining == 1)
            out.push_back(SimdLayout{current});
        return;
    }
    const int L = geometry.extents[static_cast<std::size_t>(dim)];
    for (int n = 1; n <= remaining; n *= 2) {
        if (remaining % n != 0)
            break;
        if (L % n != 0)
            continue;
        current.push_back(n);
        enumerate_rec(geometry, dim + 1, remaining / n, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<SimdLayout> enumerate_layouts(const LatticeGeometry& geometry, int n) {
    if (!is_power_of_two(n))
        fail(errc::non_power_of_two_lane, "lane total " + std::to_string(n));
    std::vector<SimdLayout> out;
    std::vector<int> current;
    enumerate_rec(geometry, 0, n, current, out);
    return out;
}

std::int64_t site_index(const LatticeGeometry& geometry, const SiteCoord& x) {
    const int d = geometry.dims();
    if (static_cast<int>(x.size()) != d)
        fail(errc::coord_out_of_range, "coordinate rank mismatch");
    std::int64_t idx = 0;
    std::int64_t stride = 1;
    for (int i = 0; i < d; ++i) {
        const int Li = geometry.extents[static_cast<std::size_t>(i)];
        const int xi = x[static_cast<std::size_t>(i)];
        if (xi < 0 || xi >= Li)
            fail(errc::coord_out_of_range, "coordinate " + std::to_string(xi));
        idx += stride * xi;
        stride *= Li;
    }
    return idx;
}

SiteCoord site_coord(const LatticeGeometry& geometry, std::int64_t index) {
    if (index < 0 || index >= geometry.volume())
        fail(errc::index_out_of_range, "site index " + std::to_string(index));
    const int d = geometry.dims();
    SiteCoord x(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const int Li = geometry.extents[static_cast<std::size_t>(i)];
        x[static_cast<std::size_t>(i)] = static_cast<int>(index % Li);
        index /= Li;
    }
    return x;
}

std::vector<int> parse_extents(const std::string& text) {
    std::vector<int> values;
    const char* p = text.data();
    const char* end = p + text.size();
    while (p < end) {
        int v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{} || v <= 0)
            fail(errc::invalid_config, "bad extent list '" + text + "'");
        values.push_back(v);
        p = next;
        if (p == end)
            break;
        if (*p != '.')
            fail(errc::invalid_config, "bad extent list '" + text + "'");
        ++p;
        if (p == end)
            fail(errc::invalid_config, "bad extent list '" + text + "'");
    }
    if (values.empty())
        fail(errc::invalid_config, "empty extent list");
    return values;
}

std::string format_extents(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += '.';
        out += std::to_string(values[i]);
    }
    return out;
}

} // namespace veclat
