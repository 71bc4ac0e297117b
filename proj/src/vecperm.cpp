#include "veclat/vecperm.hpp"

namespace veclat {

ScalarKind parse_scalar_kind(const std::string& text) {
    if (text == "real-single")
        return ScalarKind::real_single;
    if (text == "real-double")
        return ScalarKind::real_double;
    if (text == "complex-single")
        return ScalarKind::complex_single;
    if (text == "complex-double")
        return ScalarKind::complex_double;
    fail(errc::invalid_config, "unknown scalar kind '" + text + "'");
}

ShiftImpl parse_shift_impl(const std::string& text) {
    if (text == "split_rotate")
        return ShiftImpl::split_rotate;
    if (text == "permute")
        return ShiftImpl::permute;
    fail(errc::invalid_config, "unknown shift implementation '" + text + "'");
}

SplitRotateParams shift_permutation_params(const DecomposedGeometry& dg, int dim, int carry,
                                           ScalarKind kind) {
    const int d = dg.geometry.dims();
    if (dim < 0 || dim >= d)
        fail(errc::dim_out_of_range, "dimension " + std::to_string(dim) + " of " +
                                         std::to_string(d));
    const int ew = elem_width(kind);
    const int n_dim = dg.layout.lanes_per_dim[static_cast<std::size_t>(dim)];
    carry = ((carry % n_dim) + n_dim) % n_dim;

    std::int64_t low = ew; // real elements per step of the inner coordinate of dim
    for (int j = 0; j < dim; ++j)
        low *= dg.layout.lanes_per_dim[static_cast<std::size_t>(j)];
    int high = 1;
    for (int j = dim + 1; j < d; ++j)
        high *= dg.layout.lanes_per_dim[static_cast<std::size_t>(j)];

    SplitRotateParams p;
    p.s = high;
    p.r = carry * low;
    p.w = static_cast<std::int64_t>(dg.lanes) * ew / high;
    return p;
}

bool permute_path_valid(const SimdLayout& layout) {
    for (int n : layout.lanes_per_dim)
        if (n > 2)
            return false;
    return true;
}

ShiftPlan make_shift_plan(const DecomposedGeometry& dg, int dim, std::int64_t displacement,
                          ScalarKind kind) {
    const int d = dg.geometry.dims();
    if (dim < 0 || dim >= d)
        fail(errc::dim_out_of_range, "dimension " + std::to_string(dim) + " of " +
                                         std::to_string(d));
    const int L = dg.geometry.extents[static_cast<std::size_t>(dim)];
    const int O = dg.outer_extents[static_cast<std::size_t>(dim)];
    const int n = dg.layout.lanes_per_dim[static_cast<std::size_t>(dim)];
    const int delta = static_cast<int>(((displacement % L) + L) % L);

    ShiftPlan plan;
    plan.dim = dim;
    plan.displacement = delta;
    plan.slices.resize(static_cast<std::size_t>(O));
    for (int o = 0; o < O; ++o) {
        auto& slice = plan.slices[static_cast<std::size_t>(o)];
        slice.src_coord = (o + delta) % O;
        slice.carry = ((o + delta) / O) % n;
        slice.params = shift_permutation_params(dg, dim, slice.carry, kind);
    }
    return plan;
}

} // namespace veclat
