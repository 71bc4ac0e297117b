#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <ostream>
#include <span>
#include <type_traits>
#include <vector>

#include "veclat/checksum.hpp"
#include "veclat/errors.hpp"
#include "veclat/geometry.hpp"
#include "veclat/rng.hpp"
#include "veclat/thread_pool.hpp"
#include "veclat/vecperm.hpp"

namespace veclat {

/// Lattice field with m degrees of freedom per site, stored as Grid-arrays:
/// lane l of Grid-array (outer, c) holds dof c of the site
/// vector_to_site(outer, l). Storage is dof-major within an outer site
/// (m consecutive Grid-arrays), outer sites lexicographic with dimension 0
/// fastest.
template <typename T>
class LatticeField {
    static_assert(std::is_floating_point_v<T>);

public:
    LatticeField() = default;

    LatticeField(DecomposedGeometry dg, int dof, ScalarKind kind)
        : dg_(std::move(dg)), dof_(dof), kind_(kind) {
        if (dof < 1)
            fail(errc::shape_mismatch, "dof " + std::to_string(dof));
        if (is_single(kind) != (sizeof(T) == 4))
            fail(errc::shape_mismatch, "scalar kind does not match element type");
        vl_ = static_cast<std::int64_t>(dg_.lanes) * elem_width(kind);
        data_.assign(static_cast<std::size_t>(dg_.outer_volume * dof_ * vl_), T{});
    }

    const DecomposedGeometry& dg() const { return dg_; }
    int dof() const { return dof_; }
    ScalarKind kind() const { return kind_; }
    /// Real elements per Grid-array (lanes * elem_width).
    std::int64_t vl() const { return vl_; }
    std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }

    std::span<T> array(std::int64_t outer, int c) {
        return {data_.data() + (outer * dof_ + c) * vl_, static_cast<std::size_t>(vl_)};
    }
    std::span<const T> array(std::int64_t outer, int c) const {
        return {data_.data() + (outer * dof_ + c) * vl_, static_cast<std::size_t>(vl_)};
    }

    std::span<T> raw() { return data_; }
    std::span<const T> raw() const { return data_; }

    bool same_shape(const LatticeField& other) const {
        return dg_.geometry.extents == other.dg_.geometry.extents &&
               dg_.layout.lanes_per_dim == other.dg_.layout.lanes_per_dim &&
               dof_ == other.dof_ && kind_ == other.kind_;
    }

private:
    DecomposedGeometry dg_;
    int dof_ = 0;
    ScalarKind kind_ = ScalarKind::real_double;
    std::int64_t vl_ = 0;
    std::vector<T> data_;
};

/// Layout-free reference form: V * m values in lexicographic site order,
/// dimension 0 fastest. All oracle operations work on this representation.
template <typename T>
struct ScalarField {
    LatticeGeometry geometry;
    int dof = 0;
    ScalarKind kind = ScalarKind::real_double;
    std::vector<T> data; // V * dof * elem_width real elements

    std::span<T> site(std::int64_t index) {
        const int ew = elem_width(kind);
        return {data.data() + index * dof * ew, static_cast<std::size_t>(dof * ew)};
    }
    std::span<const T> site(std::int64_t index) const {
        const int ew = elem_width(kind);
        return {data.data() + index * dof * ew, static_cast<std::size_t>(dof * ew)};
    }
};

template <typename T>
ScalarField<T> new_scalar_field(const LatticeGeometry& geometry, int dof, ScalarKind kind) {
    ScalarField<T> sf;
    sf.geometry = geometry;
    sf.dof = dof;
    sf.kind = kind;
    sf.data.assign(static_cast<std::size_t>(geometry.volume() * dof * elem_width(kind)), T{});
    return sf;
}

template <typename T>
LatticeField<T> new_field(const DecomposedGeometry& dg, int dof, ScalarKind kind) {
    return LatticeField<T>(dg, dof, kind);
}

/// Random field, uniform in [-1, 1) per real component. Values are drawn
/// from one SplitMix64 stream in canonical (site, dof, component) order, so
/// the field contents depend on the seed and geometry only, never on the
/// SIMD layout.
template <typename T>
LatticeField<T> new_field_random(const DecomposedGeometry& dg, int dof, ScalarKind kind,
                                 std::uint64_t seed) {
    LatticeField<T> f(dg, dof, kind);
    const int ew = elem_width(kind);
    const std::int64_t volume = dg.geometry.volume();
    SplitMix64 rng(seed);
    SiteCoord x(static_cast<std::size_t>(dg.geometry.dims()), 0);
    for (std::int64_t s = 0; s < volume; ++s) {
        auto [outer, lane] = site_to_vector(dg, x);
        for (int c = 0; c < dof; ++c) {
            auto arr = f.array(outer, c);
            for (int k = 0; k < ew; ++k)
                arr[static_cast<std::size_t>(lane * ew + k)] =
                    static_cast<T>(rng.uniform_pm1());
        }
        // advance lexicographic coordinate, dimension 0 fastest
        for (int i = 0; i < dg.geometry.dims(); ++i) {
            if (++x[static_cast<std::size_t>(i)] < dg.geometry.extents[static_cast<std::size_t>(i)])
                break;
            x[static_cast<std::size_t>(i)] = 0;
        }
    }
    return f;
}

/// Writes the ew real components of dof c at site x.
template <typename T>
void poke_site(LatticeField<T>& f, const SiteCoord& x, std::span<const T> values) {
    const int ew = elem_width(f.kind());
    if (static_cast<std::int64_t>(values.size()) != static_cast<std::int64_t>(f.dof()) * ew)
        fail(errc::shape_mismatch, "poke value count " + std::to_string(values.size()));
    auto [outer, lane] = site_to_vector(f.dg(), x);
    for (int c = 0; c < f.dof(); ++c) {
        auto arr = f.array(outer, c);
        for (int k = 0; k < ew; ++k)
            arr[static_cast<std::size_t>(lane * ew + k)] = values[static_cast<std::size_t>(c * ew + k)];
    }
}

template <typename T>
std::vector<T> peek_site(const LatticeField<T>& f, const SiteCoord& x) {
    const int ew = elem_width(f.kind());
    auto [outer, lane] = site_to_vector(f.dg(), x);
    std::vector<T> values(static_cast<std::size_t>(f.dof()) * ew);
    for (int c = 0; c < f.dof(); ++c) {
        auto arr = f.array(outer, c);
        for (int k = 0; k < ew; ++k)
            values[static_cast<std::size_t>(c * ew + k)] = arr[static_cast<std::size_t>(lane * ew + k)];
    }
    return values;
}

/// Lane-layout transpose into canonical site order.
template <typename T>
ScalarField<T> to_scalar(const LatticeField<T>& f) {
    ScalarField<T> sf = new_scalar_field<T>(f.dg().geometry, f.dof(), f.kind());
    const int ew = elem_width(f.kind());
    const std::int64_t volume = f.dg().geometry.volume();
    for (std::int64_t outer = 0; outer < f.dg().outer_volume; ++outer) {
        for (int lane = 0; lane < f.dg().lanes; ++lane) {
            const std::int64_t s = site_index(f.dg().geometry, vector_to_site(f.dg(), outer, lane));
            auto dst = sf.site(s);
            for (int c = 0; c < f.dof(); ++c) {
                auto src = f.array(outer, c);
                for (int k = 0; k < ew; ++k)
                    dst[static_cast<std::size_t>(c * ew + k)] =
                        src[static_cast<std::size_t>(lane * ew + k)];
            }
        }
    }
    (void)volume;
    return sf;
}

template <typename T>
LatticeField<T> from_scalar(const ScalarField<T>& sf, const DecomposedGeometry& dg) {
    if (sf.geometry.extents != dg.geometry.extents)
        fail(errc::geometry_mismatch, "scalar field extents " + format_extents(sf.geometry.extents));
    LatticeField<T> f(dg, sf.dof, sf.kind);
    const int ew = elem_width(sf.kind);
    for (std::int64_t outer = 0; outer < dg.outer_volume; ++outer) {
        for (int lane = 0; lane < dg.lanes; ++lane) {
            const std::int64_t s = site_index(dg.geometry, vector_to_site(dg, outer, lane));
            auto src = sf.site(s);
            for (int c = 0; c < sf.dof; ++c) {
                auto dst = f.array(outer, c);
                for (int k = 0; k < ew; ++k)
                    dst[static_cast<std::size_t>(lane * ew + k)] =
                        src[static_cast<std::size_t>(c * ew + k)];
            }
        }
    }
    return f;
}

/// Circular shift: g(x) = f((x + displacement * e_dim) mod L). Interior
/// destination slices are plain Grid-array copies; slices whose shift
/// crosses a sublattice boundary apply the planned lane rearrangement,
/// either as split_rotate (any layout) or as the pairwise-swap permute
/// (layout entries <= 2 only).
template <typename T>
void cshift_into(LatticeField<T>& g, const LatticeField<T>& f, int dim,
                 std::int64_t displacement, ShiftImpl impl = ShiftImpl::split_rotate,
                 ThreadPool* pool = nullptr) {
    if (!g.same_shape(f))
        fail(errc::geometry_mismatch, "cshift output shape");
    if (impl == ShiftImpl::permute && !permute_path_valid(f.dg().layout))
        fail(errc::permute_unsupported_layout,
             "permute shift path needs all layout entries <= 2, got " +
                 format_extents(f.dg().layout.lanes_per_dim));
    const auto& dg = f.dg();
    const ShiftPlan plan = make_shift_plan(dg, dim, displacement, f.kind());
    std::int64_t stride = 1;
    for (int j = 0; j < dim; ++j)
        stride *= dg.outer_extents[static_cast<std::size_t>(j)];
    const int O = dg.outer_extents[static_cast<std::size_t>(dim)];

    auto run = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t outer = lo; outer < hi; ++outer) {
            const int o = static_cast<int>((outer / stride) % O);
            const auto& slice = plan.slices[static_cast<std::size_t>(o)];
            const std::int64_t src_outer = outer + static_cast<std::int64_t>(slice.src_coord - o) * stride;
            for (int c = 0; c < f.dof(); ++c) {
                auto dst = g.array(outer, c);
                auto src = f.array(src_outer, c);
                if (slice.carry == 0) {
                    std::memcpy(dst.data(), src.data(), dst.size_bytes());
                } else if (impl == ShiftImpl::split_rotate) {
                    split_rotate_into<T>(dst, src, slice.params.s, slice.params.r);
                } else {
                    // layout entries <= 2: the rearrangement is r = w/2,
                    // i.e. a pairwise block swap of width r
                    permute_into<T>(dst, src, slice.params.r);
                }
            }
        }
    };
    if (pool)
        pool->parallel_for(0, dg.outer_volume, run);
    else
        run(0, dg.outer_volume);
}

template <typename T>
LatticeField<T> cshift(const LatticeField<T>& f, int dim, std::int64_t displacement,
                       ShiftImpl impl = ShiftImpl::split_rotate, ThreadPool* pool = nullptr) {
    LatticeField<T> g(f.dg(), f.dof(), f.kind());
    cshift_into(g, f, dim, displacement, impl, pool);
    return g;
}

/// Brute-force shift on the canonical representation, no lane logic.
template <typename T>
ScalarField<T> cshift_oracle(const ScalarField<T>& sf, int dim, std::int64_t displacement) {
    const int d = sf.geometry.dims();
    if (dim < 0 || dim >= d)
        fail(errc::dim_out_of_range, "dimension " + std::to_string(dim));
    ScalarField<T> out = new_scalar_field<T>(sf.geometry, sf.dof, sf.kind);
    const int L = sf.geometry.extents[static_cast<std::size_t>(dim)];
    const std::int64_t delta = ((displacement % L) + L) % L;
    const std::int64_t volume = sf.geometry.volume();
    for (std::int64_t s = 0; s < volume; ++s) {
        SiteCoord x = site_coord(sf.geometry, s);
        x[static_cast<std::size_t>(dim)] =
            static_cast<int>((x[static_cast<std::size_t>(dim)] + delta) % L);
        auto src = sf.site(site_index(sf.geometry, x));
        auto dst = out.site(s);
        std::memcpy(dst.data(), src.data(), dst.size_bytes());
    }
    return out;
}

/// Sum of |value|^2 over all sites and dofs, accumulated outer-major,
/// dof-major, lane-minor in a fixed order.
template <typename T>
double norm2(const LatticeField<T>& f) {
    double sum = 0.0;
    const auto data = f.raw();
    for (std::int64_t i = 0; i < f.size(); ++i)
        sum += static_cast<double>(data[static_cast<std::size_t>(i)]) *
               static_cast<double>(data[static_cast<std::size_t>(i)]);
    return sum;
}

template <typename T>
double norm2(const ScalarField<T>& sf) {
    double sum = 0.0;
    for (const T v : sf.data)
        sum += static_cast<double>(v) * static_cast<double>(v);
    return sum;
}

/// sum over sites and dofs of conj(f) * g, fixed reduction order. Real kinds
/// produce a zero imaginary part.
template <typename T>
std::complex<double> inner_product(const LatticeField<T>& f, const LatticeField<T>& g) {
    if (!f.same_shape(g))
        fail(errc::shape_mismatch, "inner_product operands");
    const auto a = f.raw();
    const auto b = g.raw();
    double re = 0.0, im = 0.0;
    if (is_complex(f.kind())) {
        for (std::int64_t i = 0; i < f.size(); i += 2) {
            const double ar = a[static_cast<std::size_t>(i)], ai = a[static_cast<std::size_t>(i + 1)];
            const double br = b[static_cast<std::size_t>(i)], bi = b[static_cast<std::size_t>(i + 1)];
            re += ar * br + ai * bi;
            im += ar * bi - ai * br;
        }
    } else {
        for (std::int64_t i = 0; i < f.size(); ++i)
            re += static_cast<double>(a[static_cast<std::size_t>(i)]) *
                  static_cast<double>(b[static_cast<std::size_t>(i)]);
    }
    return {re, im};
}

namespace detail {

template <typename T>
void payload_fnv(const ScalarField<T>& sf, Fnv1a64& fnv, bool rounded) {
    for (const T v : sf.data) {
        const double d = static_cast<double>(v);
        if (rounded)
            fnv.update_u64_le(rounded_double_bits(d));
        else
            fnv.update_double_le(d);
    }
}

} // namespace detail

/// FNV-1a 64 over the canonical payload bytes (doubles, little-endian, in
/// ScalarField order). The dump header is not part of the digest, so fields
/// that agree site-by-site hash equal across layouts.
template <typename T>
std::uint64_t checksum(const LatticeField<T>& f) {
    Fnv1a64 fnv;
    detail::payload_fnv(to_scalar(f), fnv, false);
    return fnv.value();
}

/// Checksum of the rounded canonical dump: low 8 mantissa bits cleared per
/// component before hashing, absorbing ulp-level cross-path noise.
template <typename T>
std::uint64_t canonical_checksum(const LatticeField<T>& f) {
    Fnv1a64 fnv;
    detail::payload_fnv(to_scalar(f), fnv, true);
    return fnv.value();
}

template <typename T>
std::uint64_t checksum(const ScalarField<T>& sf) {
    Fnv1a64 fnv;
    detail::payload_fnv(sf, fnv, false);
    return fnv.value();
}

template <typename T>
std::uint64_t canonical_checksum(const ScalarField<T>& sf) {
    Fnv1a64 fnv;
    detail::payload_fnv(sf, fnv, true);
    return fnv.value();
}

/// Golden-test dump: one text header line
///     veclat v1 <extents> <layout> <m> <kind>
/// followed by the canonical payload as little-endian IEEE-754 doubles.
template <typename T>
void dump(const LatticeField<T>& f, std::ostream& os) {
    os << "veclat v1 " << format_extents(f.dg().geometry.extents) << ' '
       << format_extents(f.dg().layout.lanes_per_dim) << ' ' << f.dof() << ' '
       << to_string(f.kind()) << '\n';
    const ScalarField<T> sf = to_scalar(f);
    for (const T v : sf.data) {
        const auto bits = std::bit_cast<std::uint64_t>(static_cast<double>(v));
        char bytes[8];
        for (int i = 0; i < 8; ++i)
            bytes[i] = static_cast<char>(bits >> (8 * i));
        os.write(bytes, 8);
    }
    if (!os)
        fail(errc::io_failure, "field dump failed");
}

} // namespace veclat
