#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "veclat/errors.hpp"
#include "veclat/geometry.hpp"

namespace veclat {

enum class ScalarKind { real_single, real_double, complex_single, complex_double };

constexpr bool is_complex(ScalarKind k) {
    return k == ScalarKind::complex_single || k == ScalarKind::complex_double;
}
constexpr bool is_single(ScalarKind k) {
    return k == ScalarKind::real_single || k == ScalarKind::complex_single;
}
/// Real elements per stored value: 2 for complex {re, im} pairs, else 1.
constexpr int elem_width(ScalarKind k) { return is_complex(k) ? 2 : 1; }
/// Bits per real element.
constexpr int real_bits(ScalarKind k) { return is_single(k) ? 32 : 64; }

constexpr const char* to_string(ScalarKind k) {
    switch (k) {
    case ScalarKind::real_single:    return "real-single";
    case ScalarKind::real_double:    return "real-double";
    case ScalarKind::complex_single: return "complex-single";
    case ScalarKind::complex_double: return "complex-double";
    }
    return "?";
}
ScalarKind parse_scalar_kind(const std::string& text);

/// One virtual vector register: VL real elements of a fixed scalar kind.
/// Complex kinds store consecutive {re, im} pairs. VL is a power of 2 and the
/// register size VL * real_bits is 128 * 2^k bits.
template <typename T>
struct GridArray {
    std::vector<T> elems;
    ScalarKind kind = ScalarKind::real_double;

    std::int64_t vl() const { return static_cast<std::int64_t>(elems.size()); }
};

template <typename T>
GridArray<T> make_grid_array(std::int64_t vl, ScalarKind kind) {
    static_assert(std::is_floating_point_v<T>);
    if (is_single(kind) != (sizeof(T) == 4))
        fail(errc::invalid_vector_length, "scalar kind does not match element type");
    if (vl < 1 || (vl & (vl - 1)) != 0)
        fail(errc::invalid_vector_length, "VL " + std::to_string(vl) + " is not a power of 2");
    if (is_complex(kind) && vl % 2 != 0)
        fail(errc::invalid_vector_length, "complex kind needs even VL");
    if (vl * real_bits(kind) < 128)
        fail(errc::invalid_vector_length,
             "VL " + std::to_string(vl) + " is below one 128-bit register");
    GridArray<T> ga;
    ga.elems.assign(static_cast<std::size_t>(vl), T{});
    ga.kind = kind;
    return ga;
}

namespace detail {

inline std::int64_t reduce_rotation(std::int64_t r, std::int64_t w) {
    r %= w;
    return r < 0 ? r + w : r;
}

inline void check_split(std::int64_t vl, int s) {
    if (s < 1 || vl % s != 0)
        fail(errc::invalid_split,
             "split " + std::to_string(s) + " does not divide VL " + std::to_string(vl));
}

} // namespace detail

/// Reference form of split_rotate: split the array into s blocks of width
/// w = VL/s and rotate each by r elements,
///     out[i] = in[(i + r) % w + w * (i / w)].
/// Kept as the plain scalar loop; fast paths must match it bit for bit.
template <typename T>
void split_rotate_reference(std::span<T> out, std::span<const T> in, int s, std::int64_t r) {
    const std::int64_t vl = static_cast<std::int64_t>(in.size());
    detail::check_split(vl, s);
    const std::int64_t w = vl / s;
    r = detail::reduce_rotation(r, w);
    for (std::int64_t i = 0; i < vl; ++i)
        out[static_cast<std::size_t>(i)] =
            in[static_cast<std::size_t>((i + r) % w + w * (i / w))];
}

/// split_rotate as two contiguous segment copies per block. Pure data
/// movement; bit-exact against split_rotate_reference. out and in must not
/// alias.
template <typename T>
void split_rotate_into(std::span<T> out, std::span<const T> in, int s, std::int64_t r) {
    const std::int64_t vl = static_cast<std::int64_t>(in.size());
    detail::check_split(vl, s);
    const std::int64_t w = vl / s;
    r = detail::reduce_rotation(r, w);
    const T* src = in.data();
    T* dst = out.data();
    if (r == 0) {
        std::memcpy(dst, src, static_cast<std::size_t>(vl) * sizeof(T));
        return;
    }
    for (std::int64_t b = 0; b < vl; b += w) {
        std::memcpy(dst + b, src + b + r, static_cast<std::size_t>(w - r) * sizeof(T));
        std::memcpy(dst + b + (w - r), src + b, static_cast<std::size_t>(r) * sizeof(T));
    }
}

/// Pairwise swap of adjacent blocks of `block` real elements: blocks 2m and
/// 2m+1 exchange. Equals split_rotate with s = VL/(2*block), r = block, but
/// implemented as the dedicated swap loop. out and in must not alias.
template <typename T>
void permute_into(std::span<T> out, std::span<const T> in, std::int64_t block) {
    const std::int64_t vl = static_cast<std::int64_t>(in.size());
    if (block < 1 || vl % (2 * block) != 0)
        fail(errc::invalid_level, "block width " + std::to_string(block) + " for VL " +
                                      std::to_string(vl));
    const T* src = in.data();
    T* dst = out.data();
    for (std::int64_t b = 0; b < vl; b += 2 * block) {
        std::memcpy(dst + b, src + b + block, static_cast<std::size_t>(block) * sizeof(T));
        std::memcpy(dst + b + block, src + b, static_cast<std::size_t>(block) * sizeof(T));
    }
}

/// Value-semantics wrappers over the span primitives.
template <typename T>
GridArray<T> split_rotate(const GridArray<T>& in, int s, std::int64_t r) {
    detail::check_split(in.vl(), s);
    if (is_complex(in.kind) && r % 2 != 0)
        fail(errc::odd_complex_rotation, "rotation " + std::to_string(r) + " on complex data");
    GridArray<T> out;
    out.kind = in.kind;
    out.elems.resize(in.elems.size());
    split_rotate_into<T>(out.elems, in.elems, s, r);
    return out;
}

/// Cyclic rotation of the whole Grid-array; split_rotate at s = 1.
template <typename T>
GridArray<T> rotate(const GridArray<T>& in, std::int64_t r) {
    return split_rotate(in, 1, r);
}

/// Pairwise block swap at the given level: block width 2^level values
/// (2^level * elem_width real elements). Self-inverse.
template <typename T>
GridArray<T> permute(const GridArray<T>& in, int level) {
    const std::int64_t vl = in.vl();
    const int ew = elem_width(in.kind);
    if (level < 0 || level >= 62)
        fail(errc::invalid_level, "level " + std::to_string(level));
    const std::int64_t block = (std::int64_t{1} << level) * ew;
    if (2 * block > vl)
        fail(errc::invalid_level, "level " + std::to_string(level) + " too large for VL " +
                                      std::to_string(vl));
    GridArray<T> out;
    out.kind = in.kind;
    out.elems.resize(in.elems.size());
    permute_into<T>(out.elems, in.elems, block);
    return out;
}

/// Parameters of one split_rotate application. r and w count real elements;
/// complex kinds carry the factor-of-2 adjustment already applied.
struct SplitRotateParams {
    int s = 1;
    std::int64_t r = 0;
    std::int64_t w = 0;
};

/// Derives the split_rotate parameters that advance the lane inner
/// coordinate of `dim` by `carry` (mod n_dim), all other inner coordinates
/// fixed: s is the product of the lane counts above `dim`, r is carry times
/// the real elements below it.
SplitRotateParams shift_permutation_params(const DecomposedGeometry& dg, int dim, int carry,
                                           ScalarKind kind);

enum class ShiftImpl { split_rotate, permute };

ShiftImpl parse_shift_impl(const std::string& text);
constexpr const char* to_string(ShiftImpl impl) {
    return impl == ShiftImpl::split_rotate ? "split_rotate" : "permute";
}

/// One destination outer coordinate of a circular shift: which source outer
/// coordinate feeds it, how many sublattice boundaries the shift crossed
/// there (carry), and the lane rearrangement to apply. carry == 0 entries
/// are pure copies (params.r == 0).
struct ShiftPlanSlice {
    int src_coord = 0;
    int carry = 0;
    SplitRotateParams params;
};

/// Full plan for a circular shift of a lattice field along one dimension,
/// indexed by destination outer coordinate o_dim.
struct ShiftPlan {
    int dim = 0;
    int displacement = 0; // normalized into [0, L_dim)
    std::vector<ShiftPlanSlice> slices;
};

ShiftPlan make_shift_plan(const DecomposedGeometry& dg, int dim, std::int64_t displacement,
                          ScalarKind kind);

/// True when the pairwise-swap permute path can realize every boundary
/// rearrangement of this layout (no lane count above 2).
bool permute_path_valid(const SimdLayout& layout);

} // namespace veclat
