#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "veclat/rng.hpp"
#include "veclat/vecperm.hpp"

using namespace veclat;

namespace {

template <typename F>
errc code_of(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return errc::invalid_config;
}

GridArray<double> ramp(std::int64_t vl, ScalarKind kind = ScalarKind::real_double) {
    auto ga = make_grid_array<double>(vl, kind);
    std::iota(ga.elems.begin(), ga.elems.end(), 0.0);
    return ga;
}

std::vector<double> elems_of(const GridArray<double>& ga) { return ga.elems; }

} // namespace

TEST_CASE("grid array construction rules") {
    CHECK(make_grid_array<double>(4, ScalarKind::real_double).vl() == 4);
    CHECK(make_grid_array<float>(4, ScalarKind::real_single).vl() == 4);
    // not a power of two
    CHECK(code_of([] { make_grid_array<double>(6, ScalarKind::real_double); }) ==
          errc::invalid_vector_length);
    // below the 128-bit register floor
    CHECK(code_of([] { make_grid_array<double>(1, ScalarKind::real_double); }) ==
          errc::invalid_vector_length);
    CHECK(code_of([] { make_grid_array<float>(2, ScalarKind::real_single); }) ==
          errc::invalid_vector_length);
    // element type must match the scalar kind's precision
    CHECK(code_of([] { make_grid_array<float>(4, ScalarKind::real_double); }) ==
          errc::invalid_vector_length);
}

TEST_CASE("scalar kind text round trip") {
    for (const ScalarKind k : {ScalarKind::real_single, ScalarKind::real_double,
                               ScalarKind::complex_single, ScalarKind::complex_double})
        CHECK(parse_scalar_kind(to_string(k)) == k);
    CHECK(code_of([] { parse_scalar_kind("quaternion"); }) == errc::invalid_config);
    CHECK(elem_width(ScalarKind::complex_double) == 2);
    CHECK(elem_width(ScalarKind::real_single) == 1);
}

TEST_CASE("split_rotate: frozen examples on [0..7]") {
    const auto in = ramp(8);
    CHECK(elems_of(split_rotate(in, 1, 0)) == std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(elems_of(split_rotate(in, 2, 1)) == std::vector<double>{1, 2, 3, 0, 5, 6, 7, 4});
    CHECK(elems_of(split_rotate(in, 4, 1)) == std::vector<double>{1, 0, 3, 2, 5, 4, 7, 6});
    CHECK(elems_of(split_rotate(in, 1, 3)) == std::vector<double>{3, 4, 5, 6, 7, 0, 1, 2});
}

TEST_CASE("split_rotate: error cases") {
    const auto in = ramp(8);
    CHECK(code_of([&] { split_rotate(in, 3, 1); }) == errc::invalid_split);
    CHECK(code_of([&] { split_rotate(in, 16, 1); }) == errc::invalid_split);
    const auto cin = ramp(8, ScalarKind::complex_double);
    CHECK(code_of([&] { split_rotate(cin, 1, 3); }) == errc::odd_complex_rotation);
}

TEST_CASE("rotate: cyclic shift semantics") {
    GridArray<double> in = make_grid_array<double>(4, ScalarKind::real_double);
    in.elems = {10, 11, 12, 13}; // a,b,c,d
    CHECK(elems_of(rotate(in, 1)) == std::vector<double>{11, 12, 13, 10});
    CHECK(elems_of(rotate(in, 4)) == in.elems); // full cycle
    CHECK(elems_of(rotate(ramp(8), 3)) == std::vector<double>{3, 4, 5, 6, 7, 0, 1, 2});
}

TEST_CASE("split_rotate equals plain rotation at s=1, all r, many widths") {
    for (std::int64_t vl = 4; vl <= 512; vl *= 2) {
        const auto in = ramp(vl);
        for (std::int64_t r = 0; r < vl; ++r) {
            const auto out = split_rotate(in, 1, r);
            for (std::int64_t i = 0; i < vl; ++i)
                REQUIRE(out.elems[static_cast<std::size_t>(i)] ==
                        in.elems[static_cast<std::size_t>((i + r) % vl)]);
        }
    }
}

TEST_CASE("fast path is bit-exact against the reference loop") {
    SplitMix64 rng(99);
    for (std::int64_t vl = 2; vl <= 512; vl *= 2) {
        GridArray<double> in = make_grid_array<double>(vl, ScalarKind::real_double);
        for (auto& v : in.elems)
            v = rng.uniform_pm1();
        for (std::int64_t s = 1; s <= vl; s *= 2) {
            const std::int64_t w = vl / s;
            for (std::int64_t r = 0; r < w; ++r) {
                std::vector<double> expect(static_cast<std::size_t>(vl));
                std::vector<double> got(static_cast<std::size_t>(vl));
                split_rotate_reference<double>(expect, in.elems, static_cast<int>(s), r);
                split_rotate_into<double>(got, in.elems, static_cast<int>(s), r);
                REQUIRE(got == expect);
            }
        }
    }
}

TEST_CASE("split_rotate group law and cycle order") {
    const auto in = ramp(64);
    for (const int s : {1, 2, 8}) {
        const std::int64_t w = 64 / s;
        for (const std::int64_t r1 : {std::int64_t{1}, std::int64_t{3}, w - 1})
            for (const std::int64_t r2 : {std::int64_t{0}, std::int64_t{5}}) {
                const auto once = split_rotate(split_rotate(in, s, r1), s, r2);
                const auto combined = split_rotate(in, s, (r1 + r2) % w);
                CHECK(once.elems == combined.elems);
            }
        // applying w/gcd(w,r) times returns to the start
        const std::int64_t r = 6;
        const std::int64_t order = w / std::gcd(w, r);
        GridArray<double> cur = in;
        for (std::int64_t k = 0; k < order; ++k)
            cur = split_rotate(cur, s, r);
        CHECK(cur.elems == in.elems);
    }
}

TEST_CASE("negative and oversized rotations are normalized") {
    const auto in = ramp(8);
    CHECK(elems_of(split_rotate(in, 1, -1)) == elems_of(split_rotate(in, 1, 7)));
    CHECK(elems_of(split_rotate(in, 2, 9)) == elems_of(split_rotate(in, 2, 1)));
}

TEST_CASE("complex grid arrays move re/im pairs together") {
    GridArray<double> in = make_grid_array<double>(8, ScalarKind::complex_double);
    in.elems = {0, 100, 1, 101, 2, 102, 3, 103}; // four sites, re/im interleaved
    const auto out = rotate(in, 2);              // one complex site
    CHECK(out.elems == std::vector<double>{1, 101, 2, 102, 3, 103, 0, 100});
}

TEST_CASE("permute: frozen examples, involution, level errors") {
    const auto in = ramp(8);
    CHECK(elems_of(permute(in, 0)) == std::vector<double>{1, 0, 3, 2, 5, 4, 7, 6});
    CHECK(elems_of(permute(in, 2)) == std::vector<double>{4, 5, 6, 7, 0, 1, 2, 3});
    CHECK(elems_of(permute(in, 0)) == elems_of(split_rotate(in, 4, 1)));
    CHECK(elems_of(permute(in, 2)) == elems_of(split_rotate(in, 1, 4)));
    for (const int level : {0, 1, 2})
        CHECK(elems_of(permute(permute(in, level), level)) == in.elems);
    CHECK(code_of([&] { permute(in, 3); }) == errc::invalid_level);
    CHECK(code_of([&] { permute(in, -1); }) == errc::invalid_level);
}

TEST_CASE("permute at level b equals split_rotate(s = VL/2b, r = b)") {
    for (std::int64_t vl : {std::int64_t{16}, std::int64_t{64}}) {
        const auto in = ramp(vl);
        for (int level = 0; (std::int64_t{2} << level) <= vl; ++level) {
            const std::int64_t b = std::int64_t{1} << level;
            CHECK(elems_of(permute(in, level)) ==
                  elems_of(split_rotate(in, static_cast<int>(vl / (2 * b)), b)));
        }
    }
}

TEST_CASE("complex permute counts levels in lanes, not reals") {
    const auto in = ramp(8, ScalarKind::complex_double); // 4 lanes
    // level 0 swaps adjacent complex lanes = blocks of 2 reals
    CHECK(elems_of(permute(in, 0)) == std::vector<double>{2, 3, 0, 1, 6, 7, 4, 5});
    CHECK(code_of([&] { permute(in, 2); }) == errc::invalid_level); // only 4 lanes
}

TEST_CASE("shift parameters: frozen examples") {
    auto params = [](std::vector<int> extents, std::vector<int> lanes, int dim, int carry,
                     ScalarKind kind) {
        const auto dg = validate(LatticeGeometry{std::move(extents)}, SimdLayout{std::move(lanes)});
        return shift_permutation_params(dg, dim, carry, kind);
    };
    const auto a = params({8, 4}, {4, 2}, 0, 1, ScalarKind::real_double);
    CHECK(a.s == 2);
    CHECK(a.r == 1);
    CHECK(a.w == 4);
    const auto b = params({8, 8, 8}, {4, 4, 4}, 1, 1, ScalarKind::real_double);
    CHECK(b.s == 4);
    CHECK(b.r == 4);
    CHECK(b.w == 16);
    const auto c = params({4, 4, 4, 4}, {2, 2, 2, 2}, 3, 1, ScalarKind::real_double);
    CHECK(c.s == 1);
    CHECK(c.r == 8);
    CHECK(c.w == 16);
    const auto zero = params({8, 8, 8}, {4, 4, 4}, 2, 0, ScalarKind::real_double);
    CHECK(zero.r == 0);
    // complex data doubles the rotation and the block width
    const auto cx = params({8, 4}, {4, 2}, 0, 1, ScalarKind::complex_double);
    CHECK(cx.s == 2);
    CHECK(cx.r == 2);
    CHECK(cx.w == 8);

    const auto dg = validate(LatticeGeometry{{8, 4}}, SimdLayout{{4, 2}});
    CHECK(code_of([&] { shift_permutation_params(dg, 2, 1, ScalarKind::real_double); }) ==
          errc::dim_out_of_range);
}

TEST_CASE("shift parameters match the site-map lane permutation oracle") {
    // layouts over 1..3 dimensions with n <= 64; geometry O_i = 2 everywhere
    for (int dims = 1; dims <= 3; ++dims) {
        std::vector<int> shape(static_cast<std::size_t>(dims), 64);
        for (const auto& lay : testutil::layouts_up_to(LatticeGeometry{shape}, 64)) {
            const auto dg = validate(LatticeGeometry{shape}, lay);
            if (dg.lanes < 2)
                continue; // no mixing possible, and below the register floor
            for (int dim = 0; dim < dims; ++dim) {
                const int n = lay.lanes_per_dim[static_cast<std::size_t>(dim)];
                for (int carry = 0; carry < n; ++carry) {
                    const auto pr = shift_permutation_params(dg, dim, carry, ScalarKind::real_double);
                    auto in = ramp(dg.lanes);
                    const auto out = split_rotate(in, pr.s, pr.r);
                    for (int lane = 0; lane < dg.lanes; ++lane) {
                        const int src = testutil::lane_source_from_site_maps(dg, dim, carry, lane);
                        REQUIRE(src >= 0);
                        REQUIRE(out.elems[static_cast<std::size_t>(lane)] ==
                                in.elems[static_cast<std::size_t>(src)]);
                    }
                }
            }
        }
    }
}

TEST_CASE("shift plan: slice structure for a one-dimensional shift") {
    const auto dg = validate(LatticeGeometry{{8}}, SimdLayout{{4}});
    const ShiftPlan plan = make_shift_plan(dg, 0, 1, ScalarKind::real_double);
    REQUIRE(plan.slices.size() == 2);
    // destination o=0 reads source o=1, no wrap
    CHECK(plan.slices[0].src_coord == 1);
    CHECK(plan.slices[0].carry == 0);
    // destination o=1 reads source o=0 with one boundary crossing
    CHECK(plan.slices[1].src_coord == 0);
    CHECK(plan.slices[1].carry == 1);
    CHECK(plan.slices[1].params.s == 1);
    CHECK(plan.slices[1].params.r == 1);
}

TEST_CASE("shift plan: backward displacement is normalized") {
    const auto dg = validate(LatticeGeometry{{8}}, SimdLayout{{4}});
    const ShiftPlan back = make_shift_plan(dg, 0, -1, ScalarKind::real_double);
    REQUIRE(back.slices.size() == 2);
    // delta normalizes to 7: o=0 reads src 7%2=1 with carry (7/2)%4=3,
    // o=1 reads src 8%2=0 with carry (8/2)%4=0
    CHECK(back.slices[0].src_coord == 1);
    CHECK(back.slices[0].carry == 3);
    CHECK(back.slices[1].src_coord == 0);
    CHECK(back.slices[1].carry == 0);
}

TEST_CASE("shift impl text form and permute path validity") {
    CHECK(parse_shift_impl("split_rotate") == ShiftImpl::split_rotate);
    CHECK(parse_shift_impl("permute") == ShiftImpl::permute);
    CHECK(code_of([] { parse_shift_impl("rotate"); }) == errc::invalid_config);
    CHECK(to_string(ShiftImpl::permute) == std::string("permute"));
    CHECK(permute_path_valid(SimdLayout{{2, 1, 2, 2}}));
    CHECK(permute_path_valid(SimdLayout{{1, 1}}));
    CHECK(!permute_path_valid(SimdLayout{{4, 2}}));
}
