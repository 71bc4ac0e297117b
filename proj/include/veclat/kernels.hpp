#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include "veclat/field.hpp"

namespace veclat {

inline constexpr int su3_dof = 9;         // 3x3 complex matrix, row-major
inline constexpr int spinor_dof = 12;     // 4 spin x 3 color, spin-major
inline constexpr int half_spinor_dof = 6; // 2 spin x 3 color

/// Real floating-point operations charged per site by the bench harness.
/// The formula strings are the audited breakdowns; tests evaluate them
/// against the constants.
inline constexpr std::int64_t su3_mmul_site_flops = 198;
inline constexpr const char* su3_mmul_flops_formula = "9*(3*6+2*2)";
/// Per direction-side: two-spin projection (6 complex adds, the +-1/+-i
/// coefficients are sign/swaps), two 3x3 complex matvecs, reconstruction
/// into four spin rows; then the (mass+4)*psi - hop/2 combine on 12
/// complex components.
inline constexpr std::int64_t wilson_site_flops = 1416;
inline constexpr const char* wilson_flops_formula = "8*(12+132+24)+12*6";

using Mat4 = std::array<std::array<std::complex<double>, 4>, 4>;

/// Chiral basis: every entry is 0, +-1 or +-i, one nonzero per row, with
/// gamma_mu block-off-diagonal in spin halves and gamma5 diagonal.
struct GammaBasis {
    std::array<Mat4, 4> gamma;
    Mat4 gamma5;
};

const GammaBasis& gamma_basis();

/// Row structure of gamma_mu on spins {0,1}: row s couples only to
/// partner[s] in {2,3} with a unit-modulus coefficient encoded in quarter
/// turns: 0 -> 1, 1 -> i, 2 -> -1, 3 -> -i. Derived from gamma_basis(),
/// not hand-copied, so the tables cannot drift from the matrices.
struct SpinProjection {
    std::array<int, 2> partner;
    std::array<int, 2> code;
};

const SpinProjection& spin_projection(int mu);

constexpr int phase_conj(int code) { return (4 - code) & 3; }
constexpr int phase_neg(int code) { return (code + 2) & 3; }

namespace detail {

template <typename T>
void require_complex_field(const LatticeField<T>& f, int dof, const char* what) {
    if (!is_complex(f.kind()) || f.dof() != dof)
        fail(errc::shape_mismatch, std::string(what) + " needs " + std::to_string(dof) +
                                       " complex dofs, got " + std::to_string(f.dof()) + " of kind " +
                                       to_string(f.kind()));
}

// h <- ps -/+ phase(code) * pp over one Grid-array, interleaved re/im.
// The phase is applied as a sign/swap, so each complex component costs one
// complex add.
template <typename T, int code, bool plus>
void project_row(T* h, const T* ps, const T* pp, std::int64_t vl) {
    for (std::int64_t e = 0; e < vl; e += 2) {
        T pr, pi;
        if constexpr (code == 0) {
            pr = pp[e];
            pi = pp[e + 1];
        } else if constexpr (code == 1) {
            pr = -pp[e + 1];
            pi = pp[e];
        } else if constexpr (code == 2) {
            pr = -pp[e];
            pi = -pp[e + 1];
        } else {
            pr = pp[e + 1];
            pi = -pp[e];
        }
        if constexpr (plus) {
            h[e] = ps[e] + pr;
            h[e + 1] = ps[e + 1] + pi;
        } else {
            h[e] = ps[e] - pr;
            h[e + 1] = ps[e + 1] - pi;
        }
    }
}

// out += phase(code) * x
template <typename T, int code>
void accumulate_row(T* out, const T* x, std::int64_t vl) {
    for (std::int64_t e = 0; e < vl; e += 2) {
        if constexpr (code == 0) {
            out[e] += x[e];
            out[e + 1] += x[e + 1];
        } else if constexpr (code == 1) {
            out[e] -= x[e + 1];
            out[e + 1] += x[e];
        } else if constexpr (code == 2) {
            out[e] -= x[e];
            out[e + 1] -= x[e + 1];
        } else {
            out[e] += x[e + 1];
            out[e + 1] -= x[e];
        }
    }
}

template <typename T>
using ProjectFn = void (*)(T*, const T*, const T*, std::int64_t);
template <typename T>
using AccumFn = void (*)(T*, const T*, std::int64_t);

template <typename T>
ProjectFn<T> project_fn(int code, bool plus) {
    switch ((code & 3) * 2 + (plus ? 1 : 0)) {
    case 0: return &project_row<T, 0, false>;
    case 1: return &project_row<T, 0, true>;
    case 2: return &project_row<T, 1, false>;
    case 3: return &project_row<T, 1, true>;
    case 4: return &project_row<T, 2, false>;
    case 5: return &project_row<T, 2, true>;
    case 6: return &project_row<T, 3, false>;
    default: return &project_row<T, 3, true>;
    }
}

template <typename T>
AccumFn<T> accumulate_fn(int code) {
    switch (code & 3) {
    case 0: return &accumulate_row<T, 0>;
    case 1: return &accumulate_row<T, 1>;
    case 2: return &accumulate_row<T, 2>;
    default: return &accumulate_row<T, 3>;
    }
}

// out_a = sum_k u_k * h_k as complex lanes, k accumulated in fixed order
// 0,1,2 (3 complex mults + 2 complex adds = 22 real flops per output).
template <typename T>
void cmatvec_row(T* out, const T* u0, const T* u1, const T* u2, const T* h0, const T* h1,
                 const T* h2, std::int64_t vl) {
    for (std::int64_t e = 0; e < vl; e += 2) {
        T re = u0[e] * h0[e] - u0[e + 1] * h0[e + 1];
        T im = u0[e] * h0[e + 1] + u0[e + 1] * h0[e];
        re += u1[e] * h1[e] - u1[e + 1] * h1[e + 1];
        im += u1[e] * h1[e + 1] + u1[e + 1] * h1[e];
        re += u2[e] * h2[e] - u2[e + 1] * h2[e + 1];
        im += u2[e] * h2[e + 1] + u2[e + 1] * h2[e];
        out[e] = re;
        out[e + 1] = im;
    }
}

// same with conjugated coefficients: out_a = sum_k conj(u_k) * h_k
template <typename T>
void cmatvec_row_conj(T* out, const T* u0, const T* u1, const T* u2, const T* h0, const T* h1,
                      const T* h2, std::int64_t vl) {
    for (std::int64_t e = 0; e < vl; e += 2) {
        T re = u0[e] * h0[e] + u0[e + 1] * h0[e + 1];
        T im = u0[e] * h0[e + 1] - u0[e + 1] * h0[e];
        re += u1[e] * h1[e] + u1[e + 1] * h1[e + 1];
        im += u1[e] * h1[e + 1] - u1[e + 1] * h1[e];
        re += u2[e] * h2[e] + u2[e + 1] * h2[e + 1];
        im += u2[e] * h2[e + 1] - u2[e + 1] * h2[e];
        out[e] = re;
        out[e + 1] = im;
    }
}

} // namespace detail

/// Per-site 3x3 complex matrix product c(x) = a(x) * b(x), lane-parallel.
/// c must not alias a or b.
template <typename T>
void su3_mmul_into(LatticeField<T>& c, const LatticeField<T>& a, const LatticeField<T>& b,
                   ThreadPool* pool = nullptr) {
    detail::require_complex_field(a, su3_dof, "su3_mmul");
    if (!a.same_shape(b) || !a.same_shape(c))
        fail(errc::geometry_mismatch, "su3_mmul operand shapes differ");
    const std::int64_t vl = a.vl();
    auto run = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t outer = lo; outer < hi; ++outer) {
            for (int i = 0; i < 3; ++i) {
                const T* a0 = a.array(outer, 3 * i + 0).data();
                const T* a1 = a.array(outer, 3 * i + 1).data();
                const T* a2 = a.array(outer, 3 * i + 2).data();
                for (int j = 0; j < 3; ++j)
                    detail::cmatvec_row(c.array(outer, 3 * i + j).data(), a0, a1, a2,
                                        b.array(outer, 0 + j).data(), b.array(outer, 3 + j).data(),
                                        b.array(outer, 6 + j).data(), vl);
            }
        }
    };
    if (pool)
        pool->parallel_for(0, a.dg().outer_volume, run);
    else
        run(0, a.dg().outer_volume);
}

template <typename T>
LatticeField<T> su3_mmul(const LatticeField<T>& a, const LatticeField<T>& b,
                         ThreadPool* pool = nullptr) {
    LatticeField<T> c(a.dg(), a.dof(), a.kind());
    su3_mmul_into(c, a, b, pool);
    return c;
}

/// Textbook site-by-site triple-loop complex matmul, no lane logic.
template <typename T>
ScalarField<T> su3_mmul_oracle(const ScalarField<T>& a, const ScalarField<T>& b) {
    if (a.dof != su3_dof || !is_complex(a.kind) || a.dof != b.dof || a.kind != b.kind ||
        a.geometry.extents != b.geometry.extents)
        fail(errc::shape_mismatch, "su3_mmul_oracle operands");
    using C = std::complex<T>;
    ScalarField<T> c = new_scalar_field<T>(a.geometry, su3_dof, a.kind);
    const std::int64_t volume = a.geometry.volume();
    for (std::int64_t s = 0; s < volume; ++s) {
        auto as = a.site(s);
        auto bs = b.site(s);
        auto cs = c.site(s);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                C sum{};
                for (int k = 0; k < 3; ++k) {
                    const C av{as[2 * (3 * i + k)], as[2 * (3 * i + k) + 1]};
                    const C bv{bs[2 * (3 * k + j)], bs[2 * (3 * k + j) + 1]};
                    sum += av * bv;
                }
                cs[2 * (3 * i + j)] = sum.real();
                cs[2 * (3 * i + j) + 1] = sum.imag();
            }
        }
    }
    return c;
}

/// Random special-unitary site matrices: two Gram-Schmidt-orthonormalized
/// random complex rows, third row the conjugate cross product, which fixes
/// det = 1. Draws happen in canonical site order from one stream, so the
/// result is independent of the SIMD layout.
template <typename T>
LatticeField<T> random_su3(const DecomposedGeometry& dg, std::uint64_t seed) {
    const ScalarKind kind = sizeof(T) == 4 ? ScalarKind::complex_single : ScalarKind::complex_double;
    ScalarField<T> sf = new_scalar_field<T>(dg.geometry, su3_dof, kind);
    using C = std::complex<double>;
    SplitMix64 rng(seed);
    const std::int64_t volume = dg.geometry.volume();
    for (std::int64_t s = 0; s < volume; ++s) {
        std::array<C, 3> u, v, w;
        double nu = 0.0, nv = 0.0;
        while (true) {
            for (auto& z : u)
                z = {rng.uniform_pm1(), rng.uniform_pm1()};
            for (auto& z : v)
                z = {rng.uniform_pm1(), rng.uniform_pm1()};
            nu = std::sqrt(std::norm(u[0]) + std::norm(u[1]) + std::norm(u[2]));
            if (nu < 1e-6)
                continue;
            for (auto& z : u)
                z /= nu;
            C proj = std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1] + std::conj(u[2]) * v[2];
            for (int k = 0; k < 3; ++k)
                v[static_cast<std::size_t>(k)] -= proj * u[static_cast<std::size_t>(k)];
            nv = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
            if (nv < 1e-6)
                continue;
            for (auto& z : v)
                z /= nv;
            break;
        }
        w[0] = std::conj(u[1] * v[2] - u[2] * v[1]);
        w[1] = std::conj(u[2] * v[0] - u[0] * v[2]);
        w[2] = std::conj(u[0] * v[1] - u[1] * v[0]);
        auto site = sf.site(s);
        for (int k = 0; k < 3; ++k) {
            site[static_cast<std::size_t>(2 * k)] = static_cast<T>(u[static_cast<std::size_t>(k)].real());
            site[static_cast<std::size_t>(2 * k + 1)] = static_cast<T>(u[static_cast<std::size_t>(k)].imag());
            site[static_cast<std::size_t>(6 + 2 * k)] = static_cast<T>(v[static_cast<std::size_t>(k)].real());
            site[static_cast<std::size_t>(6 + 2 * k + 1)] = static_cast<T>(v[static_cast<std::size_t>(k)].imag());
            site[static_cast<std::size_t>(12 + 2 * k)] = static_cast<T>(w[static_cast<std::size_t>(k)].real());
            site[static_cast<std::size_t>(12 + 2 * k + 1)] = static_cast<T>(w[static_cast<std::size_t>(k)].imag());
        }
    }
    return from_scalar(sf, dg);
}

/// Scratch fields for the Dirac kernel, reusable across applications on the
/// same decomposition.
template <typename T>
struct WilsonWorkspace {
    LatticeField<T> half_proj;  // two-spin projection of psi
    LatticeField<T> half_mul;   // after the color matvec
    LatticeField<T> half_shift; // after the neighbor shift
    LatticeField<T> hop;        // accumulated hopping term, 12 dofs
};

template <typename T>
WilsonWorkspace<T> make_wilson_workspace(const DecomposedGeometry& dg, ScalarKind kind) {
    return {LatticeField<T>(dg, half_spinor_dof, kind), LatticeField<T>(dg, half_spinor_dof, kind),
            LatticeField<T>(dg, half_spinor_dof, kind), LatticeField<T>(dg, spinor_dof, kind)};
}

/// Wilson operator
///   D psi(x) = (mass + 4) psi(x)
///            - 1/2 sum_mu [ (1 - gamma_mu) U_mu(x) psi(x + mu)
///                         + (1 + gamma_mu) U_mu^dag(x - mu) psi(x - mu) ]
/// with periodic boundaries. Neighbor access goes through the shift plans,
/// so boundary Grid-arrays exercise the lane rearrangement. Each direction
/// works on projected two-spin halves; the gamma coefficients enter only as
/// sign/swaps.
template <typename T>
void wilson_dirac_into(LatticeField<T>& out, const std::array<LatticeField<T>, 4>& U,
                       const LatticeField<T>& psi, T mass, WilsonWorkspace<T>& ws,
                       ShiftImpl impl = ShiftImpl::split_rotate, ThreadPool* pool = nullptr) {
    if (psi.dg().geometry.dims() != 4)
        fail(errc::dimension_not_four,
             "Wilson operator needs 4 dimensions, got " + std::to_string(psi.dg().geometry.dims()));
    detail::require_complex_field(psi, spinor_dof, "wilson_dirac psi");
    if (!out.same_shape(psi))
        fail(errc::geometry_mismatch, "wilson_dirac output shape");
    for (const auto& u : U) {
        detail::require_complex_field(u, su3_dof, "wilson_dirac link");
        if (u.dg().geometry.extents != psi.dg().geometry.extents ||
            u.dg().layout.lanes_per_dim != psi.dg().layout.lanes_per_dim || u.kind() != psi.kind())
            fail(errc::geometry_mismatch, "wilson_dirac link/spinor decomposition differs");
    }

    const std::int64_t vl = psi.vl();
    const std::int64_t n_outer = psi.dg().outer_volume;
    auto par = [&](auto&& body) {
        if (pool)
            pool->parallel_for(0, n_outer, body);
        else
            body(std::int64_t{0}, n_outer);
    };

    std::fill(ws.hop.raw().begin(), ws.hop.raw().end(), T{});

    for (int mu = 0; mu < 4; ++mu) {
        const SpinProjection& sp = spin_projection(mu);
        const auto& u = U[static_cast<std::size_t>(mu)];

        // forward: (1 - gamma_mu) U_mu(x) psi(x + mu)
        {
            detail::ProjectFn<T> proj[2] = {detail::project_fn<T>(sp.code[0], false),
                                            detail::project_fn<T>(sp.code[1], false)};
            par([&](std::int64_t lo, std::int64_t hi) {
                for (std::int64_t o = lo; o < hi; ++o)
                    for (int s = 0; s < 2; ++s)
                        for (int a = 0; a < 3; ++a)
                            proj[s](ws.half_proj.array(o, 3 * s + a).data(),
                                    psi.array(o, 3 * s + a).data(),
                                    psi.array(o, 3 * sp.partner[static_cast<std::size_t>(s)] + a).data(), vl);
            });
            cshift_into(ws.half_shift, ws.half_proj, mu, +1, impl, pool);
            detail::AccumFn<T> keep = detail::accumulate_fn<T>(0);
            detail::AccumFn<T> flip[2] = {
                detail::accumulate_fn<T>(phase_neg(phase_conj(sp.code[0]))),
                detail::accumulate_fn<T>(phase_neg(phase_conj(sp.code[1])))};
            par([&](std::int64_t lo, std::int64_t hi) {
                for (std::int64_t o = lo; o < hi; ++o)
                    for (int s = 0; s < 2; ++s) {
                        const T* h0 = ws.half_shift.array(o, 3 * s + 0).data();
                        const T* h1 = ws.half_shift.array(o, 3 * s + 1).data();
                        const T* h2 = ws.half_shift.array(o, 3 * s + 2).data();
                        for (int a = 0; a < 3; ++a) {
                            T* chi = ws.half_mul.array(o, 3 * s + a).data();
                            detail::cmatvec_row(chi, u.array(o, 3 * a + 0).data(),
                                                u.array(o, 3 * a + 1).data(),
                                                u.array(o, 3 * a + 2).data(), h0, h1, h2, vl);
                            keep(ws.hop.array(o, 3 * s + a).data(), chi, vl);
                            flip[s](ws.hop.array(o, 3 * sp.partner[static_cast<std::size_t>(s)] + a).data(),
                                    chi, vl);
                        }
                    }
            });
        }

        // backward: (1 + gamma_mu) U_mu^dag(x - mu) psi(x - mu); project and
        // adjoint-multiply at the source site, then shift the result.
        {
            detail::ProjectFn<T> proj[2] = {detail::project_fn<T>(sp.code[0], true),
                                            detail::project_fn<T>(sp.code[1], true)};
            par([&](std::int64_t lo, std::int64_t hi) {
                for (std::int64_t o = lo; o < hi; ++o) {
                    for (int s = 0; s < 2; ++s)
                        for (int a = 0; a < 3; ++a)
                            proj[s](ws.half_proj.array(o, 3 * s + a).data(),
                                    psi.array(o, 3 * s + a).data(),
                                    psi.array(o, 3 * sp.partner[static_cast<std::size_t>(s)] + a).data(), vl);
                    for (int s = 0; s < 2; ++s) {
                        const T* h0 = ws.half_proj.array(o, 3 * s + 0).data();
                        const T* h1 = ws.half_proj.array(o, 3 * s + 1).data();
                        const T* h2 = ws.half_proj.array(o, 3 * s + 2).data();
                        for (int a = 0; a < 3; ++a)
                            detail::cmatvec_row_conj(ws.half_mul.array(o, 3 * s + a).data(),
                                                     u.array(o, 0 + a).data(), u.array(o, 3 + a).data(),
                                                     u.array(o, 6 + a).data(), h0, h1, h2, vl);
                    }
                }
            });
            cshift_into(ws.half_shift, ws.half_mul, mu, -1, impl, pool);
            detail::AccumFn<T> keep = detail::accumulate_fn<T>(0);
            detail::AccumFn<T> flip[2] = {detail::accumulate_fn<T>(phase_conj(sp.code[0])),
                                          detail::accumulate_fn<T>(phase_conj(sp.code[1]))};
            par([&](std::int64_t lo, std::int64_t hi) {
                for (std::int64_t o = lo; o < hi; ++o)
                    for (int s = 0; s < 2; ++s)
                        for (int a = 0; a < 3; ++a) {
                            const T* v = ws.half_shift.array(o, 3 * s + a).data();
                            keep(ws.hop.array(o, 3 * s + a).data(), v, vl);
                            flip[s](ws.hop.array(o, 3 * sp.partner[static_cast<std::size_t>(s)] + a).data(),
                                    v, vl);
                        }
            });
        }
    }

    const T mp = mass + static_cast<T>(4);
    const T half = static_cast<T>(0.5);
    par([&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t o = lo; o < hi; ++o)
            for (int c = 0; c < spinor_dof; ++c) {
                T* dst = out.array(o, c).data();
                const T* p = psi.array(o, c).data();
                const T* h = ws.hop.array(o, c).data();
                for (std::int64_t e = 0; e < vl; ++e)
                    dst[e] = mp * p[e] - half * h[e];
            }
    });
}

template <typename T>
LatticeField<T> wilson_dirac(const std::array<LatticeField<T>, 4>& U, const LatticeField<T>& psi,
                             T mass, ShiftImpl impl = ShiftImpl::split_rotate,
                             ThreadPool* pool = nullptr) {
    LatticeField<T> out(psi.dg(), psi.dof(), psi.kind());
    WilsonWorkspace<T> ws = make_wilson_workspace<T>(psi.dg(), psi.kind());
    wilson_dirac_into(out, U, psi, mass, ws, impl, pool);
    return out;
}

/// Same operator evaluated site-by-site with explicit modular neighbor
/// indexing and full 4x4 gamma matrix products — no shift plans, no
/// projection trick.
template <typename T>
ScalarField<T> wilson_dirac_oracle(const std::array<ScalarField<T>, 4>& U,
                                   const ScalarField<T>& psi, T mass) {
    if (psi.geometry.dims() != 4)
        fail(errc::dimension_not_four, "oracle needs 4 dimensions");
    if (psi.dof != spinor_dof || !is_complex(psi.kind))
        fail(errc::shape_mismatch, "oracle psi shape");
    for (const auto& u : U)
        if (u.dof != su3_dof || u.geometry.extents != psi.geometry.extents || u.kind != psi.kind)
            fail(errc::shape_mismatch, "oracle link shape");

    using C = std::complex<double>;
    const auto& geom = psi.geometry;
    const GammaBasis& gb = gamma_basis();
    ScalarField<T> out = new_scalar_field<T>(geom, spinor_dof, psi.kind);
    const std::int64_t volume = geom.volume();

    auto load = [](std::span<const T> site, int count, C* dst) {
        for (int k = 0; k < count; ++k)
            dst[k] = {static_cast<double>(site[static_cast<std::size_t>(2 * k)]),
                      static_cast<double>(site[static_cast<std::size_t>(2 * k + 1)])};
    };

    for (std::int64_t si = 0; si < volume; ++si) {
        const SiteCoord x = site_coord(geom, si);
        std::array<C, 12> acc{};
        for (int mu = 0; mu < 4; ++mu) {
            const int L = geom.extents[static_cast<std::size_t>(mu)];
            SiteCoord xp = x, xm = x;
            xp[static_cast<std::size_t>(mu)] = (x[static_cast<std::size_t>(mu)] + 1) % L;
            xm[static_cast<std::size_t>(mu)] = (x[static_cast<std::size_t>(mu)] - 1 + L) % L;
            C uf[9], ub[9], pf[12], pb[12];
            load(U[static_cast<std::size_t>(mu)].site(si), 9, uf);
            load(U[static_cast<std::size_t>(mu)].site(site_index(geom, xm)), 9, ub);
            load(psi.site(site_index(geom, xp)), 12, pf);
            load(psi.site(site_index(geom, xm)), 12, pb);
            C tf[12], tb[12];
            for (int s = 0; s < 4; ++s)
                for (int a = 0; a < 3; ++a) {
                    C f{}, b{};
                    for (int k = 0; k < 3; ++k) {
                        f += uf[3 * a + k] * pf[3 * s + k];
                        b += std::conj(ub[3 * k + a]) * pb[3 * s + k];
                    }
                    tf[3 * s + a] = f;
                    tb[3 * s + a] = b;
                }
            for (int s = 0; s < 4; ++s)
                for (int a = 0; a < 3; ++a) {
                    C gf{}, gbk{};
                    for (int t = 0; t < 4; ++t) {
                        gf += gb.gamma[static_cast<std::size_t>(mu)][static_cast<std::size_t>(s)]
                                      [static_cast<std::size_t>(t)] *
                              tf[3 * t + a];
                        gbk += gb.gamma[static_cast<std::size_t>(mu)][static_cast<std::size_t>(s)]
                                       [static_cast<std::size_t>(t)] *
                               tb[3 * t + a];
                    }
                    acc[static_cast<std::size_t>(3 * s + a)] += tf[3 * s + a] - gf + tb[3 * s + a] + gbk;
                }
        }
        auto ps = psi.site(si);
        auto os = out.site(si);
        const double mp = static_cast<double>(mass) + 4.0;
        for (int k = 0; k < spinor_dof; ++k) {
            const C p{static_cast<double>(ps[static_cast<std::size_t>(2 * k)]),
                      static_cast<double>(ps[static_cast<std::size_t>(2 * k + 1)])};
            const C r = mp * p - 0.5 * acc[static_cast<std::size_t>(k)];
            os[static_cast<std::size_t>(2 * k)] = static_cast<T>(r.real());
            os[static_cast<std::size_t>(2 * k + 1)] = static_cast<T>(r.imag());
        }
    }
    return out;
}

/// Spin rotation by the diagonal gamma5 (signs read off gamma_basis()).
template <typename T>
void gamma5_apply_into(LatticeField<T>& out, const LatticeField<T>& psi) {
    detail::require_complex_field(psi, spinor_dof, "gamma5_apply");
    if (!out.same_shape(psi))
        fail(errc::shape_mismatch, "gamma5_apply output shape");
    const Mat4& g5 = gamma_basis().gamma5;
    const std::int64_t vl = psi.vl();
    for (std::int64_t o = 0; o < psi.dg().outer_volume; ++o)
        for (int s = 0; s < 4; ++s) {
            const T sign = static_cast<T>(g5[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)].real());
            for (int a = 0; a < 3; ++a) {
                T* dst = out.array(o, 3 * s + a).data();
                const T* src = psi.array(o, 3 * s + a).data();
                for (std::int64_t e = 0; e < vl; ++e)
                    dst[e] = sign * src[e];
            }
        }
}

template <typename T>
LatticeField<T> gamma5_apply(const LatticeField<T>& psi) {
    LatticeField<T> out(psi.dg(), psi.dof(), psi.kind());
    gamma5_apply_into(out, psi);
    return out;
}

} // namespace veclat
