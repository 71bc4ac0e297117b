#include "veclat/kernels.hpp"

namespace veclat {

namespace {

constexpr std::complex<double> o{0.0, 0.0};
constexpr std::complex<double> p1{1.0, 0.0};
constexpr std::complex<double> m1{-1.0, 0.0};
constexpr std::complex<double> pi{0.0, 1.0};
constexpr std::complex<double> mi{0.0, -1.0};

int classify_phase(std::complex<double> z) {
    if (z == p1)
        return 0;
    if (z == pi)
        return 1;
    if (z == m1)
        return 2;
    if (z == mi)
        return 3;
    fail(errc::invalid_config, "gamma entry is not a unit phase");
}

} // namespace

const GammaBasis& gamma_basis() {
    static const GammaBasis basis = [] {
        GammaBasis b;
        b.gamma[0] = {{{o, o, o, pi}, {o, o, pi, o}, {o, mi, o, o}, {mi, o, o, o}}};
        b.gamma[1] = {{{o, o, o, m1}, {o, o, p1, o}, {o, p1, o, o}, {m1, o, o, o}}};
        b.gamma[2] = {{{o, o, pi, o}, {o, o, o, mi}, {mi, o, o, o}, {o, pi, o, o}}};
        b.gamma[3] = {{{o, o, p1, o}, {o, o, o, p1}, {p1, o, o, o}, {o, p1, o, o}}};
        b.gamma5 = {{{p1, o, o, o}, {o, p1, o, o}, {o, o, m1, o}, {o, o, o, m1}}};
        return b;
    }();
    return basis;
}

const SpinProjection& spin_projection(int mu) {
    if (mu < 0 || mu >= 4)
        fail(errc::dim_out_of_range, "gamma index " + std::to_string(mu));
    static const std::array<SpinProjection, 4> table = [] {
        std::array<SpinProjection, 4> t{};
        for (int m = 0; m < 4; ++m) {
            const Mat4& g = gamma_basis().gamma[static_cast<std::size_t>(m)];
            for (int s = 0; s < 2; ++s) {
                int col = -1;
                for (int c = 0; c < 4; ++c) {
                    if (g[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] == o)
                        continue;
                    if (col >= 0)
                        fail(errc::invalid_config, "gamma row has two nonzeros");
                    col = c;
                }
                if (col < 2)
                    fail(errc::invalid_config, "gamma row does not couple spin halves");
                t[static_cast<std::size_t>(m)].partner[static_cast<std::size_t>(s)] = col;
                t[static_cast<std::size_t>(m)].code[static_cast<std::size_t>(s)] =
                    classify_phase(g[static_cast<std::size_t>(s)][static_cast<std::size_t>(col)]);
            }
        }
        return t;
    }();
    return table[static_cast<std::size_t>(mu)];
}

} // namespace veclat
