#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "veclat/field.hpp"
#include "veclat/geometry.hpp"

namespace testutil {

// distance in representable doubles; 0 iff equal (+0 == -0)
inline std::uint64_t ulp_distance(double a, double b) {
    if (a == b)
        return 0;
    if (std::isnan(a) || std::isnan(b))
        return ~std::uint64_t{0};
    auto ordered = [](double x) -> std::uint64_t {
        const std::uint64_t u = std::bit_cast<std::uint64_t>(x);
        return (u >> 63) ? ~u : u | 0x8000000000000000ull;
    };
    const std::uint64_t ua = ordered(a), ub = ordered(b);
    return ua > ub ? ua - ub : ub - ua;
}

template <typename T>
std::uint64_t max_ulp(const veclat::ScalarField<T>& a, const veclat::ScalarField<T>& b) {
    std::uint64_t worst = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        worst = std::max(worst, ulp_distance(a.data[i], b.data[i]));
    return worst;
}

template <typename T>
double max_abs(const veclat::ScalarField<T>& a) {
    double m = 0.0;
    for (const T v : a.data)
        m = std::max(m, std::abs(static_cast<double>(v)));
    return m;
}

template <typename T>
double max_abs_diff(const veclat::ScalarField<T>& a, const veclat::ScalarField<T>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(static_cast<double>(a.data[i]) - static_cast<double>(b.data[i])));
    return m;
}

// integer arithmetic on '+', '-', '*' and parentheses; used to keep the
// published flop formulas honest against the kernel constants
inline long long eval_formula(const char*& p);

inline long long eval_formula_factor(const char*& p) {
    if (*p == '(') {
        ++p;
        const long long v = eval_formula(p);
        ++p; // ')'
        return v;
    }
    long long v = 0;
    while (*p >= '0' && *p <= '9')
        v = 10 * v + (*p++ - '0');
    return v;
}

inline long long eval_formula_term(const char*& p) {
    long long v = eval_formula_factor(p);
    while (*p == '*') {
        ++p;
        v *= eval_formula_factor(p);
    }
    return v;
}

inline long long eval_formula(const char*& p) {
    long long v = eval_formula_term(p);
    while (*p == '+' || *p == '-') {
        const char op = *p++;
        const long long rhs = eval_formula_term(p);
        v = op == '+' ? v + rhs : v - rhs;
    }
    return v;
}

inline long long eval_formula(const std::string& s) {
    const char* p = s.c_str();
    return eval_formula(p);
}

struct CommandResult {
    int exit_code = -1;
    std::string output; // stdout and stderr combined
};

inline CommandResult run_command(const std::string& cmd) {
    CommandResult res;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe)
        return res;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        res.output.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

// Source lane feeding destination lane `lane` when a shift crosses the
// sublattice boundary in `dim` `carry` times — derived purely from the
// site<->vector maps, independent of the split/rotate parameter formula.
inline int lane_source_from_site_maps(const veclat::DecomposedGeometry& dg, int dim, int carry,
                                      int lane) {
    veclat::SiteCoord x = veclat::vector_to_site(dg, 0, lane);
    const int O = dg.outer_extents[static_cast<std::size_t>(dim)];
    const int n = dg.layout.lanes_per_dim[static_cast<std::size_t>(dim)];
    const int o = x[static_cast<std::size_t>(dim)] % O;
    const int inner = x[static_cast<std::size_t>(dim)] / O;
    x[static_cast<std::size_t>(dim)] = o + O * ((inner + carry) % n);
    const auto [outer2, lane2] = veclat::site_to_vector(dg, x);
    return outer2 == 0 ? lane2 : -1; // outer must be unchanged
}

// every layout (any dimensionality taken from `geometry`) with total lanes n
inline std::vector<veclat::SimdLayout> layouts_up_to(const veclat::LatticeGeometry& geometry,
                                                     int max_lanes) {
    std::vector<veclat::SimdLayout> all;
    for (int n = 1; n <= max_lanes; n *= 2)
        for (auto& lay : veclat::enumerate_layouts(geometry, n))
            all.push_back(lay);
    return all;
}

} // namespace testutil
