#include "veclat/bench.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "veclat/errors.hpp"
#include "veclat/field.hpp"
#include "veclat/kernels.hpp"
#include "veclat/thread_pool.hpp"

namespace veclat {

namespace {

// fixed inputs: everything a row reports must be a function of the config
constexpr double bench_mass = 0.1;
constexpr int max_sweep_lanes = 256;

bool shifting_kernel(const std::string& kernel) {
    return kernel == "dhop" || kernel == "cshift";
}

struct Timed {
    double best_s = 0.0;
    double mean_s = 0.0;
};

template <typename F>
Timed time_reps(int warmup, int reps, F&& op) {
    using clock = std::chrono::steady_clock;
    for (int i = 0; i < warmup; ++i)
        op();
    Timed t;
    t.best_s = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = clock::now();
        op();
        const double dt = std::chrono::duration<double>(clock::now() - t0).count();
        t.best_s = std::min(t.best_s, dt);
        sum += dt;
    }
    t.mean_s = sum / reps;
    return t;
}

BenchRow bench_one(const BenchConfig& cfg, const DecomposedGeometry& dg, ThreadPool& pool) {
    constexpr ScalarKind kind = ScalarKind::complex_double;
    const std::int64_t volume = dg.geometry.volume();
    BenchRow row;
    row.kernel = cfg.kernel;
    row.extents = dg.geometry.extents;
    row.layout = dg.layout.lanes_per_dim;
    row.lanes = dg.lanes;
    row.threads = pool.size();
    row.reps = cfg.reps;
    row.flops_formula = flops_per_site(cfg.kernel).formula;

    if (cfg.kernel == "su3") {
        const auto a = random_su3<double>(dg, cfg.seed);
        const auto b = random_su3<double>(dg, cfg.seed + 1);
        LatticeField<double> c(dg, su3_dof, kind);
        const Timed t = time_reps(cfg.warmup, cfg.reps, [&] { su3_mmul_into(c, a, b, &pool); });
        row.best_s = t.best_s;
        row.mean_s = t.mean_s;
        row.gflops = static_cast<double>(su3_mmul_site_flops * volume) / t.best_s / 1e9;
        row.checksum = canonical_checksum(c);
    } else if (cfg.kernel == "dhop") {
        const std::array<LatticeField<double>, 4> U = {
            random_su3<double>(dg, cfg.seed), random_su3<double>(dg, cfg.seed + 1),
            random_su3<double>(dg, cfg.seed + 2), random_su3<double>(dg, cfg.seed + 3)};
        const auto psi = new_field_random<double>(dg, spinor_dof, kind, cfg.seed + 4);
        LatticeField<double> out(dg, spinor_dof, kind);
        auto ws = make_wilson_workspace<double>(dg, kind);
        const Timed t = time_reps(cfg.warmup, cfg.reps, [&] {
            wilson_dirac_into(out, U, psi, bench_mass, ws, cfg.shift_impl, &pool);
        });
        row.best_s = t.best_s;
        row.mean_s = t.mean_s;
        row.gflops = static_cast<double>(wilson_site_flops * volume) / t.best_s / 1e9;
        row.checksum = canonical_checksum(out);
    } else if (cfg.kernel == "cshift") {
        const auto f = new_field_random<double>(dg, 1, kind, cfg.seed);
        LatticeField<double> g(dg, 1, kind);
        const Timed t = time_reps(cfg.warmup, cfg.reps,
                                  [&] { cshift_into(g, f, 0, +1, cfg.shift_impl, &pool); });
        row.best_s = t.best_s;
        row.mean_s = t.mean_s;
        // payload read once + written once, no cache modeling
        row.gbps = 2.0 * static_cast<double>(volume) * 2 * sizeof(double) / t.best_s / 1e9;
        row.checksum = canonical_checksum(g);
    } else { // splitrotate: the raw lane rearrangement on every Grid-array
        const auto f = new_field_random<double>(dg, 1, kind, cfg.seed);
        LatticeField<double> g(dg, 1, kind);
        SplitRotateParams pr{1, 0, f.vl()}; // n = 1: plain copy, nothing to mix
        for (int k = 0; k < dg.layout.dims(); ++k) {
            if (dg.layout.lanes_per_dim[static_cast<std::size_t>(k)] > 1) {
                pr = shift_permutation_params(dg, k, 1, kind);
                break;
            }
        }
        const Timed t = time_reps(cfg.warmup, cfg.reps, [&] {
            pool.parallel_for(0, dg.outer_volume, [&](std::int64_t lo, std::int64_t hi) {
                for (std::int64_t o = lo; o < hi; ++o)
                    split_rotate_into<double>(g.array(o, 0), f.array(o, 0), pr.s, pr.r);
            });
        });
        row.best_s = t.best_s;
        row.mean_s = t.mean_s;
        row.gbps = 2.0 * static_cast<double>(volume) * 2 * sizeof(double) / t.best_s / 1e9;
        row.checksum = canonical_checksum(g);
    }
    return row;
}

void append_row(std::string& out, const BenchRow& row) {
    char buf[128];
    out += row.kernel;
    out += ',';
    out += format_extents(row.extents);
    out += ',';
    out += format_extents(row.layout);
    std::snprintf(buf, sizeof buf, ",%d,%d,%d", row.lanes, row.threads, row.reps);
    out += buf;
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g", row.best_s, row.mean_s, row.gflops,
                  row.gbps);
    out += buf;
    std::snprintf(buf, sizeof buf, ",%016llx", static_cast<unsigned long long>(row.checksum));
    out += buf;
    out += '\n';
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return fields;
}

int parse_int_field(const std::string& s) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        fail(errc::invalid_config, "bad integer field '" + s + "'");
    return value;
}

double parse_double_field(const std::string& s) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        fail(errc::invalid_config, "bad number field '" + s + "'");
    return value;
}

std::uint64_t parse_hex_field(const std::string& s) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        fail(errc::invalid_config, "bad checksum field '" + s + "'");
    return value;
}

} // namespace

FlopCount flops_per_site(const std::string& kernel) {
    if (kernel == "su3")
        return {su3_mmul_site_flops, su3_mmul_flops_formula};
    if (kernel == "dhop")
        return {wilson_site_flops, wilson_flops_formula};
    if (kernel == "cshift" || kernel == "splitrotate")
        return {0, "0"}; // bandwidth kernels: bytes = V*m*scalar_size*2
    fail(errc::unknown_kernel, "kernel '" + kernel + "'");
}

std::vector<BenchRow> run_benchmark(const BenchConfig& cfg) {
    flops_per_site(cfg.kernel); // validates the kernel name
    if (cfg.reps < 1)
        fail(errc::invalid_config, "reps must be >= 1, got " + std::to_string(cfg.reps));
    if (cfg.warmup < 0)
        fail(errc::invalid_config, "warmup must be >= 0, got " + std::to_string(cfg.warmup));
    if (cfg.threads < 1)
        fail(errc::invalid_config, "threads must be >= 1, got " + std::to_string(cfg.threads));
    if (cfg.extents.empty())
        fail(errc::invalid_config, "extents are required");
    for (const int e : cfg.extents)
        if (e < 1)
            fail(errc::invalid_config, "extents must be positive, got " + format_extents(cfg.extents));

    const LatticeGeometry geom{cfg.extents};
    const bool permute_shifts = shifting_kernel(cfg.kernel) && cfg.shift_impl == ShiftImpl::permute;

    std::vector<DecomposedGeometry> decomps;
    if (cfg.layout == "auto") {
        for (int n = 1; n <= max_sweep_lanes; n *= 2) {
            for (const SimdLayout& lay : enumerate_layouts(geom, n)) {
                if (permute_shifts && !permute_path_valid(lay))
                    continue; // sweep skips layouts the permute path cannot express
                decomps.push_back(validate(geom, lay));
            }
        }
    } else {
        const SimdLayout lay{parse_extents(cfg.layout)};
        const DecomposedGeometry dg = validate(geom, lay);
        if (permute_shifts && !permute_path_valid(lay))
            fail(errc::permute_unsupported_layout,
                 "permute shift path needs all layout entries <= 2, got " + cfg.layout);
        decomps.push_back(dg);
    }

    ThreadPool pool(cfg.threads);
    std::vector<BenchRow> rows;
    rows.reserve(decomps.size());
    for (const DecomposedGeometry& dg : decomps)
        rows.push_back(bench_one(cfg, dg, pool));
    return rows;
}

void emit_csv(const std::vector<BenchRow>& rows, std::ostream& os) {
    std::string out{csv_header};
    out += '\n';
    for (const BenchRow& row : rows)
        append_row(out, row);
    os << out;
    if (!os)
        fail(errc::io_failure, "csv write failed");
}

void emit_csv_file(const std::vector<BenchRow>& rows, const std::string& path) {
    std::ofstream file(path);
    if (!file)
        fail(errc::io_failure, "cannot open '" + path + "' for writing");
    emit_csv(rows, file);
}

std::vector<BenchRow> parse_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != csv_header)
        fail(errc::invalid_config, "csv header mismatch");
    std::vector<BenchRow> rows;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 11)
            fail(errc::invalid_config, "csv row has " + std::to_string(f.size()) + " fields");
        BenchRow row;
        row.kernel = f[0];
        row.extents = parse_extents(f[1]);
        row.layout = parse_extents(f[2]);
        row.lanes = parse_int_field(f[3]);
        row.threads = parse_int_field(f[4]);
        row.reps = parse_int_field(f[5]);
        row.best_s = parse_double_field(f[6]);
        row.mean_s = parse_double_field(f[7]);
        row.gflops = parse_double_field(f[8]);
        row.gbps = parse_double_field(f[9]);
        row.checksum = parse_hex_field(f[10]);
        row.flops_formula = flops_per_site(row.kernel).formula;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BenchRow> parse_csv_file(const std::string& path) {
    std::ifstream file(path);
    if (!file)
        fail(errc::io_failure, "cannot open '" + path + "' for reading");
    return parse_csv(file);
}

} // namespace veclat
