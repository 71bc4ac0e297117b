#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "veclat/geometry.hpp"
#include "veclat/vecperm.hpp"

namespace veclat {

struct BenchConfig {
    std::string kernel = "su3"; // su3 | dhop | cshift | splitrotate
    std::vector<int> extents;
    std::string layout = "auto"; // dotted lanes-per-dim, or "auto" to sweep
    int threads = 1;
    int reps = 10;
    int warmup = 2;
    std::uint64_t seed = 1;
    ShiftImpl shift_impl = ShiftImpl::split_rotate;
};

struct BenchRow {
    std::string kernel;
    std::vector<int> extents;
    std::vector<int> layout;
    int lanes = 1;
    int threads = 1;
    int reps = 1;
    double best_s = 0.0;
    double mean_s = 0.0;
    double gflops = 0.0; // 0 for the bandwidth kernels
    double gbps = 0.0;   // 0 for the flop kernels
    std::uint64_t checksum = 0;
    std::string flops_formula; // derived from the kernel name, not serialized

    bool operator==(const BenchRow&) const = default;
};

struct FlopCount {
    std::int64_t per_site = 0;
    std::string formula;
};

/// Flops charged per site for GFlop/s reporting. The bandwidth kernels
/// (cshift, splitrotate) report 0 flops and GB/s instead.
FlopCount flops_per_site(const std::string& kernel);

/// One row per benchmarked layout: warmup untimed runs, then reps timed
/// runs of the kernel; best and mean wall seconds, a throughput figure, and
/// the rounded canonical checksum of the result field, so every performance
/// run doubles as a correctness run.
std::vector<BenchRow> run_benchmark(const BenchConfig& cfg);

inline constexpr const char* csv_header =
    "kernel,extents,layout,lanes,threads,reps,best_s,mean_s,gflops,gbps,checksum";

void emit_csv(const std::vector<BenchRow>& rows, std::ostream& os);
void emit_csv_file(const std::vector<BenchRow>& rows, const std::string& path);
std::vector<BenchRow> parse_csv(std::istream& is);
std::vector<BenchRow> parse_csv_file(const std::string& path);

} // namespace veclat
