#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "veclat/bench.hpp"
#include "veclat/errors.hpp"
#include "veclat/geometry.hpp"

namespace {

int default_threads() {
    if (const char* env = std::getenv("VECLAT_THREADS")) {
        try {
            const int t = std::stoi(env);
            if (t >= 1)
                return t;
        } catch (const std::exception&) {
            // fall through to the CLI default
        }
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SIMD lattice layout micro-benchmarks"};

    std::string kernel = "su3";
    std::string extents = "8.8.8.8";
    std::string layout = "auto";
    std::string shift_impl = "split_rotate";
    std::string out_path;
    int threads = default_threads();
    int reps = 10;
    int warmup = 2;
    std::uint64_t seed = 1;

    app.add_option("--kernel", kernel, "su3 | dhop | cshift | splitrotate");
    app.add_option("--extents", extents, "lattice extents, e.g. 8.8.8.8");
    app.add_option("--layout", layout, "lanes per dimension, e.g. 2.2.4.4, or 'auto' to sweep");
    app.add_option("--threads", threads, "worker threads (default: VECLAT_THREADS or 1)");
    app.add_option("--reps", reps, "timed repetitions per row");
    app.add_option("--warmup", warmup, "untimed repetitions per row");
    app.add_option("--seed", seed, "RNG seed for the input fields");
    app.add_option("--shift-impl", shift_impl, "split_rotate | permute");
    app.add_option("--out", out_path, "CSV output path (default: stdout)");

    try {
        app.parse(argc, argv);

        veclat::BenchConfig cfg;
        cfg.kernel = kernel;
        cfg.extents = veclat::parse_extents(extents);
        cfg.layout = layout;
        cfg.threads = threads;
        cfg.reps = reps;
        cfg.warmup = warmup;
        cfg.seed = seed;
        cfg.shift_impl = veclat::parse_shift_impl(shift_impl);

        const std::vector<veclat::BenchRow> rows = veclat::run_benchmark(cfg);
        if (out_path.empty())
            veclat::emit_csv(rows, std::cout);
        else
            veclat::emit_csv_file(rows, out_path);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: InvalidConfig: " << e.what() << '\n';
        return 1;
    } catch (const veclat::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: InvalidConfig: " << e.what() << '\n';
        return 1;
    }
}
