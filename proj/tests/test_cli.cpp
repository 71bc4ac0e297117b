#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "veclat/bench.hpp"

using testutil::run_command;

namespace {

const std::string bin = BENCH_BIN;

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("cli: plain run emits one CSV row to stdout") {
    const auto res = run_command(bin +
                                 " --kernel su3 --extents 4.4.4.4 --layout 2.2.2.2"
                                 " --reps 2 --warmup 0 --seed 5");
    REQUIRE(res.exit_code == 0);
    const auto lines = lines_of(res.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == veclat::csv_header);
    CHECK(lines[1].substr(0, 16) == "su3,4.4.4.4,2.2.");
}

TEST_CASE("cli: runs are deterministic per seed") {
    const std::string cmd = bin +
                            " --kernel dhop --extents 4.4.4.4 --layout 2.2.2.2"
                            " --reps 1 --warmup 0 --seed 9";
    const auto a = run_command(cmd);
    const auto b = run_command(cmd);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const std::string ca = lines_of(a.output)[1];
    const std::string cb = lines_of(b.output)[1];
    CHECK(ca.substr(ca.rfind(',')) == cb.substr(cb.rfind(',')));
}

TEST_CASE("cli: --out writes a parseable CSV file") {
    const std::string path = "cli_out_test.csv";
    const auto res = run_command(bin +
                                 " --kernel cshift --extents 4.4 --layout 2.2"
                                 " --reps 2 --warmup 0 --out " +
                                 path);
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.empty());
    const auto rows = veclat::parse_csv_file(path);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].kernel == "cshift");
    CHECK(rows[0].gbps > 0.0);
    std::remove(path.c_str());
}

TEST_CASE("cli: VECLAT_THREADS sets the default, --threads wins") {
    const std::string tail = " --kernel su3 --extents 4.4.4.4 --layout 1.1.1.1 --reps 1 --warmup 0";
    const auto env = run_command("VECLAT_THREADS=2 " + bin + tail);
    REQUIRE(env.exit_code == 0);
    CHECK(lines_of(env.output)[1].find(",2,1,") != std::string::npos); // threads=2, reps=1

    const auto overridden = run_command("VECLAT_THREADS=2 " + bin + tail + " --threads 3");
    REQUIRE(overridden.exit_code == 0);
    CHECK(lines_of(overridden.output)[1].find(",3,1,") != std::string::npos);
}

TEST_CASE("cli: machine-parseable single-line errors") {
    struct Case {
        std::string args;
        std::string prefix;
    };
    const std::vector<Case> cases = {
        {"--kernel dslash --extents 4.4 --layout 1.1", "error: UnknownKernel: "},
        {"--kernel su3 --extents 4.4 --layout 3.2", "error: NonPowerOfTwoLane: "},
        {"--kernel su3 --extents 4.4 --layout 8.2", "error: LaneExceedsExtent: "},
        {"--kernel su3 --extents 4.x --layout 1.1", "error: InvalidConfig: "},
        {"--kernel dhop --extents 8.8.8.8 --layout 4.2.2.2 --shift-impl permute",
         "error: PermuteUnsupportedLayout: "},
        {"--kernel su3 --extents 4.4 --layout 1.1 --shift-impl spin", "error: InvalidConfig: "},
        {"--kernel su3 --extents 4.4 --layout 1.1 --reps 0", "error: InvalidConfig: "},
        {"--bogus-flag", "error: InvalidConfig: "},
    };
    for (const auto& c : cases) {
        CAPTURE(c.args);
        const auto res = run_command(bin + " " + c.args);
        CHECK(res.exit_code != 0);
        const auto lines = lines_of(res.output);
        REQUIRE(lines.size() == 1);
        CHECK(lines[0].substr(0, c.prefix.size()) == c.prefix);
    }
}

TEST_CASE("cli: auto sweep emits multiple rows") {
    const auto res = run_command(bin +
                                 " --kernel splitrotate --extents 4.4 --layout auto"
                                 " --reps 1 --warmup 0");
    REQUIRE(res.exit_code == 0);
    const auto lines = lines_of(res.output);
    CHECK(lines.size() > 5); // header + one row per valid layout
}
