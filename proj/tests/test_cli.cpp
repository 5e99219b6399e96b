// End-to-end tests of the command-line tool: output schemas, exit codes,
// machine-greppable error words, byte determinism, config round-trip.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("ddesolve-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
    ++counter;
    const std::string command = std::string(DDE_CLI_PATH) + " " + args +
                                " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("cli: zero-horizon solve emits the single initial row") {
    auto r = run_cli("solve --problem example-ode --theta 0 --h 0.5 --T 0");
    REQUIRE(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "t,y0");
    CHECK(lines[1] == "0,1");
}

TEST_CASE("cli: benchmark-convention solve reproduces the published value") {
    auto r = run_cli(
        "solve --problem example-ode --theta 1 --h 0.01 --T 0.05 "
        "--stage-time step-start");
    REQUIRE(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 7);  // header + 6 nodes
    CHECK(lines.back().substr(0, 5) == "0.05,");
    const double value = std::stod(lines.back().substr(5));
    CHECK(value == doctest::Approx(0.9565).epsilon(1e-4));
}

TEST_CASE("cli: csv output is byte-deterministic") {
    const std::string flags =
        "solve --problem delay-logistic --theta 0.5 --h 0.01 --T 20";
    auto a = run_cli(flags);
    auto b = run_cli(flags);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const std::string phase =
        "solve --problem rossler-delay --c 2.3 --h 0.01 --T 50 "
        "--kind phase-xy";
    auto c = run_cli(phase);
    auto d = run_cli(phase);
    REQUIRE(c.exit_code == 0);
    CHECK(c.out == d.out);
    CHECK(lines_of(c.out)[0] == "x,y");
}

TEST_CASE("cli: error kind uses the closed form when available") {
    auto r = run_cli(
        "solve --problem example-ode --theta 0.5 --h 0.1 --T 1 --kind error");
    REQUIRE(r.exit_code == 0);
    auto lines = lines_of(r.out);
    CHECK(lines[0] == "t,abs_error");
    REQUIRE(lines.size() == 12);
    CHECK(lines[1] == "0,0");

    // Without a closed form the reference oracle kicks in.
    auto r2 = run_cli(
        "solve --problem delay-logistic --theta 0.5 --h 0.1 --T 2 "
        "--kind error --ref-h 0.001");
    REQUIRE(r2.exit_code == 0);
    CHECK(lines_of(r2.out)[0] == "t,abs_error");
}

TEST_CASE("cli: validation failures exit 2 with a code word") {
    auto r = run_cli("solve --problem delay-logistic --h 0.3");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("MISALIGNED_DELAY") != std::string::npos);

    auto r2 = run_cli("solve --problem no-such-problem");
    CHECK(r2.exit_code == 2);
    CHECK(r2.err.find("UNKNOWN_PROBLEM") != std::string::npos);

    auto r3 = run_cli("solve --problem example-ode --kind phase-xy --T 1");
    CHECK(r3.exit_code == 2);
    CHECK(r3.err.find("INVALID_ARGUMENT") != std::string::npos);

    auto r4 = run_cli("solve --problem example-ode --theta 2 --T 1");
    CHECK(r4.exit_code == 2);

    auto r5 = run_cli("solve --problem delay-logistic --tau 0.5");
    CHECK(r5.exit_code == 2);

    // Flag-level errors are validation failures too.
    auto r6 = run_cli("solve --no-such-flag");
    CHECK(r6.exit_code == 2);
    auto r7 = run_cli("--help");
    CHECK(r7.exit_code == 0);
}

TEST_CASE("cli: numerical failures exit 3 with a code word") {
    // Explicit Euler on a violently unstable linear problem overflows.
    auto r = run_cli(
        "solve --problem linear-test --lambda 1e8 --mu 0 --tau 0 "
        "--method euler --h 0.01");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("NONFINITE") != std::string::npos);
}

TEST_CASE("cli: table1 emits all rows and the footnote") {
    auto r = run_cli("table1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("0.20*") != std::string::npos);
    CHECK(r.out.find("transcription error") != std::string::npos);

    const fs::path csv = scratch_dir() / "table1.csv";
    auto r2 = run_cli("table1 --out " + csv.string());
    REQUIRE(r2.exit_code == 0);
    auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 13);
    CHECK(lines[0] == "t,S1,S2,S3,S,e1,e2,e3");
    CHECK(lines[1].substr(0, 4) == "0,1,");
}

TEST_CASE("cli: order study prints estimates and asserts pass") {
    auto r = run_cli(
        "order --problem example-ode --theta 0.5 --T 1 "
        "--h-list 0.1,0.05,0.025 --assert");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("order=") != std::string::npos);
    CHECK(r.out.find("order assertion passed") != std::string::npos);

    auto r2 = run_cli(
        "order --problem example-ode --theta 1 --T 1 "
        "--h-list 0.1,0.05,0.025 --assert");
    CHECK(r2.exit_code == 0);

    const fs::path csv = scratch_dir() / "order.csv";
    auto r3 = run_cli(
        "order --problem example-ode --theta 0.5 --T 1 "
        "--h-list 0.1,0.05 --out " + csv.string());
    REQUIRE(r3.exit_code == 0);
    auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "h,max_error,order");
    CHECK(lines[1].substr(0, 4) == "0.1,");
}

TEST_CASE("cli: stability probe prints the report and asserts") {
    const fs::path csv = scratch_dir() / "stab.csv";
    auto r = run_cli(
        "stability --problem example-ode --theta 1 --h 0.01 --T 1 "
        "--epsilon 1e-6 --assert --out " + csv.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("observed_max_dev=") != std::string::npos);
    CHECK(r.out.find("stability assertion passed") != std::string::npos);
    auto lines = lines_of(slurp(csv));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "epsilon,observed,bound");

    // No Lipschitz bound recorded for the Roessler problem.
    auto r2 = run_cli(
        "stability --problem rossler-delay --h 0.01 --T 10 --epsilon 1e-6");
    CHECK(r2.exit_code == 2);
    CHECK(r2.err.find("INVALID_ARGUMENT") != std::string::npos);
}

TEST_CASE("cli: config file round-trips losslessly") {
    const fs::path dir = scratch_dir();
    const fs::path spec = dir / "spec.json";
    const fs::path a = dir / "a.csv";
    const fs::path b = dir / "b.csv";

    auto r1 = run_cli(
        "solve --problem linear-test --lambda -1 --mu 0.5 --tau 1 "
        "--theta 0.75 --k 4 --h 0.01 --T 2 --out " + a.string() +
        " --dump-config " + spec.string());
    REQUIRE(r1.exit_code == 0);

    auto r2 = run_cli("solve --config " + spec.string() + " --out " +
                      b.string());
    REQUIRE(r2.exit_code == 0);
    const std::string bytes_a = slurp(a);
    CHECK(!bytes_a.empty());
    CHECK(bytes_a == slurp(b));

    // Flags still win over the config file.
    auto r3 = run_cli("solve --config " + spec.string() + " --T 0");
    REQUIRE(r3.exit_code == 0);
    CHECK(lines_of(r3.out).size() == 2);

    // Every registered problem round-trips, including its parameters.
    const std::vector<std::string> runs = {
        "--problem delay-logistic --T 5",
        "--problem example-ode --T 1",
        "--problem rossler-delay --c 7.9 --T 20",
        "--problem linear-test --lambda 0 --mu 1 --tau 1",
    };
    int index = 0;
    for (const auto& flags : runs) {
        const fs::path cfg = dir / ("rt" + std::to_string(index++) + ".json");
        auto first = run_cli("solve " + flags + " --dump-config " +
                             cfg.string());
        REQUIRE(first.exit_code == 0);
        auto second = run_cli("solve --config " + cfg.string());
        REQUIRE(second.exit_code == 0);
        CHECK(first.out == second.out);
    }
}

TEST_CASE("cli: theta sweep writes one deterministic file per value") {
    const fs::path dir = scratch_dir() / "sweep";
    fs::create_directories(dir);
    auto r = run_cli(
        "solve --problem example-ode --h 0.1 --T 1 "
        "--sweep-theta 0,0.5,1 --out-dir " + dir.string());
    REQUIRE(r.exit_code == 0);
    for (const char* theta : {"0", "0.5", "1"}) {
        const fs::path f =
            dir / (std::string("example-ode-theta-") + theta + ".csv");
        CAPTURE(f.string());
        CHECK(fs::exists(f));
        CHECK(lines_of(slurp(f)).size() == 12);
    }
    // The theta=0.5 sweep file matches a direct run byte for byte.
    auto direct = run_cli("solve --problem example-ode --h 0.1 --T 1 --theta 0.5");
    REQUIRE(direct.exit_code == 0);
    CHECK(direct.out == slurp(dir / "example-ode-theta-0.5.csv"));

    auto r2 = run_cli(
        "solve --problem example-ode --h 0.1 --T 1 --sweep-theta 0,1");
    CHECK(r2.exit_code == 2);  // --out-dir required
}
