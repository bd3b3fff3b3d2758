#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <ppmwt/bounds.hpp>

#include "cli.hpp"

using ppmwt::cli::run;

namespace {

struct Invocation {
    int exit_code = -1;
    std::string out;
    std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Invocation result;
    result.exit_code = run(args, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("capacity: single point matches the library bit-exactly") {
    const auto r = invoke({"capacity", "--eta", "0.8", "--E", "1e-4"});
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "E,eta,capacity_nats,approx_nats");
    std::istringstream row(lines[1]);
    std::string cell;
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == 1e-4);
    std::getline(row, cell, ',');
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == ppmwt::bounds::secrecy_capacity(0.8, 1e-4));
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == ppmwt::bounds::secrecy_capacity_approx(0.8, 1e-4));
}

TEST_CASE("capacity: boundary transmissivity gives zero") {
    const auto r = invoke({"capacity", "--eta", "0.5", "--E", "0.1"});
    REQUIRE(r.exit_code == 0);
    CHECK(lines_of(r.out)[1] == "0.1,0.5,0,0");
}

TEST_CASE("capacity: a seven-point sweep emits seven rows plus the header") {
    const auto r = invoke({"capacity", "--eta", "0.8", "--E-sweep", "1e-9:1e-3:7"});
    REQUIRE(r.exit_code == 0);
    CHECK(lines_of(r.out).size() == 8);
}

TEST_CASE("optimize: byte-identical output on repeated runs") {
    const std::vector<std::string> args{"optimize", "--eta", "0.8",
                                        "--E-sweep", "1e-6:1e-5:2"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto lines = lines_of(a.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "E,b,n,k,lambda_bits,alpha_sq,theta,delta,eps,rate_nats,capacity_nats,feasible");
}

TEST_CASE("optimize: zero secrecy target makes every row infeasible") {
    const auto r = invoke({"optimize", "--eta", "0.8", "--E-sweep", "1e-7:1e-5:3",
                           "--delta-target", "0"});
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    for (std::size_t i = 1; i < lines.size(); ++i)
        CHECK(lines[i].find(",false") != std::string::npos);
}

TEST_CASE("simulate: identical CSV across repeats and worker counts") {
    const std::vector<std::string> base{"simulate", "--eta", "0.8", "--b", "8",
                                        "--k", "2", "--alpha-sq", "2.0",
                                        "--trials", "20000", "--rng-seed", "7"};
    auto with_workers = [&](const std::string& w) {
        auto args = base;
        args.push_back("--workers");
        args.push_back(w);
        return invoke(args);
    };
    const auto w1 = with_workers("1");
    const auto w4 = with_workers("4");
    const auto w1b = with_workers("1");
    REQUIRE(w1.exit_code == 0);
    CHECK(w1.out == w4.out);
    CHECK(w1.out == w1b.out);
}

TEST_CASE("simulate: a bright pulse never errs and passes dominance") {
    const auto r = invoke({"simulate", "--eta", "0.8", "--b", "8", "--k", "2",
                           "--alpha-sq", "3000", "--trials", "5000"});
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].find(",0,0,") != std::string::npos);  // empirical_error, radius
    CHECK(lines[1].find("true") != std::string::npos);
}

TEST_CASE("exit codes: usage, infeasible, selftest failure") {
    CHECK(invoke({"nonsense"}).exit_code == 1);
    CHECK(invoke({"capacity", "--eta", "0.8"}).exit_code == 1);            // missing E
    CHECK(invoke({"simulate", "--eta", "0.8", "--b", "8"}).exit_code == 1);  // missing k
    CHECK(invoke({"capacity", "--eta", "1.5", "--E", "0.1"}).exit_code == 2);
    CHECK(invoke({"simulate", "--eta", "0.4", "--b", "8", "--k", "2",
                  "--alpha-sq", "1"}).exit_code == 2);
    CHECK(invoke({"simulate", "--eta", "0.8", "--b", "9", "--k", "2",
                  "--alpha-sq", "1"}).exit_code == 2);  // not a power of two
    CHECK(invoke({"params", "--eta", "0.8", "--E", "0.5"}).exit_code == 0);  // infeasible row
    CHECK(invoke({"--help"}).exit_code == 0);
}

TEST_CASE("selftest passes clean and detects the injected fault") {
    const auto clean = invoke({"selftest"});
    CHECK(clean.exit_code == 0);
    CHECK(clean.out.find("selftest passed") != std::string::npos);

    const auto faulty = invoke({"selftest", "--inject-fault"});
    CHECK(faulty.exit_code == 3);
    CHECK(faulty.out.find("[FAIL]") != std::string::npos);
}

TEST_CASE("config file values load and command-line flags override them") {
    const std::string path = "/tmp/ppmwt_test_config.ini";
    {
        std::ofstream cfg(path);
        cfg << "# physical setup\n";
        cfg << "eta=0.8\n";
        cfg << "E=1e-4\n";
    }
    const auto from_file = invoke({"capacity", "--config", path});
    REQUIRE(from_file.exit_code == 0);
    const auto reference = invoke({"capacity", "--eta", "0.8", "--E", "1e-4"});
    CHECK(from_file.out == reference.out);

    const auto overridden = invoke({"capacity", "--config", path, "--eta", "0.9"});
    REQUIRE(overridden.exit_code == 0);
    const auto expected = invoke({"capacity", "--eta", "0.9", "--E", "1e-4"});
    CHECK(overridden.out == expected.out);
    std::remove(path.c_str());
}

TEST_CASE("--out writes the same bytes to a file") {
    const std::string path = "/tmp/ppmwt_test_out.csv";
    const auto direct = invoke({"params", "--eta", "0.8", "--E", "1e-4"});
    const auto filed = invoke({"params", "--eta", "0.8", "--E", "1e-4", "--out", path});
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("numeric cells round-trip through parsing") {
    const auto r = invoke({"bounds", "--eta", "0.8", "--E", "1e-5", "--theta", "0.2",
                           "--delta", "0.5", "--eps", "0.045", "--lambda", "1300"});
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    std::istringstream row(lines[1]);
    std::string cell;
    while (std::getline(row, cell, ',')) {
        if (cell == "true" || cell == "false") continue;
        const double value = std::stod(cell);
        std::ostringstream echo;
        char buffer[40];
        auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
        CHECK(std::string(buffer, end) == cell);
    }
}

TEST_CASE("bounds: an unsatisfiable budget becomes a feasible=false row") {
    // eps too small for the chain rule at this cutoff
    const auto r = invoke({"bounds", "--eta", "0.8", "--E", "1e-5", "--theta", "0.2",
                           "--delta", "0.1", "--eps", "0.001", "--lambda", "10"});
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].rfind(",false") == lines[1].size() - 6);
}

TEST_CASE("PPMWT_LOG=info surfaces optimizer diagnostics on stderr") {
    ::setenv("PPMWT_LOG", "info", 1);
    const auto r = invoke({"optimize", "--eta", "0.8", "--E", "1e-5"});
    ::unsetenv("PPMWT_LOG");
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("grid steps") != std::string::npos);

    const auto quiet = invoke({"optimize", "--eta", "0.8", "--E", "1e-5"});
    CHECK(quiet.err.empty());
}
