// End-to-end runs of the curvlab binary: exit codes and report determinism.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

const std::string bin = CURVLAB_BIN;
const std::string work = CURVLAB_WORK_DIR;

int run(const std::string& args, const std::string& out = "/dev/null")
{
    const std::string cmd = bin + " " + args + " > " + out + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_config(const std::string& name, const std::string& body)
{
    const std::string path = work + "/" + name;
    std::ofstream(path) << body;
    return path;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("exit code 0 when every check passes")
{
    const auto cfg = write_config("pass.cfg", "kernel = \"szego\"\nchecks = posdef, curvature, contraction, divisible\n");
    CHECK(run("check --config " + cfg) == 0);
    CHECK(run("scenario szego_baseline") == 0);
    CHECK(run("scenario agler_counterexample --json") == 0);
    CHECK(run("expand --kernel \"da(2)\" --order 3 --center \"0.1, 0.2i\"") == 0);
    CHECK(run("curvature --kernel szego --at 0.3+0.1i") == 0);
}

TEST_CASE("exit code 1 when a check fails")
{
    const auto cfg = write_config("fail.cfg", "kernel = \"diag([8,16]; tail=15)\"\nchecks = contraction, curvature\n");
    CHECK(run("check --config " + cfg) == 1);
}

TEST_CASE("exit code 2 on invalid input")
{
    CHECK(run("check --config " + write_config("order.cfg", "kernel = \"szego\"\norder = 20\n")) == 2);
    CHECK(run("check --config " + write_config("syntax.cfg", "kernel = \"contract(diag([1,2]; tail_expr))\"\n")) == 2);
    CHECK(run("check --config " + write_config("domain.cfg", "kernel = \"szego * da(2)\"\n")) == 2);
    CHECK(run("check --config " + work + "/missing.cfg") == 2);
    CHECK(run("scenario no_such_scenario") == 2);
    CHECK(run("expand --kernel szego --order 13") == 2);
    CHECK(run("curvature --kernel szego --at 1.5") == 2);
    CHECK(run("frobnicate") == 2);
}

TEST_CASE("JSON reports are byte-identical across runs")
{
    const auto cfg = write_config("json.cfg", "kernel = \"szego^2\"\nchecks = posdef, curvature, divisible\n"
                                              "seed = 11\nformat = json\n");
    const std::string a = work + "/a.json", b = work + "/b.json";
    REQUIRE(run("check --config " + cfg, a) == 0);
    REQUIRE(run("check --config " + cfg, b) == 0);
    const std::string ja = slurp(a);
    CHECK(ja == slurp(b));
    CHECK(ja.find("\"checks\"") != std::string::npos);
    CHECK(ja.find("\"points\"") != std::string::npos);

    REQUIRE(run("scenario nondivisible_contraction --json", a) == 0);
    REQUIRE(run("scenario nondivisible_contraction --json", b) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("seed override from the environment")
{
    const auto cfg = write_config("seed.cfg", "kernel = \"szego\"\nchecks = posdef\nformat = json\n");
    const std::string a = work + "/s1.json", b = work + "/s2.json";
    REQUIRE(run("check --config " + cfg, a) == 0);
    const std::string cmd = "CURVLAB_SEED=5 " + bin + " check --config " + cfg + " > " + b;
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(slurp(a) != slurp(b));
}
