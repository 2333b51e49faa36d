#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// Golden tests against the built binary; the test runner sets GKNOT_BIN.

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("GKNOT_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "GKNOT_BIN must point at the gknot binary");
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 512> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int rc = pclose(pipe);
    return RunResult{WEXITSTATUS(rc), out};
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/gknot_test_") + name;
}

} // namespace

TEST_CASE("normalize prints the canonical form") {
    RunResult r = run_cli("normalize -e \"cable(1,5,U)\"");
    CHECK(r.status == 0);
    CHECK(r.out == "U\n");
    r = run_cli("normalize -e \"sum(U,cable(2,3,U))\"");
    CHECK(r.status == 0);
    CHECK(r.out == "cable(2,3,U)\n");
}

TEST_CASE("normalize exit codes distinguish domain and parse errors") {
    CHECK(run_cli("normalize -e \"cable(2,4,U)\"").status == 1);
    CHECK(run_cli("normalize -e \"cable(2,,U)\"").status == 2);
    CHECK(run_cli("bogus-subcommand").status == 2);
}

TEST_CASE("invariants output") {
    RunResult r = run_cli("invariants -e \"cable(2,3,U)\"");
    CHECK(r.status == 0);
    CHECK(r.out == "alexander: 1 + -1*t + 1*t^2\ngenus: 1\n");
}

TEST_CASE("level output") {
    RunResult r = run_cli("level -e \"sum(cable(2,3,U),cable(2,5,U))\"");
    CHECK(r.status == 0);
    CHECK(r.out == "2\n");
}

TEST_CASE("kit prints four elements and the gamma table for the sum example") {
    RunResult r = run_cli("kit -e \"sum(cable(2,3,U),cable(2,5,U))\"");
    CHECK(r.status == 0);
    CHECK(r.out ==
          "kit k1 cable(2,3,U)\n"
          "kit k2 U\n"
          "kit k3 cable(2,5,U)\n"
          "kit k4 U\n"
          "gamma k1: k2\n"
          "gamma k3: k4\n");
}

TEST_CASE("build then validate then extract round trip through files") {
    std::string path = temp_path("trefoil.rhd");
    RunResult r = run_cli("build -e \"cable(2,3,U)\" -o " + path);
    CHECK(r.status == 0);
    REQUIRE(r.out.rfind("root ", 0) == 0);
    std::string root = r.out.substr(5);
    root.erase(root.find_last_not_of('\n') + 1);

    RunResult v = run_cli("validate " + path);
    CHECK(v.status == 0);
    CHECK(v.out == "ok\n");

    RunResult e = run_cli("extract " + path + " -k " + root);
    CHECK(e.status == 0);
    CHECK(e.out.find("knot " + root + " cable(2,3,U)\n") == 0);
    std::remove(path.c_str());
}

TEST_CASE("validate reports ordering violations one per line with exit 1") {
    std::string path = temp_path("bad.rhd");
    {
        std::ofstream f(path);
        f << "source s1 split\nsink z1 s1\nsaddle t1 s1:m s1:m\n";
    }
    RunResult r = run_cli("validate " + path);
    CHECK(r.status == 1);
    CHECK(r.out.find("OrderingViolation\n") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("classify on the built unknot decomposition") {
    std::string path = temp_path("unknot.rhd");
    RunResult r = run_cli("build -e U -o " + path);
    CHECK(r.status == 0);
    RunResult c = run_cli("classify " + path + " s1 z1");
    CHECK(c.status == 0);
    CHECK(c.out == "HopfLink\n");
    std::remove(path.c_str());
}

TEST_CASE("enumerate counts are stable") {
    RunResult a = run_cli("enumerate --max-saddles 0 --coeff-bound 2 --max-depth 3 --count");
    RunResult b = run_cli("enumerate --max-saddles 0 --coeff-bound 2 --max-depth 3 --count");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("total ", 0) == 0);
    RunResult s = run_cli("enumerate --max-saddles 0 --coeff-bound 2 --max-depth 2 --valid-only");
    CHECK(s.out == "source s1 split; sink z1 s1\n");
}

TEST_CASE("byte identical reruns") {
    RunResult a = run_cli("invariants -e \"cable(3,4,cable(2,3,U))\"");
    RunResult b = run_cli("invariants -e \"cable(3,4,cable(2,3,U))\"");
    CHECK(a.out == b.out);
    CHECK(a.status == 0);
}
