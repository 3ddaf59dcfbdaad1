#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(const std::string& args) {
    const auto err_path = std::filesystem::temp_directory_path() / "henon_cli_test_stderr.txt";
    const std::string cmd = std::string(HENON_CLI) + " " + args + " 2>" + err_path.string();
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err(err_path);
    std::stringstream ss;
    ss << err.rdbuf();
    r.err = ss.str();
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Cli, PolyEval) {
    EXPECT_EQ(run("poly eval --d 3 --x 2").out, "-1\n");
    EXPECT_EQ(run("poly eval --d 1 --x 5").out, "5\n");
    EXPECT_EQ(run("poly eval --d 7 --x 6").out, "9\n");
    EXPECT_EQ(run("poly eval --d 2 --x 1 --family r").out, "7\n");
    EXPECT_EQ(run("poly eval --d 2 --x 1/2 --family c").out, "0\n");
}

TEST(Cli, PolyCoeffs) {
    EXPECT_EQ(run("poly coeffs --d 3").out, "x^3/6 - 7x/6\n");
    EXPECT_EQ(run("poly coeffs --d 2 --family r").out, "x^2/2 - 9x/2 + 11\n");
    const auto j = nlohmann::json::parse(run("poly coeffs --d 3 --format json").out);
    EXPECT_EQ(j["coefficients"][1], "-7/6");
}

TEST(Cli, PolyTable) {
    const auto r = run("poly table --d 7 --range 6");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\n6,9\n"), std::string::npos);
    EXPECT_NE(r.out.find("\n-6,-9\n"), std::string::npos);
    EXPECT_NE(run("poly table --d 2 --range 1").out.find("1/2,-1"), std::string::npos);
}

TEST(Cli, Compress) {
    EXPECT_EQ(run("compress check --d 2 --m 8").code, 0);
    EXPECT_EQ(run("compress check --d 2 --m 9").code, 1);
    EXPECT_EQ(run("compress check --coeffs -11,89/6,-3,1/6 --m 11").code, 0);
    const auto j = nlohmann::json::parse(run("compress search --degree 3 --m 11 --canonical").out);
    EXPECT_EQ(j["count"], 1);
    EXPECT_EQ(j["solutions"][0], "x^3/6 - 3x^2 + 89x/6 - 11");
    EXPECT_EQ(nlohmann::json::parse(run("compress search --degree 2 --m 9").out)["count"], 0);
}

TEST(Cli, VerifySigma) {
    const auto literal = run("verify sigma --dmax 200");
    EXPECT_EQ(literal.code, 1);
    const auto reports = nlohmann::json::parse(literal.out);
    ASSERT_EQ(reports.size(), 200u);
    for (const auto& r : reports) EXPECT_EQ(r["pass"].get<bool>(), r["d"].get<int>() % 2 == 1);
    EXPECT_NE(literal.err.find("counterexample"), std::string::npos);
    EXPECT_EQ(run("verify sigma --dmax 200 --parity-signed").code, 0);
    EXPECT_EQ(run("verify sigma --d 199").code, 0);
}

TEST(Cli, VerifyBounds) {
    EXPECT_EQ(run("verify tail --d 7 --cap 507").code, 0);
    EXPECT_EQ(run("verify cd-bounds --which outer --d 10").code, 0);
    EXPECT_EQ(run("verify monotone --d 20").code, 0);
    EXPECT_EQ(run("verify convergence").code, 0);
    EXPECT_EQ(run("verify escape-real --dmin 2 --dmax 6").code, 0);
    EXPECT_EQ(run("verify escape-padic --d 3 --primes 2,3").code, 0);
    EXPECT_EQ(run("verify preperiodic --dmin 2 --dmax 8").code, 0);
    const auto j = nlohmann::json::parse(run("verify tail --d 3 --cap 10").out);
    EXPECT_EQ(j[0]["worst_margin"], "0");
}

TEST(Cli, Periodic) {
    const auto r = run("periodic --d 7");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\n7,1,0,49,22,"), std::string::npos) << r.out;
    const auto j = nlohmann::json::parse(run("periodic --d 9 --format json").out);
    EXPECT_EQ(j["count"], 89);
    EXPECT_EQ(j["longest_cycle"], 20);
}

TEST(Cli, CycleDump) {
    const auto j = nlohmann::json::parse(run("cycle dump --d 7").out);
    std::int64_t sum = 0;
    for (const auto& c : j["cycles"]) sum += c["length"].get<std::int64_t>();
    EXPECT_EQ(sum, j["report"]["total_periodic"].get<std::int64_t>());
}

TEST(Cli, SweepFlagsTableMismatches) {
    const auto good = run("sweep --dmin 17 --dmax 19 --cmin 0 --cmax 2");
    EXPECT_EQ(good.code, 0) << good.err;
    EXPECT_NE(good.out.find("\n17,5,2,218,97,"), std::string::npos) << good.out;
    EXPECT_NE(good.out.find("\n19,1,0,329,54,"), std::string::npos) << good.out;
    const auto bad = run("sweep --dmin 15 --dmax 15 --cmin -1 --cmax -1");
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("failures"), std::string::npos);
}

TEST(Cli, Hinf) {
    const auto periods = run("hinf periods --range 60");
    EXPECT_EQ(periods.code, 0);
    EXPECT_NE(periods.out.find("exceptions (17)"), std::string::npos);
    const auto j = nlohmann::json::parse(run("hinf periods --range 12 --format json").out);
    EXPECT_EQ(j["period_by_y_then_x"][3][0], 4);
    EXPECT_EQ(j["exceptions"].size(), 17u);
    const auto orbit = run("hinf orbit --x 0 --y 0 --eps 0 --iters 3");
    EXPECT_EQ(orbit.out, "step,x,y\n0,0,0\n1,0,0\n2,0,0\n3,0,0\n");
    EXPECT_NE(run("hinf orbit --x 3 --y 0 --iters 100 --format svg").out.find("<svg"), std::string::npos);
}

TEST(Cli, AtlasIsDeterministic) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "henon_atlas_a.csv", b = dir / "henon_atlas_b.csv";
    const std::string args = "hinf atlas --box 2 --eps 1e-3 --iters 200 --seed 1 --stride 10 --out ";
    ASSERT_EQ(run(args + a.string()).code, 0);
    ASSERT_EQ(run(args + b.string()).code, 0);
    const std::string first = slurp(a);
    EXPECT_EQ(first, slurp(b));
    EXPECT_EQ(first.rfind("base_x,base_y,period_class,step,x,y\n", 0), 0u);
    EXPECT_EQ(run("hinf atlas --box 0 --iters 5 --stride 1").out.find("0,0,1,0,"), 36u);
}

TEST(Cli, Radius) {
    const auto j = nlohmann::json::parse(run("radius --d 3 --place 2").out);
    EXPECT_EQ(j["radius"], "5/2");
    EXPECT_EQ(j["known_exception"], true);
    EXPECT_EQ(nlohmann::json::parse(run("radius --d 7 --place inf").out)["radius"], "7");
    EXPECT_EQ(run("radius --dmax 299 --pmax 100").code, 0);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("periodic --d 8").code, 2);
    EXPECT_EQ(run("poly eval --d 3 --x abc").code, 2);
    EXPECT_EQ(run("compress search --degree 4 --m 5").code, 2);
    const auto r = run("periodic --d 8");
    EXPECT_NE(r.err.find("\"error\":\"usage\""), std::string::npos) << r.err;
}
