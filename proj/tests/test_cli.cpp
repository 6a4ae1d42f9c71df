#include "necklace/cli.hpp"
#include "necklace/trig_sums.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace necklace;

namespace {
struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "necklace");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("necklace_test_" + name)).string();
}
} // namespace

TEST_CASE("sums subcommand")
{
    const auto r = run({"sums", "--variant", "alt_hat", "--k", "1", "--n", "1024"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    CHECK(header == "variant,k,n,x,direct,contour,asym,rel_err");
    CHECK(row.rfind("alt_hat,1,1024,0,", 0) == 0);
    // 17 significant digits round-trip exactly
    std::vector<std::string> fields;
    std::istringstream rs(row);
    for (std::string f; std::getline(rs, f, ',');)
        fields.push_back(f);
    REQUIRE(fields.size() >= 5);
    CHECK(std::stod(fields[4]) == s_alt_hat(1, 1024));

    const auto j = run({"sums", "--variant", "alt", "--n", "100,200", "--x", "0.1", "--format", "json"});
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["rows"].size() == 2);
    CHECK(doc["rows"][0]["rel_err"].get<double>() < 1e-7);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"sums", "--k", "2"}).code == 2);
    CHECK(run({"sums", "--variant", "even", "--x", "0"}).code == 2);
    CHECK(run({"sums", "--unknown", "1"}).code == 2);
    CHECK(run({"energy"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config file merges under flags")
{
    const std::string cfg = tmp("cfg.txt");
    {
        std::ofstream f(cfg);
        f << "# test\nvariant = odd\nk=3\nn=64\n";
    }
    const auto a = run({"--config", cfg, "sums"});
    REQUIRE(a.code == 0);
    CHECK(a.out.find("\nodd,3,64,") != std::string::npos);
    const auto b = run({"--config", cfg, "sums", "--k", "5"});
    REQUIRE(b.code == 0);
    CHECK(b.out.find("\nodd,5,64,") != std::string::npos);
    {
        std::ofstream f(cfg);
        f << "nosuchkey=1\n";
    }
    CHECK(run({"--config", cfg, "sums"}).code == 2);
    {
        std::ofstream f(cfg);
        f << "just garbage\n";
    }
    CHECK(run({"--config", cfg, "sums"}).code == 2);
    CHECK(run({"--config", tmp("missing.txt"), "sums"}).code == 2);
    std::remove(cfg.c_str());
}

TEST_CASE("identical config gives identical files")
{
    const std::string p1 = tmp("a1.csv"), p2 = tmp("a2.csv");
    REQUIRE(run({"ansatz", "--m", "64", "--points", "50", "--seed", "7", "--out", p1}).code == 0);
    REQUIRE(run({"ansatz", "--m", "64", "--points", "50", "--seed", "7", "--out", p2}).code == 0);
    const std::string s1 = slurp(p1);
    CHECK_FALSE(s1.empty());
    CHECK(s1 == slurp(p2));
    REQUIRE(run({"ansatz", "--m", "64", "--points", "50", "--seed", "8", "--out", p2}).code == 0);
    CHECK(s1 != slurp(p2));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("nodal subcommand")
{
    const std::string obj = tmp("mesh.obj");
    const auto r = run({"nodal", "--m", "16", "--bbox", "2.5", "--res", "96", "--obj", obj});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("x,y,z,residual,gradnorm\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') > 1000);
    CHECK(slurp(obj).find("\nv ") != std::string::npos);
    std::remove(obj.c_str());
}

TEST_CASE("kernels and energy subcommands")
{
    const auto k = run({"kernels", "--K", "32", "--b", "0.93", "--alpha-w", "0.2"});
    REQUIRE(k.code == 0);
    CHECK(std::count(k.out.begin(), k.out.end(), '\n') == 9);

    const auto e = run({"energy", "minimize", "--K", "64", "--gnorm", "0.22", "--cstar", "0.03"});
    REQUIRE(e.code == 0);
    const auto doc = nlohmann::json::parse(e.out);
    CHECK(doc.contains("argmin"));
    CHECK(doc["diagnostics"].contains("eps_K3"));
    CHECK(doc["mode"] == "leading");

    const auto l = run({"energy", "landscape", "--K", "64", "--gnorm", "0.22", "--cstar", "0.03", "--grid", "9"});
    REQUIRE(l.code == 0);
    CHECK(std::count(l.out.begin(), l.out.end(), '\n') == 82);
}

TEST_CASE("verify quick reports every criterion")
{
    const auto r = run({"verify", "--quick"});
    CHECK((r.code == 0 || r.code == 1));
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 10);
    CHECK(r.out.find("C10") != std::string::npos);
    // exit status mirrors the table
    CHECK((r.code == 0) == (r.out.find("[FAIL]") == std::string::npos));
}
