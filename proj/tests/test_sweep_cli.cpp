#include <doctest.h>
#include <extremal/errors.hpp>
#include <extremal/sweep.hpp>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

using namespace extremal;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(EXTREMAL_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    for (size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

SweepConfig small_config() {
    SweepConfig c;
    c.groups = {SymmetryGroup::U, SymmetryGroup::Sp, SymmetryGroup::SOodd};
    c.deltas = {1.0, 1.5};
    c.alphaMin = 0;
    c.alphaMax = 1;
    c.alphaStep = 0.25;
    return c;
}

}  // namespace

TEST_CASE("alpha grid") {
    const auto g = alpha_grid(0, 4, 0.05);
    CHECK(g.size() == 81);
    CHECK(g.back() == doctest::Approx(4.0));
    CHECK_THROWS_AS(alpha_grid(0, 1, 0), Error);
    CHECK_THROWS_AS(alpha_grid(2, 1, 0.1), Error);
}

TEST_CASE("sweep output is ordered and independent of the thread count") {
    const auto cfg = small_config();
    const auto r1 = run_sweep(cfg, 1);
    const auto r4 = run_sweep(cfg, 4);
    REQUIRE(r1.size() == 3 * 2 * 5);
    CHECK(sweep_csv(r1) == sweep_csv(r4));
    CHECK(sweep_json(r1) == sweep_json(r4));
    CHECK(r1[0].group == SymmetryGroup::U);
    CHECK(r1[4].alpha == doctest::Approx(1.0));
    CHECK(r1[5].delta == doctest::Approx(1.5));
    for (const auto& r : r1) CHECK(r.ok);
    const std::string csv = sweep_csv(r1);
    CHECK(csv.rfind("group,delta,alpha,k,sqrtA,aValue,route,nodes,residual\n", 0) == 0);
    const auto j = nlohmann::json::parse(sweep_json(r1));
    REQUIRE(j.size() == r1.size());
    for (const char* key : {"group", "delta", "alpha", "k", "sqrtA", "aValue", "route"})
        CHECK(j[0].contains(key));
    const std::string svg = sweep_svg(r1);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("compute dispatch") {
    ComputeRequest r;
    r.group = SymmetryGroup::Sp;
    r.delta = 1.5;
    r.alpha = 0.5;
    r.route = RouteChoice::kernel;
    r.k = 2;
    CHECK_THROWS_AS(compute(r), Error);
    r.route = RouteChoice::debranges;
    CHECK_THROWS_AS(compute(r), Error);
    r.route = RouteChoice::variational;
    CHECK(compute(r).aValue > 0);
    r.group = SymmetryGroup::U;
    r.route = RouteChoice::automatic;
    CHECK(compute(r).warnings.empty());
    r.group = SymmetryGroup::SOeven;
    r.delta = 2.5;
    r.k = 1;
    CHECK_FALSE(compute(r).warnings.empty());
    CHECK_THROWS_AS(parse_route("fast"), Error);
}

TEST_CASE("command line: compute") {
    const Run r = run_cli("compute --group O --delta 1 --alpha 0");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["aValue"].get<double>() == doctest::Approx(0.177665777576).epsilon(1e-10));
    CHECK(j["group"] == "O");
    const Run f = run_cli("compute --group 'SO(odd)' --delta 4/3 --alpha 0.5 --k 2");
    CHECK(f.code == 0);
    CHECK(nlohmann::json::parse(f.out)["route"] == "variational");
}

TEST_CASE("command line: exit codes") {
    CHECK(run_cli("compute --group X --delta 1 --alpha 0").code == 2);
    CHECK(run_cli("compute --group U --delta -1 --alpha 0").code == 2);
    CHECK(run_cli("compute --group U --delta 1").code == 2);
    CHECK(run_cli("compute --group Sp --delta 1 --alpha 0 --route debranges").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("sweep --alpha-step 0").code == 2);
    const Run bad = run_cli("compute --group U --delta 1 --alpha 0 --route kernel --k 2");
    CHECK(bad.code == 2);
    CHECK(nlohmann::json::parse(bad.out)["error"] == "usage");
}

TEST_CASE("command line: sweep and gram-dump") {
    const Run s = run_cli("sweep --groups U,Sp --deltas 1,3/2 --alpha-max 0.5 --alpha-step 0.25");
    REQUIRE(s.code == 0);
    long lines = 0;
    for (char c : s.out) lines += c == '\n';
    CHECK(lines == 1 + 2 * 2 * 3);
    const Run d = run_cli("gram-dump --group O --delta 1 --nmin -1 --nmax 1");
    REQUIRE(d.code == 0);
    CHECK(d.out.find("0,0,1.5\n") != std::string::npos);
    CHECK(d.out.find("-1,1,0\n") != std::string::npos);
}

TEST_CASE("command line: a corrupted Gram entry is caught") {
    const Run r = run_cli("verify quick --corrupt-gram");
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL  [gram-oracle]") != std::string::npos);
}
