#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

// Runs the gg binary named by GG_CLI through the shell, capturing stdout and
// stderr together.  `prefix` lets a case prepend environment assignments.
RunResult run_cli(const std::string& args, const std::string& prefix = "") {
    const char* exe = std::getenv("GG_CLI");
    REQUIRE_MESSAGE(exe != nullptr, "GG_CLI must point at the gg binary");
    const std::string cmd = prefix + "\"" + std::string(exe) + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    for (size_t got; (got = std::fread(buf, 1, sizeof buf, pipe)) > 0;)
        r.out.append(buf, got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

json parse_report(const RunResult& r) {
    REQUIRE_MESSAGE(r.status == 0, r.out);
    const json j = json::parse(r.out);
    CHECK(j.at("schema") == "gg/1");
    return j;
}

}  // namespace

TEST_CASE("help exits cleanly and names every subcommand") {
    const RunResult top = run_cli("--help");
    CHECK(top.status == 0);
    for (const char* name : {"sieve", "gowers", "katai", "decompose", "nilorbit",
                             "leibman", "partition", "recurrence"})
        CHECK(top.out.find(name) != std::string::npos);
    CHECK(run_cli("gowers --help").status == 0);
    CHECK(run_cli("partition --help").status == 0);
}

TEST_CASE("usage mistakes exit with the parse-error code") {
    CHECK(run_cli("frobnicate").status == 2);
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("sieve --n 6").status == 2);
    CHECK(run_cli("gowers --degree").status == 2);
}

TEST_CASE("domain errors exit with the failure code and a message") {
    const RunResult deg = run_cli("gowers --degree 4 --n 8");
    CHECK(deg.status == 1);
    CHECK(deg.out.find("error: degree must be 1..3") != std::string::npos);

    const RunResult fam = run_cli("decompose --family both --q auto");
    CHECK(fam.status == 1);
    CHECK(fam.out.find("'builtin' or 'single'") != std::string::npos);

    const RunResult out = run_cli("sieve --bound 10 --out /nonexistent/x.csv");
    CHECK(out.status == 1);
    CHECK(out.out.find("cannot open output file") != std::string::npos);
}

TEST_CASE("sieve emits the canonical prime table") {
    const RunResult csv = run_cli("sieve --bound 30");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("re,im,norm,class\n", 0) == 0);
    CHECK(csv.out.find("1,1,2,ramified") != std::string::npos);
    CHECK(csv.out.find("1,2,5,split") != std::string::npos);

    const json j = parse_report(run_cli("sieve --bound 30 --json"));
    CHECK(j.at("subcommand") == "sieve");
    CHECK(j.at("count") == 10);
    REQUIRE(j.at("primes").size() == 10);
    CHECK(j.at("primes")[0] == json::array({1, 1, 2, "ramified"}));
}

TEST_CASE("scalar reports echo their inputs") {
    const json j = parse_report(run_cli("gowers --chi seeded --seed 11 --n 24 --degree 2"));
    CHECK(j.at("subcommand") == "gowers");
    CHECK(j.at("chi") == "seeded");
    CHECK(j.at("seed") == 11);
    CHECK(j.at("degree") == 2);
    CHECK(j.at("n") == 24);
    CHECK(j.at("n_tilde") == 29);
    const double value = j.at("value").get<double>();
    CHECK(value > 0.0);
    CHECK(value <= 1.0);
}

TEST_CASE("identical invocations are byte-identical across thread counts") {
    const std::string gargs = "gowers --chi seeded --seed 11 --n 24 --degree 2";
    const RunResult a = run_cli(gargs);
    const RunResult b = run_cli(gargs);
    const RunResult c = run_cli(gargs, "GG_THREADS=1 ");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    const std::string dargs =
        "decompose --chi liouville --n 40 --eps 0.7 --q auto --family single";
    const RunResult d = run_cli(dargs);
    const RunResult e = run_cli(dargs, "GG_THREADS=1 ");
    CHECK(d.status == 0);
    CHECK(d.out == e.out);
}

TEST_CASE("a config file supplies flags and argv wins") {
    const std::string path = "gg_cli_config_test.json";
    {
        std::ofstream f(path);
        f << R"({"n": 20, "chi": "principal"})";
    }
    const json base = parse_report(run_cli("katai --config " + path));
    CHECK(base.at("chi") == "principal");
    CHECK(base.at("n") == 20);

    const json over = parse_report(run_cli("katai --config " + path + " --chi archimedean"));
    CHECK(over.at("chi") == "archimedean");
    CHECK(over.at("n") == 20);
    std::remove(path.c_str());
}

TEST_CASE("katai reports the pair table in both formats") {
    const json j = parse_report(run_cli("katai --chi liouville --n 30"));
    CHECK(j.at("max_pair_corr").get<double>() ==
          doctest::Approx(0.16333333333333333).epsilon(1e-15));

    const RunResult csv = run_cli("katai --chi liouville --n 30 --csv");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("p,q,statistic\n", 0) == 0);
    CHECK(csv.out.find("1+1i,1+2i,0.16333333333333333") != std::string::npos);
}

TEST_CASE("decompose honours estimated and explicit parameters") {
    const json j = parse_report(run_cli(
        "decompose --chi liouville --n 50 --eps 0.7 --q auto --v auto --family single"));
    CHECK(j.at("q") == 1);
    CHECK(j.at("v") == 1);
    CHECK(j.at("n_tilde") == 53);
    CHECK(j.at("u2_of_u").get<double>() < 0.7);

    const RunResult wall = run_cli("decompose --chi liouville --n 50 --eps 0.3 --q auto");
    CHECK(wall.status == 1);
    CHECK(wall.out.find("phi_kernel") != std::string::npos);
}

TEST_CASE("partition reports the seeded witness with its cell census") {
    const json j = parse_report(run_cli("partition --coloring seeded:3,7 --box 12"));
    CHECK(j.at("found") == true);
    CHECK(j.at("x") == json::array({11, 0}));
    CHECK(j.at("y") == json::array({61, 0}));
    CHECK(j.at("n") == json::array({0, 60}));
    CHECK(j.at("color") == 1);
    long long census = 0;
    for (const auto& [cell, size] : j.at("cell_sizes").items()) census += size.get<long long>();
    CHECK(census == 624);

    const json none = parse_report(
        run_cli("partition --form 1,-1,-50,0,0,0 --coloring seeded:2,14 --box 5"));
    CHECK(none.at("found") == false);
}

TEST_CASE("recurrence averages match their closed forms") {
    const json even = parse_report(run_cli("recurrence --target even --n 30"));
    CHECK(even.at("average").get<double>() == 0.5);

    const json nd = parse_report(run_cli("recurrence --target normdiv:3 --n 20"));
    CHECK(nd.at("average").get<double>() == 0.0051282051282051282);
}

TEST_CASE("leibman certifies a smooth character") {
    const std::string flat = "--g11 0.5,0,0 --g12 0,0,0 --g21 0,0,0 --g22 0,0,0 --g23 0,0,0";
    const json j = parse_report(
        run_cli("leibman " + flat + " --range 100 --d 2 --check --n1 700 --n2 700"));
    CHECK(j.at("found") == true);
    CHECK(j.at("eta") == json::array({-2, 0}));
    CHECK(j.at("smoothness") == 0.0);
    CHECK(j.at("check").at("correlation").get<double>() >=
          j.at("check").at("bound").get<double>());

    const json miss = parse_report(run_cli("leibman --range 40 --d 2"));
    CHECK(miss.at("found") == false);

    const RunResult nothing = run_cli("leibman --range 40 --d 2 --check");
    CHECK(nothing.status == 1);
    CHECK(nothing.out.find("nothing to check") != std::string::npos);
}

TEST_CASE("nilorbit tabulates the reduced orbit") {
    const RunResult csv = run_cli("nilorbit --range 3");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("m,n,x1,x2,y\n", 0) == 0);
    long long lines = 0;
    for (char ch : csv.out) lines += ch == '\n';
    CHECK(lines == 10);

    const json j = parse_report(run_cli("nilorbit --range 4 --json"));
    REQUIRE(j.at("points").size() == 16);
    CHECK(j.at("points")[0] == json::array({0, 0, 0.0, 0.0, 0.0}));
}

TEST_CASE("output lands in the chosen file and stdout stays quiet") {
    const std::string path = "gg_cli_out_test.csv";
    std::remove(path.c_str());
    const RunResult r = run_cli("sieve --bound 30 --out " + path);
    CHECK(r.status == 0);
    CHECK(r.out.empty());

    std::ifstream f(path);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "re,im,norm,class");
    std::remove(path.c_str());
}
