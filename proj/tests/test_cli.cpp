#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    // Point the default store at a scratch location so tests never touch the
    // invoking user's data directory.
    std::string cmd = "MODULI_CACHE=/tmp/moduli-cli-test-default/cache.txt " +
                      std::string(MODULI_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string scratch_cache() {
    std::string dir = "/tmp/moduli-cli-test";
    std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
    return dir + "/cache.txt";
}

} // namespace

TEST_CASE("basic scalar commands") {
    auto r = run_cli("psi --g 1 --d 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1/24\n");

    r = run_cli("psi --g 0 --d 0,0,0");
    CHECK(r.out == "1\n");

    r = run_cli("hodge --g 2 --lambda 1,1,1");
    CHECK(r.out == "1/2880\n");

    r = run_cli("wp --g 1 --n 1 --b 1:1");
    CHECK(r.out == "1/24\n");

    r = run_cli("rspin --r 3 --g 1 --ins 1,0");
    CHECK(r.out == "1/12\n");

    r = run_cli("mocktheta --n 10");
    CHECK(r.out == "29\n");
    r = run_cli("mocktheta --n 10 --bessel");
    CHECK(r.out == "29\n");
}

TEST_CASE("route selection agrees") {
    for (const char* route : {"dvv", "effective", "npoint"}) {
        auto r = run_cli(std::string("psi --g 2 --d 4,1 --route ") + route);
        CHECK(r.exit_code == 0);
        CHECK(r.out == "1/384\n");
    }
}

TEST_CASE("tables") {
    auto r = run_cli("table faber-rank --g 2..12");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("9: 1,1,2,3,3,2,1,1\n") != std::string::npos);

    r = run_cli("table omega --g 18..23");
    CHECK(r.out == "18: 101\n19: 122\n20: 146\n21: 176\n22: 210\n23: 248\n");

    r = run_cli("table rspin3 --g 1");
    CHECK(r.out.find("1,0 = 1/12") != std::string::npos);

    r = run_cli("table rspin4 --g 1");
    CHECK(r.out.find("1,0 = 1/8") != std::string::npos);

    r = run_cli("table faber-rank --g 9 --format csv");
    CHECK(r.out == "9,1,1,2,3,3,2,1,1\n");
    r = run_cli("table faber-rank --g 9 --format records");
    CHECK(r.out == "g=9 values=1,1,2,3,3,2,1,1\n");
}

TEST_CASE("verification suites") {
    CHECK(run_cli("verify dvv-vs-npoint --bound 5").exit_code == 0);
    CHECK(run_cli("verify rspin-tables").exit_code == 0);
}

TEST_CASE("exit codes") {
    CHECK(run_cli("nosuchcommand").exit_code == 1);
    CHECK(run_cli("psi --g 1").exit_code == 1);            // missing --d
    CHECK(run_cli("table faber-rank --g 2..40").exit_code == 3);
    CHECK(run_cli("mocktheta --n 100000").exit_code == 3);
    CHECK(run_cli("rspin --r 3 --g 50 --ins 1,0").exit_code == 3);
}

TEST_CASE("cache round trip and corruption recovery") {
    std::string cache = scratch_cache();
    std::string base = "psi --g 2 --d 4,1 --cache " + cache;

    auto cold = run_cli(base);
    CHECK(cold.exit_code == 0);
    CHECK(cold.out == "1/384\n");

    {
        std::ifstream in(cache);
        REQUIRE(in.good());
        std::string header;
        std::getline(in, header);
        CHECK(header == "# moduli-cache-v1");
        std::string body((std::istreambuf_iterator<char>(in)), {});
        CHECK(body.find("psi:dvv;2;4,1=1/384") != std::string::npos);
    }

    auto warm = run_cli(base);
    CHECK(warm.out == cold.out);

    // A file with the wrong version tag is discarded and rebuilt.
    {
        std::ofstream out(cache, std::ios::trunc);
        out << "# moduli-cache-v999\npsi:dvv;2;4,1=9999\n";
    }
    auto rebuilt = run_cli(base);
    CHECK(rebuilt.out == cold.out);
    {
        std::ifstream in(cache);
        std::string text((std::istreambuf_iterator<char>(in)), {});
        CHECK(text.find("moduli-cache-v1") != std::string::npos);
        CHECK(text.find("9999") == std::string::npos);
    }

    // Garbage content without a header is likewise ignored.
    {
        std::ofstream out(cache, std::ios::trunc);
        out << "complete nonsense\n";
    }
    CHECK(run_cli(base).out == cold.out);
}

TEST_CASE("determinism") {
    std::string cache = scratch_cache();
    auto a = run_cli("table faber-rank --g 2..10 --cache " + cache);
    auto b = run_cli("table faber-rank --g 2..10 --cache " + cache);
    CHECK(a.out == b.out);
    auto c = run_cli("verify wp-routes --cache " + cache);
    auto d = run_cli("verify wp-routes --cache " + cache);
    CHECK(c.out == d.out);
    CHECK(c.out == "wp-routes: pass\n");
}
