#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string cli = HALFSPACE_CLI_PATH;
const fs::path work = fs::temp_directory_path() / "hs_cli_tests";

int run(const std::string& args, const std::string& out_file = "/dev/null") {
    const std::string cmd = cli + " " + args + " >" + out_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (status < 0) return -1;
#ifdef WEXITSTATUS
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
    return status;
#endif
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct WorkDir {
    WorkDir() {
        fs::remove_all(work);
        fs::create_directories(work);
    }
    ~WorkDir() { fs::remove_all(work); }
} work_dir;

std::string wp(const std::string& name) { return (work / name).string(); }

}  // namespace

TEST_CASE("simulate subcommand") {
    SUBCASE("deterministic output bytes") {
        REQUIRE(run("simulate --d 6 --gamma 0.2 --eta 0.2 --n 50 --seed 4 --out " +
                    wp("a.ds")) == 0);
        REQUIRE(run("simulate --d 6 --gamma 0.2 --eta 0.2 --n 50 --seed 4 --out " +
                    wp("b.ds")) == 0);
        CHECK(slurp(wp("a.ds")) == slurp(wp("b.ds")));
        CHECK(slurp(wp("a.ds")).rfind("format=sphere d=6 n=50", 0) == 0);
    }
    SUBCASE("missing required flag exits 2") {
        CHECK(run("simulate --d 6 --eta 0.2 --n 10 --seed 1 --out " + wp("x.ds")) == 2);
    }
    SUBCASE("out-of-range gamma exits 2") {
        CHECK(run("simulate --d 6 --gamma 1.5 --eta 0.2 --n 10 --seed 1 --out " +
                  wp("x.ds")) == 2);
    }
}

TEST_CASE("train subcommand") {
    REQUIRE(run("simulate --d 5 --gamma 0.25 --eta 0.15 --n 400 --seed 9 --out " +
                wp("train.ds")) == 0);
    REQUIRE(run("simulate --d 5 --gamma 0.25 --eta 0.15 --n 200 --seed 9 --stream 1 --out " +
                wp("hold.ds")) == 0);

    SUBCASE("T = 0 reports the zero hypothesis") {
        REQUIRE(run("train --data " + wp("train.ds") + " --holdout " + wp("hold.ds") +
                    " --eps 0.3 --eta 0.15 --gamma 0.25 --T 0 --out " + wp("r0.json")) == 0);
        const std::string r = slurp(wp("r0.json"));
        CHECK(r.find("\"index\": 0") != std::string::npos);
        CHECK(r.find("run-record v1") != std::string::npos);
    }
    SUBCASE("byte-identical reruns") {
        const std::string args = "train --data " + wp("train.ds") + " --holdout " +
                                 wp("hold.ds") +
                                 " --eps 0.3 --eta 0.15 --gamma 0.25 --T 150 --out ";
        REQUIRE(run(args + wp("r1.json")) == 0);
        REQUIRE(run(args + wp("r2.json")) == 0);
        CHECK(slurp(wp("r1.json")) == slurp(wp("r2.json")));
    }
    SUBCASE("malformed dataset exits 4") {
        std::ofstream bad(wp("bad.ds"));
        bad << "format=sphere d=3 n=1\n+1 0.1 0.2\n";
        bad.close();
        CHECK(run("train --data " + wp("bad.ds") +
                  " --eps 0.3 --eta 0.15 --gamma 0.25 --T 5") == 4);
    }
    SUBCASE("missing file exits 4") {
        CHECK(run("train --data " + wp("nope.ds") +
                  " --eps 0.3 --eta 0.15 --gamma 0.25 --T 5") == 4);
    }
}

TEST_CASE("sweep subcommand") {
    std::ofstream cfg(wp("sweep.json"));
    cfg << R"({"d": [4, 6], "gamma": [0.25], "eta": [0.15], "eps": [0.5],
               "N": [200], "seeds_per_cell": 2, "test_n": 500, "T_override": 40})";
    cfg.close();
    REQUIRE(run("sweep --config " + wp("sweep.json") + " --parallel 1 --out " +
                wp("s1.csv")) == 0);
    REQUIRE(run("sweep --config " + wp("sweep.json") + " --parallel 8 --out " +
                wp("s8.csv")) == 0);
    const std::string s1 = slurp(wp("s1.csv"));
    CHECK(s1 == slurp(wp("s8.csv")));
    CHECK(s1.rfind("# sweep schema v1", 0) == 0);
    CHECK(s1.find("seed,d,gamma,eta,eps,N,T,m,err_holdout,err_test,min_disagreement,"
                  "wallclock_ms") != std::string::npos);
    // banner + header + 2 cells x 2 seeds
    std::size_t lines = 0;
    for (const char ch : s1)
        if (ch == '\n') ++lines;
    CHECK(lines == 6);
}

TEST_CASE("hardness subcommands") {
    SUBCASE("kravchuk table contains exact rationals") {
        REQUIRE(run("hardness kravchuk --n 4 --out " + wp("k.csv")) == 0);
        const std::string k = slurp(wp("k.csv"));
        CHECK(k.find("-1/3") != std::string::npos);
        CHECK(slurp(wp("k.csv")) == k);
    }
    SUBCASE("oversized table exits 5 without --approx") {
        CHECK(run("hardness kravchuk --n 70 --out " + wp("k70.csv")) == 5);
        CHECK(run("hardness kravchuk --n 70 --approx --out " + wp("k70.csv")) == 0);
    }
    SUBCASE("gen emits the family") {
        REQUIRE(run("hardness gen --d 64 --c 0.25 --count 8 --seed 3 --out " +
                    wp("fam.txt")) == 0);
        const std::string fam = slurp(wp("fam.txt"));
        std::size_t lines = 0;
        for (const char ch : fam)
            if (ch == '\n') ++lines;
        CHECK(lines == 8);
    }
    SUBCASE("correlate --self") {
        REQUIRE(run("hardness correlate --d 10 --target-mass 0.4 --self --format json "
                    "--out " + wp("self.json")) == 0);
        const std::string j = slurp(wp("self.json"));
        CHECK(j.find("\"chi_self\"") != std::string::npos);
        CHECK(j.find("/") != std::string::npos);
    }
    SUBCASE("correlate csv reruns are identical") {
        const std::string args =
            "hardness correlate --d 12 --target-mass 0.3 --count 4 --seed 2 --out ";
        REQUIRE(run(args + wp("c1.csv")) == 0);
        REQUIRE(run(args + wp("c2.csv")) == 0);
        CHECK(slurp(wp("c1.csv")) == slurp(wp("c2.csv")));
        CHECK(slurp(wp("c1.csv")).rfind("# correlation-report schema v1", 0) == 0);
    }
    SUBCASE("rk report") {
        REQUIRE(run("hardness rk --d 12 --target-mass 0.4 --out " + wp("rk.json")) == 0);
        const std::string j = slurp(wp("rk.json"));
        CHECK(j.find("\"level_sum_matches\": true") != std::string::npos);
    }
}

TEST_CASE("verify --quick passes") {
    CHECK(run("verify --quick", wp("verify.log")) == 0);
    const std::string log = slurp(wp("verify.log"));
    CHECK(log.find("FAIL") == std::string::npos);
    CHECK(log.find("PASS") != std::string::npos);
}
