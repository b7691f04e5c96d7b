#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "subprocess.hpp"

namespace {

const std::string kBin = CLI_BIN_PATH;
const std::string kFixtures = FIXTURE_DIR;
const std::string kGolden = GOLDEN_DIR;

subprocess::Result cli(const std::string& args) { return subprocess::run(kBin + " " + args); }

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string value_of(const std::string& report, const std::string& key) {
    std::istringstream in(report);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    }
    return "";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("eval prints the value") {
    auto r = cli("eval --poly '0.5*x^2 - x' --x 3");
    CHECK(r.exit_code == 0);
    CHECK(value_of(r.out, "value") == "1.5");
    CHECK(value_of(r.out, "verdict") == "ok");
}

TEST_CASE("eval on a piecewise file") {
    auto r = cli("eval --fn " + subprocess::quote(kFixtures + "/ex2_f.pw") + " --x 0.5");
    CHECK(r.exit_code == 0);
    CHECK(value_of(r.out, "value") == "2.5");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(cli("modulus --fn " + subprocess::quote(kFixtures + "/xsq.pw") + " --t 0.5").exit_code ==
          2);  // missing --k
    CHECK(cli("eval --x 1").exit_code == 2);  // neither --poly nor --fn
    CHECK(cli("eval --poly 'x +' --x 1").exit_code == 2);  // parse error
    CHECK(cli("eval --poly 'abs(x)' --x 1").exit_code == 2);  // not a polynomial
    CHECK(cli("nonsense").exit_code == 2);
    CHECK(cli("replicate example3").exit_code == 2);
    CHECK(cli("eval --poly x --x 9 --fn whatever").exit_code == 2);
}

TEST_CASE("roots of the factored quartic") {
    auto r = cli("roots --poly '(x + 2)*(x + 1)*(x - 1)*(x - 2)' --lo -3 --hi 3");
    CHECK(r.exit_code == 0);
    CHECK(value_of(r.out, "roots.count") == "4");
    CHECK(value_of(r.out, "roots.0") == "-2");
    CHECK(value_of(r.out, "roots.3") == "2");
}

TEST_CASE("modulus replication reproduces the example value") {
    auto r = cli("modulus --fn " + subprocess::quote(kFixtures + "/ex1_fpp.pw") +
                 " --k 2 --t 0.5 --mode replication --h 0.4");
    CHECK(r.exit_code == 0);
    double v = std::stod(value_of(r.out, "value"));
    CHECK(v == Catch::Approx(15.36).margin(1e-9));
}

TEST_CASE("replicate subcommands pass") {
    auto r1 = cli("replicate example1");
    CHECK(r1.exit_code == 0);
    CHECK(value_of(r1.out, "all_pass") == "true");
    CHECK(value_of(r1.out, "rows.count") == "13");

    auto r2 = cli("replicate example2");
    CHECK(r2.exit_code == 0);
    CHECK(value_of(r2.out, "all_pass") == "true");
}

TEST_CASE("check-dcp on the built-in example and on a config file") {
    auto ex = cli("check-dcp --example example1");
    CHECK(ex.exit_code == 0);
    CHECK(value_of(ex.out, "overall") == "true");
    CHECK(std::stod(value_of(ex.out, "prop2.witness_margin")) ==
          Catch::Approx(4.5).margin(1e-9));

    auto cfg = cli("check-dcp --config " + subprocess::quote(kFixtures + "/example1_dcp.cfg"));
    CHECK(cfg.exit_code == 0);
    CHECK(cfg.out == ex.out);  // same inputs, byte-identical report

    auto inl = cli("check-dcp --config " +
                   subprocess::quote(kFixtures + "/example1_inline.cfg"));
    CHECK(inl.exit_code == 0);
    CHECK(inl.out == ex.out);  // inline piece syntax, same report
}

TEST_CASE("check-dccp reports both modes") {
    auto ex = cli("check-dccp --example example2");
    CHECK(ex.exit_code == 0);
    CHECK(value_of(ex.out, "overall_declared") == "true");
    CHECK(value_of(ex.out, "overall_verified") == "false");
    CHECK(value_of(ex.out, "prop2.verified.match_with_declared") == "false");

    auto cfg = cli("check-dccp --config " + subprocess::quote(kFixtures + "/example2_dccp.cfg"));
    CHECK(cfg.exit_code == 0);
    CHECK(cfg.out == ex.out);
}

TEST_CASE("separate strict replicates the example") {
    auto r = cli("separate --strict --poly '0.5*x^2 - x' --lo -3 --hi 3 --x 6");
    CHECK(r.exit_code == 0);
    CHECK(value_of(r.out, "b") == "9.75");
    CHECK(value_of(r.out, "holds") == "true");
}

TEST_CASE("separate support level") {
    auto r = cli("separate --support --poly 'x^2' --lo -1 --hi 1 --x0 0 --alpha 0");
    CHECK(r.exit_code == 0);
    CHECK(value_of(r.out, "holds") == "true");
    auto bad = cli("separate --support --poly 'x^2' --lo -1 --hi 1 --x0 0 --alpha 0.5");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("modulus standard mode") {
    auto r = cli("modulus --fn " + subprocess::quote(kFixtures + "/xsq.pw") +
                 " --k 2 --r 0 --t 1 --mode standard");
    CHECK(r.exit_code == 0);
    CHECK(std::stod(value_of(r.out, "value")) == Catch::Approx(2.0).margin(1e-3));
}

TEST_CASE("input errors exit with 2") {
    CHECK(cli("eval --poly 'x^2' --x 9 --lo 0").exit_code == 2);  // unknown flag
    auto r = cli("eval --fn " + subprocess::quote(kFixtures + "/xsq.pw") + " --x 5");
    CHECK(r.exit_code == 2);  // outside the function domain
}

TEST_CASE("separate strong with a weight") {
    std::string base = "separate --strong --poly 'x^2 + 1' --lo -1 --hi 1 "
                       "--poly2 '-x^2' --d2-lo -1 --d2-hi 1";
    CHECK(cli(base).exit_code == 0);
    CHECK(cli(base + " --hbar x --t 1").exit_code == 0);
    auto all = cli(base + " --hbar x --t all");
    CHECK(all.exit_code == 1);
    CHECK(value_of(all.out, "failed_t.count") == "1");
    CHECK(value_of(all.out, "failed_t.0") == "0");
}

TEST_CASE("delta2 flags the declared partition of the quartic") {
    auto r = cli("delta2 --poly '(x + 2)*(x + 1)*(x - 1)*(x - 2)' --y '-2, -1, 1, 2' "
                 "--lo -3 --hi 3");
    CHECK(r.exit_code == 1);
    CHECK(value_of(r.out, "holds") == "false");
    CHECK(value_of(r.out, "certified") == "true");

    auto ok = cli("delta2 --poly 'x^3' --y '0' --lo -1 --hi 1");
    CHECK(ok.exit_code == 0);
}

TEST_CASE("convexity verdicts") {
    CHECK(cli("convexity --poly '0.5*x^2 - x' --lo -3 --hi 3").exit_code == 0);
    auto bad = cli("convexity --poly '-x^2' --lo -1 --hi 1");
    CHECK(bad.exit_code == 1);
    CHECK(contains(bad.out, "counterexample.x"));
}

TEST_CASE("approx epsilon for the constant fit") {
    auto r = cli("approx --poly 'x^2' --n 2 --grid 257 --lo -1 --hi 1");
    CHECK(r.exit_code == 0);
    CHECK(std::stod(value_of(r.out, "epsilon")) == Catch::Approx(0.5).margin(2e-3));
}

TEST_CASE("jackson command") {
    auto r = cli("jackson --deviation 13 --n 3 --omega 15.36");
    CHECK(r.exit_code == 0);
    CHECK(value_of(r.out, "c") == "7.6171875");
    CHECK(cli("jackson --deviation 1 --n 3 --omega 0").exit_code == 1);
    CHECK(cli("jackson --deviation 0 --n 3 --omega 0").exit_code == 0);
}

TEST_CASE("quiet mode prints only the verdict line") {
    auto r = cli("--quiet replicate example1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "verdict: pass\n");
    auto e = cli("--quiet eval --poly 'x^2' --x 2");
    CHECK(e.out == "verdict: ok\n");
}

TEST_CASE("reports are byte-identical across runs") {
    const std::vector<std::string> matrix = {
        "eval --poly '0.5*x^2 - x' --x 3",
        "roots --poly '(x + 2)*(x + 1)*(x - 1)*(x - 2)' --lo -3 --hi 3",
        "replicate example1 --float17",
        "replicate example2 --float17",
        "check-dcp --example example1",
        "check-dccp --example example2",
        "separate --strict --poly '0.5*x^2 - x' --lo -3 --hi 3 --x 6",
    };
    for (const std::string& cmd : matrix) {
        auto a = cli(cmd);
        auto b = cli(cmd);
        INFO(cmd);
        CHECK(a.out == b.out);
        CHECK(a.exit_code == b.exit_code);
    }
}

TEST_CASE("golden reports") {
    struct Golden {
        const char* file;
        const char* cmd;
    };
    const Golden cases[] = {
        {"eval_p3.golden", "--float17 eval --poly '0.5*x^2 - x' --x 3"},
        {"roots_p5.golden", "--float17 roots --poly '(x + 2)*(x + 1)*(x - 1)*(x - 2)' "
                            "--lo -3 --hi 3"},
        {"replicate_example1.golden", "--float17 replicate example1"},
        {"replicate_example2.golden", "--float17 replicate example2"},
        {"check_dcp_example1.golden", "--float17 check-dcp --example example1"},
        {"separate_strict.golden",
         "--float17 separate --strict --poly '0.5*x^2 - x' --lo -3 --hi 3 --x 6"},
    };
    for (const Golden& c : cases) {
        INFO(c.file);
        auto r = cli(c.cmd);
        CHECK(r.out == slurp(kGolden + "/" + c.file));
    }
}
