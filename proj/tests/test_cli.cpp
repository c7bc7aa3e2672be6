#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

// Paths and plumbing for driving the real binary.
struct CliHarness {
    fs::path dir;
    std::string binary;

    CliHarness() {
        const char* env = std::getenv("FDHOM_CLI");
        REQUIRE_MESSAGE(env != nullptr, "FDHOM_CLI must point at the fdhom binary");
        binary = env;
        dir = fs::temp_directory_path() / "fdhom_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
    }

    fs::path write(const std::string& name, const std::string& content) const {
        const fs::path p = dir / name;
        std::ofstream(p) << content;
        return p;
    }

    int run(const std::string& args, const std::string& tag) const {
        const fs::path out = dir / (tag + ".out");
        const fs::path err = dir / (tag + ".err");
        const std::string cmd =
            binary + " " + args + " > " + out.string() + " 2> " + err.string();
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    }

    std::string slurp(const std::string& tag, const char* ext = ".out") const {
        std::ifstream in(dir / (tag + ext));
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

const std::string kConstantsCsv = "0,0.5,1\n0,0,0\n1,1,1\n2,2,2\n";
const std::string kPairLowCsv = "0,0.5,1\n0,0,0\n2,2,2\n";
const std::string kPairFarCsv = "0,0.5,1\n10,10,10\n11,11,11\n";

}  // namespace

TEST_CASE("cli end to end") {
    CliHarness cli;

    SUBCASE("depth emits per-curve values with a manifest") {
        const auto sample = cli.write("tri.csv", kConstantsCsv);
        CHECK(cli.run("depth " + sample.string() + " --depth bd", "depth") == 0);
        const std::string out = cli.slurp("depth");
        CHECK(out.find("# fdhom-manifest: ") == 0);
        CHECK(out.find("curve,depth") != std::string::npos);
        CHECK(out.find("0,0.6666666666666666\n") != std::string::npos);
        CHECK(out.find("1,1\n") != std::string::npos);
        CHECK(out.find("2,0.6666666666666666\n") != std::string::npos);
    }

    SUBCASE("test reports the fixture statistic and tail") {
        const auto f = cli.write("f.csv", kPairLowCsv);
        const auto g = cli.write("g.csv", kPairFarCsv);
        const auto json_path = cli.dir / "result.json";
        CHECK(cli.run("test " + f.string() + " " + g.string() +
                          " --depth bd --stat p1 --bootstrap 50 --seed 3 --json " +
                          json_path.string(),
                      "test") == 0);
        std::ifstream jin(json_path);
        const auto j = nlohmann::json::parse(jin);
        CHECK(j["observed"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(j["tail"] == "lower");
        CHECK(j["bootstrap_values"].size() == 50);
        CHECK(j["manifest"]["inputs"].size() == 2);
        const std::string table = cli.slurp("test");
        CHECK(table.find("Rej.") != std::string::npos);
    }

    SUBCASE("derive applies iterated differences") {
        // t^2 on a uniform grid: the second difference is exactly 2.
        const auto sample =
            cli.write("sq.csv", "0,0.25,0.5,0.75,1\n0,0.0625,0.25,0.5625,1\n");
        CHECK(cli.run("derive " + sample.string() + " --order 2", "derive") == 0);
        const std::string out = cli.slurp("derive");
        CHECK(out.find("2,2,2\n") != std::string::npos);

        // The emitted CSV (with its manifest comment) loads right back.
        const auto derived = cli.write("derived.csv", out);
        CHECK(cli.run("depth " + derived.string() + " --depth fm", "depth_of_derived") == 0);
    }

    SUBCASE("error paths and exit codes") {
        const auto empty = cli.write("empty.csv", "");
        CHECK(cli.run("depth " + empty.string() + " --depth fm", "empty") == 3);
        const auto diag = nlohmann::json::parse(cli.slurp("empty", ".err"));
        CHECK(diag["error"]["kind"] == "data");

        CHECK(cli.run("depth missing.csv --depth fm", "missing") == 3);
        CHECK(cli.run("depth whatever.csv --depth nosuch", "badflag") == 2);
        CHECK(cli.run("frobnicate", "badcmd") == 2);

        // All-identical curves collapse the modal bandwidth: numeric error.
        const auto flat = cli.write("flat.csv", "0,0.5,1\n1,1,1\n1,1,1\n");
        CHECK(cli.run("depth " + flat.string() + " --depth hmodal", "flat") == 4);
        const auto ndiag = nlohmann::json::parse(cli.slurp("flat", ".err"));
        CHECK(ndiag["error"]["kind"] == "numeric");
    }

    SUBCASE("same seed reproduces outputs byte for byte") {
        const auto f = cli.write("f2.csv", kPairLowCsv);
        const auto g = cli.write("g2.csv", kPairFarCsv);
        const std::string args = "test " + f.string() + " " + g.string() +
                                 " --depth mbd --stat p2 --bootstrap 40 --seed 11";
        CHECK(cli.run(args + " --threads 1", "rep1") == 0);
        CHECK(cli.run(args + " --threads 2", "rep2") == 0);
        const std::string a = cli.slurp("rep1");
        CHECK(a == cli.slurp("rep2"));
        CHECK_FALSE(a.empty());

        const std::string sim = "simulate power --reps 2 --bootstrap 30 --curves 6 "
                                "--grid-size 8 --etas 0,1 --depths fm --stats p1 --seed 5";
        CHECK(cli.run(sim, "sim1") == 0);
        CHECK(cli.run(sim + " --threads 2", "sim2") == 0);
        CHECK(cli.slurp("sim1") == cli.slurp("sim2"));
        CHECK(cli.slurp("sim1").find("eta,rejections,replications") != std::string::npos);
    }

    SUBCASE("simulate table2 emits proportions for the chosen cells") {
        const std::string args = "simulate table2 --reps 2 --bootstrap 20 --curves 6 "
                                 "--grid-size 8 --depths mbd --stats p1,p2 --seed 9";
        CHECK(cli.run(args, "table2") == 0);
        const std::string out = cli.slurp("table2");
        CHECK(out.find("depth,P1,P2") != std::string::npos);
        CHECK(out.find("mbd,") != std::string::npos);
    }

    SUBCASE("simulate table1 emits one row per depth and scenario") {
        const std::string args = "simulate table1 --reps 1 --bootstrap 20 --curves 6 "
                                 "--grid-size 8 --depths fm --stats p1,p3 --seed 2";
        CHECK(cli.run(args, "table1") == 0);
        const std::string out = cli.slurp("table1");
        CHECK(out.find("depth,scenario,P1,P3") != std::string::npos);
        for (int scenario = 1; scenario <= 5; ++scenario) {
            CHECK(out.find("fm," + std::to_string(scenario) + ",") != std::string::npos);
        }
    }
}
