// Drives the installed CLI binary end to end through popen.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(HSDIM_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / "hsdim_cli_test";
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("generate + count pipeline with byte-stable output") {
    TempDir tmp;
    auto set_file = (tmp.path / "cantor.json").string();
    auto r = run("generate --preset cantor --depth 10 -o " + set_file);
    REQUIRE(r.exit_code == 0);

    auto csv1 = (tmp.path / "c1.csv").string();
    auto csv2 = (tmp.path / "c2.csv").string();
    REQUIRE(run("count --set " + set_file + " --base 3 --levels 1..8 -o " + csv1).exit_code == 0);
    REQUIRE(run("count --set " + set_file + " --base 3 --levels 1..8 -o " + csv2).exit_code == 0);
    auto body = slurp(csv1);
    CHECK(body == slurp(csv2));
    CHECK(body.substr(0, 23) == "scale,count,lower,upper");
    CHECK(body.find("1/3,2,2,2\n") != std::string::npos);
    CHECK(body.find("1/6561,256,256,256\n") != std::string::npos);
}

TEST_CASE("count accepts inline descriptions and emits cells as JSON") {
    auto r = run(R"(count --inline {\"kind\":\"harmonic\",\"n_max\":2} --base 2 --levels 2 --json)");
    REQUIRE(r.exit_code == 0);
    auto rows = nlohmann::json::parse(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].at("count").get<std::int64_t>() == 3);
    CHECK(rows[0].at("cells") == nlohmann::json::parse("[[0],[2],[4]]"));
}

TEST_CASE("profile writes the two CSV tables") {
    TempDir tmp;
    auto prefix = (tmp.path / "harmonic").string();
    auto r = run("profile --inline {\\\"kind\\\":\\\"harmonic\\\",\\\"n_max\\\":8} --kind ball "
                 "--harmonic-deltas 2..8 --t 0,1/2 --budget 64 -o " + prefix);
    REQUIRE(r.exit_code == 0);
    auto counts = slurp(prefix + ".counts.csv");
    auto values = slurp(prefix + ".values.csv");
    CHECK(counts.substr(0, 23) == "scale,count,lower,upper");
    CHECK(counts.find("1/6,3,3,3\n") != std::string::npos);    // n = 2: three points
    CHECK(counts.find("1/72,9,9,9\n") != std::string::npos);   // n = 8: nine points
    CHECK(values.substr(0, 13) == "t,scale,value");
}

TEST_CASE("estimate reports a slope near one half for the harmonic tail") {
    auto r = run("estimate --inline {\\\"kind\\\":\\\"harmonic\\\",\\\"n_max\\\":32} --kind ball "
                 "--harmonic-deltas 2..32 --budget 64 --mode all");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("slope").get<double>() > 0.44);
    CHECK(j.at("slope").get<double>() < 0.55);
    CHECK(j.at("mode").get<std::string>() == "all-scales");
}

TEST_CASE("verify exits clean and writes the report array") {
    TempDir tmp;
    auto report_file = (tmp.path / "report.json").string();
    auto r = run("verify --suite harmonic --n-max 12 -o " + report_file);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("harmonic/tail") != std::string::npos);
    CHECK(r.out.find("pass") != std::string::npos);
    auto arr = nlohmann::json::parse(slurp(report_file));
    REQUIRE(arr.size() == 1);
    CHECK(arr[0].at("pass").get<bool>());
}

TEST_CASE("verify honors a custom schedule file") {
    TempDir tmp;
    auto sched_file = (tmp.path / "sched.json").string();
    REQUIRE(run("generate --preset schedule --j-max 2 -o " + sched_file).exit_code == 0);
    auto r = run("verify --suite schedule --j-max 2 --schedule " + sched_file);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("schedule/custom") != std::string::npos);
}

TEST_CASE("environment variable overrides the cell materialization cap") {
    auto with_cells = run(R"(count --inline {\"kind\":\"harmonic\",\"n_max\":2} --base 2 --levels 2 --json)");
    REQUIRE(with_cells.exit_code == 0);
    CHECK(nlohmann::json::parse(with_cells.out)[0].contains("cells"));
    std::string cmd = std::string("HSDIM_CELLS_CAP=2 ") + HSDIM_CLI_PATH +
                      R"( count --inline {\"kind\":\"harmonic\",\"n_max\":2} --base 2 --levels 2 --json)";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    REQUIRE(WEXITSTATUS(pclose(pipe)) == 0);
    CHECK_FALSE(nlohmann::json::parse(out)[0].contains("cells"));  // count 3 over the cap of 2
}

TEST_CASE("error paths map to the documented exit codes") {
    CHECK(run("count --base 3 --levels 1..4").exit_code == 2);            // no set given
    CHECK(run("generate --preset bogus").exit_code == 2);                 // unknown preset
    CHECK(run("count --inline not-json --levels 1").exit_code == 2);      // schema violation
    CHECK(run("nonsense").exit_code == 2);                                // unknown subcommand
    // engine error: grid too deep to address cells for a finite model
    auto r = run(R"(count --inline {\"kind\":\"harmonic\",\"n_max\":2} --base 3 --levels 45)");
    CHECK(r.exit_code == 3);
}
