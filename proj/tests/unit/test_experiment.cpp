#include "hclab/errors.hpp"
#include "hclab/experiment.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hclab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json load(const std::string& name)
{
    std::ifstream in(fs::path(HCLAB_EXPERIMENTS_DIR) / name);
    return json::parse(in);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("hclab_test_" + name);
    fs::remove_all(dir);
    return dir;
}

int cli(const std::string& args)
{
    const std::string cmd = std::string(HCLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("validate diagnostics")
{
    json missing = {{"schema", 1}, {"task", "hctest"}, {"group", {{"group", "circle"}}}, {"a", "1/3"}};
    CHECK(validate(missing).size() == 1);

    json radius = {{"schema", 1},
                   {"task", "equidist"},
                   {"group", {{"group", "zp"}, {"p", 3}, {"precision", 3}}},
                   {"a", "1"},
                   {"horizons", {10}},
                   {"sets", {{{"id", "b"}, {"set", {{"center", "0"}, {"radius_exp", -1}}}}}}};
    CHECK(validate(radius).size() == 1);

    for (const char* name : {"golden_equidist.json", "v4_reps.json", "three_coset.json", "sine_hctest.json",
                             "step_hctest.json", "qp_window.json", "rational_reps.json"}) {
        CAPTURE(name);
        CHECK(validate(load(name)).empty());
    }

    json unknown = load("v4_reps.json");
    unknown["extra"] = true;
    CHECK(validate(unknown).size() == 1);
    CHECK_THROWS_AS(make_plan(unknown), ParseError);
}

TEST_CASE("spec hash is stable and content-sensitive")
{
    const json a = load("three_coset.json");
    json b = a;
    CHECK(spec_hash(a) == spec_hash(b));
    CHECK(spec_hash(a).size() == 16);
    b["ul"][0]["n"] = 2;
    CHECK(spec_hash(a) != spec_hash(b));
}

TEST_CASE("golden equidist run decreases with N")
{
    const fs::path dir = scratch("equidist");
    run(make_plan(load("golden_equidist.json")), dir);
    std::ifstream in(dir / "equidist.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "N,set_id,sup_deviation,bound");
    std::map<std::string, std::vector<double>> series;
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string n, id, dev;
        std::getline(row, n, ',');
        std::getline(row, id, ',');
        std::getline(row, dev, ',');
        series[id].push_back(std::stod(dev));
    }
    REQUIRE(series.count("half"));
    for (const auto& [id, values] : series) {
        CAPTURE(id);
        for (std::size_t i = 1; i < values.size(); ++i)
            CHECK(values[i] < values[i - 1]);
    }
}

TEST_CASE("V4 reps run")
{
    const fs::path dir = scratch("reps");
    run(make_plan(load("v4_reps.json")), dir);
    const json out = json::parse(slurp(dir / "reps.json"));
    CHECK(out["schema"] == 1);
    CHECK(out["spec_hash"] == spec_hash(load("v4_reps.json")));
    int non_identity = 0;
    for (const auto& e : out["elements"])
        if (e["element"] != 0) {
            CHECK(e["verdict"] == true);
            CHECK(e["multiplicity"] == 2);
            ++non_identity;
        }
    CHECK(non_identity == 3);
}

TEST_CASE("three-coset padic run")
{
    const fs::path dir = scratch("padic");
    run(make_plan(load("three_coset.json")), dir);
    const json out = json::parse(slurp(dir / "padic.json"));
    CHECK(out["report"]["verdict"] == "NotHypercyclic");
    CHECK(out["report"]["fired_rule"]["kind"] == "LocallyConstant");
    CHECK(out["report"]["fired_rule"]["k"] == 1);
    CHECK(out["report"].contains("tolerances"));
    CHECK(out["locally_constant_level"] == 1);
    const std::string csv = slurp(dir / "padic_ul.csv");
    CHECK(csv.find("\n3,0,1,1/3,1,1,0,0,,\n") != std::string::npos);
}

TEST_CASE("re-running a spec is byte-identical")
{
    for (const char* name : {"golden_equidist.json", "three_coset.json", "step_hctest.json", "qp_window.json"}) {
        CAPTURE(name);
        const fs::path a = scratch(std::string("det_a_") + name), b = scratch(std::string("det_b_") + name);
        const auto plan = make_plan(load(name));
        const auto first = run(plan, a);
        const auto second = run(plan, b);
        REQUIRE(first.size() == second.size());
        for (std::size_t i = 0; i < first.size(); ++i)
            CHECK(slurp(first[i]) == slurp(second[i]));
    }
}

TEST_CASE("command line exit codes")
{
    const fs::path dir = scratch("cli");
    const std::string experiments = HCLAB_EXPERIMENTS_DIR;
    CHECK(cli("padic --spec " + experiments + "/three_coset.json --out-dir " + dir.string()) == 0);
    CHECK(fs::exists(dir / "padic.json"));
    CHECK_FALSE(fs::exists(dir / "padic.json.tmp"));
    CHECK(cli("validate --spec " + experiments + "/three_coset.json") == 0);
    CHECK(cli("hctest --spec " + experiments + "/v4_reps.json --out-dir " + dir.string()) == 2);
    CHECK(cli("equidist --spec /nonexistent.json") == 2);
    CHECK(cli("reps --group V4 --out-dir " + dir.string()) == 0);
    CHECK(cli("reps --group V5 --out-dir " + dir.string()) == 2);

    // valid, but too fine to enumerate translates: a runtime error, not a parse error
    const fs::path fine = dir / "fine.json";
    std::ofstream(fine) << R"({"schema":1,"task":"equidist","group":{"group":"zp","p":2,"precision":24},)"
                           R"("a":"1","horizons":[5],"sets":[{"id":"s","set":{"center":"0","radius_exp":24}}]})";
    CHECK(cli("validate --spec " + fine.string()) == 0);
    CHECK(cli("equidist --spec " + fine.string() + " --out-dir " + dir.string()) == 3);

    const fs::path threads_a = scratch("threads_a"), threads_b = scratch("threads_b");
    CHECK(cli("equidist --spec " + experiments + "/golden_equidist.json --threads 1 --out-dir " + threads_a.string()) == 0);
    CHECK(cli("equidist --spec " + experiments + "/golden_equidist.json --threads 4 --out-dir " + threads_b.string()) == 0);
    CHECK(slurp(threads_a / "equidist.csv") == slurp(threads_b / "equidist.csv"));
}
