#include "sacrp/cli.hpp"
#include "sacrp/bench.hpp"
#include "sacrp/dp.hpp"
#include "sacrp/instance.hpp"
#include "sacrp/solution_io.hpp"

#include "fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

using namespace sacrp;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "sacrp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "sacrp_cli_test";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

const std::string worked_example = fixtures::data_path("worked_example.json");

}  // namespace

TEST(Cli, HelpTextMatchesSnapshot) {
    std::string all;
    for (std::string sub : {"", "gen", "solve", "validate", "export-lp", "import-sol", "feas", "bench"}) {
        std::vector<std::string> args;
        if (!sub.empty()) args.push_back(sub);
        args.push_back("--help");
        const Outcome r = run(args);
        EXPECT_EQ(r.code, 0) << sub;
        all += r.out;
    }
    EXPECT_EQ(all, slurp(fixtures::data_path("cli_help.txt")));
}

TEST(Cli, SolvesTheWorkedExample) {
    for (std::string algo : {"dp", "greedy", "oracle"}) {
        const Outcome r = run({"solve", "--algo", algo, "--in", worked_example});
        EXPECT_EQ(r.code, 0);
        EXPECT_EQ(r.out, "energy=4 cycles=2\n") << algo;
    }
}

TEST(Cli, ValidatesTheHandPlan) {
    const Outcome r = run({"validate", "--in", worked_example, "--sol", fixtures::data_path("worked_example_plan.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "energy=4 OK\n");
    const Outcome j = run({"validate", "--in", worked_example, "--sol", fixtures::data_path("worked_example_plan.json"), "--json"});
    const auto doc = nlohmann::json::parse(j.out);
    EXPECT_EQ(doc["cycle_energies"], nlohmann::json::array({3, 1}));
}

TEST(Cli, ValidateReportsTheFirstViolation) {
    const std::string path = scratch("bad_plan.json");
    // Stack 1 keeps b1 at its own height, so b3 below it can never be reached.
    std::ofstream(path) << R"({"cycles":[{"targets":[0,2,3,4,5],"clearances":[5,3,2,3]},{"targets":[1]}]})";
    const Outcome r = run({"validate", "--in", worked_example, "--sol", path});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("INVALID"), std::string::npos);
}

TEST(Cli, SolveRoundTripsThroughValidate) {
    const std::string sol = scratch("worked_example_sol.json");
    ASSERT_EQ(run({"solve", "--in", worked_example, "--out", sol, "--no-dominance", "all"}).code, 0);
    EXPECT_EQ(load_solution(sol).cycles.size(), 2U);
    EXPECT_EQ(run({"validate", "--in", worked_example, "--sol", sol}).out, "energy=4 OK\n");
}

TEST(Cli, StatsCarryEveryCounter) {
    const Outcome r = run({"solve", "--in", worked_example, "--stats", "--no-dominance", "2"});
    ASSERT_EQ(r.code, 0);
    const auto lines = r.out.substr(r.out.find('\n') + 1);
    const auto doc = nlohmann::json::parse(lines);
    DpOptions options;
    options.rule2 = false;
    const DpStats stats = solve_dp(fixtures::worked_example(), options).stats;
    EXPECT_EQ(doc["total_states"], stats.total_states);
    EXPECT_EQ(doc["explored_states"], stats.explored_states);
    EXPECT_EQ(doc["generated_transitions"], stats.generated_transitions);
    EXPECT_EQ(doc["timed_out"], false);
    EXPECT_EQ(doc["dominance"]["rule1_forced"], stats.rule1_forced);
    EXPECT_EQ(doc["dominance"]["rule2_pruned"], 0);
    EXPECT_EQ(doc["dominance"]["rule3_pruned"], stats.rule3_pruned);
    EXPECT_EQ(doc["infeasible_pruned"], stats.infeasible_pruned);
}

TEST(Cli, FeasibilityFailureNamesTargetAndStack) {
    const Outcome r = run({"feas", "--in", fixtures::data_path("infeasible.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("target 0"), std::string::npos);
    EXPECT_NE(r.err.find("stack 1"), std::string::npos);
    const Outcome j = run({"feas", "--in", fixtures::data_path("infeasible.json"), "--json"});
    EXPECT_EQ(j.code, 1);
    const auto doc = nlohmann::json::parse(j.out);
    EXPECT_EQ(doc["feasible"], false);
    EXPECT_EQ(doc["violation"]["stack"], 1);
    EXPECT_EQ(run({"feas", "--in", worked_example}).out, "feasible\n");
    EXPECT_EQ(run({"solve", "--in", fixtures::data_path("infeasible.json")}).code, 1);
}

TEST(Cli, GeneratedInstanceRoundTrips) {
    const std::string path = scratch("gen.json");
    ASSERT_EQ(run({"gen", "-d", "6", "-w", "5", "-h", "5", "--seed", "9", "-o", path}).code, 0);
    const Outcome again = run({"gen", "-d", "6", "-w", "5", "-h", "5", "--seed", "9"});
    EXPECT_EQ(again.out, slurp(path));
    const Instance inst = load_instance(path);
    EXPECT_EQ(inst.target_count(), 6);
    EXPECT_EQ(write_instance(inst) + "\n", slurp(path));
}

TEST(Cli, LpExportAndImport) {
    const std::string lp = scratch("worked_example.lp");
    const Outcome e = run({"export-lp", "--in", worked_example, "-o", lp});
    EXPECT_EQ(e.code, 0);
    EXPECT_EQ(e.out.rfind("binaries=420 continuous=24 ", 0), 0U) << e.out;
    const std::string first = slurp(lp);
    ASSERT_EQ(run({"export-lp", "--in", worked_example, "-o", lp}).code, 0);
    EXPECT_EQ(slurp(lp), first);

    const std::string sol = scratch("imported.json");
    const Outcome i = run({"import-sol", "--in", worked_example, "--lp-sol", fixtures::data_path("worked_example_assignment.txt"), "--out", sol});
    EXPECT_EQ(i.code, 0);
    EXPECT_EQ(i.out, "energy=4 cycles=2\n");
    EXPECT_EQ(run({"validate", "--in", worked_example, "--sol", sol}).out, "energy=4 OK\n");
}

TEST(Cli, BenchWritesParsableRows) {
    const std::string rows = scratch("rows.csv");
    const Outcome r = run({"bench", "--grid", "custom", "--d", "4", "--w", "4", "--h", "4", "--seeds", "2", "--out", rows});
    EXPECT_EQ(r.code, 0);
    const std::string csv = slurp(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), kBenchCsvHeader);
    EXPECT_EQ(parse_bench_csv(csv).size(), 4U);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"solve"}).code, 2);
    EXPECT_EQ(run({"solve", "--in", worked_example, "--algo", "magic"}).code, 2);
    EXPECT_EQ(run({"solve", "--in", worked_example, "--no-dominance", "4"}).code, 2);
    EXPECT_EQ(run({"gen", "-d", "0", "-w", "3", "-h", "3"}).code, 2);
    EXPECT_EQ(run({"bench", "--grid", "custom"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
}
