#include "fixtures.hpp"

#include "sacrp/dp.hpp"
#include "sacrp/error.hpp"
#include "sacrp/greedy.hpp"
#include "sacrp/mip.hpp"
#include "sacrp/oracle.hpp"
#include "sacrp/solution_io.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace sacrp;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string name(const char* f, int c, int b, int i) {
    return std::string(f) + "_" + std::to_string(c) + "_" + std::to_string(b) + "_" + std::to_string(i);
}

// Encodes any sequence of disjoint cycles, retrievable or not: physical
// levels and heights, the topmost member of the rightmost stack as anchor,
// rule types by row, and the least E each energy row allows.
Assignment encode_cycles(const Instance& inst, const LpModel& model, const std::vector<TargetSet>& cycles) {
    const int n = inst.target_count();
    Assignment a;
    SliceState state(inst);
    for (int c = 1; c <= n; ++c) {
        for (int s = 1; s <= inst.stack_count(); ++s) {
            if (inst.targets_in_stack(s) != 0) a["h_" + std::to_string(c) + "_" + std::to_string(s)] = state.stack_height(s);
        }
        for (int b = 0; b < n; ++b) a[name("u", c, b, state.level(b))] = 1;
        if (c > static_cast<int>(cycles.size())) continue;
        const TargetSet batch = cycles[static_cast<std::size_t>(c - 1)];
        const Anchor anchor = batch_anchor(state, batch);
        const int top = state.target_height(anchor.target);
        for (TargetSet rest = batch; rest != 0; rest &= rest - 1) {
            const int b = std::countr_zero(rest);
            const int row = state.target_height(b);
            const int lvl = state.level(b);
            a[name("x", c, b, lvl)] = 1;
            const char* type = b == anchor.target ? "y" : row == top ? "z1" : row > top ? "z2" : row == top - 1 ? "z3" : "z4";
            a[name(type, c, b, lvl)] = 1;
        }
        state = state.after(batch);
    }
    for (const LpRow& r : model.rows) {
        if (r.family != "energy") continue;
        double rest = 0;
        int e = -1;
        for (const LpTerm& t : r.terms) {
            const std::string& v = model.vars[static_cast<std::size_t>(t.var)].name;
            if (v[0] == 'E') {
                e = t.var;
                continue;
            }
            const auto it = a.find(v);
            if (it != a.end()) rest += t.coef * it->second;
        }
        double& slot = a[model.vars[static_cast<std::size_t>(e)].name];
        slot = std::max(slot, -rest);
    }
    return a;
}

}  // namespace

TEST(Mip, WorkedExampleCounts) {
    const Instance inst = fixtures::worked_example();
    const LpModel model = build_model(inst);
    const ModelCounts counts = count_model(model);
    EXPECT_EQ(counts.binaries, 420);
    EXPECT_EQ(counts.continuous, 24);
    EXPECT_EQ(counts, predicted_counts(inst));
    // b2 cannot anchor at level 0 in any of the six cycles.
    EXPECT_EQ(counts.constraint_families.at("noanchor"), 6);
}

TEST(Mip, ExportIsDeterministic) {
    const Instance inst = fixtures::worked_example();
    const std::string a = ::testing::TempDir() + "worked_example_a.lp";
    const std::string b = ::testing::TempDir() + "worked_example_b.lp";
    const ModelCounts ca = export_model(inst, a);
    const ModelCounts cb = export_model(inst, b);
    EXPECT_EQ(ca, cb);
    const std::string text = slurp(a);
    EXPECT_EQ(text, slurp(b));
    EXPECT_NE(text.find("Minimize"), std::string::npos);
    EXPECT_NE(text.find("Subject To"), std::string::npos);
    EXPECT_NE(text.find("Bounds"), std::string::npos);
    EXPECT_NE(text.find("Binaries"), std::string::npos);
    EXPECT_EQ(text.substr(text.size() - 4), "End\n");
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST(Mip, HandAssignmentImports) {
    const Instance inst = fixtures::worked_example();
    const Assignment hand = load_assignment(fixtures::data_path("worked_example_assignment.txt"));
    const Solution sol = import_solution(inst, hand);
    EXPECT_EQ(sol.total_energy, 4);
    ASSERT_EQ(sol.cycles.size(), 2U);
    EXPECT_EQ(sol.cycles[0].energy, 3);
    EXPECT_EQ(sol.cycles[1].energy, 1);

    // The encoder reproduces the transcription exactly.
    const Solution plan = load_solution(fixtures::data_path("worked_example_plan.json"));
    Assignment encoded = assignment_from_solution(inst, plan);
    EXPECT_EQ(write_assignment(encoded), write_assignment(hand));
}

TEST(Mip, RejectsBrokenAssignments) {
    const Instance inst = fixtures::worked_example();
    try {
        import_solution(inst, {});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("cover_0"), std::string::npos) << e.what();
    }

    Assignment wrong_level = load_assignment(fixtures::data_path("worked_example_assignment.txt"));
    wrong_level.erase("u_2_1_1");
    wrong_level["u_2_1_0"] = 1;
    try {
        import_solution(inst, wrong_level);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("level"), std::string::npos) << e.what();
    }

    Assignment fractional = load_assignment(fixtures::data_path("worked_example_assignment.txt"));
    fractional["z1_1_2_0"] = 0.5;
    EXPECT_THROW(import_solution(inst, fractional), ValidationError);

    Assignment low_energy = load_assignment(fixtures::data_path("worked_example_assignment.txt"));
    low_energy["E_1"] = 2;
    EXPECT_THROW(import_solution(inst, low_energy), ValidationError);

    Assignment high_energy = load_assignment(fixtures::data_path("worked_example_assignment.txt"));
    high_energy["E_2"] = 2;
    EXPECT_THROW(import_solution(inst, high_energy), ValidationError);

    EXPECT_THROW(parse_assignment("x_1_0_0"), ParseError);
    EXPECT_THROW(parse_assignment("x_1_0_0 one"), ParseError);
    Assignment unknown = load_assignment(fixtures::data_path("worked_example_assignment.txt"));
    unknown["q_1"] = 1;
    EXPECT_THROW(import_solution(inst, unknown), ValidationError);
}

TEST(Mip, SingleTarget) {
    const Instance inst({4}, {{1, 2}});
    const ModelCounts counts = count_model(build_model(inst));
    EXPECT_EQ(counts.binaries, 7);
    EXPECT_EQ(counts.continuous, 2);
    const Assignment a = assignment_from_solution(inst, feasibility_witness(inst));
    EXPECT_EQ(a.at("x_1_0_0"), 1);
    EXPECT_EQ(a.at("E_1"), 2);
    EXPECT_EQ(import_solution(inst, a).total_energy, 2);
}

TEST(Mip, CountsMatchFormulas) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const Instance inst = fixtures::random_feasible(rng, 6, 6, 8);
        const LpModel model = build_model(inst);
        ASSERT_EQ(count_model(model), predicted_counts(inst)) << write_instance(inst);
        EXPECT_EQ(write_lp(model), write_lp(build_model(inst)));
    }
}

TEST(Mip, SolverPlansEncodeAndImport) {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const Instance inst = fixtures::random_feasible(rng, 6, 6, 8);
        const DpResult dp = solve_dp(inst);
        ASSERT_TRUE(dp.solution);
        for (const Solution& s : {*dp.solution, solve_greedy(inst).solution, feasibility_witness(inst)}) {
            const Assignment a = assignment_from_solution(inst, s);
            const Solution back = import_solution(inst, a);
            ASSERT_EQ(back.total_energy, s.total_energy) << write_instance(inst);
        }
    }
}

// The model accepts a cycle sequence exactly when every cycle is a batch
// the simulator can retrieve, and then charges the cheapest order's energy.
TEST(Mip, AcceptsExactlyTheRetrievableCycles) {
    std::mt19937 rng(31);
    int accepted = 0;
    int rejected = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const Instance inst = fixtures::random_feasible(rng, 5, 5, 6);
        const LpModel model = build_model(inst);
        const int n = inst.target_count();
        for (int draw = 0; draw < 20; ++draw) {
            std::vector<int> cycle_of(static_cast<std::size_t>(n));
            std::uniform_int_distribution<int> pick(0, n - 1);
            for (int& c : cycle_of) c = pick(rng);
            std::vector<TargetSet> cycles;
            for (int c = 0; c < n; ++c) {
                TargetSet set = 0;
                for (int b = 0; b < n; ++b) {
                    if (cycle_of[static_cast<std::size_t>(b)] == c) set |= bit(b);
                }
                if (set != 0) cycles.push_back(set);
            }
            bool retrievable = true;
            long energy = 0;
            SliceState state(inst);
            for (TargetSet batch : cycles) {
                const auto raw = enumerate_feasible_batches_raw(state);
                const auto it = raw.find(batch);
                if (it == raw.end()) {
                    retrievable = false;
                    break;
                }
                energy += it->second;
                state = state.after(batch);
            }
            const Assignment a = encode_cycles(inst, model, cycles);
            const bool audited = !audit_assignment(model, a).has_value();
            ASSERT_EQ(audited, retrievable) << write_instance(inst) << " " << write_assignment(a);
            if (retrievable) {
                ++accepted;
                ASSERT_EQ(import_solution(inst, a).total_energy, energy);
            } else {
                ++rejected;
            }
        }
    }
    EXPECT_GT(accepted, 100);
    EXPECT_GT(rejected, 100);
}

TEST(Mip, PerturbedAssignmentsNeverSlipThrough) {
    std::mt19937 rng(37);
    int slipped = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const Instance inst = fixtures::random_feasible(rng, 5, 5, 6);
        const LpModel model = build_model(inst);
        const Assignment base = assignment_from_solution(inst, *solve_dp(inst).solution);
        std::vector<std::string> binaries;
        for (const LpVar& v : model.vars) {
            if (v.binary) binaries.push_back(v.name);
        }
        std::uniform_int_distribution<std::size_t> pick(0, binaries.size() - 1);
        for (int draw = 0; draw < 200; ++draw) {
            Assignment a = base;
            const int flips = 1 + draw % 3;
            for (int f = 0; f < flips; ++f) {
                double& v = a[binaries[pick(rng)]];
                v = 1 - v;
            }
            if (audit_assignment(model, a)) continue;
            // Passing the audit must mean a valid plan with the declared energy.
            try {
                import_solution(inst, a);
            } catch (const Error& e) {
                ++slipped;
                ADD_FAILURE() << e.what() << "\n" << write_assignment(a);
            }
        }
    }
    EXPECT_EQ(slipped, 0);
}
