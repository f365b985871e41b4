// Copyright 2026 The pbcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pbcsim/cli.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pbcsim/circuit.h"
#include "pbcsim/quadsum.h"

using namespace pbcsim;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("pbcsim_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string file(const std::string &name, const std::string &text) {
        auto p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string path(const std::string &name) { return (dir_ / name).string(); }

    std::filesystem::path dir_;
};

const char *Z_PROGRAM = R"({"qubits": 1, "root": {"pauli": "+Z", "on_plus": {"output": 0}, "on_minus": {"output": 1}}})";

double field(const std::string &out, const std::string &key) {
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + ": ", 0) == 0) {
            return std::stod(line.substr(key.size() + 2));
        }
    }
    ADD_FAILURE() << "no field " << key << " in\n" << out;
    return NAN;
}

}  // namespace

TEST_F(CliTest, verify_builtin_h6) {
    CliRun r = run({"verify-decomp", "builtin:H6"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("exact: true, chi: 7"), std::string::npos) << r.out;
    EXPECT_EQ(run({"verify-decomp", "builtin:H9"}).code, EXIT_BAD_INPUT);
}

TEST_F(CliTest, born_rule_on_one_qubit) {
    std::string z = file("z.json", Z_PROGRAM);
    CliRun r = run({"simulate-pbc", "--method", "brute", "--shots", "0", "--outcomes", "+", z});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(field(r.out, "probability"), (2 + std::sqrt(2.0)) / 4, 1e-14);
    CliRun exact = run({"pbc-prob", z, "--outcomes", "+"});
    ASSERT_EQ(exact.code, 0) << exact.err;
    EXPECT_NE(exact.out.find("probability_exact: (2, 1, -2)"), std::string::npos) << exact.out;
    CliRun acc = run({"simulate-pbc", z});
    EXPECT_NEAR(field(acc.out, "acceptance"), (2 - std::sqrt(2.0)) / 4, 1e-14);
}

TEST_F(CliTest, malformed_inputs_exit_2) {
    std::string bad = file("bad.circ", "QUBITS 2\nH 0\nCNOT 0 0\n");
    CliRun r = run({"compile", bad});
    EXPECT_EQ(r.code, EXIT_BAD_INPUT);
    EXPECT_NE(r.err.find("bad.circ:3:"), std::string::npos) << r.err;
    EXPECT_EQ(run({"compile", path("missing.circ")}).code, EXIT_BAD_INPUT);
    EXPECT_EQ(run({"simulate-pbc", file("bad.json", "{\"qubits\": 1, \"root\": {\"pauli\": 3}}")}).code,
              EXIT_BAD_INPUT);
    EXPECT_EQ(run({"frobnicate"}).code, EXIT_BAD_INPUT);
    EXPECT_EQ(run({"bench", "--no-such-flag"}).code, EXIT_BAD_INPUT);
    EXPECT_EQ(run({}).code, EXIT_BAD_INPUT);
    std::string z = file("z.json", Z_PROGRAM);
    EXPECT_EQ(run({"pbc-prob", z, "--outcomes", "+x"}).code, EXIT_BAD_INPUT);
    std::string sparse = file("s.circ", "QUBITS 3\nSPARSITY 1\nCNOT 0 1\nCNOT 1 2\n");
    CliRun s = run({"sparse-estimate", sparse, "--cut", "0|1,2"});
    EXPECT_EQ(s.code, EXIT_BAD_INPUT);
    EXPECT_NE(s.err.find(":4:"), std::string::npos) << s.err;
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, runtime_errors_exit_1) {
    std::string c = file("c.circ", "QUBITS 3\nH 0\nCNOT 0 1\nT 1\nCNOT 1 2\nH 2\nMEASURE all\nPOSTPROCESS b2\n");
    CliRun r = run({"sparse-estimate", c, "--cut", "0|1,2", "--eps", "0.0001", "--max-samples", "10"});
    EXPECT_EQ(r.code, EXIT_RUNTIME);
    EXPECT_NE(r.err.find("cap"), std::string::npos) << r.err;
}

TEST_F(CliTest, compile_round_trip) {
    std::string text = "QUBITS 3\nH 0\nT 0\nCNOT 0 1\nH 1\nTDG 1\nCZ 1 2\nH 2\nT 2\nH 2\nMEASURE all\nPOSTPROCESS b0 ^ b2\n";
    std::string c = file("c.circ", text);
    std::string tree = path("tree.json");
    CliRun r = run({"compile", c, "-o", tree, "--enumerate"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(field(r.out, "pbc_qubits"), 3);
    double dense = acceptance_dense(parse_circuit(text));
    EXPECT_NEAR(field(r.out, "acceptance"), dense, 1e-12);
    CliRun sim = run({"simulate-pbc", tree});
    ASSERT_EQ(sim.code, 0) << sim.err;
    EXPECT_NEAR(field(sim.out, "acceptance"), dense, 1e-12);
    CliRun brute = run({"simulate-pbc", tree, "--method", "brute"});
    EXPECT_NEAR(field(brute.out, "acceptance"), dense, 1e-12);
}

TEST_F(CliTest, seeded_commands_repeat) {
    std::string c = file("c.circ", "QUBITS 2\nH 0\nT 0\nCNOT 0 1\nT 1\nH 1\nMEASURE all\nPOSTPROCESS b1\n");
    std::string tree = path("tree.json");
    ASSERT_EQ(run({"compile", c, "-o", tree}).code, 0);
    for (const auto &args : std::vector<std::vector<std::string>>{
             {"simulate-pbc", tree, "--shots", "50", "--seed", "9"},
             {"virtual", tree, "--k", "1", "--samples", "300", "--seed", "9"},
             {"sparse-estimate", c, "--cut", "0|1", "--samples", "100", "--seed", "9"},
             {"search", "--target", "H^2", "--chi", "2", "--seed", "9"}}) {
        CliRun a = run(args), b = run(args);
        EXPECT_EQ(a.code, 0) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
    CliRun s1 = run({"simulate-pbc", tree, "--shots", "50", "--seed", "1"});
    CliRun s2 = run({"simulate-pbc", tree, "--shots", "50", "--seed", "2"});
    EXPECT_NE(s1.out, s2.out);
}

TEST_F(CliTest, json_mode) {
    std::string z = file("z.json", Z_PROGRAM);
    CliRun r = run({"--json", "pbc-prob", z, "--outcomes", "-"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["probability"].get<double>(), (2 - std::sqrt(2.0)) / 4, 1e-14);
    EXPECT_EQ(j["probability_exact"], "(2, -1, -2)");
    CliRun v = run({"--json", "verify-decomp", "builtin:H4"});
    auto jv = nlohmann::json::parse(v.out);
    EXPECT_EQ(jv["exact"], true);
    EXPECT_EQ(jv["chi"], 4);
    CliRun b = run({"--json", "bench", "--max-n", "4", "--reps", "1"});
    auto jb = nlohmann::json::parse(b.out);
    EXPECT_EQ(jb["rows"].size(), 4u);
    EXPECT_LE(jb["rows"][3]["max_abs_diff"].get<double>(), 1e-12);
}

TEST_F(CliTest, exp_sum_and_inner) {
    std::string f = file("f.txt", "n: 3\nconst: 1\nlinear: 1 0 3\nquadratic: 0-1 1-2\n");
    CliRun r = run({"exp-sum", f});
    ASSERT_EQ(r.code, 0) << r.err;
    ExactAmplitude want = exp_sum(DegreeTwoPolynomial::parse("n: 3\nconst: 1\nlinear: 1 0 3\nquadratic: 0-1 1-2\n"));
    EXPECT_NE(r.out.find("exact: " + want.str()), std::string::npos) << r.out;
    EXPECT_EQ(run({"exp-sum", f, "--method", "brute"}).out, r.out);
    EXPECT_EQ(run({"exp-sum", file("g.txt", "n: 2\nlinear: 1\n")}).code, EXIT_BAD_INPUT);

    std::string in = file("in.json", R"({"qubits": 2, "psi": "E2", "phi": "B2,0", "generators": ["+ZZ"]})");
    CliRun i = run({"inner", in});
    ASSERT_EQ(i.code, 0) << i.err;
    EXPECT_EQ(field(i.out, "re"), 1);
    std::string bad = file("bad.json", R"({"qubits": 2, "psi": "E2", "phi": "B2,0", "generators": ["+ZZZ"]})");
    CliRun e = run({"inner", bad});
    EXPECT_EQ(e.code, EXIT_BAD_INPUT);
    EXPECT_NE(e.err.find("generators/0"), std::string::npos) << e.err;
}

TEST_F(CliTest, search_writes_verifiable_file) {
    std::string out = path("found.json");
    CliRun r = run({"search", "--target", "H^2:normalized", "--chi", "2", "--seed", "5", "-o", out});
    ASSERT_EQ(r.code, 0) << r.err;
    CliRun v = run({"verify-decomp", out});
    EXPECT_EQ(v.code, 0);
    EXPECT_LE(field(v.out, "residual"), 1e-8);
    EXPECT_EQ(run({"search", "--target", "Q^2"}).code, EXIT_BAD_INPUT);
}

TEST_F(CliTest, sparse_estimate_exact_matches_dense) {
    std::string c = file("s.circ",
                         "QUBITS 4\nSPARSITY 2\nH 0\nT 0\nCNOT 0 1\nH 2\nCZ 1 2\nT 2\nCNOT 2 3\nH 3\nMEASURE all\n"
                         "POSTPROCESS b1 ^ b3 | b0\n");
    CliRun r = run({"sparse-estimate", c, "--cut", "0|1,2,3", "--exact-expectation", "--dense-check"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(field(r.out, "estimate"), field(r.out, "dense"), 1e-9);
}
