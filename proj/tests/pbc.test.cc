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

#include "pbcsim/pbc.h"

#include <gtest/gtest.h>

#include <cmath>

#include "pbcsim/parse_error.h"
#include "test_util.h"

using namespace pbcsim;
using pbcsim::testing::random_path;
using pbcsim::testing::random_pbc_tree;
using pbcsim::testing::RandomProgramOptions;

namespace {

PbcTree single(const std::string &pauli) {
    return PbcTree::sequence(PauliOperator::from_string(pauli).num_qubits(), {PauliOperator::from_string(pauli)});
}

// Independent dense oracle: product of explicit projector matrices.
double matrix_oracle(const PbcProgram &program, const std::vector<int> &outcomes) {
    size_t n = program.num_qubits();
    Eigen::VectorXcd phi = magic_state_dense(n);
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(phi.size(), phi.size());
    double coins = 1;
    auto cur = program.start();
    for (int s : outcomes) {
        auto step = cur->step();
        if (step.kind == StepKind::Coin) {
            coins *= 0.5;
        } else {
            phi = 0.5 * (id + double(s) * step.pauli.to_matrix()) * phi;
        }
        cur->advance(s);
    }
    return coins * phi.squaredNorm();
}

}  // namespace

TEST(pbc, born_rule_single_qubit) {
    ScaledQuadratic expected(2, 1, -2);  // (2 + sqrt2) / 4
    for (const char *p : {"+Z", "+X"}) {
        auto prog = single(p);
        EXPECT_NEAR(brute_force_probability(prog, {1}), (2 + std::sqrt(2.0)) / 4, 1e-15) << p;
        EXPECT_EQ(rank_probability(prog, {1}), expected) << p;
        EXPECT_EQ(rank_probability(prog, {-1}), ScaledQuadratic(2, -1, -2)) << p;
    }
    auto y = single("+Y");
    EXPECT_EQ(rank_probability(y, {1}), ScaledQuadratic(1, 0, -1));
    EXPECT_NEAR(brute_force_probability(y, {1}), 0.5, 1e-15);
    EXPECT_NEAR(std::cos(M_PI / 8) * std::cos(M_PI / 8), expected.to_double(), 1e-15);
}

TEST(pbc, empty_prefix_is_one) {
    auto &rng = pbcsim::testing::shared_rng();
    auto prog = random_pbc_tree(6, rng);
    EXPECT_EQ(rank_probability(prog, {}), ScaledQuadratic::from_int(1));
    EXPECT_NEAR(brute_force_probability(prog, {}), 1, 1e-14);
    RankEvaluator ev(6);
    EXPECT_EQ(ev.projected_probability({}), ScaledQuadratic::from_int(1));
}

TEST(pbc, brute_force_matches_matrix_oracle) {
    auto &rng = pbcsim::testing::shared_rng();
    RandomProgramOptions opt;
    opt.commuting = false;
    opt.coin_rate = 0.2;
    for (int trial = 0; trial < 20; trial++) {
        size_t n = 1 + rng() % 4;
        auto prog = random_pbc_tree(n, rng, opt);
        auto path = random_path(prog, rng);
        for (size_t t = 0; t <= path.size(); t++) {
            std::vector<int> prefix(path.begin(), path.begin() + t);
            EXPECT_NEAR(brute_force_probability(prog, prefix), matrix_oracle(prog, prefix), 1e-12);
        }
    }
}

TEST(pbc, leaves_sum_to_one) {
    auto &rng = pbcsim::testing::shared_rng();
    RandomProgramOptions opt;
    opt.coin_rate = 0.15;
    for (int trial = 0; trial < 10; trial++) {
        size_t n = 1 + rng() % 5;
        auto prog = random_pbc_tree(n, rng, opt);
        double brute = 0;
        for (const auto &leaf : enumerate_leaves(prog, Backend::Brute)) {
            brute += leaf.probability;
        }
        EXPECT_NEAR(brute, 1, 1e-12);
        ScaledQuadratic exact;
        for (const auto &leaf : enumerate_leaves(prog, Backend::Rank)) {
            exact = exact + *leaf.exact_probability;
        }
        EXPECT_EQ(exact, ScaledQuadratic::from_int(1));
    }
}

TEST(pbc, rank_matches_brute_force_n6) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 30; trial++) {
        auto prog = random_pbc_tree(6, rng);
        auto path = random_path(prog, rng);
        for (size_t t = 0; t <= path.size(); t++) {
            std::vector<int> prefix(path.begin(), path.begin() + t);
            ScaledQuadratic exact = rank_probability(prog, prefix);
            EXPECT_NEAR(exact.to_double(), brute_force_probability(prog, prefix), 1e-9);
            EXPECT_TRUE(ScaledQuadratic() <= exact && exact <= ScaledQuadratic::from_int(1));
        }
    }
}

TEST(pbc, rank_with_padding_blocks) {
    auto &rng = pbcsim::testing::shared_rng();
    for (size_t n : {5, 7, 8}) {
        for (size_t base : {2, 3, 6}) {
            auto prog = random_pbc_tree(n, rng);
            auto path = random_path(prog, rng);
            RankOptions opt;
            opt.base_k = base;
            EXPECT_NEAR(rank_probability(prog, path, opt).to_double(), brute_force_probability(prog, path), 1e-9)
                << n << " " << base;
        }
    }
}

TEST(pbc, base_k_and_symmetry_do_not_change_the_value) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 3; trial++) {
        auto prog = random_pbc_tree(6, rng);
        auto path = random_path(prog, rng);
        path.resize(3);
        RankOptions k1, k6, full;
        k1.base_k = 1;
        full.hermitian_symmetry = false;
        auto a = rank_probability(prog, path, k1);
        EXPECT_EQ(a, rank_probability(prog, path, k6));
        EXPECT_EQ(a, rank_probability(prog, path, full));
    }
}

TEST(pbc, rank_matches_brute_force_n12) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 2; trial++) {
        auto prog = random_pbc_tree(12, rng);
        auto path = random_path(prog, rng);
        EXPECT_NEAR(rank_probability(prog, path).to_double(), brute_force_probability(prog, path), 1e-9);
    }
}

TEST(pbc, conditional_probabilities_are_consistent) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 10; trial++) {
        auto prog = random_pbc_tree(4, rng);
        auto path = random_path(prog, rng);
        for (size_t t = 0; t < path.size(); t++) {
            std::vector<int> prefix(path.begin(), path.begin() + t);
            auto parent = rank_probability(prog, prefix);
            prefix.push_back(1);
            auto plus = rank_probability(prog, prefix);
            prefix.back() = -1;
            auto minus = rank_probability(prog, prefix);
            EXPECT_EQ(plus + minus, parent);
            EXPECT_TRUE(ScaledQuadratic() <= plus && plus <= parent);
        }
    }
}

TEST(pbc, dependent_measurement_is_deterministic) {
    // Z0, Z1, then Z0 Z1: the last outcome is fixed by the first two.
    std::vector<PauliOperator> ps = {
        PauliOperator::from_string("+ZI"), PauliOperator::from_string("+IZ"), PauliOperator::from_string("-ZZ")};
    auto prog = PbcTree::sequence(2, ps);
    for (int a : {1, -1}) {
        for (int b : {1, -1}) {
            auto parent = rank_probability(prog, {a, b});
            auto plus = rank_probability(prog, {a, b, 1});
            auto minus = rank_probability(prog, {a, b, -1});
            // -ZZ has eigenvalue -ab on the branch.
            EXPECT_EQ(-a * b == 1 ? plus : minus, parent);
            EXPECT_TRUE((-a * b == 1 ? minus : plus).is_zero());
            EXPECT_NEAR(brute_force_probability(prog, {a, b, -a * b}), parent.to_double(), 1e-14);
        }
    }
}

TEST(pbc, anticommuting_measurements) {
    std::vector<PauliOperator> ps = {PauliOperator::from_string("+Z"), PauliOperator::from_string("+X")};
    auto prog = PbcTree::sequence(1, ps);
    EXPECT_THROW(rank_probability(prog, {1, 1}), std::invalid_argument);
    EXPECT_NEAR(brute_force_probability(prog, {1, 1}), (2 + std::sqrt(2.0)) / 8, 1e-15);
    auto report = validate_standard_form(prog);
    EXPECT_FALSE(report.ok());
    EXPECT_NE(report.violations[0].find("anticommutes"), std::string::npos);
}

TEST(pbc, coins_contribute_one_half) {
    PbcTree::Node coin, z, zero, one;
    coin.kind = StepKind::Coin;
    coin.on_plus = 1;
    coin.on_minus = 3;
    z.kind = StepKind::Measure;
    z.pauli = PauliOperator::from_string("+Z");
    z.on_plus = 2;
    z.on_minus = 3;
    one.output = 1;
    PbcTree prog(1, {coin, z, one, zero});
    EXPECT_EQ(rank_probability(prog, {1}), ScaledQuadratic(1, 0, -1));
    EXPECT_EQ(rank_probability(prog, {1, 1}), ScaledQuadratic(2, 1, -3));
    EXPECT_NEAR(brute_force_probability(prog, {1, 1}), (2 + std::sqrt(2.0)) / 8, 1e-15);
    EXPECT_EQ(*exact_acceptance(prog, Backend::Rank).exact, ScaledQuadratic(2, 1, -3));
    EXPECT_NEAR(exact_acceptance(prog, Backend::Brute).value, (2 + std::sqrt(2.0)) / 8, 1e-15);
}

TEST(pbc, prefix_errors) {
    auto prog = single("+Z");
    EXPECT_THROW(rank_probability(prog, {1, 1}), std::invalid_argument);
    EXPECT_THROW(brute_force_probability(prog, {1, 1}), std::invalid_argument);
    EXPECT_THROW(brute_force_probability(prog, {2}), std::invalid_argument);
    EXPECT_THROW(brute_force_probability(PbcTree::leaf(17, 0), {}), std::invalid_argument);
    EXPECT_THROW(parse_outcomes("+x"), std::invalid_argument);
    EXPECT_EQ(parse_outcomes("+-+"), (std::vector<int>{1, -1, 1}));
    EXPECT_EQ(outcomes_to_string({1, -1}), "+-");
}

TEST(pbc, sampling_depth_zero) {
    auto prog = PbcTree::leaf(3, 1);
    for (auto backend : {Backend::Brute, Backend::Rank}) {
        auto rec = sample_run(prog, backend, 7);
        EXPECT_EQ(rec.output, 1);
        EXPECT_TRUE(rec.outcomes.empty());
        EXPECT_EQ(rec.probability, 1.0);
    }
}

TEST(pbc, sampling_frequency_matches_born_rule) {
    auto prog = single("+Z");
    double p = (2 + std::sqrt(2.0)) / 4;
    const int shots = 100000;
    for (auto backend : {Backend::Brute, Backend::Rank}) {
        std::mt19937_64 rng(99);
        PbcSampler sampler(prog, backend);
        int plus = 0;
        for (int i = 0; i < shots; i++) {
            plus += sampler.sample(rng).outcomes[0] == 1;
        }
        double sigma = std::sqrt(p * (1 - p) / shots);
        EXPECT_LT(std::abs(double(plus) / shots - p), 3 * sigma);
    }
}

TEST(pbc, sampling_is_deterministic_and_backends_agree) {
    auto &rng = pbcsim::testing::shared_rng();
    RandomProgramOptions opt;
    opt.coin_rate = 0.2;
    auto prog = random_pbc_tree(4, rng, opt);
    for (uint64_t seed : {1, 2, 3, 4, 5}) {
        auto a = sample_run(prog, Backend::Rank, seed);
        auto b = sample_run(prog, Backend::Rank, seed);
        EXPECT_EQ(a.outcomes, b.outcomes);
        EXPECT_EQ(a.output, b.output);
        EXPECT_EQ(a.exact_probability, b.exact_probability);
        // Same uniforms and the same conditionals up to rounding give the same path.
        auto c = sample_run(prog, Backend::Brute, seed);
        EXPECT_EQ(a.outcomes, c.outcomes);
        EXPECT_NEAR(a.probability, c.probability, 1e-12);
        EXPECT_NEAR(a.probability, rank_probability(prog, a.outcomes).to_double(), 1e-15);
    }
}

TEST(pbc, sampled_acceptance_matches_exact) {
    auto &rng = pbcsim::testing::shared_rng();
    auto prog = random_pbc_tree(3, rng);
    double exact = exact_acceptance(prog, Backend::Rank).value;
    EXPECT_NEAR(exact, exact_acceptance(prog, Backend::Brute).value, 1e-12);
    std::mt19937_64 gen(5);
    PbcSampler sampler(prog, Backend::Rank);
    const int shots = 20000;
    int ones = 0;
    for (int i = 0; i < shots; i++) {
        ones += sampler.sample(gen).output;
    }
    EXPECT_LT(std::abs(double(ones) / shots - exact), 4 * std::sqrt(0.25 / shots));
}

TEST(pbc, standard_form_validation) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 5; trial++) {
        RandomProgramOptions opt;
        opt.dependent_rate = 0.3;
        auto report = validate_standard_form(random_pbc_tree(4, rng, opt));
        EXPECT_TRUE(report.ok()) << report.violations[0];
        EXPECT_GT(report.paths_explored, 0u);
    }
    std::vector<PauliOperator> deep = {PauliOperator::from_string("+Z"), PauliOperator::from_string("+Z")};
    auto report = validate_standard_form(PbcTree::sequence(1, deep));
    ASSERT_FALSE(report.ok());
    EXPECT_NE(report.violations[0].find("more than 1 measurements"), std::string::npos) << report.violations[0];

    StandardFormOptions small;
    small.max_paths = 3;
    auto truncated = validate_standard_form(random_pbc_tree(4, rng), small);
    EXPECT_TRUE(truncated.truncated);
}

TEST(pbc, tree_structure_errors) {
    PbcTree::Node m;
    m.kind = StepKind::Measure;
    m.pauli = PauliOperator::from_string("+Z");
    m.on_plus = 0;
    m.on_minus = 0;
    EXPECT_THROW(PbcTree(1, {m}), std::invalid_argument);  // cycle
    m.on_plus = 5;
    EXPECT_THROW(PbcTree(1, {m}), std::invalid_argument);  // dangling
    PbcTree::Node leaf;
    leaf.output = 2;
    EXPECT_THROW(PbcTree(1, {leaf}), std::invalid_argument);
    m.on_plus = 1;
    m.on_minus = 1;
    leaf.output = 0;
    EXPECT_THROW(PbcTree(2, {m, leaf}), std::invalid_argument);  // size mismatch
    EXPECT_EQ(PbcTree(1, {m, leaf}).depth(), 1u);
}

TEST(pbc, json_round_trip) {
    auto &rng = pbcsim::testing::shared_rng();
    RandomProgramOptions opt;
    opt.coin_rate = 0.2;
    auto prog = random_pbc_tree(3, rng, opt);
    auto text = pbc_tree_to_json(prog);
    auto back = pbc_tree_from_json(text, "x");
    EXPECT_EQ(pbc_tree_to_json(back), text);
    EXPECT_NEAR(exact_acceptance(back, Backend::Brute).value, exact_acceptance(prog, Backend::Brute).value, 1e-15);
}

TEST(pbc, json_errors_are_located) {
    struct Case {
        std::string text;
        size_t line;
        std::string fragment;
    };
    std::vector<Case> cases = {
        {"{\"qubits\": 1,\n \"root\": {\"pauli\": \"+Q\", \"on_plus\": {\"output\": 0}, \"on_minus\": {\"output\": 1}}}",
         2,
         "invalid Pauli"},
        {"{\"qubits\": 2,\n \"root\": {\n  \"pauli\": \"+Z\",\n  \"on_plus\": {\"output\": 0},\n  \"on_minus\": {\"output\": 1}}}",
         3,
         "does not act on 2 qubits"},
        {"{\"qubits\": 1,\n \"root\": {\"pauli\": \"+Z\",\n  \"on_plus\": {\"output\": 3},\n  \"on_minus\": {\"output\": 1}}}",
         3,
         "must be 0 or 1"},
        {"{\"qubits\": 1,\n \"root\": {\"pauli\": \"+Z\", \"on_plus\": {\"output\": 0}}}", 2, "missing 'on_minus'"},
        {"{\"qubits\": 1,\n \"root\": {\"output\": 0, \"bogus\": 1}}", 2, "unknown key"},
        {"{\"qubits\": 1,\n \"root\": {\"output\": 0,}}", 2, "syntax error"},
        {"{\"qubits\": 1,\n \"root\": {\"pauli\": \"+iZ\", \"on_plus\": {\"output\": 0}, \"on_minus\": {\"output\": 1}}}",
         2,
         "not hermitian"},
    };
    for (const auto &c : cases) {
        try {
            pbc_tree_from_json(c.text, "prog.json");
            ADD_FAILURE() << c.text;
        } catch (const ParseError &e) {
            EXPECT_EQ(e.line(), c.line) << e.what();
            EXPECT_GT(e.column(), 0u) << e.what();
            EXPECT_NE(std::string(e.what()).find(c.fragment), std::string::npos) << e.what();
        }
    }
}
