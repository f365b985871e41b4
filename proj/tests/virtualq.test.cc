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

#include "pbcsim/virtualq.h"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.h"

using namespace pbcsim;

namespace {

std::shared_ptr<const PbcProgram> random_program(size_t n, std::mt19937_64 &rng, double coin_rate = 0.0) {
    pbcsim::testing::RandomProgramOptions opt;
    opt.coin_rate = coin_rate;
    return std::make_shared<PbcTree>(pbcsim::testing::random_pbc_tree(n, rng, opt));
}

Eigen::MatrixXcd magic_density(size_t k) {
    Eigen::VectorXcd h = magic_state_dense(k);
    return h * h.adjoint();
}

}  // namespace

TEST(virtualq, single_qubit_plan) {
    VirtualQubitPlan plan = build_plan(1);
    ASSERT_EQ(plan.terms.size(), 3u);
    EXPECT_EQ(plan.terms[0].states, "0");
    EXPECT_EQ(plan.terms[1].states, "1");
    EXPECT_EQ(plan.terms[2].states, "+");
    EXPECT_NEAR(plan.terms[0].alpha.to_double(), 0.5, 1e-15);
    EXPECT_NEAR(plan.terms[1].alpha.to_double(), (1 - std::sqrt(2.0)) / 2, 1e-15);
    EXPECT_NEAR(plan.terms[2].alpha.to_double(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_TRUE(plan.density().isApprox(magic_density(1), 1e-12));
    // (1/4) + (3 - 2 sqrt2)/4 + 1/2 = (3 - sqrt2)/2.
    EXPECT_EQ(plan.alpha_square_sum(), ScaledQuadratic(3, -1, -1));
}

TEST(virtualq, product_plans) {
    for (size_t k = 1; k <= 4; k++) {
        VirtualQubitPlan plan = build_plan(k);
        EXPECT_EQ(plan.terms.size(), static_cast<size_t>(std::pow(3, k)));
        EXPECT_EQ(plan.alpha_sum(), ScaledQuadratic::from_int(1));
        EXPECT_TRUE(plan.density().isApprox(magic_density(k), 1e-12)) << k;
        EXPECT_NEAR(plan.alpha_square_sum().to_double(), std::pow((3 - std::sqrt(2.0)) / 2, k), 1e-12);
    }
    VirtualQubitPlan two = build_plan(2);
    ScaledQuadratic a1(1, -1, -1);
    bool found = false;
    for (const auto &t : two.terms) {
        if (t.states == "11") {
            found = true;
            EXPECT_EQ(t.alpha, a1 * a1);
        }
    }
    EXPECT_TRUE(found);
    EXPECT_THROW(build_plan(0), std::invalid_argument);
}

TEST(virtualq, term_programs_are_standard_pbcs) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; trial++) {
        auto program = random_program(5, rng);
        for (const auto &t : build_plan(2).terms) {
            VirtualTermProgram q(program, 2, t);
            EXPECT_EQ(q.num_qubits(), 3u);
            EXPECT_TRUE(validate_standard_form(q).ok());
        }
    }
    EXPECT_THROW(VirtualTermProgram(random_program(1, rng), 2, build_plan(2).terms[0]), std::invalid_argument);
}

TEST(virtualq, exact_mode_reproduces_full_acceptance) {
    std::mt19937_64 rng(31);
    for (size_t k : {1, 2}) {
        for (int trial = 0; trial < 12; trial++) {
            size_t total = k + 1 + rng() % (9 - k);  // n + k <= 10
            auto program = random_program(total, rng, trial % 3 == 0 ? 0.2 : 0.0);
            VirtualExact v = exact_virtual_acceptance(program, k, Backend::Rank);
            Acceptance full = exact_acceptance(*program, Backend::Rank);
            ASSERT_TRUE(v.exact && full.exact);
            EXPECT_EQ(*v.exact, *full.exact) << "k=" << k << " n+k=" << total;
            EXPECT_NEAR(v.value, exact_acceptance(*program, Backend::Brute).value, 1e-9);
        }
    }
}

TEST(virtualq, brute_backend_on_terms) {
    std::mt19937_64 rng(32);
    auto program = random_program(6, rng);
    VirtualExact v = exact_virtual_acceptance(program, 2, Backend::Brute);
    EXPECT_FALSE(v.exact.has_value());
    EXPECT_NEAR(v.value, exact_acceptance(*program, Backend::Brute).value, 1e-9);
}

TEST(virtualq, program_ignoring_virtual_qubits) {
    // Measurements only touch the last two qubits.
    auto program = std::make_shared<PbcTree>(
        PbcTree::sequence(3, {PauliOperator::from_string("IZI"), PauliOperator::from_string("IZX")}));
    auto small = PbcTree::sequence(2, {PauliOperator::from_string("ZI"), PauliOperator::from_string("ZX")});
    double expect = exact_acceptance(small, Backend::Brute).value;
    EXPECT_NEAR(exact_virtual_acceptance(program, 1, Backend::Rank).value, expect, 1e-12);
    VirtualOptions opt;
    opt.samples = 20000;
    VirtualEstimate e = estimate_acceptance(program, 1, Backend::Rank, 9, opt);
    EXPECT_LE(std::abs(e.mean - expect), 4 * e.stderr_);
    EXPECT_EQ(e.backend_runs, 3u * 20000u);
}

TEST(virtualq, sampled_estimates_cover_the_truth) {
    std::mt19937_64 rng(2024);
    int within = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; trial++) {
        size_t k = 1 + trial % 2;
        size_t total = k + 1 + rng() % (7 - k);  // n + k <= 8
        auto program = random_program(total, rng);
        double truth = exact_acceptance(*program, Backend::Brute).value;
        VirtualOptions opt;
        opt.samples = 300;
        VirtualEstimate e = estimate_acceptance(program, k, Backend::Rank, 1000 + trial, opt);
        within += std::abs(e.mean - truth) <= 4 * e.stderr_ + 1e-12;
    }
    EXPECT_GE(within, 95);
}

TEST(virtualq, sample_variance_respects_bound) {
    std::mt19937_64 rng(77);
    auto program = random_program(4, rng);
    VirtualOptions opt;
    opt.samples = 100000;
    VirtualEstimate e = estimate_acceptance(program, 1, Backend::Rank, 5, opt);
    double abs_sum = 0;
    for (const auto &t : build_plan(1).terms) {
        abs_sum += std::abs(t.alpha.to_double());
    }
    double slack = 3 * abs_sum * abs_sum / std::sqrt(static_cast<double>(opt.samples));
    EXPECT_LE(e.sample_variance, e.variance_bound + slack);
    EXPECT_NEAR(e.variance_bound, (3 - std::sqrt(2.0)) / 2, 1e-12);
    EXPECT_LE(std::abs(e.mean - exact_acceptance(*program, Backend::Brute).value), 4 * e.stderr_);
}

TEST(virtualq, estimates_are_deterministic_per_seed) {
    std::mt19937_64 rng(3);
    auto program = random_program(4, rng);
    VirtualOptions opt;
    opt.samples = 500;
    auto a = estimate_acceptance(program, 2, Backend::Rank, 17, opt);
    auto b = estimate_acceptance(program, 2, Backend::Rank, 17, opt);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.stderr_, b.stderr_);
}

TEST(virtualq, default_sample_count) {
    EXPECT_EQ(default_sample_count(build_plan(1), 0.1), 100u);
    // sum alpha^2 < 1 here, so the max(1, .) floor applies.
    EXPECT_EQ(default_sample_count(build_plan(3), 0.5), 4u);
    EXPECT_THROW(default_sample_count(build_plan(1), 0), std::invalid_argument);
}

TEST(virtualq, compiled_circuits_as_input) {
    std::mt19937_64 rng(8);
    Circuit c = pbcsim::testing::random_circuit(2, 8, 3, rng);
    std::shared_ptr<const PbcProgram> compiled = compile_to_pbc(c);
    VirtualExact v = exact_virtual_acceptance(compiled, 1, Backend::Rank);
    EXPECT_NEAR(v.value, acceptance_dense(c), 1e-9);
}
