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

#include "pbcsim/quadsum.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "test_util.h"

using namespace pbcsim;
using pbcsim::testing::random_bits;
using pbcsim::testing::random_polynomial;

namespace {

// Term-by-term integer evaluation, independent of DegreeTwoPolynomial::evaluate.
int direct_value(const DegreeTwoPolynomial &f, const BitVector &x) {
    long long total = f.constant();
    for (size_t a = 0; a < f.num_vars(); a++) {
        total += 2LL * f.linear(a) * x[a];
        for (size_t b = a + 1; b < f.num_vars(); b++) {
            total += 4LL * f.quadratic(a, b) * x[a] * x[b];
        }
    }
    return static_cast<int>(((total % 8) + 8) % 8);
}

BitMatrix permutation_matrix(const std::vector<size_t> &perm) {
    BitMatrix p(perm.size(), perm.size());
    for (size_t i = 0; i < perm.size(); i++) {
        p.set(i, perm[i], true);
    }
    return p;
}

}  // namespace

TEST(polynomial, evaluate_examples) {
    DegreeTwoPolynomial zero(3);
    ASSERT_EQ(zero.evaluate(BitVector::from_string("101")), 0);
    DegreeTwoPolynomial lin(1);
    lin.set_linear(0, 1);
    ASSERT_EQ(lin.evaluate(BitVector::from_string("1")), 2);
    ASSERT_THROW(lin.evaluate(BitVector(2)), std::invalid_argument);

    auto &rng = pbcsim::testing::shared_rng();
    for (int i = 0; i < 300; i++) {
        size_t n = 1 + rng() % 10;
        auto f = random_polynomial(n, rng);
        auto x = random_bits(n, rng);
        ASSERT_EQ(f.evaluate(x), direct_value(f, x));
    }
}

TEST(polynomial, substitution_matches_composition) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int i = 0; i < 300; i++) {
        size_t n = 1 + rng() % 7;
        size_t m = 1 + rng() % 7;
        auto f = random_polynomial(n, rng);
        auto t = pbcsim::testing::random_matrix(m, n, rng);
        auto g = f.substitute(t);
        for (int j = 0; j < 10; j++) {
            auto y = random_bits(m, rng);
            ASSERT_EQ(g.evaluate(y), f.evaluate(y * t));
        }
    }
}

TEST(polynomial, restrict_and_direct_sum) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int i = 0; i < 200; i++) {
        size_t n = 2 + rng() % 6;
        auto f = random_polynomial(n, rng);
        size_t var = rng() % n;
        bool value = rng() & 1;
        auto g = f.restrict(var, value);
        auto y = random_bits(n - 1, rng);
        BitVector x(n);
        for (size_t a = 0, j = 0; a < n; a++) {
            x.set(a, a == var ? value : y[j++]);
        }
        ASSERT_EQ(g.evaluate(y), f.evaluate(x));

        auto h = random_polynomial(1 + rng() % 4, rng);
        auto s = f.direct_sum(h);
        auto u = random_bits(n, rng);
        auto v = random_bits(h.num_vars(), rng);
        ASSERT_EQ(s.evaluate(u.concat(v)), (f.evaluate(u) + h.evaluate(v)) % 8);
        ASSERT_EQ(f.negated().evaluate(u), (8 - f.evaluate(u)) % 8);
    }
}

TEST(polynomial, text_round_trip) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int i = 0; i < 50; i++) {
        auto f = random_polynomial(rng() % 9, rng);
        ASSERT_EQ(DegreeTwoPolynomial::parse(f.str()), f);
    }
    auto g = DegreeTwoPolynomial::parse("# comment\nn: 3\nconst: 9\nlinear: 1 2 7\nquadratic: 0-2, 1-2\n");
    ASSERT_EQ(g.constant(), 1);
    ASSERT_EQ(g.linear(2), 3);
    ASSERT_TRUE(g.quadratic(2, 0));
    ASSERT_FALSE(g.quadratic(0, 1));
}

TEST(polynomial, parse_errors_carry_position) {
    try {
        DegreeTwoPolynomial::parse("n: 2\nlinear: 1 x\n", "poly.txt");
        FAIL();
    } catch (const ParseError &e) {
        ASSERT_EQ(e.line(), 2u);
        ASSERT_EQ(e.column(), 11u);
    }
    ASSERT_THROW(DegreeTwoPolynomial::parse("const: 1\n"), ParseError);
    ASSERT_THROW(DegreeTwoPolynomial::parse("n: 2\nquadratic: 0-0\n"), ParseError);
    ASSERT_THROW(DegreeTwoPolynomial::parse("n: 2\nquadratic: 0-5\n"), ParseError);
    ASSERT_THROW(DegreeTwoPolynomial::parse("n: 2\nlinear: 1\n"), ParseError);
    ASSERT_THROW(DegreeTwoPolynomial::parse("n: 2\nfoo: 1\n"), ParseError);
    ASSERT_THROW(DegreeTwoPolynomial::parse("n 2\n"), ParseError);
}

TEST(exp_sum, small_examples) {
    ASSERT_EQ(exp_sum(DegreeTwoPolynomial(5)), ExactAmplitude::from_int(32));
    ASSERT_EQ(exp_sum(DegreeTwoPolynomial(0)), ExactAmplitude::one());

    DegreeTwoPolynomial c0(0);
    c0.set_constant(3);
    ASSERT_EQ(exp_sum(c0), ExactAmplitude::omega_power(3));

    DegreeTwoPolynomial two_x(1);
    two_x.set_linear(0, 1);
    ASSERT_EQ(exp_sum(two_x), ExactAmplitude(1, 0, 1, 0, 0));
    ASSERT_EQ(exp_sum(two_x), ExactAmplitude::sqrt2_power(1) * ExactAmplitude::omega_power(1));

    DegreeTwoPolynomial xy(2);
    xy.flip_quadratic(0, 1);
    ASSERT_EQ(exp_sum(xy), ExactAmplitude::from_int(2));

    // (-1)^(z1 z2 + z1 + z2) summed over four points.
    DegreeTwoPolynomial block(2);
    block.flip_quadratic(0, 1);
    block.set_linear(0, 2);
    block.set_linear(1, 2);
    ASSERT_EQ(exp_sum(block), ExactAmplitude::from_int(-2));

    DegreeTwoPolynomial four(3);
    four.set_constant(4);
    ASSERT_EQ(exp_sum(four), ExactAmplitude::from_int(-8));
    ASSERT_EQ(brute_force_exp_sum(four), ExactAmplitude::from_int(-8));

    // 2x + 6x on one variable: 1 + omega^8 ... coefficient 8 = 0 mod 4, so sum is 2.
    DegreeTwoPolynomial cancel(1);
    cancel.add_linear(0, 1);
    cancel.add_linear(0, 3);
    ASSERT_EQ(exp_sum(cancel), ExactAmplitude::from_int(2));
    // 4x alone vanishes.
    DegreeTwoPolynomial vanish(2);
    vanish.set_linear(0, 2);
    ASSERT_EQ(exp_sum(vanish), ExactAmplitude::zero());
    ASSERT_EQ(brute_force_exp_sum(vanish), ExactAmplitude::zero());
}

TEST(exp_sum, matches_brute_force) {
    auto &rng = pbcsim::testing::shared_rng();
    for (size_t n = 1; n <= 10; n++) {
        for (int i = 0; i < 150; i++) {
            auto f = random_polynomial(n, rng);
            ASSERT_EQ(exp_sum(f), brute_force_exp_sum(f)) << f.str();
        }
    }
}

TEST(exp_sum, sparse_polynomials_match_brute_force) {
    // Sparse coefficients exercise the zero and radical branches more often.
    auto &rng = pbcsim::testing::shared_rng();
    for (int i = 0; i < 500; i++) {
        size_t n = 1 + rng() % 9;
        DegreeTwoPolynomial f(n);
        f.set_constant(rng() % 8);
        for (size_t a = 0; a < n; a++) {
            if (rng() % 3 == 0) {
                f.set_linear(a, rng() % 4);
            }
            for (size_t b = a + 1; b < n; b++) {
                if (rng() % 5 == 0) {
                    f.flip_quadratic(a, b);
                }
            }
        }
        ASSERT_EQ(exp_sum(f), brute_force_exp_sum(f)) << f.str();
    }
}

TEST(exp_sum, nonzero_result_is_power_of_sqrt2_times_root_of_unity) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int i = 0; i < 500; i++) {
        size_t n = 1 + rng() % 12;
        auto s = exp_sum(random_polynomial(n, rng));
        if (s.is_zero()) {
            continue;
        }
        // Nonzero results are sqrt2^p omega^m: a single unit coefficient.
        int nonzero = 0;
        for (auto c : s.coefficients()) {
            if (c != 0) {
                nonzero++;
                ASSERT_TRUE(c == 1 || c == -1);
            }
        }
        ASSERT_EQ(nonzero, 1);
        ASSERT_GE(s.exponent(), static_cast<int>(n));
        ASSERT_LE(s.exponent(), static_cast<int>(2 * n));
    }
}

TEST(exp_sum, invariant_under_permutation_and_constant_shift) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int i = 0; i < 200; i++) {
        size_t n = 1 + rng() % 9;
        auto f = random_polynomial(n, rng);
        std::vector<size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        ASSERT_EQ(exp_sum(f.substitute(permutation_matrix(perm))), exp_sum(f));
        auto g = f;
        g.add_constant(8);
        ASSERT_EQ(exp_sum(g), exp_sum(f));
    }
}

TEST(exp_sum, brute_force_bound) {
    ASSERT_THROW(brute_force_exp_sum(DegreeTwoPolynomial(21)), std::invalid_argument);
    ASSERT_THROW(brute_force_exp_sum(DegreeTwoPolynomial(5), 4), std::invalid_argument);
}

TEST(quadsum, word_and_symplectic_paths_agree) {
    auto &rng = pbcsim::testing::shared_rng();
    for (size_t n : {1, 2, 5, 17, 31, 48, 63, 64}) {
        for (int trial = 0; trial < 40; trial++) {
            auto f = random_polynomial(n, rng);
            // Sparse linear parts exercise the nonzero branches more often.
            if (trial % 2) {
                for (size_t a = 0; a < n; a++) {
                    if (rng() % 4) {
                        f.set_linear(a, 0);
                    }
                }
            }
            EXPECT_EQ(exp_sum(f), exp_sum_symplectic(f)) << n << "\n" << f.str();
        }
    }
}
