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

#include "pbcsim/f2linalg.h"

#include <gtest/gtest.h>

#include "test_util.h"

using namespace pbcsim;
using pbcsim::testing::random_bits;
using pbcsim::testing::random_matrix;
using pbcsim::testing::random_symmetric_zero_diagonal;

namespace {

// Plain integer Gaussian elimination mod 2, kept separate from row_reduce.
size_t naive_rank(const BitMatrix &m) {
    std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols()));
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            a[r][c] = m.get(r, c);
        }
    }
    size_t pivots = 0;
    for (size_t c = 0; c < m.cols() && pivots < m.rows(); c++) {
        size_t p = pivots;
        while (p < m.rows() && a[p][c] % 2 == 0) {
            p++;
        }
        if (p == m.rows()) {
            continue;
        }
        std::swap(a[p], a[pivots]);
        for (size_t r = 0; r < m.rows(); r++) {
            if (r != pivots && a[r][c] % 2) {
                for (size_t k = 0; k < m.cols(); k++) {
                    a[r][k] = (a[r][k] + a[pivots][k]) % 2;
                }
            }
        }
        pivots++;
    }
    return pivots;
}

}  // namespace

TEST(bit_vector, basics) {
    BitVector v = BitVector::from_string("10110");
    ASSERT_EQ(v.size(), 5u);
    ASSERT_TRUE(v[0]);
    ASSERT_FALSE(v[1]);
    ASSERT_EQ(v.popcount(), 3u);
    ASSERT_EQ(v.str(), "10110");
    ASSERT_EQ(v.first_set(), 0u);
    ASSERT_EQ(BitVector(7).first_set(), 7u);
    ASSERT_THROW(v.get(5), std::out_of_range);
    ASSERT_THROW(v.set(100, true), std::out_of_range);
    ASSERT_THROW(BitVector::from_string("10x"), std::invalid_argument);
    ASSERT_THROW(v ^ BitVector(4), std::invalid_argument);

    BitVector w = BitVector::from_string("11100");
    ASSERT_EQ((v ^ w).str(), "01010");
    ASSERT_EQ((v & w).str(), "10100");
    ASSERT_FALSE(v.dot(w));
    ASSERT_EQ(v.concat(w).str(), "1011011100");
    ASSERT_EQ(v.concat(w).slice(3, 4).str(), "1011");
    ASSERT_EQ(BitVector::from_uint(5, 0b01101).str(), "10110");
    ASSERT_EQ(v.to_uint(), 0b01101u);
}

TEST(bit_vector, long_vectors_cross_word_boundaries) {
    auto &rng = pbcsim::testing::shared_rng();
    BitVector a = random_bits(150, rng);
    BitVector b = random_bits(150, rng);
    size_t expected = 0;
    for (size_t i = 0; i < 150; i++) {
        expected += a[i] && b[i];
    }
    ASSERT_EQ(a.dot(b), expected % 2 == 1);
    ASSERT_EQ((a & b).popcount(), expected);
}

TEST(bit_matrix, rank_known_cases) {
    ASSERT_EQ(rank(BitMatrix::identity(4)), 4u);
    ASSERT_EQ(rank(BitMatrix(3, 5)), 0u);
    ASSERT_EQ(rank(BitMatrix::from_rows({"110", "011", "101"})), 2u);
}

TEST(bit_matrix, rank_matches_naive_elimination) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 200; trial++) {
        size_t rows = 1 + rng() % 9;
        size_t cols = 1 + rng() % 9;
        BitMatrix m = random_matrix(rows, cols, rng);
        size_t r = rank(m);
        ASSERT_EQ(r, naive_rank(m));
        ASSERT_EQ(r, rank(m.transpose()));
        ASSERT_LE(r, std::min(rows, cols));
    }
    BitMatrix m6 = random_matrix(6, 6, rng);
    ASSERT_EQ(rank(m6), naive_rank(m6));
}

TEST(bit_matrix, row_reduce_transform) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 100; trial++) {
        BitMatrix m = random_matrix(1 + rng() % 7, 1 + rng() % 7, rng);
        RowEchelon re = row_reduce(m);
        ASSERT_EQ(re.transform * m, re.reduced);
        ASSERT_EQ(rank(re.transform), m.rows());
        for (size_t i = 0; i < re.pivots.size(); i++) {
            for (size_t r = 0; r < m.rows(); r++) {
                ASSERT_EQ(re.reduced.get(r, re.pivots[i]), r == i);
            }
        }
    }
}

TEST(symplectic, zero_and_canonical_inputs) {
    auto z = symplectic_canonicalize(BitMatrix(4, 4));
    ASSERT_EQ(z.blocks, 0u);
    ASSERT_EQ(z.transform, BitMatrix::identity(4));

    auto one = symplectic_canonicalize(BitMatrix::from_rows({"01", "10"}));
    ASSERT_EQ(one.blocks, 1u);

    ASSERT_THROW(symplectic_canonicalize(BitMatrix::from_rows({"01", "00"})), std::invalid_argument);
    ASSERT_THROW(symplectic_canonicalize(BitMatrix::from_rows({"11", "10"})), std::invalid_argument);
    ASSERT_THROW(symplectic_canonicalize(BitMatrix(2, 3)), std::invalid_argument);
}

TEST(symplectic, random_matrices_reach_block_form) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + rng() % 10;
        if (trial == 0) {
            n = 8;
        }
        BitMatrix h = random_symmetric_zero_diagonal(n, rng);
        auto form = symplectic_canonicalize(h);
        ASSERT_EQ(rank(form.transform), n);
        ASSERT_EQ(2 * form.blocks, rank(h));
        BitMatrix canon = form.transform.transpose() * h * form.transform;
        for (size_t i = 0; i < n; i++) {
            for (size_t j = 0; j < n; j++) {
                bool expected = i / 2 == j / 2 && i != j && i < 2 * form.blocks;
                ASSERT_EQ(canon.get(i, j), expected) << h.str();
            }
        }
    }
}

TEST(solve_linear, trivial_cases) {
    BitVector b = BitVector::from_string("1011");
    auto sol = solve_linear(BitMatrix::identity(4), b);
    ASSERT_TRUE(sol.has_value());
    ASSERT_EQ(sol->particular, b);
    ASSERT_TRUE(sol->kernel.empty());

    ASSERT_FALSE(solve_linear(BitMatrix(3, 3), BitVector::from_string("010")).has_value());
    ASSERT_THROW(solve_linear(BitMatrix(3, 4), BitVector(4)), std::invalid_argument);
}

TEST(solve_linear, solutions_satisfy_system) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 100; trial++) {
        BitMatrix a = random_matrix(5, 7, rng);
        BitVector b = random_bits(5, rng);
        auto sol = solve_linear(a, b);
        if (!sol) {
            continue;
        }
        ASSERT_EQ(mul_column(a, sol->particular), b);
        for (const auto &k : sol->kernel) {
            ASSERT_EQ(mul_column(a, sol->particular ^ k), b);
            ASSERT_FALSE(mul_column(a, k).any());
        }
    }
}

TEST(solve_linear, solution_count_matches_enumeration) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 60; trial++) {
        size_t rows = 1 + rng() % 8;
        size_t cols = 1 + rng() % 12;
        BitMatrix a = random_matrix(rows, cols, rng);
        BitVector b = (trial % 2) ? random_bits(rows, rng) : mul_column(a, random_bits(cols, rng));
        size_t count = 0;
        for (uint64_t x = 0; x < (uint64_t{1} << cols); x++) {
            if (mul_column(a, BitVector::from_uint(cols, x)) == b) {
                count++;
            }
        }
        auto sol = solve_linear(a, b);
        if (!sol) {
            ASSERT_EQ(count, 0u);
            continue;
        }
        ASSERT_EQ(count, size_t{1} << (cols - rank(a)));
        ASSERT_EQ(sol->kernel.size(), cols - rank(a));
    }
}
