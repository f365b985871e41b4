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

#include "pbcsim/stab.h"

#include <gtest/gtest.h>

#include "test_util.h"

using namespace pbcsim;
using pbcsim::testing::random_affine_state;
using pbcsim::testing::random_commuting_group;

namespace {

Eigen::VectorXcd basis_vector(size_t n, const std::string &bits) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(size_t{1} << n);
    v[std::stoul(bits, nullptr, 2)] = 1;
    return v;
}

Eigen::VectorXcd dense_cz(Eigen::VectorXcd v, size_t n, size_t i, size_t j) {
    for (Eigen::Index k = 0; k < v.size(); k++) {
        if (((k >> (n - 1 - i)) & 1) && ((k >> (n - 1 - j)) & 1)) {
            v[k] = -v[k];
        }
    }
    return v;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); i++) {
        out.segment(i * b.size(), b.size()) = a[i] * b;
    }
    return out;
}

std::complex<double> dense_projected(
    const AffineStabilizerState &psi, const Eigen::MatrixXcd &pi, const AffineStabilizerState &phi) {
    return psi.to_dense().dot(pi * phi.to_dense());
}

}  // namespace

TEST(affine_state, family_examples) {
    Eigen::VectorXcd e2 = basis_vector(2, "00") + basis_vector(2, "11");
    ASSERT_LT((family_state(StateFamily::E_n, 2).to_dense() - e2).norm(), 1e-15);

    Eigen::VectorXcd k2 = basis_vector(2, "00") + basis_vector(2, "01") + basis_vector(2, "10") - basis_vector(2, "11");
    ASSERT_LT((family_state(StateFamily::K_n, 2).to_dense() - k2).norm(), 1e-15);

    Eigen::VectorXcd o3 =
        basis_vector(3, "001") + basis_vector(3, "010") + basis_vector(3, "100") + basis_vector(3, "111");
    ASSERT_LT((family_state(StateFamily::O_n, 3).to_dense() - o3).norm(), 1e-15);

    ASSERT_LT((family_state(StateFamily::B_nn, 3).to_dense() - basis_vector(3, "111")).norm(), 1e-15);
    ASSERT_LT((family_state(StateFamily::B_n0, 3).to_dense() - basis_vector(3, "000")).norm(), 1e-15);

    auto e3 = family_state(StateFamily::E_n, 3).to_dense_exact();
    int ones = 0;
    for (size_t i = 0; i < e3.size(); i++) {
        bool even = std::popcount(i) % 2 == 0;
        ASSERT_EQ(e3[i], even ? ExactAmplitude::one() : ExactAmplitude::zero());
        ones += even;
    }
    ASSERT_EQ(ones, 4);

    for (size_t n = 1; n <= 6; n++) {
        auto k = family_state(StateFamily::K_n, n).to_dense();
        for (Eigen::Index x = 0; x < k.size(); x++) {
            int w = std::popcount(static_cast<uint64_t>(x));
            ASSERT_EQ(k[x].real(), (w * (w - 1) / 2) % 2 ? -1.0 : 1.0);
        }
    }
    ASSERT_THROW(family_state(StateFamily::E_n, 0), std::invalid_argument);
}

TEST(affine_state, constructor_validates) {
    ASSERT_THROW(
        AffineStabilizerState(BitMatrix::from_rows({"11", "11"}), BitVector(2), DegreeTwoPolynomial(2)),
        std::invalid_argument);
    ASSERT_THROW(AffineStabilizerState(BitMatrix(1, 3), BitVector(2), DegreeTwoPolynomial(1)), std::invalid_argument);
    ASSERT_THROW(AffineStabilizerState(BitMatrix::identity(2), BitVector(2), DegreeTwoPolynomial(1)),
                 std::invalid_argument);
}

TEST(affine_state, gates_match_dense) {
    auto e2 = family_state(StateFamily::E_n, 2);
    Eigen::VectorXcd expected = basis_vector(2, "00") - basis_vector(2, "11");
    ASSERT_LT((e2.apply_cz(0, 1).to_dense() - expected).norm(), 1e-15);
    ASSERT_THROW(e2.apply_cz(0, 0), std::invalid_argument);
    ASSERT_THROW(e2.apply_z(2), std::out_of_range);

    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 300; trial++) {
        size_t n = 1 + rng() % 7;
        auto s = random_affine_state(n, rng);
        Eigen::VectorXcd v = s.to_dense();
        size_t q = rng() % n;
        ASSERT_LT((s.apply_z(q).to_dense() - PauliOperator::single(n, q, 'Z').apply(v)).norm(), 1e-12);
        ASSERT_LT((s.apply_x(q).to_dense() - PauliOperator::single(n, q, 'X').apply(v)).norm(), 1e-12);
        ASSERT_EQ(s.apply_z(q).apply_z(q).to_dense_exact(), s.to_dense_exact());
        if (n >= 2) {
            size_t r = (q + 1 + rng() % (n - 1)) % n;
            ASSERT_LT((s.apply_cz(q, r).to_dense() - dense_cz(v, n, q, r)).norm(), 1e-12);
        }
    }

    // Random graph decorations of O_6.
    for (int trial = 0; trial < 20; trial++) {
        auto s = family_state(StateFamily::O_n, 6);
        Eigen::VectorXcd v = s.to_dense();
        for (size_t i = 0; i < 6; i++) {
            for (size_t j = i + 1; j < 6; j++) {
                if (rng() & 1) {
                    s = s.apply_cz(i, j);
                    v = dense_cz(v, 6, i, j);
                }
            }
        }
        ASSERT_LT((s.to_dense() - v).norm(), 1e-12);
    }
}

TEST(affine_state, tensor_matches_kronecker) {
    auto zero = AffineStabilizerState::basis(BitVector::from_string("0"));
    auto one = AffineStabilizerState::basis(BitVector::from_string("1"));
    ASSERT_LT((zero.tensor(one).to_dense() - basis_vector(2, "01")).norm(), 1e-15);

    auto k2 = family_state(StateFamily::K_n, 2);
    ASSERT_LT((k2.tensor(k2).to_dense() - kron(k2.to_dense(), k2.to_dense())).norm(), 1e-12);

    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 100; trial++) {
        auto a = random_affine_state(1 + rng() % 4, rng);
        auto b = random_affine_state(1 + rng() % 4, rng);
        ASSERT_LT((a.tensor(b).to_dense() - kron(a.to_dense(), b.to_dense())).norm(), 1e-12);
    }
}

TEST(affine_state, dense_bound) {
    ASSERT_THROW(family_state(StateFamily::B_n0, 21).to_dense(), std::invalid_argument);
    ASSERT_THROW(family_state(StateFamily::B_n0, 5).to_dense(4), std::invalid_argument);
}

TEST(affine_state, recovered_from_dense) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 200; trial++) {
        auto s = random_affine_state(1 + rng() % 6, rng);
        auto r = affine_from_dense(s.to_dense());
        ASSERT_EQ(r.to_dense_exact(), s.to_dense_exact());
    }
    Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(4);
    bad << 1, 1, 1, 0;
    ASSERT_THROW(affine_from_dense(bad), std::invalid_argument);
    bad << 1, 0.5, 0, 0;
    ASSERT_THROW(affine_from_dense(bad), std::invalid_argument);
}

TEST(projector, examples) {
    auto z = projector_form(1, {PauliOperator::from_string("+Z")}).to_dense();
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(2, 2);
    diag(0, 0) = 1;
    ASSERT_LT((z - diag).norm(), 1e-15);

    for (size_t n = 1; n <= 4; n++) {
        std::vector<PauliOperator> xs;
        for (size_t q = 0; q < n; q++) {
            xs.push_back(PauliOperator::single(n, q, 'X'));
        }
        size_t dim = size_t{1} << n;
        Eigen::MatrixXcd uniform = Eigen::MatrixXcd::Constant(dim, dim, 1.0 / double(dim));
        ASSERT_LT((projector_form(n, xs).to_dense() - uniform).norm(), 1e-12);
    }

    ASSERT_THROW(projector_form(1, {PauliOperator::from_string("+Z"), PauliOperator::from_string("+X")}),
                 std::invalid_argument);
    ASSERT_THROW(projector_form(2, {PauliOperator::from_string("+ZI"), PauliOperator::from_string("-ZI")}),
                 std::invalid_argument);
    ASSERT_THROW(projector_form(1, {PauliOperator::from_string("+iZ")}), std::invalid_argument);
}

TEST(projector, random_groups_match_pauli_sum) {
    auto &rng = pbcsim::testing::shared_rng();
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + rng() % 6;
        auto gens = random_commuting_group(n, rng() % (n + 1), rng);
        Eigen::MatrixXcd form = projector_form(n, gens).to_dense();
        ASSERT_LT((form - dense_group_projector(n, gens)).norm(), 1e-10);
        ASSERT_LT((form * form - form).norm(), 1e-10);
    }
}

TEST(inner_product, simple_cases) {
    auto zero = AffineStabilizerState::basis(BitVector(1));
    ASSERT_EQ(inner_product(zero, zero), ExactAmplitude::one());
    for (size_t n = 1; n <= 5; n++) {
        auto z = AffineStabilizerState::basis(BitVector(n));
        std::vector<PauliOperator> xs;
        for (size_t q = 0; q < n; q++) {
            xs.push_back(PauliOperator::single(n, q, 'X'));
        }
        ASSERT_EQ(inner_product_projected(z, projector_form(n, xs), z),
                  ExactAmplitude::sqrt2_power(-2 * static_cast<int>(n)));
    }
    ASSERT_THROW(inner_product(zero, AffineStabilizerState::basis(BitVector(2))), std::invalid_argument);
}

TEST(inner_product, random_against_dense) {
    auto &rng = pbcsim::testing::shared_rng();
    for (size_t n = 1; n <= 6; n++) {
        for (int trial = 0; trial < 60; trial++) {
            auto psi = random_affine_state(n, rng);
            auto phi = random_affine_state(n, rng);
            auto gens = random_commuting_group(n, rng() % (n + 1), rng);
            auto pi = projector_form(n, gens);
            Eigen::MatrixXcd dense = dense_group_projector(n, gens);
            auto exact = inner_product_projected(psi, pi, phi);
            ASSERT_LT(std::abs(exact.to_complex() - dense_projected(psi, dense, phi)), 1e-9);
            // Conjugate symmetry.
            ASSERT_EQ(inner_product_projected(phi, pi, psi), exact.conj());
            // <psi|Pi|psi> = |Pi psi|^2 is real and nonnegative.
            auto self = inner_product_projected(psi, pi, psi);
            ASSERT_TRUE(self.is_real());
            ASSERT_GE(real_part_as_quadratic(self).sign(), 0);
        }
    }
}
