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

#pragma once

/// Stabilizer states in affine form
///     scale * sum_{u in F_2^k} omega^f(u) |z + u Psi>,
/// projectors onto stabilizer codes, and exact projected inner products.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "pbcsim/f2linalg.h"
#include "pbcsim/octic.h"
#include "pbcsim/pauli.h"
#include "pbcsim/quadsum.h"

namespace pbcsim {

constexpr size_t DEFAULT_DENSE_QUBIT_LIMIT = 20;

class AffineStabilizerState {
   public:
    AffineStabilizerState() = default;
    /// Throws std::invalid_argument when the rows of psi are dependent or sizes disagree.
    AffineStabilizerState(
        BitMatrix psi, BitVector offset, DegreeTwoPolynomial phase, ExactAmplitude scale = ExactAmplitude::one());

    /// |b> for a computational basis string b.
    static AffineStabilizerState basis(const BitVector &bits);

    size_t num_qubits() const { return offset_.size(); }
    size_t dimension() const { return psi_.rows(); }
    const BitMatrix &basis_matrix() const { return psi_; }
    const BitVector &offset() const { return offset_; }
    const DegreeTwoPolynomial &phase() const { return phase_; }
    const ExactAmplitude &scale() const { return scale_; }

    AffineStabilizerState apply_x(size_t q) const;
    AffineStabilizerState apply_z(size_t q) const;
    AffineStabilizerState apply_cz(size_t a, size_t b) const;
    AffineStabilizerState scaled(const ExactAmplitude &factor) const;
    AffineStabilizerState tensor(const AffineStabilizerState &other) const;

    Eigen::VectorXcd to_dense(size_t max_qubits = DEFAULT_DENSE_QUBIT_LIMIT) const;
    std::vector<ExactAmplitude> to_dense_exact(size_t max_qubits = DEFAULT_DENSE_QUBIT_LIMIT) const;

    bool operator==(const AffineStabilizerState &o) const = default;

   private:
    void check_qubit(size_t q) const;

    BitMatrix psi_;
    BitVector offset_;
    DegreeTwoPolynomial phase_;
    ExactAmplitude scale_ = ExactAmplitude::one();
};

enum class StateFamily { B_n0, B_nn, E_n, O_n, K_n };

/// Unnormalized library states: B_n0 = |0..0>, B_nn = |1..1>, E_n / O_n = sum of
/// even / odd weight strings, K_n = sum_x (-1)^(|x|(|x|-1)/2) |x>.
AffineStabilizerState family_state(StateFamily kind, size_t n);

/// Recovers an exact affine form from a dense stabilizer vector whose nonzero
/// amplitudes are omega^j * sqrt2^(-k). Throws std::invalid_argument if it is not one.
AffineStabilizerState affine_from_dense(const Eigen::VectorXcd &state, double tolerance = 1e-9);

/// Pi |x> = 2^-t sum_y omega^g(y) (-1)^(y B x^T) |x + y A>.
struct ProjectorForm {
    size_t num_qubits = 0;
    BitMatrix a;  // t x n
    BitMatrix b;  // t x n
    DegreeTwoPolynomial g;

    size_t num_generators() const { return a.rows(); }
    Eigen::MatrixXcd to_dense() const;
};

/// Projector onto the joint +1 eigenspace of commuting, hermitian, independent generators.
/// Throws std::invalid_argument otherwise.
ProjectorForm projector_form(size_t n, const std::vector<PauliOperator> &generators);

/// <psi| Pi |phi>, exactly.
ExactAmplitude inner_product_projected(
    const AffineStabilizerState &psi, const ProjectorForm &pi, const AffineStabilizerState &phi);

/// <psi|phi>.
ExactAmplitude inner_product(const AffineStabilizerState &psi, const AffineStabilizerState &phi);

/// 2^-t sum over the group, computed directly from Pauli matrices.
Eigen::MatrixXcd dense_group_projector(size_t n, const std::vector<PauliOperator> &generators);

}  // namespace pbcsim
