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

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbcsim/f2linalg.h"

namespace pbcsim {

/// i^phase X(x) Z(z) on n qubits. The dense convention puts qubit 0 in the
/// most significant bit of a basis index.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t n);
    PauliOperator(BitVector x, BitVector z, int phase);

    /// "+XZIY", "-ZZ", "+iX", "iX", "XX" (no sign means +). Y is i X Z.
    static PauliOperator from_string(std::string_view text);
    /// Single-qubit operator ('X', 'Y' or 'Z') on qubit q of n.
    static PauliOperator single(size_t n, size_t q, char kind);

    size_t num_qubits() const { return x_.size(); }
    const BitVector &x() const { return x_; }
    const BitVector &z() const { return z_; }
    int phase() const { return phase_; }
    /// 'I', 'X', 'Y' or 'Z' on qubit q.
    char kind(size_t q) const;
    /// Coefficient in front of the letter product: 0 for +, 1 for +i, 2 for -, 3 for -i.
    int sign_exponent() const;
    /// True when the operator squares to the identity.
    bool is_hermitian() const;
    bool is_identity_up_to_phase() const { return !x_.any() && !z_.any(); }
    size_t weight() const;
    bool commutes(const PauliOperator &other) const;

    PauliOperator operator*(const PauliOperator &other) const;
    PauliOperator operator-() const;
    PauliOperator times_i_power(int k) const;
    /// this on the first qubits, other on the rest.
    PauliOperator tensor(const PauliOperator &other) const;
    /// Qubits [begin, begin + len).
    PauliOperator slice(size_t begin, size_t len) const;

    /// "+XZIY" style text.
    std::string str() const;

    Eigen::MatrixXcd to_matrix() const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd &state) const;

    bool operator==(const PauliOperator &other) const = default;

   private:
    BitVector x_;
    BitVector z_;
    int phase_ = 0;
};

/// Incrementally maintained abelian group generated by commuting hermitian Paulis.
class StabilizerGroupTracker {
   public:
    explicit StabilizerGroupTracker(size_t n) : n_(n) {}

    enum class Relation { Anticommutes, Dependent, Independent };
    struct Classification {
        Relation relation;
        /// For Anticommutes: index of a generator that anticommutes with the operator.
        size_t generator = 0;
        /// For Dependent: the operator equals sign * (element of the group), sign = +1 or -1.
        int sign = 1;
    };

    Classification classify(const PauliOperator &p) const;
    /// Adds an independent commuting hermitian generator. Throws std::invalid_argument otherwise.
    void add(const PauliOperator &p);

    size_t num_qubits() const { return n_; }
    const std::vector<PauliOperator> &generators() const { return generators_; }

   private:
    size_t n_;
    std::vector<PauliOperator> generators_;
    // Reduced elements: symplectic pivot and the group element (with phase).
    std::vector<std::pair<size_t, PauliOperator>> reduced_;
};

}  // namespace pbcsim
