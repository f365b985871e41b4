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

/// Acceptance probability of a sparse circuit on A u B estimated from runs of
/// smaller circuits: two-qubit gates crossing the cut are expanded in the
/// Pauli basis, the small side A is simulated exactly, and the overlaps on B
/// come from an interference circuit R with one extra control qubit.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "pbcsim/circuit.h"

namespace pbcsim {

using Complex = std::complex<double>;

struct Partition {
    std::vector<size_t> a;  // small side, k qubits
    std::vector<size_t> b;  // n qubits
};

/// "0,1|2,3,4,5". Throws std::invalid_argument unless the two lists cover 0..num_qubits-1 exactly once.
Partition parse_partition(const std::string &text, size_t num_qubits);

/// One gate of a side circuit; a slot is a Pauli ('I', 'X', 'Y', 'Z') left
/// behind by a crossing gate, on qubit gate.q0.
struct SideOp {
    bool slot = false;
    Gate gate;
    char pauli = 'I';
};

struct SideCircuit {
    size_t num_qubits = 0;
    std::vector<SideOp> ops;
    /// Plain gate list; identity slots are dropped.
    std::vector<Gate> gates() const;
};

struct PauliTerm {
    char first;   // on the gate's q0
    char second;  // on the gate's q1
    Complex coefficient;
};

/// G = sum c P (x) Q with zero terms dropped; sum |c|^2 = 1 for unitary G.
std::vector<PauliTerm> pauli_expansion(GateKind two_qubit_kind);

struct CutTerm {
    Complex coefficient;
    std::vector<size_t> choice;  // index into each crossing gate's expansion
    SideCircuit v;               // on A, local indices
    SideCircuit w;               // on B, local indices
};

class CutExpansion {
   public:
    /// Throws std::invalid_argument for a bad partition.
    CutExpansion(const Circuit &circuit, Partition partition);

    const Partition &partition() const { return partition_; }
    size_t num_crossing() const { return crossing_.size(); }
    /// Number of terms after dropping zero Pauli coefficients.
    uint64_t num_terms() const { return num_terms_; }
    /// Term by multi-index, last crossing gate varying fastest.
    CutTerm term(uint64_t index) const;
    /// sum |c_alpha|^2.
    double weight() const;
    /// Position of original qubit q on its side.
    size_t local_index(size_t q) const { return local_.at(q); }
    bool on_a(size_t q) const { return side_a_.at(q); }

   private:
    Circuit circuit_;
    Partition partition_;
    std::vector<size_t> local_;
    std::vector<bool> side_a_;
    std::vector<size_t> crossing_;  // gate indices
    std::vector<std::vector<PauliTerm>> expansions_;
    uint64_t num_terms_ = 1;
};

/// Dense U|0^n> where runs of single-qubit gates on a qubit are merged into one 2x2 product first.
Eigen::VectorXcd simulate_gates_merged(size_t num_qubits, const std::vector<Gate> &gates, size_t max_qubits = 20);

/// <y|V|0^k>, with y[i] the bit of local qubit i. Throws std::invalid_argument above max_qubits.
Complex small_side_amplitude(const SideCircuit &v, const std::vector<int> &y, size_t max_qubits = 20);

enum class RFlavor { Real, Imag };

struct RCircuit {
    Circuit circuit;                   // on n + 1 qubits, all measured
    size_t control = 0;                // physical position of the control at the end
    std::vector<size_t> data_position;  // physical position of each B qubit at the end
    size_t control_gates = 0;           // controlled Paulis
    size_t swaps = 0;
};

/// Control on |+>, W_alpha on branch 0 and W_beta on branch 1, then H (Real)
/// or S^dag then H (Imag) on the control. With migrate set, SWAP gates move
/// the control between controlled gates to spread the two-qubit load.
/// Throws std::invalid_argument unless the two circuits differ only in slot Paulis.
RCircuit build_R(const SideCircuit &w_alpha, const SideCircuit &w_beta, RFlavor flavor, bool migrate = true);

/// Shots of a circuit: every qubit measured, result as a dense basis index (qubit 0 = most significant bit).
class PreparedCircuit {
   public:
    virtual ~PreparedCircuit() = default;
    virtual uint64_t sample(std::mt19937_64 &rng) const = 0;
};

class CircuitBackend {
   public:
    virtual ~CircuitBackend() = default;
    virtual std::unique_ptr<PreparedCircuit> prepare(const Circuit &c) const = 0;
};

/// Statevector emulator.
class DenseEmulatorBackend : public CircuitBackend {
   public:
    explicit DenseEmulatorBackend(size_t max_qubits = 20) : max_qubits_(max_qubits) {}
    std::unique_ptr<PreparedCircuit> prepare(const Circuit &c) const override;

   private:
    size_t max_qubits_;
};

struct SparseEstimateOptions {
    double epsilon = 0.05;
    double delta = 0.05;
    size_t samples = 0;            // 0: Hoeffding count from epsilon and delta
    size_t max_samples = 1000000;  // guard on the sample count
    bool exact_expectation = false;
    bool migrate = true;
};

struct SparseEstimate {
    double estimate = 0;
    size_t samples = 0;
    uint64_t backend_runs = 0;
    uint64_t chi = 0;
    size_t k = 0;
    double xi_bound = 0;      // 2^(k+1) chi
    double max_abs_xi = 0;    // largest |xi| seen
    double weight_square_sum = 0;
    size_t max_r_degree = 0;  // two-qubit gates per qubit over all R circuits
    bool exact = false;
};

/// Throws std::overflow_error when the sample count exceeds options.max_samples.
SparseEstimate estimate_pi(const Circuit &circuit,
                           const Partition &partition,
                           uint64_t seed,
                           const CircuitBackend &backend,
                           SparseEstimateOptions options = {});
SparseEstimate estimate_pi(const Circuit &circuit,
                           const Partition &partition,
                           uint64_t seed,
                           SparseEstimateOptions options = {});

/// <phi_alpha| Pi(y) |phi_beta> by direct dense simulation of the two B-side states.
Complex projected_overlap_dense(const Circuit &circuit,
                                const CutExpansion &expansion,
                                const CutTerm &alpha,
                                const CutTerm &beta,
                                const std::vector<int> &y);

/// E[sigma'] + i E[sigma''] from the exact output distributions of the two R circuits.
Complex r_expectation_dense(const Circuit &circuit,
                            const CutExpansion &expansion,
                            const CutTerm &alpha,
                            const CutTerm &beta,
                            const std::vector<int> &y,
                            bool migrate = true);

}  // namespace pbcsim
