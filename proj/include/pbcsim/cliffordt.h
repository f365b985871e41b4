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

/// Clifford frames and the compiler from Clifford+T circuits to PBCs on the
/// T-count many magic-state qubits.

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <string>
#include <vector>

#include "pbcsim/circuit.h"
#include "pbcsim/pauli.h"
#include "pbcsim/pbc.h"

namespace pbcsim {

/// A Clifford U stored as the images U X_j U^dag and U Z_j U^dag.
class CliffordTableau {
   public:
    CliffordTableau() = default;
    /// Identity on n qubits.
    explicit CliffordTableau(size_t n);

    size_t num_qubits() const { return x_images_.size(); }
    const PauliOperator &x_image(size_t j) const { return x_images_.at(j); }
    const PauliOperator &z_image(size_t j) const { return z_images_.at(j); }

    /// U P U^dag with exact phase. Throws std::invalid_argument on a size mismatch.
    PauliOperator conjugate(const PauliOperator &p) const;
    /// U <- G U.
    void apply_gate(const Gate &g);
    /// U <- U G, or U <- U G^dag when inverse is set.
    void apply_gate_on_right(const Gate &g, bool inverse = false);
    /// U <- V U for V = (a + b) / sqrt(2), with a and b anticommuting hermitian Paulis.
    void apply_pair_rotation(const PauliOperator &a, const PauliOperator &b);
    /// Images are hermitian and satisfy the canonical commutation pattern.
    bool is_valid() const;

    bool operator==(const CliffordTableau &o) const = default;

   private:
    std::vector<PauliOperator> x_images_;
    std::vector<PauliOperator> z_images_;
};

/// G P G^dag (or G^dag P G) for a Clifford gate. Throws std::invalid_argument for T gates.
PauliOperator conjugate_by_gate(const Gate &g, const PauliOperator &p, bool inverse = false);
/// V P V^dag for V = (a + b) / sqrt(2).
PauliOperator conjugate_by_pair(const PauliOperator &a, const PauliOperator &b, const PauliOperator &p);

/// The accumulated Clifford C of a gate sequence, with both directions kept.
class CliffordFrame {
   public:
    CliffordFrame() = default;
    explicit CliffordFrame(size_t n) : forward_(n), inverse_(n) {}

    size_t num_qubits() const { return forward_.num_qubits(); }
    /// C <- G C.
    void apply_gate(const Gate &g);
    /// C P C^dag.
    PauliOperator conjugate(const PauliOperator &p) const { return forward_.conjugate(p); }
    /// C^dag P C.
    PauliOperator pull_back(const PauliOperator &p) const { return inverse_.conjugate(p); }
    const CliffordTableau &forward() const { return forward_; }
    const CliffordTableau &inverse() const { return inverse_; }

   private:
    CliffordTableau forward_;
    CliffordTableau inverse_;
};

PauliOperator conjugate_pauli(const CliffordFrame &frame, const PauliOperator &p);
CliffordFrame frame_of(size_t n, const std::vector<Gate> &gates);

/// Turns physical Pauli measurements on a state C (|0^z> (x) |H^(N-z)>) into
/// steps of a PBC on the last N - z qubits. The first z qubits carry implicit
/// +Z stabilizers. Measurements anticommuting with the known group become
/// coins, dependent ones become deterministic.
class MeasurementReducer {
   public:
    MeasurementReducer() = default;
    MeasurementReducer(size_t num_qubits, size_t num_zero);

    enum class Kind { Quantum, Coin, Deterministic };
    struct Pending {
        Kind kind = Kind::Deterministic;
        PauliOperator frame_pauli;  // C^dag P C
        PauliOperator reduced;      // Quantum: the measurement on the magic qubits
        PauliOperator partner;      // Coin: group element anticommuting with frame_pauli
        int sigma = 1;              // Deterministic: the forced outcome
    };

    size_t num_qubits() const { return inverse_.num_qubits(); }
    size_t num_zero() const { return num_zero_; }
    size_t num_magic() const { return num_qubits() - num_zero_; }

    /// Physical Clifford gate: C <- G C.
    void apply_gate(const Gate &g);
    /// +-I is deterministic. Throws std::invalid_argument for non-hermitian or wrongly sized Paulis.
    Pending prepare(const PauliOperator &physical) const;
    /// Records the outcome. Throws std::invalid_argument if a deterministic outcome is contradicted.
    void resolve(const Pending &pending, int sigma);

    const CliffordTableau &inverse_frame() const { return inverse_; }
    const StabilizerGroupTracker &group() const { return group_; }

   private:
    size_t num_zero_ = 0;
    CliffordTableau inverse_;
    StabilizerGroupTracker group_{0};
};

/// One measurement along a compiled path.
struct TraceEvent {
    PauliOperator physical;
    PauliOperator frame_pauli;
    MeasurementReducer::Kind kind;
    PauliOperator reduced;
    int sigma = 1;
    std::string label;  // "gadget 2 ZZ", "gadget 2 X", "final q1"
};

/// Lazily compiled PBC on t_count() qubits. Each T gate consumes one |H>
/// input through a gadget; frames, coins and dependent outcomes are handled
/// per path. The output bit is the circuit's postprocessing function.
class CompiledPbc : public PbcProgram {
   public:
    explicit CompiledPbc(Circuit circuit);

    size_t num_qubits() const override { return magic_; }
    std::unique_ptr<PbcCursor> start() const override;

    const Circuit &circuit() const { return circuit_; }
    /// Measurement events along a complete outcome path (coins included).
    std::vector<TraceEvent> trace(const std::vector<int> &outcomes) const;
    /// Measured bits in circuit.measured order at the end of a path.
    std::vector<int> measured_bits(const std::vector<int> &outcomes) const;

    struct MicroOp {
        enum Kind { Clifford, Measure, Correct } kind;
        Gate gate;
        PauliOperator pauli;
        size_t slot = 0;
        size_t second_slot = 0;
        size_t qubit = 0;
        std::string label;
    };
    const std::vector<MicroOp> &ops() const { return ops_; }
    size_t num_slots() const { return slots_; }
    /// Slot of the final measurement of each measured qubit.
    const std::vector<size_t> &final_slots() const { return final_slots_; }

   private:
    Circuit circuit_;
    size_t magic_ = 0;
    std::vector<MicroOp> ops_;
    size_t slots_ = 0;
    std::vector<size_t> final_slots_;
};

std::shared_ptr<CompiledPbc> compile_to_pbc(const Circuit &circuit);

/// Expands the lazy program into an explicit tree. Throws std::length_error
/// above max_nodes.
PbcTree materialize_tree(const PbcProgram &program, size_t max_nodes = 1 << 16);

struct GadgetBranch {
    int sigma1 = 1;  // Z (x) Z on data and ancilla
    int sigma2 = 1;  // X on the ancilla
    double probability = 0;
    Eigen::Vector2cd post_state;       // normalized data state after the two measurements
    Eigen::Vector2cd corrected_state;  // after the outcome-dependent correction
    double fidelity_before = 0;        // |<T psi | post>|^2
    double fidelity_after = 0;         // |<T psi | corrected>|^2
};

/// Dense simulation of the T gadget on psi (x) |T>. Throws std::invalid_argument if psi is not normalized.
std::array<GadgetBranch, 4> gadget_semantics_check(const Eigen::Vector2cd &psi);

}  // namespace pbcsim
