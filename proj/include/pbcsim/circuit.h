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

/// Gate-level circuits shared by the Clifford+T compiler and the sparse-cut
/// estimator, their text format, and a dense statevector simulator.
///
/// Text format, one statement per line, '#' starts a comment:
///     QUBITS 4            optional; otherwise inferred from the largest index
///     SPARSITY 2          optional; checked against the two-qubit gates
///     H 0
///     CNOT 0 1
///     T 2
///     MEASURE all         or MEASURE 0 2; default is all qubits
///     POSTPROCESS b0 ^ (b1 & !b2)

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pbcsim {

enum class GateKind { H, S, SDG, T, TDG, X, Y, Z, CNOT, CZ, CY, SWAP };

struct Gate {
    GateKind kind = GateKind::H;
    size_t q0 = 0;
    size_t q1 = 0;  // target of two-qubit gates

    bool is_two_qubit() const;
    bool is_clifford() const;
    bool operator==(const Gate &o) const = default;
};

std::string gate_name(GateKind kind);
std::string gate_str(const Gate &g);

/// Boolean function of measured bits: names b<q>, constants 0/1, ! or ~, &, ^, |, parentheses.
/// Precedence from high to low: not, and, xor, or.
class BoolExpr {
   public:
    BoolExpr() = default;
    /// The single bit b<q>.
    static BoolExpr bit(size_t q);
    /// Throws ParseError (line 0) with the column in the message.
    static BoolExpr parse(const std::string &text);

    /// bits[q] is the measured value of qubit q.
    int evaluate(const std::vector<int> &bits) const;
    std::vector<size_t> variables() const;
    const std::string &str() const { return text_; }
    bool empty() const { return nodes_.empty(); }

   private:
    struct Node {
        char op;  // 'b' bit, 'c' constant, '!', '&', '^', '|'
        size_t value = 0;
        int left = -1;
        int right = -1;
    };
    int eval(int node, const std::vector<int> &bits) const;

    std::vector<Node> nodes_;
    int root_ = -1;
    std::string text_;
};

struct Circuit {
    size_t num_qubits = 0;
    std::vector<Gate> gates;
    std::vector<size_t> measured;
    BoolExpr postprocess;
    std::optional<size_t> sparsity;

    size_t t_count() const;
    bool is_clifford() const;
    /// Largest number of two-qubit gates touching one qubit.
    size_t max_two_qubit_degree() const;
    /// Throws std::invalid_argument on out-of-range qubits, repeated operands or bad postprocessing.
    void validate() const;
};

/// Throws ParseError with line and column on malformed text.
Circuit parse_circuit(const std::string &text, const std::string &source = "<circuit>");
std::string circuit_to_text(const Circuit &c);

/// 2x2 or 4x4 matrix; for two-qubit gates the first operand is the high bit.
Eigen::MatrixXcd gate_matrix(GateKind kind);
/// Applies a gate in place; qubit 0 is the most significant bit of the index.
void apply_gate_dense(Eigen::VectorXcd &state, size_t num_qubits, const Gate &g);

constexpr size_t DEFAULT_DENSE_CIRCUIT_LIMIT = 20;

/// U |0^n>.
Eigen::VectorXcd simulate_dense(const Circuit &c, size_t max_qubits = DEFAULT_DENSE_CIRCUIT_LIMIT);
/// Distribution over the measured bits, keyed by a '0'/'1' string in `measured` order.
std::map<std::string, double> measured_distribution_dense(const Circuit &c);
/// Pr(postprocess = 1).
double acceptance_dense(const Circuit &c);

}  // namespace pbcsim
