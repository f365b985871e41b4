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

/// Stabilizer decompositions |target> = sum_a c_a |phi_a> of magic states,
/// exact verification, lazy tensor products, and the decomposition file format.

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbcsim/octic.h"
#include "pbcsim/stab.h"

namespace pbcsim {

/// Exact Z[sqrt2] * 2^e coefficient when known, always with a float value.
struct Coefficient {
    std::optional<ScaledQuadratic> exact;
    std::complex<double> value;

    static Coefficient from_exact(const ScaledQuadratic &q) { return {q, {q.to_double(), 0.0}}; }
    static Coefficient approximate(std::complex<double> v) { return {std::nullopt, v}; }
    bool operator==(const Coefficient &o) const = default;
};

struct DecompositionTerm {
    Coefficient coefficient;
    AffineStabilizerState state;
    /// Family descriptor such as "O6 CZ:0-1,1-2" when the state came from one; empty otherwise.
    std::string descriptor;
};

/// Targets are named "H^k" (unnormalized, |0> + (sqrt2 - 1)|1> per qubit) or
/// "H^k:normalized" (cos(pi/8)|0> + sin(pi/8)|1> per qubit).
struct StabilizerDecomposition {
    size_t num_qubits = 0;
    std::string target;
    std::vector<DecompositionTerm> terms;

    size_t rank() const { return terms.size(); }
};

struct MagicTarget {
    size_t num_qubits = 0;
    bool normalized = false;
};
/// Throws std::invalid_argument for anything other than "H^k" / "H^k:normalized".
MagicTarget parse_target(const std::string &target);
std::string target_name(size_t k, bool normalized);

/// Exact amplitudes of the target; nullopt when they leave the ring (normalized, odd k).
std::optional<std::vector<ExactAmplitude>> target_exact(const std::string &target);
Eigen::VectorXcd target_dense(const std::string &target);

/// sqrt2 - 1.
ScaledQuadratic magic_t();

/// Built-in decomposition of unnormalized |H^k>, k = 1..6, with 2, 2, 3, 4, 6, 7 terms.
StabilizerDecomposition magic_decomposition(size_t k);

/// The two-term identity for normalized |H^2> with coefficients 1/2 and 1/(2 sqrt2).
StabilizerDecomposition normalized_h2_decomposition();

struct VerificationResult {
    bool exact = false;
    double residual = 0;
};
VerificationResult verify_decomposition(const StabilizerDecomposition &d, size_t max_qubits = 16);

/// Builds a state from a descriptor: a family "B<n>,0", "B<n>,<n>", "E<n>", "O<n>", "K<n>"
/// followed by space-separated decorations "Z:i,j", "X:i", "CZ:a-b,c-d", "CZALL".
AffineStabilizerState state_from_descriptor(const std::string &descriptor);

/// Edge lists of the two six-vertex graphs completing the H^6 decomposition.
struct GraphPair {
    std::vector<std::pair<int, int>> first;
    std::vector<std::pair<int, int>> second;
    /// Number of valid (unordered) pairs of graph classes found.
    size_t valid_pairs = 0;
    bool operator==(const GraphPair &o) const { return first == o.first && second == o.second; }
};
/// Meet-in-the-middle search over the 2^15 graphs on six vertices.
GraphPair derive_h6_graphs();
/// The frozen result of derive_h6_graphs (also stored in data/h6_graphs.txt).
GraphPair frozen_h6_graphs();
std::string graph_pair_text(const GraphPair &p);
GraphPair parse_graph_pair_text(const std::string &text);

/// Lazy product of block decompositions; term a is the tensor product of one term per block.
class ProductDecomposition {
   public:
    explicit ProductDecomposition(std::vector<StabilizerDecomposition> blocks);
    static ProductDecomposition tensor_power(const StabilizerDecomposition &d, size_t m);
    /// Unnormalized |H^n> from blocks of base_k qubits plus one remainder block.
    static ProductDecomposition magic(size_t n, size_t base_k);

    size_t num_qubits() const { return num_qubits_; }
    /// Throws std::overflow_error above 2^62 terms.
    uint64_t num_terms() const;
    const std::vector<StabilizerDecomposition> &blocks() const { return blocks_; }

    std::vector<size_t> multi_index(uint64_t index) const;
    Coefficient coefficient(uint64_t index) const;
    AffineStabilizerState state(uint64_t index) const;
    StabilizerDecomposition materialize() const;

   private:
    size_t num_qubits_ = 0;
    std::vector<StabilizerDecomposition> blocks_;
};

ProductDecomposition tensor_power_decomposition(const StabilizerDecomposition &d, size_t m);

/// JSON file format:
///   {"qubits": k, "target": "H^k", "terms": [{"coefficient": "(p, q, e)", "state": "E2"}, ...]}
/// A state is a descriptor string or {"basis": ["0110", ...], "offset": "0000",
/// "phase": {"const": c, "linear": [...], "quadratic": [[a, b], ...]}, "scale": "(c0,c1,c2,c3; e)"}.
/// Float coefficients are written as {"re": x, "im": y}.
std::string decomposition_to_json(const StabilizerDecomposition &d);
/// Throws ParseError with the offending location.
StabilizerDecomposition decomposition_from_json(const std::string &text, const std::string &source = "<input>");

ExactAmplitude parse_exact_amplitude(const std::string &text);

/// Input of the inner-product command:
///   {"qubits": n, "psi": <state>, "phi": <state>, "generators": ["+ZZI", ...]}
/// with states in the decomposition file syntax. "generators" may be omitted.
struct InnerProductInput {
    size_t num_qubits = 0;
    AffineStabilizerState psi;
    AffineStabilizerState phi;
    std::vector<PauliOperator> generators;
};
InnerProductInput inner_input_from_json(const std::string &text, const std::string &source = "<input>");

}  // namespace pbcsim
