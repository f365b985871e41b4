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

/// Pauli-based computations: adaptive sequences of non-destructive Pauli
/// measurements on magic-state qubits |H>^n ending in an output bit.
///
/// Outcomes are eigenvalues sigma in {+1, -1}. A program may also contain coin
/// steps, fair classical random bits that consume an outcome slot without
/// touching the quantum state.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pbcsim/decomplib.h"
#include "pbcsim/octic.h"
#include "pbcsim/pauli.h"
#include "pbcsim/stab.h"

namespace pbcsim {

constexpr size_t DEFAULT_BRUTE_QUBIT_LIMIT = 16;

enum class StepKind { Measure, Coin, Output };

struct PbcStep {
    StepKind kind = StepKind::Output;
    PauliOperator pauli;  // Measure only
    int output = 0;       // Output only
};

/// Walks one path through a program. Cursors are cheap to clone so that
/// branches can be explored independently.
class PbcCursor {
   public:
    virtual ~PbcCursor() = default;
    virtual PbcStep step() const = 0;
    /// Records sigma (+1 or -1) for the current Measure or Coin step.
    virtual void advance(int sigma) = 0;
    virtual std::unique_ptr<PbcCursor> clone() const = 0;
    /// Classical side data a program attaches to a path, e.g. measured circuit bits.
    virtual std::vector<int> classical_record() const { return {}; }
};

class PbcProgram {
   public:
    virtual ~PbcProgram() = default;
    virtual size_t num_qubits() const = 0;
    virtual std::unique_ptr<PbcCursor> start() const = 0;
};

/// Explicit binary decision tree.
class PbcTree : public PbcProgram {
   public:
    struct Node {
        StepKind kind = StepKind::Output;
        PauliOperator pauli;
        int output = 0;
        size_t on_plus = 0;
        size_t on_minus = 0;
    };

    /// Throws std::invalid_argument on dangling or cyclic child links, bad
    /// output values, or measurements of the wrong size.
    PbcTree(size_t num_qubits, std::vector<Node> nodes, size_t root = 0);

    static PbcTree leaf(size_t num_qubits, int output);
    /// Measures the given Paulis in order and outputs the last outcome bit (1 for sigma = -1).
    static PbcTree sequence(size_t num_qubits, const std::vector<PauliOperator> &paulis);

    size_t num_qubits() const override { return n_; }
    std::unique_ptr<PbcCursor> start() const override;
    const std::vector<Node> &nodes() const { return nodes_; }
    size_t root() const { return root_; }
    /// Longest root-to-leaf count of Measure nodes.
    size_t depth() const;

   private:
    size_t n_ = 0;
    std::vector<Node> nodes_;
    size_t root_ = 0;
};

std::string pbc_tree_to_json(const PbcTree &tree);
/// Throws ParseError with a line and column on malformed input.
PbcTree pbc_tree_from_json(const std::string &text, const std::string &source = "<pbc>");

/// "+-+" <-> {+1, -1, +1}.
std::vector<int> parse_outcomes(const std::string &text);
std::string outcomes_to_string(const std::vector<int> &sigmas);

/// Normalized dense |H>^n with |H> = cos(pi/8)|0> + sin(pi/8)|1>.
Eigen::VectorXcd magic_state_dense(size_t n);

/// Pr(sigma_1..sigma_t) by sequential projection of a dense state (default |H>^n).
/// Coin steps contribute a factor 1/2. Throws std::invalid_argument for a
/// non-hermitian measurement, a prefix running past the output, or n above the limit.
double brute_force_probability(const PbcProgram &program,
                               const std::vector<int> &outcomes,
                               const std::optional<Eigen::VectorXcd> &initial = std::nullopt,
                               size_t max_qubits = DEFAULT_BRUTE_QUBIT_LIMIT);

struct RankOptions {
    size_t base_k = 6;
    /// Sum the pairs a < b once and double their real part.
    bool hermitian_symmetry = true;
};

/// Signed generators of the measured group along a path, after removing
/// dependent measurements, plus the coin count.
struct MeasuredPath {
    std::vector<PauliOperator> generators;
    size_t coins = 0;
    /// A dependent measurement contradicted the group: the probability is zero.
    bool contradictory = false;
};
/// Throws std::invalid_argument on anticommuting or non-hermitian measurements.
MeasuredPath collect_path(const PbcProgram &program, const std::vector<int> &outcomes);

/// Exact <H^n| Pi |H^n> / <H^n|H^n> through the stabilizer decomposition of |H^n>.
class RankEvaluator {
   public:
    RankEvaluator(size_t num_qubits, RankOptions options = {});
    size_t num_qubits() const { return n_; }
    size_t num_terms() const { return terms_.size(); }
    /// Probability of the joint +1 eigenspace of commuting, independent, hermitian generators.
    ScaledQuadratic projected_probability(const std::vector<PauliOperator> &generators) const;
    /// Unnormalized sum over pairs, exposed so the ring-closure check sees the raw value.
    ExactAmplitude projected_norm(const std::vector<PauliOperator> &generators) const;

   private:
    size_t n_;
    RankOptions options_;
    std::vector<ScaledQuadratic> coefficients_;
    std::vector<AffineStabilizerState> terms_;
    ScaledQuadratic normalization_;
};

/// Exact Pr(sigma_1..sigma_t). Zero for contradictory prefixes.
ScaledQuadratic rank_probability(const PbcProgram &program,
                                 const std::vector<int> &outcomes,
                                 RankOptions options = {});

enum class Backend { Brute, Rank };
Backend parse_backend(const std::string &name);

struct OutcomeRecord {
    std::vector<int> outcomes;
    int output = 0;
    double probability = 0;
    std::optional<ScaledQuadratic> exact_probability;
};

/// Chain-rule sampler. With the rank backend, prefix probabilities are cached
/// across shots.
class PbcSampler {
   public:
    PbcSampler(const PbcProgram &program, Backend backend, RankOptions options = {});
    OutcomeRecord sample(std::mt19937_64 &rng);

   private:
    ScaledQuadratic cached_rank(const std::vector<int> &outcomes);
    OutcomeRecord sample_brute(std::mt19937_64 &rng);

    // Visited part of the decision tree; the rank backend walks it without touching cursors.
    struct Node {
        StepKind kind = StepKind::Output;
        int output = 0;
        ScaledQuadratic reach;  // probability of the prefix
        ScaledQuadratic plus;   // probability of the prefix followed by +1
        double cond_plus = 0.5;
        std::array<int64_t, 2> child{-1, -1};
        std::unique_ptr<PbcCursor> cursor;  // dropped once both children exist
        std::vector<int> outcomes;
    };
    size_t make_node(std::unique_ptr<PbcCursor> cursor, std::vector<int> outcomes, ScaledQuadratic reach);

    const PbcProgram &program_;
    Backend backend_;
    RankOptions options_;
    std::optional<RankEvaluator> evaluator_;
    std::map<std::vector<int>, ScaledQuadratic> cache_;
    std::vector<Node> trie_;
};

OutcomeRecord sample_run(const PbcProgram &program, Backend backend, uint64_t seed, RankOptions options = {});

/// Uniform double in [0, 1) from the top 53 bits, independent of the standard library.
double uniform_unit(std::mt19937_64 &rng);

struct LeafProbability {
    std::vector<int> outcomes;
    int output = 0;
    double probability = 0;
    std::optional<ScaledQuadratic> exact_probability;
    std::vector<int> record;  // the cursor's classical_record() at the leaf
};

/// All leaves with nonzero probability, by depth-first enumeration.
std::vector<LeafProbability> enumerate_leaves(
    const PbcProgram &program, Backend backend, RankOptions options = {}, size_t max_leaves = 1 << 16);

struct Acceptance {
    double value = 0;
    std::optional<ScaledQuadratic> exact;
};
/// Pr(output = 1).
Acceptance exact_acceptance(const PbcProgram &program, Backend backend, RankOptions options = {});

struct StandardFormOptions {
    bool require_commuting = true;
    size_t max_paths = 4096;
    size_t max_steps = 256;
};

struct StandardFormReport {
    std::vector<std::string> violations;
    size_t paths_explored = 0;
    bool truncated = false;
    bool ok() const { return violations.empty(); }
};

/// Depth <= n, hermiticity, sizes, and (optionally) pairwise commutation along explored paths.
StandardFormReport validate_standard_form(const PbcProgram &program, StandardFormOptions options = {});

}  // namespace pbcsim
